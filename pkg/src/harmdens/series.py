"""Truncated power series in one variable ``r`` with exact rational coefficients.

A :class:`TruncatedSeries` of order ``N`` stores the coefficients of
``r**0 .. r**N``; everything beyond is unknown, not zero. Binary operations
between series of different orders truncate to the smaller order.

The parity tag (``"even"``, ``"odd"`` or ``"none"``) is metadata. It is
checked against the coefficients whenever a series is built, so a wrong tag
raises :class:`~harmdens.errors.ParityError` instead of being silently
repaired. Operations propagate parity when the algebra determines it::

    >>> s = elementary("sin", 5)
    >>> s
    TruncatedSeries(r - 1/6*r^3 + 1/120*r^5 + O(r^6), parity='odd')
    >>> compose(elementary("cos", 4), TruncatedSeries([0, 0, 1]))
    TruncatedSeries(1 - 1/2*r^4 + O(r^5), parity='even')

The heavy lifting (products, composition, powers, reversion) is delegated to
the kernel backend chosen in :mod:`harmdens._backend`.
"""

from fractions import Fraction
from math import factorial
from numbers import Rational

from . import _backend
from .errors import (CompositionDomainError, ParityError, PowerDomainError,
                     ReversionDomainError)

EVEN, ODD, NONE = "even", "odd", "none"
PARITIES = (EVEN, ODD, NONE)

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_rational(value):
    """Coerce ints, Fractions and ``"p/q"`` strings to Fraction; reject floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational, str)) and not isinstance(value, bool):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}: {value!r}")


def _parity_ok(coeffs, parity):
    if parity == EVEN:
        return not any(coeffs[1::2])
    if parity == ODD:
        return not any(coeffs[0::2])
    return True


def _mul_parity(p, q):
    if NONE in (p, q):
        return NONE
    return EVEN if p == q else ODD


class TruncatedSeries:
    """Exact truncated power series ``c0 + c1*r + ... + cN*r^N + O(r^(N+1))``."""

    __slots__ = ("coeffs", "parity")

    def __init__(self, coeffs, parity=NONE, order=None):
        cs = [as_rational(c) for c in coeffs]
        if order is not None:
            if order < 0:
                raise ValueError("order must be non-negative")
            cs = (cs + [_ZERO] * (order + 1 - len(cs)))[:order + 1]
        if not cs:
            raise ValueError("a truncated series needs at least the constant coefficient")
        if parity not in PARITIES:
            raise ValueError(f"parity must be one of {PARITIES}, got {parity!r}")
        if not _parity_ok(cs, parity):
            raise ParityError(f"coefficients {[str(c) for c in cs]} are not {parity}")
        self.coeffs = tuple(cs)
        self.parity = parity

    @classmethod
    def _trusted(cls, coeffs, parity=NONE):
        # Kernel output: already Fractions; the parity tag is still verified.
        obj = cls.__new__(cls)
        coeffs = tuple(coeffs)
        if not _parity_ok(coeffs, parity):
            raise ParityError(f"result is not {parity}; coefficients {[str(c) for c in coeffs]}")
        obj.coeffs = coeffs
        obj.parity = parity
        return obj

    @classmethod
    def constant(cls, value, order):
        return cls([value], parity=EVEN, order=order)

    @classmethod
    def identity(cls, order):
        """The series ``r``."""
        return cls([0, 1], parity=ODD, order=order)

    @property
    def order(self):
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, index):
        return self.coeffs[index]

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"TruncatedSeries({self.pretty()}, parity={self.parity!r})"

    def pretty(self, var="r"):
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        text = ""
        for k, (sign, body) in enumerate(parts):
            if k == 0:
                text = body if sign == "+" else "-" + body
            else:
                text += f" {sign} {body}"
        tail = f"O({var}^{self.order + 1})"
        return f"{text} + {tail}" if text else tail

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            return arith(self, other, "add")
        return self + TruncatedSeries.constant(as_rational(other), self.order)

    __radd__ = __add__

    def __neg__(self):
        return arith(self, -1, "scale")

    def __sub__(self, other):
        if isinstance(other, TruncatedSeries):
            return arith(self, -other, "add")
        return self + (-as_rational(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return arith(self, other, "mul")
        return arith(self, other, "scale")

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return arith(self, 1 / as_rational(scalar), "scale")

    def __pow__(self, exponent):
        return pow_q(self, exponent)

    # -- structural helpers ----------------------------------------------

    def truncate(self, order):
        if order > self.order:
            raise ValueError(f"cannot raise order {self.order} to {order} by truncation")
        return TruncatedSeries._trusted(self.coeffs[:order + 1], self.parity)

    def shift(self, k):
        """Multiply by ``r**k``; negative ``k`` divides and needs that many zero low terms."""
        if k >= 0:
            coeffs = (_ZERO,) * k + self.coeffs
        else:
            if any(self.coeffs[:-k]):
                raise ValueError(f"cannot divide by r^{-k}: low coefficients are nonzero")
            if -k > self.order:
                raise ValueError("division by r would leave no known coefficients")
            coeffs = self.coeffs[-k:]
        parity = self.parity
        if parity != NONE and k % 2:
            parity = ODD if parity == EVEN else EVEN
        return TruncatedSeries._trusted(coeffs, parity)

    def detect_parity(self):
        """Return the strongest parity tag the coefficients support."""
        if _parity_ok(self.coeffs, EVEN):
            return EVEN
        if _parity_ok(self.coeffs, ODD):
            return ODD
        return NONE

    def with_parity(self, parity):
        return TruncatedSeries._trusted(self.coeffs, parity)

    def evaluate(self, x):
        """Horner evaluation; exact for rational ``x``, float otherwise."""
        coeffs = self.coeffs if isinstance(x, (int, Fraction)) else map(float, self.coeffs)
        acc = 0
        for c in reversed(list(coeffs)):
            acc = acc * x + c
        return acc

    # -- serialization ----------------------------------------------------

    def to_json(self):
        return {"order": self.order, "parity": self.parity,
                "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj):
        coeffs = obj["coeffs"]
        order = obj.get("order", len(coeffs) - 1)
        if len(coeffs) != order + 1:
            raise ValueError(f"series JSON has {len(coeffs)} coefficients for order {order}")
        return cls(coeffs, parity=obj.get("parity", NONE))


def arith(a, b, kind):
    """Add, multiply (series × series) or scale (series × rational)."""
    if kind == "scale":
        s = as_rational(b)
        return TruncatedSeries._trusted([c * s for c in a.coeffs], a.parity)
    n = min(a.order, b.order) + 1
    if kind == "add":
        parity = a.parity if a.parity == b.parity else NONE
        return TruncatedSeries._trusted([x + y for x, y in zip(a.coeffs[:n], b.coeffs[:n])],
                                        parity)
    if kind == "mul":
        return TruncatedSeries._trusted(_backend.kernels.mul(a.coeffs, b.coeffs, n),
                                        _mul_parity(a.parity, b.parity))
    raise ValueError(f"unknown arithmetic kind {kind!r}")


def compose(outer, inner):
    """``outer(inner(r))`` to order ``min(outer.order, inner.order)``."""
    if inner.coeffs[0]:
        raise CompositionDomainError(
            f"inner series has constant term {inner.coeffs[0]}; composition needs 0")
    n = min(outer.order, inner.order) + 1
    if inner.parity == ODD and outer.parity in (EVEN, ODD):
        parity = outer.parity
    elif inner.parity == EVEN:
        parity = EVEN
    else:
        parity = NONE
    return TruncatedSeries._trusted(_backend.kernels.compose(outer.coeffs[:n], inner.coeffs, n),
                                    parity)


def revert(s):
    """Compositional inverse of ``s = r + ...`` to the same order."""
    if s.order < 1 or s.coeffs[0] != 0 or s.coeffs[1] != 1:
        raise ReversionDomainError("reversion needs s(0) = 0 and linear coefficient 1")
    parity = ODD if s.parity == ODD else NONE
    return TruncatedSeries._trusted(_backend.kernels.revert(s.coeffs, s.order + 1), parity)


def pow_q(s, q):
    """``s**q`` for rational ``q``; ``s`` must have constant term 1."""
    q = as_rational(q)
    if s.coeffs[0] != 1:
        raise PowerDomainError(f"rational power needs constant term 1, got {s.coeffs[0]}")
    parity = EVEN if s.parity == EVEN else NONE
    return TruncatedSeries._trusted(
        _backend.kernels.pow_series(s.coeffs, q.numerator, q.denominator, s.order + 1), parity)


def exp(s):
    """``exp(s)`` for ``s(0) = 0``."""
    if s.coeffs[0]:
        raise CompositionDomainError("exp of a series needs constant term 0")
    parity = EVEN if s.parity == EVEN else NONE
    return TruncatedSeries._trusted(_backend.kernels.exp_series(s.coeffs, s.order + 1), parity)


def log(s):
    """``log(s)`` for ``s(0) = 1``."""
    if s.coeffs[0] != 1:
        raise PowerDomainError(f"log of a series needs constant term 1, got {s.coeffs[0]}")
    parity = EVEN if s.parity == EVEN else NONE
    return TruncatedSeries._trusted(_backend.kernels.log_series(s.coeffs, s.order + 1), parity)


def derivative(s):
    cs = [i * c for i, c in enumerate(s.coeffs)][1:] or [_ZERO]
    return TruncatedSeries._trusted(cs, _flip(s.parity))


def antiderivative(s):
    cs = [_ZERO] + [c / (i + 1) for i, c in enumerate(s.coeffs)]
    return TruncatedSeries._trusted(cs, _flip(s.parity))


def calculus(s, kind):
    if kind == "derivative":
        return derivative(s)
    if kind == "antiderivative":
        return antiderivative(s)
    raise ValueError(f"unknown calculus kind {kind!r}")


def _flip(parity):
    return {EVEN: ODD, ODD: EVEN}.get(parity, NONE)


def elementary(name, order):
    """Maclaurin series of sin, cos, sinh, cosh, exp or log1p through ``r**order``."""
    if order < 0:
        raise ValueError("order must be non-negative")
    cs = [_ZERO] * (order + 1)
    if name in ("sin", "sinh", "cos", "cosh"):
        start = 1 if name in ("sin", "sinh") else 0
        alternate = name in ("sin", "cos")
        for k, i in enumerate(range(start, order + 1, 2)):
            sign = -1 if alternate and k % 2 else 1
            cs[i] = Fraction(sign, factorial(i))
        parity = ODD if start else EVEN
    elif name == "exp":
        cs = [Fraction(1, factorial(i)) for i in range(order + 1)]
        parity = NONE
    elif name == "log1p":
        cs = [_ZERO] + [Fraction((-1) ** (i + 1), i) for i in range(1, order + 1)]
        parity = NONE
    else:
        raise ValueError(f"unknown elementary function {name!r}")
    return TruncatedSeries._trusted(cs, parity)
