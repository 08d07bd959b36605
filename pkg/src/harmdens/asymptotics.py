"""Coefficients ``H_nu`` of the volume-density expansion along a ray.

``H_2 .. H_8`` are universal polynomials in traces of the Jacobi operator
``J`` and its covariant derivatives ``J_k``. They are stored below as data:
each term is a rational coefficient times a product of trace monomials,
a monomial being the tuple of derivative orders inside one trace, e.g.
``(0, 0, 2)`` for ``Tr{J^2 J_2}``. Keeping the table declarative lets the
weight audit and the term counts be checked mechanically.
"""

from dataclasses import dataclass
from fractions import Fraction as F

from .errors import NormalizationError, UnsupportedOrderError
from .models import canonical_monomial, monomial_weight

J = (0,)
J1, J2, J3, J4, J5, J6 = (1,), (2,), (3,), (4,), (5,), (6,)

_RAW = {
    2: [(F(-1, 6), [J])],
    3: [(F(-1, 12), [J1])],
    4: [
        (F(1, 72), [J, J]),
        (F(-1, 180), [(0, 0)]),
        (F(-1, 40), [J2]),
    ],
    5: [
        (F(1, 72), [J, J1]),
        (F(-1, 180), [(0, 1)]),
        (F(-1, 180), [J3]),
    ],
    6: [
        (F(-1, 1296), [J, J, J]),
        (F(1, 1080), [J, (0, 0)]),
        (F(1, 240), [J, J2]),
        (F(-1, 2835), [(0, 0, 0)]),
        (F(-1, 630), [(0, 2)]),
        (F(1, 288), [J1, J1]),
        (F(-1, 672), [(1, 1)]),
        (F(-1, 1008), [J4]),
    ],
    7: [
        (F(1, 1080), [J, (0, 1)]),
        (F(-1, 864), [J, J, J1]),
        (F(-1, 6720), [J5]),
        (F(1, 1080), [J, J3]),
        (F(1, 2160), [(0, 0), J1]),
        (F(-1, 1890), [(0, 0, 1)]),
        (F(-1, 3024), [(0, 3)]),
        (F(1, 480), [J1, J2]),
        (F(-1, 1120), [(1, 2)]),
    ],
    8: [
        (F(1, 31104), [J, J, J, J]),
        (F(-1, 12960), [J, J, (0, 0)]),
        (F(-1, 2880), [J, J, J2]),
        (F(1, 17010), [J, (0, 0, 0)]),
        (F(1, 3780), [J, (0, 2)]),
        (F(-1, 51840), [J6]),
        (F(-1, 1728), [J, J1, J1]),
        (F(1, 4032), [J, (1, 1)]),
        (F(-1, 7200), [(2, 2)]),
        (F(1, 6048), [J, J4]),
        (F(1, 7200), [(0, 0), J2]),
        (F(1, 64800), [(0, 0), (0, 0)]),
        (F(-1, 37800), [(0, 0, 0, 0)]),
        (F(-17, 113400), [(0, 0, 2)]),
        (F(1, 2160), [(0, 1), J1]),
        (F(-5, 18144), [(0, 1, 1)]),
        (F(-1, 18144), [(0, 4)]),
        (F(1, 2160), [J1, J3]),
        (F(-1, 5184), [(1, 3)]),
        (F(1, 3200), [J2, J2]),
    ],
}

SUPPORTED_ORDERS = range(2, 9)


@dataclass(frozen=True)
class Term:
    coeff: F
    monomials: tuple

    @property
    def weight(self):
        return sum(monomial_weight(w) for w in self.monomials)

    @property
    def has_derivative(self):
        return any(any(w) for w in self.monomials)


def formula_table():
    """``{nu: (Term, ...)}`` for ``nu = 2..8`` with canonical monomial keys."""
    return {nu: tuple(Term(c, tuple(sorted(canonical_monomial(w) for w in words)))
                      for c, words in terms)
            for nu, terms in _RAW.items()}


_TABLE = formula_table()


def eval_H(table, nu):
    """Evaluate ``H_nu`` exactly on a :class:`~harmdens.models.TraceTable`."""
    if nu not in _TABLE:
        raise UnsupportedOrderError(f"H_{nu} is only available for 2 <= nu <= 8")
    total = F(0)
    for term in _TABLE[nu]:
        value = term.coeff
        for word in term.monomials:
            value *= table[word]
        total += value
    return total


class HSequence(tuple):
    """Expansion coefficients ``(h_0, h_1, ...)`` with ``h_0 = 1``."""

    def __new__(cls, values):
        values = tuple(F(v) for v in values)
        if not values or values[0] != 1:
            raise NormalizationError("an H-sequence starts with h_0 = 1")
        return super().__new__(cls, values)

    @property
    def order(self):
        return len(self) - 1

    def odd_entries_vanish(self):
        return not any(self[1::2])

    def to_json(self):
        return [str(v) for v in self]


def extract_H(theta_tilde):
    """Read ``h_nu`` off a density series normalised to constant term 1."""
    if theta_tilde[0] != 1:
        raise NormalizationError(f"density series has constant term {theta_tilde[0]}, not 1")
    return HSequence(theta_tilde.coeffs)
