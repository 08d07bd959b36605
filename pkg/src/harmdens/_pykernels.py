"""Pure-Python kernels for truncated rational power series.

Every function takes coefficient sequences of :class:`fractions.Fraction`
(index ``i`` holds the coefficient of ``r**i``) and a target length ``n``,
and returns a new list of exactly ``n`` Fractions. Callers are responsible
for the preconditions (constant terms, lengths); nothing is checked here.

``_ckernels`` implements the same contract on GMP rationals.
"""

from fractions import Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _from_coprime(numerator, denominator):
    # Skips the gcd that Fraction() would redo; inputs are already reduced.
    f = object.__new__(Fraction)
    f._numerator = numerator
    f._denominator = denominator
    return f


def mul(a, b, n):
    """Cauchy product truncated to ``n`` coefficients."""
    out = [_ZERO] * n
    nb = min(len(b), n)
    for i in range(min(len(a), n)):
        ai = a[i]
        if not ai:
            continue
        for j in range(min(nb, n - i)):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


def compose(outer, inner, n):
    """``outer(inner(r))`` by Horner's rule; ``inner[0]`` must be zero."""
    res = [_ZERO] * n
    if not outer:
        return res
    res[0] = outer[-1]
    for k in range(len(outer) - 2, -1, -1):
        res = mul(res, inner, n)
        res[0] += outer[k]
    return res


def pow_series(a, p, q, n):
    """``a**(p/q)`` for ``a[0] == 1`` via the recurrence ``a*b' = (p/q)*a'*b``."""
    alpha = Fraction(p, q)
    b = [_ZERO] * n
    if n == 0:
        return b
    b[0] = _ONE
    na = len(a)
    for k in range(1, n):
        acc = _ZERO
        for j in range(1, min(k, na - 1) + 1):
            aj = a[j]
            if aj:
                acc += (alpha * j - (k - j)) * aj * b[k - j]
        b[k] = acc / k
    return b


def exp_series(a, n):
    """``exp(a)`` for ``a[0] == 0``."""
    b = [_ZERO] * n
    if n == 0:
        return b
    b[0] = _ONE
    na = len(a)
    for k in range(1, n):
        acc = _ZERO
        for j in range(1, min(k, na - 1) + 1):
            aj = a[j]
            if aj:
                acc += j * aj * b[k - j]
        b[k] = acc / k
    return b


def log_series(a, n):
    """``log(a)`` for ``a[0] == 1``."""
    b = [_ZERO] * n
    na = len(a)
    for k in range(1, n):
        acc = k * a[k] if k < na else _ZERO
        for j in range(1, min(k - 1, na - 1) + 1):
            aj = a[j]
            if aj:
                acc -= (k - j) * aj * b[k - j]
        b[k] = acc / k
    return b


def revert(a, n):
    """Compositional inverse of ``a`` (``a[0] == 0``, ``a[1] == 1``).

    Lagrange inversion: ``[r^k] b = [r^(k-1)] h**k / k`` with ``h = r/a(r)``.
    """
    b = [_ZERO] * n
    if n <= 1:
        return b
    h = pow_series(a[1:n], -1, 1, n - 1)
    hk = h
    b[1] = _ONE
    for k in range(2, n):
        hk = mul(hk, h, n - 1)
        b[k] = hk[k - 1] / k
    return b
