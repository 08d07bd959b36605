"""Slow reference routines that share no code with the kernels.

These are the cross-checks used by the verification battery. They work on
plain coefficient lists of Fractions and only use schoolbook products,
integer powers by repeated multiplication, long division, binomial sums and
coefficient-by-coefficient back-substitution, so a bug in the fast
recurrences cannot hide in both routes at once.
"""

from fractions import Fraction
from math import factorial

from .series import TruncatedSeries


def _fr(s):
    return [Fraction(c) for c in (s.coeffs if isinstance(s, TruncatedSeries) else s)]


def naive_mul(a, b, n):
    out = [Fraction(0)] * n
    for i, x in enumerate(a[:n]):
        for j, y in enumerate(b[:n - i]):
            out[i + j] += x * y
    return out


def naive_int_pow(a, e, n):
    out = [Fraction(1)] + [Fraction(0)] * (n - 1)
    for _ in range(e):
        out = naive_mul(out, a, n)
    return out


def naive_div(a, b, n):
    """Long division ``a / b`` with ``b[0] != 0``."""
    q = []
    rem = list(a[:n]) + [Fraction(0)] * (n - len(a))
    for k in range(n):
        c = rem[k] / b[0]
        q.append(c)
        for j in range(1, min(len(b), n - k)):
            rem[k + j] -= c * b[j]
    return q


def binomial_pow(a, q, n):
    """``a**q`` as ``sum_j binom(q, j) (a - 1)**j``."""
    q = Fraction(q)
    u = [Fraction(0)] + list(a[1:n])
    out = [Fraction(0)] * n
    term = [Fraction(1)] + [Fraction(0)] * (n - 1)
    binom = Fraction(1)
    for j in range(n):
        out = [x + binom * t for x, t in zip(out, term)]
        term = naive_mul(term, u, n)
        binom = binom * (q - j) / (j + 1)
    return out


def power_compose(outer, inner, n):
    """``sum_k outer[k] * inner**k`` with every power formed explicitly."""
    out = [Fraction(0)] * n
    power = [Fraction(1)] + [Fraction(0)] * (n - 1)
    for k in range(n):
        if k < len(outer):
            out = [x + outer[k] * p for x, p in zip(out, power)]
        power = naive_mul(power, inner, n)
    return out


def backsub_revert(a, n):
    """Inverse of ``a = r + ...``: fix ``b_k`` so that ``[r^k] a(b) = 0`` for ``k >= 2``."""
    b = [Fraction(0)] * n
    if n > 1:
        b[1] = Fraction(1)
    for k in range(2, n):
        b[k] = -power_compose(a, b, k + 1)[k]
    return b


def transform_by_substitution(theta_tilde, eta, m):
    """New density in the new radius from ``eta^(1-m) r^(m-1) psi^(m-1) Theta~``.

    The ratio ``(r/eta)^(m-1)`` is formed as an integer power followed by a
    long division, then ``r`` is replaced by the back-substituted inverse.
    """
    theta, eta = _fr(theta_tilde), _fr(eta)
    n = min(len(theta), len(eta) - 1)
    psi = [i * c for i, c in enumerate(eta)][1:]
    top = naive_mul(naive_int_pow(psi, m - 1, n), theta, n)
    bottom = naive_int_pow(eta[1:], m - 1, n)
    in_old_radius = naive_div(top, bottom, n)
    return power_compose(in_old_radius, backsub_revert(eta, n), n)


def theta_tilde_by_binomials(sin_power, cos_power, sign, order):
    """``(sin r / r)^a cos^b r`` (hyperbolic functions for ``sign < 0``) from Taylor sums."""
    n = order + 1
    if sign == 0:
        return [Fraction(1)] + [Fraction(0)] * order
    s = [Fraction(0)] * n
    c = [Fraction(0)] * n
    for i in range(0, n, 2):
        sgn = (-1) ** (i // 2) if sign > 0 else 1
        s[i] = Fraction(sgn, factorial(i + 1))
        c[i] = Fraction(sgn, factorial(i))
    return naive_mul(naive_int_pow(s, sin_power, n), naive_int_pow(c, cos_power, n), n)
