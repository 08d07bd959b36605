"""Spectra of the Weyl-Jacobi operator on the catalog spaces.

Every catalog space is Einstein, so the Weyl-Jacobi operator of a unit
vector ``x`` is ``J(x) - kappa * (Id - x x^T)`` with
``kappa = Ric(x, x) / (m - 1)``. On each eigenspace of ``J(x)`` orthogonal
to ``x`` the eigenvalue is ``mu - kappa``; on ``x`` itself it is 0. The
spectrum does not see a conformal factor, so nothing here takes a
deformation as input.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import WeylUndefinedError


@dataclass(frozen=True)
class WeylSignature:
    """Eigenvalues with multiplicities, ascending, and the sign counts."""

    spectrum: tuple
    counts: tuple

    def __post_init__(self):
        if sum(mult for _, mult in self.spectrum) < 1:
            raise ValueError("empty spectrum")
        trace = sum(ev * mult for ev, mult in self.spectrum)
        if trace != 0:
            raise ValueError(f"Weyl-Jacobi spectrum must be traceless, trace is {trace}")
        if self.counts != _counts(self.spectrum):
            raise ValueError(f"counts {self.counts} do not match spectrum")

    @classmethod
    def from_pairs(cls, pairs):
        merged = Counter()
        for ev, mult in pairs:
            if mult:
                merged[Fraction(ev)] += mult
        spectrum = tuple(sorted(merged.items()))
        return cls(spectrum, _counts(spectrum))

    @property
    def dim(self):
        return sum(mult for _, mult in self.spectrum)

    @property
    def is_zero(self):
        return all(ev == 0 for ev, _ in self.spectrum)

    def to_json(self):
        return {"spectrum": [[str(ev), mult] for ev, mult in self.spectrum],
                "counts": list(self.counts)}


def _counts(spectrum):
    neg = sum(mult for ev, mult in spectrum if ev < 0)
    zero = sum(mult for ev, mult in spectrum if ev == 0)
    pos = sum(mult for ev, mult in spectrum if ev > 0)
    return (neg, zero, pos)


def weyl_spectrum(space):
    if space.dim < 4:
        raise WeylUndefinedError(f"Weyl-Jacobi operator needs dimension >= 4, got {space.dim}")
    kappa = space.ricci_unit / (space.dim - 1)
    pairs = [(0, 1)]  # the radial direction x
    radial_left = 1
    for mu, mult in space.jacobi_spectrum:
        if mu == 0 and radial_left:
            mult -= 1
            radial_left = 0
        pairs.append((mu - kappa, mult))
    return WeylSignature.from_pairs(pairs)


def odd_product_spectrum(space):
    """Signature of the odd-dimensional warped product built on ``space``.

    Along a direction tangent to the even factor the operator agrees with
    that of the factor; the extra line only adds to the kernel.
    """
    if space.dim % 2:
        raise WeylUndefinedError(f"the product construction needs an even factor, got dim {space.dim}")
    base = weyl_spectrum(space)
    return WeylSignature.from_pairs(base.spectrum + ((0, 1),))


def _normalized(sig):
    top = max(abs(ev) for ev, _ in sig.spectrum)
    return Counter({ev / top: mult for ev, mult in sig.spectrum})


def signatures_distinct(a, b):
    """True iff no positive rescaling carries one spectrum onto the other."""
    if a.is_zero and b.is_zero:
        return False
    if a.is_zero or b.is_zero:
        return True
    return _normalized(a) != _normalized(b)
