"""Catalog of rank-1 symmetric model spaces, their densities and Jacobi traces.

Normalizations follow the standard ones in which the polar volume density is

==============  =====  =======================  =========
space           dim    density Theta(r)         inj. rad.
==============  =====  =======================  =========
S^m             m      sin^(m-1) r              pi
CP^k            2k     sin^(2k-1) r cos r       pi/2
HP^k            4k     sin^(4k-1) r cos^3 r     pi/2
OP^2            16     sin^15 r cos^7 r         pi/2
duals           same   sin -> sinh, cos -> cosh inf
R^m             m      r^(m-1)                  inf
==============  =====  =======================  =========

The Jacobi operator ``J(x)`` of a unit vector has eigenvalues in
``{0, 1, 4}`` (negated for the duals), and every covariant derivative of the
curvature vanishes, so trace monomials containing ``J_k`` with ``k >= 1``
are zero.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import series as ser
from .errors import DomainError, IncompleteTableError, UndefinedSpaceError

MAX_WEIGHT = 8

# Catalog index: 1..7 for the seven families used
# in the distinguishability results, then the constant-curvature extras.
_FAMILIES = {
    # family: (catalog index, curvature sign, compact counterpart, cli name)
    "CP": (1, 1, "CP", "cp"),
    "HP": (2, 1, "HP", "hp"),
    "OP2": (3, 1, "OP2", "op2"),
    "CH": (4, -1, "CP", "chp"),
    "HH": (5, -1, "HP", "hhp"),
    "OH2": (6, -1, "OP2", "hop2"),
    "flat": (7, 0, "flat", "flat"),
    "sphere": (8, 1, "sphere", "sphere"),
    "hyperbolic": (9, -1, "sphere", "hsphere"),
}
_ALIASES = {info[3]: fam for fam, info in _FAMILIES.items()}
_ALIASES.update({fam.lower(): fam for fam in _FAMILIES})


def family_names():
    return sorted(_FAMILIES, key=lambda f: _FAMILIES[f][0])


def resolve_family(name):
    fam = _ALIASES.get(str(name).lower())
    if fam is None:
        raise UndefinedSpaceError(f"unknown family {name!r}; choose from {sorted(_ALIASES)}")
    return fam


@dataclass(frozen=True)
class ModelSpace:
    family: str
    param: int | None
    dim: int
    curvature_sign: int
    jacobi_spectrum: tuple
    ricci_unit: Fraction
    injectivity_radius: float
    diameter: float
    cut_locus_label: str
    density_id: str
    sin_power: int = field(repr=False)
    cos_power: int = field(repr=False)

    @property
    def catalog_index(self):
        return _FAMILIES[self.family][0]

    @property
    def cli_name(self):
        return _FAMILIES[self.family][3]

    @property
    def name(self):
        return {
            "sphere": f"S^{self.dim}", "hyperbolic": f"H^{self.dim}",
            "CP": f"CP^{self.param}", "CH": f"CH^{self.param}",
            "HP": f"HP^{self.param}", "HH": f"HH^{self.param}",
            "OP2": "OP^2", "OH2": "OH^2", "flat": f"R^{self.dim}",
        }[self.family]

    @property
    def scalar_curvature(self):
        return self.dim * self.ricci_unit

    def sort_key(self):
        return (self.catalog_index, self.dim)


def make_space(family, param=None, *, k=None, m=None):
    """Build a catalog record.

    ``param`` is ``k`` for the projective families and their duals and ``m``
    for spheres, hyperbolic spaces and flat space; ``k=`` or ``m=`` may be
    given explicitly instead (``make_space("HP", m=12)`` is ``HP^3``).
    """
    fam = resolve_family(family)
    _, sign, compact, _ = _FAMILIES[fam]
    if compact in ("CP", "HP"):
        step = 2 if compact == "CP" else 4
        k = _pick(param, k, m, step, fam)
        if k < 2:
            raise UndefinedSpaceError(f"{fam} needs k >= 2, got k={k}")
        dim = step * k
    elif compact == "OP2":
        if m not in (None, 16) or param not in (None, 2, 16) or k not in (None, 2):
            raise UndefinedSpaceError(f"{fam} exists only in dimension 16")
        k, dim = None, 16
    else:
        dim = param if param is not None else m
        if dim is None or k is not None:
            raise UndefinedSpaceError(f"{fam} is parametrized by its dimension m")
        if dim < 2:
            raise UndefinedSpaceError(f"{fam} needs m >= 2, got m={dim}")

    if compact == "sphere":
        spectrum, ricci = [(0, 1), (1, dim - 1)], dim - 1
        sin_p, cos_p = dim - 1, 0
    elif compact == "CP":
        spectrum, ricci = [(0, 1), (1, 2 * k - 2), (4, 1)], 2 * k + 2
        sin_p, cos_p = 2 * k - 1, 1
    elif compact == "HP":
        spectrum, ricci = [(0, 1), (1, 4 * k - 4), (4, 3)], 4 * k + 8
        sin_p, cos_p = 4 * k - 1, 3
    elif compact == "OP2":
        spectrum, ricci = [(0, 1), (1, 8), (4, 7)], 36
        sin_p, cos_p = 15, 7
    else:
        spectrum, ricci = [(0, dim)], 0
        sin_p, cos_p = dim - 1, 0

    s = sign if sign else 1
    spectrum = tuple((Fraction(s * ev), mult) for ev, mult in spectrum if mult)
    if sign > 0:
        inj = math.pi if compact == "sphere" else math.pi / 2
        diam = inj
        cut = {"sphere": "{-P}", "OP2": "S^7"}.get(compact) or f"{compact}^{k - 1}"
        trig = ("sin", "cos")
    else:
        inj = diam = math.inf
        cut = "empty"
        trig = ("r", "1") if sign == 0 else ("sinh", "cosh")
    density = f"{trig[0]}^{sin_p}" + (f"*{trig[1]}^{cos_p}" if cos_p else "")
    if compact in ("CP", "HP"):
        param = k
    elif compact == "OP2":
        param = None
    else:
        param = dim
    return ModelSpace(family=fam, param=param, dim=dim, curvature_sign=sign, jacobi_spectrum=spectrum,
                      ricci_unit=Fraction(s * ricci) if sign else Fraction(0),
                      injectivity_radius=inj, diameter=diam, cut_locus_label=cut,
                      density_id=density, sin_power=sin_p, cos_power=cos_p)


def _pick(param, k, m, step, fam):
    if param is not None:
        k = param if k is None else k
    if k is None and m is not None:
        if m % step:
            raise UndefinedSpaceError(f"{fam} is not defined in dimension {m}")
        return m // step
    if k is None:
        raise UndefinedSpaceError(f"{fam} needs k (or m)")
    if m is not None and m != step * k:
        raise UndefinedSpaceError(f"{fam} with k={k} has dimension {step * k}, not {m}")
    return k


def catalog():
    """Every space exercised by the exact oracle checks, sorted by catalog index."""
    spaces = [make_space("CP", k) for k in range(2, 9)]
    spaces += [make_space("HP", k) for k in range(2, 5)]
    spaces += [make_space("OP2")]
    spaces += [make_space("CH", k) for k in range(2, 9)]
    spaces += [make_space("HH", k) for k in range(2, 5)]
    spaces += [make_space("OH2")]
    spaces += [make_space("flat", m) for m in range(4, 17)]
    spaces += [make_space("sphere", m) for m in range(4, 17)]
    spaces += [make_space("hyperbolic", m) for m in range(4, 17)]
    return sorted(spaces, key=ModelSpace.sort_key)


def spaces_in_dimension(m):
    """The seven numbered families (where defined) in dimension ``m``."""
    out = []
    for fam in ("CP", "HP", "OP2", "CH", "HH", "OH2", "flat"):
        try:
            out.append(make_space(fam, m=m))
        except UndefinedSpaceError:
            pass
    return out


# -- densities -------------------------------------------------------------

def theta_tilde_series(space, order):
    """Series of ``Theta(r) / r^(m-1)``: constant term 1, even."""
    if space.curvature_sign == 0:
        return ser.TruncatedSeries.constant(1, order)
    s_name, c_name = ("sin", "cos") if space.curvature_sign > 0 else ("sinh", "cosh")
    sinc = ser.elementary(s_name, order + 1).shift(-1)
    out = ser.pow_q(sinc, space.sin_power)
    if space.cos_power:
        out = out * ser.pow_q(ser.elementary(c_name, order), space.cos_power)
    return out


def theta_value(space, r):
    """Closed-form polar density ``Theta(r)`` for ``0 < r < injectivity radius``."""
    r = float(r)
    if not 0 < r < space.injectivity_radius:
        raise DomainError(f"r={r} outside (0, {space.injectivity_radius}) for {space.name}")
    if space.curvature_sign == 0:
        return r ** space.sin_power
    if space.curvature_sign > 0:
        return math.sin(r) ** space.sin_power * math.cos(r) ** space.cos_power
    return math.sinh(r) ** space.sin_power * math.cosh(r) ** space.cos_power


def theta_tilde_value(space, r):
    """``Theta(r) / r^(m-1)``, with the removable point ``r = 0`` filled in."""
    r = float(r)
    if r == 0:
        return 1.0
    if space.curvature_sign == 0:
        return 1.0
    if space.curvature_sign > 0:
        if r >= space.injectivity_radius:
            raise DomainError(f"r={r} outside (0, {space.injectivity_radius}) for {space.name}")
        return (math.sin(r) / r) ** space.sin_power * math.cos(r) ** space.cos_power
    return (math.sinh(r) / r) ** space.sin_power * math.cosh(r) ** space.cos_power


# -- trace monomials ---------------------------------------------------------

def canonical_monomial(word):
    """Canonical key of ``Tr{J_{k1} J_{k2} ...}``.

    Traces are invariant under cyclic rotation, and under reversal because each
    ``J_k`` is self-adjoint; the key is the lexicographically least spelling.
    """
    word = tuple(int(k) for k in word)
    if not word or min(word) < 0:
        raise ValueError(f"invalid trace monomial {word!r}")
    spellings = []
    for w in (word, word[::-1]):
        spellings += [w[i:] + w[:i] for i in range(len(w))]
    return min(spellings)


def monomial_weight(word):
    return sum(k + 2 for k in word)


def all_monomials(max_weight=MAX_WEIGHT):
    """Canonical monomials of weight at most ``max_weight``."""
    found = set()
    for length in range(1, max_weight // 2 + 1):
        for word in product(range(max_weight - 1), repeat=length):
            if monomial_weight(word) <= max_weight:
                found.add(canonical_monomial(word))
    return sorted(found, key=lambda w: (monomial_weight(w), w))


@dataclass(frozen=True)
class TraceTable:
    entries: dict
    dim: int

    def __getitem__(self, word):
        key = canonical_monomial(word)
        try:
            return self.entries[key]
        except KeyError:
            raise IncompleteTableError(f"no value for Tr monomial {key}") from None

    def __contains__(self, word):
        return canonical_monomial(word) in self.entries

    def power_trace(self, p):
        return self[(0,) * p]

    @classmethod
    def from_power_traces(cls, dim, traces, max_weight=MAX_WEIGHT):
        """Derivative-free table: ``traces[p]`` is ``Tr{J^p}``, every ``J_k`` monomial is 0."""
        entries = {}
        for word in all_monomials(max_weight):
            entries[word] = Fraction(traces[len(word)]) if not any(word) else Fraction(0)
        return cls(entries, dim)

    def scaled(self, c):
        """Table of the metric ``c^2 g``: a weight-``w`` monomial scales by ``c^-w``."""
        c = Fraction(c)
        return TraceTable({w: v * c ** -monomial_weight(w) for w, v in self.entries.items()},
                          self.dim)


def _power_sums(spectrum, top):
    return {p: sum(mult * ev ** p for ev, mult in spectrum) for p in range(1, top + 1)}


def trace_table(space):
    return TraceTable.from_power_traces(space.dim, _power_sums(space.jacobi_spectrum,
                                                               MAX_WEIGHT // 2))


def product_oracle(a, b, c=None, *, c2=None, order=MAX_WEIGHT):
    """Trace table and directional density of ``a x b`` along ``(c u, s v)``.

    With ``c^2 + s^2 = 1`` the Jacobi operator splits as
    ``c^2 J_a(u) + s^2 J_b(v)`` and the density along that ray is
    ``Theta~_a(c r) * Theta~_b(s r)``. Pass either ``c`` or its square ``c2``
    (rational, so irrational weights like ``1/sqrt(2)`` stay exact).
    """
    if (c is None) == (c2 is None):
        raise TypeError("give exactly one of c or c2")
    if c is not None:
        c = ser.as_rational(c)
        if not 0 <= c <= 1:
            raise DomainError(f"weight c={c} outside [0, 1]")
        c2 = c * c
    c2 = ser.as_rational(c2)
    if not 0 <= c2 <= 1:
        raise DomainError(f"weight c^2={c2} outside [0, 1]")
    s2 = 1 - c2
    ta, tb = _power_sums(a.jacobi_spectrum, 4), _power_sums(b.jacobi_spectrum, 4)
    traces = {p: c2 ** p * ta[p] + s2 ** p * tb[p] for p in range(1, 5)}
    table = TraceTable.from_power_traces(a.dim + b.dim, traces)
    dens = _rescale(theta_tilde_series(a, order), c2) * _rescale(theta_tilde_series(b, order), s2)
    return table, dens


def _rescale(even_series, c2):
    # f(c r) for even f only needs c^2
    return ser.TruncatedSeries(
        [coef * c2 ** (i // 2) for i, coef in enumerate(even_series.coeffs)], parity=ser.EVEN)
