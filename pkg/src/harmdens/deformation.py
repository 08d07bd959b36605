"""Radial conformal deformations that prescribe the volume density.

A radial deformation is encoded by its new radial distance ``eta(r)`` (odd,
``eta'(0) = 1``); the conformal factor is ``psi = eta'``. The density of the
deformed metric, as a function of the new radius, satisfies

    Theta~_new(eta(r)) = (eta(r)/r)^(1-m) * psi(r)^(m-1) * Theta~_old(r).

Prescribing ``Theta~_new = f1`` over a source density ``f2`` is solved with
``phi_i = f_i^(1/(1-m))``, ``Phi_i = (phi_i - 1)/r^2``,
``alpha_i(r) = int_0^r t Phi_i(t) dt`` and ``eta = r*beta`` where

    G(r, beta) = alpha_2(r) - log(beta) - alpha_1(r*beta) = 0.

The germ is computed exactly as a rational series (:func:`solve_series`),
and numerically on a grid by Newton continuation (:func:`solve_numeric`).
"""

import bisect
import logging
import math
from collections import namedtuple
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from scipy.integrate import quad

from . import series as ser
from .asymptotics import HSequence
from .errors import (ContinuationError, DomainError, InvalidTargetError,
                     NormalizationError, ParityError, PositivityError)
from .models import theta_tilde_series, theta_tilde_value
from .series import TruncatedSeries

log = logging.getLogger(__name__)

TOL_NEWTON = 1e-12
TOL_QUAD = 1e-12
SERIES_SWITCH = 0.1
MAX_NEWTON = 50
NUMERIC_SERIES_ORDER = 24

GridRow = namedtuple("GridRow", "r beta eta psi residual")


def _check_density(s, label):
    if s[0] != 1:
        raise NormalizationError(f"{label} must have constant term 1, got {s[0]}")
    if any(s.coeffs[1::2]):
        raise ParityError(f"{label} must be even; odd coefficients are nonzero")
    return s.with_parity(ser.EVEN)


@dataclass
class DeformationProblem:
    """Prescribe ``f1`` (density in the new radius) over the source density ``f2``.

    Each density may be given as an exact series germ, a float callable, or
    both. The series is required by :func:`solve_series`; the numeric solver
    uses the series below ``SERIES_SWITCH`` and the callable above it.
    """

    m: int
    f1_series: Optional[TruncatedSeries] = None
    f2_series: Optional[TruncatedSeries] = None
    f1: Optional[Callable[[float], float]] = None
    f2: Optional[Callable[[float], float]] = None
    f1_domain: float = math.inf
    f2_domain: float = math.inf

    def __post_init__(self):
        if self.m < 2:
            raise DomainError(f"dimension m={self.m} must be at least 2")
        if self.f1_series is None and self.f1 is None:
            self.f1_series = TruncatedSeries.constant(1, NUMERIC_SERIES_ORDER)
        if self.f1_series is not None:
            self.f1_series = _check_density(self.f1_series, "f1")
        if self.f2_series is not None:
            self.f2_series = _check_density(self.f2_series, "f2")

    @classmethod
    def for_space(cls, space, target=None, order=NUMERIC_SERIES_ORDER):
        """Source density of a catalog space; target ``Xi`` from an H-sequence (default 1)."""
        f2s = theta_tilde_series(space, order)
        f1s = None if target is None else target_series(target, order)
        f1 = None if f1s is None else f1s.evaluate
        return cls(m=space.dim, f1_series=f1s, f2_series=f2s, f1=f1,
                   f2=lambda r: theta_tilde_value(space, r),
                   f2_domain=space.injectivity_radius)


@dataclass
class DeformationSolution:
    eta_series: Optional[TruncatedSeries] = None
    psi_series: Optional[TruncatedSeries] = None
    grid: list = field(default_factory=list)
    reached_r: Optional[float] = None
    complete: bool = True

    @property
    def beta_series(self):
        return self.eta_series.shift(-1)


def _alpha_series(f, m):
    n = f.order
    if n < 2:
        return TruncatedSeries.constant(0, n)
    phi = ser.pow_q(f, Fraction(1, 1 - m))
    return ser.antiderivative((phi - 1).shift(-2).shift(1))


def _series_inputs(p, order):
    out = []
    for label, s in (("f1", p.f1_series), ("f2", p.f2_series)):
        if s is None or s.order < order:
            have = "none" if s is None else f"order {s.order}"
            raise ValueError(f"{label} series needed to order {order}, have {have}")
        out.append(s.truncate(order))
    return out


def solve_series(p, order):
    """Exact germ of the deformation to ``psi`` order ``order`` (``eta`` one higher)."""
    f1, f2 = _series_inputs(p, order)
    alpha1, alpha2 = _alpha_series(f1, p.m), _alpha_series(f2, p.m)
    beta = TruncatedSeries.constant(1, order)
    # alpha_i start at r^2, so each pass fixes two more coefficients of beta
    for _ in range(math.ceil(order / 2) + 1):
        beta = ser.exp(alpha2 - ser.compose(alpha1, beta.shift(1).truncate(order)))
    return _from_beta(beta)


def flatten_series(f2, m, order):
    """Closed-form germ for the target ``Xi = 1``: ``beta = exp(alpha_2)``."""
    f2 = _check_density(f2, "f2")
    if f2.order < order:
        raise ValueError(f"f2 series needed to order {order}, have order {f2.order}")
    return _from_beta(ser.exp(_alpha_series(f2.truncate(order), m)))


def _from_beta(beta):
    eta = beta.shift(1)
    return DeformationSolution(eta_series=eta, psi_series=ser.derivative(eta))


def transform_density(theta_tilde, eta, m):
    """Density of the deformed metric as a series in the new radial coordinate."""
    theta_tilde = _check_density(theta_tilde, "theta_tilde")
    if eta.order < 1 or not eta[1] > 0 or any(eta.coeffs[0::2]):
        raise DomainError("eta must be odd with a positive linear coefficient")
    # eta = c * rho with rho'(0) = 1; the powers of c cancel in the density
    c = eta[1]
    rho = (eta / c).with_parity(ser.ODD)
    ratio = ser.pow_q(rho.shift(-1), 1 - m)
    speed = ser.pow_q(ser.derivative(rho), m - 1)
    in_old_radius = ratio * speed * theta_tilde
    inverse = ser.revert(rho)
    inverse = ser.TruncatedSeries._trusted(
        [a / c ** i for i, a in enumerate(inverse.coeffs)], inverse.parity)
    return ser.compose(in_old_radius, inverse)


def target_series(target, order=None):
    """Even series ``Xi`` with the given expansion coefficients; missing entries are 0."""
    target = HSequence(target)
    if not target.odd_entries_vanish():
        raise InvalidTargetError("target coefficients of odd index must vanish")
    order = target.order if order is None else order
    return TruncatedSeries(target[:order + 1], parity=ser.EVEN, order=order)


def prescribe(space, target, order=None):
    """Deformation of ``space`` whose density expansion is ``target`` through ``order``."""
    xi = target_series(target, order)
    problem = DeformationProblem(m=space.dim, f1_series=xi,
                                 f2_series=theta_tilde_series(space, xi.order))
    return solve_series(problem, xi.order)


def achieved_sequence(space, solution):
    """H-sequence actually produced by ``solution`` on ``space`` (round-trip check)."""
    from .asymptotics import extract_H
    order = solution.eta_series.order - 1
    return extract_H(transform_density(theta_tilde_series(space, order),
                                       solution.eta_series, space.dim))


# -- numeric continuation ----------------------------------------------------

class _Side:
    """``phi``, ``Phi`` and the cached integral ``alpha`` for one density."""

    def __init__(self, fn, series, m, domain, tol_quad, switch):
        self.fn, self.domain = fn, domain
        self.exponent = 1.0 / (1 - m)
        self.tol, self.switch = tol_quad, switch
        self.trivial = fn is None and series is not None and not any(series.coeffs[1:])
        self.phi_s = self.Phi_s = self.alpha_s = None
        if series is not None and series.order >= 2:
            phi = ser.pow_q(series, Fraction(1, 1 - m))
            Phi = (phi - 1).shift(-2)
            self.phi_s = [float(c) for c in phi.coeffs]
            self.Phi_s = [float(c) for c in Phi.coeffs]
            self.alpha_s = [float(c) for c in ser.antiderivative(Phi.shift(1)).coeffs]
        if fn is None and series is not None:
            self.fn = series.evaluate
        low = switch if self.Phi_s is not None else 0.0
        self.knots = [0.0] + ([low] if low else [])
        self.values = [0.0] + ([_horner(self.alpha_s, low)] if low else [])

    def f(self, t):
        if t >= self.domain:
            raise DomainError(f"density evaluated at {t}, beyond its domain {self.domain}")
        v = self.fn(t)
        if not v > 0:
            raise PositivityError(f"density is {v} at r={t}; must stay positive")
        return v

    def phi(self, t):
        if self.trivial:
            return 1.0
        if t < self.switch and self.phi_s is not None:
            return _horner(self.phi_s, t)
        return self.f(t) ** self.exponent

    def Phi(self, t):
        if self.trivial:
            return 0.0
        if t < self.switch and self.Phi_s is not None:
            return _horner(self.Phi_s, t)
        return (self.f(t) ** self.exponent - 1.0) / (t * t)

    def alpha(self, x):
        if self.trivial or x == 0:
            return 0.0
        if x < self.switch and self.alpha_s is not None:
            return _horner(self.alpha_s, x)
        i = bisect.bisect_right(self.knots, x) - 1
        base, value = self.knots[i], self.values[i]
        if x > base:
            piece, _ = quad(lambda t: t * self.Phi(t), base, x,
                            epsabs=self.tol, epsrel=0.0, limit=200)
            value += piece
            self.knots.insert(i + 1, x)
            self.values.insert(i + 1, value)
        return value


def _horner(coeffs, x):
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def solve_numeric(p, grid, *, tol_newton=TOL_NEWTON, tol_quad=TOL_QUAD,
                  switch=SERIES_SWITCH, max_iter=MAX_NEWTON):
    """Continue ``beta`` from ``(r=0, beta=1)`` along an increasing grid.

    Grid points at or beyond the source density's domain are dropped (the
    solution is marked incomplete) rather than extrapolated.
    """
    grid = [float(r) for r in grid]
    if any(b <= a for a, b in zip(grid, grid[1:])) or (grid and grid[0] <= 0):
        raise DomainError("grid must be positive and strictly increasing")
    if p.f2 is None and p.f2_series is None:
        raise ValueError("numeric solve needs f2 as a callable or a series")
    s1 = _Side(p.f1, p.f1_series, p.m, p.f1_domain, tol_quad, switch)
    s2 = _Side(p.f2, p.f2_series, p.m, p.f2_domain, tol_quad, switch)
    m = p.m
    rows, beta, last = [], 1.0, None
    complete = True
    for r in grid:
        if r >= p.f2_domain:
            log.warning("stopping continuation at r=%g: source density ends at %g", r, p.f2_domain)
            complete = False
            break
        target = s2.alpha(r)
        beta = _newton(s1, r, target, beta, tol_newton, max_iter, last)
        eta = r * beta
        psi = s2.phi(r) * beta / s1.phi(eta)
        lhs = s1.f(eta) if not s1.trivial else 1.0
        rhs = beta ** (1 - m) * psi ** (m - 1) * (s2.f(r) if not s2.trivial else 1.0)
        rows.append(GridRow(r, beta, eta, psi, abs(lhs - rhs)))
        last = r
    return DeformationSolution(grid=rows, reached_r=last, complete=complete)


def _newton(s1, r, target, beta, tol, max_iter, last):
    def G(b):
        return target - math.log(b) - s1.alpha(r * b)

    b = beta
    try:
        for _ in range(max_iter):
            g = G(b)
            if abs(g) <= tol:
                return b
            dg = -1.0 / b - r * (r * b) * s1.Phi(r * b)
            nxt = b - g / dg
            if not (nxt > 0 and math.isfinite(nxt) and r * nxt < s1.domain):
                break
            b = nxt
    except (DomainError, PositivityError):
        pass
    return _bisect(G, beta, tol, r, last)


def _bisect(G, seed, tol, r, last):
    lo, hi = seed, seed
    try:
        for _ in range(60):
            if G(lo) > 0:
                break
            lo /= 2
        for _ in range(60):
            if G(hi) < 0:
                break
            hi *= 2
        if not (G(lo) > 0 > G(hi)):
            raise ContinuationError(f"no bracket for beta at r={r}", last)
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            g = G(mid)
            if abs(g) <= tol or hi - lo <= 4e-16 * mid:
                return mid
            if g > 0:
                lo = mid
            else:
                hi = mid
    except (DomainError, PositivityError) as exc:
        raise ContinuationError(f"continuation failed at r={r}: {exc}", last) from exc
    raise ContinuationError(f"bisection did not converge at r={r}", last)


# -- explicit CP^2 reference ---------------------------------------------------

_SQRT3 = math.sqrt(3.0)
CP2_C1 = 3 ** 0.75 * math.exp(math.pi / (2 * _SQRT3))
CP2_BLOWUP = 3 ** 0.75 * math.exp(math.pi / (4 * _SQRT3))


def cp2_reference(r):
    """Closed-form ``(eta, phi)`` flattening the CP^2 density, ``0 < r < pi/2``."""
    r = float(r)
    if not 0 < r < math.pi / 2:
        raise DomainError(f"r={r} outside (0, pi/2)")
    c = math.cos(r)
    c23 = c ** (2.0 / 3.0)
    gap = -math.expm1(math.log(c) * 2.0 / 3.0)   # 1 - cos^(2/3), no cancellation near 0
    quad_form = 1.0 + c23 + c23 * c23
    damp = math.exp(-0.5 * _SQRT3 * math.atan((2.0 * c23 + 1.0) / _SQRT3))
    eta = CP2_C1 * math.sqrt(gap) * quad_form ** -0.25 * damp
    phi = CP2_C1 * math.sin(r) * damp / (math.sqrt(gap) * c ** (1.0 / 3.0) * quad_form ** 1.25)
    return eta, phi
