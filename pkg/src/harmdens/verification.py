"""The acceptance battery, shipped with the package so ``harmdens verify`` can run it.

Each check returns a :class:`CheckResult`. Exact checks compare reduced
rationals; numeric checks state their tolerance in ``detail``. Where a check
carries a time budget, exceeding it is a failure.
"""

import itertools
import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction as F

from scipy.integrate import quad

from . import oracles
from . import series as ser
from .asymptotics import HSequence, eval_H, extract_H, formula_table
from .deformation import (CP2_BLOWUP, DeformationProblem, achieved_sequence, cp2_reference,
                          flatten_series, prescribe, solve_numeric, transform_density)
from .models import (catalog, make_space, monomial_weight, product_oracle, spaces_in_dimension,
                     theta_tilde_series, trace_table)
from .weyl import odd_product_spectrum, signatures_distinct, weyl_spectrum

CP2_PSI = (F(1), F(1, 2), F(13, 72), F(1177, 19440), F(7369, 362880), F(681907, 97977600))
EXPECTED_TERM_COUNTS = (1, 1, 3, 3, 8, 9, 19)
ROUND_TRIPS_PER_SPACE = 50
SEED = 20240613


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self):
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number}. {self.name} ({self.seconds:.2f}s): {self.detail}"


def _budget(ok, detail, elapsed, limit):
    if limit is not None and elapsed >= limit:
        return False, f"{detail}; took {elapsed:.2f}s, budget {limit}s"
    return ok, detail


def check_cp2_flattening():
    t = time.perf_counter()
    psi = flatten_series(theta_tilde_series(make_space("CP", 2), 10), 4, 10).psi_series
    got = tuple(psi[0::2])
    ok = got == CP2_PSI and not any(psi[1::2])
    detail = "psi even coefficients " + ", ".join(map(str, got))
    return _budget(ok, detail, time.perf_counter() - t, 1.0)


def check_oracle_equivalence():
    t = time.perf_counter()
    bad = []
    spaces = catalog()
    for space in spaces:
        table, dens = trace_table(space), theta_tilde_series(space, 8)
        bad += [(space.name, nu) for nu in range(2, 9) if eval_H(table, nu) != dens[nu]]
    detail = f"{len(spaces)} spaces x nu 2..8, {len(bad)} mismatches" + (f": {bad[:5]}" if bad else "")
    return _budget(not bad, detail, time.perf_counter() - t, 5.0)


def check_product_oracle():
    s2 = make_space("sphere", 2)
    bad = []
    weights = (F(0), F(1, 4), F(1, 2), F(3, 4), F(1))
    for c2 in weights:
        table, dens = product_oracle(s2, s2, c2=c2, order=8)
        bad += [(str(c2), nu) for nu in range(2, 9) if eval_H(table, nu) != dens[nu]]
    return not bad, f"S^2 x S^2 at c^2 in {{0,1/4,1/2,3/4,1}}, {len(bad)} mismatches"


def check_formula_audit():
    table = formula_table()
    problems = []
    for nu, terms in table.items():
        problems += [f"H{nu} term weight {t.weight}" for t in terms if t.weight != nu]
    counts = tuple(len(table[nu]) for nu in range(2, 9))
    if counts != EXPECTED_TERM_COUNTS:
        problems.append(f"term counts {counts} != {EXPECTED_TERM_COUNTS}")
    tables = [trace_table(s) for s in catalog()]
    s2 = make_space("sphere", 2)
    tables += [product_oracle(s2, s2, c2=F(i, 4))[0] for i in range(5)]
    odd = [(nu, i) for i, tab in enumerate(tables) for nu in (3, 5, 7) if eval_H(tab, nu) != 0]
    if odd:
        problems.append(f"{len(odd)} nonzero odd-order values")
    return not problems, "; ".join(problems) or f"weights homogeneous, counts {counts}, odd orders vanish"


def random_target(rng, max_order=12):
    order = rng.randint(0, max_order)
    vals = [F(1)]
    for i in range(1, order + 1):
        vals.append(F(0) if i % 2 else F(rng.randint(-20, 20), rng.randint(1, 12)))
    return HSequence(vals)


def _round_trip_space(args):
    space, seed = args
    rng = random.Random(seed)
    failures = 0
    for _ in range(ROUND_TRIPS_PER_SPACE):
        target = random_target(rng)
        if achieved_sequence(space, prescribe(space, target)) != target:
            failures += 1
    return space.name, failures


def _seeded_spaces(salt):
    return [(s, SEED + salt * 1000 + i) for i, s in enumerate(catalog())]


def check_round_trip(workers=1):
    t = time.perf_counter()
    jobs = _seeded_spaces(5)
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_round_trip_space, jobs))
    else:
        results = [_round_trip_space(j) for j in jobs]
    bad = [(name, n) for name, n in results if n]
    total = len(jobs) * ROUND_TRIPS_PER_SPACE
    detail = f"{total} round trips over {len(jobs)} spaces, {sum(n for _, n in bad)} failed"
    return _budget(not bad, detail, time.perf_counter() - t, 30.0)


def random_eta(rng, order=13):
    cs = [F(0), F(1)]
    for i in range(2, order + 1):
        cs.append(F(rng.randint(-9, 9), rng.randint(1, 9)) if i % 2 else F(0))
    return ser.TruncatedSeries(cs, parity=ser.ODD)


def check_transformation_law():
    bad = []
    for space, seed in _seeded_spaces(6):
        eta = random_eta(random.Random(seed))
        theta = theta_tilde_series(space, 12)
        if list(transform_density(theta, eta, space.dim)) != \
                oracles.transform_by_substitution(theta, eta, space.dim):
            bad.append(space.name)
    return not bad, f"order 12 against brute-force substitution, {len(bad)} mismatches"


def cp2_numeric_grid():
    return [round(0.05 + 0.01 * i, 10) for i in range(136)]


def check_numeric_cp2():
    t = time.perf_counter()
    sol = solve_numeric(DeformationProblem.for_space(make_space("CP", 2)), cp2_numeric_grid())
    eta_err = max(abs(row.eta - cp2_reference(row.r)[0]) for row in sol.grid)
    res = max(row.residual for row in sol.grid)
    ok = sol.complete and len(sol.grid) == 136 and eta_err <= 1e-8 and res <= 1e-8
    detail = f"max |eta - closed form| {eta_err:.2e}, max residual {res:.2e} (tol 1e-8)"
    return _budget(ok, detail, time.perf_counter() - t, 10.0)


def check_blowup():
    r = math.pi / 2 - 1e-6
    scaled = cp2_reference(r)[1] * (math.pi / 2 - r) ** (1 / 3)
    near = abs(scaled - CP2_BLOWUP) <= 1e-3
    val, err, info = quad(lambda x: cp2_reference(x)[1], 0.0, math.pi / 2,
                          limit=200, full_output=1)[:3]
    # phi is d(eta)/dr, so the integral must reach eta at the singular endpoint
    converged = math.isfinite(val) and err < 1e-8 and abs(val - CP2_BLOWUP) < 1e-6
    detail = (f"phi*(pi/2-r)^(1/3) = {scaled:.6f} vs {CP2_BLOWUP:.6f}; "
              f"integral {val:.10f} (est. err {err:.1e})")
    return near and converged, detail


def _pattern(space, odd):
    m = space.dim + (1 if odd else 0)
    z = 2 if odd else 1
    compact = {"CP": (m - z - 1, z, 1), "HP": (m - z - 3, z, 3), "OP2": (8, z, 7)}
    fam = space.family
    if fam == "flat":
        return (0, m, 0)
    if fam in compact:
        return compact[fam]
    dual = {"CH": "CP", "HH": "HP", "OH2": "OP2"}[fam]
    n, zz, p = compact[dual]
    return (p, zz, n)


def check_weyl():
    problems = []
    for m, odd in [(m, False) for m in (4, 8, 12, 16)] + [(m, True) for m in (5, 9, 13, 17)]:
        spaces = spaces_in_dimension(m - 1 if odd else m)
        sigs = [(odd_product_spectrum if odd else weyl_spectrum)(s) for s in spaces]
        for s, sig in zip(spaces, sigs):
            if sig.counts != _pattern(s, odd):
                problems.append(f"m={m} {s.name} counts {sig.counts}")
        for (a, sa), (b, sb) in itertools.combinations(zip(spaces, sigs), 2):
            if not signatures_distinct(sa, sb):
                problems.append(f"m={m} {a.name} ~ {b.name}")
    return not problems, "; ".join(problems) or "even m 4..16 and odd m 5..17 patterns and distinctness hold"


CHECKS = [
    (1, "CP^2 flattening coefficients", check_cp2_flattening),
    (2, "formula/series oracle equivalence", check_oracle_equivalence),
    (3, "directional product oracle", check_product_oracle),
    (4, "formula table structural audit", check_formula_audit),
    (5, "prescription round trip", check_round_trip),
    (6, "transformation law vs brute force", check_transformation_law),
    (7, "numeric vs closed form (CP^2)", check_numeric_cp2),
    (8, "blow-up asymptotics", check_blowup),
    (9, "Weyl distinguishability", check_weyl),
]


def worker_count():
    try:
        return max(1, int(os.environ.get("HARMDENS_THREADS", "1")))
    except ValueError:
        return 1


def run_check(number, workers=1):
    _, name, fn = CHECKS[number - 1]
    t = time.perf_counter()
    try:
        ok, detail = fn(workers) if fn is check_round_trip else fn()
    except Exception as exc:  # a crash is a failed check, not a crashed battery
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    return CheckResult(number, name, bool(ok), detail, time.perf_counter() - t)


def run_all(numbers=None, workers=None):
    workers = worker_count() if workers is None else workers
    numbers = numbers or [n for n, _, _ in CHECKS]
    return [run_check(n, workers) for n in numbers]
