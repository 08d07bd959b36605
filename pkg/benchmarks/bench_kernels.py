"""Compare the pure-Python and GMP kernel backends.

    python benchmarks/bench_kernels.py [--orders 12 24] [--repeat 5]

Reports the best-of-``repeat`` time per call for each kernel and for one
prescription round trip, plus the speedup of the compiled backend.
"""

import argparse
import random
import timeit
from fractions import Fraction

from harmdens import _backend
from harmdens.deformation import achieved_sequence, prescribe
from harmdens.models import make_space
from harmdens.verification import random_target


def _rand_series(rng, n, lead):
    return [Fraction(lead)] + [Fraction(rng.randint(-50, 50), rng.randint(1, 30))
                               for _ in range(n - 1)]


def workloads(order, rng):
    n = order + 1
    unit = _rand_series(rng, n, 1)
    zero = _rand_series(rng, n, 0)
    rev = [Fraction(0), Fraction(1)] + zero[2:]
    space = make_space("HP", 3)
    target = random_target(rng, order)
    while target.order < order:
        target = random_target(rng, order)
    return {
        "mul": lambda k: k.mul(unit, zero, n),
        "compose": lambda k: k.compose(unit, zero, n),
        "pow(-1/3)": lambda k: k.pow_series(unit, -1, 3, n),
        "exp": lambda k: k.exp_series(zero, n),
        "log": lambda k: k.log_series(unit, n),
        "revert": lambda k: k.revert(rev, n),
        "round trip": lambda k: achieved_sequence(space, prescribe(space, target)),
    }


def bench(order, repeat):
    rng = random.Random(order)
    rows = []
    for label, fn in workloads(order, rng).items():
        times = {}
        for name, kernels in sorted(_backend.BACKENDS.items()):
            _backend.set_backend(name)
            number = 3 if label == "round trip" else 20
            t = min(timeit.repeat(lambda: fn(kernels), number=number, repeat=repeat)) / number
            times[name] = t
        rows.append((label, times))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--orders", type=int, nargs="+", default=[12, 24])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    names = sorted(_backend.BACKENDS)
    if "cython" not in names:
        print("compiled backend not built; only the Python kernels are timed")
    previous = _backend.name
    for order in args.orders:
        print(f"\norder {order}")
        print(f"{'kernel':<12}" + "".join(f"{n + ' (ms)':>16}" for n in names) + f"{'speedup':>10}")
        for label, times in bench(order, args.repeat):
            cells = "".join(f"{times[n] * 1e3:16.3f}" for n in names)
            speed = f"{times['python'] / times['cython']:9.1f}x" if "cython" in times else ""
            print(f"{label:<12}{cells}{speed}")
    _backend.set_backend(previous)


if __name__ == "__main__":
    main()
