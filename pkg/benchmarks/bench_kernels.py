"""Time the compiled and pure-Python ordering kernels on the same inputs.

    python benchmarks/bench_kernels.py [--edges 8] [--repeat 3]
"""
import argparse
import random
import time
from itertools import islice, permutations

from orbisum import _kernels_py

try:
    from orbisum import _kernels
except ImportError:
    _kernels = None


def random_forest(rng, m):
    n = m + 1
    us, vs = [], []
    for v in range(1, n):
        us.append(rng.randrange(v))
        vs.append(v)
    flags = [rng.randint(0, 1) for _ in range(n)]
    return n, us, vs, flags


def best_of(repeat, fn, *args):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--edges", type=int, default=8)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    if _kernels is None:
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation`")

    rng = random.Random(args.seed)
    print(f"{'kernel':<20}{'edges':>6}{'python s':>12}{'cython s':>12}{'speedup':>9}")
    for m in range(4, args.edges + 1):
        n, us, vs, flags = random_forest(rng, m)
        tp, rp = best_of(args.repeat, _kernels_py.flagged_join_range, n, us, vs, flags)
        tc, rc = best_of(args.repeat, _kernels.flagged_join_range, n, us, vs, flags)
        assert rp == rc, (rp, rc)
        print(f"{'join range':<20}{m:>6}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}")

    n, us, vs, flags = random_forest(rng, args.edges)
    orders = [list(p) for p in islice(permutations(range(args.edges)), 20000)]
    tp, rp = best_of(args.repeat, _kernels_py.flagged_joins, n, us, vs, flags, orders)
    tc, rc = best_of(args.repeat, _kernels.flagged_joins, n, us, vs, flags, orders)
    assert rp == rc
    print(f"{'joins, 20000 rows':<20}{args.edges:>6}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}")


if __name__ == "__main__":
    main()
