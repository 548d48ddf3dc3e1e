"""Compare the compiled and numpy subset-fold kernels.

Times SubsetFold construction, min_affine, min_ratio, and check_pair_ratio
on random mask families and verifies both backends return identical results.

    python3 benchmarks/bench_kernels.py --sizes 16 20 22 --repeat 3
"""

import argparse
import random
import time

from subaction._kernels import get_backend


def _bench(fn, repeat):
    best = None
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, out


def run(sizes, repeat, seed):
    backends = {}
    for name in ("numpy", "cython"):
        try:
            backends[name] = get_backend(name)
        except Exception as exc:
            print(f"backend {name}: unavailable ({exc})")
    rng = random.Random(seed)
    header = f"{'kernel':<18}{'n':>4}" + "".join(
        f"{name:>12}" for name in backends)
    print(header)
    print("-" * len(header))
    for n in sizes:
        masks = [rng.getrandbits(40) | (1 << rng.randrange(40))
                 for _ in range(n)]
        rhs = [rng.getrandbits(40) | 1 for _ in range(n)]
        folds = {}
        times = {}
        for name, mod in backends.items():
            times[name], folds[name] = _bench(
                lambda m=mod: m.SubsetFold(masks), repeat)
        _row("SubsetFold()", n, times)

        results = {}
        for name, fold in folds.items():
            times[name], results[name] = _bench(
                lambda f=fold: f.min_affine(1, 2, 16), repeat)
        _agree("min_affine", results)
        _row("min_affine(1,2)", n, times)

        for name, fold in folds.items():
            times[name], results[name] = _bench(
                lambda f=fold: f.min_ratio(), repeat)
        _agree("min_ratio", results)
        _row("min_ratio", n, times)

        for name, mod in backends.items():
            times[name], results[name] = _bench(
                lambda m=mod: m.check_pair_ratio(masks, rhs, 3, 2), repeat)
        _agree("check_pair_ratio", results)
        _row("check_pair_ratio", n, times)
        print()


def _row(label, n, times):
    cells = "".join(f"{t * 1e3:>10.2f}ms" for t in times.values())
    print(f"{label:<18}{n:>4}{cells}")


def _agree(label, results):
    vals = list(results.values())
    if any(v != vals[0] for v in vals[1:]):
        raise SystemExit(f"{label}: backends disagree: {results}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[16, 20, 22])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    run(args.sizes, args.repeat, args.seed)


if __name__ == "__main__":
    main()
