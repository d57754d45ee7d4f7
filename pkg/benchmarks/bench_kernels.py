"""Compare the compiled kernels against the pure-Python fallback.

Times the two operations that dominate real workloads: the mod-p sieve row
(one full B_k table per prime) and power-sum extraction. Run from a checkout
with the extension built:

    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --primes 1009 4001 10007 --repeats 5
"""

import argparse
import statistics
import time

from bernpairs._kernels import _native, pure


def _best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times)


def bench_sieve(primes, repeats):
    print(f"{'sieve p':>10} {'pure (s)':>10} {'native (s)':>11} {'speedup':>8}")
    for p in primes:
        pure_best, _ = _best_of(lambda: pure.bern_even_residues(p), repeats)
        native_best, _ = _best_of(lambda: _native.bern_even_residues(p), repeats)
        print(
            f"{p:>10} {pure_best:>10.4f} {native_best:>11.4f} "
            f"{pure_best / native_best:>7.1f}x"
        )


def bench_power_sum(repeats):
    cases = [
        (1148, 37, 2, 2),
        (2538, 59, 2, 2),
        (107430, 149, 2, 2),
        (272876, 337, 2, 1),
    ]
    print(f"\n{'power sum':>22} {'pure (s)':>10} {'native (s)':>11} {'speedup':>8}")
    for n, p, m, K in cases:
        label = f"n={n} p={p}"
        got_pure = pure.power_sum(n, p, m, K)
        got_native = _native.power_sum_u64(n, p, m, K)
        assert got_pure == got_native, f"backend mismatch at {label}"
        pure_best, _ = _best_of(lambda: pure.power_sum(n, p, m, K), repeats)
        native_best, _ = _best_of(
            lambda: _native.power_sum_u64(n, p, m, K), repeats
        )
        print(
            f"{label:>22} {pure_best:>10.4f} {native_best:>11.4f} "
            f"{pure_best / native_best:>7.1f}x"
        )


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--primes",
        type=int,
        nargs="+",
        default=[1009, 4001, 10007],
        help="sieve sizes to time",
    )
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    if _native is None:
        raise SystemExit(
            "compiled extension not available; build it first "
            "(pip install -e . --no-build-isolation)"
        )
    bench_sieve(args.primes, args.repeats)
    bench_power_sum(args.repeats)


if __name__ == "__main__":
    main()
