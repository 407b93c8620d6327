"""Compare the compiled and NumPy kernel backends.

    python3 benchmarks/bench_kernels.py --sizes 16 20 24 --repeats 3

Times negative-sign counting over the full group of an aligned
three-block state, and the partitioned count with one thread per part.
"""

from __future__ import annotations

import argparse
import json
import os
import time

from hyperstab import kernels
from hyperstab.stabilizer import HyperState, count_negative_closed, generator_arrays


def state_for(n: int) -> HyperState:
    base, extra = divmod(n, 3)
    return HyperState.aligned(*(base + (1 if k < extra else 0) for k in range(3)))


def best_time(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_backend(name: str, n: int, repeats: int) -> dict:
    impl = kernels.load_backend(name)
    state = state_for(n)
    gx, gz, gph = generator_arrays(state)
    expected = count_negative_closed(state)
    neg, odd = impl.count_negative(gx, gz, gph, 0, 0, 0)
    if (neg, odd) != (expected, 0):
        raise SystemExit(f"{name} backend miscounted n={n}: {neg} vs {expected}")
    t = best_time(lambda: impl.count_negative(gx, gz, gph, 0, 0, 0), repeats)
    return {"backend": name, "n": n, "seconds": t, "elements_per_second": (1 << n) / t}


def bench_partitions(n: int, parts: int, repeats: int) -> dict:
    from hyperstab.stabilizer import count_negative

    state = state_for(n)
    t = best_time(lambda: count_negative(state, partitions=parts, threads=parts), repeats)
    return {"backend": kernels.BACKEND, "n": n, "partitions": parts, "seconds": t}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[12, 16, 20, 24])
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--python-max", type=int, default=24,
                        help="skip the NumPy backend above this size")
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args()

    rows = []
    for n in args.sizes:
        for name in kernels.available_backends():
            if name == "python" and n > args.python_max:
                continue
            rows.append(bench_backend(name, n, args.repeats))
    scaling = [bench_partitions(max(args.sizes), p, args.repeats) for p in (1, 2, 4)]

    if args.json:
        print(json.dumps({"cpu_count": os.cpu_count(), "kernels": rows, "partitions": scaling}, indent=2))
        return
    print(f"cpu_count={os.cpu_count()}  default backend={kernels.BACKEND}")
    print(f"{'backend':<9} {'n':>3} {'seconds':>10} {'elements/s':>12}")
    for r in rows:
        print(f"{r['backend']:<9} {r['n']:>3} {r['seconds']:>10.4f} {r['elements_per_second']:>12.3g}")
    by_n = {}
    for r in rows:
        by_n.setdefault(r["n"], {})[r["backend"]] = r["seconds"]
    for n, t in by_n.items():
        if len(t) == 2:
            print(f"n={n}: compiled is {t['python'] / t['compiled']:.1f}x faster")
    base = scaling[0]["seconds"]
    for r in scaling:
        print(f"partitions={r['partitions']}: {r['seconds']:.4f} s, speedup {base / r['seconds']:.2f}x")


if __name__ == "__main__":
    main()
