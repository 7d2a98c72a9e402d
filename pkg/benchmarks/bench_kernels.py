"""Compare the compiled bitset kernels against the pure-Python reference.

Times distributive-ideal enumeration and closure, the two kernel-bound
operations, on Boolean lattices of growing size.  Run from the repo root:

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import random
import time

from oqlkit._kernels import pure
from oqlkit.caps import Caps
from oqlkit.catalog import make_boolean

try:
    from oqlkit._kernels import _bitops as compiled
except ImportError:
    compiled = None


def bench(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    if compiled is None:
        print("compiled kernels not built; showing pure timings only")

    # sizes sit inside the library's own exhaustive-enumeration cap: the
    # submask sweep in is_dideal is exponential in the carrier
    for nbits in (3, 4):
        lat = make_boolean(nbits, caps=Caps(max_elements=64))
        n = len(lat.elements)
        meet_flat, join_flat, down = lat._flat()
        order = lat._linear_extension()
        rng = random.Random(42)
        masks = [rng.randrange(1 << n) for _ in range(50)]

        def enum(mod):
            return lambda: mod.dideals(n, down, meet_flat, join_flat, lat.bottom_i, order)

        def close(mod):
            def run():
                for m in masks:
                    mod.di_close(m, n, down, meet_flat, join_flat, lat.bottom_i)
            return run

        row = [f"2^{nbits} ({n:2d} elements)"]
        for label, op in (("dideals", enum), ("di_close x50", close)):
            tp = bench(op(pure), args.repeat)
            cell = f"{label}: pure {tp * 1e3:8.2f} ms"
            if compiled is not None:
                tc = bench(op(compiled), args.repeat)
                cell += f"  compiled {tc * 1e3:8.2f} ms  ({tp / tc:5.1f}x)"
            row.append(cell)
        print("  |  ".join(row))


if __name__ == "__main__":
    main()
