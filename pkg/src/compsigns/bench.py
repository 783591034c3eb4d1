"""Benchmark the compiled kernels against the pure-Python twins.

Run as ``python -m compsigns.bench``.  Each workload is executed on both
backends, results are compared for exact equality (a wrong fast answer
is worse than no fast answer), and the best-of-``--repeat`` wall times
are reported side by side.
"""

from __future__ import annotations

import argparse
import time

from . import _kernels_py as pyk

try:
    from . import _kernels as cyk
except ImportError:
    cyk = None


def _workloads(quick: bool):
    n_counts = 400 if quick else 1500
    n_rows = 150 if quick else 400
    n_sk = 200 if quick else 600
    n_inv = 1000 if quick else 4000
    n_conv = 250 if quick else 800
    masks = 8 if quick else 10

    base = list(range(1, 4))
    conv_a = [(i * i + 1) % 97 - 48 for i in range(n_conv)]
    conv_b = [(7 * i + 3) % 101 - 50 for i in range(n_conv)]
    inv_coeffs = [1, 0, 1, 1]

    def all_masks(mod):
        total = 1 << masks
        out = 0
        for mask in range(total):
            members = [i + 1 for i in range(masks) if mask >> i & 1]
            out ^= mod.first_violation(members, 200) & 0xFFFF
        return out

    return [
        (f"eval_table {{1,2,3}} n<={n_counts} t=1",
         lambda mod: mod.eval_table(base, n_counts, 1)),
        (f"comp_poly_rows {{1,2,5}} n<={n_rows}",
         lambda mod: mod.comp_poly_rows([1, 2, 5], n_rows)),
        (f"sk_rows {{2,3}} k<=6 n<={n_sk}",
         lambda mod: mod.sk_rows([2, 3], 6, n_sk)),
        (f"series_inv_int deg3 order {n_inv}",
         lambda mod: mod.series_inv_int(inv_coeffs, n_inv)),
        (f"conv len {n_conv}",
         lambda mod: mod.conv(conv_a, conv_b)),
        (f"first_violation over 2^{masks} subsets",
         all_masks),
    ]


def _best_time(fn, mod, repeat: int):
    best = None
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(mod)
        dt = time.perf_counter() - t0
        best = dt if best is None or dt < best else best
    return best, result


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="python -m compsigns.bench",
                                     description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--quick", action="store_true",
                        help="smaller sizes for smoke runs")
    args = parser.parse_args(argv)

    if cyk is None:
        print("compiled kernels unavailable; nothing to compare")
        return 1

    rows = []
    for label, fn in _workloads(args.quick):
        t_py, r_py = _best_time(fn, pyk, args.repeat)
        t_cy, r_cy = _best_time(fn, cyk, args.repeat)
        if r_py != r_cy:
            print(f"MISMATCH in {label}: backends disagree")
            return 1
        rows.append((label, t_py, t_cy))

    width = max(len(r[0]) for r in rows)
    print(f"{'workload'.ljust(width)}  python      cython      speedup")
    for label, t_py, t_cy in rows:
        speed = t_py / t_cy if t_cy > 0 else float("inf")
        print(f"{label.ljust(width)}  {t_py * 1e3:9.2f}ms {t_cy * 1e3:9.2f}ms  {speed:6.2f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
