"""Benchmark the associativity check engines on crossed product tables.

Compares the symbolic reference loop, the packed pure-Python kernel,
and the compiled kernel (when built) on the same product table, and
verifies that all engines agree before reporting timings.
"""

from __future__ import annotations

import argparse
import time

from hopfkit import generic, kernels


def _build(name: str):
    if name == "sweedler":
        return generic.taft_crossed(2)
    if name == "taft3":
        return generic.taft_crossed(3)
    if name == "u4":
        return generic.small_uq_crossed(4)
    if name == "u3":
        return generic.small_uq_crossed(3)
    raise SystemExit(f"unknown algebra {name!r}")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("algebra", nargs="?", default="u4",
                        choices=["sweedler", "taft3", "u4", "u3"])
    parser.add_argument("--skip-scalar", action="store_true",
                        help="skip the symbolic reference loop")
    args = parser.parse_args()

    t0 = time.perf_counter()
    cp = _build(args.algebra)
    build_s = time.perf_counter() - t0
    t0 = time.perf_counter()
    pt = kernels.pack_table(cp.dim, cp.ring, cp.table)
    pack_s = time.perf_counter() - t0
    print(f"{args.algebra}: dimension {cp.dim}, {pt.total_pairs} monomial "
          f"pairs, base degree {pt.r}, build {build_s:.2f}s, pack {pack_s:.2f}s")

    rows = []
    if not args.skip_scalar:
        t0 = time.perf_counter()
        fails = generic._assoc_failures_scalar(cp, 8)
        rows.append(("scalar reference", time.perf_counter() - t0, len(fails)))
    t0 = time.perf_counter()
    pure = kernels.assoc_residuals(pt, force_pure=True)
    rows.append(("packed pure", time.perf_counter() - t0, len(pure)))
    if kernels.compiled_available() and kernels.compiled_fits(pt):
        t0 = time.perf_counter()
        comp = kernels.assoc_residuals(pt)
        rows.append(("packed compiled", time.perf_counter() - t0, len(comp)))
        if comp != pure:
            print("ENGINE DISAGREEMENT between pure and compiled")
            return 1

    fastest = min(t for _n, t, _f in rows)
    for name, seconds, nfail in rows:
        rate = pt.total_pairs / seconds / 1e6 if seconds else float("inf")
        print(f"  {name:18s} {seconds:9.3f}s  {rate:8.2f}M pairs/s  "
              f"x{seconds / fastest:8.1f}  failures {nfail}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
