"""Time the evaluation kernels: compiled extension vs pure Python.

Evaluates a batch of formulas over a deliberately large hom-space with each
backend and prints points/second plus the speedup.  Usage:

    python benchmarks/bench_backends.py [--points 40000] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

from repkit import kernels
from repkit.algebra import direct_product
from repkit.formulas import parse
from repkit.repfile import bundled_catalog
from repkit.semantics import val

FORMULAS = [
    "x1*(y1 - 1) = 0",
    "x1*(y1 + y2^-1) + x2*(2) = 0",
    "exists x1 (x1*(y1*y2) + x2*(1 - y1) = 0)",
    "forall y2 (x1*(y2 - 1) = 0 | ~(y1*y2 = 1))",
    "exists y1 (x1*(y1^2 - 1) = 0 & x2*(y1 + 1) = 0)",
]


def _build_space():
    cat = bundled_catalog()
    rep = direct_product([cat.get("gl2_z2sq"), cat.get("neg_c2_z4")])
    n, m = 2, 2
    points = (rep.module.size**n) * (rep.group.order**m)
    return rep, n, m, points


def _run(rep, n, m, repeat: int) -> float:
    modulus = rep.module.ring.modulus
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        for text in FORMULAS:
            val(parse(text, modulus), rep, n, m)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3, help="timing repetitions (best-of)")
    args = parser.parse_args()

    rep, n, m, points = _build_space()
    print(f"space: |V|={rep.module.size} |G|={rep.group.order} n={n} m={m} "
          f"-> {points} points, {len(FORMULAS)} formulas")

    from repkit import _kernels_py

    backends = [("pure", _kernels_py)]
    try:
        from repkit import _speedups

        backends.append(("compiled", _speedups))
    except ImportError:
        print("compiled extension not built; timing the pure backend only")

    saved = (kernels.action_atom_bits, kernels.group_atom_bits)
    results = {}
    try:
        for name, impl in backends:
            kernels.action_atom_bits = impl.action_atom_bits
            kernels.group_atom_bits = impl.group_atom_bits
            seconds = _run(rep, n, m, args.repeat)
            results[name] = seconds
            rate = points * len(FORMULAS) / seconds
            print(f"{name:>9}: {seconds * 1000:8.1f} ms   ({rate:,.0f} points/s)")
    finally:
        kernels.action_atom_bits, kernels.group_atom_bits = saved

    if "compiled" in results:
        print(f" speedup : {results['pure'] / results['compiled']:.1f}x")


if __name__ == "__main__":
    main()
