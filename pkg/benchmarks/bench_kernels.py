"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--seed 0]

Three workloads: integer diagonalization of random sparse matrices shaped
like Khovanov differentials, segment-crossing counts of random polylines,
and full homology of a few braid closures (which exercises the first
kernel through the complex module).  The compiled diagonalization works in
int64 and hands the matrix back to Python when an intermediate entry
passes 2^30; the last column says whether that happened.
"""
from __future__ import annotations

import argparse
import random
import timeit
from array import array

from dlkh import kernels
from dlkh.complex import assemble, homology
from dlkh.suites import standard


def sparse_matrix(rng: random.Random, m: int, n: int, density: float = 0.15) -> list[list[int]]:
    return [[rng.choice((-1, 1)) if rng.random() < density else 0 for _ in range(n)]
            for _ in range(m)]


def segments(rng: random.Random, count: int, span: int = 1 << 20) -> list[int]:
    out = []
    x, y = rng.randrange(span), rng.randrange(span)
    for _ in range(count):
        nx_, ny_ = rng.randrange(span), rng.randrange(span)
        out += [x, y, nx_, ny_]
        x, y = nx_, ny_
    return out


def best(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if kernels._compiled is None:
        raise SystemExit("compiled extension not available; build with "
                         "'pip install -e . --no-build-isolation'")
    rng = random.Random(args.seed)

    cases = []
    for m, n in [(40, 40), (80, 120), (160, 200)]:
        M = sparse_matrix(rng, m, n)
        assert len(kernels.diagonal(M, "cython")) == len(kernels.diagonal(M, "python"))
        ok, _ = kernels._compiled.diagonalize(array("q", [v for r in M for v in r]), m, n)
        cases.append((f"diagonal {m}x{n}",
                      lambda M=M: kernels.diagonal(M, "python"),
                      lambda M=M: kernels.diagonal(M, "cython"),
                      "" if ok else "fell back"))
    for na, nb in [(200, 200), (1000, 1000)]:
        a, b = segments(rng, na), segments(rng, nb)
        assert kernels.crossings(a, b, "python") == kernels.crossings(a, b, "cython")
        cases.append((f"crossings {na}x{nb}",
                      lambda a=a, b=b: kernels.crossings(a, b, "python"),
                      lambda a=a, b=b: kernels.crossings(a, b, "cython"), ""))
    for name in ("figure-eight", "three-twist", "cinquefoil"):
        c = assemble(standard(name))
        assert homology(c, "python") == homology(c, "cython")
        cases.append((f"homology {name}",
                      lambda c=c: homology(c, "python"),
                      lambda c=c: homology(c, "cython"), ""))

    print(f"{'workload':<26}{'python (ms)':>12}{'cython (ms)':>13}{'speedup':>9}  note")
    for label, py, cy, note in cases:
        tp, tc = best(py, args.repeat), best(cy, args.repeat)
        print(f"{label:<26}{1e3 * tp:>12.2f}{1e3 * tc:>13.2f}{tp / tc:>8.1f}x  {note}")


if __name__ == "__main__":
    main()
