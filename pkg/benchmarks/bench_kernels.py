"""Compare the compiled kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from toric_schubert import kernels, parse_type, parse_word
from toric_schubert.cohomology import mod2_structure, presentation, product_table

CASES = [("A5", "3,1,4,5,2", 3), ("D6", "1,2,3,4,5,6", 3), ("E6", "1,3,4,2,5,6", 2), ("A8", "7,8,4,5,6,2,1,3", 2)]


def _box_args(ring, bound):
    t = product_table(ring)
    r = t.r
    parity = np.ones(1 << r, dtype=np.uint8)
    return t.array(), bound, parity


def _eigen_args(ring):
    s = mod2_structure(ring)
    r = s.r
    sq = [s.table[a][a] for a in range(r)]
    prod = [[s.table[b][a] for a in range(r)] for b in range(r)]
    return sq, prod, r


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)}")
    if "cython" not in backends:
        print("compiled kernels not built; only the fallback is timed")
    print(f"{'case':<22}{'kernel':<12}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for t, word, bound in CASES:
        ring = presentation(parse_word(parse_type(t), word))
        jobs = {
            "box": lambda b, a=_box_args(ring, bound): kernels.box_square_zero(*a, backend=b),
            "eigen": lambda b, a=_eigen_args(ring): kernels.gf2_eigen_dims(*a, backend=b),
        }
        for name, job in jobs.items():
            results = [job(b) for b in backends]
            assert all(np.array_equal(np.asarray(results[0]), np.asarray(x)) for x in results[1:]), (t, name)
            times = [min(timeit.repeat(lambda b=b: job(b), number=1, repeat=args.repeat)) for b in backends]
            line = f"{t + ' ' + word:<22}{name:<12}" + "".join(f"{x * 1e3:>10.2f}ms" for x in times)
            if len(times) > 1:
                line += f"{times[0] / times[1]:>11.1f}x"
            print(line)


if __name__ == "__main__":
    main()
