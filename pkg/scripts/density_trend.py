"""Print how the survivor density bound falls as more inert primes are used.

    python scripts/density_trend.py --k 2 --r 1 --X 1000000,10000000 --qmax 10,100,1000,10000
"""

import argparse

from bernsieve.cli import decimal_str
from bernsieve.sieve import density_series


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--r", type=int, default=1)
    ap.add_argument("--X", default="100000,1000000")
    ap.add_argument("--qmax", default="10,100,1000,10000")
    args = ap.parse_args()
    xs = [int(t) for t in args.X.split(",")]
    qs = [int(t) for t in args.qmax.split(",")]

    print(f"k={args.k} r={args.r}")
    print(f"{'X':>10} {'q_max':>8} {'survivors':>10}  density bound")
    for p in density_series(args.k, args.r, xs, qs):
        print(f"{p.X:>10} {p.q_max:>8} {p.survivor_count:>10}  {decimal_str(p.density_bound, 6)}")


if __name__ == "__main__":
    main()
