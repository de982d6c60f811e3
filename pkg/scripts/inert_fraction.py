"""Share of primes q <= q_max for which B_k has no root mod q, for each even k.

    python scripts/inert_fraction.py --kmax 20 --qmax 20000
"""

import argparse

from bernsieve.cli import decimal_str
from bernsieve.modular import inert_density


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--kmax", type=int, default=16)
    ap.add_argument("--qmax", type=int, default=10**4)
    ap.add_argument("--r", type=int, default=1)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    for k in range(2, args.kmax + 1, 2):
        d = inert_density(k, args.r, args.qmax, workers=args.workers)
        print(f"k={k:3d}  inert {d.inert_count:6d} / {d.prime_count:6d}  = {decimal_str(d.fraction, 4)}")


if __name__ == "__main__":
    main()
