#!/usr/bin/env python3
"""Print psi^n on every TMF basis class in a window, next to n^ceil(k/2).

    python3 scripts/theorem_b_table.py --n 5 --lo -48 --hi 48
    python3 scripts/theorem_b_table.py --n 5 --invert 5 --lo 70 --hi 200   # ledger torsion
"""
import argparse
from fractions import Fraction

from tmf_adams import InvertedSet, SpectrumModel
from tmf_adams.adams import psi_scalar


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--lo", type=int, default=-48)
    ap.add_argument("--hi", type=int, default=48)
    ap.add_argument("--invert", default=None, help="comma separated primes (default: those of 6n)")
    args = ap.parse_args()

    base = InvertedSet.inverting(6 * args.n) if args.invert is None else InvertedSet(
        tuple(int(p) for p in args.invert.split(","))
    )
    model = SpectrumModel("TMF", base)
    print(f"{model.name}, n = {args.n}")
    print(f"{'k':>5}  {'class':<32} {'psi^n':>22}  {'n^ceil(k/2)':>22}  ok")
    bad = 0
    for k in range(args.lo, args.hi + 1):
        for b in model.basis(k):
            got = psi_scalar(model, args.n, b).value
            want = Fraction(args.n) ** -(-k // 2) if b.is_free else Fraction(1)
            bad += got != want
            print(f"{k:>5}  {b.label:<32} {str(got):>22}  {str(want):>22}  {'y' if got == want else 'N'}")
    print(f"{bad} mismatches")


if __name__ == "__main__":
    main()
