#!/usr/bin/env python3
"""psi_dual psi = lambda on each model, for a range of n."""
import argparse

from tmf_adams import SpectrumModel
from tmf_adams.adams import verify_conjecture
from tmf_adams.models import TMF1_TABLE, witness


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--ns", default="3,5,7,11,13")
    ap.add_argument("--lo", type=int, default=-96)
    ap.add_argument("--hi", type=int, default=96)
    args = ap.parse_args()

    for n in (int(x) for x in args.ns.split(",")):
        for make in (SpectrumModel.ku, SpectrumModel.ko, lambda *p: SpectrumModel.tmf(2, 3, *p), SpectrumModel.tmf2):
            model = make(n)
            rep = verify_conjecture(model, n, (args.lo, args.hi))
            lam = witness(model).lam(n, model.base)
            print(f"n={n:<3} {model.name:<18} lambda={str(lam):<14} {rep.summary()}")
    print()
    print("TMF1(m) witnesses:")
    for m, l in TMF1_TABLE.items():
        w = witness("TMF1", m)
        print(f"  m={m:<3} shift {w.shift:>3}  D in degree {w.witness_degree:>4}  lambda = n^{w.lambda_exponent}")


if __name__ == "__main__":
    main()
