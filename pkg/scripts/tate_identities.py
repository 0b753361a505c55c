#!/usr/bin/env python3
"""Time the Tate-curve invariants against the eta product at growing precision."""
import argparse
import time

from tmf_adams.qseries import tate_curve, verify_tate_identities, weierstrass_invariants


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--precisions", default="10,50,100,200,400")
    args = ap.parse_args()

    for prec in (int(p) for p in args.precisions.split(",")):
        t0 = time.perf_counter()
        ok = verify_tate_identities(prec)
        dt = time.perf_counter() - t0
        print(f"prec {prec:>4}: {'ok' if all(ok.values()) else 'MISMATCH'} in {dt:.3f}s")
        for name, v in ok.items():
            if not v:
                print(f"    failed: {name}")

    inv = weierstrass_invariants(tate_curve(8))
    print("delta =", [int(c) for c in inv.delta.coeffs])
    lead, j = inv.j
    print(f"j     = q^{lead} *", [int(c) for c in j.coeffs])


if __name__ == "__main__":
    main()
