"""Exact coefficients c_{lam,mu} and normalisations c_lam as a text table.

    python3 scripts/coefficient_table.py --config configs/standard_n1.json --max-weight 3
"""
import argparse

from mvaskey.params import fmt_fraction, load_config
from mvaskey.polys import Family


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--config", required=True)
    ap.add_argument("--max-weight", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    fam = Family(load_config(args.config), args.max_weight, args.seed)
    for lam in fam.basis:
        rec = fam.polynomial(lam)
        print(f"p_{lam}   (c_lambda = {fmt_fraction(rec.c_lambda)})")
        for mu, c in sorted(rec.coeffs.items(), key=lambda kv: (sum(kv[0]), kv[0])):
            print(f"    m_{mu}: {fmt_fraction(c)}")


if __name__ == "__main__":
    main()
