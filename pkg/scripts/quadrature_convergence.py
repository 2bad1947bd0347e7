"""Grid-size convergence of <1,1> and of the quadrature norm ratios.

Prints, for each M, the constant term against its closed form and the
worst relative error of <p_lam,p_lam>/<1,1> against the exact ratio.

    python3 scripts/quadrature_convergence.py --config configs/standard_n2.json --max-weight 2
"""
import argparse

from mvaskey.params import load_config
from mvaskey.polys import Family, norm_ratio_closed
from mvaskey.quadrature import QuadratureGrid, TorusQuadrature, norm_closed_numeric


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--config", required=True)
    ap.add_argument("--max-weight", type=int, default=2)
    ap.add_argument("--grids", type=int, nargs="*", default=[16, 32, 64, 128])
    ap.add_argument("--trunc-n", type=int, default=None)
    args = ap.parse_args()

    p = load_config(args.config)
    fam = Family(p, args.max_weight)
    closed = norm_closed_numeric(p, ())
    exact = {lam: float(norm_ratio_closed(p, lam)) for lam in fam.basis}
    print(f"n={p.n}  closed <1,1> = {closed:.15g}")
    print(f"{'M':>5} {'<1,1>':>20} {'rel err':>10} {'worst ratio err':>16}")
    for M in args.grids:
        quad = TorusQuadrature(p, QuadratureGrid(p.n, M, args.trunc_n))
        one = quad.inner(1, 1)
        worst = 0.0
        for lam in fam.basis:
            c = fam.polynomial(lam).coeffs
            worst = max(worst, abs(quad.inner(c, c) / one - exact[lam]) / exact[lam])
        print(f"{M:5d} {one:20.15g} {abs(one - closed) / closed:10.2e} {worst:16.2e}")


if __name__ == "__main__":
    main()
