"""Batch front end.

Exit status: 0 when every check passes (warnings allowed), 1 on a failed
verification, 2 on configuration or non-generic parameter errors, 3 on an
internal-consistency failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from itertools import combinations
from pathlib import Path

from . import linalg
from .errors import InternalConsistencyError, NonGenericParametersError
from .params import ConfigError, ParameterSet, fmt_fraction, load_config
from .polys import (
    Family,
    norm_chain,
    norm_ratio_closed,
    norm_ratio_via_recurrence,
    verify_diffeq,
    verify_duality,
    verify_norm_exact,
    verify_recurrence,
)
from .report import VerificationReport, jsonable
from .symfunc import partitions_up_to

COMMANDS = (
    "coeffs",
    "verify-diffeq",
    "verify-duality",
    "verify-recurrence",
    "verify-norms",
    "verify-commute",
    "quad-check",
    "all",
)
CSV_COMMANDS = ("coeffs", "verify-norms")

# numeric tolerances for quad-check, by dimension
NORM_RTOL = {1: 1e-8, 2: 1e-5}
ORTHO_TOL = 1e-8
ORACLE_TOL = 1e-7
DEFAULT_GRID_M = {1: 256, 2: 128, 3: 32}


def _commute_reports(family: Family) -> list[VerificationReport]:
    n = family.params.n
    out = []
    for r, s in combinations(range(1, n + 1), 2):
        A, B = family.matrix(r).entries, family.matrix(s).entries
        ok = linalg.matmul(A, B) == linalg.matmul(B, A)
        out.append(VerificationReport(
            "commutativity", family.params.to_json(),
            {"r": r, "s": s, "basis_size": len(family.basis)}, passed=ok,
            discrepancy=Fraction(0) if ok else Fraction(1),
        ))
    return out


def run_diffeq(params, W, seed):
    fam = Family(params, W, seed)
    return [verify_diffeq(fam, r, lam) for lam in fam.basis for r in range(1, params.n + 1)]


def run_duality(params, W, seed):
    fam = Family(params, W, seed)
    dfam = fam.dual()
    return [verify_duality(fam, dfam, lam, mu) for lam in fam.basis for mu in fam.basis]


def run_recurrence(params, W, seed):
    fam = Family(params, W + params.n, seed)
    return [
        verify_recurrence(fam, r, lam)
        for lam in partitions_up_to(params.n, W)
        for r in range(1, params.n + 1)
    ]


def run_norms(params, W, seed):
    return [verify_norm_exact(params, lam) for lam in partitions_up_to(params.n, W)]


def run_commute(params, W, seed):
    return _commute_reports(Family(params, W, seed))


def run_quad(params, W, seed, grid_m=None, trunc_n=None, precision="double"):
    from .quadrature import (
        QuadratureGrid,
        TorusQuadrature,
        gram_schmidt_oracle,
        verify_norm_numeric,
        verify_orthogonality,
    )

    n = params.n
    grid = QuadratureGrid(n, grid_m or DEFAULT_GRID_M.get(n, 16), trunc_n, precision)
    quad = TorusQuadrature(params, grid)
    fam = Family(params, W, seed)
    rtol = NORM_RTOL.get(n, 1e-4)
    out = [verify_norm_numeric(fam, lam, quad, rtol) for lam in fam.basis]
    for lam, mu in combinations(fam.basis, 2):
        out.append(verify_orthogonality(fam, lam, mu, quad, ORTHO_TOL))
    for lam in fam.basis:
        gs = gram_schmidt_oracle(params, lam, quad)
        exact = fam.polynomial(lam).coeffs
        err = max(abs(gs[mu] - float(exact.get(mu, 0))) for mu in gs)
        out.append(VerificationReport(
            "gram_schmidt_oracle", params.to_json(), {"lambda": list(lam), "M": grid.M},
            passed=err <= ORACLE_TOL, exact=False, discrepancy=err,
            witnesses=[{"oracle": {str(list(mu)): v for mu, v in gs.items()}}],
        ))
    return out


def coeff_table(params, W, seed):
    fam = Family(params, W, seed)
    return [fam.polynomial(lam) for lam in fam.basis]


def _format_csv(rows: list[list]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mvaskey", description=__doc__.splitlines()[0])
    ap.add_argument("--config", required=True, help="JSON file with n, sigma, tau, tau0..tau3")
    ap.add_argument("--command", required=True, choices=COMMANDS)
    ap.add_argument("--max-weight", type=int, default=2, help="run over partitions with |lambda| <= W")
    ap.add_argument("--grid-m", type=int, default=None, help="quadrature points per axis")
    ap.add_argument("--trunc-n", type=int, default=None, help="infinite-product truncation")
    ap.add_argument("--precision", choices=("double", "long"), default="double")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=None, help="report path (stdout if omitted)")
    ap.add_argument("--format", choices=("json", "csv"), default="json")
    return ap


def execute(params: ParameterSet, args) -> tuple[dict, list[list] | None]:
    W, seed = args.max_weight, args.seed
    commands = [c for c in COMMANDS if c not in ("all",)] if args.command == "all" else [args.command]
    doc = {
        "command": args.command,
        "params": params.to_json(),
        "max_weight": W,
        "seed": seed,
        "records": [],
    }
    rows = None
    for cmd in commands:
        if cmd == "coeffs":
            recs = coeff_table(params, W, seed)
            doc["polynomials"] = [r.to_json() for r in recs]
            rows = [["lambda", "mu", "coefficient", "c_lambda"]] + [
                [" ".join(map(str, r.lam)), " ".join(map(str, mu)), fmt_fraction(c), fmt_fraction(r.c_lambda)]
                for r in recs
                for mu, c in sorted(r.coeffs.items(), key=lambda kv: (sum(kv[0]), kv[0]))
            ]
            continue
        if cmd == "verify-norms":
            rows = [["lambda", "chain", "closed", "recurrence"]] + [
                [" ".join(map(str, lam)), " ".join(map(str, norm_chain(lam))),
                 fmt_fraction(norm_ratio_closed(params, lam)), fmt_fraction(norm_ratio_via_recurrence(params, lam))]
                for lam in partitions_up_to(params.n, W)
            ]
        runner = {
            "verify-diffeq": run_diffeq,
            "verify-duality": run_duality,
            "verify-recurrence": run_recurrence,
            "verify-norms": run_norms,
            "verify-commute": run_commute,
        }.get(cmd)
        if runner is not None:
            reports = runner(params, W, seed)
        else:
            reports = run_quad(params, W, seed, args.grid_m, args.trunc_n, args.precision)
        doc["records"].extend(r.to_json() for r in reports)
    counts = {"pass": 0, "fail": 0, "warning": 0}
    for rec in doc["records"]:
        counts[rec["status"]] += 1
    doc["summary"] = counts
    return doc, rows


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        params = load_config(args.config)
        if args.max_weight < 0:
            raise ConfigError([f"--max-weight must be >= 0, got {args.max_weight}"])
        if args.format == "csv" and args.command not in CSV_COMMANDS:
            raise ConfigError([f"CSV output is only available for {', '.join(CSV_COMMANDS)}"])
        doc, rows = execute(params, args)
    except ConfigError as exc:
        for e in exc.errors:
            print(f"config error: {e}", file=sys.stderr)
        return 2
    except NonGenericParametersError as exc:
        print(f"non-generic parameters: {exc}", file=sys.stderr)
        return 2
    except InternalConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 3

    text = _format_csv(rows) if args.format == "csv" else json.dumps(jsonable(doc), indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    s = doc["summary"]
    print(f"{args.command}: {s['pass']} pass, {s['fail']} fail, {s['warning']} warning", file=sys.stderr)
    return 1 if s["fail"] else 0


if __name__ == "__main__":
    sys.exit(main())
