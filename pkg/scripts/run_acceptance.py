"""Run the acceptance criteria and print one line per criterion.

    python3 scripts/run_acceptance.py [--seed S] [--only 1 7 12]
"""
import argparse
import sys

from mvaskey.acceptance import CRITERIA, Setup, run


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--only", type=int, nargs="*", default=sorted(CRITERIA))
    args = ap.parse_args()
    setup = Setup(args.seed)
    failed = 0
    for k in args.only:
        res = run(k, setup)
        print(res.line(), flush=True)
        failed += not res.passed
    print(f"{len(args.only) - failed}/{len(args.only)} criteria passed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
