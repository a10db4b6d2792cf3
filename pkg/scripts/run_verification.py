#!/usr/bin/env python3
"""Run the structural verification suite over a range of field sizes.

Prints one report per q; exits nonzero if any check fails anywhere.
"""

import argparse

from ograss.codes import DEFAULT_BUDGET, verify
from ograss.gf import field


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--qs", default="2,3,4,5", help="comma-separated prime powers")
    ap.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    ok = True
    for q in (int(t) for t in args.qs.split(",")):
        report = verify(field(q), budget=args.budget, threads=args.threads)
        print("\n".join(report.lines()))
        print()
        ok = ok and report.passed
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
