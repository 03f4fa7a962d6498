#!/usr/bin/env python3
"""Exhaustive statement sweeps at desk scale.

Runs the bound statements over every subset of AG(2,q) in a size range
and prints the tally report as JSON.  Examples:

    python scripts/run_sweeps.py --q 3
    python scripts/run_sweeps.py --q 4 --n-max 8 --workers 4
    python scripts/run_sweeps.py --q 5 --n-max 5 --statements prime-dichotomy,moduli-order
"""

import argparse
import json
import sys

from dirsets.search import SearchConfig, sweep

DEFAULT_STATEMENTS = "thm-m,tail-degree-bound,root-power-bound,moduli-order"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, required=True)
    ap.add_argument("--n-min", type=int, default=0)
    ap.add_argument("--n-max", type=int, default=None)
    ap.add_argument("--statements", default=DEFAULT_STATEMENTS)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--replay-dir", default=None)
    args = ap.parse_args()
    cfg = SearchConfig(q=args.q, n_min=args.n_min, n_max=args.n_max,
                       workers=args.workers,
                       statements=tuple(args.statements.split(",")))
    report = sweep(cfg, replay_dir=args.replay_dir)
    json.dump(report.as_dict(include_timing=True), sys.stdout, indent=1,
              sort_keys=True)
    print()
    return 2 if report.failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
