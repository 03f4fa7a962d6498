#!/usr/bin/env python3
"""Conjecture hunts over maximal sets.

Exhaustive at small q, seeded random sampling above.  Any failed
applicable report is a counterexample candidate: it is printed in full
and written as a replay file.

    python scripts/hunt_conjectures.py --conjecture conj-moduli-match --q 4
    python scripts/hunt_conjectures.py --conjecture conj-maximal-linear --q 9 \
        --mode random --seed 43 --budget 2000
"""

import argparse
import json
import sys

from dirsets.search import SearchConfig, hunt


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--conjecture", choices=("conj-moduli-match", "conj-maximal-linear"), required=True)
    ap.add_argument("--q", type=int, required=True)
    ap.add_argument("--n-min", type=int, default=2)
    ap.add_argument("--n-max", type=int, default=None)
    ap.add_argument("--mode", choices=("exhaustive", "random"),
                    default="exhaustive")
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--budget", type=int, default=None)
    ap.add_argument("--replay-dir", default="replays")
    args = ap.parse_args()
    n_max = args.n_max if args.n_max is not None else args.q
    cfg = SearchConfig(q=args.q, n_min=args.n_min, n_max=n_max,
                       mode=args.mode, seed=args.seed, budget=args.budget)
    report = hunt(cfg, args.conjecture, replay_dir=args.replay_dir)
    json.dump(report.as_dict(include_timing=True), sys.stdout, indent=1,
              sort_keys=True)
    print()
    return 2 if report.failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
