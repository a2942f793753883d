#!/usr/bin/env python3
"""Run every demo scenario and write one JSON report per demo.

usage: python scripts/run_demos.py [--seed N] [--out DIR] [--slow]
"""

import argparse
import json
from pathlib import Path

from weil.demos import DEMOS, run_demo
from weil.sampling import SamplePolicy


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="demo_reports")
    ap.add_argument("--slow", action="store_true")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    policy = SamplePolicy(seed=args.seed)
    width = max(map(len, DEMOS))
    for name in DEMOS:
        r = run_demo(name, policy, slow=args.slow)
        (out / f"{name}.json").write_text(json.dumps(r.to_dict(), sort_keys=True, indent=2) + "\n")
        missed = [o.label for o in r.outcomes if not o.ok]
        print(f"{name:<{width}}  {r.status.upper():4}  {len(r.outcomes)} outcomes" +
              (f"  unmet: {missed}" if missed else ""))


if __name__ == "__main__":
    main()
