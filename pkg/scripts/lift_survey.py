#!/usr/bin/env python3
"""Lift every canonical model under several (algebra, functional) pairs and tabulate the checks.

Incompatible pairs (even algebra for an odd-dimensional kind, degenerate functional) are listed
with the reason they were refused.
"""

import argparse
import time

from weil import fixtures as fx
from weil.algebra import algebra_from_spec, functional
from weil.errors import WeilError
from weil.lift import LiftConfig
from weil.sampling import SamplePolicy
from weil.structures import KINDS, lift_structure

PAIRS = [("dual", "top"), ("jet(2)", "top"), ("jet(2)", "mixed")]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--kind", choices=sorted(KINDS), action="append")
    args = ap.parse_args()
    policy = SamplePolicy(seed=args.seed)
    for kind in args.kind or sorted(KINDS):
        for spec, lam in PAIRS:
            A = algebra_from_spec(spec)
            cfg = LiftConfig(A, functional(A, lam), policy=policy)
            t0 = time.perf_counter()
            try:
                res = lift_structure(fx.canonical(kind), cfg)
            except WeilError as exc:
                print(f"{kind:<14} {spec:<7} {lam:<6} refused: {exc}")
                continue
            dt = time.perf_counter() - t0
            print(f"{kind:<14} {spec:<7} {lam:<6} {res.report.status:<5} {dt:6.2f}s  failed={res.report.failed()}")


if __name__ == "__main__":
    main()
