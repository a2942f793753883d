#!/usr/bin/env python3
"""Positive/negative matrix: each canonical model against its planted single-defect mutation."""

from weil import fixtures as fx
from weil.structures import KINDS, verify_structure


def main():
    print(f"{'kind':<14} {'canonical':<10} {'planted defect':<20} {'failed checks'}")
    for kind in sorted(KINDS):
        pos = verify_structure(fx.canonical(kind))
        m, expected = fx.mutation(kind)
        failed = verify_structure(m).failed()
        flag = "" if failed == [expected] else "   <-- unexpected"
        print(f"{kind:<14} {pos.status:<10} {expected:<20} {failed}{flag}")


if __name__ == "__main__":
    main()
