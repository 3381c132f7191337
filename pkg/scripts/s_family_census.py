"""Census of the S-family over small block-size tuples.

Sweeps every composition (n_1, ..., n_k) with bounded total and block
count, classifies each, and tallies the outcomes.  For the members that
are hypergroups, also reports simplicity when the carrier is small
enough for the congruence search.

    python3 scripts/s_family_census.py --max-total 10 --max-blocks 3
"""

import argparse
from collections import Counter

from hypergroups.core import Hypergroup, verify_axioms
from hypergroups.constructions import SFamilyClass, s_family, s_family_class
from hypergroups.simplicity import DEFAULT_SIMPLICITY_CAP, is_simple


def compositions(max_total, max_blocks):
    def rec(prefix, remaining, blocks):
        if prefix:
            yield tuple(prefix)
        if blocks == 0:
            return
        for n in range(1, remaining + 1):
            prefix.append(n)
            yield from rec(prefix, remaining - n, blocks - 1)
            prefix.pop()

    yield from rec([], max_total, max_blocks)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-total", type=int, default=12,
                    help="largest carrier size to sweep (default 12)")
    ap.add_argument("--max-blocks", type=int, default=3,
                    help="most blocks per tuple (default 3)")
    args = ap.parse_args()
    if args.max_total < 1 or args.max_blocks < 1:
        ap.error("bounds must be positive")

    tally = Counter()
    simple_count = 0
    for sizes in sorted(compositions(args.max_total, args.max_blocks),
                        key=lambda t: (sum(t), len(t), t)):
        cls = s_family_class(list(sizes))
        tally[cls] += 1
        m = s_family(list(sizes))
        detail = ""
        if cls is SFamilyClass.NotAssociative:
            w = verify_axioms(m).assoc_witness
            detail = " witness " + str(tuple(m.names[i] for i in w))
        elif cls in (SFamilyClass.DHypergroup, SFamilyClass.HypergroupNotD):
            if len(m.names) <= DEFAULT_SIMPLICITY_CAP:
                verdict = is_simple(Hypergroup.certify(m))
                simple_count += verdict
                detail = f" simple={verdict}"
        print(f"S{sizes}: {cls.name}{detail}")

    print("\ntotals:")
    for cls in SFamilyClass:
        print(f"  {cls.name}: {tally[cls]}")
    print(f"  simple among checked hypergroups: {simple_count}")


if __name__ == "__main__":
    main()
