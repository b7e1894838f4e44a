"""Structured families next to the published counts.

    python3 scripts/family_table.py            # small rows only
    python3 scripts/family_table.py --all      # include the large trees and lattices
"""

import argparse

from graphbuilder.bench import family_report, load_reference

SMALL = ["tree:3,3,3", "tree:4,4,4", "tree:3,3,3,3", "rhg:1,1,1", "rhg:2,1,1", "rhg:3,1,1",
         "rhg:2,2,1", "rgs:8", "rgs:12", "rgs:16", "rgs:8,cores-first", "grgs",
         "sixring:1", "sixring:2", "sixring:3"]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--all", action="store_true")
    ap.add_argument("--no-simplify", action="store_true")
    a = ap.parse_args()
    fams = list(SMALL)
    if a.all:
        fams += [r["family"] for r in load_reference()["families"] if r["family"] not in fams]
    rows = family_report(fams, simplify=not a.no_simplify)
    print(f"{'family':<20}{'order':<13}{'N':>6}{'E':>6}{'n_e':>5}{'ours':>7}{'ref':>7}  src")
    for r in rows:
        refc = "" if r["ref_count"] is None else r["ref_count"]
        pe = "" if r["ref_emitters"] is None else f"/{r['ref_emitters']}"
        print(f"{r['family']:<20}{r['order']:<13}{r['N']:>6}{r['edges']:>6}{r['emitters']:>5}"
              f"{r['two_qubit_count']:>7}{refc!s:>7}{pe:<4}{r['ref_source']}"
              + ("" if r["verified"] else "  UNVERIFIED"))


if __name__ == "__main__":
    main()
