#!/usr/bin/env python3
"""Print the e=2 verification table for the two benchmark boundaries.

usage: python scripts/hara_table.py [p1 p2 ...]
"""

import sys

from frsurf.fedder import hara_table


def main(argv):
    primes = [int(a) for a in argv] or None
    rows = hara_table(primes)
    print(f"{'case':4} {'p':>3} {'e':>2} {'a1':>4} {'a2':>4} {'a3':>4}  "
          f"{'canonical witness':>18}  {'reference':>12}  ok")
    for r in rows:
        wit = f"x^{r.witness[0]} y^{r.witness[1]}" if r.witness else "-"
        ref = (
            f"({r.reference_witness[0]},{r.reference_witness[1]})"
            if r.reference_witness
            else "-"
        )
        ok = {True: "yes", False: "NO", None: "-"}[r.reference_ok]
        print(
            f"{r.case:4} {r.p:>3} {r.e:>2} {r.a[0]:>4} {r.a[1]:>4} {r.a[2]:>4}  "
            f"{wit:>18}  {ref:>12}  {ok}"
        )
    return 0 if all(r.reference_ok is not False for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
