"""Orders of the classical Boolean and arrangement monoids: closed form vs the
isotropy-index sum (and enumeration where it is cheap)."""
import argparse

from reflmon.acceptance import closed_form
from reflmon.examples import arrangement_monoid, boolean_monoid

ap = argparse.ArgumentParser()
ap.add_argument("--nmax", type=int, default=4)
ap.add_argument("--enumerate", action="store_true")
args = ap.parse_args()

print(f"{'system':12} {'type':4} {'n':>2} {'formula':>10} {'isotropy':>10} {'enumerated':>10}")
for kind in ("boolean", "arrangement"):
    for fam in "ABD":
        for n in range(1, args.nmax + 1):
            if fam == "D" and n < 2:
                continue
            m = boolean_monoid(fam, n) if kind == "boolean" else arrangement_monoid(fam, n)
            enum = len(m.enumerate_brute()) if args.enumerate else "-"
            print(f"{kind:12} {fam:4} {n:>2} {closed_form(kind, fam, n):>10} {m.order_by_isotropy():>10} {enum:>10}")
