"""Type-D arrangement orders: the ε rule as printed vs the rule forced by the
isotropy groups, against the coupled-partition index sum and enumeration."""
from reflmon.examples import arrangement_monoid
from reflmon.formulas import order_arrangement_D, order_arrangement_index_sum
from reflmon.systems import orbit_decomposition

print(f"{'n':>2} {'printed':>8} {'isotropy':>8} {'index sum':>9} {'enumerated':>10}")
for n in range(2, 6):
    enum = len(arrangement_monoid("D", n).enumerate_brute()) if n <= 4 else "-"
    print(f"{n:>2} {order_arrangement_D(n, 'printed'):>8} {order_arrangement_D(n):>8} "
          f"{order_arrangement_index_sum('D', n):>9} {enum:>10}")

# smallest witness: D2, Δ = ∅, the couple {1}+{2} spanning the line x1 = -x2
m = arrangement_monoid("D", 2)
for rep, size, iso in orbit_decomposition(m.system):
    print(f"  D2 flat {rep}: orbit {size}, isotropy {iso}")
