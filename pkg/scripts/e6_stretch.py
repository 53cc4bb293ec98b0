"""Generic E6 arrangement-monoid order: enumerate W(E6), close the 36 hyperplanes
under intersection, sum isotropy indices over orbits."""
import time

from reflmon.formulas import exceptional_orders
from reflmon.groups import root_system, weyl_group
from reflmon.monoid import ReflMonoid
from reflmon.systems import arrangement_system, orbit_decomposition

t0 = time.perf_counter()
phi = root_system("E6")
w = weyl_group(phi)
print(f"|W(E6)| = {len(w)}  ({time.perf_counter() - t0:.1f}s)", flush=True)
s = arrangement_system(phi, w)
print(f"|L(A)| = {len(s)}  ({time.perf_counter() - t0:.1f}s)", flush=True)
for rep, size, iso in orbit_decomposition(s):
    print(f"  dim {rep.dim}: orbit {size}, isotropy {iso}")
order = ReflMonoid(w, s).order_by_isotropy()
want = exceptional_orders(recompute=False)["E6"]
print(f"|M(E6,H)| = {order}; stored {want[0]} = {want[1]}; match = {order == want[0]}")
print(f"total {time.perf_counter() - t0:.1f}s")
