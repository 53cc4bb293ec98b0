"""Reflection monoids: monoids of partial linear isomorphisms g_X built from a
finite reflection group and a system of subspaces."""

from .linalg import Subspace, intersect
from .groups import MatrixGroup, RootSystem, root_system, weyl_group, CapExceeded
from .systems import System, arrangement_system, boolean_system, generate_system, orbit_decomposition
from .monoid import PartialIso, ReflMonoid, compose, inverse, restrict, check_factorizable_iso
from .setmonoids import FiniteInverseMonoid
from .formulas import (order_In, order_boolean, order_arrangement_A, order_arrangement_B,
                       order_arrangement_D, order_from_orbit_data, exceptional_orders)

__version__ = "0.1.0"
