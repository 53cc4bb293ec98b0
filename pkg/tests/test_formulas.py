from math import comb

import pytest

from reflmon import formulas as fm
from reflmon.groups import parabolic_subgroups, root_system, weyl_group


def test_b_lambda():
    assert fm.b_lambda((1, 1, 1)) == 6
    assert fm.b_lambda((2, 1)) == 2
    assert fm.b_lambda((3,)) == 6


def test_order_In():
    assert [fm.order_In(n) for n in (0, 3, 4, 5)] == [1, 34, 209, 1546]


def test_order_boolean():
    assert fm.order_boolean("A", 3) == 34
    assert fm.order_boolean("B", 2) == 17
    assert fm.order_boolean("D", 4) == 1281
    for n in range(1, 7):
        assert fm.order_boolean("A", n) == fm.order_In(n)
        assert fm.order_boolean("B", n) == fm.order_boolean_table_row("B", n)


def test_boolean_D_table_row_discrepancy():
    # the printed D row sums k = 1..n where the index sum needs k = 0..n-1
    assert fm.order_boolean_table_row("D", 4) == 1664
    for n in range(2, 8):
        fixed = 2 ** (n - 1) * fm.factorial(n) + sum(2 ** k * comb(n, k) ** 2 * fm.factorial(k) for k in range(n))
        assert fixed == fm.order_boolean("D", n)


def test_arrangement_A():
    assert [fm.order_arrangement_A(n) for n in (1, 3, 4)] == [1, 16, 131]


@pytest.mark.parametrize("family,n", [("A", 3), ("A", 4), ("B", 2), ("B", 3)])
def test_parabolic_index_sum(family, n):
    phi = root_system(family, n)
    w = weyl_group(phi)
    total = sum(len(w) // len(p) for p in parabolic_subgroups(phi))
    expect = fm.order_arrangement_A(n) if family == "A" else fm.order_arrangement_B(n)
    assert total == expect


def test_c_pair():
    assert fm.c_pair(1, 1) == 2 and fm.c_pair(2, 1) == 3 and fm.c_pair(4, 0) == 1
    for a in range(11):
        for b in range(11):
            assert fm.c_pair(a, b) == comb(a + b, a)


def test_couple_group_lemma():
    for a in range(6):
        for b in range(6 - a):
            assert fm.couple_group_order_brute(a, b) == fm.factorial(a) * fm.factorial(b) * fm.c_pair(a, b)


def test_arrangement_B():
    assert [fm.order_arrangement_B(n) for n in (1, 2)] == [3, 25]
    for n in range(1, 6):
        assert fm.order_arrangement_B(n) == fm.order_arrangement_index_sum("B", n)


def test_arrangement_D_rules():
    assert [fm.order_arrangement_D(n) for n in (2, 3, 4)] == [9, 131, 3105]
    assert fm.order_arrangement_D(3) == fm.order_arrangement_A(4)  # D3 = A3
    assert fm.order_arrangement_D(4, "printed") == 4961
    for n in range(2, 7):
        assert fm.order_arrangement_D(n) == fm.order_arrangement_index_sum("D", n)


def test_orbit_data():
    assert fm.order_from_orbit_data(12, fm.G2_ORBIT_DATA) == 49
    assert fm.order_from_orbit_data(1152, fm.F4_ORBIT_DATA) == 54241
    assert fm.order_from_orbit_data(1152, [fm.OrbitDatum(1, 1152)]) == 1
    assert sum(d.orbit_size for d in fm.F4_ORBIT_DATA) == 268
    with pytest.raises(fm.CorruptOrbitData):
        fm.order_from_orbit_data(12, [fm.OrbitDatum(1, 5)])
    with pytest.raises(ValueError):
        fm.OrbitDatum(0, 1)


def test_orbit_data_json():
    text = fm.orbit_data_to_json(fm.F4_ORBIT_DATA)
    assert fm.orbit_data_from_json(text) == fm.F4_ORBIT_DATA
    got, stored = fm.validate_orbit_data("F4", fm.orbit_data_from_json(text))
    assert got == stored
    with pytest.raises(fm.CorruptOrbitData):
        fm.orbit_data_from_json('{"size": 1}')


def test_exceptional_orders():
    t = fm.exceptional_orders()
    assert t["G2"] == (49, "7^2")
    assert t["F4"][0] == 54241 == 11 * 4931
    assert t["E6"][0] == 16217200
    assert t["E7"][0] == 3 * 113 * 24667553
    assert t["E8"][0] == 11 * 79 * 55099865069
