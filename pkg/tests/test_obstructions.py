from itertools import product

import pytest
from hypothesis import given, strategies as st

from vglab.obstructions import (
    CurveDatum,
    chi_contradiction_omega,
    enumerate_curve_data,
    extension_c3_p3,
    chi_three_halves_oracle,
    enumerate_unions,
    min_pa_reduced,
    omega_filter,
    abc_triples,
    realizable_genera,
    run_obstructions,
)


def test_genus_table():
    assert realizable_genera(1) == (0,)
    assert realizable_genera(4) == (0, 1, 3)
    assert 2 not in realizable_genera(4)
    assert realizable_genera(7)[-1] == 15
    assert realizable_genera(0) == ()


def test_curve_datum_invariants():
    c = CurveDatum(((3, 1), (1, 0), (1, 0), (1, 0)))
    assert c.components == ((1, 0), (1, 0), (1, 0), (3, 1))
    assert (c.degree, c.m, c.chi, c.arithmetic_genus) == (6, 4, 3, -2)
    assert not c.omega_is_minus_one()
    assert CurveDatum(((2, 0), (2, 0))).omega_is_minus_one()
    with pytest.raises(ValueError):
        CurveDatum(((4, 2),))


@pytest.mark.parametrize("d", [2, 4, 6, 8])
def test_no_curve_with_chi_three_halves_degree(d):
    v = chi_three_halves_oracle(d)
    assert not v.feasible and v.m_lower > v.m_upper


def test_odd_degree_rejected():
    with pytest.raises(ValueError):
        chi_three_halves_oracle(3)


def test_degree_six_chi_three():
    got = {c.components for c in enumerate_unions()}
    assert got == {
        ((2, 0), (2, 0), (2, 0)),
        ((1, 0), (2, 0), (3, 0)),
        ((1, 0), (1, 0), (1, 0), (3, 1)),
        ((1, 0), (1, 0), (4, 0)),
    }
    assert [c.components for c in omega_filter(enumerate_unions())] == [((2, 0), (2, 0), (2, 0))]


def test_degree_four_chi_two():
    raw = {c.components for c in enumerate_unions(4, 2)}
    assert ((1, 0), (3, 0)) in raw
    assert [c.components for c in omega_filter(enumerate_unions(4, 2))] == [((2, 0), (2, 0))]


def _abc_brute(deg, pa, a_max=30):
    out = set()
    for a, b, c in product(range(a_max + 1), range(1, deg + 1), range(1, deg + 1)):
        if b + c == deg and b <= c:
            if 2 * pa == (b - 1) * (b - 2) + (c - 1) * (c - 2) + 2 * (b - a - 1):
                out.add((a, b, c))
    return out


@pytest.mark.parametrize("deg,pa", [(4, -5), (2, -3), (4, -3), (5, -4), (3, 0)])
def test_abc_solver_against_brute_force(deg, pa):
    assert abc_triples(deg, pa, 30) == _abc_brute(deg, pa)


def test_abc_default():
    assert abc_triples() == {(6, 2, 2), (6, 1, 3)}


@pytest.mark.parametrize("d,expected", [(1, 0), (2, -1), (4, -3), (6, -5)])
def test_min_arithmetic_genus(d, expected):
    assert min_pa_reduced(d) == expected


@given(st.integers(1, 9))
def test_min_genus_is_disjoint_lines(d):
    assert min_pa_reduced(d) == 1 - d


@given(st.integers(1, 8))
def test_enumeration_has_no_duplicates_and_right_degree(d):
    data = enumerate_curve_data(d)
    assert len({c.components for c in data}) == len(data)
    assert all(c.degree == d for c in data)


def test_enumeration_counts():
    assert len(enumerate_curve_data(1)) == 1
    assert len(enumerate_curve_data(2)) == 2
    # 3: twisted cubic, plane cubic, conic+line, three lines
    assert len(enumerate_curve_data(3)) == 4


def test_chern_contradiction():
    cc = chi_contradiction_omega()
    assert cc.chi == 5 and cc.forced_h1 == -1 and cc.contradiction
    assert cc.c_F == cc.c_omega_sum and cc.c_F != cc.c_sym2
    assert not chi_contradiction_omega(5).contradiction


def test_extension_c3():
    assert extension_c3_p3() == 3


def test_all_obstruction_entries_pass():
    entries = run_obstructions()
    assert len(entries) == 17
    bad = [e.name for e in entries if not e.ok]
    assert not bad, bad
    assert all(isinstance(e.to_dict()["ok"], bool) for e in entries)
