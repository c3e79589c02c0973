import pytest
from hypothesis import given, settings, strategies as st

from pwmirror.hodge import (
    HypothesisFailed,
    MarginalMismatch,
    MixedHodgeTable,
    PerverseHodgeTable,
    PWTable,
    TableError,
    assemble_pw,
    explicit_rule,
    is_hodge_tate,
    kunneth,
    level_rule,
    offset_rule,
    point_table,
    pw_polynomial,
    tate_twist,
    torus_table,
)
from pwmirror.mirror import hodge_tate_pw, torus_pw
from pwmirror.polyalg import LaurentPoly


@st.composite
def smooth_open_tables(draw, max_n=2):
    n = draw(st.integers(0, max_n))
    cells = {}
    for _ in range(draw(st.integers(0, 5))):
        s = draw(st.integers(0, 2 * n))
        w = draw(st.integers(s, 2 * s))
        p = draw(st.integers(0, w))
        cells[(s, p, w)] = draw(st.integers(1, 3))
    return MixedHodgeTable(n, cells)


def test_torus_table_is_binomial():
    t = torus_table(3)
    assert t.dims == {(0, 0, 0): 1, (1, 1, 2): 3, (2, 2, 4): 3, (3, 3, 6): 1}
    assert t.euler() == 0


def test_smooth_open_bounds():
    with pytest.raises(TableError):
        MixedHodgeTable(1, {(1, 0, 0): 1})  # weight below degree
    MixedHodgeTable(1, {(1, 0, 0): 1}, "limit")
    with pytest.raises(TableError):
        MixedHodgeTable(1, {(3, 0, 3): 1})  # degree beyond 2n
    with pytest.raises(TableError):
        MixedHodgeTable(1, {(0, 0, 0): -1})
    with pytest.raises(TableError):
        MixedHodgeTable(1, {}, "bogus")


def test_zero_cells_are_dropped():
    assert MixedHodgeTable(1, {(0, 0, 0): 0}).dims == {}


def test_pw_table_checks_marginal_and_offset():
    with pytest.raises(TableError):
        PWTable(1, {(0, 0, 0, 2): 1})
    assert PWTable(1, {(0, 0, 0, 2): 1}, "raw").dims


def test_perverse_table_bounds():
    with pytest.raises(TableError):
        PerverseHodgeTable(1, {(1, 1, 3): 1})


def test_marginals_of_torus_pw():
    T = torus_pw(2)
    assert T.weight_marginal().dims == torus_table(2).dims
    assert {rho for (_, _, rho) in T.perverse_marginal().dims} == {2}


def test_records_round_trip():
    T = torus_pw(3)
    assert PWTable.from_records(3, T.records()) == T
    M = torus_table(2)
    assert MixedHodgeTable.from_records(2, M.records()) == M


def test_hodge_tate_predicate_names_witness():
    assert is_hodge_tate(torus_table(2)) == (True, None)
    ok, cell = is_hodge_tate(MixedHodgeTable(1, {(1, 0, 1): 1}))
    assert not ok and cell == (1, 0, 1)


def test_pw_polynomial_of_torus():
    for n in range(1, 6):
        assert pw_polynomial(torus_pw(n)) == LaurentPoly.parse(f"(utw+p)^{n}")


def test_assemble_pw_rules():
    U = torus_table(2)
    assert assemble_pw(U, level_rule(2)) == torus_pw(2)
    assert assemble_pw(MixedHodgeTable(1), offset_rule(0)).dims == {}
    bad = explicit_rule({(0, 0, 0): {2: 1}})
    with pytest.raises(MarginalMismatch):
        assemble_pw(U, bad)


def test_hodge_tate_pw_refuses_non_tate():
    with pytest.raises(HypothesisFailed) as info:
        hodge_tate_pw(MixedHodgeTable(1, {(1, 0, 1): 1, (1, 1, 1): 1}), level_rule(1))
    assert info.value.cell == (1, 0, 1)
    assert hodge_tate_pw(MixedHodgeTable(0), level_rule(0)).dims == {}


def test_tate_twist_shifts_weight_and_hodge_index():
    t = tate_twist(point_table(), -1)
    assert t.dims == {(0, 1, 2): 1}
    assert t.mode == "raw"  # weight 2 on H^0 is outside the smooth-open range
    per_degree = tate_twist(torus_table(1), {1: 1})
    assert per_degree.dims == {(0, 0, 0): 1, (1, 0, 0): 1}


@given(smooth_open_tables(), st.integers(-3, 3))
@settings(max_examples=60, deadline=None)
def test_tate_twist_involution(table, m):
    assert tate_twist(tate_twist(table, m), -m).dims == table.dims


@given(smooth_open_tables(), smooth_open_tables())
@settings(max_examples=60, deadline=None)
def test_kunneth_commutes(a, b):
    assert kunneth(a, b).dims == kunneth(b, a).dims


@given(smooth_open_tables(1), smooth_open_tables(1), smooth_open_tables(1))
@settings(max_examples=40, deadline=None)
def test_kunneth_associates(a, b, c):
    assert kunneth(kunneth(a, b), c).dims == kunneth(a, kunneth(b, c)).dims


@given(smooth_open_tables())
@settings(max_examples=40, deadline=None)
def test_point_is_kunneth_unit(a):
    assert kunneth(point_table(), a).dims == a.dims


@given(smooth_open_tables(), smooth_open_tables())
@settings(max_examples=40, deadline=None)
def test_kunneth_multiplies_euler_characteristic(a, b):
    assert kunneth(a, b).euler() == a.euler() * b.euler()
