from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from pwmirror import cells
from pwmirror.linalg import DimensionMismatch, QMatrix
from pwmirror.perverse import (
    CechRow,
    CupRing,
    FlagComplex,
    NonMonotone,
    cech_graded,
    de_rham_relabel,
    filtration_dims_from_spans,
    filtration_length_check,
    flag_filtration,
    multiplicativity_check,
    oracle_compare,
    perverse_e2,
)

MODELS = {
    "cstar": (cells.cstar, 1, None),
    "torus1": (lambda: cells.torus(1), 1, None),
    "torus2": (lambda: cells.torus(2), 2, None),
    "torus3": (lambda: cells.torus(3), 3, None),
    "torus_generic_line": (cells.torus_generic_line, 2, None),
    "affine_complement": (cells.affine_complement, 1, None),
    "two_potential": (cells.two_potential, 2, 1),
    "elliptic_fibration": (lambda: cells.elliptic_fibration(5), 2, 1),
}


@pytest.mark.parametrize("n", range(1, 5))
def test_torus_betti_numbers(n):
    assert cells.betti(cells.torus(n)) == {k: comb(n, k) for k in range(n + 1)}


def test_cell_complex_validation():
    with pytest.raises(ValueError):
        cells.CellComplex((cells.Cell("v", 0, 0), cells.Cell("e", 1, 1)), {"e": {"v": 1}})  # not closed
    with pytest.raises(ValueError):
        cells.CellComplex((cells.Cell("v", 0), cells.Cell("w", 0)), {"w": {"v": 1}})  # wrong dimension
    with pytest.raises(ValueError):
        cells.CellComplex((cells.Cell("v", 0), cells.Cell("v", 1)))


@pytest.mark.parametrize("name", sorted(MODELS))
def test_flag_and_cech_agree(name):
    build, n, N = MODELS[name]
    fc = cells.flag_complex(build(), n, N)
    res = oracle_compare(fc)
    assert res.ok, res.details
    assert not res.warnings


@pytest.mark.parametrize("name", sorted(MODELS))
def test_length_bounds(name):
    build, n, N = MODELS[name]
    assert filtration_length_check(cells.flag_complex(build(), n, N)).ok


@pytest.mark.parametrize("n", range(1, 4))
def test_torus_cohomology_is_perverse_degree_n(n):
    graded = flag_filtration(cells.flag_complex(cells.torus(n), n)).graded()
    assert graded == {(k, n): comb(n, k) for k in range(n + 1)}


def test_affine_complement_graded_pieces():
    fc = cells.flag_complex(cells.affine_complement(), 1)
    assert cech_graded(fc) == {(0, 1): 1, (1, 1): 2}
    assert perverse_e2(fc, 1) == {0: 1, 1: 2}


def test_appendix_convention_sits_one_level_higher():
    fc = cells.flag_complex(cells.cstar(), 1)
    calibrated = flag_filtration(fc, "calibrated").graded()
    appendix = flag_filtration(fc, "appendix").graded()
    assert calibrated == {(0, 1): 1, (1, 1): 1}
    assert appendix == {(0, 2): 1, (1, 2): 1}
    assert not filtration_length_check(fc, "appendix").ok
    with pytest.raises(ValueError):
        flag_filtration(fc, "other")


def test_restriction_column_count_checked():
    with pytest.raises(DimensionMismatch):
        FlagComplex(1, 1, {0: 1}, {(0, 1): QMatrix.zeros(1, 2)})


def test_oracle_detects_corrupted_restriction():
    fc = cells.flag_complex(cells.torus(2), 2)
    restrictions = dict(fc.restrictions)
    restrictions[(1, 1)] = QMatrix.zeros(*restrictions[(1, 1)].shape)
    bad = FlagComplex(2, 2, fc.betti, restrictions, fc.cech)
    res = oracle_compare(bad)
    assert not res.ok
    assert any("k=1" in d for d in res.details)


def test_oracle_warns_on_euler_mismatch():
    fc = cells.flag_complex(cells.cstar(), 1)
    cech = dict(fc.cech)
    cech[5] = CechRow({0: 1})
    res = oracle_compare(FlagComplex(1, 1, fc.betti, fc.restrictions, cech))
    assert res.warnings


def test_de_rham_relabel():
    fc = cells.flag_complex(cells.torus(2), 2)
    P = flag_filtration(fc)
    same = {k: dict(v) for k, v in P.dims.items()}
    assert de_rham_relabel(same, P).ok
    assert de_rham_relabel(same).data["filtration"].tag == "G^f"
    with pytest.raises(NonMonotone):
        de_rham_relabel({1: {1: 2, 2: 1}})


def _torus2_ring(h1_level=2):
    basis = {0: ["1"], 1: ["x", "y"], 2: ["xy"]}
    products = {
        (0, 0, 0, 0): [1],
        (0, 0, 1, 0): [1, 0], (1, 0, 0, 0): [1, 0],
        (0, 0, 1, 1): [0, 1], (1, 1, 0, 0): [0, 1],
        (0, 0, 2, 0): [1], (2, 0, 0, 0): [1],
        (1, 0, 1, 1): [1], (1, 1, 1, 0): [-1],
    }
    spans = {(0, 2): [[1]], (1, h1_level): [[1, 0], [0, 1]], (2, 2 if h1_level >= 2 else 3): [[1]]}
    return CupRing(basis, products, spans)


def test_multiplicativity_on_exterior_algebra():
    res = multiplicativity_check(_torus2_ring(), 2)
    assert res.ok and res.data["checked"] > 0


def test_multiplicativity_violation_is_located():
    res = multiplicativity_check(_torus2_ring(1), 2)
    assert not res.ok
    assert res.data["violation"] == {"k1": 1, "a1": 0, "k2": 1, "a2": 0}


def test_ring_requires_graded_commutativity():
    with pytest.raises(ValueError):
        CupRing({1: ["x", "y"], 2: ["xy"]}, {(1, 0, 1, 1): [1], (1, 1, 1, 0): [1]})


def test_filtration_dims_from_spans():
    dims = filtration_dims_from_spans(_torus2_ring(), 2)
    assert dims[1] == {0: 0, 1: 0, 2: 2, 3: 2}


@given(st.integers(1, 3), st.sampled_from(["calibrated", "appendix"]))
@settings(max_examples=12, deadline=None)
def test_filtration_is_monotone(n, convention):
    filt = flag_filtration(cells.flag_complex(cells.torus(n), n), convention)
    for k, levels in filt.dims.items():
        values = [levels[b] for b in sorted(levels)]
        assert values == sorted(values)
        assert filt.level(k, k - 2) == 0


def test_gluing_tables_of_two_potential():
    tabs = cells.gluing_tables(cells.two_potential(), {"e1": 1, "f1": 1, "e2": 2, "f2": 2}, ["p", "q"])
    assert tabs == {"sm": {1: 4}, "1": {1: 2}, "2": {1: 2}}


@pytest.mark.parametrize("d", [1, 4, 9])
def test_elliptic_fibration_euler_characteristic(d):
    b = cells.betti(cells.elliptic_fibration(3 + d))
    assert sum((-1) ** k * v for k, v in b.items()) == 3 + d
    assert b == {0: 1, 2: 2 + d}
