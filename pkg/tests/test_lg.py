import pytest
import sympy
from hypothesis import given, settings, strategies as st

from pwmirror.hodge import HypothesisFailed, MixedHodgeTable, torus_table
from pwmirror.lg import (
    DiscriminantLocus,
    InvalidSpec,
    LGSpec,
    VariantMismatch,
    discriminant,
    gluing_check,
    hodge_tate_kkp,
    kkp_check,
    line_counts,
)


def test_spec_validation():
    assert LGSpec(2, (2, 1)).N == 2
    with pytest.raises(InvalidSpec):
        LGSpec(2, (2, 2))
    with pytest.raises(InvalidSpec):
        LGSpec(0, (0, 1))


@pytest.mark.parametrize(
    "degrees, n, text",
    [
        ((2, 1), 2, "{a^2*b = 4} ∪ {b = 0}"),
        ((3, 1), 3, "{a^3*b = 27} ∪ {b = 0}"),
        ((1, 2), 2, "{a*b^2 = 4} ∪ {a = 0}"),
        ((2, 2), 3, "{a^2*b^2 = 16} ∪ {a*b = 0}"),
    ],
)
def test_two_component_loci(degrees, n, text):
    assert discriminant(LGSpec(n, degrees), "two_component").render() == text


def test_one_one_case_is_flagged():
    locus = discriminant(LGSpec(1, (1, 1)), "two_component")
    assert locus.render() == "{a*b = 1} ∪ {a*b = 0}"
    assert locus.notes


def test_general_variant():
    assert discriminant(LGSpec(3, (2, 1, 1)), "general").render() == "{a1^2*a2*a3 = c} ∪ {a2 = 0} ∪ {a3 = 0}"
    assert discriminant(LGSpec(3, (2, 2)), "general").components() == ["a^2*b^2 = c"]
    with pytest.raises(VariantMismatch):
        discriminant(LGSpec(3, (2, 1, 1)), "two_component")
    with pytest.raises(ValueError):
        discriminant(LGSpec(2, (2, 1)), "other")


def test_line_counts_on_conic_plus_line():
    locus = discriminant(LGSpec(2, (2, 1)), "two_component")
    assert line_counts(locus, "anti_diagonal") == 3
    assert line_counts(locus, {"kind": "coordinate", "vary": 1}) == 2
    assert line_counts(locus, {"kind": "coordinate", "fixed": 2}) == 2
    assert line_counts(locus, {"kind": "coordinate", "vary": 2}) == 1
    with pytest.raises(ValueError):
        line_counts(locus, {"kind": "coordinate"})
    with pytest.raises(ValueError):
        line_counts(locus, "diagonal")


def test_single_potential():
    assert line_counts(DiscriminantLocus((3,), None), "anti_diagonal") == 3


def _sympy_count(degrees, moving):
    """Distinct solutions of prod a_j^k_j = 5 on a generic line where the coordinates in ``moving`` vary."""
    t = sympy.symbols("t")
    coords = []
    for j, _ in enumerate(degrees):
        base = sympy.Rational(j + 2, 3)
        coords.append(base + (j + 1) * t if j in moving else base)
    expr = sympy.expand(sympy.prod(a**k for a, k in zip(coords, degrees)) - 5)
    poly = sympy.Poly(expr, t)
    return poly.degree() if sympy.gcd(poly, poly.diff(t)).degree() == 0 else None


@given(st.lists(st.integers(1, 4), min_size=2, max_size=3))
@settings(max_examples=30, deadline=None)
def test_line_counts_against_sympy(degrees):
    locus = DiscriminantLocus(tuple(degrees), None)
    assert line_counts(locus, "anti_diagonal") == _sympy_count(degrees, set(range(len(degrees))))
    for j in range(len(degrees)):
        assert line_counts(locus, {"kind": "coordinate", "vary": j + 1}) == _sympy_count(degrees, {j})


def test_gluing_check():
    assert gluing_check({"sm": {1: 4}, "1": {1: 2}, "2": {1: 2}}).ok
    res = gluing_check({"sm": {1: 5}, "1": {1: 2}, "2": {1: 2}})
    assert not res.ok and "degree 1" in res.details[0]


def test_kkp_check():
    table = {(1, 1): 1, (0, 2): 1}
    assert kkp_check({"f(Y,w)": table, "h(Y,h)": dict(table)}, ("f(Y,w)", "h(Y,h)")).ok
    assert not kkp_check({"f(Y,w)": table, "h(Y,h)": {(1, 1): 2}}, ("f(Y,w)", "h(Y,h)")).ok
    assert not kkp_check({"f(Y,w)": table}, ("f(Y,w)", "h(Y,h)")).ok


def test_hodge_tate_kkp_reads_weights():
    limiting = MixedHodgeTable(2, {(2, 0, 0): 1, (2, 1, 2): 1, (2, 2, 4): 1}, "limit")
    out = hodge_tate_kkp(limiting, [("torus", torus_table(2))])
    assert out == {"h(Y,h)": {(0, 2): 1, (1, 1): 1, (2, 0): 1}}


def test_hodge_tate_kkp_refuses_elliptic_witness():
    elliptic = MixedHodgeTable(1, {(0, 0, 0): 1, (1, 0, 1): 1, (1, 1, 1): 1, (2, 1, 2): 1})
    with pytest.raises(HypothesisFailed) as info:
        hodge_tate_kkp(MixedHodgeTable(1), [("E", elliptic)])
    assert info.value.witness == "E"
    assert info.value.cell == (1, 0, 1)
