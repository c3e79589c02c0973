"""Generator for the shipped scenario files.

Run ``python3 -m pwmirror.fixtures [out_dir]`` to rewrite them.  Flag and
Čech data come from the cell models in :mod:`pwmirror.cells`; strata are
written out by hand or through :func:`weight.product_strata`.
"""

from __future__ import annotations

import json
import sys
from math import comb
from pathlib import Path

from . import cells
from .hodge import MixedHodgeTable, PerverseHodgeTable, PWTable, torus_table
from .linalg import QMatrix
from .mirror import torus_perverse, torus_pw
from .perverse import FlagComplex
from .specseq import GradedSpace
from .weight import StrataComplex, product_strata

DATA_DIR = Path(__file__).parent / "data" / "scenarios"


# -- serializers ----------------------------------------------------------


def mixed_json(t: MixedHodgeTable) -> dict:
    return {"kind": "mixed", "n": t.ambient_dim, "mode": t.mode, "entries": t.records()}


def pw_json(t: PWTable) -> dict:
    return {"kind": "pw", "n": t.ambient_dim, "mode": t.mode, "entries": t.records()}


def perverse_json(t: PerverseHodgeTable) -> dict:
    return {"kind": "perverse", "n": t.ambient_dim, "entries": t.records()}


def _strata_records(strata) -> list:
    out = []
    for I in sorted(strata, key=lambda I: (len(I), I)):
        for deg in sorted(strata[I]):
            for key, labels in strata[I][deg].blocks.items():
                out.append(
                    {"index_set": list(I), "degree": deg, "hodge_type": list(key), "dim": len(labels), "labels": list(labels)}
                )
    return out


def strata_json(sc: StrataComplex) -> dict:
    gysin = [
        {"from_set": list(I), "removed_index": i, "degree": j, "matrix": m.serialize()}
        for (I, i, j), m in sorted(sc.gysin.items())
    ]
    doc = {"n": sc.ambient_dim, "N": sc.components, "strata": _strata_records(sc.strata), "gysin": gysin}
    if sc.global_sign != 1:
        doc["global_sign"] = sc.global_sign
    return doc


def flag_json(fc: FlagComplex) -> dict:
    flag = [{"level": 0, "degree": k, "dim": b} for k, b in sorted(fc.betti.items())]
    for (k, l), m in sorted((fc.restrictions or {}).items()):
        flag.append({"level": l, "degree": k, "dim": m.nrows, "restriction_matrix": m.serialize()})
    cech = []
    for k, row in sorted((fc.cech or {}).items()):
        for l, d in sorted(row.dims.items()):
            rec = {"degree": k, "level": l, "dim": d}
            if l in row.connecting:
                rec["connecting_matrix"] = row.connecting[l].serialize()
            cech.append(rec)
    return {"n": fc.ambient_dim, "N": fc.N, "flag": flag, "cech": cech}


# -- hand-built strata ----------------------------------------------------


def _space(dims: dict, tag: str) -> GradedSpace:
    return GradedSpace({key: [f"{tag}.{key[0]}{key[1]}.{i}" for i in range(d)] for key, d in dims.items()})


def p1_strata() -> StrataComplex:
    """(P^1, {0} + {inf})."""
    strata = {
        (): {0: _space({(0, 0): 1}, "X0"), 2: _space({(1, 1): 1}, "X2")},
        (1,): {0: _space({(0, 0): 1}, "D1")},
        (2,): {0: _space({(0, 0): 1}, "D2")},
    }
    one = QMatrix.from_rows([[1]])
    return StrataComplex(1, 2, strata, {((1,), 1, 0): one, ((2,), 2, 0): one})


def del_pezzo_strata(n: int) -> StrataComplex:
    """Blow-up of P^2 at n points with a smooth anticanonical elliptic curve E."""
    strata = {
        (): {
            0: _space({(0, 0): 1}, "X0"),
            2: _space({(1, 1): n + 1}, "X2"),
            4: _space({(2, 2): 1}, "X4"),
        },
        (1,): {
            0: _space({(0, 0): 1}, "E0"),
            1: _space({(1, 0): 1, (0, 1): 1}, "E1"),
            2: _space({(1, 1): 1}, "E2"),
        },
    }
    # [E] = 3H - E_1 - ... - E_n in the basis H, E_1, ..., E_n
    cls = QMatrix.from_rows([[3]] + [[-1]] * n)
    return StrataComplex(2, 1, strata, {((1,), 1, 0): cls, ((1,), 1, 2): QMatrix.from_rows([[1]])})


def del_pezzo_weight_oracle(n: int) -> MixedHodgeTable:
    """Gr^W of H^*(X_n - E): coker of [E] in weight 2, H^1(E)(-1) in weight 3."""
    return MixedHodgeTable(2, {(0, 0, 0): 1, (2, 1, 2): n, (2, 2, 3): 1, (2, 1, 3): 1})


def del_pezzo_pw(n: int) -> PWTable:
    """Cells read off the monomials p + u w^2 p^2 + u t^2 w^2 + (9-n) u w^2."""
    return PWTable(2, {(0, 0, 0, 1): 1, (0, 1, 2, 2): 1, (2, 1, 2, 0): 1, (0, 1, 2, 0): 9 - n}, "raw")


def del_pezzo_poly(n: int) -> str:
    return f"p + u*w^2*p^2 + u*t^2*w^2 + {9 - n}*u*w^2"


def _nc_records(strata: dict) -> list:
    return _strata_records({I: {d: _space(dims, "D" + "".join(map(str, I)) + f"h{d}") for d, dims in degs.items()}
                            for I, degs in strata.items()})


def nc_cycle(k: int) -> dict:
    """A cycle of k >= 2 projective lines; for k = 2 the two lines meet in two points."""
    comps = range(1, k + 1)
    strata = {(i,): {0: {(0, 0): 1}, 2: {(1, 1): 1}} for i in comps}
    restrictions = []
    if k == 2:
        strata[(1, 2)] = {0: {(0, 0): 2}}
        for i in (1, 2):
            restrictions.append({"index_set": [1, 2], "removed_index": i, "degree": 0, "matrix": [["1"], ["1"]]})
    else:
        pairs = sorted(tuple(sorted((i, i % k + 1))) for i in comps)
        for I in pairs:
            strata[I] = {0: {(0, 0): 1}}
            for i in I:
                restrictions.append({"index_set": list(I), "removed_index": i, "degree": 0, "matrix": [["1"]]})
    return {"n": 1, "N": k, "strata": _nc_records(strata), "restrictions": restrictions}


def nc_cycle_oracle(k: int) -> MixedHodgeTable:
    return MixedHodgeTable(1, {(0, 0, 0): 1, (1, 0, 0): 1, (2, 1, 2): k}, "limit")


def nc_two_lines() -> dict:
    """Two projective lines meeting transversally in one point."""
    strata = {(1,): {0: {(0, 0): 1}, 2: {(1, 1): 1}}, (2,): {0: {(0, 0): 1}, 2: {(1, 1): 1}}, (1, 2): {0: {(0, 0): 1}}}
    restrictions = [
        {"index_set": [1, 2], "removed_index": i, "degree": 0, "matrix": [["1"]]} for i in (1, 2)
    ]
    return {"n": 1, "N": 2, "strata": _nc_records(strata), "restrictions": restrictions}


def simplicial_two_copies() -> dict:
    """Level 0: two copies of (P^1, 0 + inf); level 1: one copy; the faces pick a copy each.

    The totalized double complex computes H^*(C*) with its limit weights.
    """
    strata = {
        (): {0: _space({(0, 0): 2}, "X0"), 2: _space({(1, 1): 2}, "X2")},
        **{(i,): {0: _space({(0, 0): 1}, f"D{i}")} for i in range(1, 5)},
    }
    gysin = {
        ((1,), 1, 0): QMatrix.from_rows([[1], [0]]),
        ((2,), 2, 0): QMatrix.from_rows([[1], [0]]),
        ((3,), 3, 0): QMatrix.from_rows([[0], [1]]),
        ((4,), 4, 0): QMatrix.from_rows([[0], [1]]),
    }
    level0 = StrataComplex(1, 4, strata, gysin)
    pick = {0: [[1, 0]], 1: [[0, 1]]}
    faces = []
    for i in (0, 1):
        for deg in (0, 2):
            faces.append({"level": 0, "face": i, "depth": 0, "degree": deg, "matrix": pick[i]})
        rows = [[1, 0, 0, 0], [0, 1, 0, 0]] if i == 0 else [[0, 0, 1, 0], [0, 0, 0, 1]]
        faces.append({"level": 0, "face": i, "depth": 1, "degree": 0, "matrix": rows})
    return {"levels": [strata_json(level0), strata_json(p1_strata())], "faces": faces}


def lg_compactification_strata(d: int) -> StrataComplex:
    """Rational elliptic surface Z with the fibre at infinity as boundary, for the degree-d mirror.

    For d < 9 the boundary is a wheel of k = 9 - d lines; a single nodal
    line (d = 8) is blown up at its node first, giving a wheel of two lines
    and an extra class in H^2(Z).  For d = 9 the boundary is a smooth
    elliptic curve.  Boundary components are independent in H^2(Z).
    """
    k = 9 - d
    if k == 0:
        strata = {
            (): {0: _space({(0, 0): 1}, "Z0"), 2: _space({(1, 1): 10}, "Z2"), 4: _space({(2, 2): 1}, "Z4")},
            (1,): {0: _space({(0, 0): 1}, "F0"), 1: _space({(1, 0): 1, (0, 1): 1}, "F1"), 2: _space({(1, 1): 1}, "F2")},
        }
        fibre = QMatrix.from_rows([[1]] + [[0]] * 9)
        return StrataComplex(2, 1, strata, {((1,), 1, 0): fibre, ((1,), 1, 2): QMatrix.from_rows([[1]])})
    comps = max(k, 2)
    h2 = 10 + comps - k
    strata: dict = {(): {0: _space({(0, 0): 1}, "Z0"), 2: _space({(1, 1): h2}, "Z2"), 4: _space({(2, 2): 1}, "Z4")}}
    gysin: dict = {}
    one = QMatrix.from_rows([[1]])
    for j in range(1, comps + 1):
        strata[(j,)] = {0: _space({(0, 0): 1}, f"L{j}.0"), 2: _space({(1, 1): 1}, f"L{j}.2")}
        gysin[((j,), j, 0)] = QMatrix(h2, 1, {(j - 1, 0): 1})
        gysin[((j,), j, 2)] = one
    if comps == 2:
        strata[(1, 2)] = {0: _space({(0, 0): 2}, "P12")}
        gysin[((1, 2), 1, 0)] = QMatrix.from_rows([[1, 1]])
        gysin[((1, 2), 2, 0)] = QMatrix.from_rows([[1, 1]])
    else:
        for j in range(1, comps + 1):
            I = tuple(sorted((j, j % comps + 1)))
            strata[I] = {0: _space({(0, 0): 1}, "P" + "".join(map(str, I)))}
            gysin[(I, I[0], 0)] = one
            gysin[(I, I[1], 0)] = one
    return StrataComplex(2, comps, strata, gysin)


def monotone_refinement(weight: MixedHodgeTable, graded: dict) -> dict:
    """Joint (W, P) cells pairing weight pieces with perverse pieces, highest with highest, per degree."""
    cells_: dict = {}
    for s in sorted({key[0] for key in weight.dims}):
        pieces = sorted(((w, p), d) for (ss, p, w), d in weight.dims.items() if ss == s)
        slots = sorted((rho, d) for (ss, rho), d in graded.items() if ss == s)
        if sum(d for _, d in pieces) != sum(d for _, d in slots):
            raise ValueError(f"degree {s}: weight and perverse totals differ")
        levels = [rho for rho, d in slots for _ in range(d)]
        classes = [wp for wp, d in pieces for _ in range(d)]
        for (w, p), rho in zip(classes, levels):
            cell = cells_.setdefault((s, p, w), {})
            cell[rho - s] = cell.get(rho - s, 0) + 1
    return cells_


def del_pezzo_lg_pw(d: int) -> PWTable:
    """PW table of the LG mirror of a degree-d del Pezzo surface, derived from the fixtures above."""
    from .hodge import assemble_pw, explicit_rule
    from .perverse import flag_filtration
    from .weight import weight_graded

    weight = weight_graded(lg_compactification_strata(d))
    graded = flag_filtration(cells.flag_complex(cells.elliptic_fibration(3 + d), 2, N=1)).graded()
    return assemble_pw(weight, explicit_rule(monotone_refinement(weight, graded)))


# -- rings ----------------------------------------------------------------


def torus2_ring(p1_level: int = 2) -> dict:
    """Exterior algebra on x, y with P_b H^k = H^k for b >= 2 (H^1 may sit lower)."""
    products = [
        {"left": [0, 0], "right": [0, 0], "value": ["1"]},
        {"left": [0, 0], "right": [1, 0], "value": ["1", "0"]},
        {"left": [0, 0], "right": [1, 1], "value": ["0", "1"]},
        {"left": [0, 0], "right": [2, 0], "value": ["1"]},
        {"left": [1, 0], "right": [1, 1], "value": ["1"]},
    ]
    h2_level = 2 if p1_level >= 2 else 3
    spans = [
        {"degree": 0, "level": 2, "vectors": [["1"]]},
        {"degree": 1, "level": p1_level, "vectors": [["1", "0"], ["0", "1"]]},
        {"degree": 2, "level": h2_level, "vectors": [["1"]]},
    ]
    basis = [{"degree": 0, "labels": ["1"]}, {"degree": 1, "labels": ["x", "y"]}, {"degree": 2, "labels": ["xy"]}]
    return {"basis": basis, "products": products, "filtration_spans": spans}


# -- scenarios ------------------------------------------------------------


def torus_scenario(n: int) -> dict:
    fc = cells.flag_complex(cells.torus(n), n)
    return {
        "name": f"torus_n{n}",
        "description": f"The torus (C*)^{n}: PW polynomial, self-mirror identity and flag/Čech oracle.",
        "n": n,
        "N": n,
        "data": {
            "tables": {"pw": pw_json(torus_pw(n))},
            "flags": {"torus": flag_json(fc)},
            "mirror_pairs": {"self": {"n": n, "u_side": "pw", "v_side": "pw", "mode": "full"}},
        },
        "tasks": [
            {"name": "pw-polynomial", "op": "pw_polynomial", "table": "pw", "expect": f"(u*t*w+p)^{n}"},
            {"name": "self-mirror", "op": "mirror", "pair": "self"},
            {"name": "flag-vs-cech", "op": "oracle_compare", "flag": "torus"},
        ],
    }


def p1_scenario() -> dict:
    A = p1_strata()
    return {
        "name": "p1_strata",
        "description": "(P^1, {0, inf}) and its square: weight graded pieces against Kunneth powers of H^*(C*).",
        "n": 2,
        "data": {
            "tables": {"cstar": mixed_json(torus_table(1))},
            "strata": {"p1": strata_json(A), "p1xp1": strata_json(product_strata(A, A))},
        },
        "tasks": [
            {"name": "weight-p1", "op": "weight_graded", "strata": "p1",
             "expect_kunneth": {"table": "cstar", "power": 1}},
            {"name": "weight-p1xp1", "op": "weight_graded", "strata": "p1xp1",
             "expect_kunneth": {"table": "cstar", "power": 2}},
        ],
    }


def del_pezzo_scenario() -> dict:
    tables, strata, tasks = {}, {}, []
    for n in range(9):
        tables[f"pw_{n}"] = pw_json(del_pezzo_pw(n))
        tables[f"weight_{n}"] = mixed_json(del_pezzo_weight_oracle(n))
        strata[f"dp_{n}"] = strata_json(del_pezzo_strata(n))
    for n in range(9):
        tasks.append({"name": f"pw-dp{n}", "op": "pw_polynomial", "table": f"pw_{n}", "expect": del_pezzo_poly(n)})
    for n in range(9):
        tasks.append({"name": f"weight-dp{n}", "op": "weight_graded", "strata": f"dp_{n}", "expect": f"weight_{n}"})
    return {
        "name": "del_pezzo",
        "description": "Complements of smooth anticanonical curves in del Pezzo surfaces, n = 0..8 blown-up points.",
        "n": 2,
        "data": {"tables": tables, "strata": strata},
        "tasks": tasks,
    }


def nc_scenario() -> dict:
    return {
        "name": "nc_curves",
        "description": "Normal-crossing curves and a two-level simplicial variety.",
        "n": 1,
        "data": {
            "tables": {
                "wheel3": mixed_json(nc_cycle_oracle(3)),
                "cycle2": mixed_json(nc_cycle_oracle(2)),
                "two_lines": mixed_json(MixedHodgeTable(1, {(0, 0, 0): 1, (2, 1, 2): 2}, "limit")),
                "cstar_limit": mixed_json(torus_table(1).with_mode("limit")),
            },
            "nc": {"wheel3": nc_cycle(3), "cycle2": nc_cycle(2), "two_lines": nc_two_lines()},
            "simplicial": {"two_copies": simplicial_two_copies()},
        },
        "tasks": [
            {"name": "wheel-of-3", "op": "nc_cohomology", "nc": "wheel3", "expect": "wheel3"},
            {"name": "cycle-of-2", "op": "nc_cohomology", "nc": "cycle2", "expect": "cycle2"},
            {"name": "two-lines", "op": "nc_cohomology", "nc": "two_lines", "expect": "two_lines"},
            {"name": "simplicial-cstar", "op": "simplicial_weight", "simplicial": "two_copies",
             "expect": "cstar_limit"},
        ],
    }


def _gluing_records() -> list:
    cx = cells.two_potential()
    side = {"e1": 1, "f1": 1, "e2": 2, "f2": 2}
    tabs = cells.gluing_tables(cx, side, ["p", "q"])
    return [{"space": sp, "degree": k, "dim": d} for sp in ("sm", "1", "2") for k, d in sorted(tabs[sp].items())]


def conic_line_scenario() -> dict:
    return {
        "name": "conic_line",
        "description": "Hybrid mirror of P^2 with a conic and a line.",
        "n": 2,
        "N": 2,
        "data": {"lg_specs": {"conic_line": {"n": 2, "degrees": [2, 1]}}, "gluing": {"two_potential": _gluing_records()}},
        "tasks": [
            {"name": "discriminant", "op": "discriminant", "spec": "conic_line", "variant": "two_component",
             "expect": "{a^2*b = 4} ∪ {b = 0}"},
            {"name": "anti-diagonal-line", "op": "line_counts", "spec": "conic_line", "line": "anti_diagonal",
             "expect": 3},
            {"name": "coordinate-line", "op": "line_counts", "spec": "conic_line",
             "line": {"kind": "coordinate", "vary": 1}, "expect": 2},
            {"name": "gluing", "op": "gluing", "gluing": "two_potential"},
        ],
    }


def cubic_plane_scenario() -> dict:
    return {
        "name": "cubic_plane",
        "description": "Hybrid mirror of P^3 with a cubic surface and a plane.",
        "n": 3,
        "N": 2,
        "data": {"lg_specs": {"cubic_plane": {"n": 3, "degrees": [3, 1]}}},
        "tasks": [
            {"name": "discriminant", "op": "discriminant", "spec": "cubic_plane", "variant": "two_component",
             "expect": "{a^3*b = 27} ∪ {b = 0}"},
            {"name": "general-variant", "op": "discriminant", "spec": "cubic_plane", "variant": "general",
             "expect": "{a^3*b = c} ∪ {b = 0}"},
            {"name": "anti-diagonal-line", "op": "line_counts", "spec": "cubic_plane", "line": "anti_diagonal",
             "expect": 4},
            {"name": "coordinate-line", "op": "line_counts", "spec": "cubic_plane",
             "line": {"kind": "coordinate", "vary": 1}, "expect": 3},
        ],
    }


def two_potential_scenario() -> dict:
    fc = cells.flag_complex(cells.two_potential(), 2, N=1)
    return {
        "name": "two_potential",
        "description": "Two circles glued at two points: relative Mayer-Vietoris gluing and Čech rows.",
        "n": 2,
        "N": 1,
        "data": {"gluing": {"Y": _gluing_records()}, "flags": {"Y": flag_json(fc)}},
        "tasks": [
            {"name": "gluing", "op": "gluing", "gluing": "Y"},
            {"name": "flag-vs-cech", "op": "oracle_compare", "flag": "Y"},
            {"name": "length", "op": "filtration_length", "flag": "Y"},
        ],
    }


def affine_complement_scenario() -> dict:
    fc = cells.flag_complex(cells.affine_complement(), 1)
    torus_line = cells.flag_complex(cells.torus_generic_line(), 2)
    return {
        "name": "affine_complement",
        "description": "P^1 minus three points and (C*)^2 with a generic-line flag.",
        "n": 1,
        "data": {"flags": {"P1_minus_3": flag_json(fc), "torus_line": flag_json(torus_line)}},
        "tasks": [
            {"name": "flag-vs-cech", "op": "oracle_compare", "flag": "P1_minus_3"},
            {"name": "length", "op": "filtration_length", "flag": "P1_minus_3"},
            {"name": "gr-p", "op": "perverse_e2", "flag": "P1_minus_3", "expect": [[0, 1, 1], [1, 1, 2]]},
            {"name": "torus-line-oracle", "op": "oracle_compare", "flag": "torus_line"},
            {"name": "torus-line-length", "op": "filtration_length", "flag": "torus_line"},
        ],
    }


HT_LIMITING = MixedHodgeTable(2, {(2, 0, 0): 1, (2, 1, 2): 1, (2, 2, 4): 1}, "limit")
ELLIPTIC = MixedHodgeTable(1, {(0, 0, 0): 1, (1, 0, 1): 1, (1, 1, 1): 1, (2, 1, 2): 1})


def kkp_scenario() -> dict:
    return {
        "name": "kkp_hodge_tate",
        "description": "Hodge-Tate limiting data propagated to h^{p,q} and compared with f^{p,q}.",
        "n": 2,
        "data": {
            "tables": {
                "limiting": mixed_json(HT_LIMITING),
                "cstar": mixed_json(torus_table(1)),
                "torus2": mixed_json(torus_table(2)),
            },
            "lg_tables": {
                "Y": {"tables": [
                    {"flavor": "f(Y,h)", "entries": [{"p": 0, "q": 2, "dim": 1}, {"p": 1, "q": 1, "dim": 1},
                                                     {"p": 2, "q": 0, "dim": 1}]},
                    {"flavor": "f(Y,w)", "entries": [{"p": 0, "q": 2, "dim": 1}, {"p": 1, "q": 1, "dim": 1},
                                                     {"p": 2, "q": 0, "dim": 1}]},
                ]},
            },
        },
        "tasks": [
            {"name": "f-flavors", "op": "kkp", "tables": "Y", "pair": ["f(Y,w)", "f(Y,h)"]},
            {"name": "hodge-tate-kkp", "op": "hodge_tate_kkp", "limiting": "limiting",
             "witnesses": ["cstar", "torus2"], "flavor": "h(Y,h)", "compare_tables": "Y", "compare_with": "f(Y,h)"},
        ],
    }


def multiplicativity_scenario() -> dict:
    return {
        "name": "multiplicativity",
        "description": "Cup products on H^*((C*)^2) against the perverse filtration.",
        "n": 2,
        "N": 2,
        "data": {"rings": {"torus2": torus2_ring()}},
        "tasks": [{"name": "torus2-cup", "op": "multiplicativity", "ring": "torus2", "N": 2}],
    }


def mirror_scenario() -> dict:
    tables = {}
    pairs = {}
    tasks = []
    for n in (1, 2, 3):
        tables[f"U{n}"] = mixed_json(torus_table(n))
        tables[f"V{n}"] = perverse_json(torus_perverse(n))
        pairs[f"torus{n}-one-sided"] = {"n": n, "u_side": f"U{n}", "v_side": f"V{n}", "mode": "one_sided"}
        tasks.append({"name": f"one-sided-n{n}", "op": "one_sided", "u": f"U{n}", "v": f"V{n}"})
        tasks.append({"name": f"pair-n{n}", "op": "mirror", "pair": f"torus{n}-one-sided"})
    flags = {
        "cstar_point": flag_json(cells.flag_complex(cells.cstar(), 1)),
        "torus2": flag_json(cells.flag_complex(cells.torus(2), 2)),
    }
    pairs["cstar-graded"] = {"n": 1, "u_side": "U1", "v_side": "cstar_point", "mode": "graded", "N": 1}
    tasks += [
        {"name": "graded-cstar", "op": "graded_correspondence", "u": "U1", "y": "cstar_point", "n": 1, "N": 1},
        {"name": "graded-torus2", "op": "graded_correspondence", "u": "U2", "y": "torus2", "n": 2, "N": 2},
        {"name": "graded-pair", "op": "mirror", "pair": "cstar-graded"},
        {"name": "hodge-tate-pw", "op": "hodge_tate_pw", "table": "U2", "rule": {"level": 2},
         "expect": "(u*t*w+p)^2"},
        {"name": "de-rham", "op": "de_rham", "flag": "torus2",
         "image_dims": {"0": {"1": 0, "2": 1}, "1": {"1": 0, "2": 2}, "2": {"1": 0, "2": 1}}},
    ]
    return {
        "name": "mirror_checks",
        "description": "One-sided and graded forms of the mirror identity on tori and (C*, point).",
        "n": 2,
        "data": {"tables": tables, "flags": flags, "mirror_pairs": pairs},
        "tasks": tasks,
    }


def del_pezzo_mirror_scenario() -> dict:
    tables, pairs, tasks = {}, {}, []
    for n in range(9):
        tables[f"U_{n}"] = pw_json(del_pezzo_pw(n))
        tables[f"V_{n}"] = pw_json(del_pezzo_lg_pw(9 - n))
        pairs[f"dp{n}"] = {"n": 2, "u_side": f"U_{n}", "v_side": f"V_{n}", "mode": "full"}
        tasks.append({"name": f"mirror-dp{n}", "op": "mirror", "pair": f"dp{n}"})
    return {
        "name": "del_pezzo_mirror",
        "description": "Printed del Pezzo PW polynomials against PW tables derived for their elliptic LG mirrors.",
        "n": 2,
        "data": {"tables": tables, "mirror_pairs": pairs},
        "tasks": tasks,
    }


# -- constructed failures -------------------------------------------------


def failure_scenarios() -> dict[str, dict | str]:
    out: dict = {}

    # Gysin maps of the square with one sign flipped: d1 no longer squares to zero
    sq = strata_json(product_strata(p1_strata(), p1_strata()))
    for rec in sq["gysin"]:
        if rec["from_set"] == [1, 3] and rec["removed_index"] == 1:
            rec["matrix"] = [[("-" + v).replace("--", "") if v != "0" else v for v in row] for row in rec["matrix"]]
    out["corrupt_gysin"] = {"name": "corrupt_gysin", "data": {"strata": {"sq": sq}},
                            "tasks": [{"name": "weight", "op": "weight_graded", "strata": "sq"}]}

    fc = flag_json(cells.flag_complex(cells.torus(2), 2))
    for rec in fc["flag"]:
        if rec["degree"] == 1 and rec["level"] == 1:
            rec["restriction_matrix"] = [["0", "0"] for _ in range(rec["dim"])]
    out["oracle_corrupt"] = {"name": "oracle_corrupt", "data": {"flags": {"torus": fc}},
                             "tasks": [{"name": "flag-vs-cech", "op": "oracle_compare", "flag": "torus"}]}

    shifted = PWTable(2, {(s, s, s, 2 - s + (1 if s == 1 else 0)): comb(2, s) for s in range(3)})
    shifted_v = PerverseHodgeTable(2, {(0, 0, 2): 1, (1, 1, 3): 2, (2, 2, 2): 1})
    out["mirror_shifted"] = {
        "name": "mirror_shifted",
        "data": {
            "tables": {"U": pw_json(torus_pw(2)), "V": pw_json(shifted), "Um": mixed_json(torus_table(2)),
                       "Vp": perverse_json(shifted_v)},
            "mirror_pairs": {"bad": {"n": 2, "u_side": "U", "v_side": "V"}},
        },
        "tasks": [{"name": "mirror", "op": "mirror", "pair": "bad"},
                  {"name": "one-sided", "op": "one_sided", "u": "Um", "v": "Vp"}],
    }

    out["multiplicativity_violation"] = {
        "name": "multiplicativity_violation", "data": {"rings": {"bad": torus2_ring(p1_level=1)}},
        "tasks": [{"name": "cup", "op": "multiplicativity", "ring": "bad", "N": 2}],
    }

    glue = _gluing_records()
    for rec in glue:
        if rec["space"] == "sm" and rec["degree"] == 1:
            rec["dim"] += 1
    out["gluing_perturbed"] = {"name": "gluing_perturbed", "data": {"gluing": {"Y": glue}},
                               "tasks": [{"name": "gluing", "op": "gluing", "gluing": "Y"}]}

    kk = kkp_scenario()
    kk["name"] = "kkp_off_by_one"
    kk["data"]["lg_tables"]["Y"]["tables"][0]["entries"][1]["dim"] = 2
    out["kkp_off_by_one"] = kk

    out["elliptic_refusal"] = {
        "name": "elliptic_refusal",
        "data": {"tables": {"limiting": mixed_json(HT_LIMITING), "E": mixed_json(ELLIPTIC)}},
        "tasks": [{"name": "hodge-tate-kkp", "op": "hodge_tate_kkp", "limiting": "limiting", "witnesses": ["E"]}],
    }

    long_flag = cells.CellComplex((cells.Cell("v", 0, 2), cells.Cell("e", 1, 0)), {"e": {"v": 0}})
    out["length_violation"] = {
        "name": "length_violation",
        "data": {"flags": {"Y": flag_json(cells.flag_complex(long_flag, 1, N=2))}},
        "tasks": [{"name": "length", "op": "filtration_length", "flag": "Y"}],
    }

    out["de_rham_mismatch"] = {
        "name": "de_rham_mismatch",
        "data": {"flags": {"torus2": flag_json(cells.flag_complex(cells.torus(2), 2))}},
        "tasks": [{"name": "de-rham", "op": "de_rham", "flag": "torus2",
                   "image_dims": {"0": {"1": 0, "2": 1}, "1": {"1": 1, "2": 2}, "2": {"1": 0, "2": 1}}}],
    }

    y = flag_json(cells.flag_complex(cells.cstar(), 1))
    for rec in y["flag"]:
        if rec["degree"] == 0 and rec["level"] == 1:
            rec["restriction_matrix"] = [["0"]]
    y.pop("cech")
    out["graded_corrupt"] = {
        "name": "graded_corrupt",
        "data": {"tables": {"U": mixed_json(torus_table(1))}, "flags": {"Y": y}},
        "tasks": [{"name": "graded", "op": "graded_correspondence", "u": "U", "y": "Y", "n": 1, "N": 1}],
    }

    wrong = MixedHodgeTable(2, {(0, 0, 0): 1, (2, 1, 2): 2, (2, 2, 3): 1, (2, 1, 3): 1})
    out["weight_mismatch"] = {
        "name": "weight_mismatch",
        "data": {"tables": {"expected": mixed_json(wrong)}, "strata": {"dp3": strata_json(del_pezzo_strata(3))}},
        "tasks": [{"name": "weight-dp3", "op": "weight_graded", "strata": "dp3", "expect": "expected"}],
    }

    bad_shape = strata_json(p1_strata())
    bad_shape["gysin"][0]["matrix"] = [["1", "0"]]
    out["shape_mismatch"] = {"name": "shape_mismatch", "data": {"strata": {"p1": bad_shape}},
                             "tasks": [{"name": "weight", "op": "weight_graded", "strata": "p1"}]}

    truncated = dumps(torus_scenario(1))
    out["truncated"] = truncated[: len(truncated) // 2]
    return out


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def all_scenarios() -> dict[str, str]:
    """Relative path -> file contents for every shipped scenario."""
    docs = {
        "torus.json": torus_scenario(2),
        "torus_n1.json": torus_scenario(1),
        "torus_n3.json": torus_scenario(3),
        "p1_strata.json": p1_scenario(),
        "del_pezzo.json": del_pezzo_scenario(),
        "nc_curves.json": nc_scenario(),
        "conic_line.json": conic_line_scenario(),
        "cubic_plane.json": cubic_plane_scenario(),
        "two_potential.json": two_potential_scenario(),
        "affine_complement.json": affine_complement_scenario(),
        "kkp_hodge_tate.json": kkp_scenario(),
        "multiplicativity.json": multiplicativity_scenario(),
        "mirror_checks.json": mirror_scenario(),
    }
    out = {name: dumps(doc) for name, doc in docs.items()}
    out["stretch/del_pezzo_mirror.json"] = dumps(del_pezzo_mirror_scenario())
    for name, doc in failure_scenarios().items():
        out[f"failures/{name}.json"] = doc if isinstance(doc, str) else dumps(doc)
    return out


def write_all(out_dir: str | Path = DATA_DIR) -> list[Path]:
    root = Path(out_dir)
    written = []
    for rel, text in all_scenarios().items():
        path = root / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        written.append(path)
    return written


if __name__ == "__main__":
    for p in write_all(sys.argv[1] if len(sys.argv) > 1 else DATA_DIR):
        print(p)
