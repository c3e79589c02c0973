"""Acceptance criteria, one test each.  Every test records a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` and read the "acceptance
criteria" section of the summary, or ``python3 tests/test_acceptance.py``.
"""

import itertools
import os
import time
from pathlib import Path

import pytest

from _acceptance import record
from pwmirror import cells, fixtures, scenario
from pwmirror.hodge import kunneth, pw_polynomial, tate_twist, torus_table
from pwmirror.lg import LGSpec, discriminant, gluing_check, hodge_tate_kkp, kkp_check, line_counts
from pwmirror.mirror import MirrorPair, check_mirror_pw, torus_pw
from pwmirror.perverse import filtration_length_check, multiplicativity_check, oracle_compare
from pwmirror.polyalg import LaurentPoly, render
from pwmirror.specseq import check_double_complex, euler, page_homology, totalize, validate_complex
from pwmirror.weight import nc_row, simplicial_double_complex, weight_e1, weight_graded

DATA = fixtures.DATA_DIR
SHIPPED = sorted(p for p in fixtures.all_scenarios() if not p.startswith(("failures/", "stretch/")))


def _load(rel):
    return scenario.load(DATA / rel)


def test_criterion_01_torus_pw_polynomial():
    start = time.perf_counter()
    bad = [n for n in range(1, 9) if pw_polynomial(torus_pw(n)) != LaurentPoly.parse(f"(u*t*w + p)^{n}")]
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 1
    record(1, ok, f"PW of the torus table equals (utw+p)^n for n = 1..8; mismatches {bad}", elapsed)
    assert ok


def test_criterion_02_torus_self_mirror():
    start = time.perf_counter()
    residuals = {n: check_mirror_pw(MirrorPair(n, torus_pw(n), torus_pw(n))) for n in range(1, 9)}
    elapsed = time.perf_counter() - start
    nonzero = {n: render(r) for n, r in residuals.items() if not r.is_zero()}
    ok = not nonzero and elapsed < 1
    record(2, ok, f"self-mirror residual is 0 for n = 1..8; nonzero {nonzero}", elapsed)
    assert ok


def test_criterion_03_del_pezzo_fixture():
    sc = _load("del_pezzo.json")
    bad = []
    for n in range(9):
        got = pw_polynomial(sc.data["tables"][f"pw_{n}"])
        want = LaurentPoly.parse(f"p + u*w^2*p^2 + u*t^2*w^2 + ({9 - n})*u*w^2")
        if got != want:
            bad.append(n)
    record(3, not bad, f"stored del Pezzo tables give p + uw^2p^2 + ut^2w^2 + (9-n)uw^2 for n = 0..8; mismatches {bad}")
    assert not bad


def test_criterion_04_weight_engine():
    start = time.perf_counter()
    sc = _load("p1_strata.json")
    base = sc.data["tables"]["cstar"]
    assert base.dims == {(0, 0, 0): 1, (1, 1, 2): 1}
    results = {}
    for name, power in (("p1", 1), ("p1xp1", 2)):
        want = fixtures.MixedHodgeTable(0, {(0, 0, 0): 1})
        for _ in range(power):
            want = kunneth(want, base)
        results[power] = weight_graded(sc.data["strata"][name]).dims == want.dims
    elapsed = time.perf_counter() - start
    ok = all(results.values()) and elapsed < 1
    record(4, ok, f"weight_graded equals the Kunneth power of H^*(C*) for n = 1, 2: {results}", elapsed)
    assert ok


def test_criterion_05_flag_cech_oracle():
    start = time.perf_counter()
    cases = {
        "torus n=1": fixtures.flag_json(cells.flag_complex(cells.torus(1), 1)),
        "torus n=2": fixtures.flag_json(cells.flag_complex(cells.torus(2), 2)),
    }
    results = {name: oracle_compare(scenario._flag(doc, name)).ok for name, doc in cases.items()}
    for rel, key in (("torus_n1.json", "torus"), ("torus.json", "torus"), ("affine_complement.json", "P1_minus_3")):
        results[f"{rel}:{key}"] = oracle_compare(_load(rel).data["flags"][key]).ok
    elapsed = time.perf_counter() - start
    ok = all(results.values()) and elapsed < 5
    record(5, ok, f"flag-kernel dims equal Čech E2 dims: {results}", elapsed)
    assert ok


def test_criterion_06_multiplicativity():
    start = time.perf_counter()
    good = multiplicativity_check(_load("multiplicativity.json").data["rings"]["torus2"], 2)
    bad = multiplicativity_check(_load("failures/multiplicativity_violation.json").data["rings"]["bad"], 2)
    elapsed = time.perf_counter() - start
    ok = good.ok and not bad.ok and elapsed < 5
    record(6, ok, f"(C*)^2 passes after {good.data['checked']} products; violation fixture flagged: {bad.details}",
           elapsed)
    assert ok


def test_criterion_07_discriminant_loci():
    conic = discriminant(LGSpec(2, (2, 1)), "two_component")
    cubic = discriminant(LGSpec(3, (3, 1)), "two_component")
    got = (conic.render(), cubic.render(), line_counts(conic, "anti_diagonal"),
           line_counts(conic, {"kind": "coordinate", "vary": 1}))
    want = ("{a^2*b = 4} ∪ {b = 0}", "{a^3*b = 27} ∪ {b = 0}", 3, 2)
    record(7, got == want, f"loci and line counts {got}")
    assert got == want


def test_criterion_08_gluing():
    sc = _load("two_potential.json")
    res = gluing_check(sc.data["gluing"]["Y"])
    record(8, res.ok, f"H^k(Y_sm, Y_12) = H^k(Y_1, Y_12) + H^k(Y_2, Y_12): {sc.data['gluing']['Y']}")
    assert res.ok


def test_criterion_09_kkp_propagation():
    sc = _load("kkp_hodge_tate.json")
    tables = sc.data["tables"]
    derived = hodge_tate_kkp(tables["limiting"], [("cstar", tables["cstar"]), ("torus2", tables["torus2"])])
    merged = dict(sc.data["lg_tables"]["Y"], **derived)
    passes = kkp_check(merged, ("f(Y,h)", "h(Y,h)")).ok and kkp_check(merged, ("f(Y,w)", "h(Y,h)")).ok
    refused = scenario.run(_load("failures/elliptic_refusal.json")).outcomes[0].status == "refused"
    ok = passes and refused
    record(9, ok, f"derived h(Y,h) = {derived['h(Y,h)']} matches f tables: {passes}; elliptic witness refused: {refused}")
    assert ok


def _loaded_rows(sc):
    for sc_strata in sc.data["strata"].values():
        for w in range(0, 2 * sc_strata.ambient_dim + 1):
            yield weight_e1(sc_strata, w), True
    for nc in sc.data["nc"].values():
        for q in range(0, 2 * nc.ambient_dim + 1):
            yield nc_row(nc, q), True
    for sp in sc.data["simplicial"].values():
        for level in sp.levels:
            for w in range(0, 2 * level.ambient_dim + 1):
                yield weight_e1(level, w), True
        for q in range(0, 2 * sp.ambient_dim + 2 * len(sp.levels) + 1):
            dc = simplicial_double_complex(sp, q)
            if dc.nodes:
                check_double_complex(dc)
                yield totalize(dc), True
    for fc in sc.data["flags"].values():
        if fc.cech is not None:
            for k in fc.cech_degrees():
                yield fc.cech_row(k), False


def test_criterion_10_property_suites():
    start = time.perf_counter()
    problems = []
    rows = 0
    loaded = {rel: _load(rel) for rel in SHIPPED}
    tables = []
    for rel, sc in loaded.items():
        for row, blockwise in _loaded_rows(sc):
            rows += 1
            if not validate_complex(row, blockwise).ok:
                problems.append(f"{rel}: d^2 != 0")
                continue
            h = [sum(b.values()) for b in page_homology(row, blockwise)]
            if euler(h) != euler([n.dim for n in row.nodes]):
                problems.append(f"{rel}: Euler characteristic changed")
        for fc in sc.data["flags"].values():
            res = filtration_length_check(fc)
            if not res.ok:
                problems.append(f"{rel}: {res.details}")
        tables += [t for t in sc.data["tables"].values() if hasattr(t, "euler")]
        for fmt in ("text", "json"):
            first = scenario.emit(scenario.run(sc), fmt).encode()
            if first != scenario.emit(scenario.run(_load(rel)), fmt).encode():
                problems.append(f"{rel}: {fmt} report not byte-identical")
    for t in tables:
        for m in range(-2, 3):
            if tate_twist(tate_twist(t, m), -m).dims != t.dims:
                problems.append("Tate twist is not an involution")
    small = [t for t in tables if t.ambient_dim <= 2][:6] + [torus_table(1)]
    for a, b in itertools.product(small, repeat=2):
        if kunneth(a, b).dims != kunneth(b, a).dims:
            problems.append("Kunneth not commutative")
    for a, b, c in itertools.product(small[:4], repeat=3):
        if kunneth(kunneth(a, b), c).dims != kunneth(a, kunneth(b, c)).dims:
            problems.append("Kunneth not associative")
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 30
    record(10, ok, f"{rows} loaded complexes, {len(tables)} tables, {len(loaded)} scenarios checked; "
                   f"problems {problems[:3]}", elapsed)
    assert ok


STRETCH = os.environ.get("PWMIRROR_STRETCH") == "1"


@pytest.mark.skipif(not STRETCH, reason="gated on the derived del Pezzo LG fixture; set PWMIRROR_STRETCH=1")
def test_criterion_11_del_pezzo_mirror():
    sc = _load("stretch/del_pezzo_mirror.json")
    report = scenario.run(sc)
    failing = [o.name for o in report.outcomes if o.status != "pass"]
    record(11, not failing, f"del Pezzo mirror residuals vanish; failing pairs {failing}")
    assert not failing


if not STRETCH:
    from _acceptance import LINES

    LINES.append("[SKIP] criterion 11: gated stretch criterion (set PWMIRROR_STRETCH=1 to run)")


if __name__ == "__main__":
    raise SystemExit(pytest.main([str(Path(__file__)), "-q", "-s"]))
