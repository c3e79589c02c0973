"""Scenario files: loading, validation, task execution and report rendering.

A scenario is one JSON document::

    {"name": ..., "n": ..., "N": ...,
     "data": {"tables": {...}, "strata": {...}, "flags": {...}, ...},
     "tasks": [{"name": ..., "op": ..., ...}, ...]}

Every data block is parsed and validated when the file is loaded, so a
scenario that loads cleanly only fails at run time through its checks.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Mapping

from . import hodge, lg, mirror, perverse, weight
from .checks import CheckResult
from .hodge import HypothesisFailed, MixedHodgeTable, PerverseHodgeTable, PWTable, TableError
from .linalg import QMatrix, parse_rational
from .polyalg import LaurentPoly, render
from .specseq import GradedSpace, check_double_complex

STATUSES = ("pass", "fail", "refused")


class ParseError(ValueError):
    pass


class ValidationError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


# -- parsing helpers ------------------------------------------------------


def _need(obj: Mapping, key: str, path: str):
    if not isinstance(obj, Mapping):
        raise ValidationError(path, "expected an object")
    if key not in obj:
        raise ValidationError(f"{path}.{key}", "missing")
    return obj[key]


def _int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(path, f"expected an integer, got {value!r}")
    return value


def _matrix(rows, path: str, shape: tuple[int, int] | None = None) -> QMatrix:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise ValidationError(path, "matrix must be a list of rows")
    try:
        ncols = len(rows[0]) if rows else (shape[1] if shape else 0)
        m = QMatrix.from_rows(rows, ncols)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ValidationError(path, f"bad matrix: {exc}") from None
    if shape is not None and m.shape != shape:
        # an empty row list stands for any matrix with zero rows
        if not (m.nrows == 0 and shape[0] == 0):
            raise ValidationError(path, f"matrix has shape {m.shape}, declared dims need {shape}")
        m = QMatrix.zeros(*shape)
    return m


def _index_set(value, path: str) -> tuple[int, ...]:
    if not isinstance(value, list):
        raise ValidationError(path, "index set must be an array")
    out = tuple(_int(v, f"{path}[{i}]") for i, v in enumerate(value))
    if list(out) != sorted(set(out)):
        raise ValidationError(path, "index set must be sorted without repeats")
    return out


def _strata_records(records, path: str) -> dict:
    """{index_set, degree, hodge_type, dim, labels} -> {I: {degree: GradedSpace}}."""
    if not isinstance(records, list):
        raise ValidationError(path, "expected a list of stratum records")
    acc: dict = {}
    for i, rec in enumerate(records):
        rp = f"{path}[{i}]"
        I = _index_set(_need(rec, "index_set", rp), f"{rp}.index_set")
        deg = _int(_need(rec, "degree", rp), f"{rp}.degree")
        ht = _need(rec, "hodge_type", rp)
        if not isinstance(ht, list) or len(ht) != 2:
            raise ValidationError(f"{rp}.hodge_type", "expected [p, q]")
        ht = (_int(ht[0], f"{rp}.hodge_type[0]"), _int(ht[1], f"{rp}.hodge_type[1]"))
        if ht[0] + ht[1] != deg:
            raise ValidationError(f"{rp}.hodge_type", f"type {list(ht)} does not have weight {deg}")
        dim = _int(_need(rec, "dim", rp), f"{rp}.dim")
        tag = "X" if not I else "D" + ".".join(map(str, I))
        labels = rec.get("labels") or [f"{tag}.h{deg}.{ht[0]}{ht[1]}.{j}" for j in range(dim)]
        if len(labels) != dim:
            raise ValidationError(f"{rp}.labels", f"{len(labels)} labels for dim {dim}")
        acc.setdefault(I, {}).setdefault(deg, {}).setdefault(ht, []).extend(labels)
    return {I: {d: GradedSpace(blocks) for d, blocks in degs.items()} for I, degs in acc.items()}


def _strata(obj, path: str) -> weight.StrataComplex:
    n = _int(_need(obj, "n", path), f"{path}.n")
    N = _int(_need(obj, "N", path), f"{path}.N")
    strata = _strata_records(_need(obj, "strata", path), f"{path}.strata")
    gysin = {}
    for i, rec in enumerate(obj.get("gysin", [])):
        rp = f"{path}.gysin[{i}]"
        I = _index_set(_need(rec, "from_set", rp), f"{rp}.from_set")
        k = _int(_need(rec, "removed_index", rp), f"{rp}.removed_index")
        deg = _int(_need(rec, "degree", rp), f"{rp}.degree")
        J = tuple(x for x in I if x != k)
        src = strata.get(I, {}).get(deg, GradedSpace())
        dst = strata.get(J, {}).get(deg + 2, GradedSpace())
        gysin[(I, k, deg)] = _matrix(_need(rec, "matrix", rp), f"{rp}.matrix", (dst.dim, src.dim))
    try:
        return weight.StrataComplex(n, N, strata, gysin, obj.get("global_sign", 1))
    except (ValueError, KeyError) as exc:
        raise ValidationError(path, f"{type(exc).__name__}: {exc}") from None


def _nc(obj, path: str) -> weight.SimplicialStrata:
    n = _int(_need(obj, "n", path), f"{path}.n")
    N = _int(_need(obj, "N", path), f"{path}.N")
    strata = _strata_records(_need(obj, "strata", path), f"{path}.strata")
    res = {}
    for i, rec in enumerate(obj.get("restrictions", [])):
        rp = f"{path}.restrictions[{i}]"
        I = _index_set(_need(rec, "index_set", rp), f"{rp}.index_set")
        k = _int(_need(rec, "removed_index", rp), f"{rp}.removed_index")
        deg = _int(_need(rec, "degree", rp), f"{rp}.degree")
        J = tuple(x for x in I if x != k)
        src = strata.get(J, {}).get(deg, GradedSpace())
        dst = strata.get(I, {}).get(deg, GradedSpace())
        res[(I, k, deg)] = _matrix(_need(rec, "matrix", rp), f"{rp}.matrix", (dst.dim, src.dim))
    try:
        return weight.SimplicialStrata(n, N, strata, res)
    except (ValueError, KeyError) as exc:
        raise ValidationError(path, f"{type(exc).__name__}: {exc}") from None


def _simplicial(obj, path: str) -> weight.SimplicialPairs:
    levels = [_strata(lv, f"{path}.levels[{i}]") for i, lv in enumerate(_need(obj, "levels", path))]
    faces = {}
    for i, rec in enumerate(obj.get("faces", [])):
        rp = f"{path}.faces[{i}]"
        r = _int(_need(rec, "level", rp), f"{rp}.level")
        face = _int(_need(rec, "face", rp), f"{rp}.face")
        m = _int(_need(rec, "depth", rp), f"{rp}.depth")
        deg = _int(_need(rec, "degree", rp), f"{rp}.degree")
        if not 0 <= r < len(levels) - 1 or not 0 <= face <= r + 1:
            raise ValidationError(rp, f"face {face} of level {r} does not exist")
        src = sum(levels[r].space(I, deg).dim for I in levels[r].depth(m))
        dst = sum(levels[r + 1].space(I, deg).dim for I in levels[r + 1].depth(m))
        faces[(r, face, m, deg)] = _matrix(_need(rec, "matrix", rp), f"{rp}.matrix", (dst, src))
    sp = weight.SimplicialPairs(levels, faces)
    try:
        for q in range(0, 2 * sp.ambient_dim + 2 * len(levels) + 1):
            dc = weight.simplicial_double_complex(sp, q)
            if dc.nodes:
                check_double_complex(dc)
    except ValueError as exc:
        raise ValidationError(path, f"{type(exc).__name__}: {exc}") from None
    return sp


def _flag(obj, path: str) -> perverse.FlagComplex:
    n = _int(_need(obj, "n", path), f"{path}.n")
    N = _int(_need(obj, "N", path), f"{path}.N")
    betti: dict = {}
    restrictions = None
    if "flag" in obj:
        restrictions = {}
        records = obj["flag"]
        for i, rec in enumerate(records):
            rp = f"{path}.flag[{i}]"
            if _int(_need(rec, "level", rp), f"{rp}.level") == 0:
                betti[_int(_need(rec, "degree", rp), f"{rp}.degree")] = _int(_need(rec, "dim", rp), f"{rp}.dim")
        for i, rec in enumerate(records):
            rp = f"{path}.flag[{i}]"
            l, k = rec["level"], rec["degree"]
            dim = _int(_need(rec, "dim", rp), f"{rp}.dim")
            if l < 0 or l > N:
                raise ValidationError(f"{rp}.level", f"level {l} outside 0..{N}")
            if l == 0:
                continue
            restrictions[(k, l)] = _matrix(
                _need(rec, "restriction_matrix", rp), f"{rp}.restriction_matrix", (dim, betti.get(k, 0))
            )
    elif "betti" in obj:
        betti = {_int(r["degree"], f"{path}.betti"): _int(r["dim"], f"{path}.betti") for r in obj["betti"]}
    cech = None
    if "cech" in obj:
        dims: dict = {}
        for i, rec in enumerate(obj["cech"]):
            rp = f"{path}.cech[{i}]"
            k = _int(_need(rec, "degree", rp), f"{rp}.degree")
            l = _int(_need(rec, "level", rp), f"{rp}.level")
            if not 0 <= l <= N:
                raise ValidationError(f"{rp}.level", f"level {l} outside 0..{N}")
            dims.setdefault(k, {})[l] = _int(_need(rec, "dim", rp), f"{rp}.dim")
        conn: dict = {}
        for i, rec in enumerate(obj["cech"]):
            rp = f"{path}.cech[{i}]"
            k, l = rec["degree"], rec["level"]
            if "connecting_matrix" in rec:
                if l == 0:
                    raise ValidationError(f"{rp}.connecting_matrix", "level 0 has no outgoing connecting map")
                shape = (dims[k].get(l - 1, 0), dims[k][l])
                conn.setdefault(k, {})[l] = _matrix(rec["connecting_matrix"], f"{rp}.connecting_matrix", shape)
        cech = {k: perverse.CechRow(d, conn.get(k, {})) for k, d in dims.items()}
    if restrictions is None and cech is None:
        raise ValidationError(path, "a flag block needs 'flag' records, 'cech' records, or both")
    try:
        return perverse.FlagComplex(n, N, betti, restrictions, cech)
    except ValueError as exc:
        raise ValidationError(path, str(exc)) from None


def _ring(obj, path: str) -> perverse.CupRing:
    basis = {}
    for i, rec in enumerate(_need(obj, "basis", path)):
        rp = f"{path}.basis[{i}]"
        basis[_int(_need(rec, "degree", rp), f"{rp}.degree")] = list(_need(rec, "labels", rp))
    products: dict = {}
    for i, rec in enumerate(obj.get("products", [])):
        rp = f"{path}.products[{i}]"
        (k1, a), (k2, b) = _need(rec, "left", rp), _need(rec, "right", rp)
        products[(k1, a, k2, b)] = [_parse_q(v, f"{rp}.value") for v in _need(rec, "value", rp)]
    # fill in swapped products by graded commutativity
    for (k1, a, k2, b), vec in list(products.items()):
        sign = (-1) ** (k1 * k2)
        products.setdefault((k2, b, k1, a), [sign * v for v in vec])
    spans: dict = {}
    for i, rec in enumerate(obj.get("filtration_spans", [])):
        rp = f"{path}.filtration_spans[{i}]"
        k = _int(_need(rec, "degree", rp), f"{rp}.degree")
        b = _int(_need(rec, "level", rp), f"{rp}.level")
        spans[(k, b)] = [[_parse_q(v, rp) for v in vec] for vec in _need(rec, "vectors", rp)]
    try:
        return perverse.CupRing(basis, products, spans)
    except ValueError as exc:
        raise ValidationError(path, str(exc)) from None


def _parse_q(v, path):
    try:
        return parse_rational(v)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ValidationError(path, f"not an exact rational: {v!r}") from None


def _table(obj, path: str, strict: bool):
    kind = _need(obj, "kind", path)
    n = _int(_need(obj, "n", path), f"{path}.n")
    mode = obj.get("mode", "smooth-open")
    if strict and mode == "raw":
        raise ValidationError(f"{path}.mode", "raw tables are rejected under strict validation")
    entries = _need(obj, "entries", path)
    try:
        if kind == "mixed":
            return MixedHodgeTable.from_records(n, entries, mode)
        if kind == "pw":
            return PWTable.from_records(n, entries, mode)
        if kind == "perverse":
            return PerverseHodgeTable.from_records(n, entries)
    except (TableError, KeyError, TypeError) as exc:
        raise ValidationError(path, f"{type(exc).__name__}: {exc}") from None
    raise ValidationError(f"{path}.kind", f"unknown table kind {kind!r}")


def _lg_tables(obj, path: str) -> dict:
    out = {}
    for i, rec in enumerate(_need(obj, "tables", path)):
        rp = f"{path}.tables[{i}]"
        flavor = _need(rec, "flavor", rp)
        if flavor not in lg.FLAVORS:
            raise ValidationError(f"{rp}.flavor", f"unknown flavor {flavor!r}")
        entries = {}
        for j, e in enumerate(_need(rec, "entries", rp)):
            ep = f"{rp}.entries[{j}]"
            key = (_int(_need(e, "p", ep), ep), _int(_need(e, "q", ep), ep))
            entries[key] = entries.get(key, 0) + _int(_need(e, "dim", ep), ep)
        out[flavor] = {k: v for k, v in sorted(entries.items()) if v}
    return out


def _gluing(obj, path: str) -> dict:
    out: dict = {"sm": {}, "1": {}, "2": {}}
    for i, rec in enumerate(obj):
        rp = f"{path}[{i}]"
        space = _need(rec, "space", rp)
        if space not in out:
            raise ValidationError(f"{rp}.space", f"space must be one of {sorted(out)}")
        out[space][_int(_need(rec, "degree", rp), rp)] = _int(_need(rec, "dim", rp), rp)
    return out


def _lg_spec(obj, path: str) -> lg.LGSpec:
    try:
        return lg.LGSpec(_int(_need(obj, "n", path), f"{path}.n"), tuple(_need(obj, "degrees", path)))
    except lg.InvalidSpec as exc:
        raise ValidationError(path, str(exc)) from None


BLOCK_PARSERS: dict[str, Callable] = {
    "strata": _strata,
    "nc": _nc,
    "simplicial": _simplicial,
    "flags": _flag,
    "rings": _ring,
    "lg_specs": _lg_spec,
    "lg_tables": _lg_tables,
    "gluing": _gluing,
}


# -- tasks ----------------------------------------------------------------


@dataclass
class Task:
    name: str
    op: str
    args: dict


@dataclass
class Scenario:
    name: str
    meta: dict
    data: dict
    tasks: list[Task]
    raw: dict = field(repr=False, default_factory=dict)


def _ref(args: Mapping, key: str, block: str, data: Mapping, path: str):
    ref = args.get(key)
    if ref is None:
        raise ValidationError(f"{path}.{key}", "missing reference")
    if ref not in data.get(block, {}):
        raise ValidationError(f"{path}.{key}", f"unknown {block} entry {ref!r}")
    return ref


# op name -> list of (argument, data block) references it must resolve
TASK_REFS: dict[str, list[tuple[str, str]]] = {
    "pw_polynomial": [("table", "tables")],
    "assemble_pw": [("table", "tables")],
    "hodge_tate_pw": [("table", "tables")],
    "mirror": [("pair", "mirror_pairs")],
    "one_sided": [("u", "tables"), ("v", "tables")],
    "graded_correspondence": [("u", "tables"), ("y", "flags")],
    "weight_graded": [("strata", "strata")],
    "nc_cohomology": [("nc", "nc")],
    "simplicial_weight": [("simplicial", "simplicial")],
    "perverse_e2": [("flag", "flags")],
    "oracle_compare": [("flag", "flags")],
    "filtration_length": [("flag", "flags")],
    "de_rham": [("flag", "flags")],
    "multiplicativity": [("ring", "rings")],
    "discriminant": [("spec", "lg_specs")],
    "line_counts": [("spec", "lg_specs")],
    "gluing": [("gluing", "gluing")],
    "kkp": [("tables", "lg_tables")],
    "hodge_tate_kkp": [("limiting", "tables")],
}

COMMAND_OPS: dict[str, set[str]] = {
    "pw eval": {"pw_polynomial", "assemble_pw", "hodge_tate_pw"},
    "pw mirror": {"mirror", "one_sided", "graded_correspondence"},
    "weight e2": {"weight_graded", "nc_cohomology", "simplicial_weight"},
    "perverse e2": {"perverse_e2"},
    "perverse oracle": {"oracle_compare", "filtration_length", "de_rham", "multiplicativity"},
    "lg discriminant": {"discriminant", "line_counts"},
    "lg gluing": {"gluing"},
    "lg kkp": {"kkp", "hodge_tate_kkp"},
    "check all": set(TASK_REFS),
}


def _mirror_pair(obj, path: str, data: Mapping) -> dict:
    mode = obj.get("mode", "full")
    if mode not in ("full", "one_sided", "graded"):
        raise ValidationError(f"{path}.mode", f"unknown mode {mode!r}")
    out = {"n": _int(_need(obj, "n", path), f"{path}.n"), "mode": mode}
    for side in ("u_side", "v_side"):
        ref = _need(obj, side, path)
        block = "flags" if (mode == "graded" and side == "v_side") else "tables"
        if ref not in data[block]:
            raise ValidationError(f"{path}.{side}", f"unknown {block} entry {ref!r}")
        out[side] = ref
    if mode == "graded":
        out["N"] = _int(obj.get("N", data["flags"][out["v_side"]].N), f"{path}.N")
    return out


def loads(text: str, strict: bool = False, source: str = "<string>") -> Scenario:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: {exc}") from None
    if not isinstance(doc, dict):
        raise ValidationError("$", "scenario must be a JSON object")
    name = doc.get("name", Path(source).stem)
    raw_data = doc.get("data", {})
    if not isinstance(raw_data, dict):
        raise ValidationError("$.data", "expected an object")
    data: dict = {}
    data["tables"] = {k: _table(v, f"$.data.tables.{k}", strict) for k, v in raw_data.get("tables", {}).items()}
    for block, parser in BLOCK_PARSERS.items():
        data[block] = {k: parser(v, f"$.data.{block}.{k}") for k, v in raw_data.get(block, {}).items()}
    data["mirror_pairs"] = {
        k: _mirror_pair(v, f"$.data.mirror_pairs.{k}", data)
        for k, v in raw_data.get("mirror_pairs", {}).items()
    }
    unknown = set(raw_data) - set(data)
    if unknown:
        raise ValidationError("$.data", f"unknown data blocks {sorted(unknown)}")
    tasks = []
    seen = set()
    for i, t in enumerate(doc.get("tasks", [])):
        path = f"$.tasks[{i}]"
        tname = _need(t, "name", path)
        op = _need(t, "op", path)
        if op not in TASK_REFS:
            raise ValidationError(f"{path}.op", f"unknown operation {op!r}")
        if tname in seen:
            raise ValidationError(f"{path}.name", f"duplicate task name {tname!r}")
        seen.add(tname)
        for key, block in TASK_REFS[op]:
            _ref(t, key, block, data, path)
        for key in ("witnesses",):
            for j, ref in enumerate(t.get(key, [])):
                if ref not in data["tables"]:
                    raise ValidationError(f"{path}.{key}[{j}]", f"unknown table {ref!r}")
        tasks.append(Task(tname, op, {k: v for k, v in t.items() if k not in ("name", "op")}))
    meta = {k: doc[k] for k in ("n", "N", "description") if k in doc}
    return Scenario(name, meta, data, tasks, doc)


def load(path: str | Path, strict: bool = False) -> Scenario:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{p}: {exc.strerror}") from None
    return loads(text, strict=strict, source=str(p))


# -- execution ------------------------------------------------------------


@dataclass
class TaskOutcome:
    name: str
    op: str
    status: str
    summary: str
    details: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    result: Any = None
    elapsed_ms: float | None = None

    def to_dict(self, timings: bool = False) -> dict:
        d = {
            "name": self.name,
            "op": self.op,
            "status": self.status,
            "summary": self.summary,
            "details": self.details,
            "warnings": self.warnings,
            "result": self.result,
        }
        if timings and self.elapsed_ms is not None:
            d["elapsed_ms"] = round(self.elapsed_ms, 3)
        return d


@dataclass
class Report:
    scenario: str
    outcomes: list[TaskOutcome] = field(default_factory=list)

    @property
    def counts(self) -> dict[str, int]:
        return {s: sum(o.status == s for o in self.outcomes) for s in STATUSES}

    @property
    def ok(self) -> bool:
        return all(o.status == "pass" for o in self.outcomes)

    def to_dict(self, timings: bool = False) -> dict:
        return {
            "scenario": self.scenario,
            "summary": self.counts,
            "tasks": [o.to_dict(timings) for o in self.outcomes],
        }


def mixed_records(t: MixedHodgeTable) -> list:
    return [[s, p, w, d] for (s, p, w), d in t.dims.items()]


def _graded_records(g: Mapping[tuple[int, int], int]) -> list:
    return [[s, rho, d] for (s, rho), d in sorted(g.items())]


def _rule(spec):
    if isinstance(spec, Mapping):
        if "level" in spec:
            return hodge.level_rule(int(spec["level"]))
        if "offset" in spec:
            return hodge.offset_rule(int(spec["offset"]))
        if "cells" in spec:
            cells = {}
            for rec in spec["cells"]:
                cells.setdefault((rec["s"], rec["p"], rec["w"]), {})[int(rec["r"])] = int(rec["dim"])
            return hodge.explicit_rule(cells)
    raise ValueError(f"unknown perverse rule {spec!r}")


def _expect_table(args: Mapping, data: Mapping, got: MixedHodgeTable) -> list[str]:
    problems = []
    if "expect" in args:
        ref = args["expect"]
        want = data["tables"][ref] if isinstance(ref, str) else MixedHodgeTable.from_records(
            got.ambient_dim, ref, got.mode
        )
        if want.dims != got.dims:
            problems.append(f"table differs from expected: got {mixed_records(got)}, want {mixed_records(want)}")
    if "expect_kunneth" in args:
        spec = args["expect_kunneth"]
        base = data["tables"][spec["table"]]
        want = hodge.point_table()
        for _ in range(int(spec["power"])):
            want = hodge.kunneth(want, base)
        if want.dims != got.dims:
            problems.append(
                f"table differs from Kunneth power {spec['power']} of {spec['table']}: got {mixed_records(got)},"
                f" want {mixed_records(want)}"
            )
    return problems


def _check(res: CheckResult, summary_ok: str, summary_fail: str, result=None) -> tuple:
    return ("pass" if res.ok else "fail", summary_ok if res.ok else summary_fail, res.details, res.warnings, result)


def _run_task(task: Task, data: Mapping) -> tuple[str, str, list, list, Any]:
    a = task.args
    op = task.op
    if op == "pw_polynomial":
        poly = hodge.pw_polynomial(data["tables"][a["table"]])
        return _poly_outcome(poly, a)
    if op in ("assemble_pw", "hodge_tate_pw"):
        t = data["tables"][a["table"]]
        rule = _rule(a.get("rule"))
        table = hodge.assemble_pw(t, rule) if op == "assemble_pw" else mirror.hodge_tate_pw(t, rule)
        poly = hodge.pw_polynomial(table)
        status, summary, details, warnings, result = _poly_outcome(poly, a)
        result = {"polynomial": render(poly), "table": [[*k, d] for k, d in table.dims.items()]}
        return status, summary, details, warnings, result
    if op == "mirror":
        pair = data["mirror_pairs"][a["pair"]]
        U = data["tables"][pair["u_side"]]
        if pair["mode"] == "graded":
            graded = perverse.flag_filtration(data["flags"][pair["v_side"]]).graded()
            res = mirror.graded_correspondence_check(U, graded, pair["n"], pair["N"])
            return _check(res, "graded pieces correspond", "graded correspondence fails",
                          {"confidence": "graded", "y_graded": _graded_records(graded)})
        V = data["tables"][pair["v_side"]]
        if pair["mode"] == "one_sided":
            res = mirror.one_sided_check(U, V, pair["n"])
            res.warnings.append("only marginal tables supplied: one-sided identity checked, reduced confidence")
            return _check(res, "one-sided identity holds", "one-sided identity fails", {"confidence": "reduced"})
        residual = mirror.check_mirror_pw(mirror.MirrorPair(pair["n"], U, V))
        lhs = mirror.mirror_transform(hodge.pw_polynomial(U), pair["n"])
        result = {"transformed": render(lhs), "residual": render(residual), "confidence": "full"}
        if residual.is_zero():
            return "pass", "residual 0", [], [], result
        return "fail", f"residual {render(residual)}", [f"residual {render(residual)}"], [], result
    if op == "one_sided":
        res = mirror.one_sided_check(data["tables"][a["u"]], data["tables"][a["v"]], a.get("n"))
        return _check(res, f"{res.data.get('cells', 0)} cells agree", "mismatch", None)
    if op == "graded_correspondence":
        fc = data["flags"][a["y"]]
        graded = perverse.flag_filtration(fc).graded()
        N = int(a.get("N", fc.N))
        res = mirror.graded_correspondence_check(data["tables"][a["u"]], graded, int(a.get("n", fc.ambient_dim)), N)
        return _check(res, "graded pieces correspond", "graded correspondence fails", _graded_records(graded))
    if op == "weight_graded":
        t = weight.weight_graded(data["strata"][a["strata"]])
        return _table_outcome(t, a, data)
    if op == "nc_cohomology":
        return _table_outcome(weight.nc_cohomology(data["nc"][a["nc"]]), a, data)
    if op == "simplicial_weight":
        return _table_outcome(weight.simplicial_weight_ss(data["simplicial"][a["simplicial"]]), a, data)
    if op == "perverse_e2":
        fc = data["flags"][a["flag"]]
        graded = perverse.cech_graded(fc)
        problems = []
        if "expect" in a:
            want = {(r[0], r[1]): r[2] for r in a["expect"]}
            if want != graded:
                problems.append(f"graded dims {_graded_records(graded)} differ from expected {_graded_records(want)}")
        return ("pass" if not problems else "fail", "Gr^P dims computed", problems, [], _graded_records(graded))
    if op == "oracle_compare":
        res = perverse.oracle_compare(data["flags"][a["flag"]], a.get("convention", "calibrated"))
        return _check(res, "flag and Čech dims agree", "flag and Čech dims disagree", _graded_records(res.data.get("flag", {})))
    if op == "filtration_length":
        res = perverse.filtration_length_check(data["flags"][a["flag"]], a.get("convention", "calibrated"))
        return _check(res, "length bounds hold", "length bounds violated")
    if op == "de_rham":
        fc = data["flags"][a["flag"]]
        dims = {int(k): {int(b): int(d) for b, d in v.items()} for k, v in a["image_dims"].items()}
        res = perverse.de_rham_relabel(dims, perverse.flag_filtration(fc))
        return _check(res, "G^f equals P", "G^f differs from P")
    if op == "multiplicativity":
        ring = data["rings"][a["ring"]]
        res = perverse.multiplicativity_check(ring, int(a["N"]))
        return _check(res, f"{res.data.get('checked', 0)} products checked", "multiplicativity violated",
                      res.data.get("violation"))
    if op == "discriminant":
        locus = lg.discriminant(data["lg_specs"][a["spec"]], a.get("variant", "general"))
        text = locus.render()
        problems = [] if a.get("expect", text) == text else [f"got {text}, expected {a['expect']}"]
        return ("pass" if not problems else "fail", text, problems, list(locus.notes), text)
    if op == "line_counts":
        locus = lg.discriminant(data["lg_specs"][a["spec"]], a.get("variant", "general"))
        count = lg.line_counts(locus, a["line"])
        problems = [] if a.get("expect", count) == count else [f"got {count}, expected {a['expect']}"]
        return ("pass" if not problems else "fail", f"{count} points", problems, [], count)
    if op == "gluing":
        res = lg.gluing_check(data["gluing"][a["gluing"]])
        return _check(res, "relative dims add up", "gluing dims disagree")
    if op == "kkp":
        res = lg.kkp_check(data["lg_tables"][a["tables"]], a["pair"])
        return _check(res, "tables agree", "tables differ")
    if op == "hodge_tate_kkp":
        limiting = data["tables"][a["limiting"]]
        witnesses = [(w, data["tables"][w]) for w in a.get("witnesses", [])]
        flavor = a.get("flavor", "h(Y,h)")
        try:
            derived = lg.hodge_tate_kkp(limiting, witnesses, flavor)
        except HypothesisFailed as exc:
            return "refused", str(exc), [str(exc)], [], {"witness": exc.witness, "cell": list(exc.cell or ())}
        tables = dict(data["lg_tables"].get(a.get("compare_tables"), {}))
        tables.update(derived)
        result = {flavor: [[p, q, d] for (p, q), d in derived[flavor].items()]}
        if "compare_with" in a:
            res = lg.kkp_check(tables, (a["compare_with"], flavor))
            return _check(res, f"derived {flavor} matches {a['compare_with']}", "derived tables differ", result)
        return "pass", f"derived {flavor}", [], [], result
    raise ValueError(f"unknown operation {op!r}")


def _poly_outcome(poly: LaurentPoly, a: Mapping) -> tuple:
    text = render(poly)
    problems = []
    if "expect" in a:
        want = LaurentPoly.parse(a["expect"])
        if want != poly:
            problems.append(f"got {text}, expected {render(want)} ({a['expect']})")
    summary = text if "expect" not in a else f"{text} = {a['expect']}"
    return ("pass" if not problems else "fail", summary, problems, [], text)


def _table_outcome(t: MixedHodgeTable, a: Mapping, data: Mapping) -> tuple:
    problems = _expect_table(a, data, t)
    summary = ", ".join(f"H^{s}: {d}" for s, d in sorted(t.degree_dims().items())) or "zero"
    return ("pass" if not problems else "fail", summary, problems, [], mixed_records(t))


def run(s: Scenario, ops: set[str] | None = None, only: str | None = None) -> Report:
    report = Report(s.name)
    for task in s.tasks:
        if ops is not None and task.op not in ops:
            continue
        if only is not None and task.name != only:
            continue
        start = time.perf_counter()
        try:
            status, summary, details, warnings, result = _run_task(task, s.data)
        except HypothesisFailed as exc:
            status, summary, details, warnings, result = "refused", str(exc), [str(exc)], [], None
        except Exception as exc:  # per-task isolation
            msg = f"{type(exc).__name__}: {exc}"
            status, summary, details, warnings, result = "fail", msg, [msg], [], None
        elapsed = (time.perf_counter() - start) * 1000
        report.outcomes.append(
            TaskOutcome(task.name, task.op, status, summary, list(details), list(warnings), result, elapsed)
        )
    return report


def emit(r: Report, fmt: str = "text", timings: bool = False) -> str:
    if fmt == "json":
        return json.dumps(r.to_dict(timings), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    c = r.counts
    lines = [f"scenario: {r.scenario}", f"tasks: {len(r.outcomes)}  pass: {c['pass']}  fail: {c['fail']}  refused: {c['refused']}"]
    for o in r.outcomes:
        tail = f" ({o.elapsed_ms:.1f} ms)" if timings and o.elapsed_ms is not None else ""
        lines.append(f"[{o.status.upper()}] {o.name} ({o.op}): {o.summary}{tail}")
        lines.extend(f"    - {d}" for d in o.details)
        lines.extend(f"    ! {w}" for w in o.warnings)
    return "\n".join(lines) + "\n"

