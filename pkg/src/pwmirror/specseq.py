"""Bounded complexes of graded rational spaces and their E2 dimensions.

Only two pages are ever in play: E1 is supplied and E2 is returned.  A node
is a ``GradedSpace`` whose basis is split into blocks keyed by a Hodge
bidegree (or ``None`` when no Hodge data is carried).  Differentials are
matrices in the concatenated block basis, blocks taken in sorted order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .linalg import DimensionMismatch, NotAComplex, QMatrix, matmul, rank

Bidegree = "tuple[int, int] | None"


class SignRuleViolation(ValueError):
    pass


class BlockViolation(ValueError):
    """A differential mixes Hodge bidegrees."""


def _block_key(b):
    return (0,) if b is None else (1, *b)


@dataclass(frozen=True)
class GradedSpace:
    blocks: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for key, labels in sorted(self.blocks.items(), key=lambda kv: _block_key(kv[0])):
            labels = tuple(labels)
            if len(set(labels)) != len(labels):
                raise ValueError(f"duplicate basis labels in block {key}")
            if labels:
                clean[None if key is None else tuple(key)] = labels
        object.__setattr__(self, "blocks", clean)

    @classmethod
    def plain(cls, dim: int, prefix: str = "e") -> "GradedSpace":
        return cls({None: tuple(f"{prefix}{i}" for i in range(dim))})

    @property
    def dim(self) -> int:
        return sum(len(v) for v in self.blocks.values())

    def labels(self) -> list[str]:
        return [x for v in self.blocks.values() for x in v]

    def offsets(self) -> dict:
        out, off = {}, 0
        for key, labels in self.blocks.items():
            out[key] = (off, off + len(labels))
            off += len(labels)
        return out

    def block_dims(self) -> dict:
        return {k: len(v) for k, v in self.blocks.items()}

    def __hash__(self):
        return hash(tuple(self.blocks.items()))


@dataclass(frozen=True)
class ComplexRow:
    nodes: tuple
    differentials: tuple
    start: int = 0

    def __init__(self, nodes: Sequence[GradedSpace], differentials: Sequence[QMatrix], start: int = 0):
        object.__setattr__(self, "nodes", tuple(nodes))
        object.__setattr__(self, "differentials", tuple(differentials))
        object.__setattr__(self, "start", start)
        if len(self.differentials) != max(len(self.nodes) - 1, 0):
            raise DimensionMismatch(
                f"{len(self.nodes)} nodes need {max(len(self.nodes) - 1, 0)} differentials, got {len(self.differentials)}"
            )


@dataclass
class ValidationReport:
    ok: bool
    problems: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def _submatrix(m: QMatrix, rows: tuple[int, int], cols: tuple[int, int]) -> QMatrix:
    r0, r1 = rows
    c0, c1 = cols
    ents = {(i - r0, j - c0): v for (i, j), v in m.entries.items() if r0 <= i < r1 and c0 <= j < c1}
    return QMatrix(r1 - r0, c1 - c0, ents)


def _off_block_entries(m: QMatrix, src: GradedSpace, dst: GradedSpace) -> list[tuple[int, int]]:
    soff, doff = src.offsets(), dst.offsets()
    col_key = {j: k for k, (a, b) in soff.items() for j in range(a, b)}
    row_key = {i: k for k, (a, b) in doff.items() for i in range(a, b)}
    return sorted(ij for ij in m.entries if row_key[ij[0]] != col_key[ij[1]])


def validate_complex(row: ComplexRow, blockwise: bool = True) -> ValidationReport:
    """Check shapes, d*d = 0 and (optionally) block compatibility."""
    problems = []
    for i, d in enumerate(row.differentials):
        src, dst = row.nodes[i], row.nodes[i + 1]
        pos = row.start + i
        if d.shape != (dst.dim, src.dim):
            problems.append(f"shape: differential at position {pos} is {d.shape}, expected {(dst.dim, src.dim)}")
            continue
        if blockwise:
            bad = _off_block_entries(d, src, dst)
            if bad:
                problems.append(f"block: differential at position {pos} mixes bidegrees at entry {bad[0]}")
    if not problems:
        for i in range(len(row.differentials) - 1):
            if not matmul(row.differentials[i + 1], row.differentials[i]).is_zero():
                problems.append(f"d^2: composite at positions {row.start + i}->{row.start + i + 2} is nonzero")
                break
    return ValidationReport(not problems, problems)


def page_homology(row: ComplexRow, blockwise: bool = True) -> list[dict]:
    """Homology at every node, as {bidegree: dim} with zero blocks dropped."""
    report = validate_complex(row, blockwise=blockwise)
    if not report:
        msg = report.problems[0]
        if msg.startswith("block"):
            raise BlockViolation(msg)
        if msg.startswith("shape"):
            raise DimensionMismatch(msg)
        raise NotAComplex(msg)
    out = []
    nn = len(row.nodes)
    for i, node in enumerate(row.nodes):
        d_in = row.differentials[i - 1] if i > 0 else None
        d_out = row.differentials[i] if i < nn - 1 else None
        prev = row.nodes[i - 1] if i > 0 else None
        nxt = row.nodes[i + 1] if i < nn - 1 else None
        result = {}
        keys = list(node.blocks) if blockwise else [None]
        for key in keys:
            if blockwise:
                rng = node.offsets()[key]
            else:
                rng = (0, node.dim)
            size = rng[1] - rng[0]
            r_out = 0
            if d_out is not None:
                if blockwise:
                    dr = nxt.offsets().get(key)
                    r_out = rank(_submatrix(d_out, dr, rng)) if dr else 0
                else:
                    r_out = rank(d_out)
            r_in = 0
            if d_in is not None:
                if blockwise:
                    sr = prev.offsets().get(key)
                    r_in = rank(_submatrix(d_in, rng, sr)) if sr else 0
                else:
                    r_in = rank(d_in)
            h = size - r_out - r_in
            if h:
                result[key] = h
        out.append(result)
    return out


def euler(dims: Sequence[int]) -> int:
    return sum((-1) ** i * d for i, d in enumerate(dims))


@dataclass(frozen=True)
class DoubleComplex:
    """Nodes at (x, y); ``horizontal[(x, y)]`` maps to (x+1, y), ``vertical[(x, y)]`` to (x, y+1).

    The total differential is ``G + (-1)^(x+y) d`` where G is horizontal and
    d vertical; G and d are required to commute.
    """

    nodes: Mapping
    horizontal: Mapping = field(default_factory=dict)
    vertical: Mapping = field(default_factory=dict)

    def node(self, x: int, y: int) -> GradedSpace:
        return self.nodes.get((x, y), GradedSpace())


def _map_or_zero(maps: Mapping, key, src: GradedSpace, dst: GradedSpace) -> QMatrix:
    m = maps.get(key)
    if m is None:
        return QMatrix.zeros(dst.dim, src.dim)
    if m.shape != (dst.dim, src.dim):
        raise DimensionMismatch(f"map at {key} has shape {m.shape}, expected {(dst.dim, src.dim)}")
    return m


def direct_sum(parts: Sequence[tuple], shift: tuple[int, int] = (0, 0)) -> tuple[GradedSpace, dict]:
    """Merge tagged spaces block by block.

    Returns the merged space and, per tag, the merged index of each local
    basis vector.  Hodge blocks are shifted by ``shift`` (a Tate twist).
    """
    blocks: dict = {}
    for tag, sp in parts:
        for key, labels in sp.blocks.items():
            k = None if key is None else (key[0] + shift[0], key[1] + shift[1])
            blocks.setdefault(k, []).extend(f"{tag}:{lab}" for lab in labels)
    total = GradedSpace(blocks)
    offs = total.offsets()
    cursor = {k: offs[k][0] for k in offs}
    layout = {}
    for tag, sp in parts:
        idx = []
        for key, labels in sp.blocks.items():
            k = None if key is None else (key[0] + shift[0], key[1] + shift[1])
            for _ in labels:
                idx.append(cursor[k])
                cursor[k] += 1
        layout[tag] = idx
    return total, layout


def embed(entries: list, m: QMatrix, rows: list[int], cols: list[int], sign: int = 1) -> None:
    """Add ``sign * m`` into a sparse accumulator at the given global indices."""
    for (i, j), v in m.entries.items():
        entries.append(((rows[i], cols[j]), sign * v))


def check_double_complex(dc: DoubleComplex) -> None:
    for (x, y) in dc.nodes:
        src = dc.node(x, y)
        h = _map_or_zero(dc.horizontal, (x, y), src, dc.node(x + 1, y))
        v = _map_or_zero(dc.vertical, (x, y), src, dc.node(x, y + 1))
        hh = _map_or_zero(dc.horizontal, (x + 1, y), dc.node(x + 1, y), dc.node(x + 2, y))
        vv = _map_or_zero(dc.vertical, (x, y + 1), dc.node(x, y + 1), dc.node(x, y + 2))
        if not matmul(hh, h).is_zero():
            raise NotAComplex(f"horizontal maps from {(x, y)} do not compose to zero")
        if not matmul(vv, v).is_zero():
            raise NotAComplex(f"vertical maps from {(x, y)} do not compose to zero")
        vh = matmul(_map_or_zero(dc.vertical, (x + 1, y), dc.node(x + 1, y), dc.node(x + 1, y + 1)), h)
        hv = matmul(_map_or_zero(dc.horizontal, (x, y + 1), dc.node(x, y + 1), dc.node(x + 1, y + 1)), v)
        if vh != hv:
            raise SignRuleViolation(f"horizontal and vertical maps do not commute at {(x, y)}")


def totalize(dc: DoubleComplex) -> ComplexRow:
    """Total complex along antidiagonals x + y = const, summands ordered by x."""
    check_double_complex(dc)
    if not dc.nodes:
        return ComplexRow([], [])
    totals = sorted({x + y for (x, y) in dc.nodes})
    lo, hi = totals[0], totals[-1]

    def summands(t):
        return sorted((x, y) for (x, y) in dc.nodes if x + y == t)

    spaces, layouts = [], []
    for t in range(lo, hi + 1):
        total, layout = direct_sum([(xy, dc.node(*xy)) for xy in summands(t)])
        spaces.append(total)
        layouts.append(layout)

    diffs = []
    for ti in range(len(spaces) - 1):
        ents = {}
        for (x, y), src_idx in layouts[ti].items():
            sign = -1 if (x + y) % 2 else 1
            for target, m, s in (((x + 1, y), dc.horizontal.get((x, y)), 1), ((x, y + 1), dc.vertical.get((x, y)), sign)):
                if m is None or target not in layouts[ti + 1]:
                    continue
                dst_idx = layouts[ti + 1][target]
                for (i, j), v in m.entries.items():
                    key = (dst_idx[i], src_idx[j])
                    ents[key] = ents.get(key, 0) + s * v
        diffs.append(QMatrix(spaces[ti + 1].dim, spaces[ti].dim, ents))
    return ComplexRow(spaces, diffs, start=lo)
