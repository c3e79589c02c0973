"""Weight spectral sequences from strata data.

For an SNC pair (X, D = D_1 + ... + D_N) with U = X - D, the E1 row of
weight w has node m equal to H^{w-2m}(D(m))(-m), where D(m) is the disjoint
union of the m-fold intersections D_I.  The differential runs from node m to
node m-1 and is the Gysin sum with sign (-1)^(j-1) for the j-th index of I.
Homology at node m is Gr^W_w H^{w-m}(U).

Gysin matrices are supplied as raw pushforwards; signs are applied here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .hodge import MixedHodgeTable
from .linalg import NotAComplex, QMatrix
from .specseq import (
    BlockViolation,
    ComplexRow,
    DoubleComplex,
    GradedSpace,
    direct_sum,
    embed,
    page_homology,
    totalize,
    validate_complex,
)

IndexSet = tuple[int, ...]


class MissingStratum(KeyError):
    pass


class ShapeMismatch(ValueError):
    pass


def _tag(I: IndexSet) -> str:
    return "X" if not I else "D" + ".".join(str(i) for i in I)


def _check_pure(space: GradedSpace, degree: int, where: str) -> None:
    for key in space.blocks:
        if key is None or key[0] + key[1] != degree or min(key) < 0:
            raise ShapeMismatch(f"{where}: block {key} is not a Hodge type of weight {degree}")


def _check_shift(m: QMatrix, src: GradedSpace, dst: GradedSpace, shift: tuple[int, int], where: str) -> None:
    soff, doff = src.offsets(), dst.offsets()
    col_key = {j: k for k, (a, b) in soff.items() for j in range(a, b)}
    row_key = {i: k for k, (a, b) in doff.items() for i in range(a, b)}
    for (i, j) in sorted(m.entries):
        ck = col_key[j]
        if row_key[i] != (ck[0] + shift[0], ck[1] + shift[1]):
            raise BlockViolation(f"{where}: entry {(i, j)} sends type {ck} to {row_key[i]}")


@dataclass(frozen=True)
class StrataComplex:
    """Pure cohomology of the strata D_I and raw Gysin maps between them.

    ``strata[I][j]`` is H^j(D_I) with blocks keyed by Hodge type (p, q);
    ``I = ()`` stands for X itself.  ``gysin[(I, i, j)]`` maps H^j(D_I) to
    H^{j+2}(D_{I - i}).  Missing Gysin entries are zero maps.
    """

    ambient_dim: int
    components: int
    strata: Mapping[IndexSet, Mapping[int, GradedSpace]]
    gysin: Mapping[tuple[IndexSet, int, int], QMatrix] = field(default_factory=dict)
    global_sign: int = 1

    def __post_init__(self):
        strata = {tuple(sorted(I)): {int(j): sp for j, sp in degs.items()} for I, degs in self.strata.items()}
        object.__setattr__(self, "strata", strata)
        object.__setattr__(self, "gysin", {(tuple(sorted(I)), i, j): m for (I, i, j), m in self.gysin.items()})
        if () not in strata:
            raise MissingStratum("the ambient space X (empty index set) is required")
        for I, degs in strata.items():
            if any(not 1 <= i <= self.components for i in I) or len(set(I)) != len(I):
                raise ShapeMismatch(f"index set {list(I)} is not a subset of 1..{self.components}")
            for j, sp in degs.items():
                _check_pure(sp, j, f"H^{j}({_tag(I)})")
        for (I, i, j), m in self.gysin.items():
            if I not in strata:
                raise MissingStratum(f"Gysin map references missing stratum {list(I)}")
            if i not in I:
                raise ShapeMismatch(f"removed index {i} not in {list(I)}")
            J = tuple(x for x in I if x != i)
            if J not in strata:
                raise MissingStratum(f"Gysin map references missing stratum {list(J)}")
            src, dst = self.space(I, j), self.space(J, j + 2)
            if m.shape != (dst.dim, src.dim):
                raise ShapeMismatch(
                    f"Gysin {(list(I), i, j)} has shape {m.shape}, expected {(dst.dim, src.dim)}"
                )
            _check_shift(m, src, dst, (1, 1), f"Gysin {(list(I), i, j)}")
        for w in range(0, 2 * self.ambient_dim + 1):
            report = validate_complex(weight_e1(self, w))
            if not report:
                raise NotAComplex(f"weight {w} row: {report.problems[0]}")

    def space(self, I: IndexSet, j: int) -> GradedSpace:
        return self.strata.get(tuple(I), {}).get(j, GradedSpace())

    def depth(self, m: int) -> list[IndexSet]:
        return sorted(I for I in self.strata if len(I) == m)

    def gysin_map(self, I: IndexSet, i: int, j: int) -> QMatrix:
        m = self.gysin.get((I, i, j))
        if m is None:
            J = tuple(x for x in I if x != i)
            return QMatrix.zeros(self.space(J, j + 2).dim, self.space(I, j).dim)
        return m


def _stratum_sum(sc: StrataComplex, m: int, degree: int) -> tuple[GradedSpace, dict]:
    parts = [(_tag(I), sc.space(I, degree)) for I in sc.depth(m)]
    return direct_sum(parts, shift=(m, m))


def weight_e1(sc: StrataComplex, w: int) -> ComplexRow:
    """E1 row of weight ``w``; position -m holds H^{w-2m}(D(m))(-m)."""
    top = min(sc.components, w // 2) if w >= 0 else -1
    nodes, layouts = [], []
    for m in range(top, -1, -1):
        sp, lay = _stratum_sum(sc, m, w - 2 * m)
        nodes.append(sp)
        layouts.append(lay)
    diffs = []
    for idx in range(len(nodes) - 1):
        m = top - idx
        ents: list = []
        for I in sc.depth(m):
            for pos, i in enumerate(I, start=1):
                J = tuple(x for x in I if x != i)
                if J not in sc.strata:
                    raise MissingStratum(f"stratum {list(J)} needed by the Gysin sum from {list(I)}")
                g = sc.gysin_map(I, i, w - 2 * m)
                sign = sc.global_sign * (-1) ** (pos - 1)
                embed(ents, g, layouts[idx + 1][_tag(J)], layouts[idx][_tag(I)], sign)
        acc: dict = {}
        for key, v in ents:
            acc[key] = acc.get(key, 0) + v
        diffs.append(QMatrix(nodes[idx + 1].dim, nodes[idx].dim, acc))
    return ComplexRow(nodes, diffs, start=-top if top >= 0 else 0)


def _table_from_rows(n: int, rows: Mapping[int, ComplexRow], mode: str, degree_of) -> MixedHodgeTable:
    dims: dict = {}
    for w, row in rows.items():
        for idx, blocks in enumerate(page_homology(row)):
            pos = row.start + idx
            s = degree_of(w, pos)
            for key, d in blocks.items():
                if key is None:
                    raise ShapeMismatch("Hodge types are required to build a table")
                cell = (s, key[0], w)
                dims[cell] = dims.get(cell, 0) + d
    return MixedHodgeTable(n, dims, mode)


def weight_graded(sc: StrataComplex) -> MixedHodgeTable:
    """Gr_F Gr^W dims of H^*(U), reading E2 = E_infinity."""
    rows = {w: weight_e1(sc, w) for w in range(0, 2 * sc.ambient_dim + 1)}
    # node at position -m of the weight-w row computes H^{w-m}
    return _table_from_rows(sc.ambient_dim, rows, "smooth-open", lambda w, pos: w + pos)


def product_strata(A: StrataComplex, B: StrataComplex) -> StrataComplex:
    """Strata of (X x X', D x X' + X x D'); components of B are renumbered after A's."""
    off = A.components

    def shifted(J):
        return tuple(j + off for j in J)

    strata: dict = {}
    # per (I, J, degree): list of (a, xi, yi) in merged basis order
    order: dict = {}
    for I, adegs in A.strata.items():
        for J, bdegs in B.strata.items():
            K = I + shifted(J)
            degs = {}
            for a, xs in adegs.items():
                for b, ys in bdegs.items():
                    degs.setdefault(a + b, []).append((a, b, xs, ys))
            spaces = {}
            for deg, pieces in degs.items():
                cells = []
                for a, b, xs, ys in pieces:
                    for xi, (xk, xl) in enumerate(_typed_labels(xs)):
                        for yi, (yk, yl) in enumerate(_typed_labels(ys)):
                            key = (xk[0] + yk[0], xk[1] + yk[1])
                            cells.append((key, a, xi, yi, f"{xl}x{yl}"))
                cells.sort(key=lambda c: (c[0], c[1], c[2], c[3]))
                blocks: dict = {}
                for key, a, xi, yi, lab in cells:
                    blocks.setdefault(key, []).append(lab)
                spaces[deg] = GradedSpace(blocks)
                order[(K, deg)] = {(a, xi, yi): n for n, (_, a, xi, yi, _) in enumerate(cells)}
            strata[K] = spaces

    gysin: dict = {}
    for (K, deg), idx in order.items():
        I = tuple(k for k in K if k <= off)
        J = tuple(k - off for k in K if k > off)
        for k in K:
            ents: dict = {}
            if k <= off:
                I2 = tuple(x for x in I if x != k)
                K2 = I2 + shifted(J)
                for (a, xi, yi), col in idx.items():
                    g = A.gysin_map(I, k, a)
                    for (r, c), v in g.entries.items():
                        if c == xi:
                            ents[(order[(K2, deg + 2)][(a + 2, r, yi)], col)] = v
            else:
                J2 = tuple(x for x in J if x != k - off)
                K2 = I + shifted(J2)
                for (a, xi, yi), col in idx.items():
                    b = deg - a
                    g = B.gysin_map(J, k - off, b)
                    for (r, c), v in g.entries.items():
                        if c == yi:
                            ents[(order[(K2, deg + 2)][(a, xi, r)], col)] = v
            if ents:
                K2 = tuple(x for x in K if x != k)
                gysin[(K, k, deg)] = QMatrix(strata[K2][deg + 2].dim, strata[K][deg].dim, ents)
    return StrataComplex(A.ambient_dim + B.ambient_dim, A.components + B.components, strata, gysin)


def _typed_labels(space: GradedSpace) -> list[tuple[tuple[int, int], str]]:
    return [(key, lab) for key, labels in space.blocks.items() for lab in labels]


@dataclass(frozen=True)
class SimplicialStrata:
    """Normal-crossing variety D = D_1 + ... + D_N as components and intersections.

    ``restrictions[(I, i, q)]`` restricts H^q(D_{I - i}) to H^q(D_I), for
    |I| >= 2.
    """

    ambient_dim: int
    components: int
    strata: Mapping[IndexSet, Mapping[int, GradedSpace]]
    restrictions: Mapping[tuple[IndexSet, int, int], QMatrix] = field(default_factory=dict)

    def __post_init__(self):
        strata = {tuple(sorted(I)): dict(d) for I, d in self.strata.items()}
        object.__setattr__(self, "strata", strata)
        object.__setattr__(
            self, "restrictions", {(tuple(sorted(I)), i, q): m for (I, i, q), m in self.restrictions.items()}
        )
        for (I, i, q), m in self.restrictions.items():
            J = tuple(x for x in I if x != i)
            if I not in strata or J not in strata:
                raise MissingStratum(f"restriction {(list(I), i, q)} references a missing stratum")
            src, dst = self.space(J, q), self.space(I, q)
            if m.shape != (dst.dim, src.dim):
                raise ShapeMismatch(f"restriction {(list(I), i, q)} has shape {m.shape}")
            _check_shift(m, src, dst, (0, 0), f"restriction {(list(I), i, q)}")

    def space(self, I: IndexSet, q: int) -> GradedSpace:
        return self.strata.get(tuple(I), {}).get(q, GradedSpace())


def nc_row(ss: SimplicialStrata, q: int) -> ComplexRow:
    """Mayer-Vietoris row: node r is the sum of H^q(D_I) over |I| = r + 1."""
    depth = max((len(I) for I in ss.strata), default=0)
    nodes, layouts = [], []
    for r in range(depth):
        parts = [(_tag(I), ss.space(I, q)) for I in sorted(ss.strata) if len(I) == r + 1]
        sp, lay = direct_sum(parts)
        nodes.append(sp)
        layouts.append(lay)
    diffs = []
    for r in range(depth - 1):
        acc: dict = {}
        for I in sorted(ss.strata):
            if len(I) != r + 2:
                continue
            for k, i in enumerate(I):
                J = tuple(x for x in I if x != i)
                m = ss.restrictions.get((I, i, q))
                if m is None:
                    continue
                ents: list = []
                embed(ents, m, layouts[r + 1][_tag(I)], layouts[r][_tag(J)], (-1) ** k)
                for key, v in ents:
                    acc[key] = acc.get(key, 0) + v
        diffs.append(QMatrix(nodes[r + 1].dim, nodes[r].dim, acc))
    return ComplexRow(nodes, diffs, start=0)


def nc_cohomology(ss: SimplicialStrata) -> MixedHodgeTable:
    """Weight-graded dims of H^*(D); node r of row q gives Gr^W_q H^{r+q}."""
    n = ss.ambient_dim
    rows = {q: nc_row(ss, q) for q in range(0, 2 * n + 1)}
    for q, row in rows.items():
        report = validate_complex(row)
        if not report:
            raise NotAComplex(f"row {q}: {report.problems[0]}")
    return _table_from_rows(n, rows, "limit", lambda q, pos: q + pos)


@dataclass(frozen=True)
class SimplicialPairs:
    """A simplicial open variety U_[0], U_[1], ... with SNC compactifications.

    ``faces[(r, i, m, d)]`` is delta_i^* on H^d(D(m)) of level r into level
    r + 1, in the merged bases used by ``weight_e1``.  The alternating
    signs (-1)^i are applied by the engine.
    """

    levels: Sequence[StrataComplex]
    faces: Mapping[tuple[int, int, int, int], QMatrix] = field(default_factory=dict)

    @property
    def ambient_dim(self) -> int:
        return max(sc.ambient_dim for sc in self.levels)


def simplicial_double_complex(sp: SimplicialPairs, q: int) -> DoubleComplex:
    """Weight-q double complex: node (x=-m, y=r) is H^{q-2m}(D(m) of level r)(-m)."""
    nodes, horiz, vert = {}, {}, {}
    for r, sc in enumerate(sp.levels):
        row = weight_e1(sc, q)
        for idx, node in enumerate(row.nodes):
            nodes[(row.start + idx, r)] = node
        for idx, d in enumerate(row.differentials):
            horiz[(row.start + idx, r)] = d
    for (x, r), node in nodes.items():
        if (x, r + 1) not in nodes:
            continue
        m = -x
        acc: dict = {}
        for (rr, i, mm, d), mat in sp.faces.items():
            if rr == r and mm == m and d == q - 2 * m:
                for key, v in mat.entries.items():
                    acc[key] = acc.get(key, 0) + (-1) ** i * v
        target = nodes[(x, r + 1)]
        vert[(x, r)] = QMatrix(target.dim, node.dim, acc)
    return DoubleComplex(nodes, horiz, vert)


def simplicial_weight_ss(sp: SimplicialPairs) -> MixedHodgeTable:
    """Gr^W_q H^{p+q} of the simplicial open variety from the totalized double complexes."""
    n = sp.ambient_dim
    top = 2 * n + 2 * len(sp.levels)
    rows = {}
    for q in range(0, top + 1):
        dc = simplicial_double_complex(sp, q)
        if dc.nodes:
            rows[q] = totalize(dc)
    return _table_from_rows(n, rows, "limit", lambda q, pos: q + pos)
