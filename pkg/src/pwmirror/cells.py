"""Finite cell complexes with a level function, used to generate flag data.

Each cell has a dimension and a level; the flag member Y{l} consists of
the cells of level >= l and must be closed under taking faces.  From the
cellular cochain complex we compute, with explicit cocycle bases,

* H^k(Y{l}) and the restriction maps H^k(Y) -> H^k(Y{l});
* H^j(Y{l}, Y{l+1}) (cochains on cells of level exactly l) and the
  connecting maps of the triples (Y{l-1}, Y{l}, Y{l+1}).

Both halves of a ``FlagComplex`` are thereby produced from the same cells,
which makes them an independent oracle for each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .linalg import QMatrix, columns_matrix, image_basis, kernel_basis, rank, solve
from .perverse import CechRow, FlagComplex


@dataclass(frozen=True)
class Cell:
    name: str
    dim: int
    level: int = 0


@dataclass(frozen=True)
class CellComplex:
    """``faces[tau][sigma]`` is the incidence number [tau : sigma]."""

    cells: tuple[Cell, ...]
    faces: Mapping[str, Mapping[str, int]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))
        by_name = {c.name: c for c in self.cells}
        if len(by_name) != len(self.cells):
            raise ValueError("duplicate cell names")
        for tau, bd in self.faces.items():
            t = by_name[tau]
            for sigma, c in bd.items():
                s = by_name[sigma]
                if c and s.dim != t.dim - 1:
                    raise ValueError(f"{sigma} is not a codimension-one face of {tau}")
                if c and s.level < t.level:
                    raise ValueError(f"Y{{{t.level}}} is not closed: {tau} has face {sigma} of level {s.level}")
        for k in range(1, self.top_dim() + 1):
            d_hi = self.coboundary(k, lambda c: True)
            d_lo = self.coboundary(k - 1, lambda c: True)
            if not (d_hi @ d_lo).is_zero():
                raise ValueError(f"boundary does not square to zero through dimension {k}")

    def cell(self, name: str) -> Cell:
        return next(c for c in self.cells if c.name == name)

    def top_dim(self) -> int:
        return max((c.dim for c in self.cells), default=-1)

    def max_level(self) -> int:
        return max((c.level for c in self.cells), default=0)

    def basis(self, k: int, keep: Callable[[Cell], bool]) -> list[str]:
        return [c.name for c in self.cells if c.dim == k and keep(c)]

    def coboundary(self, k: int, keep: Callable[[Cell], bool]) -> QMatrix:
        """delta: C^k -> C^{k+1} on the cells selected by ``keep``."""
        src = self.basis(k, keep)
        dst = self.basis(k + 1, keep)
        col = {n: j for j, n in enumerate(src)}
        ents = {}
        for i, tau in enumerate(dst):
            for sigma, c in self.faces.get(tau, {}).items():
                if sigma in col and c:
                    ents[(i, col[sigma])] = c
        return QMatrix(len(dst), len(src), ents)

    def product(self, other: "CellComplex", sep: str = "x") -> "CellComplex":
        cells = []
        for a in self.cells:
            for b in other.cells:
                cells.append(Cell(f"{a.name}{sep}{b.name}", a.dim + b.dim, a.level + b.level))
        faces: dict = {}
        for a in self.cells:
            for b in other.cells:
                bd: dict = {}
                for fa, c in self.faces.get(a.name, {}).items():
                    bd[f"{fa}{sep}{b.name}"] = bd.get(f"{fa}{sep}{b.name}", 0) + c
                sign = -1 if a.dim % 2 else 1
                for fb, c in other.faces.get(b.name, {}).items():
                    bd[f"{a.name}{sep}{fb}"] = bd.get(f"{a.name}{sep}{fb}", 0) + sign * c
                bd = {k: v for k, v in bd.items() if v}
                if bd:
                    faces[f"{a.name}{sep}{b.name}"] = bd
        return CellComplex(tuple(cells), faces)


class Cohomology:
    """H^k of the cochain complex on a selected set of cells, with representatives."""

    def __init__(self, cx: CellComplex, k: int, keep: Callable[[Cell], bool]):
        self.k = k
        self.cells = cx.basis(k, keep)
        dim = len(self.cells)
        self.dim_cochains = dim
        z = kernel_basis(cx.coboundary(k, keep)) if dim else []
        d_prev = cx.coboundary(k - 1, keep) if k > 0 else QMatrix.zeros(dim, 0)
        self.boundaries = image_basis(d_prev) if d_prev.ncols and d_prev.nrows else []
        reps: list = []
        current = list(self.boundaries)
        r = rank(columns_matrix(current, dim)) if current else 0
        for v in z:
            trial = current + [v]
            r2 = rank(columns_matrix(trial, dim))
            if r2 > r:
                reps.append(v)
                current, r = trial, r2
        self.reps = reps

    @property
    def dim(self) -> int:
        return len(self.reps)

    def coords(self, cocycle: list) -> list[Fraction]:
        """Coordinates of a cocycle's class in the representative basis."""
        x = solve(self.reps + self.boundaries, cocycle, self.dim_cochains)
        if x is None:
            raise ValueError("vector is not a cocycle of this complex")
        return x[: self.dim]

    def vector(self, values: Mapping[str, Fraction]) -> list:
        return [values.get(c, Fraction(0)) for c in self.cells]


def _at_least(l: int):
    return lambda c: c.level >= l


def _exactly(l: int):
    return lambda c: c.level == l


def restriction_matrix(cx: CellComplex, k: int, l: int) -> QMatrix:
    """H^k(Y) -> H^k(Y{l}) in representative bases."""
    src = Cohomology(cx, k, _at_least(0))
    dst = Cohomology(cx, k, _at_least(l))
    cols = []
    for rep in src.reps:
        values = dict(zip(src.cells, rep))
        cols.append(dst.coords(dst.vector(values)) if dst.dim else [])
    ents = {(i, j): v for j, col in enumerate(cols) for i, v in enumerate(col) if v}
    return QMatrix(dst.dim, src.dim, ents)


def connecting_matrix(cx: CellComplex, j: int, l: int) -> QMatrix:
    """H^j(Y{l}, Y{l+1}) -> H^{j+1}(Y{l-1}, Y{l}): extend by zero, cobound, restrict."""
    src = Cohomology(cx, j, _exactly(l))
    dst = Cohomology(cx, j + 1, _exactly(l - 1))
    full_src = cx.basis(j, _at_least(l - 1))
    d = cx.coboundary(j, _at_least(l - 1))
    full_dst = cx.basis(j + 1, _at_least(l - 1))
    cols = []
    for rep in src.reps:
        values = dict(zip(src.cells, rep))
        image = d.apply([values.get(c, Fraction(0)) for c in full_src])
        img_values = dict(zip(full_dst, image))
        cols.append(dst.coords(dst.vector(img_values)) if dst.dim else [])
    ents = {(i, jj): v for jj, col in enumerate(cols) for i, v in enumerate(col) if v}
    return QMatrix(dst.dim, src.dim, ents)


def betti(cx: CellComplex, l: int = 0) -> dict[int, int]:
    out = {}
    for k in range(cx.top_dim() + 1):
        d = Cohomology(cx, k, _at_least(l)).dim
        if d:
            out[k] = d
    return out


def relative_betti(cx: CellComplex, keep: Callable[[Cell], bool]) -> dict[int, int]:
    """Cohomology of the cochains supported on the selected cells (a relative pair)."""
    out = {}
    for k in range(cx.top_dim() + 1):
        d = Cohomology(cx, k, keep).dim
        if d:
            out[k] = d
    return out


def flag_complex(cx: CellComplex, ambient_dim: int, N: int | None = None) -> FlagComplex:
    """Both the kernel form and the Čech form of the flag given by the cell levels."""
    if N is None:
        N = cx.max_level()
    b = betti(cx)
    restrictions = {}
    for k in range(cx.top_dim() + 1):
        for l in range(1, N + 1):
            restrictions[(k, l)] = restriction_matrix(cx, k, l)
    cech = {}
    top = cx.top_dim()
    for k in range(0, top + N + 1):
        dims, conn = {}, {}
        for l in range(0, N + 1):
            j = k - l
            if 0 <= j <= top:
                d = Cohomology(cx, j, _exactly(l)).dim
                if d:
                    dims[l] = d
        for l in range(1, N + 1):
            j = k - l
            if 0 <= j <= top and dims.get(l) and dims.get(l - 1):
                conn[l] = connecting_matrix(cx, j, l)
        if dims:
            cech[k] = CechRow(dims, conn)
    restrictions = {key: m for key, m in restrictions.items() if m.ncols}
    return FlagComplex(ambient_dim, N, b, restrictions, cech)


# -- stock models -------------------------------------------------------


def cstar() -> CellComplex:
    """C* retracting onto a circle; the fibre over the flag point is the vertex."""
    return CellComplex((Cell("v", 0, 1), Cell("e", 1, 0)), {"e": {"v": 0}})


def torus(n: int) -> CellComplex:
    cx = CellComplex((Cell("pt", 0, 0),))
    for _ in range(n):
        cx = cx.product(cstar(), sep="*")
    return cx


def torus_generic_line() -> CellComplex:
    """(C*)^2 with its 1-skeleton as Y{1}; two extra 2-cells identify the circles."""
    cells = (
        Cell("v", 0, 2),
        Cell("a1", 1, 1), Cell("b1", 1, 1), Cell("a2", 1, 1), Cell("b2", 1, 1),
        Cell("T", 2, 0), Cell("A", 2, 0), Cell("B", 2, 0),
    )
    faces = {
        "a1": {"v": 0}, "b1": {"v": 0}, "a2": {"v": 0}, "b2": {"v": 0},
        "T": {"a1": 0, "b1": 0},
        "A": {"a1": 1, "a2": -1},
        "B": {"b1": 1, "b2": -1},
    }
    return CellComplex(cells, faces)


def affine_complement() -> CellComplex:
    """P^1 minus three points, as a theta-plus-triangle graph; Y{1} is the three vertices."""
    cells = (
        Cell("p1", 0, 1), Cell("p2", 0, 1), Cell("p3", 0, 1),
        Cell("e1", 1, 0), Cell("e2", 1, 0), Cell("e3", 1, 0), Cell("e4", 1, 0),
    )
    faces = {
        "e1": {"p2": 1, "p1": -1},
        "e2": {"p3": 1, "p2": -1},
        "e3": {"p1": 1, "p3": -1},
        "e4": {"p2": 1, "p1": -1},
    }
    return CellComplex(cells, faces)


def two_potential() -> CellComplex:
    """Y_sm = Y_1 ∪ Y_2 glued along Y_12 = {p, q}, each Y_i a circle through p and q.

    The flag member Y{1} is the glue locus itself.
    """
    cells = (
        Cell("p", 0, 1), Cell("q", 0, 1),
        Cell("e1", 1, 0), Cell("f1", 1, 0), Cell("e2", 1, 0), Cell("f2", 1, 0),
    )
    faces = {name: {"q": 1, "p": -1} for name in ("e1", "f1", "e2", "f2")}
    return CellComplex(cells, faces)


def gluing_tables(cx: CellComplex, side: Mapping[str, int], glue: Iterable[str]) -> dict[str, dict[int, int]]:
    """Relative Betti numbers of (Y_sm, Y_12) and (Y_i, Y_12).

    ``side`` assigns each cell outside the glue locus to component 1 or 2.
    """
    glue = set(glue)

    def rel(which):
        return relative_betti(cx, lambda c: c.name not in glue and (which is None or side[c.name] == which))

    return {"sm": rel(None), "1": rel(1), "2": rel(2)}


def elliptic_fibration(nodal: int) -> CellComplex:
    """Elliptic fibration over C with ``nodal`` nodal fibres, up to homotopy.

    The generic fibre E (vertex, loops a and b, 2-cell T) is the flag member
    Y{1}; each nodal fibre contributes a thimble 2-cell glued along its
    vanishing cycle, cycling through a, b and -a-b.
    """
    cycles = [{"a": 1}, {"b": 1}, {"a": -1, "b": -1}]
    cells_ = [Cell("v", 0, 1), Cell("a", 1, 1), Cell("b", 1, 1), Cell("T", 2, 1)]
    faces: dict = {"a": {"v": 0}, "b": {"v": 0}, "T": {"a": 0, "b": 0}}
    for j in range(nodal):
        cells_.append(Cell(f"D{j}", 2, 0))
        faces[f"D{j}"] = dict(cycles[j % 3])
    return CellComplex(tuple(cells_), faces)
