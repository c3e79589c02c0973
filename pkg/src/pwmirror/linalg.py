"""Exact rational linear algebra on sparse matrices.

Rank uses fraction-free (Bareiss) elimination on integers after clearing
denominators row by row; kernels use reduced row echelon form with the
first nonzero entry of each row as pivot, so bases are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence


class NotAComplex(ValueError):
    """Two consecutive maps do not compose to zero."""


class DimensionMismatch(ValueError):
    pass


def parse_rational(value) -> Fraction:
    """Accept ints, Fractions, or strings like ``"3"``, ``"-2/5"``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not an exact rational: {value!r}")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class QMatrix:
    nrows: int
    ncols: int
    entries: dict[tuple[int, int], Fraction] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if self.nrows < 0 or self.ncols < 0:
            raise ValueError("negative matrix shape")
        clean = {}
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.nrows and 0 <= j < self.ncols):
                raise IndexError(f"entry ({i},{j}) outside {self.nrows}x{self.ncols}")
            v = parse_rational(v)
            if v:
                clean[(i, j)] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "QMatrix":
        return cls(nrows, ncols, {})

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: int | None = None) -> "QMatrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        ents = {}
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise DimensionMismatch(f"row {i} has length {len(r)}, expected {ncols}")
            for j, v in enumerate(r):
                q = parse_rational(v)
                if q:
                    ents[(i, j)] = q
        return cls(len(rows), ncols, ents)

    def to_rows(self) -> list[list[Fraction]]:
        rows = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def serialize(self) -> list[list[str]]:
        return [[format_rational(v) for v in r] for r in self.to_rows()]

    def __eq__(self, other) -> bool:
        if not isinstance(other, QMatrix):
            return NotImplemented
        return (self.nrows, self.ncols, self.entries) == (other.nrows, other.ncols, other.entries)

    def __hash__(self):
        return hash((self.nrows, self.ncols, tuple(sorted(self.entries.items()))))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def is_zero(self) -> bool:
        return not self.entries

    def transpose(self) -> "QMatrix":
        return QMatrix(self.ncols, self.nrows, {(j, i): v for (i, j), v in self.entries.items()})

    def scale(self, c) -> "QMatrix":
        c = parse_rational(c)
        return QMatrix(self.nrows, self.ncols, {k: c * v for k, v in self.entries.items()})

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        ents = dict(self.entries)
        for k, v in other.entries.items():
            ents[k] = ents.get(k, 0) + v
        return QMatrix(self.nrows, self.ncols, ents)

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        return matmul(self, other)

    def apply(self, vec: Sequence) -> list[Fraction]:
        if len(vec) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(vec)} for {self.shape} matrix")
        out = [Fraction(0)] * self.nrows
        for (i, j), v in self.entries.items():
            out[i] += v * vec[j]
        return out


def matmul(a: QMatrix, b: QMatrix) -> QMatrix:
    if a.ncols != b.nrows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    by_row: dict[int, list[tuple[int, Fraction]]] = {}
    for (k, j), v in b.entries.items():
        by_row.setdefault(k, []).append((j, v))
    ents: dict[tuple[int, int], Fraction] = {}
    for (i, k), v in a.entries.items():
        for j, w in by_row.get(k, ()):
            ents[(i, j)] = ents.get((i, j), 0) + v * w
    return QMatrix(a.nrows, b.ncols, ents)


def block_matrix(blocks: dict[tuple[int, int], QMatrix], row_sizes: Sequence[int], col_sizes: Sequence[int]) -> QMatrix:
    """Assemble a matrix from blocks keyed by (row block, col block)."""
    roff = [0]
    for s in row_sizes:
        roff.append(roff[-1] + s)
    coff = [0]
    for s in col_sizes:
        coff.append(coff[-1] + s)
    ents = {}
    for (bi, bj), m in blocks.items():
        if m.shape != (row_sizes[bi], col_sizes[bj]):
            raise DimensionMismatch(f"block ({bi},{bj}) has shape {m.shape}")
        for (i, j), v in m.entries.items():
            ents[(roff[bi] + i, coff[bj] + j)] = v
    return QMatrix(roff[-1], coff[-1], ents)


def _integer_rows(m: QMatrix) -> list[list[int]]:
    rows = m.to_rows()
    out = []
    for r in rows:
        d = lcm(*(v.denominator for v in r)) if r else 1
        out.append([int(v * d) for v in r])
    return out


def rank(m: QMatrix) -> int:
    """Rank via fraction-free Gaussian elimination."""
    if m.nrows == 0 or m.ncols == 0 or m.is_zero():
        return 0
    a = _integer_rows(m)
    nr, nc = m.nrows, m.ncols
    r = 0
    prev = 1
    for c in range(nc):
        piv = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, nr):
            for j in range(c + 1, nc):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == nr:
            break
    return r


def rref(m: QMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = m.to_rows()
    nr, nc = m.nrows, m.ncols
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(nr):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return a, pivots


def kernel_basis(m: QMatrix) -> list[list[Fraction]]:
    """Basis of the right null space, one vector per free column in order."""
    a, pivots = rref(m)
    free = [c for c in range(m.ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for row, pc in enumerate(pivots):
            v[pc] = -a[row][f]
        basis.append(v)
    return basis


def homology_dim(d_in: QMatrix, d_out: QMatrix, check: bool = True) -> int:
    """dim ker(d_out) - rank(d_in) for ``V_prev --d_in--> V --d_out--> V_next``."""
    if d_in.nrows != d_out.ncols:
        raise DimensionMismatch(f"middle dims differ: {d_in.nrows} vs {d_out.ncols}")
    if check and not matmul(d_out, d_in).is_zero():
        raise NotAComplex("d_out * d_in is not zero")
    return d_out.ncols - rank(d_out) - rank(d_in)


def columns_matrix(vectors: Sequence[Sequence], dim: int) -> QMatrix:
    ents = {}
    for j, v in enumerate(vectors):
        if len(v) != dim:
            raise DimensionMismatch(f"vector {j} has length {len(v)}, expected {dim}")
        for i, x in enumerate(v):
            q = parse_rational(x)
            if q:
                ents[(i, j)] = q
    return QMatrix(dim, len(vectors), ents)


def span_rank(vectors: Sequence[Sequence], dim: int) -> int:
    return rank(columns_matrix(vectors, dim)) if vectors else 0


def subspace_contains(big: Sequence[Sequence], small: Sequence[Sequence], dim: int) -> bool:
    """True when span(small) lies inside span(big); all vectors live in Q^dim."""
    if not small:
        return True
    r = span_rank(big, dim)
    return span_rank(list(big) + list(small), dim) == r


def image_basis(m: QMatrix) -> list[list[Fraction]]:
    """Independent columns of ``m`` (pivot columns), as vectors."""
    _, pivots = rref(m)
    cols = m.transpose().to_rows()
    return [cols[c] for c in pivots]


def intersect(a: Sequence[Sequence], b: Sequence[Sequence], dim: int) -> list[list[Fraction]]:
    """Basis of span(a) ∩ span(b) via the kernel of [A | -B]."""
    if not a or not b:
        return []
    A = columns_matrix(a, dim)
    B = columns_matrix(b, dim).scale(-1)
    M = QMatrix(dim, A.ncols + B.ncols, {**A.entries, **{(i, j + A.ncols): v for (i, j), v in B.entries.items()}})
    out = []
    for k in kernel_basis(M):
        out.append(A.apply(k[: A.ncols]))
    return image_basis(columns_matrix(out, dim)) if out else []


def is_zero_vector(v: Iterable) -> bool:
    return all(x == 0 for x in v)


def solve(columns: Sequence[Sequence], target: Sequence, dim: int) -> list[Fraction] | None:
    """Coefficients x with sum x_j * columns[j] = target, or None if unsolvable."""
    aug = columns_matrix(list(columns) + [list(target)], dim)
    a, pivots = rref(aug)
    ncols = len(columns)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in enumerate(pivots):
        x[pc] = a[row][ncols]
    return x
