"""Graded-dimension tables for mixed Hodge data.

Three table shapes are used throughout:

* ``MixedHodgeTable``: (s, p, w) -> dim Gr_F^p Gr^W_w H^s
* ``PWTable``: (s, a, b, r) -> dim Gr_F^a Gr^W_{s+b} Gr^P_{s+r} H^s
* ``PerverseHodgeTable``: (s, a, rho) -> dim Gr_F^a Gr^P_rho H^s
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .polyalg import LaurentPoly

MODES = ("smooth-open", "limit", "raw")


class MarginalMismatch(ValueError):
    pass


class TableError(ValueError):
    """A table violates the support bounds of its validation mode."""


class HypothesisFailed(ValueError):
    """A derivation rule was asked to run outside its hypothesis."""

    def __init__(self, message: str, witness: str | None = None, cell: tuple | None = None):
        super().__init__(message)
        self.witness = witness
        self.cell = cell


def _canon(dims: Mapping[tuple, int], arity: int) -> dict[tuple, int]:
    out: dict[tuple, int] = {}
    for key, d in dims.items():
        key = tuple(int(x) for x in key)
        if len(key) != arity:
            raise TableError(f"key {key} should have {arity} entries")
        d = int(d)
        if d < 0:
            raise TableError(f"negative dimension {d} at {key}")
        if d:
            out[key] = out.get(key, 0) + d
    return dict(sorted(out.items()))


@dataclass(frozen=True)
class MixedHodgeTable:
    ambient_dim: int
    dims: dict[tuple[int, int, int], int] = field(default_factory=dict)
    mode: str = "smooth-open"

    def __post_init__(self):
        if self.mode not in MODES:
            raise TableError(f"unknown validation mode {self.mode!r}")
        object.__setattr__(self, "dims", _canon(self.dims, 3))
        self.validate()

    def validate(self) -> None:
        n = self.ambient_dim
        if n < 0:
            raise TableError("ambient_dim must be nonnegative")
        if self.mode == "raw":
            return
        for (s, p, w) in self.dims:
            if not 0 <= s <= 2 * n:
                raise TableError(f"degree {s} outside [0, {2 * n}]")
            lo, hi = (s, 2 * s) if self.mode == "smooth-open" else (0, 2 * s)
            if not lo <= w <= hi:
                raise TableError(f"weight {w} of H^{s} outside [{lo}, {hi}] ({self.mode})")
            if not 0 <= p <= w:
                raise TableError(f"Hodge index {p} outside [0, {w}] at {(s, p, w)}")

    def __hash__(self):
        return hash((self.ambient_dim, tuple(self.dims.items()), self.mode))

    def degree_dims(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (s, _, _), d in self.dims.items():
            out[s] = out.get(s, 0) + d
        return out

    def euler(self) -> int:
        return sum((-1) ** s * d for s, d in self.degree_dims().items())

    def with_mode(self, mode: str) -> "MixedHodgeTable":
        return MixedHodgeTable(self.ambient_dim, self.dims, mode)

    def records(self) -> list[dict]:
        return [{"s": s, "p": p, "w": w, "dim": d} for (s, p, w), d in self.dims.items()]

    @classmethod
    def from_records(cls, n: int, records: Iterable[Mapping], mode: str = "smooth-open") -> "MixedHodgeTable":
        dims: dict = {}
        for r in records:
            key = (r["s"], r["p"], r["w"])
            dims[key] = dims.get(key, 0) + r["dim"]
        return cls(n, dims, mode)


@dataclass(frozen=True)
class PWTable:
    ambient_dim: int
    dims: dict[tuple[int, int, int, int], int] = field(default_factory=dict)
    mode: str = "smooth-open"

    def __post_init__(self):
        if self.mode not in MODES:
            raise TableError(f"unknown validation mode {self.mode!r}")
        object.__setattr__(self, "dims", _canon(self.dims, 4))
        if self.mode != "raw":
            # the weight marginal must itself be a valid table
            self.weight_marginal()
            n = self.ambient_dim
            for (s, a, b, r) in self.dims:
                if not 0 <= r <= n:
                    raise TableError(f"perverse offset {r} outside [0, {n}] at {(s, a, b, r)}")

    def __hash__(self):
        return hash((self.ambient_dim, tuple(self.dims.items()), self.mode))

    def weight_marginal(self) -> MixedHodgeTable:
        out: dict = {}
        for (s, a, b, r), d in self.dims.items():
            key = (s, a, s + b)
            out[key] = out.get(key, 0) + d
        return MixedHodgeTable(self.ambient_dim, out, self.mode)

    def perverse_marginal(self) -> "PerverseHodgeTable":
        out: dict = {}
        for (s, a, b, r), d in self.dims.items():
            key = (s, a, s + r)
            out[key] = out.get(key, 0) + d
        return PerverseHodgeTable(self.ambient_dim, out, check=self.mode != "raw")

    def records(self) -> list[dict]:
        return [{"s": s, "a": a, "b": b, "r": r, "dim": d} for (s, a, b, r), d in self.dims.items()]

    @classmethod
    def from_records(cls, n: int, records: Iterable[Mapping], mode: str = "smooth-open") -> "PWTable":
        dims: dict = {}
        for rec in records:
            key = (rec["s"], rec["a"], rec["b"], rec["r"])
            dims[key] = dims.get(key, 0) + rec["dim"]
        return cls(n, dims, mode)


@dataclass(frozen=True)
class PerverseHodgeTable:
    ambient_dim: int
    dims: dict[tuple[int, int, int], int] = field(default_factory=dict)
    check: bool = True

    def __post_init__(self):
        object.__setattr__(self, "dims", _canon(self.dims, 3))
        if self.check:
            n = self.ambient_dim
            for (s, a, rho) in self.dims:
                if not s <= rho <= s + n:
                    raise TableError(f"perverse index {rho} of H^{s} outside [{s}, {s + n}]")

    def __hash__(self):
        return hash((self.ambient_dim, tuple(self.dims.items())))

    def records(self) -> list[dict]:
        return [{"s": s, "a": a, "rho": rho, "dim": d} for (s, a, rho), d in self.dims.items()]

    @classmethod
    def from_records(cls, n: int, records: Iterable[Mapping]) -> "PerverseHodgeTable":
        dims: dict = {}
        for rec in records:
            key = (rec["s"], rec["a"], rec["rho"])
            dims[key] = dims.get(key, 0) + rec["dim"]
        return cls(n, dims)


def point_table() -> MixedHodgeTable:
    return MixedHodgeTable(0, {(0, 0, 0): 1})


def torus_table(n: int) -> MixedHodgeTable:
    """H^k((C*)^n) = Q(-k)^C(n,k), built as a Kunneth power."""
    result = point_table()
    cstar = MixedHodgeTable(1, {(0, 0, 0): 1, (1, 1, 2): 1})
    for _ in range(n):
        result = kunneth(result, cstar)
    return result


def tate_twist(T: MixedHodgeTable, m: int | Mapping[int, int]) -> MixedHodgeTable:
    """Twist by Q(m): (s, p, w) -> (s, p - m, w - 2m).

    ``m`` may be a single integer or a per-degree mapping (missing degrees
    are left alone).  Twisting may leave the smooth-open bounds, so the
    result is returned in raw mode unless it still validates.
    """
    out: dict = {}
    for (s, p, w), d in T.dims.items():
        shift = m.get(s, 0) if isinstance(m, Mapping) else m
        out[(s, p - shift, w - 2 * shift)] = d
    try:
        return MixedHodgeTable(T.ambient_dim, out, T.mode)
    except TableError:
        return MixedHodgeTable(T.ambient_dim, out, "raw")


def kunneth(A: MixedHodgeTable, B: MixedHodgeTable) -> MixedHodgeTable:
    out: dict = {}
    for (s1, p1, w1), d1 in A.dims.items():
        for (s2, p2, w2), d2 in B.dims.items():
            key = (s1 + s2, p1 + p2, w1 + w2)
            out[key] = out.get(key, 0) + d1 * d2
    modes = {A.mode, B.mode}
    mode = "raw" if "raw" in modes else ("limit" if "limit" in modes else "smooth-open")
    return MixedHodgeTable(A.ambient_dim + B.ambient_dim, out, mode)


def is_hodge_tate(T: MixedHodgeTable) -> tuple[bool, tuple[int, int, int] | None]:
    for cell in T.dims:
        s, p, w = cell
        if w != 2 * p:
            return False, cell
    return True, None


def pw_polynomial(T: PWTable) -> LaurentPoly:
    # slot order (u, t, w, p) carries exponents (a, s, b, r)
    return LaurentPoly({(a, s, b, r): d for (s, a, b, r), d in T.dims.items()})


PerverseRule = Callable[[int, int, int, int], Mapping[int, int]]


def level_rule(level: int) -> PerverseRule:
    """Place every class of H^s in Gr^P_level, i.e. offset r = level - s."""

    def rule(s: int, p: int, w: int, dim: int) -> dict[int, int]:
        return {level - s: dim}

    return rule


def offset_rule(r: int) -> PerverseRule:
    def rule(s: int, p: int, w: int, dim: int) -> dict[int, int]:
        return {r: dim}

    return rule


def explicit_rule(cells: Mapping[tuple[int, int, int], Mapping[int, int]]) -> PerverseRule:
    def rule(s: int, p: int, w: int, dim: int) -> Mapping[int, int]:
        return cells.get((s, p, w), {})

    return rule


def assemble_pw(U_weight: MixedHodgeTable, perverse_grading: PerverseRule) -> PWTable:
    out: dict = {}
    for (s, p, w), d in U_weight.dims.items():
        split = {int(r): int(k) for r, k in perverse_grading(s, p, w, d).items() if k}
        if sum(split.values()) != d:
            raise MarginalMismatch(
                f"rule distributes {sum(split.values())} classes at (s={s}, p={p}, w={w}) but the cell has {d}"
            )
        for r, k in split.items():
            key = (s, p, w - s, r)
            out[key] = out.get(key, 0) + k
    return PWTable(U_weight.ambient_dim, out, U_weight.mode)
