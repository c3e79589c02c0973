"""Combinatorial perverse filtration from a flag Y = Y{0} ⊃ Y{1} ⊃ ... ⊃ Y{N}.

Two descriptions are carried side by side:

* kernel form: restriction matrices H^k(Y) -> H^k(Y{l});
* Čech form: for each k a row whose node l is H^{k-l}(Y{l}, Y{l+1}),
  with connecting maps rho_l from node l to node l-1.

Under the calibrated convention P_{k+i} H^k = ker(H^k(Y) -> H^k(Y{i+1})),
so P_{k-1} = 0, and homology at node l of the Čech row k is Gr^P_k H^{k-l}.
The raw kernel convention P_{k+i} = ker(H^k(Y) -> H^k(Y{i})) is available
as ``convention="appendix"``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .checks import CheckResult
from .linalg import DimensionMismatch, QMatrix, parse_rational as _q, rank, span_rank, subspace_contains
from .specseq import ComplexRow, GradedSpace, page_homology

CONVENTIONS = ("calibrated", "appendix")


class MissingRestriction(KeyError):
    pass


class NonMonotone(ValueError):
    pass


@dataclass(frozen=True)
class CechRow:
    dims: Mapping[int, int]
    connecting: Mapping[int, QMatrix] = field(default_factory=dict)


@dataclass(frozen=True)
class FlagComplex:
    ambient_dim: int
    N: int
    betti: Mapping[int, int]
    restrictions: Mapping[tuple[int, int], QMatrix] | None = None
    cech: Mapping[int, CechRow] | None = None

    def __post_init__(self):
        if self.restrictions is not None:
            for (k, l), m in self.restrictions.items():
                if m.ncols != self.betti.get(k, 0):
                    raise DimensionMismatch(
                        f"restriction to Y{{{l}}} in degree {k} has {m.ncols} columns, H^{k}(Y) has dim {self.betti.get(k, 0)}"
                    )
                if l == 0 and m != QMatrix.identity(m.ncols):
                    raise ValueError("restriction to Y{0} must be the identity")

    def degrees(self) -> list[int]:
        return sorted(k for k, b in self.betti.items() if b)

    def restriction(self, k: int, l: int) -> QMatrix:
        b = self.betti.get(k, 0)
        if l == 0:
            return QMatrix.identity(b)
        if l > self.N:
            return QMatrix.zeros(0, b)
        if self.restrictions is None:
            raise MissingRestriction("flag complex has no kernel form")
        m = self.restrictions.get((k, l))
        if m is None:
            if b == 0:
                return QMatrix.zeros(0, 0)
            raise MissingRestriction(f"no restriction H^{k}(Y) -> H^{k}(Y{{{l}}})")
        return m

    def cech_row(self, k: int) -> ComplexRow:
        if self.cech is None:
            raise MissingRestriction("flag complex has no Čech form")
        row = self.cech.get(k, CechRow({}))
        levels = range(self.N, -1, -1)
        nodes = [GradedSpace.plain(row.dims.get(l, 0), f"c{l}_") for l in levels]
        diffs = []
        for l in range(self.N, 0, -1):
            m = row.connecting.get(l)
            if m is None:
                m = QMatrix.zeros(row.dims.get(l - 1, 0), row.dims.get(l, 0))
            diffs.append(m)
        return ComplexRow(nodes, diffs, start=-self.N)

    def cech_degrees(self) -> list[int]:
        if self.cech is None:
            return []
        return sorted(k for k, r in self.cech.items() if any(r.dims.values()))


@dataclass(frozen=True)
class Filtration:
    """Nested dims P_b H^k for every degree, stored for b in [k-1, k+n+1]."""

    tag: str
    dims: Mapping[int, Mapping[int, int]]

    def level(self, k: int, b: int) -> int:
        levels = self.dims.get(k, {})
        if not levels:
            return 0
        if b < min(levels):
            return 0
        if b > max(levels):
            return levels[max(levels)]
        return levels[b]

    def graded(self) -> dict[tuple[int, int], int]:
        """(degree s, perverse index rho) -> dim Gr^P_rho H^s."""
        out = {}
        for k, levels in self.dims.items():
            for b in sorted(levels):
                g = levels[b] - self.level(k, b - 1)
                if g:
                    out[(k, b)] = g
        return dict(sorted(out.items()))


def flag_filtration(fc: FlagComplex, convention: str = "calibrated") -> Filtration:
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    shift = 1 if convention == "calibrated" else 0
    n = fc.ambient_dim
    dims: dict = {}
    for k in fc.degrees():
        b_k = fc.betti[k]
        levels = {}
        for i in range(-1, max(n, fc.N) + 2):
            l = i + shift
            if l < 0:
                levels[k + i] = 0
            else:
                levels[k + i] = b_k - rank(fc.restriction(k, l))
        dims[k] = levels
    return Filtration("P", dims)


def perverse_e2(fc: FlagComplex, k: int) -> dict[int, int]:
    """Gr^P_k H^s for each degree s, read off the Čech row k."""
    row = fc.cech_row(k)
    out = {}
    for idx, blocks in enumerate(page_homology(row, blockwise=False)):
        l = -(row.start + idx)
        d = sum(blocks.values())
        if d:
            out[k - l] = d
    return out


def cech_graded(fc: FlagComplex) -> dict[tuple[int, int], int]:
    out = {}
    for k in fc.cech_degrees():
        for s, d in perverse_e2(fc, k).items():
            out[(s, k)] = d
    return dict(sorted(out.items()))


def oracle_compare(fc: FlagComplex, convention: str = "calibrated") -> CheckResult:
    """Flag-kernel graded dims against Čech E2 dims, cell by cell."""
    problems, warnings = [], []
    try:
        flag = flag_filtration(fc, convention).graded()
        cech = cech_graded(fc)
    except Exception as exc:  # report-valued by contract
        return CheckResult(False, [f"{type(exc).__name__}: {exc}"])
    for key in sorted(set(flag) | set(cech)):
        s, rho = key
        a, b = flag.get(key, 0), cech.get(key, 0)
        if a != b:
            problems.append(f"k={s} level={rho}: flag {a} vs cech {b}")
    euler_y = sum((-1) ** k * b for k, b in fc.betti.items())
    euler_e1 = 0
    for k in fc.cech_degrees():
        for l, d in fc.cech[k].dims.items():
            euler_e1 += (-1) ** (k - l) * d
    if fc.cech is not None and euler_y != euler_e1:
        warnings.append(f"Euler characteristic of the Čech E1 page ({euler_e1}) differs from that of Y ({euler_y})")
    return CheckResult(not problems, problems, warnings, {"flag": flag, "cech": cech})


def filtration_length_check(fc: FlagComplex, convention: str = "calibrated") -> CheckResult:
    filt = flag_filtration(fc, convention)
    n = fc.ambient_dim
    problems = []
    for k in fc.degrees():
        if filt.level(k, k - 1) != 0:
            problems.append(f"P_{k - 1} H^{k} has dim {filt.level(k, k - 1)}, expected 0")
        if filt.level(k, k + n) != fc.betti[k]:
            problems.append(f"P_{k + n} H^{k} has dim {filt.level(k, k + n)}, expected {fc.betti[k]}")
        levels = filt.dims[k]
        bs = sorted(levels)
        for lo, hi in zip(bs, bs[1:]):
            if levels[hi] < levels[lo]:
                problems.append(f"P H^{k} decreases between levels {lo} and {hi}")
    return CheckResult.from_problems(problems)


def de_rham_relabel(image_dims: Mapping[int, Mapping[int, int]], reference: Filtration | None = None) -> CheckResult:
    """Tag supplied image dims as the filtration G^f; compare with ``reference`` if given."""
    dims = {}
    for k, levels in image_dims.items():
        bs = sorted(levels)
        for lo, hi in zip(bs, bs[1:]):
            if levels[hi] < levels[lo]:
                raise NonMonotone(f"G^f dims in degree {k} drop from {levels[lo]} to {levels[hi]} at level {hi}")
        dims[int(k)] = {int(b): int(d) for b, d in levels.items()}
    filt = Filtration("G^f", dims)
    problems = []
    if reference is not None:
        for k in sorted(set(dims) | set(reference.dims)):
            bs = set(dims.get(k, {})) | set(reference.dims.get(k, {}))
            for b in sorted(bs):
                g, p = filt.level(k, b), reference.level(k, b)
                if g != p:
                    problems.append(f"degree {k} level {b}: G^f {g} vs P {p}")
    return CheckResult(not problems, problems, [], {"filtration": filt})


@dataclass(frozen=True)
class CupRing:
    """Graded ring H^*(Y) with explicit structure constants.

    ``products[(k1, i, k2, j)]`` is the coordinate vector of e_i ∪ e_j in
    H^{k1+k2}; missing products are zero.  ``spans[(k, b)]`` spans P_b H^k;
    levels between supplied ones inherit the nearest lower level.
    """

    basis: Mapping[int, Sequence[str]]
    products: Mapping[tuple[int, int, int, int], Sequence] = field(default_factory=dict)
    spans: Mapping[tuple[int, int], Sequence[Sequence]] = field(default_factory=dict)

    def dim(self, k: int) -> int:
        return len(self.basis.get(k, ()))

    def __post_init__(self):
        for (k1, i, k2, j), vec in self.products.items():
            if len(vec) != self.dim(k1 + k2) or i >= self.dim(k1) or j >= self.dim(k2):
                raise DimensionMismatch(f"product entry {(k1, i, k2, j)} does not fit the basis")
        for (k, b), vecs in self.spans.items():
            for v in vecs:
                if len(v) != self.dim(k):
                    raise DimensionMismatch(f"span vector for P_{b} H^{k} has length {len(v)}")
        # graded commutativity of the structure constants
        for (k1, i, k2, j), vec in self.products.items():
            other = self.products.get((k2, j, k1, i))
            sign = (-1) ** (k1 * k2)
            expect = [sign * x for x in vec]
            got = list(other) if other is not None else [0] * len(vec)
            if [_q(x) for x in got] != [_q(x) for x in expect]:
                raise ValueError(f"structure constants are not graded-commutative at {(k1, i, k2, j)}")

    def span(self, k: int, b: int) -> list:
        best = None
        for (kk, bb) in self.spans:
            if kk == k and bb <= b and (best is None or bb > best):
                best = bb
        return [] if best is None else [list(v) for v in self.spans[(k, best)]]

    def cup(self, k1: int, v: Sequence, k2: int, u: Sequence) -> list:
        out = [0] * self.dim(k1 + k2)
        for i, x in enumerate(v):
            if not x:
                continue
            for j, y in enumerate(u):
                if not y:
                    continue
                prod = self.products.get((k1, i, k2, j))
                if prod is None:
                    continue
                for t, c in enumerate(prod):
                    out[t] += _q(x) * _q(y) * _q(c)
        return out


def multiplicativity_check(ring: CupRing, N: int) -> CheckResult:
    """P_{k1+a1} ∪ P_{k2+a2} ⊂ P_{k1+k2+min(a1,a2)} over all spanning vectors."""
    degrees = sorted(k for k in ring.basis if ring.dim(k))
    checked = 0
    for k1 in degrees:
        for k2 in degrees:
            k = k1 + k2
            if not ring.dim(k):
                continue
            for a1 in range(N + 1):
                left = ring.span(k1, k1 + a1)
                if not left:
                    continue
                for a2 in range(N + 1):
                    right = ring.span(k2, k2 + a2)
                    target = ring.span(k, k + min(a1, a2))
                    for v in left:
                        for u in right:
                            w = ring.cup(k1, v, k2, u)
                            checked += 1
                            if not subspace_contains(target, [w], ring.dim(k)):
                                return CheckResult(
                                    False,
                                    [
                                        f"P_{k1 + a1} H^{k1} ∪ P_{k2 + a2} H^{k2} leaves P_{k + min(a1, a2)} H^{k}"
                                        f" (a1={a1}, a2={a2})"
                                    ],
                                    [],
                                    {"violation": {"k1": k1, "a1": a1, "k2": k2, "a2": a2}, "checked": checked},
                                )
    return CheckResult(True, [], [], {"checked": checked})


def filtration_dims_from_spans(ring: CupRing, n: int) -> dict[int, dict[int, int]]:
    out = {}
    for k in sorted(ring.basis):
        if ring.dim(k):
            out[k] = {b: span_rank(ring.span(k, b), ring.dim(k)) for b in range(k - 1, k + n + 1)}
    return out
