"""Both sides of the mirror P=W statements and their checks."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Mapping

from .checks import CheckResult
from .hodge import (
    HypothesisFailed,
    MixedHodgeTable,
    PerverseHodgeTable,
    PerverseRule,
    PWTable,
    assemble_pw,
    is_hodge_tate,
    pw_polynomial,
)
from .polyalg import LaurentPoly, mirror_transform


@dataclass(frozen=True)
class MirrorPair:
    n: int
    u_side: PWTable
    v_side: PWTable

    def __post_init__(self):
        for side, t in (("U", self.u_side), ("V", self.v_side)):
            if t.ambient_dim != self.n:
                raise ValueError(f"{side} side has dimension {t.ambient_dim}, pair has {self.n}")


def check_mirror_pw(pair: MirrorPair) -> LaurentPoly:
    """mirror_transform(PW_U, n) - PW_V; zero means the identity holds."""
    return mirror_transform(pw_polynomial(pair.u_side), pair.n) - pw_polynomial(pair.v_side)


def mirror_table(T: PWTable) -> PWTable:
    """The PW table whose polynomial is mirror_transform(pw(T), n), when it is one."""
    n = T.ambient_dim
    out = {}
    for (s, a, b, r), d in T.dims.items():
        out[(n + s - 2 * a, n - a, r, b)] = d
    return PWTable(n, out, "raw")


def one_sided_check(U: MixedHodgeTable, V: PerverseHodgeTable, n: int | None = None) -> CheckResult:
    """dim Gr_F^q Gr^W_{p+q+r} H^{p+q}(U) = dim Gr_F^{n-q} Gr^P_{n+p-q+r} H^{n+p-q}(V) for all (p,q,r)."""
    if n is None:
        n = U.ambient_dim
    if V.ambient_dim != n:
        return CheckResult(False, [f"dimensions differ: {n} vs {V.ambient_dim}"])
    keys = set()
    for (s, q, w) in U.dims:
        keys.add((s - q, q, w - s))
    for (s2, a, rho) in V.dims:
        q = n - a
        p = s2 - n + q
        keys.add((p, q, rho - s2))
    problems = []
    for p, q, r in sorted(keys):
        left = U.dims.get((p + q, q, p + q + r), 0)
        right = V.dims.get((n + p - q, n - q, n + p - q + r), 0)
        if left != right:
            problems.append(f"(p,q,r)=({p},{q},{r}): U {left} vs V {right}")
    return CheckResult(not problems, problems, [], {"cells": len(keys)})


def graded_correspondence_check(
    U: MixedHodgeTable, Y_perverse: Mapping[tuple[int, int], int], n: int, N: int
) -> CheckResult:
    """Sum over p - q = a of Gr_F^q Gr^W_{p+q+i} H^{p+q}(U) against Gr^P_{n+a+i} H^{n+a}(Y), 0 <= i <= N.

    ``Y_perverse`` maps (degree, perverse index) to dim Gr^P.
    """
    lhs: dict[tuple[int, int], int] = {}
    for (s, q, w), d in U.dims.items():
        a, i = s - 2 * q, w - s
        lhs[(a, i)] = lhs.get((a, i), 0) + d
    rhs: dict[tuple[int, int], int] = {}
    for (s, rho), d in Y_perverse.items():
        a, i = s - n, rho - s
        rhs[(a, i)] = rhs.get((a, i), 0) + d
    problems, skipped = [], []
    for a, i in sorted(set(lhs) | set(rhs)):
        if not 0 <= i <= N:
            skipped.append((a, i))
            continue
        if lhs.get((a, i), 0) != rhs.get((a, i), 0):
            problems.append(f"(a,i)=({a},{i}): U {lhs.get((a, i), 0)} vs Y {rhs.get((a, i), 0)}")
    warnings = [f"cell (a,i)={c} lies outside 0 <= i <= {N} and was not compared" for c in skipped]
    return CheckResult(not problems, problems, warnings)


def hodge_tate_pw(Y_weight: MixedHodgeTable, perverse_rule: PerverseRule) -> PWTable:
    """PW table of a Hodge-Tate space, reading the Hodge index off the weight as w/2."""
    ok, cell = is_hodge_tate(Y_weight)
    if not ok:
        raise HypothesisFailed(f"table is not Hodge-Tate at (s,p,w)={cell}", None, cell)
    return assemble_pw(Y_weight, perverse_rule)


def torus_pw(n: int) -> PWTable:
    return PWTable(n, {(s, s, s, n - s): comb(n, s) for s in range(n + 1)})


def torus_perverse(n: int) -> PerverseHodgeTable:
    return PerverseHodgeTable(n, {(s, s, n): comb(n, s) for s in range(n + 1)})
