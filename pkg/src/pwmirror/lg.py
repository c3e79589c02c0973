"""Landau-Ginzburg combinatorics: discriminant loci, line counts, gluing and KKP tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .checks import CheckResult
from .hodge import HypothesisFailed, MixedHodgeTable, is_hodge_tate

VARIANTS = ("two_component", "general")

FLAVORS = (
    "f(Y,w)",
    "f(Y,h)",
    "h(Y,h)",
    "f(Y,{h_i}_I)",
    "h(Y,{h_i}_I)",
    "f(Y,h_I)",
    "h(Y,h_I)",
    "f(Y,h_(l))",
    "h(Y,h_(l))",
)


class VariantMismatch(ValueError):
    pass


class InvalidSpec(ValueError):
    pass


@dataclass(frozen=True)
class LGSpec:
    n: int
    degrees: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(k) for k in self.degrees))
        if not self.degrees or any(k <= 0 for k in self.degrees):
            raise InvalidSpec("degrees must be positive")
        if sum(self.degrees) != self.n + 1:
            raise InvalidSpec(f"degrees {list(self.degrees)} sum to {sum(self.degrees)}, expected n+1 = {self.n + 1}")

    @property
    def N(self) -> int:
        return len(self.degrees)


def variable_names(N: int) -> list[str]:
    if N == 1:
        return ["a"]
    if N == 2:
        return ["a", "b"]
    return [f"a{i}" for i in range(1, N + 1)]


@dataclass(frozen=True)
class DiscriminantLocus:
    """Main component prod a_j^{k_j} = constant, plus hyperplanes {a_j = 0}.

    ``constant`` is None when it is only known symbolically.
    """

    exponents: tuple[int, ...]
    constant: int | None
    coordinate: tuple[int, ...] = ()
    variant: str = "general"
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if any(k <= 0 for k in self.exponents):
            raise InvalidSpec("exponents must be positive")

    def main_equation(self) -> str:
        names = variable_names(len(self.exponents))
        mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(names, self.exponents))
        rhs = "c" if self.constant is None else str(self.constant)
        return f"{mono} = {rhs}"

    def components(self) -> list[str]:
        names = variable_names(len(self.exponents))
        out = [self.main_equation()]
        if self.coordinate:
            if self.variant == "two_component":
                out.append("*".join(names[j - 1] for j in self.coordinate) + " = 0")
            else:
                out.extend(f"{names[j - 1]} = 0" for j in self.coordinate)
        return out

    def render(self) -> str:
        return " ∪ ".join("{" + c + "}" for c in self.components())


def discriminant(spec: LGSpec, variant: str = "general") -> DiscriminantLocus:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    ks = spec.degrees
    if variant == "two_component":
        if spec.N != 2:
            raise VariantMismatch(f"two_component needs exactly two potentials, got {spec.N}")
        n1, n2 = ks
        const = n1**n1 * n2**n2
        notes: tuple[str, ...] = ()
        if n1 > 1 and n2 > 1:
            coord = (1, 2)
            notes = ("general variant has no coordinate components for these degrees",)
        elif n1 == 1 and n2 > 1:
            coord = (1,)
        elif n1 > 1 and n2 == 1:
            coord = (2,)
        else:
            coord = (1, 2)
            notes = ("degrees (1,1) fall outside the three-case formula; coordinate components follow the k_j = 1 rule",)
        return DiscriminantLocus(ks, const, coord, variant, notes)
    coord = tuple(j for j, k in enumerate(ks, start=1) if k == 1)
    return DiscriminantLocus(ks, None, coord, variant)


def line_counts(locus: DiscriminantLocus, line: Mapping | str) -> int:
    """Intersection points of a generic line of the given kind with the main component.

    ``line`` is ``"anti_diagonal"``, ``{"kind": "coordinate", "vary": j}``
    (only a_j moves), or for two variables ``{"kind": "coordinate", "fixed": j}``.
    """
    if isinstance(line, str):
        line = {"kind": line}
    kind = line.get("kind")
    ks = locus.exponents
    if len(ks) == 1:
        return ks[0]
    if kind == "anti_diagonal":
        return sum(ks)
    if kind == "coordinate":
        if "vary" in line:
            j = int(line["vary"])
        elif "fixed" in line:
            if len(ks) != 2:
                raise ValueError("'fixed' picks a unique moving coordinate only for two variables")
            j = 3 - int(line["fixed"])
        else:
            raise ValueError("coordinate line needs 'vary' or 'fixed'")
        if not 1 <= j <= len(ks):
            raise ValueError(f"coordinate index {j} out of range")
        return ks[j - 1]
    raise ValueError(f"unknown line kind {kind!r}")


def gluing_check(dims: Mapping[str, Mapping[int, int]]) -> CheckResult:
    """dim H^k(Y_sm, Y_12) = dim H^k(Y_1, Y_12) + dim H^k(Y_2, Y_12) in every degree."""
    sm, one, two = (dims.get(key, {}) for key in ("sm", "1", "2"))
    problems = []
    for k in sorted(set(sm) | set(one) | set(two)):
        a, b, c = sm.get(k, 0), one.get(k, 0), two.get(k, 0)
        if a != b + c:
            problems.append(f"degree {k}: {a} != {b} + {c}")
    return CheckResult.from_problems(problems)


HodgeNumbers = Mapping[tuple[int, int], int]


def kkp_check(tables: Mapping[str, HodgeNumbers], flavor_pair: Sequence[str]) -> CheckResult:
    left, right = flavor_pair
    missing = [f for f in (left, right) if f not in tables]
    if missing:
        return CheckResult(False, [f"missing table {f}" for f in missing])
    A, B = tables[left], tables[right]
    problems = []
    for key in sorted(set(A) | set(B)):
        if A.get(key, 0) != B.get(key, 0):
            problems.append(f"(p,q)={key}: {left} {A.get(key, 0)} vs {right} {B.get(key, 0)}")
    return CheckResult.from_problems(problems)


def hodge_tate_kkp(
    limiting: MixedHodgeTable,
    witnesses: Sequence[tuple[str, MixedHodgeTable]],
    flavor: str = "h(Y,h)",
) -> dict[str, dict[tuple[int, int], int]]:
    """h^{p,q} = dim Gr^W_{2p} H^{p+q} of the limiting table, if every witness is Hodge-Tate."""
    for name, table in witnesses:
        ok, cell = is_hodge_tate(table)
        if not ok:
            raise HypothesisFailed(f"witness {name!r} is not Hodge-Tate at (s,p,w)={cell}", name, cell)
    out: dict[tuple[int, int], int] = {}
    for (s, _, w), d in limiting.dims.items():
        if w % 2:
            continue
        p = w // 2
        key = (p, s - p)
        out[key] = out.get(key, 0) + d
    return {flavor: dict(sorted(out.items()))}
