"""Integer Laurent polynomials in the four formal variables (u, t, w, p).

A polynomial is an immutable map from exponent 4-tuples to nonzero integer
coefficients.  Slot order is always ``(u, t, w, p)``; the mirror substitution
swaps the *values* placed in the w and p slots, never the slot order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

VARIABLES = ("u", "t", "w", "p")

Exponent = tuple[int, int, int, int]


class NonMonomialNegativePower(ValueError):
    """A negative exponent would require inverting a non-monomial image."""


@dataclass(frozen=True)
class LaurentPoly:
    terms: tuple[tuple[Exponent, int], ...] = ()

    def __init__(self, terms: Mapping[Exponent, int] | Iterable[tuple[Exponent, int]] = ()):
        acc: dict[Exponent, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != 4:
                raise ValueError(f"exponent must have 4 slots, got {exp!r}")
            acc[exp] = acc.get(exp, 0) + int(c)
        canon = tuple(sorted(((e, c) for e, c in acc.items() if c != 0), reverse=True))
        object.__setattr__(self, "terms", canon)

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({(0, 0, 0, 0): 1})

    @classmethod
    def monomial(cls, u: int = 0, t: int = 0, w: int = 0, p: int = 0, coeff: int = 1) -> "LaurentPoly":
        return cls({(u, t, w, p): coeff})

    @classmethod
    def var(cls, name: str) -> "LaurentPoly":
        exp = [0, 0, 0, 0]
        exp[VARIABLES.index(name)] = 1
        return cls({tuple(exp): 1})

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        return _Parser(text).parse()

    # -- queries ------------------------------------------------------
    def as_dict(self) -> dict[Exponent, int]:
        return dict(self.terms)

    def coefficient(self, exp: Exponent) -> int:
        return self.as_dict().get(tuple(exp), 0)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def evaluate(self, u=1, t=1, w=1, p=1):
        """Evaluate at numeric values (ints or Fractions)."""
        total = 0
        vals = (u, t, w, p)
        for exp, c in self.terms:
            term = c
            for v, e in zip(vals, exp):
                term = term * v**e
            total += term
        return total

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        return add(self, other)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return add(self, other.scale(-1))

    def __neg__(self) -> "LaurentPoly":
        return self.scale(-1)

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            return self.scale(other)
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_monomial() or abs(self.terms[0][1]) != 1:
                raise NonMonomialNegativePower("only unit monomials can be inverted")
            exp, c = self.terms[0]
            return LaurentPoly({tuple(-e * -k for e in exp): c ** (-k)})
        result = LaurentPoly.one()
        base = self
        while k:
            if k & 1:
                result = mul(result, base)
            base = mul(base, base)
            k >>= 1
        return result

    def scale(self, c: int) -> "LaurentPoly":
        return LaurentPoly({e: c * v for e, v in self.terms})

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({render(self)!r})"


def add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    acc = a.as_dict()
    for e, c in b.terms:
        acc[e] = acc.get(e, 0) + c
    return LaurentPoly(acc)


def mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    acc: dict[Exponent, int] = {}
    for ea, ca in a.terms:
        for eb, cb in b.terms:
            e = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3])
            acc[e] = acc.get(e, 0) + ca * cb
    return LaurentPoly(acc)


def substitute(P: LaurentPoly, images: tuple[LaurentPoly, LaurentPoly, LaurentPoly, LaurentPoly]) -> LaurentPoly:
    """Simultaneously replace (u, t, w, p) by ``images`` and expand.

    Negative exponents are allowed only where the image is a unit monomial.
    """
    if len(images) != 4:
        raise ValueError("need exactly four images (u, t, w, p)")
    cache: dict[tuple[int, int], LaurentPoly] = {}

    def power(slot: int, e: int) -> LaurentPoly:
        key = (slot, e)
        if key not in cache:
            img = images[slot]
            if e < 0 and (not img.is_monomial() or abs(img.terms[0][1]) != 1):
                raise NonMonomialNegativePower(
                    f"{VARIABLES[slot]}^{e} needs the inverse of non-monomial {render(img)}"
                )
            cache[key] = img**e
        return cache[key]

    total = LaurentPoly()
    for exp, c in P.terms:
        term = LaurentPoly({(0, 0, 0, 0): c})
        for slot, e in enumerate(exp):
            if e:
                term = mul(term, power(slot, e))
        total = add(total, term)
    return total


# u -> u^-1 t^-2, t -> t, w-slot receives p, p-slot receives w
MIRROR_IMAGES = (
    LaurentPoly.monomial(u=-1, t=-2),
    LaurentPoly.var("t"),
    LaurentPoly.var("p"),
    LaurentPoly.var("w"),
)


def mirror_transform(P: LaurentPoly, n: int) -> LaurentPoly:
    """``P(u^-1 t^-2, t, p, w) * u^n t^n``, the left side of the mirror identity."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return mul(substitute(P, MIRROR_IMAGES), LaurentPoly.monomial(u=n, t=n))


def render(P: LaurentPoly) -> str:
    """Canonical text form, e.g. ``u^2*t^2*w^2 + 2*u*t*w*p + p^2``."""
    if P.is_zero():
        return "0"
    out = []
    for i, (exp, c) in enumerate(P.terms):
        factors = []
        for name, e in zip(VARIABLES, exp):
            if e == 1:
                factors.append(name)
            elif e != 0:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = f"{mag}*" + "*".join(factors)
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([utwp])|(\*\*|[-+*^()]))")


class _Parser:
    """Small recursive-descent reader accepting implicit products like ``utw``."""

    def __init__(self, text: str):
        self.tokens: list[tuple[str, str]] = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
            num, var, op = m.groups()
            if num is not None:
                self.tokens.append(("num", num))
            elif var is not None:
                self.tokens.append(("var", var))
            else:
                self.tokens.append(("op", "^" if op == "**" else op))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> LaurentPoly:
        if not self.tokens:
            raise ValueError("empty polynomial")
        result = self.expr()
        if self.i != len(self.tokens):
            raise ValueError(f"trailing tokens in polynomial: {self.tokens[self.i:]}")
        return result

    def expr(self) -> LaurentPoly:
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        result = self.term().scale(sign)
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                result = result + t if val == "+" else result - t
            else:
                return result

    def term(self) -> LaurentPoly:
        result = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                result = mul(result, self.factor())
            elif kind in ("num", "var") or (kind == "op" and val == "("):
                result = mul(result, self.factor())
            else:
                return result

    def factor(self) -> LaurentPoly:
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            sign = 1
            kind, val = self.peek()
            if kind == "op" and val == "-":
                self.take()
                sign = -1
            kind, val = self.take()
            if kind != "num":
                raise ValueError("exponent must be an integer")
            return base ** (sign * int(val))
        return base

    def atom(self) -> LaurentPoly:
        kind, val = self.take()
        if kind == "num":
            return LaurentPoly({(0, 0, 0, 0): int(val)})
        if kind == "var":
            return LaurentPoly.var(val)
        if kind == "op" and val == "(":
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("unbalanced parenthesis")
            return inner
        raise ValueError(f"unexpected token {val!r}")
