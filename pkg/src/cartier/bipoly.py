"""Sparse bivariate polynomials over a ``FieldContext``.

A ``BiPoly`` is a map ``(i, j) -> c`` meaning ``sum c * x^i * y^j`` with
coefficients in the integer encoding of ``gf_tower``.  Zero coefficients are
never stored, so equality is plain dict equality.
"""

from __future__ import annotations

from math import comb
from typing import Iterable, Mapping

from .errors import ContextMismatch, NotAPthPower
from .gf_tower import FieldContext

Exponent = tuple[int, int]


class BiPoly:
    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: FieldContext, terms: Mapping[Exponent, int] | None = None):
        self.ctx = ctx
        self.terms: dict[Exponent, int] = {k: v for k, v in (terms or {}).items() if v}

    # -- constructors ------------------------------------------------------
    @classmethod
    def monomial(cls, ctx: FieldContext, i: int, j: int, c: int = 1) -> "BiPoly":
        return cls(ctx, {(i, j): c})

    @classmethod
    def const(cls, ctx: FieldContext, c: int) -> "BiPoly":
        return cls(ctx, {(0, 0): c})

    @classmethod
    def x(cls, ctx: FieldContext) -> "BiPoly":
        return cls(ctx, {(1, 0): 1})

    @classmethod
    def y(cls, ctx: FieldContext) -> "BiPoly":
        return cls(ctx, {(0, 1): 1})

    @classmethod
    def from_ints(cls, ctx: FieldContext, terms: Mapping[Exponent, int]) -> "BiPoly":
        """Terms with signed prime-field integer coefficients."""
        return cls(ctx, {k: ctx.from_int(v) for k, v in terms.items()})

    @classmethod
    def from_univariate(cls, ctx: FieldContext, coeffs: Iterable[int]) -> "BiPoly":
        return cls(ctx, {(i, 0): c for i, c in enumerate(coeffs)})

    # -- queries -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coeff(self, i: int, j: int) -> int:
        return self.terms.get((i, j), 0)

    @property
    def x_degree(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    @property
    def y_degree(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        """Graded lex order: total degree descending, then x-exponent descending."""
        return sorted(self.terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self.ctx == other.ctx and self.terms == other.terms
        if isinstance(other, int):
            return self == BiPoly.const(self.ctx, self.ctx.from_int(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    def __repr__(self):
        return f"BiPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for (i, j), c in self.sorted_terms():
            mono = "*".join(
                part for part in (
                    "" if i == 0 else ("x" if i == 1 else f"x^{i}"),
                    "" if j == 0 else ("y" if j == 1 else f"y^{j}"),
                ) if part
            )
            cs = self.ctx.format(c)
            if not mono:
                out.append(cs)
            elif c == 1:
                out.append(mono)
            else:
                out.append(f"{cs}*{mono}")
        return " + ".join(out)

    # -- arithmetic --------------------------------------------------------
    def _check(self, other: "BiPoly") -> None:
        if self.ctx != other.ctx:
            raise ContextMismatch("polynomials live over different fields")

    def __add__(self, other: "BiPoly") -> "BiPoly":
        self._check(other)
        add = self.ctx.add
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = add(out.get(k, 0), v)
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return BiPoly(self.ctx, out)

    def __neg__(self) -> "BiPoly":
        neg = self.ctx.neg
        return BiPoly(self.ctx, {k: neg(v) for k, v in self.terms.items()})

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        if isinstance(other, int):
            return self.scale(self.ctx.from_int(other))
        self._check(other)
        ctx = self.ctx
        add, mul = ctx.add, ctx.mul
        out: dict[Exponent, int] = {}
        for (i, j), c in self.terms.items():
            for (k, l), d in other.terms.items():
                key = (i + k, j + l)
                out[key] = add(out.get(key, 0), mul(c, d))
        return BiPoly(ctx, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BiPoly":
        if n < 0:
            raise ValueError("negative exponent")
        result = BiPoly.const(self.ctx, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: int) -> "BiPoly":
        mul = self.ctx.mul
        return BiPoly(self.ctx, {k: mul(c, v) for k, v in self.terms.items()})

    def shift(self, di: int, dj: int) -> "BiPoly":
        """Multiply by the monomial x^di y^dj."""
        return BiPoly(self.ctx, {(i + di, j + dj): c for (i, j), c in self.terms.items()})

    def frobenius(self) -> "BiPoly":
        """The p-th power, computed termwise (exact in characteristic p)."""
        p, frob = self.ctx.p, self.ctx.frobenius_p
        return BiPoly(self.ctx, {(i * p, j * p): frob(c) for (i, j), c in self.terms.items()})


def add(a: BiPoly, b: BiPoly) -> BiPoly:
    return a + b


def mul(a: BiPoly, b: BiPoly) -> BiPoly:
    return a * b


def pow(a: BiPoly, n: int) -> BiPoly:  # noqa: A001
    return a**n


def nabla(t: BiPoly, p: int | None = None) -> BiPoly:
    """Mixed (p-1, p-1) derivative: keep exponents that are p-1 mod p and
    drop them to the multiple of p just below."""
    p = t.ctx.p if p is None else p
    q = p - 1
    return BiPoly(t.ctx, {
        (i - q, j - q): c for (i, j), c in t.terms.items() if i % p == q and j % p == q
    })


def pth_root_poly(t: BiPoly, p: int | None = None) -> BiPoly:
    p = t.ctx.p if p is None else p
    root = t.ctx.pth_root
    out = {}
    for (i, j), c in t.terms.items():
        if i % p or j % p:
            raise NotAPthPower(f"term x^{i}*y^{j} is not a p-th power (p={p})")
        out[(i // p, j // p)] = root(c)
    return BiPoly(t.ctx, out)


def reduce_y(t: BiPoly, D: int, g: BiPoly) -> BiPoly:
    """Normal form of ``t`` modulo ``y^D - g(x, y)`` with y-degree below D."""
    if g.y_degree >= D:
        raise ValueError("relation must have y-degree below D")
    if t.y_degree < D:
        return t
    ctx = t.ctx
    add, mul = ctx.add, ctx.mul
    work = dict(t.terms)
    # top y-power first; each substitution strictly lowers it
    while True:
        top = max((j for _, j in work), default=-1)
        if top < D:
            break
        for (i, j) in [k for k in work if k[1] == top]:
            c = work.pop((i, j))
            for (a, b), d in g.terms.items():
                key = (i + a, j - D + b)
                v = add(work.get(key, 0), mul(c, d))
                if v:
                    work[key] = v
                else:
                    work.pop(key, None)
    return BiPoly(ctx, work)


def expand_AS(curve, i: int, j: int) -> BiPoly:
    """(y^sqrt_q + y - x^m)^(p-1) * x^i y^j in closed form.

    Every (h, k) pair contributes a distinct monomial, so no coefficients
    collide and each term is binom(p-1, h) binom(h, k) (-1)^(p-1-h).
    """
    ctx, p, sq, m = curve.field, curve.p, curve.sqrt_q, curve.m
    terms = {}
    for h in range(p):
        for k in range(h + 1):
            c = comb(p - 1, h) * comb(h, k) * (-1) ** (p - 1 - h)
            terms[((p - 1 - h) * m + i, k * sq + h - k + j)] = ctx.from_int(c)
    return BiPoly(ctx, terms)
