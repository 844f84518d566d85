"""Curve descriptors, holomorphic differential bases and point counts.

Three families are modelled:

* ``ArtinSchreierCurve`` -- y^sqrt_q + y = x^m with m = (sqrt_q + 1)/t,
  considered over F_{q^2}, q = p^s.
* ``HyperellipticCurve`` -- y^2 = f(x) with f squarefree over F_p.
* ``GeneralizedHermitianCurve`` -- y^m = x + x^l + ... + x^(l^(2r-1)) over
  F_{l^(2r)}; for m = 2 it converts to a ``HyperellipticCurve``.

Every curve exposes a ``plane_model()`` of the shape y^D = g(x, y), which is
all the Cartier engine needs.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import cached_property
from math import gcd, isqrt

import numpy as np

from .bipoly import BiPoly
from .errors import BadDivisor, BadM, FieldTooLarge, NotSquarefree, OddS
from .gf_tower import (
    ENUMERATION_LIMIT,
    FieldContext,
    _poly_gcd,
    build_field,
    check_characteristic,
)

BASIS_MODES = ("valuation", "paper")


@dataclass(frozen=True)
class PlaneCurve:
    """Affine model F = y^D - g(x, y) = 0 with deg_y g < D."""

    field: FieldContext
    y_degree: int
    y_relation: BiPoly

    @property
    def equation(self) -> BiPoly:
        return BiPoly.monomial(self.field, 0, self.y_degree) - self.y_relation

    def plane_model(self) -> "PlaneCurve":
        return self


@dataclass(frozen=True)
class ArtinSchreierCurve:
    p: int
    s: int
    t: int = 2

    def __post_init__(self):
        check_characteristic(self.p)
        if self.s < 2 or self.s % 2:
            raise OddS(f"s must be even and >= 2, got {self.s}")
        if self.t < 1 or (self.sqrt_q + 1) % self.t:
            raise BadDivisor(f"t={self.t} does not divide sqrt(q)+1={self.sqrt_q + 1}")

    @property
    def q(self) -> int:
        return self.p**self.s

    @property
    def sqrt_q(self) -> int:
        return self.p ** (self.s // 2)

    @property
    def m(self) -> int:
        return (self.sqrt_q + 1) // self.t

    @property
    def genus(self) -> int:
        return (self.sqrt_q - 1) * (self.m - 1) // 2

    @property
    def field_degree(self) -> int:
        return 2 * self.s

    @cached_property
    def field(self) -> FieldContext:
        return build_field(self.p, self.field_degree)

    def plane_model(self) -> PlaneCurve:
        ctx = self.field
        g = BiPoly.from_ints(ctx, {(self.m, 0): 1, (0, 1): -1})
        return PlaneCurve(ctx, self.sqrt_q, g)

    @property
    def equation(self) -> BiPoly:
        return self.plane_model().equation

    def pole_order(self, i: int, j: int) -> int:
        """-v_inf(x^i y^j): x has a pole of order sqrt_q, y of order m."""
        return self.sqrt_q * i + self.m * j

    def __str__(self):
        return f"A_{self.t}: y^{self.sqrt_q} + y = x^{self.m} (p={self.p}, s={self.s})"


def make_curve_At(p: int, s: int, t: int = 2) -> ArtinSchreierCurve:
    return ArtinSchreierCurve(p, s, t)


@dataclass(frozen=True)
class HyperellipticCurve:
    """y^2 = f(x), f given by prime-field integer coefficients (low -> high)."""

    p: int
    f: tuple[int, ...]
    e: int = 1

    def __post_init__(self):
        check_characteristic(self.p)
        f = list(self.f)
        while f and f[-1] % self.p == 0:
            f.pop()
        object.__setattr__(self, "f", tuple(c % self.p for c in f))
        if len(self.f) - 1 < 3:
            raise ValueError("deg f must be at least 3")
        df = [(k * c) % self.p for k, c in enumerate(self.f)][1:]
        if len(_poly_gcd(list(self.f), df, self.p)) > 1:
            raise NotSquarefree("f is not squarefree")

    @property
    def degree(self) -> int:
        return len(self.f) - 1

    @property
    def genus(self) -> int:
        return (self.degree + 1) // 2 - 1

    @cached_property
    def field(self) -> FieldContext:
        return build_field(self.p, self.e)

    def f_poly(self, ctx: FieldContext | None = None) -> BiPoly:
        return BiPoly.from_univariate(ctx or self.field, self.f)

    def plane_model(self) -> PlaneCurve:
        return PlaneCurve(self.field, 2, self.f_poly())

    @property
    def equation(self) -> BiPoly:
        return self.plane_model().equation

    def __str__(self):
        f = self.f_poly()
        return f"y^2 = {f} (p={self.p})"


@dataclass(frozen=True)
class GeneralizedHermitianCurve:
    """y^m = x + x^l + ... + x^(l^(2r-1)) over F_{l^(2r)}."""

    ell: int
    r: int
    m: int

    def __post_init__(self):
        check_characteristic(self.ell)
        if self.r < 1:
            raise ValueError("r must be >= 1")
        if self.m < 2 or (self.ell**self.r + 1) % self.m or gcd(self.m, self.ell) != 1:
            raise BadM(f"m={self.m} must be >= 2, divide l^r+1={self.ell**self.r + 1} and be prime to l")

    @property
    def p(self) -> int:
        return self.ell

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(self.ell**k for k in range(2 * self.r))

    @property
    def field_degree(self) -> int:
        return 2 * self.r

    @property
    def genus(self) -> int:
        return (self.m - 1) * (self.ell ** (2 * self.r - 1) - 1) // 2

    @property
    def expected_points(self) -> int:
        top = self.ell ** (2 * self.r - 1)
        return 1 + top + self.m * (self.ell - 1) * top

    def f_coeffs(self) -> tuple[int, ...]:
        f = [0] * (self.exponents[-1] + 1)
        for k in self.exponents:
            f[k] = 1
        return tuple(f)

    def hyperelliptic(self) -> HyperellipticCurve:
        if self.m != 2:
            raise BadM("only m = 2 gives a hyperelliptic curve")
        return HyperellipticCurve(self.ell, self.f_coeffs(), self.field_degree)

    def __str__(self):
        rhs = " + ".join("x" if k == 1 else f"x^{k}" for k in self.exponents)
        return f"y^{self.m} = {rhs} (l={self.ell}, r={self.r})"


def make_generalized_hermitian(ell: int, r: int, m: int) -> GeneralizedHermitianCurve:
    return GeneralizedHermitianCurve(ell, r, m)


# -- holomorphic differentials ---------------------------------------------

@dataclass(frozen=True)
class DifferentialBasis:
    """Ordered exponents (i, j); each stands for x^i y^j dx / F_y."""

    exponents: tuple[tuple[int, int], ...]
    mode: str

    def __len__(self):
        return len(self.exponents)

    def __iter__(self):
        return iter(self.exponents)

    def __getitem__(self, k):
        return self.exponents[k]

    def index(self) -> dict[tuple[int, int], int]:
        return {e: n for n, e in enumerate(self.exponents)}


def _lattice(wx: int, wy: int, bound: int, jmax: int | None = None) -> list[tuple[int, int]]:
    out = []
    if bound < 0:
        return out
    j = 0
    while wy * j <= bound and (jmax is None or j <= jmax):
        for i in range((bound - wy * j) // wx + 1):
            out.append((i, j))
        j += 1
    return out


def differential_basis(curve, mode: str = "valuation") -> DifferentialBasis:
    """Monomial basis of H^0(Omega^1).

    For an Artin-Schreier curve both modes order by the pole weight
    sqrt_q*i + m*j (ties by i).  ``valuation`` takes the monomials whose
    weight is at most 2g-2; ``paper`` swaps the two weights in the
    inequality.  Hyperelliptic curves use x^i dx/y, i < g.
    """
    if isinstance(curve, HyperellipticCurve):
        return DifferentialBasis(tuple((i, 0) for i in range(curve.genus)), "standard")
    if mode not in BASIS_MODES:
        raise ValueError(f"unknown basis mode {mode!r}")
    sq, m, g = curve.sqrt_q, curve.m, curve.genus
    if g == 0:
        return DifferentialBasis((), mode)
    if mode == "valuation":
        exps = _lattice(sq, m, 2 * g - 2, jmax=sq - 2)
    else:
        exps = _lattice(m, sq, 2 * g - 2)
    exps.sort(key=lambda e: (sq * e[0] + m * e[1], e[0]))
    return DifferentialBasis(tuple(exps), mode)


# -- rational points -------------------------------------------------------

@dataclass(frozen=True)
class PointSet:
    field: FieldContext
    points: tuple[tuple[int, int], ...]
    at_infinity: int

    @property
    def affine(self) -> int:
        return len(self.points)

    @property
    def total(self) -> int:
        return len(self.points) + self.at_infinity

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "y"])
        for x, y in self.points:
            w.writerow([" ".join(map(str, self.field.coeffs(x))),
                        " ".join(map(str, self.field.coeffs(y)))])
        return buf.getvalue()


def _solve_pairs(ctx: FieldContext, lhs_y: np.ndarray, rhs_x: np.ndarray) -> list[tuple[int, int]]:
    """All (x, y) with lhs_y[y] == rhs_x[x], sorted."""
    order = np.argsort(lhs_y, kind="stable")
    vals = lhs_y[order]
    pts = []
    for x in range(ctx.order):
        v = rhs_x[x]
        lo = np.searchsorted(vals, v, "left")
        hi = np.searchsorted(vals, v, "right")
        for y in sorted(order[lo:hi].tolist()):
            pts.append((x, y))
    return pts


def _enumeration_field(p: int, degree: int, default: FieldContext | None) -> FieldContext:
    if p**degree > ENUMERATION_LIMIT:
        raise FieldTooLarge(f"p^degree = {p**degree} exceeds {ENUMERATION_LIMIT}")
    if default is not None and default.e == degree:
        return default
    return build_field(p, degree)


def _eval_univariate(ctx: FieldContext, coeffs, xs: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(xs)
    for c in reversed(coeffs):
        acc = ctx.add_arr(ctx.mul_arr(acc, xs), np.full_like(xs, ctx.from_int(c)))
    return acc


def rational_points(curve, degree: int | None = None) -> PointSet:
    """Exhaustive affine points over F_{p^degree} plus places at infinity."""
    if isinstance(curve, ArtinSchreierCurve):
        degree = curve.field_degree if degree is None else degree
        ctx = _enumeration_field(curve.p, degree, curve.field)
        els = ctx.element_array()
        lhs = ctx.add_arr(ctx.pow_arr(els, curve.sqrt_q), els)
        rhs = ctx.pow_arr(els, curve.m)
        return PointSet(ctx, tuple(_solve_pairs(ctx, lhs, rhs)), 1)

    if isinstance(curve, GeneralizedHermitianCurve):
        degree = curve.field_degree if degree is None else degree
        ctx = _enumeration_field(curve.ell, degree, None)
        els = ctx.element_array()
        rhs = np.zeros_like(els)
        for k in curve.exponents:
            rhs = ctx.add_arr(rhs, ctx.pow_arr(els, k))
        lhs = ctx.pow_arr(els, curve.m)
        # gcd(m, deg f) = 1: a single place over x = infinity
        return PointSet(ctx, tuple(_solve_pairs(ctx, lhs, rhs)), 1)

    if isinstance(curve, HyperellipticCurve):
        degree = curve.e if degree is None else degree
        ctx = _enumeration_field(curve.p, degree, curve.field)
        els = ctx.element_array()
        lhs = ctx.mul_arr(els, els)
        rhs = _eval_univariate(ctx, curve.f, els)
        if curve.degree % 2:
            inf = 1
        else:
            lead = ctx.from_int(curve.f[-1])
            inf = 2 if ctx.pow(lead, (ctx.order - 1) // 2) == 1 else 0
        return PointSet(ctx, tuple(_solve_pairs(ctx, lhs, rhs)), inf)

    raise TypeError(f"cannot enumerate points on {type(curve).__name__}")


@dataclass(frozen=True)
class MaximalityReport:
    count: int
    field_size: int
    genus: int
    hasse_weil_upper: int
    hasse_weil_lower: int
    maximal: bool

    def as_dict(self) -> dict:
        return {
            "count": self.count,
            "field_size": self.field_size,
            "genus": self.genus,
            "hasse_weil_upper": self.hasse_weil_upper,
            "hasse_weil_lower": self.hasse_weil_lower,
            "maximal": self.maximal,
        }


def is_maximal(curve, degree: int | None = None) -> MaximalityReport:
    pts = rational_points(curve, degree)
    ell = pts.field.order
    if pts.field.e % 2:
        raise ValueError("maximality needs a square field size (even degree)")
    root = isqrt(ell)
    g = curve.genus
    upper = ell + 1 + 2 * g * root
    return MaximalityReport(pts.total, ell, g, upper, ell + 1 - 2 * g * root, pts.total == upper)
