"""One-point evaluation codes C(D, m P_inf) on Artin-Schreier curves.

D is the sum of the affine rational points (P_inf is never in D), the code
is the image of L(m P_inf) under evaluation, and its parameters are compared
with three lower/upper bounds:

* Goppa designed distance  n - m
* the a-number bound       n - m - 2g + a
* Singleton                n - k + 1
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np

from .cartier_engine import a_number
from .curve_models import ArtinSchreierCurve, rational_points
from .errors import DegreeTooLarge, SearchTooLarge
from .gf_tower import FieldContext, matrix_rank

SEARCH_LIMIT = 10**7


@dataclass(frozen=True)
class RiemannRochBasis:
    curve: ArtinSchreierCurve
    degree: int
    monomials: tuple[tuple[int, int], ...]

    def __len__(self):
        return len(self.monomials)

    def pole_orders(self) -> list[int]:
        return [self.curve.pole_order(a, b) for a, b in self.monomials]


def rr_basis(curve: ArtinSchreierCurve, m: int) -> RiemannRochBasis:
    """x^a y^b with pole order sqrt_q*a + m_t*b <= m and b < sqrt_q."""
    if m < 0:
        raise ValueError("m must be non-negative")
    sq, mt = curve.sqrt_q, curve.m
    mons = [(a, b) for b in range(min(sq - 1, m // mt) + 1)
            for a in range((m - mt * b) // sq + 1)]
    mons.sort(key=lambda ab: (curve.pole_order(*ab), ab[0]))
    return RiemannRochBasis(curve, m, tuple(mons))


@dataclass(frozen=True, eq=False)
class EvaluationCode:
    curve: ArtinSchreierCurve
    m: int
    basis: RiemannRochBasis
    field: FieldContext
    points: tuple[tuple[int, int], ...]
    gen_matrix: np.ndarray

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def k(self) -> int:
        return matrix_rank(self.field, self.gen_matrix.tolist())

    def to_csv(self) -> str:
        """Generator matrix, one row per basis monomial, entries as coefficient vectors."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for row in self.gen_matrix.tolist():
            w.writerow([" ".join(map(str, self.field.coeffs(v))) for v in row])
        return buf.getvalue()


def build_code(curve: ArtinSchreierCurve, m: int, point_limit: int | None = None,
               degree: int | None = None) -> EvaluationCode:
    """Evaluate L(m P_inf) at the affine points over F_{p^degree} (default F_{q^2})."""
    pts = rational_points(curve, degree)
    ctx = pts.field
    points = pts.points if point_limit is None else pts.points[:point_limit]
    if m >= len(points):
        raise DegreeTooLarge(f"m={m} must be below n={len(points)}")
    basis = rr_basis(curve, m)
    xs = np.array([x for x, _ in points], dtype=np.int64)
    ys = np.array([y for _, y in points], dtype=np.int64)
    rows = [ctx.mul_arr(ctx.pow_arr(xs, a), ctx.pow_arr(ys, b)) for a, b in basis.monomials]
    gen = np.array(rows, dtype=np.int64).reshape(len(rows), len(points))
    return EvaluationCode(curve, m, basis, ctx, tuple(points), gen)


def exact_min_distance(code: EvaluationCode, chunk: int = 4096) -> int:
    """Minimum weight over every nonzero message.

    Scalar multiples have equal weight, so only messages whose last nonzero
    coordinate is 1 are enumerated; the guard still counts all q^k messages.
    """
    ctx, G = code.field, code.gen_matrix
    k, N = G.shape[0], ctx.order
    if N**k > SEARCH_LIMIT:
        raise SearchTooLarge(f"{N}^{k} messages exceed {SEARCH_LIMIT}")
    best = code.n
    for lead in range(k):
        for start in range(0, N**lead, chunk):
            idx = np.arange(start, min(start + chunk, N**lead), dtype=np.int64)
            words = np.broadcast_to(G[lead], (idx.size, code.n)).copy()
            rest = idx
            for row in range(lead):
                rest, digit = np.divmod(rest, N)
                words = ctx.add_arr(words, ctx.mul_arr(digit[:, None], G[row][None, :]))
            best = min(best, int(np.count_nonzero(words, axis=1).min()))
    return best


@dataclass
class BoundReport:
    n: int
    k: int
    m: int
    g: int
    a: int
    exact_d: int | None = None
    violations: list[str] = field(default_factory=list)

    @property
    def goppa_bound(self) -> int:
        return self.n - self.m

    @property
    def paper_bound(self) -> int:
        return self.n - self.m - 2 * self.g + self.a

    @property
    def singleton_bound(self) -> int:
        return self.n - self.k + 1

    def check(self) -> list[str]:
        out = []
        if self.paper_bound > self.goppa_bound:
            out.append("paper_bound > goppa_bound")
        if self.exact_d is not None:
            if self.exact_d < self.paper_bound:
                out.append("exact_d < paper_bound")
            if self.exact_d < self.goppa_bound:
                out.append("exact_d < goppa_bound")
            if self.exact_d > self.singleton_bound:
                out.append("exact_d > singleton_bound")
        return out

    def as_dict(self) -> dict:
        return {
            "n": self.n, "k": self.k, "m": self.m, "g": self.g, "a": self.a,
            "paper_bound": self.paper_bound, "goppa_bound": self.goppa_bound,
            "singleton_bound": self.singleton_bound, "exact_d": self.exact_d,
            "violations": self.violations,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict())


def bound_report(curve: ArtinSchreierCurve, code: EvaluationCode, a: int | None = None,
                 exact: bool = True) -> BoundReport:
    """All bounds, plus the exact distance when the search guard allows it.

    A violated inequality is recorded in ``violations``, not raised.
    """
    if a is None:
        a = a_number(curve).a_number
    rep = BoundReport(code.n, code.k, code.m, curve.genus, a)
    if exact:
        try:
            rep.exact_d = exact_min_distance(code)
        except SearchTooLarge:
            pass
    rep.violations = rep.check()
    return rep
