from itertools import product

import pytest

from cartier.ag_codes import (
    BoundReport,
    bound_report,
    build_code,
    exact_min_distance,
    rr_basis,
)
from cartier.curve_models import ArtinSchreierCurve
from cartier.errors import DegreeTooLarge, SearchTooLarge

A32 = ArtinSchreierCurve(3, 2)


def test_rr_basis_small():
    assert rr_basis(A32, 5).monomials == ((0, 0), (0, 1), (1, 0), (0, 2), (1, 1))
    assert rr_basis(A32, 5).pole_orders() == [0, 2, 3, 4, 5]


@pytest.mark.parametrize("curve", [ArtinSchreierCurve(3, 2), ArtinSchreierCurve(5, 2)])
def test_riemann_roch_cardinality(curve):
    g = curve.genus
    for m in range(2 * g - 1, 21):
        assert len(rr_basis(curve, m)) == m + 1 - g


def test_code_over_Fq2():
    code = build_code(A32, 5)
    assert code.n == 63 and code.k == 5
    assert code.gen_matrix.shape == (5, 63)


def test_degree_too_large():
    with pytest.raises(DegreeTooLarge):
        build_code(A32, 63)
    with pytest.raises(DegreeTooLarge):
        build_code(A32, 5, point_limit=5)


def _brute_min_distance(code):
    F, G = code.field, code.gen_matrix.tolist()
    best = code.n
    for msg in product(range(F.order), repeat=len(G)):
        if not any(msg):
            continue
        word = [0] * code.n
        for c, row in zip(msg, G):
            if c:
                word = [F.add(w, F.mul(c, v)) for w, v in zip(word, row)]
        best = min(best, sum(1 for w in word if w))
    return best


def test_projective_search_matches_full_search():
    code = build_code(A32, 3, degree=2)
    assert exact_min_distance(code) == _brute_min_distance(code)


@pytest.mark.parametrize("m, k, d", [(0, 1, 63), (2, 2, 61), (3, 3, 60)])
def test_exact_distances(m, k, d):
    code = build_code(A32, m)
    assert code.k == k
    assert exact_min_distance(code) == d


def test_search_guard():
    with pytest.raises(SearchTooLarge):
        exact_min_distance(build_code(A32, 5))


def test_bound_report_m2():
    rep = bound_report(A32, build_code(A32, 2))
    assert (rep.paper_bound, rep.goppa_bound, rep.exact_d, rep.singleton_bound) == (60, 61, 61, 62)
    assert rep.violations == []


def test_bound_report_m5_without_search():
    rep = bound_report(A32, build_code(A32, 5))
    assert rep.exact_d is None
    assert (rep.k, rep.paper_bound, rep.goppa_bound, rep.singleton_bound) == (5, 57, 58, 59)


def test_bound_report_small_field():
    rep = bound_report(A32, build_code(A32, 5, degree=2))
    assert (rep.n, rep.k, rep.exact_d) == (15, 5, 10)
    assert rep.paper_bound <= rep.goppa_bound <= rep.exact_d <= rep.singleton_bound


def test_violations_are_recorded():
    rep = BoundReport(n=10, k=3, m=2, g=1, a=1, exact_d=9)
    assert rep.check() == ["exact_d > singleton_bound"]
    rep = BoundReport(n=10, k=3, m=2, g=1, a=1, exact_d=7)
    assert "exact_d < goppa_bound" in rep.check()


def test_bound_arithmetic():
    rep = BoundReport(n=99, k=5, m=5, g=1, a=1)
    assert (rep.paper_bound, rep.goppa_bound, rep.singleton_bound) == (93, 94, 95)


def test_generator_csv():
    lines = build_code(A32, 2, degree=2).to_csv().splitlines()
    assert len(lines) == 2
    assert lines[0].split(",")[0] == "1 0"
