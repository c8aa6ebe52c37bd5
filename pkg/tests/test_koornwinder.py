import pytest

from conftest import make_point
from qbc.combinat import LaurentPoly, dominance_leq, orbit_sum, partitions_upto, principal_point
from qbc.koornwinder import (
    build_matrix,
    compute_koornwinder,
    dual_cauchy_kernel,
    eigen_residual_D,
    eigen_residual_H,
    eigenvalue_column,
    eigenvalue_generating,
    eigenvalue_row,
    normalized_value,
    pieri_coefficient,
    pieri_excluded,
    triangular_support_ok,
    verify_dual_cauchy_expansion,
    verify_duality,
    verify_pieri_row,
)
from qbc.qops import ParamQuad, dgen_apply, variables
from qbc.scalars import e_pair, gen

QUAD = ParamQuad.standard()
U = gen("u")


def _points(count, m=0, start=0):
    return [make_point(start + s, m) for s in range(count)]


def test_eigenvalue_examples():
    p = make_point(1)
    al, q = QUAD.alpha, QUAD.q
    assert eigenvalue_column((), 0, QUAD, p, 2) == 1
    assert eigenvalue_column((), 1, QUAD, p, 2) == 0
    assert eigenvalue_column((), 2, QUAD, p, 2) == 0
    assert eigenvalue_column((1,), 1, QUAD, p, 1) == e_pair(al * q, al, p)
    assert eigenvalue_row((), 0, QUAD, p, 2) == 1
    assert eigenvalue_row((), 2, QUAD, p, 2) == 0
    ratio = p.bracket(QUAD.t) / p.bracket(q)
    assert eigenvalue_row((1,), 1, QUAD, p, 1) == ratio * e_pair(al * q, al, p)


def test_matrix_small_cases():
    p = make_point(2)
    bm = build_matrix((), QUAD, p, 2)
    assert bm.basis == [()] and bm.entry((), ()) == 0
    bm = build_matrix((1,), QUAD, p, 1)
    assert bm.basis == [(), (1,)]
    assert bm.entry((1,), ()) == 0
    assert bm.entry((), ()) == 0
    assert bm.entry((1,), (1,)) == e_pair(QUAD.alpha * QUAD.q, QUAD.alpha, p)


def test_matrix_triangular():
    p = make_point(3)
    for m in (1, 2):
        for lam in partitions_upto(3, m):
            bm = build_matrix(lam, QUAD, p, m)
            for nu in bm.basis:
                for mu in bm.basis:
                    if bm.entry(nu, mu):
                        assert dominance_leq(nu, mu)


def test_small_polynomials():
    p = make_point(4, 2)
    assert compute_koornwinder((), QUAD, p, 2).poly == LaurentPoly.constant(2)
    P1 = compute_koornwinder((1,), QUAD, p, 1)
    assert set(P1.coeffs) <= {(), (1,)} and P1.coeffs[(1,)] == 1
    assert eigen_residual_D(P1, 1, make_point(4, 1)) == 0
    P11 = compute_koornwinder((1, 1), QUAD, p, 2)
    assert set(P11.coeffs) <= {(), (1,), (1, 1)}
    for r in (1, 2):
        assert eigen_residual_D(P11, r, p) == 0


def test_eigen_equations():
    for m in (1, 2):
        for lam in partitions_upto(3, m):
            for p in _points(2, m, start=10):
                P = compute_koornwinder(lam, QUAD, p, m)
                assert triangular_support_ok(P)
                for r in range(m + 1):
                    assert eigen_residual_D(P, r, p) == 0
                for l in range(4):
                    assert eigen_residual_H(P, l, p) == 0


def test_generating_eigenvalue():
    p = make_point(5, 2)
    xs = variables("x", 2)
    for lam in [(), (1,), (2, 1)]:
        P = compute_koornwinder(lam, QUAD, p, 2)
        values = [p.value(z) for z in xs]
        assert dgen_apply(U, P, QUAD, p, xs) == P(values) * eigenvalue_generating(lam, U, QUAD, p, 2)


def test_normalized_value_at_base():
    p = make_point(6, 2)
    P = compute_koornwinder((2,), QUAD, p, 2)
    base = principal_point((), 2, p, QUAD.a, QUAD.q, QUAD.t)
    assert normalized_value(P, base, p) == 1


def test_duality_examples():
    pts = _points(3, start=20)
    assert verify_duality((), (), QUAD, pts, 2)
    assert verify_duality((), (2,), QUAD, pts, 2)
    assert verify_duality((1,), (1,), QUAD, pts, 2)
    assert verify_duality((1, 1), (2,), QUAD, pts, 2)


def test_dual_cauchy_examples():
    p = make_point(7)
    x, y = LaurentPoly.monomial((1, 0)), LaurentPoly.monomial((0, 1))
    x_inv, y_inv = LaurentPoly.monomial((-1, 0)), LaurentPoly.monomial((0, -1))
    assert dual_cauchy_kernel(1, 1) == x + x_inv - y - y_inv
    for m, n in [(1, 1), (2, 1), (1, 2)]:
        assert verify_dual_cauchy_expansion(m, n, QUAD, p)


def test_pieri_examples():
    pts = _points(3, 2, start=30)
    for mu in [(), (1,), (1, 1)]:
        for l in range(3):
            assert verify_pieri_row(mu, l, QUAD, pts, 2)
    one = _points(3, 1, start=40)
    assert verify_pieri_row((), 1, QUAD, one, 1)


def test_pieri_excluded_vanish():
    p = make_point(8)
    for mu in [(), (1,), (1, 1)]:
        for l in (1, 2):
            excluded = pieri_excluded(mu, l, 2)
            assert excluded
            assert all(pieri_coefficient(mu, nu, l, QUAD, p, 2) == 0 for nu in excluded)


def test_pieri_order_zero():
    p = make_point(9)
    assert pieri_coefficient((1,), (0, 0), 0, QUAD, p, 2) == 1


def test_too_many_parts():
    with pytest.raises(ValueError):
        compute_koornwinder((1, 1, 1), QUAD, make_point(1), 2)


def test_orbit_basis_matches_support():
    p = make_point(12, 2)
    P = compute_koornwinder((2, 1), QUAD, p, 2)
    poly = sum((orbit_sum(mu, 2) * c for mu, c in P.coeffs.items()), LaurentPoly(2))
    assert poly == P.poly
