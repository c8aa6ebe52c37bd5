import itertools

from gmpy2 import mpq

from conftest import make_point
from qbc.combinat import (
    ALPHA,
    LaurentPoly,
    box_enumerate,
    chain_enumerate,
    conjugate,
    conjugate_star,
    dominance_leq,
    dominated_basis,
    e_col,
    e_col_vanishing_check,
    h_row,
    is_partition,
    normalize,
    orbit_sum,
    partitions_in_box,
    partitions_upto,
    pieri_neighborhood,
    principal_point,
    signed_vectors,
    w_invariant,
)
from qbc.scalars import e_pair, gen


def test_partition_helpers():
    assert normalize((2, 1, 0, 0)) == (2, 1)
    assert is_partition((3, 1, 1)) and not is_partition((1, 2))
    assert conjugate((3, 1)) == (2, 1, 1)
    assert set(partitions_upto(2, 2)) == {(), (1,), (2,), (1, 1)}
    assert len(partitions_in_box(2, 2)) == 6


def test_dominance_examples():
    assert dominance_leq((1, 1), (2,))
    assert not dominance_leq((2,), (1, 1))
    assert dominance_leq((), (3, 1))


def test_dominated_basis_sorted_and_closed():
    basis = dominated_basis((2, 1), 2)
    assert basis[-1] == (2, 1)
    assert all(dominance_leq(mu, (2, 1)) for mu in basis)
    assert () in basis and (1,) in basis


def test_orbit_sum_examples():
    assert orbit_sum((), 2) == LaurentPoly.constant(2)
    assert orbit_sum((1,), 1) == LaurentPoly(1, {(1,): 1, (-1,): 1})
    expected = LaurentPoly(2, {(1, 0): 1, (-1, 0): 1, (0, 1): 1, (0, -1): 1})
    assert orbit_sum((1,), 2) == expected


def test_w_invariance():
    for m in (1, 2, 3):
        for mu in partitions_upto(3, m):
            assert w_invariant(orbit_sum(mu, m))
    assert not w_invariant(LaurentPoly.monomial((1, 0)))
    assert w_invariant(orbit_sum((1,), 2) * orbit_sum((2, 1), 2))


def test_chain_counts():
    assert list(chain_enumerate((0,))) == [((0,), (0,), (0,), (0,))]
    assert len(list(chain_enumerate((1,)))) == 5
    assert len(list(chain_enumerate((1, 1)))) == 25
    for chain in chain_enumerate((2, 1)):
        for a, b in zip(chain, chain[1:]):
            assert all(x <= y for x, y in zip(a, b))
    assert len(list(box_enumerate((2, 1)))) == 6


def test_conjugate_star_examples():
    assert conjugate_star((), 2, 2) == (2, 2)
    assert conjugate_star((2, 2), 2, 2) == ()
    assert conjugate_star((1,), 2, 2) == (2, 1)


def test_pieri_neighborhood_examples():
    assert pieri_neighborhood((), 1) == {(), (1,)}
    assert pieri_neighborhood((1,), 1) == {(), (1,), (2,)}
    for mu in [(), (1,), (2, 1)]:
        for lam in pieri_neighborhood(mu, 2):
            lc, mc = conjugate(lam, 4), conjugate(mu, 4)
            assert all(abs(a - b) <= 1 for a, b in zip(lc, mc))


def test_signed_vectors_bound():
    vs = signed_vectors(2, 1)
    assert set(vs) == {(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)}


def test_laurent_arithmetic():
    x = LaurentPoly.monomial((1, 0))
    y = LaurentPoly.monomial((0, 1))
    f = (x + y) * (x - y)
    assert f == x * x - y * y
    assert (f - f).is_zero()
    assert f.evaluate([mpq(2), mpq(3)]) == -5


def test_e_col_small_cases():
    for seed in range(3):
        p = make_point(seed, 3)
        xs = [gen(f"x{i}") for i in (1, 2, 3)]
        assert e_col(0, 2, p, xs[:2]) == 1
        assert e_col(1, 1, p, xs[:1]) == e_pair(xs[0], ALPHA, p)


def test_e_col_forms_agree():
    for seed in range(10):
        p = make_point(seed, 3)
        for m in (1, 2, 3):
            xs = [gen(f"x{i}") for i in range(1, m + 1)]
            for r in range(m + 1):
                assert e_col(r, m, p, xs, form=1) == e_col(r, m, p, xs, form=2)


def test_e_col_vanishing_examples():
    p = make_point(4)
    for m in (1, 2, 3):
        assert e_col_vanishing_check(1, (), m, p)
    assert e_col_vanishing_check(2, (3,), 2, p)
    assert not e_col_vanishing_check(1, (1,), 2, p)


def test_h_row_small_cases():
    p = make_point(5, 2)
    x1 = gen("x1")
    assert h_row(0, 2, p, [x1, gen("x2")]) == 1
    ratio = p.bracket(gen("t")) / p.bracket(gen("q"))
    assert h_row(1, 1, p, [x1]) == ratio * e_pair(x1, ALPHA, p)


def test_h_row_vanishing_example():
    p = make_point(6)
    assert h_row(2, 2, p, principal_point((1,), 2, p)) == 0
    assert h_row(2, 2, p, principal_point((2,), 2, p)) != 0


def test_h_row_symmetric():
    p = make_point(7, 2)
    v = [p.value(gen("x1")), p.value(gen("x2"))]
    for l in range(3):
        base = h_row(l, 2, p, v)
        assert h_row(l, 2, p, v[::-1]) == base
        assert h_row(l, 2, p, [1 / v[0], v[1]]) == base


def test_box_partitions_inside():
    for m, n in itertools.product((1, 2), (1, 2)):
        for lam in partitions_in_box(m, n):
            assert len(lam) <= m and all(v <= n for v in lam)
