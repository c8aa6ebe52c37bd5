import itertools

from conftest import make_point
from qbc.combinat import orbit_sum, signed_vectors
from qbc.qops import (
    F_ratio,
    ParamQuad,
    U_coeff,
    U_coeff_literal,
    U_gen,
    V_coeff,
    conjugated_dgen,
    dgen_apply,
    hrow_apply,
    hrow_coeff,
    hrow_coeff_top,
    koornwinder_operator,
    v_weight,
    vandiejen_apply,
    vandiejen_operator,
    variables,
    w_weight,
)
from qbc.scalars import ONE, e_factorial, e_pair, gen

QUAD = ParamQuad.standard()
U, T = gen("u"), gen("t")


def test_param_maps():
    q, t = QUAD.q, QUAD.t
    assert QUAD.hat().q == t and QUAD.hat().t == q
    assert QUAD.tilde().a == (t * q).sqrt() / QUAD.a
    assert QUAD.tilde().tilde() == QUAD
    d = QUAD.dual()
    assert d.a == QUAD.alpha and d.dual().a == QUAD.a


def test_w_weight_examples():
    p = make_point(1, 1)
    x = gen("x1")
    assert w_weight(QUAD.a.inverse(), QUAD, p) == 0
    br = p.bracket
    direct = br(QUAD.a * x) * br(QUAD.b * x) * br(QUAD.c * x) * br(QUAD.d * x) / (br(x * x) * br(QUAD.q * x * x))
    assert w_weight(x, QUAD, p) == direct


def test_v_weight_examples():
    p = make_point(2, 1)
    x = gen("x1")
    assert v_weight(T.inverse(), p) == 0
    flat = p.with_roots({"t": 1})
    assert v_weight(x, flat) == 1
    br = p.bracket
    assert v_weight(x, p) * v_weight(x.inverse(), p) == br(T * x) * br(T / x) / (br(x) * br(x.inverse()))


def test_V_coeff_examples():
    p = make_point(3, 2)
    xs = variables("x", 2)
    assert V_coeff({}, [0, 1], QUAD, p, xs) == 1
    assert V_coeff({0: -1}, [], QUAD, p, xs) == w_weight(xs[0].inverse(), QUAD, p)
    want = w_weight(xs[0], QUAD, p) * v_weight(xs[0] * xs[1], p) * v_weight(xs[0] / xs[1], p)
    assert V_coeff({0: 1}, [1], QUAD, p, xs) == want


def test_U_coeff_examples():
    p = make_point(4, 3)
    xs = variables("x", 3)
    assert U_coeff([0, 1], 0, QUAD, p, xs) == 1
    x = xs[0]
    assert U_coeff([0], 1, QUAD, p, xs) == -w_weight(x, QUAD, p) - w_weight(x.inverse(), QUAD, p)
    for J in ([0, 1], [0, 1, 2]):
        for r in range(len(J) + 1):
            assert U_coeff(J, r, QUAD, p, xs) == U_coeff_literal(J, r, QUAD, p, xs)


def test_U_gen_regrouping():
    p = make_point(5, 3)
    xs = variables("x", 3)
    assert U_gen([], U, QUAD, p, xs) == 1
    x = xs[0]
    # unsigned convention: the only one compatible with D(u) 1 = e(u; α)_{t,m}
    one = e_factorial(U, QUAD.alpha, T, 1, p) + w_weight(x, QUAD, p) + w_weight(x.inverse(), QUAD, p)
    assert U_gen([0], U, QUAD, p, xs) == one
    for J in ([0], [0, 2], [0, 1, 2]):
        # U_{J,r} carries the sign (-1)^r; the generating sum does not
        total = sum((-1) ** r * U_coeff(J, r, QUAD, p, xs) * e_factorial(U, QUAD.alpha, T, len(J) - r, p)
                    for r in range(len(J) + 1))
        assert U_gen(J, U, QUAD, p, xs) == total


def test_D0_is_identity():
    p = make_point(6, 2)
    xs = variables("x", 2)
    f = orbit_sum((2, 1), 2).evaluate
    op = vandiejen_operator(0, QUAD, p, xs)
    assert op.apply(f) == f(op.values)


def test_D1_is_koornwinder_operator():
    for m in (1, 2):
        for seed in range(3):
            p = make_point(seed, m)
            xs = variables("x", m)
            f = orbit_sum((2,) + (1,) * (m - 1), m).evaluate
            assert vandiejen_apply(1, f, QUAD, p, xs) == koornwinder_operator(QUAD, p, xs).apply(f)


def test_generating_function_on_one():
    for m in (1, 2, 3):
        p = make_point(m, m)
        xs = variables("x", m)
        want = e_factorial(U, QUAD.alpha, T, m, p)
        assert dgen_apply(U, lambda v: ONE, QUAD, p, xs) == want
        assert dgen_apply(U, lambda v: ONE, QUAD, p, xs, form="rsum") == want


def test_generating_forms_agree():
    for seed in range(10):
        p = make_point(seed, 2)
        xs = variables("x", 2)
        f = orbit_sum((1, 1), 2).evaluate
        assert dgen_apply(U, f, QUAD, p, xs) == dgen_apply(U, f, QUAD, p, xs, form="rsum")


def test_F_ratio_examples():
    p = make_point(7, 1, 1)
    x, y = gen("x1"), gen("y1")
    assert F_ratio([x], [], QUAD, p) == 1
    s1, s2 = (QUAD.q / T).sqrt(), (QUAD.q * T).sqrt()
    assert F_ratio([x], [y], QUAD, p) == e_pair(s1 * x, y, p) / e_pair(s2 * x, y, p)
    same = p.with_roots({"t": p.fourth_roots["q"]})
    assert F_ratio([x], [y], QUAD, same) == e_pair(x, y, same) / e_pair(QUAD.q * x, y, same)


def test_conjugated_sides():
    for m in (1, 2):
        p = make_point(8, m)
        xs = variables("x", m)
        assert conjugated_dgen(U, QUAD, p, xs, [], "x") == e_factorial(U, QUAD.alpha, T, m, p)
    p = make_point(9, 2, 2)
    xs, ys = variables("x", 2), variables("y", 2)
    assert conjugated_dgen(U, QUAD, p, xs, ys, "x") == conjugated_dgen(U, QUAD, p, xs, ys, "y")


def test_hrow_coeff_zero_order():
    p = make_point(10, 2)
    xs = variables("x", 2)
    assert hrow_coeff(0, (0, 0), QUAD, p, xs) == 1


def test_hrow_top_coefficients():
    for seed in range(10):
        for m in (1, 2):
            p = make_point(seed, m)
            xs = variables("x", m)
            for l in (1, 2):
                for nu in itertools.product(range(l + 1), repeat=m):
                    if sum(nu) == l:
                        assert hrow_coeff(l, nu, QUAD, p, xs) == hrow_coeff_top(nu, QUAD, p, xs)


def test_hrow_annihilates_one():
    p = make_point(11, 2)
    xs = variables("x", 2)
    assert hrow_apply(0, lambda v: ONE, QUAD, p, xs) == 1
    for l in (1, 2, 3):
        assert hrow_apply(l, lambda v: ONE, QUAD, p, xs) == 0


def test_hrow_support_is_bounded():
    assert len(signed_vectors(2, 2)) == 13
