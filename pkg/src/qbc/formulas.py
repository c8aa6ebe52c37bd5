"""Both sides of the multiple-series identities, written out term by term.

Each function returns exact scalars at a ``ParamPoint``. The code follows the
bracket form of every displayed factor, so it is deliberately independent of
the operator machinery in ``qops``. Generators: parameters ``a, b, c, d``
(also playing ``a_1..a_4``), ``q``, ``t``, ``u`` and variables ``x_i``, ``y_k``.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from .combinat import box_enumerate, chain_enumerate, h_row
from .scalars import (
    ONE,
    ZERO,
    ParamPoint,
    QuarterMonomial,
    Scalar,
    SingularPoint,
    e_factorial,
    e_value,
    gen,
    mpq,
    pochhammer,
    t_binomial,
)

Q, T, U = gen("q"), gen("t"), gen("u")
PARAMS = tuple(gen(s) for s in "abcd")


class Ctx:
    """Bracket helpers at a point: ``br(z1, ...)`` and ``fa(k, z1, ...)`` (base q)."""

    def __init__(self, p: ParamPoint, q: QuarterMonomial = Q):
        self.p = p
        self.q = q
        self._fac: dict = {}

    def br(self, *zs) -> Scalar:
        v = ONE
        for z in zs:
            v *= self.p.bracket(z)
        return v

    def fa(self, k: int, *zs) -> Scalar:
        v = ONE
        for z in zs:
            key = (z, k)
            f = self._fac.get(key)
            if f is None:
                if k < 0:
                    raise ValueError("negative bracket factorial length")
                f = ONE
                w = z
                for _ in range(k):
                    f *= self.p.bracket(w)
                    w = w * self.q
                self._fac[key] = f
            v *= f
        return v

    def e(self, z, w, k, base=None) -> Scalar:
        return e_factorial(z, w, base or self.q, k, self.p)


def _div(num: Scalar, den: Scalar, what: str) -> Scalar:
    if den == 0:
        raise SingularPoint(f"vanishing denominator in {what}")
    return num / den


def qp(k) -> QuarterMonomial:
    return Q**k


def a0_of(params=PARAMS) -> QuarterMonomial:
    a1, a2, a3, a4 = params
    return (a1 * a2 * a3 * a4 / Q).sqrt()


# ------------------------------------------------------ swapped kernel identity

def swapped_kernel_side(p: ParamPoint, xs, ys, params, ebase: QuarterMonomial, u: QuarterMonomial = U) -> Scalar:
    """One side of the explicit (q,t)-swapped kernel identity (without the outer prefactor).

    ``params`` are the four parameters appearing in the brackets and ``ebase``
    the base point of ``e(u; .)_{q, .}``.
    """
    c = Ctx(p)
    a, b, cc, d = params
    m = len(xs)
    s_num, s_den = (T / Q).sqrt(), (T * Q).sqrt()
    yv = [p.value(y) for y in ys]
    efac = {k: e_factorial(u, ebase, Q, k, p) for k in range(m + 1)}
    total = ZERO
    for k in range(m + 1):
        for I in itertools.combinations(range(m), k):
            Ic = [j for j in range(m) if j not in I]
            for eps in itertools.product((1, -1), repeat=k):
                z = [xs[i] ** s for i, s in zip(I, eps)]
                num = den = ONE
                for zi in z:
                    num *= c.br(a * zi, b * zi, cc * zi, d * zi)
                    den *= c.br(zi * zi, T * zi * zi)
                for i in range(k):
                    for j in range(i + 1, k):
                        zz = z[i] * z[j]
                        num *= c.br(Q * zz, T * Q * zz)
                        den *= c.br(zz, T * zz)
                for zi in z:
                    for j in Ic:
                        num *= c.br(Q * zi * xs[j], Q * zi / xs[j])
                        den *= c.br(zi * xs[j], zi / xs[j])
                outer = _div(num, den, "swapped kernel outer factor")
                inner = ZERO
                for r in range(len(Ic) + 1):
                    for J in itertools.combinations(Ic, r):
                        rest = [j for j in Ic if j not in J]
                        for dl in itertools.product((1, -1), repeat=r):
                            w = [xs[i] ** s for i, s in zip(J, dl)]
                            n2 = d2 = ONE
                            for wi in w:
                                n2 *= c.br(a * wi, b * wi, cc * wi, d * wi)
                                d2 *= c.br(wi * wi, T * wi * wi)
                            for i in range(r):
                                for j in range(i + 1, r):
                                    ww = w[i] * w[j]
                                    n2 *= c.br(Q * ww, T * ww / Q)
                                    d2 *= c.br(ww, T * ww)
                            for wi in w:
                                for j in rest:
                                    n2 *= c.br(Q * wi * xs[j], Q * wi / xs[j])
                                    d2 *= c.br(wi * xs[j], wi / xs[j])
                            inner += efac[len(Ic) - r] * _div(n2, d2, "swapped kernel inner factor")
                kern = ONE
                for zi in z:
                    nz, dz = p.value(s_num * zi), p.value(s_den * zi)
                    for y in yv:
                        kern *= _div(e_value(nz, y), e_value(dz, y), "swapped kernel factor")
                total += (-1) ** k * outer * inner * kern
    return total


def swapped_kernel_sides(p: ParamPoint, xs, ys, u: QuarterMonomial = U) -> tuple:
    """``(LHS, RHS)`` of the explicit (q,t)-swapped kernel identity."""
    a, b, c, d = PARAMS
    alpha = (a * b * c * d / Q).sqrt()
    s = (T * Q).sqrt()
    lhs = swapped_kernel_side(p, xs, ys, PARAMS, (Q / T).sqrt() * alpha, u)
    rhs_params = tuple(s / z for z in PARAMS)
    rhs = e_factorial(u, (Q / T).sqrt() * alpha, Q, len(xs) - len(ys), p) * swapped_kernel_side(
        p, ys, xs, rhs_params, s / alpha, u)
    return lhs, rhs


# ------------------------------------------------------------------ Saalschütz

def saalschutz_sides(p: ParamPoint, l: int, w: QuarterMonomial, abase: QuarterMonomial, bbase: QuarterMonomial) -> tuple:
    """Base-point change for ``e(w; b)_{t,l}`` in terms of ``e(w; a)_{t,.}``."""
    lhs = e_factorial(w, bbase, T, l, p)
    rhs = ZERO
    for r in range(l + 1):
        z = T ** mpq(l - 1, 2) * bbase
        v = T ** mpq(1 - l, 2) / abase
        rhs += (-1) ** r * t_binomial(l, r, T, p) * e_factorial(z, v, T, r, p) * e_factorial(w, abase, T, l - r, p)
    return lhs, rhs


# ------------------------------------------------------ type-BC transformation

def _bc_prefactor_x(c: Ctx, xs, ys, alpha, beta, params) -> Scalar:
    a1, a2, a3, a4 = params
    num = den = ONE
    m = len(xs)
    for i, x in enumerate(xs):
        al = alpha[i]
        num *= c.fa(al, T * Q * x / a1, T * Q * x / a2, T * Q * x / a3, T * Q * x / a4)
        den *= c.fa(al, T * Q * x * x, T * T * Q * x * x)
    for i in range(m):
        for j in range(i + 1, m):
            xx = xs[i] * xs[j]
            num *= c.fa(alpha[i], T * qp(alpha[j] + 1) * xx, T * T * qp(alpha[j] + 1) * xx)
            den *= c.fa(alpha[i], T * Q * xx, T * T * Q * xx)
    for i, x in enumerate(xs):
        for k, y in enumerate(ys):
            num *= c.fa(alpha[i], T * x * y, T * qp(1 - beta[k]) * x / y)
            den *= c.fa(alpha[i], T * qp(beta[k]) * x * y, T * Q * x / y)
    return _div(num, den, "BC prefactor in x")


def _bc_summand_x(c: Ctx, xs, alpha, chain, params) -> Scalar:
    """The y-free part of a chain term on the x side."""
    a1, a2, a3, a4 = params
    mum, num_, nup, mup = chain
    m = len(xs)
    num = den = ONE
    for i, x in enumerate(xs):
        num *= c.fa(num_[i], a1 * x, a2 * x, a3 * x, a4 * x)
        den *= c.fa(nup[i], T * Q * x / a1, T * Q * x / a2, T * Q * x / a3, T * Q * x / a4)
    for i in range(m):
        for j in range(i, m):
            xx = xs[i] * xs[j]
            num *= c.br(qp(mum[i] + mum[j]) * xx, T * T * qp(mup[i] + mup[j]) * xx)
            den *= c.br(xx, T * T * xx)
    for i in range(m):
        for j in range(i + 1, m):
            r = xs[i] / xs[j]
            xx = xs[i] * xs[j]
            num *= c.br(qp(mum[i] - mum[j]) * r, qp(mup[i] - mup[j]) * r,
                        qp(num_[i] - num_[j]) * r, qp(nup[i] - nup[j]) * r)
            num *= c.fa(num_[i] + num_[j], T * xx, Q * xx)
            den *= c.br(r) ** 4
            den *= c.fa(nup[i] + nup[j], T * T * xx, T * Q * xx)
    for i in range(m):
        for j in range(m):
            xi, xj = xs[i], xs[j]
            xx = xi * xj
            num *= c.br(T * qp(mum[i] + mup[j]) * xx, T * qp(num_[i] + nup[j]) * xx, qp(mum[i] - mup[j]) * xi / (T * xj))
            num *= c.fa(mum[i] + nup[j], T * xx) * c.fa(mup[i] + nup[j], T * T * xx)
            den *= c.br(T * xx, T * xx, xi / (T * qp(mup[j]) * xj))
            den *= c.fa(mum[i] + num_[j], Q * xx) * c.fa(mup[i] + num_[j], T * Q * xx)
    for i in range(m):
        for j in range(m):
            xi, xj = xs[i], xs[j]
            xx = xi * xj
            num *= c.fa(mum[i], xx, xi / (qp(num_[j]) * xj), xi / (T * qp(alpha[j]) * xj))
            num *= c.fa(mup[i], T * xx, xi / (qp(alpha[j]) * xj))
            num *= c.fa(num_[i], Q * xi / (T * qp(nup[j]) * xj), xi / (qp(nup[j]) * xj))
            den *= c.fa(mum[i], T * qp(alpha[j] + 1) * xx, Q * xi / (T * qp(nup[j]) * xj), Q * xi / xj)
            den *= c.fa(mup[i], T * T * qp(alpha[j] + 1) * xx, Q * xi / xj)
            den *= c.fa(num_[i], Q * xi / (T * qp(mup[j]) * xj), Q * xi / xj)
    for i in range(m):
        for j in range(m):
            num *= c.fa(nup[i], xs[i] / (qp(mup[j]) * xs[j]))
            den *= c.fa(nup[i], Q * xs[i] / xs[j])
    return _div(num, den, "BC chain term in x")


def _bc_cross_x(c: Ctx, xs, ys, beta, chain) -> Scalar:
    mum, _, _, mup = chain
    num = den = ONE
    for i, x in enumerate(xs):
        for k, y in enumerate(ys):
            bk = beta[k]
            num *= c.fa(mum[i], qp(bk) * x * y, Q * x / y) * c.fa(mup[i], T * qp(bk) * x * y, T * Q * x / y)
            den *= c.fa(mum[i], x * y, qp(1 - bk) * x / y) * c.fa(mup[i], T * x * y, T * qp(1 - bk) * x / y)
    return _div(num, den, "BC cross term in x")


def _bc_prefactor_y(c: Ctx, xs, ys, alpha, beta, params) -> Scalar:
    a1, a2, a3, a4 = params
    n = len(ys)
    num = den = ONE
    for k, y in enumerate(ys):
        num *= c.fa(beta[k], a1 * y, a2 * y, a3 * y, a4 * y)
        den *= c.fa(beta[k], y * y, T * y * y)
    for k in range(n):
        for l in range(k + 1, n):
            yy = ys[k] * ys[l]
            num *= c.fa(beta[k], qp(beta[l]) * yy, T * qp(beta[l]) * yy)
            den *= c.fa(beta[k], yy, T * yy)
    for k, y in enumerate(ys):
        for i, x in enumerate(xs):
            num *= c.fa(beta[k], T * y * x, qp(-alpha[i]) * y / x)
            den *= c.fa(beta[k], T * qp(alpha[i]) * y * x, y / x)
    return _div(num, den, "BC prefactor in y")


def _bc_summand_y(c: Ctx, ys, beta, chain, params) -> Scalar:
    a1, a2, a3, a4 = params
    lam_m, kap_m, kap_p, lam_p = chain
    n = len(ys)
    num = den = ONE
    for k, y in enumerate(ys):
        num *= c.fa(kap_m[k], y / a1, y / a2, y / a3, y / a4)
        den *= c.fa(kap_p[k], a1 * y, a2 * y, a3 * y, a4 * y)
    for k in range(n):
        for l in range(k, n):
            yy = ys[k] * ys[l]
            num *= c.br(qp(lam_m[k] + lam_m[l]) * yy / (T * Q), T * qp(lam_p[k] + lam_p[l]) * yy / Q)
            den *= c.br(yy / (T * Q), T * yy / Q)
    for k in range(n):
        for l in range(k + 1, n):
            r = ys[k] / ys[l]
            yy = ys[k] * ys[l]
            num *= c.br(qp(lam_m[k] - lam_m[l]) * r, qp(lam_p[k] - lam_p[l]) * r,
                        qp(kap_m[k] - kap_m[l]) * r, qp(kap_p[k] - kap_p[l]) * r)
            num *= c.fa(kap_m[k] + kap_m[l], yy / Q, yy / T)
            den *= c.br(r) ** 4
            den *= c.fa(kap_p[k] + kap_p[l], T * yy / Q, yy)
    for k in range(n):
        for l in range(n):
            yk, yl = ys[k], ys[l]
            yy = yk * yl
            num *= c.br(qp(lam_m[k] + lam_p[l]) * yy / Q, qp(kap_m[k] + kap_p[l]) * yy / Q, qp(lam_m[k] - lam_p[l]) * yk / (T * yl))
            num *= c.fa(lam_m[k] + kap_p[l], yy / Q) * c.fa(lam_p[k] + kap_p[l], T * yy / Q)
            den *= c.br(yy / Q, yy / Q, yk / (T * qp(lam_p[l]) * yl))
            den *= c.fa(lam_m[k] + kap_m[l], yy / T) * c.fa(lam_p[k] + kap_m[l], yy)
    for k in range(n):
        for l in range(n):
            yk, yl = ys[k], ys[l]
            yy = yk * yl
            num *= c.fa(lam_m[k], yy / (T * Q), yk / (qp(kap_m[l]) * yl), yk / (T * qp(beta[l]) * yl))
            num *= c.fa(lam_p[k], yy / Q, yk / (qp(beta[l]) * yl))
            num *= c.fa(kap_m[k], Q * yk / (T * qp(kap_p[l]) * yl), yk / (qp(kap_p[l]) * yl))
            den *= c.fa(lam_m[k], qp(beta[l]) * yy, Q * yk / (T * qp(kap_p[l]) * yl), Q * yk / yl)
            den *= c.fa(lam_p[k], T * qp(beta[l]) * yy, Q * yk / yl)
            den *= c.fa(kap_m[k], Q * yk / (T * qp(lam_p[l]) * yl), Q * yk / yl)
    for k in range(n):
        for l in range(n):
            num *= c.fa(kap_p[k], ys[k] / (qp(lam_p[l]) * ys[l]))
            den *= c.fa(kap_p[k], Q * ys[k] / ys[l])
    return _div(num, den, "BC chain term in y")


def _bc_cross_y(c: Ctx, xs, ys, alpha, chain) -> Scalar:
    lam_m, _, _, lam_p = chain
    num = den = ONE
    for k, y in enumerate(ys):
        for i, x in enumerate(xs):
            ai = alpha[i]
            num *= c.fa(lam_m[k], qp(ai) * y * x, y / (T * x)) * c.fa(lam_p[k], T * qp(ai) * y * x, y / x)
            den *= c.fa(lam_m[k], y * x, y / (T * qp(ai) * x)) * c.fa(lam_p[k], T * y * x, qp(-ai) * y / x)
    return _div(num, den, "BC cross term in y")


def _weights(chain):
    mum, num_, nup, mup = chain
    return sum(nup), sum(num_)


def transform_bc_sides(p: ParamPoint, alpha: Sequence[int], beta: Sequence[int], xs, ys,
                       params=PARAMS, u: QuarterMonomial = U, regrouped: bool = False) -> tuple:
    """``(LHS, RHS)`` of the type-BC transformation; ``regrouped`` uses the expanded right side."""
    c = Ctx(p)
    a0 = a0_of(params)
    base_x = (T * Q).sqrt() / a0
    base_y = (Q / T).sqrt() * a0
    A, B = sum(alpha), sum(beta)
    lhs_sum = ZERO
    for chain in chain_enumerate(alpha):
        wp, wm = _weights(chain)
        term = (-1) ** (A + wp + wm) * c.e(U if u is None else u, base_x, wp - wm)
        if not term:
            continue
        term *= _bc_summand_x(c, xs, alpha, chain, params) * _bc_cross_x(c, xs, ys, beta, chain)
        lhs_sum += term
    lhs = _bc_prefactor_x(c, xs, ys, alpha, beta, params) * lhs_sum
    rhs_sum = ZERO
    for chain in chain_enumerate(beta):
        kp, km = _weights(chain)
        K = kp - km
        if regrouped:
            weight = ZERO
            for r in range(K + 1):
                z = T ** mpq(-1, 2) * Q ** mpq(K, 2) * a0
                w = T ** mpq(-1, 2) * Q ** mpq(-K - 2 * A + 2 * B, 2) * a0
                coef = _div(c.fa(r, qp(-K)), c.fa(r, Q), "regrouped weight")
                weight += coef * c.e(z, w, r) * c.e(u, base_x, A - B + K - r)
        else:
            weight = c.e(u, base_x, A - B) * c.e(u, base_y, K)
        if not weight:
            continue
        term = (-1) ** (B + kp + km) * weight
        term *= _bc_summand_y(c, ys, beta, chain, params) * _bc_cross_y(c, xs, ys, alpha, chain)
        rhs_sum += term
    rhs = _bc_prefactor_y(c, xs, ys, alpha, beta, params) * rhs_sum
    return lhs, rhs


def summation_sides(p: ParamPoint, alpha: Sequence[int], xs, params=PARAMS, u: QuarterMonomial = U) -> tuple:
    """``(chain sum, closed product)`` of the summation formula (the case without y)."""
    c = Ctx(p)
    a1, a2, a3, a4 = params
    base = (T * Q).sqrt() / a0_of(params)
    A = sum(alpha)
    lhs = ZERO
    for chain in chain_enumerate(alpha):
        wp, wm = _weights(chain)
        ef = c.e(u, base, wp - wm)
        if ef:
            lhs += (-1) ** (A + wp + wm) * ef * _bc_summand_x(c, xs, alpha, chain, params)
    num = den = ONE
    m = len(xs)
    for i, x in enumerate(xs):
        num *= c.fa(alpha[i], T * Q * x * x, T * T * Q * x * x)
        den *= c.fa(alpha[i], T * Q * x / a1, T * Q * x / a2, T * Q * x / a3, T * Q * x / a4)
    for i in range(m):
        for j in range(i + 1, m):
            xx = xs[i] * xs[j]
            num *= c.fa(alpha[i], T * Q * xx, T * T * Q * xx)
            den *= c.fa(alpha[i], T * qp(alpha[j] + 1) * xx, T * T * qp(alpha[j] + 1) * xx)
    rhs = c.e(u, base, A) * _div(num, den, "summation product")
    return lhs, rhs


# ----------------------------------------------------------- Milne identity

def milne_sides(p: ParamPoint, lam: Sequence[int], xs) -> tuple:
    c = Ctx(p)
    m = len(xs)
    num = den = ONE
    for i in range(m):
        for j in range(m):
            if i != j:
                num *= c.fa(lam[i], Q * xs[i] / xs[j])
                den *= c.fa(lam[i], xs[i] / (qp(lam[j]) * xs[j]))
    lhs = _div(num, den, "Milne left side")
    num = den = ONE
    for i in range(m):
        for j in range(i + 1, m):
            r = xs[i] / xs[j]
            num *= c.br(qp(lam[i] - lam[j]) * r)
            den *= c.br(r)
    return lhs, _div(num, den, "Milne right side")


# ------------------------------------------------------ type-C inner-sum collapse

class Gauss:
    """Exact Gaussian rational ``re + i*im``."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re, self.im = mpq(re), mpq(im)

    def __add__(self, o):
        o = o if isinstance(o, Gauss) else Gauss(o)
        return Gauss(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __mul__(self, o):
        o = o if isinstance(o, Gauss) else Gauss(o)
        return Gauss(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __eq__(self, o):
        o = o if isinstance(o, Gauss) else Gauss(o)
        return self.re == o.re and self.im == o.im

    def __repr__(self):
        return f"({self.re} + {self.im}i)"


def collapse_x_sides(p: ParamPoint, xs, u: QuarterMonomial = U) -> tuple:
    """Collapse of the inner sum at ``(c, d, t) = (q^1/2, -q^1/2, q)`` on the x side.

    With ``α = i sqrt(ab)`` one has ``e(u; q^j α) = (u + 1/u) - i<q^(2j) ab>``,
    so the sum is a Gaussian rational; its target ``(u + 1/u)^N`` is real.
    """
    c = Ctx(p)
    a, b = gen("a"), gen("b")
    uv = p.value(u)
    Uv = uv + 1 / uv
    N = len(xs)

    def efac(k):
        v = Gauss(1)
        for j in range(k):
            v = v * Gauss(Uv, -c.br(qp(2 * j) * a * b))
        return v

    total = Gauss(0)
    for r in range(N + 1):
        for J in itertools.combinations(range(N), r):
            rest = [j for j in range(N) if j not in J]
            for dl in itertools.product((1, -1), repeat=r):
                w = [xs[i] ** s for i, s in zip(J, dl)]
                num = den = ONE
                for wi in w:
                    num *= c.br(a * wi, b * wi)
                    den *= c.br(wi * wi)
                for wi in w:
                    for j in rest:
                        num *= c.br(Q * wi * xs[j], Q * wi / xs[j])
                        den *= c.br(wi * xs[j], wi / xs[j])
                prod = Gauss(_div(num, den, "collapse x term"))
                total = total + efac(N - r) * prod * _ipow(r)
    return total, Gauss(Uv**N)


def _ipow(k: int) -> Gauss:
    return [Gauss(1), Gauss(0, 1), Gauss(-1), Gauss(0, -1)][k % 4]


def collapse_y_sides(p: ParamPoint, ys, u: QuarterMonomial = U) -> tuple:
    """Collapse of the inner sum on the y side, with ``e(u; q^(j+1)/α) = (u + 1/u) + i<q^(2j+2)/ab>``."""
    c = Ctx(p)
    a, b = gen("a"), gen("b")
    uv = p.value(u)
    Uv = uv + 1 / uv
    N = len(ys)

    def efac(k):
        v = Gauss(1)
        for j in range(k):
            v = v * Gauss(Uv, c.br(qp(2 * j + 2) / (a * b)))
        return v

    total = Gauss(0)
    for r in range(N + 1):
        for L in itertools.combinations(range(N), r):
            rest = [j for j in range(N) if j not in L]
            for dl in itertools.product((1, -1), repeat=r):
                w = [ys[k] ** s for k, s in zip(L, dl)]
                num = den = ONE
                for wi in w:
                    num *= c.br(Q * wi / a, Q * wi / b)
                    den *= c.br(wi * wi)
                for wi in w:
                    for l in rest:
                        num *= c.br(Q * wi * ys[l], Q * wi / ys[l])
                        den *= c.br(wi * ys[l], wi / ys[l])
                prod = Gauss(_div(num, den, "collapse y term"))
                total = total + efac(N - r) * prod * _ipow(3 * r)
    return total, Gauss(Uv**N)


# ------------------------------------------------------ type-C transformation

def transform_c_sides(p: ParamPoint, alpha: Sequence[int], beta: Sequence[int], xs, ys) -> tuple:
    c = Ctx(p)
    a1, a2 = gen("a"), gen("b")
    m, n = len(xs), len(ys)
    A, B = sum(alpha), sum(beta)
    lhs = ZERO
    for mu in box_enumerate(alpha):
        num = den = ONE
        for i, x in enumerate(xs):
            num *= c.fa(mu[i], a1 * x, a2 * x)
            den *= c.fa(mu[i], Q * x / a1, Q * x / a2)
        for i in range(m):
            for j in range(i + 1, m):
                r = xs[i] / xs[j]
                num *= c.br(qp(mu[i] - mu[j]) * r)
                den *= c.br(r)
        for i in range(m):
            for j in range(i, m):
                xx = xs[i] * xs[j]
                num *= c.br(qp(mu[i] + mu[j]) * xx)
                den *= c.br(xx)
        for i in range(m):
            for j in range(m):
                xi, xj = xs[i], xs[j]
                num *= c.fa(mu[i], xi * xj, xi / (qp(alpha[j]) * xj))
                den *= c.fa(mu[i], qp(alpha[j] + 1) * xi * xj, Q * xi / xj)
        for i, x in enumerate(xs):
            for k, y in enumerate(ys):
                num *= c.fa(mu[i], qp(beta[k]) * x * y, Q * x / y)
                den *= c.fa(mu[i], x * y, qp(1 - beta[k]) * x / y)
        lhs += _div(num, den, "type C left term")
    num = c.fa(A, Q / (a1 * a2))
    den = c.fa(B, a1 * a2 / qp(A))
    for k, y in enumerate(ys):
        num *= c.fa(beta[k], a1 * y, a2 * y)
    for i, x in enumerate(xs):
        den *= c.fa(alpha[i], Q * x / a1, Q * x / a2)
    for i in range(m):
        for j in range(m):
            num *= c.fa(alpha[i], Q * xs[i] * xs[j])
    for i in range(m):
        for j in range(i + 1, m):
            den *= c.fa(alpha[i] + alpha[j], Q * xs[i] * xs[j])
    for k in range(n):
        for l in range(k + 1, n):
            num *= c.fa(beta[k] + beta[l], ys[k] * ys[l])
    for k in range(n):
        for l in range(n):
            den *= c.fa(beta[k], ys[k] * ys[l])
    for k, y in enumerate(ys):
        for i, x in enumerate(xs):
            num *= c.fa(beta[k], y / (qp(alpha[i]) * x))
            den *= c.fa(beta[k], y / x)
    pre = _div(num, den, "type C right prefactor")
    rsum = ZERO
    for nu in box_enumerate(beta):
        num = den = ONE
        for k, y in enumerate(ys):
            num *= c.fa(nu[k], y / a1, y / a2)
            den *= c.fa(nu[k], a1 * y, a2 * y)
        for k in range(n):
            for l in range(k + 1, n):
                r = ys[k] / ys[l]
                num *= c.br(qp(nu[k] - nu[l]) * r)
                den *= c.br(r)
        for k in range(n):
            for l in range(k, n):
                yy = ys[k] * ys[l]
                num *= c.br(qp(nu[k] + nu[l]) * yy / Q)
                den *= c.br(yy / Q)
        for k in range(n):
            for l in range(n):
                yk, yl = ys[k], ys[l]
                num *= c.fa(nu[k], yk * yl / Q, yk / (qp(beta[l]) * yl))
                den *= c.fa(nu[k], qp(beta[l]) * yk * yl, Q * yk / yl)
        for k, y in enumerate(ys):
            for i, x in enumerate(xs):
                num *= c.fa(nu[k], qp(alpha[i]) * y * x, y / x)
                den *= c.fa(nu[k], y * x, y / (qp(alpha[i]) * x))
        rsum += _div(num, den, "type C right term")
    return lhs, pre * rsum


# ------------------------------------------------------ eigenvalue ratio identity

def eigenvalue_ratio_sides(p: ParamPoint, lam: Sequence[int], m: int, n: int, u: QuarterMonomial = U) -> tuple:
    """``(Pochhammer ratio, e/E ratio, cell product)`` for ``λ ⊆ (n^m)``."""
    from .combinat import conjugate_star, pad, normalize

    a, b, cc, d = PARAMS
    alpha = (a * b * cc * d / Q).sqrt()
    ahat = (Q / T).sqrt() * alpha
    lam = pad(normalize(lam), m)
    sqt, stq = (Q / T).sqrt(), (T * Q).sqrt()
    num = den = ONE
    for i in range(1, m + 1):
        li = lam[i - 1]
        ati = alpha * T ** (m - i)
        num *= pochhammer(sqt * u * ati, Q, li, p) * pochhammer(stq * u / (ati * qp(li)), Q, li, p)
        den *= pochhammer(stq * u * ati, Q, li, p) * pochhammer(sqt * u / (ati * qp(li)), Q, li, p)
    first = _div(num, den, "eigenvalue ratio, Pochhammer form")
    star = pad(conjugate_star(lam, m, n), n)
    uv = p.value(u)
    Enum = Eden = ONE
    for k in range(1, n + 1):
        Enum *= e_value(uv, p.value(ahat * qp(n - k) * T ** star[k - 1]))
        Eden *= e_value(uv, p.value(ahat * qp(n - k)))
    second = _div(e_factorial(u, ahat, Q, n, p) * Enum,
                  e_factorial(u, ahat * T**m, Q, n, p) * Eden, "eigenvalue ratio, eigenvalue form")
    c = Ctx(p)
    num = den = ONE
    for i in range(1, m + 1):
        for j in range(1, lam[i - 1] + 1):
            cij = alpha * T ** (m - i) * qp(j - 1)
            num *= c.br(u * sqt * cij, sqt * cij / u)
            den *= c.br(u * stq * cij, stq * cij / u)
    third = _div(num, den, "eigenvalue ratio, cell product")
    return first, second, third


# ------------------------------------------------------ truncated generating identity

def truncated_generating_sides(p: ParamPoint, k: int, xs, u: QuarterMonomial = U) -> tuple:
    """Both sides of the finite generating identity at ``t = q^-k``; ``p`` must satisfy it."""
    if p.value(T) != p.value(Q) ** (-k):
        raise ValueError("point must satisfy t = q^-k")
    a, b, cc, d = PARAMS
    alpha = (a * b * cc * d / Q).sqrt()
    m = len(xs)
    lhs = ONE
    shift = Q ** mpq(1 - k, 2)
    for x in xs:
        lhs *= e_factorial(u, shift * x, Q, k, p)
    rhs = ZERO
    base = (T * Q).sqrt() / alpha
    for l in range(k * m + 1):
        rhs += h_row(l, m, p, xs, alpha, Q, T) * e_factorial(u, base, Q, k * m - l, p)
    return lhs, rhs


# ------------------------------------------------------ row-column operator relation

def dual_kernel_value(xv: Sequence[Scalar], yv: Sequence[Scalar]) -> Scalar:
    """``Ψ(x; y) = prod e(x_i; y_k)``."""
    val = ONE
    for x in xv:
        for y in yv:
            val *= e_value(x, y)
    return val


def h_d_weights(p: ParamPoint, l: int, m: int, n: int) -> list:
    """Weights of ``D^_{l-s}`` for ``s = 0..l``."""
    c = Ctx(p)
    a, b, cc, d = PARAMS
    alpha2 = a * b * cc * d / Q
    out = []
    for s in range(l + 1):
        w = _div(c.fa(s, qp(n - l + 1)), c.fa(s, Q), "H-D weight")
        w *= c.fa(s, qp(1 - l) * T ** (-m), T ** (m - 1) * qp(n) * alpha2)
        out.append(w)
    return out
