"""Van Diejen operators, their generating function, kernel-conjugated actions and row-type operators.

Operators are realized pointwise. Coefficients are products of brackets of
quarter monomials in the parameter generators and the variable generators
(``x1, x2, ...`` or ``y1, ...``) evaluated at a ``ParamPoint``. The shift
``T_{q,x_i}`` multiplies the value of ``x_i`` by the value of the quad's ``q``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from .combinat import compositions, signed_vectors
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
)

Monomials = Sequence[QuarterMonomial]


@dataclass(frozen=True)
class ParamQuad:
    """Parameters ``(a, b, c, d | q, t)`` as quarter monomials."""

    a: QuarterMonomial
    b: QuarterMonomial
    c: QuarterMonomial
    d: QuarterMonomial
    q: QuarterMonomial
    t: QuarterMonomial

    @classmethod
    def standard(cls) -> "ParamQuad":
        return cls(*(gen(s) for s in "abcdqt"))

    @property
    def params(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    @property
    def alpha(self) -> QuarterMonomial:
        return (self.a * self.b * self.c * self.d / self.q).sqrt()

    def tilde(self) -> "ParamQuad":
        s = (self.t * self.q).sqrt()
        return ParamQuad(*(s / z for z in self.params), self.q, self.t)

    def hat(self) -> "ParamQuad":
        return ParamQuad(*self.params, self.t, self.q)

    def dual(self) -> "ParamQuad":
        al = self.alpha
        a = self.a
        return ParamQuad(al, a * self.b / al, a * self.c / al, a * self.d / al, self.q, self.t)


def variables(prefix: str, count: int) -> list:
    return [gen(f"{prefix}{i}") for i in range(1, count + 1)]


def _nz(v: Scalar, what: str) -> Scalar:
    if v == 0:
        raise SingularPoint(f"vanishing denominator in {what}")
    return v


def w_weight(z: QuarterMonomial, quad: ParamQuad, p: ParamPoint) -> Scalar:
    """``<az, bz, cz, dz> / <z^2, q z^2>``."""
    br = p.bracket
    num = br(quad.a * z) * br(quad.b * z) * br(quad.c * z) * br(quad.d * z)
    z2 = z * z
    return num / _nz(br(z2) * br(quad.q * z2), "w")


def v_weight(z: QuarterMonomial, p: ParamPoint, tgen: QuarterMonomial | None = None) -> Scalar:
    """``<t z> / <z>``."""
    if tgen is None:
        tgen = gen("t")
    return p.bracket(tgen * z) / _nz(p.bracket(z), "v")


def _v(z, quad, p):
    return v_weight(z, p, quad.t)


def _vpm(zi, zj, quad, p):
    return _v(zi * zj, quad, p) * _v(zi / zj, quad, p)


def V_coeff(I_eps: dict, J: Sequence[int], quad: ParamQuad, p: ParamPoint, xs: Monomials) -> Scalar:
    """``V_{εI,J}``; ``I_eps`` maps index to sign, indices are 0-based into ``xs``."""
    val = ONE
    I = sorted(I_eps)
    z = {i: xs[i] ** I_eps[i] for i in I}
    for i in I:
        val *= w_weight(z[i], quad, p)
    for a, i in enumerate(I):
        for j in I[a + 1:]:
            val *= _v(z[i] * z[j], quad, p) * _v(quad.q * z[i] * z[j], quad, p)
    for i in I:
        for j in J:
            val *= _vpm(z[i], xs[j], quad, p)
    return val


def _u_terms(J: Sequence[int], quad: ParamQuad, p: ParamPoint, xs: Monomials):
    """Yield ``(|I|, unsigned product)`` for every signed subset ``(I, δ)`` of ``J``."""
    J = sorted(J)
    qi = quad.q.inverse()
    for r in range(len(J) + 1):
        for I in itertools.combinations(J, r):
            rest = [j for j in J if j not in I]
            for signs in itertools.product((1, -1), repeat=r):
                z = [xs[i] ** s for i, s in zip(I, signs)]
                val = ONE
                for zi in z:
                    val *= w_weight(zi, quad, p)
                for a in range(r):
                    for b in range(a + 1, r):
                        zz = z[a] * z[b]
                        val *= _v(zz, quad, p) * _v(qi / zz, quad, p)
                for zi in z:
                    for j in rest:
                        val *= _vpm(zi, xs[j], quad, p)
                yield r, val


def U_coeff(J: Sequence[int], r: int, quad: ParamQuad, p: ParamPoint, xs: Monomials) -> Scalar:
    """``U_{J,r}``, the signed sum over signed ``r``-subsets of ``J``."""
    if not 0 <= r <= len(J):
        return ZERO
    total = ZERO
    for k, val in _u_terms(J, quad, p, xs):
        if k == r:
            total += val
    return (-1) ** r * total


def U_coeff_literal(J: Sequence[int], r: int, quad: ParamQuad, p: ParamPoint, xs: Monomials) -> Scalar:
    """``U_{J,r}`` coded directly from its bracket form (independent of ``w``/``v``)."""
    if not 0 <= r <= len(J):
        return ZERO
    br = p.bracket
    a, b, c, d = quad.params
    q, t = quad.q, quad.t
    total = ZERO
    for I in itertools.combinations(sorted(J), r):
        rest = [j for j in J if j not in I]
        for signs in itertools.product((1, -1), repeat=r):
            z = [xs[i] ** s for i, s in zip(I, signs)]
            num = den = ONE
            for zi in z:
                num *= br(a * zi) * br(b * zi) * br(c * zi) * br(d * zi)
                den *= br(zi * zi) * br(q * zi * zi)
            for i in range(r):
                for j in range(i + 1, r):
                    zz = z[i] * z[j]
                    num *= br(t * zz) * br(q * zz / t)
                    den *= br(zz) * br(q * zz)
            for zi in z:
                for j in rest:
                    num *= br(t * zi * xs[j]) * br(t * zi / xs[j])
                    den *= br(zi * xs[j]) * br(zi / xs[j])
            total += num / _nz(den, "U")
    return (-1) ** r * total


def U_gen(J: Sequence[int], u: QuarterMonomial, quad: ParamQuad, p: ParamPoint, xs: Monomials) -> Scalar:
    """``U_J(u; x) = sum e(u; α)_{t,|J|-|I|} * (unsigned product)``."""
    n = len(J)
    efac = [e_factorial(u, quad.alpha, quad.t, k, p) for k in range(n + 1)]
    total = ZERO
    for k, val in _u_terms(J, quad, p, xs):
        total += efac[n - k] * val
    return total


# ----------------------------------------------------------------- operators

class PointOperator:
    """Finite sum ``sum_i c_i T^{s_i}`` frozen at one point.

    ``values`` are the numeric variable values at the point and ``base`` the
    numeric shift base. ``apply(f)`` evaluates ``sum c_i f(shifted values)``.
    """

    __slots__ = ("terms", "values", "base")

    def __init__(self, terms, values: Sequence[Scalar], base: Scalar):
        merged: dict = {}
        for c, s in terms:
            s = tuple(s)
            merged[s] = merged.get(s, ZERO) + c
        self.terms = [(c, s) for s, c in merged.items() if c]
        self.values = list(values)
        self.base = base

    def shifted(self, shift: Sequence[int]) -> list:
        b = self.base
        return [v * b**k if k else v for v, k in zip(self.values, shift)]

    def apply(self, f: Callable[[list], Scalar]) -> Scalar:
        total = ZERO
        for c, s in self.terms:
            total += c * f(self.shifted(s))
        return total

    def __add__(self, other: "PointOperator") -> "PointOperator":
        return PointOperator(self.terms + other.terms, self.values, self.base)

    def scale(self, c: Scalar) -> "PointOperator":
        return PointOperator([(c * v, s) for v, s in self.terms], self.values, self.base)


def _signed_subsets(m: int, max_size: int | None = None):
    top = m if max_size is None else min(m, max_size)
    for k in range(top + 1):
        for I in itertools.combinations(range(m), k):
            for signs in itertools.product((1, -1), repeat=k):
                yield dict(zip(I, signs))


def _shift(I_eps: dict, m: int) -> tuple:
    return tuple(I_eps.get(i, 0) for i in range(m))


def _make(terms, quad: ParamQuad, p: ParamPoint, xs: Monomials) -> PointOperator:
    return PointOperator(terms, [p.value(z) for z in xs], p.value(quad.q))


def vandiejen_operator(r: int, quad: ParamQuad, p: ParamPoint, xs: Monomials) -> PointOperator:
    """``D_r`` at the point ``p`` acting on the variables ``xs``."""
    m = len(xs)
    if not 0 <= r <= m:
        raise ValueError("need 0 <= r <= m")
    terms = []
    for I_eps in _signed_subsets(m, r):
        J = [j for j in range(m) if j not in I_eps]
        V = V_coeff(I_eps, J, quad, p, xs)
        if V:
            U = U_coeff(J, r - len(I_eps), quad, p, xs)
            terms.append((V * U, _shift(I_eps, m)))
    return _make(terms, quad, p, xs)


def vandiejen_apply(r: int, f, quad: ParamQuad, p: ParamPoint, xs: Monomials) -> Scalar:
    return vandiejen_operator(r, quad, p, xs).apply(f)


def koornwinder_operator(quad: ParamQuad, p: ParamPoint, xs: Monomials) -> PointOperator:
    """Koornwinder's operator ``sum A_i(x)(T_i - 1) + A_i(1/x)(T_i^-1 - 1)``."""
    br = p.bracket
    a, b, c, d = quad.params
    q, t = quad.q, quad.t
    m = len(xs)

    def A(i, sign):
        zi = xs[i] ** sign
        num = br(a * zi) * br(b * zi) * br(c * zi) * br(d * zi)
        den = br(zi * zi) * br(q * zi * zi)
        for j in range(m):
            if j != i:
                num *= br(t * zi * xs[j]) * br(t * zi / xs[j])
                den *= br(zi * xs[j]) * br(zi / xs[j])
        return num / _nz(den, "A_i")

    terms = []
    zero = (0,) * m
    for i in range(m):
        for sign in (1, -1):
            coeff = A(i, sign)
            shift = [0] * m
            shift[i] = sign
            terms.append((coeff, tuple(shift)))
            terms.append((-coeff, zero))
    return _make(terms, quad, p, xs)


def dgen_operator(u: QuarterMonomial, quad: ParamQuad, p: ParamPoint, xs: Monomials, form: str = "expansion") -> PointOperator:
    """Generating function ``D(u) = sum_r (-1)^r D_r e(u; α)_{t,m-r}``.

    ``form="expansion"`` uses the signed-subset expansion with ``U_J(u; x)``;
    ``form="rsum"`` assembles it from the individual ``D_r``.
    """
    m = len(xs)
    if form == "rsum":
        op = PointOperator([], [p.value(z) for z in xs], p.value(quad.q))
        for r in range(m + 1):
            ef = e_factorial(u, quad.alpha, quad.t, m - r, p)
            op = op + vandiejen_operator(r, quad, p, xs).scale((-1) ** r * ef)
        return op
    terms = []
    for I_eps in _signed_subsets(m):
        J = [j for j in range(m) if j not in I_eps]
        V = V_coeff(I_eps, J, quad, p, xs)
        if V:
            terms.append(((-1) ** len(I_eps) * V * U_gen(J, u, quad, p, xs), _shift(I_eps, m)))
    return _make(terms, quad, p, xs)


def dgen_apply(u: QuarterMonomial, f, quad: ParamQuad, p: ParamPoint, xs: Monomials, form: str = "expansion") -> Scalar:
    return dgen_operator(u, quad, p, xs, form).apply(f)


# ------------------------------------------------------- kernel-conjugated forms

def F_ratio(zs: Monomials, ws: Monomials, quad: ParamQuad, p: ParamPoint) -> Scalar:
    """``F(z; w) = prod e(sqrt(q/t) z_i; w_k) / e(sqrt(tq) z_i; w_k)``."""
    if not zs or not ws:
        return ONE
    s_num = (quad.q / quad.t).sqrt()
    s_den = (quad.q * quad.t).sqrt()
    wv = [p.value(w) for w in ws]
    val = ONE
    for z in zs:
        nz, dz = p.value(s_num * z), p.value(s_den * z)
        for w in wv:
            val *= e_value(nz, w) / _nz(e_value(dz, w), "F")
    return val


def conjugated_generating(u: QuarterMonomial, quad: ParamQuad, p: ParamPoint, xs: Monomials, ys: Monomials) -> Scalar:
    """``sum (-1)^|I| V_{εI,I^c}(x) U_{I^c}(u; x) F(x_I^ε; y)``.

    With ``(quad, xs, ys)`` this is ``Φ^-1 D^x(u) Φ``; with
    ``(quad.tilde(), ys, xs)`` it is ``Φ^-1 D~^y(u) Φ``.
    """
    m = len(xs)
    total = ZERO
    for I_eps in _signed_subsets(m):
        J = [j for j in range(m) if j not in I_eps]
        V = V_coeff(I_eps, J, quad, p, xs)
        if not V:
            continue
        F = F_ratio([xs[i] ** s for i, s in I_eps.items()], ys, quad, p)
        total += (-1) ** len(I_eps) * V * U_gen(J, u, quad, p, xs) * F
    return total


def conjugated_dgen(u: QuarterMonomial, quad: ParamQuad, p: ParamPoint, xs: Monomials, ys: Monomials, side: str = "x") -> Scalar:
    """Left (``side="x"``) or right (``side="y"``, tilde parameters) sum of the kernel identity."""
    if side == "x":
        return conjugated_generating(u, quad, p, xs, ys)
    if side == "y":
        return conjugated_generating(u, quad.tilde(), p, ys, xs)
    raise ValueError("side must be 'x' or 'y'")


def conjugated_dr(r: int, quad: ParamQuad, p: ParamPoint, xs: Monomials, ys: Monomials) -> Scalar:
    """``Φ^-1 D_r^x Φ = sum_{|I|<=r} V U_{I^c, r-|I|} F(x_I^ε; y)``."""
    m = len(xs)
    total = ZERO
    for I_eps in _signed_subsets(m, r):
        J = [j for j in range(m) if j not in I_eps]
        V = V_coeff(I_eps, J, quad, p, xs)
        if not V:
            continue
        F = F_ratio([xs[i] ** s for i, s in I_eps.items()], ys, quad, p)
        total += V * U_coeff(J, r - len(I_eps), quad, p, xs) * F
    return total


# ------------------------------------------------------------ row-type operators

class _Fact:
    """Memoized ``<z>_{q,k}`` at a point."""

    def __init__(self, p: ParamPoint, q: QuarterMonomial):
        self.p, self.q = p, q
        self.cache: dict = {}

    def __call__(self, z: QuarterMonomial, k: int) -> Scalar:
        key = (z, k)
        v = self.cache.get(key)
        if v is None:
            if k < 0:
                raise ValueError("negative length in bracket factorial")
            v = ONE
            br = self.p.bracket
            for _ in range(k):
                v *= br(z)
                z = z * self.q
            self.cache[key] = v
        return v


def hrow_coeff(l: int, nu: Sequence[int], quad: ParamQuad, p: ParamPoint, xs: Monomials) -> Scalar:
    """Coefficient ``H^{(l)}_ν(x)`` of the row-type operator ``H_l``.

    ``ν`` may be signed; negative entries invert the matching variable.
    """
    m = len(xs)
    if len(nu) != m:
        raise ValueError("ν must have length m")
    if sum(abs(v) for v in nu) > l:
        return ZERO
    xs = [z if v >= 0 else z.inverse() for z, v in zip(xs, nu)]
    nu = [abs(v) for v in nu]
    q, t = quad.q, quad.t
    a, b, c, d = quad.params
    br = p.bracket
    fac = _Fact(p, q)
    n_abs = sum(nu)
    inv = [z.inverse() for z in xs]

    def qp(k):
        return q**k

    total = ZERO
    for plus_extra in range(l - n_abs + 1):
        for extra in compositions(plus_extra, m):
            nup = [v + e for v, e in zip(nu, extra)]
            rest = l - sum(nup)
            for num_ in compositions(rest, m):
                if any(nm > l - np_ for nm, np_ in zip(num_, nup)):
                    continue
                num = den = ONE
                for i in range(m):
                    x, xi = xs[i], inv[i]
                    num *= fac(a * x, nup[i]) * fac(b * x, nup[i]) * fac(c * x, nup[i]) * fac(d * x, nup[i])
                    num *= fac(a * xi, num_[i]) * fac(b * xi, num_[i]) * fac(c * xi, num_[i]) * fac(d * xi, num_[i])
                    den *= fac(x * x, nu[i] + nup[i]) * fac(xi * xi, nu[i] + num_[i])
                for i in range(m):
                    for j in range(i, m):
                        xx = xs[i] * xs[j]
                        num *= br(qp(nu[i] + nu[j]) * xx)
                        den *= br(xx)
                for i in range(m):
                    for j in range(i + 1, m):
                        r_ = xs[i] / xs[j]
                        num *= br(qp(nu[i] - nu[j]) * r_) * br(qp(nup[i] - nup[j]) * r_) * br(qp(num_[j] - num_[i]) * r_)
                        den *= br(r_) ** 3
                        xx = xs[i] * xs[j]
                        xxi = xx.inverse()
                        num *= fac(t * xx, nup[i] + nup[j]) * fac(q * xx, nup[i] + nup[j])
                        num *= fac(t * xxi, num_[i] + num_[j]) * fac(q * xxi, num_[i] + num_[j])
                        den *= fac(xx, nu[i] + nup[j]) * fac(xx, nup[i] + nu[j])
                        den *= fac(xxi, nu[i] + num_[j]) * fac(xxi, num_[i] + nu[j])
                for i in range(m):
                    for j in range(m):
                        xx = xs[i] * xs[j]
                        xxi = xx.inverse()
                        r_ = xs[i] / xs[j]
                        ri = r_.inverse()
                        num *= br(qp(nup[i] - num_[j]) * xx) * br(xxi)
                        den *= br(qp(nu[i] + nup[j]) * xx) * br(qp(nu[i] + num_[j]) * xxi)
                        num *= fac(qp(-nup[j]) * r_, nu[i]) * fac(t * r_, nup[i])
                        num *= fac(qp(nup[j] + 1) * ri, num_[i]) * fac(t * qp(nup[j]) * ri, num_[i])
                        num *= fac(xx, nu[i]) * fac(qp(num_[j] + 1) * xxi, nu[i])
                        den *= fac(q * r_, nu[i]) * fac(q * r_, nup[i])
                        den *= fac(q * ri, num_[i]) * fac(qp(nu[j] + 1) * ri, num_[i])
                        den *= fac(q * xx, nup[i]) * fac(qp(1 - nu[j]) * xxi, num_[i])
                    if not num:
                        break
                if num:
                    total += (-1) ** l * num / _nz(den, "H coefficient")
    return total


def hrow_coeff_top(nu: Sequence[int], quad: ParamQuad, p: ParamPoint, xs: Monomials) -> Scalar:
    """Closed product for ``H^{(l)}_ν`` when ``ν ∈ N^m`` and ``|ν| = l``."""
    m = len(xs)
    q, t = quad.q, quad.t
    a, b, c, d = quad.params
    br = p.bracket
    fac = _Fact(p, q)
    num = den = ONE
    for i in range(m):
        x = xs[i]
        num *= fac(a * x, nu[i]) * fac(b * x, nu[i]) * fac(c * x, nu[i]) * fac(d * x, nu[i])
        den *= fac(x * x, 2 * nu[i])
    for i in range(m):
        for j in range(i + 1, m):
            xx = xs[i] * xs[j]
            r_ = xs[i] / xs[j]
            num *= fac(t * xx, nu[i] + nu[j]) * br(q ** (nu[i] - nu[j]) * r_)
            den *= fac(xx, nu[i] + nu[j]) * br(r_)
    for i in range(m):
        for j in range(m):
            r_ = xs[i] / xs[j]
            num *= fac(t * r_, nu[i])
            den *= fac(q * r_, nu[i])
    return num / _nz(den, "H top coefficient")


def hrow_operator(l: int, quad: ParamQuad, p: ParamPoint, xs: Monomials) -> PointOperator:
    """``H_l = sum_{ν ∈ Z^m, |ν| <= l} H^{(l)}_ν(x) T^ν``."""
    m = len(xs)
    terms = []
    for nu in signed_vectors(m, l):
        c = hrow_coeff(l, nu, quad, p, xs)
        if c:
            terms.append((c, nu))
    return _make(terms, quad, p, xs)


def hrow_apply(l: int, f, quad: ParamQuad, p: ParamPoint, xs: Monomials) -> Scalar:
    return hrow_operator(l, quad, p, xs).apply(f)
