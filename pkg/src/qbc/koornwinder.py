"""Koornwinder polynomials at a parameter point, and the checks built on them.

``P_λ`` is obtained from the triangular eigenproblem of ``D_1`` on the orbit
sums ``m_μ`` with ``μ <= λ``. The matrix of ``D_1`` is recovered by exact
interpolation at sampled ``x`` points and certified at held-out points.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from .combinat import (
    LaurentPoly,
    conjugate_star,
    dominance_leq,
    dominated_basis,
    e_col,
    h_row,
    normalize,
    orbit_sum,
    pad,
    partitions_in_box,
    pieri_neighborhood,
    principal_point,
    signed_vectors,
    is_partition,
)
from .qops import (
    ParamQuad,
    PointOperator,
    hrow_coeff,
    hrow_operator,
    vandiejen_operator,
    variables,
)
from .scalars import ONE, ZERO, ParamPoint, Scalar, SingularPoint, e_value, random_point


class DegenerateSample(ArithmeticError):
    """The interpolation matrix was singular for every sample tried."""


class NotInSpan(AssertionError):
    """Held-out certification failed: ``D_1 m_μ`` left the expected span."""


class EigenvalueCollision(SingularPoint):
    """Two eigenvalues on the triangular block coincide at this point."""


MAX_SAMPLE_ATTEMPTS = 8
HELD_OUT = 3


def param_key(quad: ParamQuad, p: ParamPoint) -> tuple:
    gens = set()
    for z in (quad.a, quad.b, quad.c, quad.d, quad.q, quad.t):
        gens |= z.generators()
    roots = p.fourth_roots
    return tuple((g, roots[g]) for g in sorted(gens))


def parameter_point(quad: ParamQuad, p: ParamPoint) -> ParamPoint:
    return ParamPoint(dict(param_key(quad, p)))


def eigenvalue_column(lam: Sequence[int], r: int, quad: ParamQuad, p: ParamPoint, m: int) -> Scalar:
    """``e_r(α t^ρ q^λ; α|t)``."""
    pts = principal_point(lam, m, p, quad.alpha, quad.q, quad.t)
    return e_col(r, m, p, pts, quad.alpha, quad.t)


def eigenvalue_row(lam: Sequence[int], l: int, quad: ParamQuad, p: ParamPoint, m: int) -> Scalar:
    """``h_l(α t^ρ q^λ; α|q, t)``."""
    pts = principal_point(lam, m, p, quad.alpha, quad.q, quad.t)
    return h_row(l, m, p, pts, quad.alpha, quad.q, quad.t)


def eigenvalue_generating(lam: Sequence[int], u, quad: ParamQuad, p: ParamPoint, m: int) -> Scalar:
    """``prod_i e(u; α t^(m-i) q^(λ_i))``."""
    uv = p.value(u)
    val = ONE
    for xv in principal_point(lam, m, p, quad.alpha, quad.q, quad.t):
        val *= e_value(uv, xv)
    return val


@dataclass
class KoornwinderBasisMatrix:
    basis: list
    matrix: dict  # (ν, μ) -> M[ν][μ]

    def entry(self, nu, mu) -> Scalar:
        return self.matrix.get((nu, mu), ZERO)


@dataclass
class KoornwinderPoly:
    lam: tuple
    m: int
    quad: ParamQuad
    point: ParamPoint
    coeffs: dict  # μ -> c_μ
    poly: LaurentPoly = field(repr=False)

    def __call__(self, values: Sequence[Scalar]) -> Scalar:
        return self.poly.evaluate(values)

    def coefficient_list(self) -> list:
        """``[(μ, c_μ)]`` in basis order."""
        return list(self.coeffs.items())


def _sample_points(quad: ParamQuad, p: ParamPoint, m: int, count: int, rng: random.Random) -> list:
    base = parameter_point(quad, p)
    names = [f"x{i}" for i in range(1, m + 1)]
    out = []
    while len(out) < count:
        pt = random_point(rng, names, fixed=base.fourth_roots)
        out.append(pt)
    return out


def _solve(rows: list, rhs: list) -> list:
    n = len(rows)
    A = DomainMatrix([list(r) for r in rows], (n, n), QQ)
    b = DomainMatrix([[v] for v in rhs], (n, 1), QQ)
    return [r[0] for r in A.lu_solve(b).to_list()]


def build_matrix(lam: Sequence[int], quad: ParamQuad, p: ParamPoint, m: int, sample_seed: int = 0) -> KoornwinderBasisMatrix:
    """Matrix of ``D_1`` on ``{m_μ : μ <= λ}`` by evaluation and interpolation."""
    lam = normalize(lam)
    basis = dominated_basis(lam, m)
    orbits = {mu: orbit_sum(mu, m) for mu in basis}
    nb = len(basis)
    xs = variables("x", m)
    rng = random.Random(repr(("koornwinder", lam, m, param_key(quad, p), sample_seed)))
    for _ in range(MAX_SAMPLE_ATTEMPTS):
        evals, images = [], []
        try:
            for pt in _sample_points(quad, p, m, nb + HELD_OUT, rng):
                op = vandiejen_operator(1, quad, pt, xs)
                evals.append([orbits[nu].evaluate(op.values) for nu in basis])
                images.append([op.apply(orbits[mu].evaluate) for mu in basis])
            cols = {}
            for j, mu in enumerate(basis):
                cols[mu] = _solve(evals[:nb], [img[j] for img in images[:nb]])
        except (SingularPoint, DMNonInvertibleMatrixError):
            continue
        for s in range(nb, nb + HELD_OUT):
            for j, mu in enumerate(basis):
                pred = sum((evals[s][i] * cols[mu][i] for i in range(nb)), ZERO)
                if pred != images[s][j]:
                    raise NotInSpan(f"D_1 m_{mu} is not in the span of the dominated orbit sums")
        matrix = {}
        for mu in basis:
            for i, nu in enumerate(basis):
                if cols[mu][i]:
                    matrix[(nu, mu)] = cols[mu][i]
        return KoornwinderBasisMatrix(basis, matrix)
    raise DegenerateSample(f"no usable interpolation sample for λ={lam}")


_CACHE: dict = {}


def compute_koornwinder(lam: Sequence[int], quad: ParamQuad, p: ParamPoint, m: int, sample_seed: int = 0) -> KoornwinderPoly:
    """``P_λ`` at the parameter point ``p`` (only the parameter values of ``p`` matter)."""
    lam = normalize(lam)
    if len(lam) > m:
        raise ValueError(f"{lam} has more than {m} parts")
    key = (lam, m, quad, param_key(quad, p), sample_seed)
    hit = _CACHE.get(key)
    if hit is not None:
        return hit
    bm = build_matrix(lam, quad, p, m, sample_seed)
    E = eigenvalue_column(lam, 1, quad, p, m)
    coeffs = {lam: ONE}
    for nu in reversed(bm.basis):
        if nu == lam:
            continue
        acc = ZERO
        for kappa, c in coeffs.items():
            acc += bm.entry(nu, kappa) * c
        den = bm.entry(nu, nu) - E
        if den == 0:
            raise EigenvalueCollision(f"eigenvalues of {nu} and {lam} coincide")
        if acc:
            coeffs[nu] = -acc / den
    ordered = {mu: coeffs[mu] for mu in bm.basis if mu in coeffs}
    poly = LaurentPoly(m)
    for mu, c in ordered.items():
        poly = poly + orbit_sum(mu, m) * c
    result = KoornwinderPoly(lam, m, quad, parameter_point(quad, p), ordered, poly)
    _CACHE[key] = result
    return result


def clear_cache() -> None:
    _CACHE.clear()


def triangular_support_ok(P: KoornwinderPoly) -> bool:
    return P.coeffs.get(P.lam) == 1 and all(dominance_leq(mu, P.lam) for mu in P.coeffs)


# ------------------------------------------------------------------ residuals

def eigen_residual_D(P: KoornwinderPoly, r: int, p: ParamPoint) -> Scalar:
    """``(D_r P_λ)(x) - e_r(α t^ρ q^λ) P_λ(x)`` at the ``x`` values of ``p``."""
    op = vandiejen_operator(r, P.quad, p, variables("x", P.m))
    return op.apply(P) - eigenvalue_column(P.lam, r, P.quad, p, P.m) * P(op.values)


def eigen_residual_H(P: KoornwinderPoly, l: int, p: ParamPoint) -> Scalar:
    op = hrow_operator(l, P.quad, p, variables("x", P.m))
    return op.apply(P) - eigenvalue_row(P.lam, l, P.quad, p, P.m) * P(op.values)


def normalized_value(P: KoornwinderPoly, values: Sequence[Scalar], p: ParamPoint) -> Scalar:
    """``P_λ(x) / P_λ(a t^ρ)``."""
    base = P(principal_point((), P.m, p, P.quad.a, P.quad.q, P.quad.t))
    if base == 0:
        raise SingularPoint("P_λ vanishes at the base point")
    return P(values) / base


def duality_residual(lam, mu, quad: ParamQuad, p: ParamPoint, m: int) -> Scalar:
    """``P_λ(a t^ρ q^μ)/P_λ(a t^ρ) - P'_μ(α t^ρ q^λ)/P'_μ(α t^ρ)``, primes meaning dual parameters."""
    dual = quad.dual()
    P = compute_koornwinder(lam, quad, p, m)
    Pd = compute_koornwinder(mu, dual, p, m)
    left = normalized_value(P, principal_point(mu, m, p, quad.a, quad.q, quad.t), p)
    right = normalized_value(Pd, principal_point(lam, m, p, dual.a, dual.q, dual.t), p)
    return left - right


def verify_duality(lam, mu, quad: ParamQuad, points: Sequence[ParamPoint], m: int) -> bool:
    return all(duality_residual(lam, mu, quad, p, m) == 0 for p in points)


def dual_cauchy_kernel(m: int, n: int) -> LaurentPoly:
    """``Ψ(x; y) = prod e(x_i; y_k)`` in the variables ``(x_1..x_m, y_1..y_n)``."""
    N = m + n
    psi = LaurentPoly.constant(N)
    for i in range(m):
        for k in range(n):
            f = {}
            for idx, c in ((i, 1), (i, -1), (m + k, 1), (m + k, -1)):
                e = [0] * N
                e[idx] = c
                f[tuple(e)] = 1 if idx == i else -1
            psi = psi * LaurentPoly(N, f)
    return psi


def dual_cauchy_sum(m: int, n: int, quad: ParamQuad, p: ParamPoint) -> LaurentPoly:
    """``sum_{λ ⊆ (n^m)} (-1)^|λ*| P_λ(x) P^_{λ*}(y)`` with ``P^`` at ``(q, t)`` swapped."""
    hat = quad.hat()
    total = LaurentPoly(m + n)
    for lam in partitions_in_box(m, n):
        star = conjugate_star(lam, m, n)
        Px = compute_koornwinder(lam, quad, p, m).poly if m else LaurentPoly.constant(0)
        Py = compute_koornwinder(star, hat, p, n).poly if n else LaurentPoly.constant(0)
        total = total + Px.tensor(Py) * (-1) ** sum(star)
    return total


def dual_cauchy_residual(m: int, n: int, quad: ParamQuad, p: ParamPoint) -> LaurentPoly:
    return dual_cauchy_kernel(m, n) - dual_cauchy_sum(m, n, quad, p)


def verify_dual_cauchy_expansion(m: int, n: int, quad: ParamQuad, p: ParamPoint) -> bool:
    return dual_cauchy_residual(m, n, quad, p).is_zero()


def pieri_coefficient(mu, nu, l: int, quad: ParamQuad, p: ParamPoint, m: int) -> Scalar:
    """``H^{(l)}_ν(α t^ρ q^μ; α, β, γ, δ)``."""
    dual = quad.dual()
    xs = [dual.a * dual.t ** (m - i) * dual.q ** k for i, k in enumerate(pad(normalize(mu), m), start=1)]
    return hrow_coeff(l, nu, dual, p, xs)


def pieri_excluded(mu, l: int, m: int) -> list:
    """Signed ``ν`` with ``sum |ν_i| <= l`` and ``μ + ν`` outside the Pieri set."""
    keep = pieri_neighborhood(mu, m, l)
    mu_p = pad(normalize(mu), m)
    out = []
    for nu in signed_vectors(m, l):
        lam = tuple(a + b for a, b in zip(mu_p, nu))
        if not (is_partition(lam) and normalize(lam) in keep):
            out.append(nu)
    return out


def pieri_residual(mu, l: int, quad: ParamQuad, p: ParamPoint, m: int) -> Scalar:
    """Both sides of the row-type Pieri formula at the ``x`` values of ``p``."""
    xv = [p.value(z) for z in variables("x", m)]
    Pm = compute_koornwinder(mu, quad, p, m)
    lhs = h_row(l, m, p, xv, quad.a, quad.q, quad.t) * normalized_value(Pm, xv, p)
    rhs = ZERO
    mu_p = pad(normalize(mu), m)
    for lam in sorted(pieri_neighborhood(mu, m, l)):
        nu = tuple(a - b for a, b in zip(pad(lam, m), mu_p))
        c = pieri_coefficient(mu, nu, l, quad, p, m)
        if c:
            rhs += c * normalized_value(compute_koornwinder(lam, quad, p, m), xv, p)
    return lhs - rhs


def verify_pieri_row(mu, l: int, quad: ParamQuad, points: Sequence[ParamPoint], m: int) -> bool:
    if any(pieri_coefficient(mu, nu, l, quad, points[0], m) for nu in pieri_excluded(mu, l, m)):
        return False
    return all(pieri_residual(mu, l, quad, p, m) == 0 for p in points)


def apply_to(op: PointOperator, P: KoornwinderPoly) -> Scalar:
    return op.apply(P)
