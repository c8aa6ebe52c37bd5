"""Verifiers: each identity is evaluated on both sides at seeded random points.

A verifier returns a ``VerificationReport``. Every trial draws a fresh generic
point from a ``random.Random`` seeded by ``(id, sizes, seed, trial, attempt)``,
so reports are reproducible. A trial that hits a vanishing denominator is
resampled up to ``MAX_RESAMPLES`` times; after that the report is marked
``singular`` rather than failed.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import formulas as F
from .combinat import (
    e_col,
    h_row,
    normalize,
    pad,
    partitions_in_box,
    partitions_upto,
    principal_point,
)
from .koornwinder import (
    DegenerateSample,
    compute_koornwinder,
    dual_cauchy_residual,
    duality_residual,
    eigen_residual_D,
    eigen_residual_H,
    pieri_coefficient,
    pieri_excluded,
    pieri_residual,
    triangular_support_ok,
)
from .qops import (
    ParamQuad,
    conjugated_dr,
    conjugated_generating,
    dgen_apply,
    hrow_operator,
    vandiejen_operator,
    variables,
)
from .scalars import (
    ONE,
    ZERO,
    ParamPoint,
    Scalar,
    SingularPoint,
    e_factorial,
    format_scalar,
    gen,
    mpq,
    random_point,
    t_binomial,
)

MAX_RESAMPLES = 8
DEFAULT_TRIALS = 5
PARAM_NAMES = ("a", "b", "c", "d", "q", "t", "u")
NONZERO = "nonzero:"

U, T, Q = gen("u"), gen("t"), gen("q")
QUAD = ParamQuad.standard()


class ChainOverflow(ValueError):
    """The chain lattice of a multi-sum exceeds the configured term budget."""


@dataclass
class VerificationReport:
    """Outcome of one verifier run.

    ``residuals`` holds the primary residual of each completed trial and
    ``aux`` the residuals of secondary checks by name. Names starting with
    ``nonzero:`` are negative controls and must NOT vanish.
    """

    id: str
    anchor: str
    sizes: dict
    seed: int
    trials: int
    passed: bool = False
    status: str = "fail"
    residuals: list = field(default_factory=list)
    aux: dict = field(default_factory=dict)
    points: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)
    time_ms: float = 0.0
    diagnostic: str = ""

    def to_json(self, with_time: bool = True) -> dict:
        out = {
            "id": self.id,
            "anchor": self.anchor,
            "sizes": self.sizes,
            "seed": self.seed,
            "trials": self.trials,
            "pass": self.passed,
            "status": self.status,
            "residuals": [format_scalar(r) for r in self.residuals],
            "aux": {k: [format_scalar(r) for r in v] for k, v in self.aux.items()},
            "points": self.points,
        }
        if self.notes:
            out["notes"] = self.notes
        if self.diagnostic:
            out["diagnostic"] = self.diagnostic
        if with_time:
            out["time_ms"] = round(self.time_ms, 3)
        return out


def _sizes_key(sizes: dict) -> tuple:
    return tuple((k, tuple(v) if isinstance(v, (list, tuple)) else v) for k, v in sorted(sizes.items()))


def generators(m: int = 0, n: int = 0, params: Sequence[str] = PARAM_NAMES) -> list:
    return list(params) + [f"x{i}" for i in range(1, m + 1)] + [f"y{k}" for k in range(1, n + 1)]


def trial_rng(check_id: str, sizes: dict, seed: int, trial: int, attempt: int) -> random.Random:
    return random.Random(repr((check_id, _sizes_key(sizes), seed, trial, attempt)))


def run_trials(check_id: str, anchor: str, sizes: dict, seed: int, trials: int,
               evaluate: Callable[[ParamPoint], dict],
               sample: Callable[[random.Random], ParamPoint],
               notes: dict | None = None) -> VerificationReport:
    """Run ``trials`` seeded trials of ``evaluate``.

    ``evaluate(p)`` returns an ordered dict of residuals; its first entry is
    the primary residual.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rep = VerificationReport(check_id, anchor, dict(sizes), seed, trials, notes=dict(notes or {}))
    start = time.perf_counter()
    ok = True
    for trial in range(trials):
        for attempt in range(MAX_RESAMPLES + 1):
            p = sample(trial_rng(check_id, sizes, seed, trial, attempt))
            try:
                res = evaluate(p)
            except (SingularPoint, DegenerateSample) as exc:
                rep.diagnostic = f"trial {trial}: {exc}"
                continue
            break
        else:
            rep.status = "singular"
            rep.diagnostic = f"resample budget exhausted; last: {rep.diagnostic}"
            rep.time_ms = (time.perf_counter() - start) * 1000
            return rep
        rep.diagnostic = ""
        rep.points.append(p.to_json())
        items = list(res.items())
        rep.residuals.append(items[0][1])
        ok = ok and _good(*items[0])
        for name, val in items[1:]:
            rep.aux.setdefault(name, []).append(val)
            ok = ok and _good(name, val)
    rep.passed = ok
    rep.status = "pass" if ok else "fail"
    rep.time_ms = (time.perf_counter() - start) * 1000
    return rep


def _good(name: str, val: Scalar) -> bool:
    return val != 0 if name.startswith(NONZERO) else val == 0


def _sampler(m: int = 0, n: int = 0, params: Sequence[str] = PARAM_NAMES):
    names = generators(m, n, params)
    return lambda rng: random_point(rng, names)


# ------------------------------------------------------------ kernel identities

def verify_cauchy_kernel(m: int, n: int, seed: int = 0, trials: int = DEFAULT_TRIALS) -> VerificationReport:
    """Conjugated kernel identity: x-side equals ``e(u; α)_{t, m-n}`` times the y-side."""
    if m < 0 or n < 0 or m + n > 4:
        raise ValueError("need m, n >= 0 and m + n <= 4")
    xs, ys = variables("x", m), variables("y", n)

    def evaluate(p):
        lhs = conjugated_generating(U, QUAD, p, xs, ys)
        rhs = e_factorial(U, QUAD.alpha, QUAD.t, m - n, p) * conjugated_generating(U, QUAD.tilde(), p, ys, xs)
        out = {"kernel": lhs - rhs}
        if n == 0:
            out["D(u)1"] = dgen_apply(U, lambda v: ONE, QUAD, p, xs) - e_factorial(U, QUAD.alpha, QUAD.t, m, p)
        return out

    return run_trials("cauchy", "Cauchy-type kernel identity", {"m": m, "n": n}, seed, trials, evaluate, _sampler(m, n))


def verify_swapped_kernel(m: int, n: int, seed: int = 0, trials: int = DEFAULT_TRIALS) -> VerificationReport:
    """Explicit (q,t)-swapped identity, plus agreement with the generic form at swapped parameters."""
    if m < 0 or n < 0 or m + n > 4:
        raise ValueError("need m, n >= 0 and m + n <= 4")
    xs, ys = variables("x", m), variables("y", n)
    hat = QUAD.hat()

    def evaluate(p):
        lhs, rhs = F.swapped_kernel_sides(p, xs, ys)
        swap_l = conjugated_generating(U, hat, p, xs, ys)
        swap_r = e_factorial(U, hat.alpha, hat.t, m - n, p) * conjugated_generating(U, hat.tilde(), p, ys, xs)
        return {"explicit": lhs - rhs, "swap-left": lhs - swap_l, "swap-right": rhs - swap_r}

    return run_trials("thm2-2", "explicit (q,t)-swapped kernel identity", {"m": m, "n": n}, seed, trials, evaluate, _sampler(m, n))


def verify_coefficient_relation(r: int, m: int, n: int, seed: int = 0, trials: int = DEFAULT_TRIALS) -> VerificationReport:
    """Coefficient of the kernel identity at order ``r``; ``r = 1`` is also checked in KNS form."""
    if not 0 <= r <= m:
        raise ValueError("need 0 <= r <= m")
    xs, ys = variables("x", m), variables("y", n)
    al, tq = QUAD.alpha, QUAD.tilde()

    def evaluate(p):
        lhs = conjugated_dr(r, QUAD, p, xs, ys)
        rhs = ZERO
        for k in range(r + 1):
            w = t_binomial(n - k, r - k, T, p)
            if w:
                e = e_factorial(T ** mpq(n - k + 1, 2) / al, T ** mpq(1 + n - 2 * m + k, 2) / al, T, r - k, p)
                rhs += w * e * conjugated_dr(k, tq, p, ys, xs)
        out = {"relation": lhs - rhs}
        if r == 1:
            tb = p.bracket(T)
            out["kns-form"] = (tb * lhs - tb * conjugated_dr(1, tq, p, ys, xs)
                               - p.bracket(T**m) * p.bracket(T ** (-n)) * p.bracket(al * al * T ** (m - n - 1)))
        return out

    notes = {"kns": True} if r == 1 else {}
    rep = run_trials("coeff-rel", "kernel coefficient relation", {"r": r, "m": m, "n": n}, seed, trials, evaluate, _sampler(m, n), notes)
    if r == 1 and rep.status != "singular":
        rep.notes["forms_agree"] = all(v == 0 for v in rep.residuals) == all(v == 0 for v in rep.aux.get("kns-form", []))
    return rep


def verify_saalschutz_base_change(l: int, same_base: bool = False, seed: int = 0,
                                  trials: int = DEFAULT_TRIALS) -> VerificationReport:
    """Change of base point for ``e(w; b)_{t,l}``; ``same_base`` sets ``a = b``."""
    if not 0 <= l <= 6:
        raise ValueError("need 0 <= l <= 6")
    w, a = gen("u"), gen("a")
    b = a if same_base else gen("b")

    def evaluate(p):
        lhs, rhs = F.saalschutz_sides(p, l, w, a, b)
        return {"base-change": lhs - rhs}

    return run_trials("saalschutz", "Saalschütz base-point change", {"l": l, "same_base": same_base}, seed, trials,
                      evaluate, _sampler())


# ---------------------------------------------------------- transformation formulas

def chain_count(alpha: Sequence[int]) -> int:
    """Number of chains ``μ- <= ν- <= ν+ <= μ+ <= α``."""
    total = 1
    for a in alpha:
        total *= (a + 1) * (a + 2) * (a + 3) * (a + 4) // 24
    return total


def _check_budget(budget: int | None, *counts: int) -> None:
    if budget is not None and sum(counts) > budget:
        raise ChainOverflow(f"{sum(counts)} chain terms exceed the budget {budget}")


def verify_transform_bc(alpha: Sequence[int], beta: Sequence[int], regrouped: bool = True, seed: int = 0,
                        trials: int = DEFAULT_TRIALS, budget: int | None = None) -> VerificationReport:
    """Type-BC transformation; ``regrouped`` also demands agreement with the expanded right side."""
    alpha, beta = tuple(alpha), tuple(beta)
    if len(alpha) > 2 or len(beta) > 2 or any(v > 2 for v in alpha + beta) or min(alpha + beta, default=0) < 0:
        raise ValueError("need m, n <= 2 and entries in 0..2")
    _check_budget(budget, chain_count(alpha), chain_count(beta))
    m, n = len(alpha), len(beta)
    xs, ys = variables("x", m), variables("y", n)

    def evaluate(p):
        lhs, rhs = F.transform_bc_sides(p, alpha, beta, xs, ys)
        out = {"transform": lhs - rhs}
        if regrouped:
            out["regrouped"] = rhs - F.transform_bc_sides(p, alpha, beta, xs, ys, regrouped=True)[1]
        return out

    return run_trials("transform-bc", "type-BC transformation", {"alpha": list(alpha), "beta": list(beta)}, seed, trials,
                      evaluate, _sampler(m, n))


def verify_summation_n0(alpha: Sequence[int], seed: int = 0, trials: int = DEFAULT_TRIALS,
                        budget: int | None = None) -> VerificationReport:
    alpha = tuple(alpha)
    if len(alpha) > 2 or any(not 0 <= v <= 3 for v in alpha):
        raise ValueError("need m <= 2 and entries in 0..3")
    _check_budget(budget, chain_count(alpha))
    xs = variables("x", len(alpha))

    def evaluate(p):
        lhs, rhs = F.summation_sides(p, alpha, xs)
        return {"summation": lhs - rhs}

    return run_trials("summation", "type-BC summation", {"alpha": list(alpha)}, seed, trials,
                      evaluate, _sampler(len(alpha)))


def verify_milne_lemma(m: int, max_entry: int = 4, lam: Sequence[int] | None = None, seed: int = 0,
                       trials: int = DEFAULT_TRIALS) -> VerificationReport:
    """Milne's product identity for one ``λ`` or for all ``λ ∈ {0..max_entry}^m``."""
    if not 1 <= m <= 3:
        raise ValueError("need 1 <= m <= 3")
    if lam is not None:
        lams = [tuple(pad(lam, m))]
        sizes = {"m": m, "lambda": list(lams[0])}
    else:
        if not 0 <= max_entry <= 4:
            raise ValueError("need entries <= 4")
        lams = list(itertools.product(range(max_entry + 1), repeat=m))
        sizes = {"m": m, "max_entry": max_entry}
    if any(not 0 <= v <= 4 for v in lams[0]):
        raise ValueError("need entries in 0..4")
    xs = variables("x", m)

    def evaluate(p):
        out = {}
        for la in lams:
            lhs, rhs = F.milne_sides(p, la, xs)
            out[str(la)] = lhs - rhs
        return out

    return run_trials("milne", "Milne product identity", sizes, seed, trials, evaluate, _sampler(m))


def verify_inner_sum_collapse(size: int, seed: int = 0, trials: int = DEFAULT_TRIALS) -> VerificationReport:
    """Both inner-sum collapses at ``(c, d, t) = (q^1/2, -q^1/2, q)``, in exact Gaussian rationals."""
    if not 0 <= size <= 3:
        raise ValueError("need 0 <= |I^c| <= 3")
    xs, ys = variables("x", size), variables("y", size)

    def evaluate(p):
        sx, tx = F.collapse_x_sides(p, xs)
        sy, ty = F.collapse_y_sides(p, ys)
        return {"x-real": sx.re - tx.re, "x-imag": sx.im - tx.im,
                "y-real": sy.re - ty.re, "y-imag": sy.im - ty.im}

    return run_trials("lemma3-1", "type-C inner-sum collapse", {"size": size}, seed, trials, evaluate,
                      _sampler(size, size, ("a", "b", "q", "u")))


def verify_transform_c(alpha: Sequence[int], beta: Sequence[int], seed: int = 0,
                       trials: int = DEFAULT_TRIALS) -> VerificationReport:
    alpha, beta = tuple(alpha), tuple(beta)
    if len(alpha) > 3 or len(beta) > 3 or any(not 0 <= v <= 3 for v in alpha + beta):
        raise ValueError("need m, n <= 3 and entries in 0..3")
    m, n = len(alpha), len(beta)
    xs, ys = variables("x", m), variables("y", n)

    def evaluate(p):
        lhs, rhs = F.transform_c_sides(p, alpha, beta, xs, ys)
        return {"transform": lhs - rhs}

    return run_trials("transform-c", "type-C transformation", {"alpha": list(alpha), "beta": list(beta)}, seed, trials,
                      evaluate, _sampler(m, n, ("a", "b", "q")))


# ------------------------------------------------------------ dual-Cauchy lemmas

def verify_eigenvalue_ratio(m: int, n: int, lam: Sequence[int] | None = None, seed: int = 0,
                     trials: int = DEFAULT_TRIALS) -> VerificationReport:
    """Eigenvalue ratio identity for one ``λ`` or every ``λ ⊆ (n^m)``.

    Residual names ``λ:eigen`` compare the product with the eigenvalue form and
    ``λ:cells`` with the cell product.
    """
    lams = [normalize(lam)] if lam is not None else partitions_in_box(m, n)
    for la in lams:
        if len(la) > m or any(v > n for v in la):
            raise ValueError(f"{la} is not inside the {m}x{n} box")
    sizes = {"m": m, "n": n} if lam is None else {"m": m, "n": n, "lambda": list(lams[0])}

    def evaluate(p):
        out = {}
        for la in lams:
            first, second, third = F.eigenvalue_ratio_sides(p, la, m, n)
            out[f"{la}:eigen"] = first - second
            out[f"{la}:cells"] = first - third
        return out

    return run_trials("lemma4-1", "eigenvalue ratio identity", sizes, seed, trials, evaluate, _sampler())


def verify_truncated_generating(k: int, m: int, seed: int = 0, trials: int = DEFAULT_TRIALS) -> VerificationReport:
    """Generating identity for ``h_l`` at ``t = q^-k``."""
    if not 0 <= k <= 2 or not 1 <= m <= 2:
        raise ValueError("need k <= 2 and 1 <= m <= 2")
    xs = variables("x", m)
    names = generators(m, 0, ("a", "b", "c", "d", "q", "u"))

    def sample(rng):
        p = random_point(rng, names)
        return p.with_roots({"t": p.fourth_roots["q"] ** (-k)})

    def evaluate(p):
        lhs, rhs = F.truncated_generating_sides(p, k, xs)
        return {"generating": lhs - rhs}

    return run_trials("lemma4-2", "truncated generating identity", {"k": k, "m": m}, seed, trials, evaluate, sample)


def verify_H_D_relation(l: int, m: int, n: int, seed: int = 0, trials: int = DEFAULT_TRIALS) -> VerificationReport:
    """``(-1)^l H_l^x Ψ`` against the weighted sum of swapped van Diejen operators in y."""
    if not 0 <= l <= n <= 2 or not 1 <= m <= 2:
        raise ValueError("need 0 <= l <= n <= 2 and 1 <= m <= 2")
    xs, ys = variables("x", m), variables("y", n)
    hat = QUAD.hat()

    def evaluate(p):
        xv = [p.value(z) for z in xs]
        yv = [p.value(z) for z in ys]
        lhs = (-1) ** l * hrow_operator(l, QUAD, p, xs).apply(lambda xx: F.dual_kernel_value(xx, yv))
        rhs = ZERO
        for s, w in enumerate(F.h_d_weights(p, l, m, n)):
            if w:
                op = vandiejen_operator(l - s, hat, p, ys)
                rhs += w * op.apply(lambda yy: F.dual_kernel_value(xv, yy))
        return {"relation": lhs - rhs}

    return run_trials("h-d-relation", "row-column operator relation", {"l": l, "m": m, "n": n}, seed, trials,
                      evaluate, _sampler(m, n))


# ------------------------------------------------------------ Koornwinder checks

def _check_lambda(lam, m):
    lam = normalize(lam)
    if len(lam) > m:
        raise ValueError(f"{lam} has more than {m} parts")
    return lam


def verify_eigen(lam: Sequence[int], m: int, max_l: int = 3, seed: int = 0,
                 trials: int = DEFAULT_TRIALS) -> VerificationReport:
    """Eigen-equations of ``D_r`` (``r <= m``) and ``H_l`` (``l <= max_l``) on ``P_λ``."""
    lam = _check_lambda(lam, m)

    def evaluate(p):
        P = compute_koornwinder(lam, QUAD, p, m)
        out = {f"D{r}": eigen_residual_D(P, r, p) for r in range(m + 1)}
        out.update({f"H{l}": eigen_residual_H(P, l, p) for l in range(max_l + 1)})
        out["support"] = ZERO if triangular_support_ok(P) else ONE
        return out

    return run_trials("eigen", "eigen-equations of D_r and H_l", {"lambda": list(lam), "m": m}, seed, trials,
                      evaluate, _sampler(m, 0, PARAM_NAMES[:6]))


def verify_duality(lam: Sequence[int], mu: Sequence[int], m: int = 2, seed: int = 0,
                   trials: int = 3) -> VerificationReport:
    lam, mu = _check_lambda(lam, m), _check_lambda(mu, m)

    def evaluate(p):
        return {"duality": duality_residual(lam, mu, QUAD, p, m)}

    return run_trials("duality", "evaluation duality", {"lambda": list(lam), "mu": list(mu), "m": m}, seed, trials,
                      evaluate, _sampler(0, 0, PARAM_NAMES[:6]))


def verify_pieri(mu: Sequence[int], l: int, m: int, seed: int = 0, trials: int = DEFAULT_TRIALS) -> VerificationReport:
    """Row-type Pieri expansion; coefficients outside the Pieri set must vanish."""
    mu = _check_lambda(mu, m)
    if not 0 <= l <= 3:
        raise ValueError("need 0 <= l <= 3")
    excluded = pieri_excluded(mu, l, m)

    def evaluate(p):
        out = {"pieri": pieri_residual(mu, l, QUAD, p, m)}
        out["excluded"] = sum((pieri_coefficient(mu, nu, l, QUAD, p, m) ** 2 for nu in excluded), ZERO)
        return out

    return run_trials("pieri", "row-type Pieri formula", {"mu": list(mu), "l": l, "m": m}, seed, trials,
                      evaluate, _sampler(m, 0, PARAM_NAMES[:6]), {"excluded": len(excluded)})


def verify_dual_cauchy_expansion(m: int, n: int, seed: int = 0, trials: int = 3) -> VerificationReport:
    """Dual-Cauchy expansion as a Laurent-polynomial identity; the residual counts nonzero coefficients."""
    if not 1 <= m <= 2 or not 1 <= n <= 2:
        raise ValueError("need 1 <= m, n <= 2")

    def evaluate(p):
        res = dual_cauchy_residual(m, n, QUAD, p)
        return {"nonzero-terms": mpq(sum(1 for c in res.coeffs.values() if c))}

    return run_trials("dual-cauchy-expansion", "dual-Cauchy expansion", {"m": m, "n": n}, seed, trials,
                      evaluate, _sampler(0, 0, PARAM_NAMES[:6]))


def vanishing_sets(m: int, max_weight: int = 4, max_order: int = 3) -> dict:
    """``{("e", r): [μ, ...], ("h", l): [μ, ...]}`` with ``|μ| <= max_weight``."""
    mus = [mu for mu in partitions_upto(max_weight, m)]
    out = {}
    for r in range(1, min(m, max_order) + 1):
        out[("e", r)] = [mu for mu in mus if len(mu) < r]
    for l in range(1, max_order + 1):
        out[("h", l)] = [mu for mu in mus if (mu[0] if mu else 0) < l]
    return out


def verify_vanishing(m: int, max_weight: int = 4, max_order: int = 3, seed: int = 0,
                     trials: int = DEFAULT_TRIALS) -> VerificationReport:
    """Vanishing of ``e_r`` and ``h_l`` at ``α t^ρ q^μ``, with one nonvanishing control each."""
    if not 1 <= m <= 3:
        raise ValueError("need 1 <= m <= 3")
    sets = vanishing_sets(m, max_weight, max_order)

    def evaluate(p):
        out = {}
        for (kind, r), mus in sets.items():
            for mu in mus:
                pt = principal_point(mu, m, p)
                val = e_col(r, m, p, pt) if kind == "e" else h_row(r, m, p, pt)
                out[f"{kind}{r}@{mu}"] = val
        out[f"{NONZERO}e1@(1)"] = e_col(1, m, p, principal_point((1,), m, p))
        out[f"{NONZERO}h1@(1)"] = h_row(1, m, p, principal_point((1,), m, p))
        return out

    return run_trials("vanishing", "interpolation vanishing", {"m": m, "max_weight": max_weight, "max_order": max_order},
                      seed, trials, evaluate, _sampler(0, 0, PARAM_NAMES[:6]))
