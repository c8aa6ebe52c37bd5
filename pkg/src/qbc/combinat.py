"""Partitions, multi-index chains, Laurent polynomials and interpolation polynomials.

Partitions are tuples without trailing zeros; helpers pad them to a fixed
length ``m`` when needed. Multi-indices are plain integer tuples.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Sequence

from .scalars import ONE, ZERO, ParamPoint, QuarterMonomial, Scalar, SingularPoint, gen, mpq

A, B, C, D, Q, T = (gen(s) for s in "abcdqt")
ALPHA = (A * B * C * D / Q).sqrt()


class OutOfBox(ValueError):
    """A partition does not fit in the requested rectangle."""


# ---------------------------------------------------------------- partitions

def normalize(parts: Iterable[int]) -> tuple:
    """Strip trailing zeros; reject increasing or negative sequences."""
    parts = list(parts)
    while parts and parts[-1] == 0:
        parts.pop()
    for i in range(len(parts) - 1):
        if parts[i] < parts[i + 1]:
            raise ValueError(f"{tuple(parts)} is not weakly decreasing")
    if parts and parts[-1] < 0:
        raise ValueError("partition parts must be non-negative")
    return tuple(parts)


def is_partition(parts: Sequence[int]) -> bool:
    return all(p >= 0 for p in parts) and all(parts[i] >= parts[i + 1] for i in range(len(parts) - 1))


def pad(parts: Sequence[int], m: int) -> tuple:
    if len(parts) > m and any(parts[m:]):
        raise ValueError(f"{tuple(parts)} has more than {m} parts")
    return tuple(parts[:m]) + (0,) * (m - len(parts))


def partitions_of(k: int, m: int, max_part: int | None = None) -> list:
    """Partitions of ``k`` with at most ``m`` parts, in reverse lex order."""
    if max_part is None:
        max_part = k
    if k == 0:
        return [()]
    if m == 0:
        return []
    out = []
    for first in range(min(k, max_part), 0, -1):
        for rest in partitions_of(k - first, m - 1, first):
            out.append((first,) + rest)
    return out


def partitions_upto(total: int, m: int) -> list:
    """All partitions with ``|λ| <= total`` and at most ``m`` parts, graded."""
    out = []
    for k in range(total + 1):
        out.extend(partitions_of(k, m))
    return out


def partitions_in_box(m: int, n: int) -> list:
    """Partitions contained in the rectangle ``(n^m)``."""
    out = []
    for k in range(m * n + 1):
        out.extend(partitions_of(k, m, n))
    return out


def dominance_leq(mu: Sequence[int], nu: Sequence[int]) -> bool:
    """Partial-sum dominance; unequal weights are allowed."""
    m = max(len(mu), len(nu))
    s = 0
    for a, b in zip(pad(mu, m), pad(nu, m)):
        s += b - a
        if s < 0:
            return False
    return True


def dominated_basis(lam: Sequence[int], m: int) -> list:
    """Partitions ``μ <= λ`` with at most ``m`` parts, sorted graded-lex ascending."""
    lam = normalize(lam)
    basis = [mu for mu in partitions_upto(sum(lam), m) if dominance_leq(mu, lam)]
    basis.sort(key=lambda mu: (sum(mu), pad(mu, m)))
    return basis


def conjugate(lam: Sequence[int], length: int | None = None) -> tuple:
    lam = normalize(lam)
    width = lam[0] if lam else 0
    conj = tuple(sum(1 for p in lam if p >= j) for j in range(1, width + 1))
    if length is None:
        return conj
    return pad(conj, length)


def conjugate_star(lam: Sequence[int], m: int, n: int) -> tuple:
    """``λ* = (m - λ'_n, ..., m - λ'_1)`` for ``λ ⊆ (n^m)``."""
    lam = normalize(lam)
    if len(lam) > m or (lam and lam[0] > n):
        raise OutOfBox(f"{lam} is not contained in ({n}^{m})")
    conj = conjugate(lam, n)
    return normalize(m - conj[j] for j in range(n - 1, -1, -1))


def contains(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """``μ ⊆ λ``."""
    m = max(len(lam), len(mu))
    return all(a >= b for a, b in zip(pad(lam, m), pad(mu, m)))


def signed_vectors(m: int, l: int) -> list:
    """All ``ν ∈ Z^m`` with ``sum |ν_i| <= l``."""
    out = []
    for vec in itertools.product(range(-l, l + 1), repeat=m):
        if sum(abs(v) for v in vec) <= l:
            out.append(vec)
    return out


def compositions(l: int, m: int) -> Iterator[tuple]:
    """``ν ∈ N^m`` with ``|ν| = l``."""
    if m == 0:
        if l == 0:
            yield ()
        return
    for first in range(l, -1, -1):
        for rest in compositions(l - first, m - 1):
            yield (first,) + rest


def in_pieri_set(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """Every column length of ``λ`` differs from that of ``μ`` by at most one."""
    width = max(lam[0] if lam else 0, mu[0] if mu else 0)
    cl, cm = conjugate(lam, width), conjugate(mu, width)
    return all(abs(a - b) <= 1 for a, b in zip(cl, cm))


def pieri_neighborhood(mu: Sequence[int], m: int, l: int = 1) -> set:
    """Partitions ``λ = μ + ν`` in the row-type Pieri set with ``sum |ν_i| <= l``."""
    mu_p = pad(normalize(mu), m)
    out = set()
    for nu in signed_vectors(m, l):
        lam = tuple(a + b for a, b in zip(mu_p, nu))
        if is_partition(lam) and in_pieri_set(normalize(lam), normalize(mu)):
            out.add(normalize(lam))
    return out


def chain_enumerate(alpha: Sequence[int]) -> Iterator[tuple]:
    """All chains ``0 <= μ⁻ <= ν⁻ <= ν⁺ <= μ⁺ <= α`` (componentwise).

    Yields ``(μ⁻, ν⁻, ν⁺, μ⁺)`` in lexicographic order of ``(μ⁺, ν⁺, ν⁻, μ⁻)``.
    """
    per = []
    for a in alpha:
        per.append([c for c in itertools.combinations_with_replacement(range(a + 1), 4)])
    chains = []
    for combo in itertools.product(*per):
        mum = tuple(c[0] for c in combo)
        num = tuple(c[1] for c in combo)
        nup = tuple(c[2] for c in combo)
        mup = tuple(c[3] for c in combo)
        chains.append((mum, num, nup, mup))
    chains.sort(key=lambda ch: (ch[3], ch[2], ch[1], ch[0]))
    return iter(chains)


def box_enumerate(alpha: Sequence[int]) -> Iterator[tuple]:
    """All ``0 <= μ <= α``."""
    return itertools.product(*(range(a + 1) for a in alpha))


# ---------------------------------------------------------- Laurent polynomials

class LaurentPoly:
    """Exact Laurent polynomial in a fixed number of variables."""

    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars: int, coeffs=None):
        self.nvars = nvars
        self.coeffs = {}
        for e, c in (coeffs or {}).items():
            c = mpq(c)
            if c:
                e = tuple(e)
                if len(e) != nvars:
                    raise ValueError("exponent length does not match nvars")
                self.coeffs[e] = self.coeffs.get(e, ZERO) + c
        self.coeffs = {e: c for e, c in self.coeffs.items() if c}

    @classmethod
    def constant(cls, nvars: int, c=1) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "LaurentPoly":
        return cls(len(exps), {tuple(exps): c})

    def copy(self) -> "LaurentPoly":
        p = LaurentPoly(self.nvars)
        p.coeffs = dict(self.coeffs)
        return p

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(self.nvars, other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            v = out.get(e, ZERO) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        p = LaurentPoly(self.nvars)
        p.coeffs = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = LaurentPoly(self.nvars)
        p.coeffs = {e: -c for e, c in self.coeffs.items()}
        return p

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(self.nvars, other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            c = mpq(other)
            p = LaurentPoly(self.nvars)
            p.coeffs = {e: v * c for e, v in self.coeffs.items()} if c else {}
            return p
        out: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, ZERO) + c1 * c2
        return LaurentPoly(self.nvars, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(self.nvars, other)
        return self.nvars == other.nvars and self.coeffs == other.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})*x^{e}" for e, c in sorted(self.coeffs.items()))

    def is_zero(self) -> bool:
        return not self.coeffs

    def tensor(self, other: "LaurentPoly") -> "LaurentPoly":
        """Product in disjoint variable sets (self's variables first)."""
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = c1 * c2
        p = LaurentPoly(self.nvars + other.nvars)
        p.coeffs = out
        return p

    def evaluate(self, values: Sequence[Scalar]) -> Scalar:
        if len(values) != self.nvars:
            raise ValueError("wrong number of values")
        powers = [dict() for _ in values]
        total = ZERO
        for e, c in self.coeffs.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    pw = powers[i].get(k)
                    if pw is None:
                        pw = mpq(values[i]) ** k
                        powers[i][k] = pw
                    term = term * pw
            total += term
        return total

    __call__ = evaluate

    def act(self, sign_perm) -> "LaurentPoly":
        """Apply a signed permutation ``(perm, signs)``: x_i -> x_{perm[i]}^{signs[i]}."""
        perm, signs = sign_perm
        out = {}
        for e, c in self.coeffs.items():
            new = [0] * self.nvars
            for i, k in enumerate(e):
                new[perm[i]] = signs[i] * k
            out[tuple(new)] = c
        p = LaurentPoly(self.nvars)
        p.coeffs = out
        return p


def orbit_sum(mu: Sequence[int], m: int | None = None) -> LaurentPoly:
    """``m_μ = sum of x^ν`` over the signed-permutation orbit of ``μ``."""
    mu = normalize(mu)
    if m is None:
        m = len(mu)
    base = pad(mu, m)
    orbit = set()
    for perm in set(itertools.permutations(base)):
        nz = [i for i, v in enumerate(perm) if v]
        for signs in itertools.product((1, -1), repeat=len(nz)):
            vec = list(perm)
            for i, s in zip(nz, signs):
                vec[i] *= s
            orbit.add(tuple(vec))
    p = LaurentPoly(m)
    p.coeffs = {e: ONE for e in orbit}
    return p


def w_invariant(f: LaurentPoly) -> bool:
    """Fixed by adjacent transpositions and by inverting each variable."""
    m = f.nvars
    for i in range(m - 1):
        perm = list(range(m))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        if f.act((perm, [1] * m)) != f:
            return False
    for i in range(m):
        signs = [1] * m
        signs[i] = -1
        if f.act((list(range(m)), signs)) != f:
            return False
    return True


# ------------------------------------------------------- interpolation polynomials

def _values(xvals, p: ParamPoint) -> list:
    return [p.value(z) if isinstance(z, QuarterMonomial) else mpq(z) for z in xvals]


def _e(xv: Scalar, wv: Scalar) -> Scalar:
    return xv + 1 / xv - wv - 1 / wv


def e_col(r: int, m: int, p: ParamPoint, xvals, alpha: QuarterMonomial = ALPHA,
          tgen: QuarterMonomial = T, form: int = 1) -> Scalar:
    """Column-type interpolation polynomial ``e_r(x; α|t)``.

    ``form=1`` uses base points ``t^(i_k - k) α`` and ``form=2`` uses
    ``t^(m - i_k - r + k) α``; both describe the same polynomial.
    """
    if not 0 <= r <= m:
        raise ValueError("need 0 <= r <= m")
    xs = _values(xvals, p)
    if len(xs) != m:
        raise ValueError("expected m values")
    av, tv = p.value(alpha), p.value(tgen)
    total = ZERO
    for idx in itertools.combinations(range(1, m + 1), r):
        term = ONE
        for k, i in enumerate(idx, start=1):
            expo = i - k if form == 1 else m - i - r + k
            term *= _e(xs[i - 1], av * tv**expo)
        total += term
    return total


def principal_point(mu: Sequence[int], m: int, p: ParamPoint, base: QuarterMonomial = ALPHA,
                    qgen: QuarterMonomial = Q, tgen: QuarterMonomial = T) -> list:
    """Values ``base * t^(m-i) * q^(μ_i)``, ``i = 1..m``."""
    mu = pad(normalize(mu), m)
    bv, qv, tv = p.value(base), p.value(qgen), p.value(tgen)
    return [bv * tv ** (m - i) * qv ** mu[i - 1] for i in range(1, m + 1)]


def e_col_vanishing_check(r: int, mu: Sequence[int], m: int, p: ParamPoint,
                          alpha: QuarterMonomial = ALPHA) -> bool:
    """True iff ``e_r`` vanishes exactly at ``α t^ρ q^μ``."""
    return e_col(r, m, p, principal_point(mu, m, p, alpha), alpha) == 0


def h_row(l: int, m: int, p: ParamPoint, xvals, alpha: QuarterMonomial = ALPHA,
          qgen: QuarterMonomial = Q, tgen: QuarterMonomial = T) -> Scalar:
    """Row-type interpolation polynomial ``h_l(ξ; α|q, t)``."""
    if l < 0:
        raise ValueError("need l >= 0")
    xs = _values(xvals, p)
    if len(xs) != m:
        raise ValueError("expected m values")
    av, qv, tv = p.value(alpha), p.value(qgen), p.value(tgen)
    # <t>_{q,k} / <q>_{q,k}
    ratio = [ONE]
    for k in range(1, l + 1):
        den = p.bracket(qgen ** k)
        if den == 0:
            raise SingularPoint("<q^k> vanishes")
        ratio.append(ratio[-1] * p.bracket(tgen * qgen ** (k - 1)) / den)
    total = ZERO
    for nu in compositions(l, m):
        term = ONE
        shift = 0
        for k in range(m):
            term *= ratio[nu[k]]
            w = av * tv**k * qv**shift
            for j in range(nu[k]):
                term *= _e(xs[k], w * qv**j)
            if not term:
                break
            shift += nu[k]
        total += term
    return total
