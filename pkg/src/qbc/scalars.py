"""Exact scalars, quarter-power monomials and the bracket kernel.

Every quantity in this package is either a rational number (``Scalar``) or a
formal product of generators with exponents in (1/4)Z (``QuarterMonomial``).
A ``ParamPoint`` assigns a positive rational fourth root to each generator, so
any quarter monomial evaluates to an exact rational and the trigonometric
bracket ``<z> = z^(1/2) - z^(-1/2)`` is exact whenever ``z^(1/2)`` stays on
the quarter lattice.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Mapping

from gmpy2 import mpq

Scalar = mpq

ZERO = mpq(0)
ONE = mpq(1)

#: Parameter generators; variables are named ``x1, x2, ...`` and ``y1, y2, ...``.
PARAM_GENERATORS = ("a", "b", "c", "d", "q", "t", "u")


class GranularityError(ValueError):
    """A square root left the quarter-exponent lattice."""


class SingularPoint(ZeroDivisionError):
    """A denominator vanished at the sampled point (the point is not generic)."""


def as_scalar(value) -> Scalar:
    if isinstance(value, str):
        num, _, den = value.partition("/")
        return mpq(int(num), int(den or 1))
    return mpq(value)


def format_scalar(value) -> str:
    """Serialize an exact rational as ``"p/q"``."""
    value = mpq(value)
    return f"{value.numerator}/{value.denominator}"


def x(i: int) -> str:
    """Generator name of the i-th x variable (1-based)."""
    return f"x{i}"


def y(k: int) -> str:
    return f"y{k}"


class QuarterMonomial:
    """Product of generators with exponents in (1/4)Z.

    Exponents are stored as integer quarter units: a stored ``n`` means the
    power ``n/4``. Instances are immutable and hashable.
    """

    __slots__ = ("_items", "_hash")

    def __init__(self, exponents: Mapping[str, int] | Iterable = ()):
        if isinstance(exponents, Mapping):
            exponents = exponents.items()
        items = tuple(sorted((g, int(n)) for g, n in exponents if n))
        self._items = items
        self._hash = hash(items)

    @classmethod
    def _from_dict(cls, d: dict) -> "QuarterMonomial":
        obj = cls.__new__(cls)
        obj._items = tuple(sorted(d.items()))
        obj._hash = hash(obj._items)
        return obj

    @classmethod
    def gen(cls, name: str, power=1) -> "QuarterMonomial":
        units = Fraction(power) * 4
        if units.denominator != 1:
            raise GranularityError(f"{name}^{power} is not on the quarter lattice")
        return cls({name: int(units)})

    @property
    def items(self) -> tuple:
        return self._items

    def quarter_units(self, name: str) -> int:
        for g, n in self._items:
            if g == name:
                return n
        return 0

    def exponent(self, name: str) -> Fraction:
        return Fraction(self.quarter_units(name), 4)

    def generators(self) -> set:
        return {g for g, _ in self._items}

    def __mul__(self, other):
        if not isinstance(other, QuarterMonomial):
            return NotImplemented
        if not other._items:
            return self
        if not self._items:
            return other
        d = dict(self._items)
        for g, n in other._items:
            v = d.get(g, 0) + n
            if v:
                d[g] = v
            else:
                del d[g]
        return QuarterMonomial._from_dict(d)

    def __truediv__(self, other):
        if not isinstance(other, QuarterMonomial):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if other == 1:
            return self.inverse()
        return NotImplemented

    def inverse(self) -> "QuarterMonomial":
        return QuarterMonomial._from_dict({g: -n for g, n in self._items})

    def __pow__(self, k):
        k = Fraction(k)
        if k == 1:
            return self
        d = {}
        for g, n in self._items:
            v = n * k
            if v.denominator != 1:
                raise GranularityError(f"({self})^{k} leaves the quarter lattice")
            if v:
                d[g] = int(v)
        return QuarterMonomial._from_dict(d)

    def sqrt(self) -> "QuarterMonomial":
        d = {}
        for g, n in self._items:
            if n % 2:
                raise GranularityError(f"sqrt({self}) leaves the quarter lattice")
            d[g] = n // 2
        return QuarterMonomial._from_dict(d)

    def __eq__(self, other):
        if isinstance(other, QuarterMonomial):
            return self._items == other._items
        if other == 1:
            return not self._items
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __bool__(self):
        return True

    def __repr__(self):
        if not self._items:
            return "1"
        parts = []
        for g, n in self._items:
            e = Fraction(n, 4)
            parts.append(g if e == 1 else f"{g}^({e})")
        return "*".join(parts)


IDENTITY = QuarterMonomial()


def gen(name: str, power=1) -> QuarterMonomial:
    return QuarterMonomial.gen(name, power)


class ParamPoint:
    """Assignment of a positive rational fourth root to every generator.

    Evaluation of quarter monomials is a monoid homomorphism into the
    positive rationals. Values and brackets are memoized per point.
    """

    __slots__ = ("_roots", "_values", "_brackets", "_key")

    def __init__(self, fourth_roots: Mapping[str, object]):
        roots = {}
        for g, r in fourth_roots.items():
            r = as_scalar(r)
            if r <= 0:
                raise ValueError(f"fourth root of {g} must be positive, got {r}")
            roots[g] = r
        self._roots = roots
        self._values: dict = {}
        self._brackets: dict = {}
        self._key = tuple(sorted(roots.items()))

    @property
    def fourth_roots(self) -> dict:
        return dict(self._roots)

    @property
    def key(self) -> tuple:
        return self._key

    def __eq__(self, other):
        return isinstance(other, ParamPoint) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        inner = ", ".join(f"{g}={format_scalar(r)}" for g, r in self._key)
        return f"ParamPoint({inner})"

    def with_roots(self, updates: Mapping[str, object]) -> "ParamPoint":
        roots = dict(self._roots)
        roots.update(updates)
        return ParamPoint(roots)

    def value(self, z: QuarterMonomial) -> Scalar:
        """Exact value of ``z`` at this point."""
        v = self._values.get(z)
        if v is None:
            v = ONE
            roots = self._roots
            try:
                for g, n in z._items:
                    v = v * roots[g] ** n
            except KeyError as exc:
                raise KeyError(f"generator {exc.args[0]!r} has no value at this point") from None
            self._values[z] = v
        return v

    def half(self, z: QuarterMonomial) -> Scalar:
        """Value of ``z^(1/2)``."""
        return self.value(z.sqrt())

    def bracket(self, z: QuarterMonomial) -> Scalar:
        v = self._brackets.get(z)
        if v is None:
            s = self.value(z.sqrt())
            v = s - 1 / s
            self._brackets[z] = v
        return v

    def to_json(self) -> dict:
        return {g: format_scalar(r) for g, r in self._key}


def random_fourth_root(rng: random.Random) -> Scalar:
    while True:
        r = mpq(rng.randint(2, 19), rng.randint(1, 7))
        if r != 1:
            return r


def random_point(rng: random.Random, generators: Iterable[str], fixed: Mapping[str, object] | None = None) -> ParamPoint:
    """Sample a point with pairwise distinct fourth roots from {2..19}/{1..7}."""
    roots = {g: as_scalar(r) for g, r in (fixed or {}).items()}
    used = set(roots.values())
    for g in generators:
        if g in roots:
            continue
        r = random_fourth_root(rng)
        while r in used or 1 / r in used:
            r = random_fourth_root(rng)
        used.add(r)
        roots[g] = r
    return ParamPoint(roots)


def bracket(z: QuarterMonomial, p: ParamPoint) -> Scalar:
    """``<z> = z^(1/2) - z^(-1/2)``."""
    return p.bracket(z)


def brackets(p: ParamPoint, *zs: QuarterMonomial) -> Scalar:
    """Shorthand ``<z1, ..., zk> = <z1>...<zk>``."""
    v = ONE
    for z in zs:
        v = v * p.bracket(z)
    return v


def bracket_factorial(z: QuarterMonomial, base: QuarterMonomial, l: int, p: ParamPoint) -> Scalar:
    """``<z>_{base,l} = prod_{i=1..l} <base^(i-1) z>``."""
    if l < 0:
        raise ValueError("bracket_factorial needs l >= 0")
    v = ONE
    for _ in range(l):
        v = v * p.bracket(z)
        z = z * base
    return v


def pochhammer(z: QuarterMonomial, base: QuarterMonomial, l: int, p: ParamPoint) -> Scalar:
    """Classical ``(z; base)_l``."""
    if l < 0:
        raise ValueError("pochhammer needs l >= 0")
    v = ONE
    zv = p.value(z)
    bv = p.value(base)
    for _ in range(l):
        v = v * (1 - zv)
        zv = zv * bv
    return v


def e_value(zv: Scalar, wv: Scalar) -> Scalar:
    """``e(z; w) = z + 1/z - w - 1/w`` on already-evaluated arguments."""
    return zv + 1 / zv - wv - 1 / wv


def e_pair(z: QuarterMonomial, w: QuarterMonomial, p: ParamPoint) -> Scalar:
    return e_value(p.value(z), p.value(w))


def e_factorial(z: QuarterMonomial, w: QuarterMonomial, base: QuarterMonomial, l: int, p: ParamPoint) -> Scalar:
    """Shifted factorial of type BC with base point ``w``, any integer ``l``."""
    zv = p.value(z)
    zsum = zv + 1 / zv
    bv = p.value(base)
    if l >= 0:
        v = ONE
        wv = p.value(w)
        for _ in range(l):
            v = v * (zsum - wv - 1 / wv)
            wv = wv * bv
        return v
    den = ONE
    wv = p.value(w) * bv**l
    for _ in range(-l):
        den = den * (zsum - wv - 1 / wv)
        wv = wv * bv
    if den == 0:
        raise SingularPoint(f"e({z}; {w})_{{{base},{l}}} has a vanishing factor")
    return 1 / den


def t_binomial(l: int, r: int, tgen: QuarterMonomial, p: ParamPoint) -> Scalar:
    """Bracket-normalized binomial ``(-1)^r <t^-l>_{t,r} / <t>_{t,r}``."""
    if r < 0:
        return ZERO
    den = bracket_factorial(tgen, tgen, r, p)
    if den == 0:
        raise SingularPoint(f"<{tgen}>_{{t,{r}}} vanishes")
    num = bracket_factorial(tgen ** (-l), tgen, r, p)
    return (-1) ** r * num / den
