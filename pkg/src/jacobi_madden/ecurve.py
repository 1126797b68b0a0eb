"""The curve E_t: v^2 = u^3 - 3K u^2 + 576 t (t+1)(t-1)^3 u over Q."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

from .exactmath import Rational, UniPoly, as_fraction, format_rational, rational_roots, rational_sqrt_exact
from .quadform import DegenerateParameter
from .quartic import BinaryQuartic, QuarticPoint, covariant_g4, invariants_IJ


class NotOnCurve(ValueError):
    pass


class TwoTorsionImage(ValueError):
    """A quartic point with Y = 0 has no finite image under the descent map."""


def k_poly(t: Rational) -> Fraction:
    t = as_fraction(t)
    return t**4 - 8 * t**3 - 6 * t**2 + 24 * t - 7


@dataclass(frozen=True)
class ECPoint:
    """Affine point (u, v), or the identity when ``u is None``."""

    u: Fraction | None = None
    v: Fraction | None = None

    @property
    def is_infinity(self) -> bool:
        return self.u is None

    def __str__(self) -> str:
        if self.u is None:
            return "O"
        return f"({format_rational(self.u)}, {format_rational(self.v)})"


INFINITY = ECPoint()


@dataclass(frozen=True)
class CurveEt:
    t: Fraction

    def __post_init__(self) -> None:
        t = as_fraction(self.t)
        if t in (0, 1, -1):
            raise DegenerateParameter(f"E_t is singular at t={t}")
        object.__setattr__(self, "t", t)

    @cached_property
    def K(self) -> Fraction:
        return k_poly(self.t)

    @cached_property
    def a2(self) -> Fraction:
        return -3 * self.K

    @cached_property
    def a4(self) -> Fraction:
        t = self.t
        return 576 * t * (t + 1) * (t - 1) ** 3

    def rhs(self, u: Rational) -> Fraction:
        return ((u + self.a2) * u + self.a4) * u

    def contains(self, pt: ECPoint) -> bool:
        return pt.u is None or pt.v * pt.v == self.rhs(pt.u)

    def point(self, u: Rational, v: Rational | None = None) -> ECPoint:
        """Build a point; when ``v`` is omitted the nonnegative root is used."""
        u = as_fraction(u)
        if v is None:
            v = rational_sqrt_exact(self.rhs(u))
            if v is None:
                raise NotOnCurve(f"u={format_rational(u)} gives a non-square right-hand side")
        pt = ECPoint(u, as_fraction(v))
        if not self.contains(pt):
            raise NotOnCurve(str(pt))
        return pt

    @property
    def torsion_point(self) -> ECPoint:
        return ECPoint(Fraction(0), Fraction(0))

    # group law ------------------------------------------------------------

    def neg(self, p: ECPoint) -> ECPoint:
        return p if p.u is None else ECPoint(p.u, -p.v)

    def add(self, p: ECPoint, q: ECPoint) -> ECPoint:
        if p.u is None:
            return q
        if q.u is None:
            return p
        if p.u == q.u:
            if p.v + q.v == 0:
                return INFINITY
            lam = (3 * p.u * p.u + 2 * self.a2 * p.u + self.a4) / (2 * p.v)
        else:
            lam = (q.v - p.v) / (q.u - p.u)
        u3 = lam * lam - self.a2 - p.u - q.u
        return ECPoint(u3, lam * (p.u - u3) - p.v)

    def double(self, p: ECPoint) -> ECPoint:
        return self.add(p, p)

    def mul(self, n: int, p: ECPoint) -> ECPoint:
        if n < 0:
            return self.mul(-n, self.neg(p))
        result, addend = INFINITY, p
        while n:
            if n & 1:
                result = self.add(result, addend)
            addend = self.add(addend, addend)
            n >>= 1
        return result

    # invariants -------------------------------------------------------------

    def weierstrass_discriminant(self) -> Fraction:
        """16 a4^2 (a2^2 - 4 a4): the usual b-invariant formula with a1=a3=a6=0."""
        b2, b4, b6, b8 = 4 * self.a2, 2 * self.a4, 0, -self.a4 * self.a4
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def curve_from_t(t: Rational) -> CurveEt:
    return CurveEt(as_fraction(t))


def discriminant(t: Rational) -> Fraction:
    """Closed-form discriminant of E_t (zero at the singular t)."""
    t = as_fraction(t)
    return (
        2**16 * 3**6 * t**2 * (t + 1) ** 2 * (t - 1) ** 6 * (t * t + 1) ** 2
        * (t**4 - 16 * t**3 + 50 * t**2 - 80 * t + 49)
    )


def ec_add(curve: CurveEt, p: ECPoint, q: ECPoint) -> ECPoint:
    return curve.add(p, q)


def ec_neg(curve: CurveEt, p: ECPoint) -> ECPoint:
    return curve.neg(p)


def ec_double(curve: CurveEt, p: ECPoint) -> ECPoint:
    return curve.double(p)


def scalar_mul(curve: CurveEt, n: int, p: ECPoint) -> ECPoint:
    return curve.mul(n, p)


def known_generator(t: Rational) -> ECPoint:
    """The point u = 48t, v = 144 t (t^2 + 1), on E_t for every admissible t."""
    curve = curve_from_t(t)
    t = curve.t
    pt = ECPoint(48 * t, 144 * t * (t * t + 1))
    assert curve.contains(pt)
    return pt


# ---------------------------------------------------------------------------
# descent maps between quartics and E_t
# ---------------------------------------------------------------------------

def pencil_invariants(t: Rational) -> tuple[Fraction, Fraction]:
    """I and J of det(X M1 + M2), in closed form."""
    t = as_fraction(t)
    i = 9 * (t**8 - 16 * t**7 + 52 * t**6 - 48 * t**5 + 22 * t**4 - 176 * t**3 + 276 * t**2 - 144 * t + 49)
    j = 54 * k_poly(t) * (
        t**8 - 16 * t**7 + 52 * t**6 - 144 * t**5 + 214 * t**4 - 176 * t**3 + 84 * t**2 - 48 * t + 49
    )
    return i, j


def quartic_to_weierstrass(q: BinaryQuartic, pt: QuarticPoint) -> tuple[Fraction, Fraction]:
    """(x, y) on y^2 = x^3 - 27 I x - 27 J with x = 3 g4(X) / (4 Y^2), y >= 0."""
    i, j = invariants_IJ(q)
    if pt.Y == 0:
        raise TwoTorsionImage("Y = 0 maps to a 2-torsion point")
    if pt.X is None:
        x = 3 * (3 * q.B * q.B - 8 * q.A * q.C) / (4 * q.A)
    else:
        x = 3 * covariant_g4(q)(pt.X) / (4 * pt.Y * pt.Y)
    y = rational_sqrt_exact(x**3 - 27 * i * x - 27 * j)
    if y is None:
        raise AssertionError(f"descent map left the curve at {pt}")
    return x, y


def curve_scale(q: BinaryQuartic, t: Rational) -> Fraction:
    """w with I(q) = w^2 I_t and J(q) = w^3 J_t, where I_t, J_t belong to det(X M1 + M2).

    x-coordinates on the model of ``q`` are ``w`` times those on the pencil
    model; the slope quartics have w = 4 q0^2 (t^2 + 1)^2.
    """
    i, j = invariants_IJ(q)
    i0, j0 = pencil_invariants(t)
    if i0 and j0 and i and j:
        w = (j / j0) / (i / i0)
    elif i0 and i:
        w = rational_sqrt_exact(i / i0)
    elif j0 and j:
        w = _cube_root(j / j0)
    else:
        w = None
    if w is None or w * w * i0 != i or w**3 * j0 != j:
        raise ValueError("quartic does not belong to E_t")
    return w


def _cube_root(x: Fraction) -> Fraction | None:
    sign = -1 if x < 0 else 1
    x = abs(x)
    num = round(x.numerator ** (1 / 3))
    den = round(x.denominator ** (1 / 3))
    for a in (num - 1, num, num + 1):
        for b in (den - 1, den, den + 1):
            if b > 0 and Fraction(a, b) ** 3 == x:
                return sign * Fraction(a, b)
    return None


def quartic_to_curve(q: BinaryQuartic, pt: QuarticPoint, t: Rational) -> ECPoint:
    """Image of a quartic point on E_t, with v chosen nonnegative."""
    curve = curve_from_t(t)
    x, _ = quartic_to_weierstrass(q, pt)
    w = curve_scale(q, t)
    u = x / w / 9 + curve.K
    v = rational_sqrt_exact(curve.rhs(u))
    if v is None:
        raise AssertionError("quartic curve and E_t disagree; the twist is not trivial")
    return ECPoint(u, v)


def weierstrass_x(q: BinaryQuartic, p: ECPoint, t: Rational) -> Fraction:
    curve = curve_from_t(t)
    return curve_scale(q, t) * 9 * (p.u - curve.K)


def quartic_Xs_from_x(q: BinaryQuartic, x: Rational) -> list[Fraction]:
    """Rational roots of 3 g4(X) - 4 x g(X)."""
    poly = covariant_g4(q) * 3 - q.poly * (4 * as_fraction(x))
    if poly.is_zero():
        return []
    return rational_roots(poly)


def curve_to_quartic_Xs(q: BinaryQuartic, p: ECPoint, t: Rational) -> list[Fraction]:
    """X values on ``q`` lying over the point ``p`` of E_t (often none)."""
    if p.u is None or (p.u == 0 and p.v == 0):
        raise ValueError("need a finite point other than (0, 0)")
    return quartic_Xs_from_x(q, weierstrass_x(q, p, t))


# ---------------------------------------------------------------------------
# generator combinations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeneratorSet:
    curve: CurveEt
    generators: tuple[ECPoint, ...]
    bound: int = 1

    def __post_init__(self) -> None:
        for g in self.generators:
            if not self.curve.contains(g):
                raise NotOnCurve(str(g))

    @classmethod
    def default(cls, t: Rational, bound: int = 1) -> GeneratorSet:
        return cls(curve_from_t(t), (known_generator(t),), bound)


@dataclass(frozen=True)
class Combination:
    coefficients: tuple[int, ...]
    with_torsion: bool
    point: ECPoint


def enumerate_combinations(gens: GeneratorSet) -> Iterator[Combination]:
    """All n1 G1 + ... + nr Gr + T with |ni| <= L and T in {O, (0,0)}, minus O.

    Lexicographic in (n1, ..., nr, T) with T = O before (0, 0); points that
    repeat an earlier combination are skipped.
    """
    curve, bound = gens.curve, gens.bound
    multiples = [
        {n: curve.mul(n, g) for n in range(-bound, bound + 1)} for g in gens.generators
    ]
    seen: set[ECPoint] = set()
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=len(gens.generators)):
        base = INFINITY
        for n, table in zip(coeffs, multiples):
            base = curve.add(base, table[n])
        for with_t in (False, True):
            pt = curve.add(base, curve.torsion_point) if with_t else base
            if pt.is_infinity or pt in seen:
                continue
            seen.add(pt)
            yield Combination(coeffs, with_t, pt)


def parse_generator(curve: CurveEt, text: str) -> ECPoint:
    """Parse ``u`` or ``u,v`` (rationals written m/n)."""
    parts = [s.strip() for s in text.split(",")]
    if len(parts) == 1:
        return curve.point(Fraction(parts[0]))
    if len(parts) == 2:
        return curve.point(Fraction(parts[0]), Fraction(parts[1]))
    raise ValueError(f"malformed generator {text!r}")
