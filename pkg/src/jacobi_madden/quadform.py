"""Quadratic forms: the pencil matrices, their transforms, and conic solving."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exactmath import (
    Rational,
    UniPoly,
    as_fraction,
    rational_sqrt_exact,
    legendre_symbol,
    prime_divisors,
    sqrt_mod_squarefree,
    squarefree_decomposition,
)

Vector = tuple[Fraction, ...]
Rows = tuple[tuple[Fraction, ...], ...]


class DegenerateParameter(ValueError):
    """t outside the admissible set (0 and +-1 are excluded)."""


class ChartViolation(ValueError):
    """The inverse change of variables leaves the chart (q would vanish)."""


class ParameterAtInfinity(ZeroDivisionError):
    """The conic parameterization has a vanishing denominator."""


def _rows(entries: Iterable[Iterable[Rational]]) -> Rows:
    return tuple(tuple(as_fraction(x) for x in row) for row in entries)


def matmul(a: Rows, b: Rows) -> Rows:
    n, m = len(a), len(b[0])
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(m))
        for i in range(n)
    )


def transpose(a: Rows) -> Rows:
    return tuple(zip(*a))


def matvec(a: Rows, v: Sequence[Rational]) -> Vector:
    return tuple(sum((row[j] * v[j] for j in range(len(v))), Fraction(0)) for row in a)


def inverse(a: Rows) -> Rows:
    """Gauss-Jordan inverse over Q."""
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


@dataclass(frozen=True)
class SymMatrix4:
    """Symmetric 4x4 rational matrix, i.e. a quaternary quadratic form."""

    rows: Rows

    def __post_init__(self) -> None:
        rows = _rows(self.rows)
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise ValueError("expected a 4x4 matrix")
        for i in range(4):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("matrix is not symmetric")
        object.__setattr__(self, "rows", rows)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def __add__(self, other: SymMatrix4) -> SymMatrix4:
        return SymMatrix4(tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: SymMatrix4) -> SymMatrix4:
        return self + other.scale(-1)

    def scale(self, c: Rational) -> SymMatrix4:
        return SymMatrix4(tuple(tuple(x * c for x in r) for r in self.rows))

    def is_diagonal(self) -> bool:
        return all(self.rows[i][j] == 0 for i in range(4) for j in range(4) if i != j)


def _admissible(t: Rational) -> Fraction:
    t = as_fraction(t)
    if t in (0, 1, -1):
        raise DegenerateParameter(f"t={t} is not admissible")
    return t


def build_M1(t: Rational) -> SymMatrix4:
    """Doubled form of H + F - tG = 0 in (a, b, c, d)."""
    t = _admissible(t)
    return SymMatrix4(
        (
            (4, 3, 1, 1),
            (3, 4, 1, 1),
            (1, 1, 2 * (1 - t), 2 - t),
            (1, 1, 2 - t, 2 * (1 - t)),
        )
    )


def build_M2(t: Rational) -> SymMatrix4:
    """Doubled form of t(H - F) - G = 0 in (a, b, c, d)."""
    t = _admissible(t)
    return SymMatrix4(
        (
            (0, t, t, t),
            (t, 0, t, t),
            (t, t, 2 * (t - 1), 2 * t - 1),
            (t, t, 2 * t - 1, 2 * (t - 1)),
        )
    )


# (a, b, c, d) = C (p, q, r, s) and (a, b, c, d) = D (p, q, r, s)
TRANSFORM_C: Rows = _rows(((0, 0, 2, 2), (0, 0, 2, -2), (-1, -1, -1, 0), (1, -1, -1, 0)))
TRANSFORM_D: Rows = _rows(((1, -2, 1, 0), (1, -2, -1, 0), (0, 1, 0, 1), (0, 1, 0, -1)))
TRANSFORMS = {"C": TRANSFORM_C, "D": TRANSFORM_D}


def evaluate_form(m: SymMatrix4, v: Sequence[Rational]) -> Fraction:
    return sum((m.rows[i][j] * v[i] * v[j] for i in range(4) for j in range(4)), Fraction(0))


def conjugate(m: SymMatrix4, transform: Sequence[Sequence[Rational]]) -> SymMatrix4:
    tr = _rows(transform)
    return SymMatrix4(matmul(matmul(transpose(tr), m.rows), tr))


def pencil_reductions(t: Rational) -> dict[str, SymMatrix4]:
    """Every derived matrix, recomputed by conjugation rather than copied.

    M5 = (M3 - t M4)/8 eliminates p in the C chart; M51 = (t M31 + M41)/2 and
    M61 = (t M41 - M31)/2 split the D chart into an (p, q, s) and a (p, q, r)
    quadric.
    """
    t = _admissible(t)
    m1, m2 = build_M1(t), build_M2(t)
    m3, m4 = conjugate(m1, TRANSFORM_C), conjugate(m2, TRANSFORM_C)
    m31, m41 = conjugate(m1, TRANSFORM_D), conjugate(m2, TRANSFORM_D)
    return {
        "M3": m3,
        "M4": m4,
        "M5": (m3 - m4.scale(t)).scale(Fraction(1, 8)),
        "M31": m31,
        "M41": m41,
        "M51": (m31.scale(t) + m41).scale(Fraction(1, 2)),
        "M61": (m41.scale(t) - m31).scale(Fraction(1, 2)),
    }


def pqrs_from_solution(solution: Sequence[Rational], which: str = "D") -> Vector:
    """Invert ``(a,b,c,d) = C w`` or ``D w``; the D chart needs c + d != 0."""
    a, b, c, d = (as_fraction(x) for x in solution)
    if which == "D":
        if c + d == 0:
            raise ChartViolation("c + d = 0 puts q = 0, outside the quartic chart")
        return ((a + b) / 2 + (c + d), (c + d) / 2, (a - b) / 2, (c - d) / 2)
    if which == "C":
        return matvec(inverse(TRANSFORM_C), (a, b, c, d))
    raise ValueError(f"unknown transform {which!r}")


def apply_transform(w: Sequence[Rational], which: str = "D") -> Vector:
    return matvec(TRANSFORMS[which], w)


# ---------------------------------------------------------------------------
# Legendre's equation a x^2 + b y^2 + c z^2 = 0
# ---------------------------------------------------------------------------

def _normalize_legendre(a: int, b: int, c: int) -> tuple[list[int], list[Fraction]]:
    """Reduce to squarefree, pairwise coprime coefficients.

    Returns the new coefficients and per-variable factors f such that a
    solution (X, Y, Z) of the new form gives (f0 X, f1 Y, f2 Z) for the old.
    """
    coeffs = [a, b, c]
    scale = [Fraction(1)] * 3
    g = math.gcd(*coeffs)
    coeffs = [x // g for x in coeffs]
    for i in range(3):
        core, root = squarefree_decomposition(coeffs[i])
        coeffs[i] = core
        scale[i] /= root
    changed = True
    while changed:
        changed = False
        for i, j in ((0, 1), (0, 2), (1, 2)):
            g = math.gcd(coeffs[i], coeffs[j])
            if g > 1:
                k = 3 - i - j
                # g*(a x^2 + b y^2 + c z^2) = (a/g)(gx)^2 + (b/g)(gy)^2 + (gc) z^2
                coeffs[i] //= g
                coeffs[j] //= g
                coeffs[k] *= g
                scale[i] /= g
                scale[j] /= g
                g2 = math.gcd(*coeffs)
                if g2 > 1:
                    coeffs = [x // g2 for x in coeffs]
                core, root = squarefree_decomposition(coeffs[k])
                coeffs[k] = core
                scale[k] /= root
                changed = True
    return coeffs, scale


def legendre_obstruction(a: int, b: int, c: int) -> int | None:
    """A place where a x^2 + b y^2 + c z^2 is anisotropic, or None if soluble.

    -1 stands for the real place; otherwise an odd prime is returned.
    """
    if 0 in (a, b, c):
        return None
    (a, b, c), _ = _normalize_legendre(a, b, c)
    if (a > 0) == (b > 0) == (c > 0):
        return -1
    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
        for p in prime_divisors(x) if abs(x) > 1 else ():
            if p != 2 and legendre_symbol(-y * z, p) != 1:
                return p
    return None


def _gauss_reduce(r: int, modulus: int, weight: int) -> tuple[int, int]:
    """Shortest vector of {(x, z): x = r z mod modulus} under x^2 + weight z^2."""

    def norm(v: tuple[int, int]) -> int:
        return v[0] * v[0] + weight * v[1] * v[1]

    def dot(u: tuple[int, int], v: tuple[int, int]) -> int:
        return u[0] * v[0] + weight * u[1] * v[1]

    u, v = (modulus, 0), (r, 1)
    if norm(u) < norm(v):
        u, v = v, u
    while True:
        # v is the shorter one
        q = round(Fraction(dot(u, v), norm(v)))
        w = (u[0] - q * v[0], u[1] - q * v[1])
        if norm(w) >= norm(v):
            return v
        u, v = v, w


def _descent(a: int, b: int) -> tuple[int, int, int]:
    """Nontrivial (w, y, z) with w^2 = a y^2 + b z^2; a, b squarefree, form soluble."""
    if a == 1:
        return (1, 1, 0)
    if b == 1:
        return (1, 0, 1)
    if a == -b:
        return (0, 1, 1)
    if abs(a) > abs(b):
        w, y, z = _descent(b, a)
        return (w, z, y)
    r = sqrt_mod_squarefree(a, b)
    if r is None:
        raise ArithmeticError(f"{a} is not a square modulo {b}")
    x0, z0 = _gauss_reduce(r, abs(b), abs(a))
    t = (x0 * x0 - a * z0 * z0) // b
    t1, t2 = squarefree_decomposition(t)
    x1, y1, z1 = _descent(a, t1)
    return (x0 * x1 + a * z0 * y1, x0 * y1 + z0 * x1, t1 * t2 * z1)


def _primitive(v: Sequence[Rational]) -> tuple[int, ...]:
    fr = [as_fraction(x) for x in v]
    den = math.lcm(*(x.denominator for x in fr))
    ints = [int(x * den) for x in fr]
    g = math.gcd(*ints)
    ints = [x // g for x in ints]
    first = next(x for x in ints if x)
    return tuple(-x for x in ints) if first < 0 else tuple(ints)


def legendre_solve(a: int, b: int, c: int) -> tuple[int, int, int] | None:
    """Primitive nonzero solution of a x^2 + b y^2 + c z^2 = 0, or None.

    The result is deterministic: Gauss-reduced descent, made primitive, with
    the first nonzero coordinate positive.
    """
    if 0 in (a, b, c):
        raise ValueError("coefficients must be nonzero")
    if legendre_obstruction(a, b, c) is not None:
        return None
    (na, nb, nc), scale = _normalize_legendre(a, b, c)
    # (na X)^2 = -na nb Y^2 - na nc Z^2
    w, y, z = _descent(-na * nb, -na * nc)
    sol = (Fraction(w, na) * scale[0], y * scale[1], z * scale[2])
    result = _primitive(sol)
    assert a * result[0] ** 2 + b * result[1] ** 2 + c * result[2] ** 2 == 0
    return result


# ---------------------------------------------------------------------------
# ternary forms and conics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TernaryForm:
    """General ternary quadratic form ``v^T M v`` with a diagonalized view.

    ``transform`` maps diagonal coordinates w to original ones, v = P w, and
    ``diagonal`` holds the entries of P^T M P.
    """

    matrix: Rows
    diagonal: Vector
    transform: Rows

    @classmethod
    def from_matrix(cls, entries: Sequence[Sequence[Rational]]) -> TernaryForm:
        m = _rows(entries)

        def bil(u: Vector, v: Vector) -> Fraction:
            return sum((m[i][j] * u[i] * v[j] for i in range(3) for j in range(3)), Fraction(0))

        basis: list[Vector] = [tuple(Fraction(int(i == j)) for j in range(3)) for i in range(3)]
        done: list[Vector] = []
        while basis:
            pivot = next((u for u in basis if bil(u, u) != 0), None)
            if pivot is None:
                pair = next(
                    ((u, v) for i, u in enumerate(basis) for v in basis[i + 1 :] if bil(u, v) != 0),
                    None,
                )
                if pair is None:
                    done.extend(basis)
                    break
                u, v = pair
                pivot = tuple(x + y for x, y in zip(u, v))
                basis.remove(u)
                basis.append(pivot)
            basis.remove(pivot)
            pp = bil(pivot, pivot)
            basis = [tuple(x - bil(u, pivot) / pp * y for x, y in zip(u, pivot)) for u in basis]
            done.append(pivot)
        transform = transpose(tuple(done))
        diagonal = tuple(bil(u, u) for u in done)
        return cls(m, diagonal, transform)

    def __call__(self, v: Sequence[Rational]) -> Fraction:
        return sum((self.matrix[i][j] * v[i] * v[j] for i in range(3) for j in range(3)), Fraction(0))

    def bilinear(self, u: Sequence[Rational], v: Sequence[Rational]) -> Fraction:
        return sum((self.matrix[i][j] * u[i] * v[j] for i in range(3) for j in range(3)), Fraction(0))

    def integer_diagonal(self) -> tuple[int, int, int]:
        den = math.lcm(*(d.denominator for d in self.diagonal))
        return tuple(int(d * den) for d in self.diagonal)  # type: ignore[return-value]

    def obstruction(self) -> int | None:
        a, b, c = self.integer_diagonal()
        if 0 in (a, b, c):
            return None
        return legendre_obstruction(a, b, c)

    def solve(self) -> tuple[int, int, int] | None:
        """Primitive integer zero of the form, or None when none exists."""
        diag = self.integer_diagonal()
        if 0 in diag:
            i = diag.index(0)
            w: Sequence[Rational] = tuple(int(j == i) for j in range(3))
        else:
            w = legendre_solve(*diag)  # type: ignore[assignment]
            if w is None:
                return None
        v = _primitive(matvec(self.transform, w))
        assert self(v) == 0
        return v  # type: ignore[return-value]

    def other_point(self, v: Sequence[Rational], direction: Sequence[Rational]) -> tuple[int, ...] | None:
        """Second intersection of the line through zero ``v`` along ``direction``."""
        pt = [self(direction) * x - 2 * self.bilinear(v, direction) * y for x, y in zip(v, direction)]
        if not any(pt):
            return None
        return _primitive(pt)


@dataclass(frozen=True)
class BinaryConic:
    """The conic alpha z^2 = a p^2 + b p q + c q^2 in (p, q, z)."""

    a: Fraction
    b: Fraction
    c: Fraction
    alpha: Fraction

    @property
    def form(self) -> TernaryForm:
        return TernaryForm.from_matrix(((self.a, self.b / 2, 0), (self.b / 2, self.c, 0), (0, 0, -self.alpha)))

    def binary(self, p: Rational, q: Rational) -> Fraction:
        return self.a * p * p + self.b * p * q + self.c * q * q

    def contains(self, p: Rational, q: Rational, z: Rational) -> bool:
        return self.binary(p, q) == self.alpha * z * z

    def z_of(self, p: Rational, q: Rational) -> Fraction | None:
        """Nonnegative z on the conic over (p, q), if rational."""
        return rational_sqrt_exact(self.binary(p, q) / self.alpha)

    def base_point(self) -> tuple[int, int, int] | None:
        """Primitive integer point with q != 0, q > 0."""
        form = self.form
        v = form.solve()
        if v is None:
            return None
        for direction in ((0, 1, 0), (1, 1, 0), (1, 2, 0), (0, 1, 1), (1, 0, 1)):
            if v[1] != 0:
                break
            w = form.other_point(v, direction)
            if w is not None:
                v = w
        if v[1] < 0:
            v = tuple(-x for x in v)
        return v  # type: ignore[return-value]

    def parameterize(self, base: Sequence[int], k: Rational) -> tuple[Fraction, Fraction]:
        """(p, q) of the second intersection of z/q - z0/q0 = k (p/q - p0/q0)."""
        p0, q0, z0 = base
        k = as_fraction(k)
        q = q0 * (self.alpha * k * k - self.a)
        if q == 0:
            raise ParameterAtInfinity(f"slope {k} meets the conic at infinity")
        p = self.alpha * k * k * p0 - 2 * self.alpha * k * z0 + self.a * p0 + self.b * q0
        return p, q

    def parameter_polys(self, base: Sequence[int]) -> tuple[UniPoly, UniPoly]:
        p0, q0, z0 = base
        al = self.alpha
        return (
            UniPoly([self.a * p0 + self.b * q0, -2 * al * z0, al * p0]),
            UniPoly([-self.a * q0, 0, al * q0]),
        )

    def tangent_slope(self, base: Sequence[int]) -> Fraction | None:
        p0, q0, z0 = base
        if z0 == 0:
            return None
        x0 = Fraction(p0, q0)
        return (2 * self.a * x0 + self.b) / (2 * self.alpha * Fraction(z0, q0))

    def slope(self, base: Sequence[int], p: Rational, q: Rational, z: Rational) -> Fraction | None:
        """Slope from the base point to (p, q, z); None for the vertical line."""
        p0, q0, z0 = base
        x0, y0 = Fraction(p0, q0), Fraction(z0, q0)
        x, y = as_fraction(p) / q, as_fraction(z) / q
        if x == x0:
            return self.tangent_slope(base) if y == y0 else None
        return (y - y0) / (x - x0)


def r_conic(t: Rational) -> BinaryConic:
    """(t^2+1) r^2 = (t^2-7) p^2 + 24 p q - 24 q^2."""
    t = as_fraction(t)
    return BinaryConic(t * t - 7, Fraction(24), Fraction(-24), t * t + 1)


def s_conic(t: Rational) -> BinaryConic:
    """(t^2+1) s^2 = 8t p^2 - 24t p q - 3(t^2-8t+1) q^2."""
    t = as_fraction(t)
    return BinaryConic(8 * t, -24 * t, -3 * (t * t - 8 * t + 1), t * t + 1)


@dataclass(frozen=True)
class ConicBasePoint:
    """Integer point on (t^2-7) p^2 + 24 p q - 24 q^2 = (t^2+1) r^2 with q0 != 0."""

    p0: int
    q0: int
    r0: int
    t: Fraction

    def __post_init__(self) -> None:
        if self.q0 == 0:
            raise ValueError("base point needs q0 != 0")
        if not r_conic(self.t).contains(self.p0, self.q0, self.r0):
            raise ValueError("base point is not on the conic")

    def scaled(self, k: int) -> ConicBasePoint:
        return ConicBasePoint(self.p0 * k, self.q0 * k, self.r0 * k, self.t)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.p0, self.q0, self.r0)


def conic_form(t: Rational) -> TernaryForm:
    """(t^2-7) p^2 + 24 p q - 24 q^2 - (t^2+1) r^2 in (p, q, r)."""
    return r_conic(t).form


def quadric_form(t: Rational) -> TernaryForm:
    """(1-t^2) q^2 + 6 r^2 + (1+t^2) s^2 in (q, r, s)."""
    t = as_fraction(t)
    return TernaryForm.from_matrix(((1 - t * t, 0, 0), (0, 6, 0), (0, 0, 1 + t * t)))


def conic_base_point(t: Rational) -> ConicBasePoint | None:
    t = _admissible(t)
    v = r_conic(t).base_point()
    if v is None:
        return None
    return ConicBasePoint(v[0], v[1], v[2], t)


def conic_obstruction(t: Rational) -> int | None:
    """Certificate place (prime, or -1 for the reals) when the conic is insoluble."""
    return conic_form(_admissible(t)).obstruction()


def parameterize_conic(base: ConicBasePoint, t: Rational, k: Rational) -> tuple[Fraction, Fraction]:
    """Second intersection (p, q) of the slope-k line through the base point."""
    return r_conic(t).parameterize(base.as_tuple(), k)


def slope_of(base: ConicBasePoint, p: Rational, q: Rational, r: Rational) -> Fraction | None:
    return r_conic(base.t).slope(base.as_tuple(), p, q, r)


def tangent_slope(base: ConicBasePoint) -> Fraction | None:
    return r_conic(base.t).tangent_slope(base.as_tuple())
