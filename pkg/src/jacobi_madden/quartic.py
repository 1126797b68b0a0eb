"""Binary quartics Y^2 = A X^4 + B X^3 + C X^2 + D X + E."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .exactmath import (
    Rational,
    UniPoly,
    as_fraction,
    format_rational,
    integer_sqrt_exact,
    legendre_symbol,
    prime_divisors,
    rational_sqrt_exact,
    small_primes,
    valuation,
)
from . import modpoly
from .quadform import BinaryConic, ConicBasePoint, build_M1, build_M2


class DegenerateQuartic(ValueError):
    """The quartic is a perfect square or has a repeated root."""


class LocalSolubilityUndecided(ArithmeticError):
    """p-adic search exceeded its depth budget (only for degenerate input)."""


@dataclass(frozen=True)
class BinaryQuartic:
    A: Fraction
    B: Fraction
    C: Fraction
    D: Fraction
    E: Fraction

    def __post_init__(self) -> None:
        for name in "ABCDE":
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if not any(self.coefficients):
            raise ValueError("quartic is identically zero")

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[Rational]) -> BinaryQuartic:
        """From (A, B, C, D, E), highest degree first."""
        return cls(*coeffs)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return (self.A, self.B, self.C, self.D, self.E)

    @property
    def poly(self) -> UniPoly:
        return UniPoly(reversed(self.coefficients))

    def __call__(self, x: Rational) -> Fraction:
        a, b, c, d, e = self.coefficients
        return (((a * x + b) * x + c) * x + d) * x + e

    def form(self, x: int, z: int) -> Fraction:
        """Homogeneous value F(x, z) = z^4 g(x/z)."""
        a, b, c, d, e = self.coefficients
        x2, z2 = x * x, z * z
        return a * x2 * x2 + b * x2 * x * z + c * x2 * z2 + d * x * z2 * z + e * z2 * z2

    def scale(self, c: Rational) -> BinaryQuartic:
        return BinaryQuartic(*(x * c for x in self.coefficients))

    def reversed(self) -> BinaryQuartic:
        return BinaryQuartic(*reversed(self.coefficients))

    def discriminant(self) -> Fraction:
        i, j = invariants_IJ(self)
        return (4 * i**3 - j**2) / 27

    def is_degenerate(self) -> bool:
        return self.discriminant() == 0

    def integral(self) -> tuple[BinaryQuartic, int]:
        """Multiply by the smallest square s^2 making every coefficient integral."""
        s = 1
        for c in self.coefficients:
            den = c.denominator
            # need s^2 divisible by den
            need = 1
            for p, e in _small_factor(den).items():
                need *= p ** ((e + 1) // 2)
            s = math.lcm(s, need)
        return self.scale(s * s), s

    def __str__(self) -> str:
        return "Y^2 = " + " + ".join(
            f"({format_rational(c)})X^{4 - i}" for i, c in enumerate(self.coefficients)
        )


def _small_factor(n: int) -> dict[int, int]:
    from .exactmath import factorize

    return factorize(n) if n > 1 else {}


@dataclass(frozen=True)
class QuarticPoint:
    """Point on Y^2 = g(X); ``X is None`` marks a point at infinity (Y = +-sqrt(A))."""

    X: Fraction | None
    Y: Fraction

    @property
    def at_infinity(self) -> bool:
        return self.X is None

    def on(self, q: BinaryQuartic) -> bool:
        if self.X is None:
            return self.Y * self.Y == q.A and q.A != 0
        return self.Y * self.Y == q(self.X)


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def build_slope_quartic(t: Rational, base: ConicBasePoint) -> BinaryQuartic:
    """Quartic in the conic slope k after substituting the parameterized (p, q)."""
    t = as_fraction(t)
    p0, q0, r0 = base.p0, base.q0, base.r0
    tt = t * t + 1
    a = tt**3 * (8 * p0 * p0 * t - 24 * p0 * q0 * t - 3 * q0 * q0 * (t * t - 8 * t + 1))
    b = 16 * r0 * t * tt**3 * (3 * q0 - 2 * p0)
    c = 2 * tt**2 * (
        8 * p0 * p0 * t * (t * t - 7)
        + 192 * p0 * q0 * t
        + 3 * q0 * q0 * (t**4 - 8 * t**3 - 6 * t**2 - 40 * t - 7)
        + 16 * r0 * r0 * t * tt
    )
    d = -16 * r0 * t * tt**2 * (2 * p0 * (t * t - 7) + 3 * q0 * (t * t + 9))
    e = tt * (
        8 * p0 * p0 * t * (t * t - 7) ** 2
        + 24 * p0 * q0 * t * (t * t - 7) * (t * t + 9)
        - 3 * q0 * q0 * (t**6 - 8 * t**5 - 13 * t**4 - 80 * t**3 + 35 * t**2 - 584 * t + 49)
    )
    return BinaryQuartic(a, b, c, d, e)


def build_conic_quartic(conic: BinaryConic, base: Sequence[int], target: BinaryConic) -> BinaryQuartic:
    """Y^2 = alpha' Q'(p(k), q(k)) for (p(k), q(k)) parameterizing ``conic``.

    A rational point (k, Y) gives the target value z' = Y / alpha' at the
    (unnormalized) pair (p(k), q(k)).
    """
    pk, qk = conic.parameter_polys(base)
    poly = (pk * pk * target.a + pk * qk * target.b + qk * qk * target.c) * target.alpha
    cs = list(poly.coeffs) + [Fraction(0)] * (5 - len(poly.coeffs))
    return BinaryQuartic(*reversed(cs[:5]))


def pencil_determinant(t: Rational, x: Rational) -> Fraction:
    """det(x M1 + M2) by cofactor expansion; independent of the closed form."""
    m1, m2 = build_M1(t), build_M2(t)
    m = [[x * m1[i, j] + m2[i, j] for j in range(4)] for i in range(4)]
    return _det(m)


def _det(m: list[list[Fraction]]) -> Fraction:
    if len(m) == 1:
        return m[0][0]
    total = Fraction(0)
    for j, v in enumerate(m[0]):
        if v:
            minor = [row[:j] + row[j + 1 :] for row in m[1:]]
            total += (-1) ** j * v * _det(minor)
    return total


def build_pencil_quartic(t: Rational) -> BinaryQuartic:
    """det(X M1(t) + M2(t)) as a quartic in X.

    The coefficients are recovered by evaluating the 4x4 determinant at five
    points and interpolating, so they are not copied from a closed form.
    """
    t = as_fraction(t)
    xs = [Fraction(i) for i in range(-2, 3)]
    ys = [pencil_determinant(t, x) for x in xs]
    coeffs = _interpolate(xs, ys)
    coeffs += [Fraction(0)] * (5 - len(coeffs))
    return BinaryQuartic(*reversed(coeffs[:5]))


def _interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> list[Fraction]:
    """Lagrange interpolation; coefficients lowest degree first."""
    total = UniPoly([])
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = UniPoly([yi])
        for j, xj in enumerate(xs):
            if j != i:
                term = term * UniPoly([-xj, 1]) * (1 / (xi - xj))
        total = total + term
    return list(total.coeffs)


def pencil_quartic_closed_form(t: Rational) -> BinaryQuartic:
    t = as_fraction(t)
    return BinaryQuartic(
        3 * t * (7 * t - 8),
        -6 * (3 * t**3 - 7 * t + 4),
        -3 * (t**4 - 8 * t**3 + 12 * t**2 - 7),
        -6 * t * (t * t - 4 * t + 3),
        -3 * t * t,
    )


# ---------------------------------------------------------------------------
# invariants and covariants
# ---------------------------------------------------------------------------

def invariants_IJ(q: BinaryQuartic) -> tuple[Fraction, Fraction]:
    a, b, c, d, e = q.coefficients
    i = 12 * a * e - 3 * b * d + c * c
    j = 72 * a * c * e + 9 * b * c * d - 27 * a * d * d - 27 * b * b * e - 2 * c**3
    return i, j


def covariant_g4(q: BinaryQuartic) -> UniPoly:
    a, b, c, d, e = q.coefficients
    return UniPoly(
        [
            3 * d * d - 8 * c * e,
            4 * (c * d - 6 * b * e),
            2 * (2 * c * c - 24 * a * e - 3 * b * d),
            4 * (b * c - 6 * a * d),
            3 * b * b - 8 * a * c,
        ]
    )


# ---------------------------------------------------------------------------
# transforms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuarticTransform:
    """g_new(X) = (c X + d)^4 g((a X + b)/(c X + d)) / scale^2.

    A point (X', Y') on the new quartic maps back to X = (a X' + b)/(c X' + d),
    Y = scale * Y' / (c X' + d)^2 on the old one.
    """

    a: int = 1
    b: int = 0
    c: int = 0
    d: int = 1
    scale: Fraction = Fraction(1)

    def compose(self, other: QuarticTransform) -> QuarticTransform:
        """Apply ``self`` first, then ``other`` (on the transformed quartic)."""
        return QuarticTransform(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            as_fraction(self.scale) * other.scale,
        )

    @property
    def determinant(self) -> int:
        return self.a * self.d - self.b * self.c

    def apply(self, q: BinaryQuartic) -> BinaryQuartic:
        num = UniPoly([self.b, self.a])
        den = UniPoly([self.d, self.c])
        total = UniPoly([])
        for k, coeff in enumerate(reversed(q.coefficients)):
            total = total + (num**k) * (den ** (4 - k)) * coeff
        cs = list(total.coeffs) + [Fraction(0)] * (5 - len(total.coeffs))
        inv = 1 / (as_fraction(self.scale) ** 2)
        return BinaryQuartic(*(c * inv for c in reversed(cs[:5])))

    def pull_back(self, pt: QuarticPoint, new: BinaryQuartic) -> QuarticPoint:
        """Map a point of the transformed quartic to the original one."""
        s = as_fraction(self.scale)
        if pt.X is None:
            # homogeneous (x:z) = (1:0) -> (a : c)
            if self.c == 0:
                return QuarticPoint(None, s * pt.Y * Fraction(1, self.a**2))
            return QuarticPoint(Fraction(self.a, self.c), s * pt.Y / self.c**2)
        den = self.c * pt.X + self.d
        if den == 0:
            # lands on the original point at infinity
            return QuarticPoint(None, s * pt.Y / (self.a * pt.X + self.b) ** 2)
        return QuarticPoint((self.a * pt.X + self.b) / den, s * pt.Y / (den * den))


def _height(q: BinaryQuartic) -> int:
    return max(max(abs(c.numerator), c.denominator) for c in q.coefficients)


def _remove_square_content(q: BinaryQuartic) -> tuple[BinaryQuartic, QuarticTransform]:
    qi, s = q.integral()
    g = math.gcd(*(int(c) for c in qi.coefficients))
    root = 1
    for p, e in _small_factor(g).items():
        root *= p ** (e // 2)
    return qi.scale(Fraction(1, root * root)), QuarticTransform(scale=Fraction(root, s))


def _covariant_quadratic_step(q: BinaryQuartic) -> QuarticTransform | None:
    """SL2(Z) matrix reducing a positive definite root-covariant quadratic.

    Each complex root r of g contributes |X - r|^2 / |g'(r)|; the resulting
    real quadratic is Gauss-reduced in floating point.  Only the integer
    matrix leaves this function, so exactness is unaffected.
    """
    coeffs = [float(c) for c in q.coefficients]
    if coeffs[0] == 0 or not all(map(math.isfinite, coeffs)):
        return None
    roots = np.roots(coeffs)
    dpoly = np.polyder(np.array(coeffs))
    qa = qb = qc = 0.0
    for r in roots:
        w = abs(np.polyval(dpoly, r))
        if w == 0 or not math.isfinite(w):
            return None
        w = 1.0 / w
        qa += w
        qb += -2.0 * w * r.real
        qc += w * abs(r) ** 2
    if qa <= 0 or 4 * qa * qc - qb * qb <= 0:
        return None
    # Gauss reduction of qa X^2 + qb X Z + qc Z^2, tracking the basis
    m = [1, 0, 0, 1]  # columns are the reduced basis vectors
    for _ in range(200):
        h = round(-qb / (2 * qa))
        if h:
            qc = qa * h * h + qb * h + qc
            qb = qb + 2 * qa * h
            m = [m[0], m[0] * h + m[1], m[2], m[2] * h + m[3]]
        if qa > qc:
            qa, qc = qc, qa
            qb = -qb
            m = [m[1], -m[0], m[3], -m[2]]
            continue
        break
    if m == [1, 0, 0, 1]:
        return None
    return QuarticTransform(m[0], m[1], m[2], m[3])


def reduce_quartic(q: BinaryQuartic, max_rounds: int = 64) -> tuple[BinaryQuartic, QuarticTransform]:
    """Heuristic size reduction: square content, covariant reduction, greedy moves.

    Every accepted step is unimodular in X (plus Y-scaling by squares) and
    never increases the maximum coefficient size.
    """
    cur, total = _remove_square_content(q)
    best = _height(cur)

    def consider(step: QuarticTransform) -> bool:
        nonlocal cur, total, best
        cand = step.apply(cur)
        cand2, extra = _remove_square_content(cand)
        h = _height(cand2)
        if h < best:
            cur, best = cand2, h
            total = total.compose(step).compose(extra)
            return True
        return False

    step = _covariant_quadratic_step(cur)
    if step is not None:
        consider(step)
    for _ in range(max_rounds):
        moves: list[QuarticTransform] = [QuarticTransform(0, 1, 1, 0), QuarticTransform(-1, 0, 0, 1)]
        for h in (1, -1, 2, -2):
            moves.append(QuarticTransform(1, h, 0, 1))
            moves.append(QuarticTransform(1, 0, h, 1))
        if cur.A:
            h = round(-cur.B / (4 * cur.A))
            if h:
                moves.append(QuarticTransform(1, h, 0, 1))
        if cur.E:
            h = round(-cur.D / (4 * cur.E))
            if h:
                moves.append(QuarticTransform(1, 0, h, 1))
        if not any(consider(m) for m in moves):
            break
    return cur, total


# ---------------------------------------------------------------------------
# local solubility
# ---------------------------------------------------------------------------

def _is_square_qp(x: int, p: int) -> bool:
    if x == 0:
        return True
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    if v % 2:
        return False
    if p == 2:
        return x % 8 == 1
    return pow(x % p, (p - 1) // 2, p) == 1


def _poly_eval(cs: Sequence[int], x: int) -> int:
    acc = 0
    for c in cs:
        acc = acc * x + c
    return acc


def _val(x: int, p: int) -> float:
    if x == 0:
        return math.inf
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _zp_soluble(cs: Sequence[int], p: int, x0: int, n: int, max_depth: int) -> bool:
    """Is there x = x0 mod p^n with f(x) a square in Q_p? (coefficients highest first).

    Residue classes are expanded lazily, so for a large prime the search
    usually stops at the first few residues where f is a nonzero square.
    """
    dcs = [c * (len(cs) - 1 - i) for i, c in enumerate(cs[:-1])]
    stack: list[Iterator[tuple[int, int]]] = [iter([(x0, n)])]
    while stack:
        nxt = next(stack[-1], None)
        if nxt is None:
            stack.pop()
            continue
        x, k = nxt
        fx = _poly_eval(cs, x)
        if _is_square_qp(fx, p):
            return True
        lam = _val(fx, p)
        mu = _val(_poly_eval(dcs, x), p) if dcs else math.inf
        err = min(mu + k, 2 * k)
        if lam < err:
            # valuation of f is constant on the class
            if lam % 2:
                continue
            if p != 2 or lam + 3 <= err:
                continue  # unit part fixed modulo p (mod 8 for p = 2) and not a square
        elif mu < k and lam >= mu + k:
            return True  # Hensel: a root of f lies in the class
        if k >= max_depth:
            raise LocalSolubilityUndecided(f"depth {k} exceeded at p={p}")
        stack.append(_children(x, k, p))
    return False


def _children(x: int, k: int, p: int) -> Iterator[tuple[int, int]]:
    step = p**k
    return ((x + j * step, k + 1) for j in range(p))


def is_soluble_at(q: BinaryQuartic, p: int, max_depth: int = 200) -> bool:
    """Y^2 = g(X) has a point over Q_p (including points at infinity)."""
    qi, _ = q.integral()
    cs = [int(c) for c in qi.coefficients]
    if cs[0] == 0 or cs[-1] == 0:
        return True  # a root at infinity or at zero
    # X in Z_p, or X = 1/Z with Z in pZ_p
    if p >= LARGE_PRIME:
        at_p = [c * p ** (4 - i) for i, c in enumerate(cs[::-1])]  # X = 1/(p j)
        return _class_soluble(cs, p, max_depth) or _class_soluble(at_p, p, max_depth)
    if _zp_soluble(cs, p, 0, 0, max_depth):
        return True
    return _zp_soluble(cs[::-1], p, 0, 1, max_depth)


# Above this the Weil bound guarantees a nonzero square value of any
# quartic mod p that is not a constant times a square.
LARGE_PRIME = 17


def _shift(cs: Sequence[int], r: int, p: int) -> list[int]:
    """Coefficients (highest first) of g(r + p j) as a polynomial in j."""
    n = len(cs) - 1
    res = [0] * (n + 1)
    for i, c in enumerate(cs):
        e = n - i
        for k in range(e + 1):
            res[n - k] += c * math.comb(e, k) * r ** (e - k) * p**k
    return res


def _class_soluble(cs: Sequence[int], p: int, max_depth: int, depth: int = 0) -> bool:
    """Is there j in Z_p with g(j) a square in Q_p, for an odd prime p >= LARGE_PRIME?"""
    if not any(cs):
        return True
    if depth > max_depth:
        raise LocalSolubilityUndecided(f"depth {depth} exceeded at p={p}")
    v = min(_val(c, p) for c in cs if c)
    g = [c // p**v for c in cs]
    if v % 2 == 0:
        split = modpoly.const_times_square(g, p)
        if split is None:
            return True  # some j has g(j) a nonzero square mod p; Hensel lifts it
        c, h = split
        if legendre_symbol(c, p) == 1:
            return True
        candidates = modpoly.roots(h, p)
        g_next = g
    else:
        reduced = modpoly.trim(g, p)
        rs = modpoly.roots(reduced, p)
        multiple = set(modpoly.roots(modpoly.gcd(reduced, modpoly.derivative(reduced, p), p), p))
        if any(r not in multiple for r in rs):
            return True  # a simple root lifts to a root of g
        candidates = sorted(multiple)
        g_next = [c * p for c in g]
    return any(_class_soluble(_shift(g_next, r, p), p, max_depth, depth + 1) for r in candidates)


def is_soluble_at_infinity(q: BinaryQuartic) -> bool:
    a = q.A
    if a > 0 or q.E >= 0 or a == 0:
        return True
    return q.poly.count_real_roots() > 0


def bad_primes(q: BinaryQuartic, hints: Iterable[int] = ()) -> list[int]:
    """2, 3 and the primes dividing the discriminant of the integral model."""
    qi, _ = q.integral()
    disc = qi.discriminant()
    primes = {2, 3}
    if disc != 0:
        primes.update(prime_divisors(int(disc), hints=hints))
    return sorted(primes)


def is_locally_soluble(q: BinaryQuartic, hints: Iterable[int] = (), primes: Iterable[int] | None = None) -> bool:
    """Everywhere local solubility of Y^2 = g(X).

    Only the real place and the primes dividing 2*disc need checking: at any
    other prime the model has smooth genus one reduction, which has points
    that lift.  ``hints`` help factor a structured discriminant.
    """
    if q.is_degenerate():
        raise DegenerateQuartic("quartic has a repeated root")
    if not is_soluble_at_infinity(q):
        return False
    for p in primes if primes is not None else bad_primes(q, hints):
        if not is_soluble_at(q, p):
            return False
    return True


def local_obstruction(q: BinaryQuartic, hints: Iterable[int] = ()) -> int | None:
    """First place without points (-1 for the reals), or None when ELS."""
    if not is_soluble_at_infinity(q):
        return -1
    for p in bad_primes(q, hints):
        if not is_soluble_at(q, p):
            return p
    return None


# ---------------------------------------------------------------------------
# point search
# ---------------------------------------------------------------------------

SIEVE_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61)


def _sieve_tables(cs: Sequence[int]) -> list[tuple[int, np.ndarray]]:
    """For each prime, table[z mod l, x mod l] is True when F(x, z) may be a square."""
    tables = []
    for ell in SIEVE_PRIMES:
        r = np.arange(ell, dtype=np.int64)
        is_square = np.zeros(ell, dtype=bool)
        is_square[(r * r) % ell] = True
        xp = [np.ones(ell, dtype=np.int64)]
        for _ in range(4):
            xp.append((xp[-1] * r) % ell)
        vals = np.zeros((ell, ell), dtype=np.int64)
        for k, c in enumerate(cs):
            # rows indexed by z, columns by x
            vals = (vals + (c % ell) * np.outer(xp[k], xp[4 - k])) % ell
        tables.append((ell, is_square[vals]))
    return tables


def _search_block(cs: tuple[int, ...], height: int, denominators: Sequence[int]) -> list[tuple[int, int, int]]:
    tables = _sieve_tables(cs)
    xs = np.arange(-height, height + 1, dtype=np.int64)
    residues = {ell: xs % ell for ell, _ in tables}
    found = []
    for z in denominators:
        mask = np.ones(xs.shape, dtype=bool)
        for ell, tab in tables:
            mask &= tab[z % ell][residues[ell]]
        for x in xs[mask].tolist():
            if math.gcd(x, z) != 1:
                continue
            x2, z2 = x * x, z * z
            val = cs[0] * x2 * x2 + cs[1] * x2 * x * z + cs[2] * x2 * z2 + cs[3] * x * z2 * z + cs[4] * z2 * z2
            y = integer_sqrt_exact(val)
            if y is not None:
                found.append((x, z, y))
    return found


def search_points(q: BinaryQuartic, height: int, workers: int = 1) -> list[QuarticPoint]:
    """All points with X = x/z, |x|, |z| <= height, Y >= 0, plus points at infinity.

    Numerators are sieved modulo small primes before the exact square test.
    """
    if q.is_degenerate():
        raise DegenerateQuartic("cannot search a degenerate quartic")
    qi, s = q.integral()
    cs = tuple(int(c) for c in qi.coefficients)
    zs = list(range(1, height + 1))
    if workers > 1 and height > 200:
        chunks = [zs[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_search_block, [cs] * workers, [height] * workers, chunks)
            raw = [pt for part in parts for pt in part]
    else:
        raw = _search_block(cs, height, zs)
    points = {QuarticPoint(Fraction(x, z), Fraction(y, s * z * z)) for x, z, y in raw}
    out = sorted(points, key=lambda pt: (pt.X, pt.Y))
    root = rational_sqrt_exact(q.A) if q.A > 0 else None
    if root is not None:
        out.extend([QuarticPoint(None, root), QuarticPoint(None, -root)])
    return out


# ---------------------------------------------------------------------------
# minimization
# ---------------------------------------------------------------------------

def _content_valuation(q: BinaryQuartic, p: int) -> float:
    return min(valuation(c, p) for c in q.coefficients)


def _roots_mod_p(cs: Sequence[int], p: int) -> list[int]:
    """Roots of an integer polynomial (highest first) modulo p."""
    if p < 5000:
        return [x for x in range(p) if _poly_eval(cs, x) % p == 0]
    # large p: a non-minimal quartic reduces to lead * (X - r)^4
    a, b = cs[0] % p, cs[1] % p
    if a == 0:
        return []
    r = (-b * pow(4 * a, -1, p)) % p
    return [r] if _poly_eval(cs, r) % p == 0 else []


def _minimize_steps(q: BinaryQuartic, p: int) -> list[QuarticTransform]:
    cs = [int(c) for c in q.coefficients]
    steps = [QuarticTransform(1, 0, 0, p, Fraction(p * p))]
    steps += [QuarticTransform(p, r, 0, 1, Fraction(p * p)) for r in _roots_mod_p(cs, p)]
    return steps


def minimize_at(q: BinaryQuartic, p: int, max_steps: int = 64) -> tuple[BinaryQuartic, QuarticTransform]:
    """Lower v_p(I), v_p(J) by 4 and 6 while a substitution X -> pX + r or X -> X/p allows.

    Each step divides F(aX + bZ, cX + dZ) by p^4.  When no single step
    works, a preliminary step dividing only by p^2 (which keeps I and J) is
    tried first.  Works on integral quartics; returns the combined transform.
    """
    cur, total = _remove_square_content(q)
    for _ in range(max_steps):
        i, j = invariants_IJ(cur)
        if valuation(i, p) < 4 or valuation(j, p) < 6:
            break
        progressed = False
        for first in [None, *_minimize_steps(cur, p)]:
            if first is None:
                base, pre = cur, QuarticTransform()
            else:
                pre = QuarticTransform(first.a, first.b, first.c, first.d, Fraction(p))
                base = pre.apply(cur)
                if _content_valuation(base, p) < 0:
                    continue
            for step in _minimize_steps(base, p):
                cand = step.apply(base)
                if _content_valuation(cand, p) >= 0:
                    cand2, extra = _remove_square_content(cand)
                    cur, total = cand2, total.compose(pre).compose(step).compose(extra)
                    progressed = True
                    break
            if progressed:
                break
        if not progressed:
            break
    return cur, total


def minimize_quartic(q: BinaryQuartic, primes: Iterable[int]) -> tuple[BinaryQuartic, QuarticTransform]:
    cur, total = _remove_square_content(q)
    for p in sorted(set(primes)):
        cur, step = minimize_at(cur, p)
        total = total.compose(step)
    return cur, total
