"""Exact integer/rational primitives shared by every other module.

Python ``int`` is the arbitrary-precision integer and ``fractions.Fraction``
the exact rational; this module adds the number theory on top of them.
"""
from __future__ import annotations

import math
import os
import random
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

Rational = Fraction | int

# Deterministic Miller-Rabin witnesses, valid for n < 3.317e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_LIMIT = 3317044064679887385961981

TRIAL_DIVISION_LIMIT = 10**6
DEFAULT_DIGIT_LIMIT = 40


class FactorizationTooHard(ArithmeticError):
    """Raised when a cofactor exceeds the configured digit limit."""


def as_fraction(x: Rational | str) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def format_rational(x: Rational) -> str:
    """Serialize as ``m/n`` with positive ``n`` (bare ``m`` when n == 1)."""
    x = as_fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# primes and factorization
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def small_primes(limit: int = TRIAL_DIVISION_LIMIT) -> tuple[int, ...]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < _MR_DETERMINISTIC_LIMIT:
        bases: Iterable[int] = _MR_BASES
    else:
        rng = random.Random(n)
        bases = list(_MR_BASES) + [rng.randrange(2, n - 1) for _ in range(20)]
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, max_iterations: int) -> int | None:
    """Return a nontrivial factor of composite ``n`` or None."""
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    iterations = 0
    while iterations < max_iterations:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
            iterations += r
            if iterations > max_iterations:
                break
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


def current_digit_limit() -> int:
    return int(os.environ.get("JM_DIGIT_LIMIT", DEFAULT_DIGIT_LIMIT))


def factorize(
    n: int,
    *,
    hints: Iterable[int] = (),
    digit_limit: int | None = None,
    trial_limit: int = TRIAL_DIVISION_LIMIT,
) -> dict[int, int]:
    """Prime factorization of ``|n|`` as ``{prime: exponent}``.

    ``hints`` are candidate divisors tried first (they need not be prime or
    even divide ``n``); this lets callers that know the structure of a huge
    number strip it down to something trial division and rho can finish.
    A composite cofactor with more than ``digit_limit`` digits that rho cannot
    split raises :class:`FactorizationTooHard`. The limit defaults to the
    ``JM_DIGIT_LIMIT`` environment variable, else ``DEFAULT_DIGIT_LIMIT``.
    """
    if digit_limit is None:
        digit_limit = current_digit_limit()
    if n == 0:
        raise ValueError("cannot factorize 0")
    n = abs(n)
    result: Counter[int] = Counter()
    pending: list[int] = []

    for h in sorted({abs(h) for h in hints if abs(h) > 1}):
        g = math.gcd(n, h)
        if g > 1:
            # split off the hint part; it is factored on its own below
            while n % g == 0 and g > 1:
                n //= g
                pending.append(g)
                g = math.gcd(n, g)
    pending.append(n)

    while pending:
        m = pending.pop()
        if m == 1:
            continue
        for p in small_primes(min(trial_limit, TRIAL_DIVISION_LIMIT)):
            if p * p > m:
                break
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                result[p] += e
        if m == 1:
            continue
        if m < min(trial_limit, TRIAL_DIVISION_LIMIT) ** 2 or is_probable_prime(m):
            result[m] += 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            for p, e in factorize(r, digit_limit=digit_limit, trial_limit=trial_limit).items():
                result[p] += 2 * e
            continue
        budget = 2_000_000 if len(str(m)) <= digit_limit else 200_000
        f = _pollard_brent(m, budget)
        if f is None:
            raise FactorizationTooHard(f"could not split a {len(str(m))}-digit cofactor")
        pending.extend((f, m // f))
    return dict(sorted(result.items()))


def prime_divisors(n: int, **kwargs) -> list[int]:
    return list(factorize(n, **kwargs))


def squarefree_decomposition(n: int, **kwargs) -> tuple[int, int]:
    """Return ``(core, root)`` with ``n == core * root**2`` and ``core`` squarefree (sign kept)."""
    core, root = (-1 if n < 0 else 1), 1
    for p, e in factorize(n, **kwargs).items():
        root *= p ** (e // 2)
        if e % 2:
            core *= p
    return core, root


def valuation(n: Rational, p: int) -> int | float:
    """p-adic valuation; ``math.inf`` for zero."""
    n = as_fraction(n)
    if n == 0:
        return math.inf
    v = 0
    num, den = n.numerator, n.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


# ---------------------------------------------------------------------------
# square roots
# ---------------------------------------------------------------------------

def integer_sqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def rational_sqrt_exact(q: Rational) -> Fraction | None:
    q = as_fraction(q)
    num = integer_sqrt_exact(q.numerator)
    if num is None:
        return None
    den = integer_sqrt_exact(q.denominator)
    if den is None:
        return None
    return Fraction(num, den)


def legendre_symbol(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def sqrt_mod_p(a: int, p: int) -> int | None:
    """Tonelli-Shanks. Returns the smaller of the two roots, or None."""
    a %= p
    if p == 2 or a == 0:
        return a
    if legendre_symbol(a, p) != 1:
        return None
    if p % 4 == 3:
        x = pow(a, (p + 1) // 4, p)
        return min(x, p - x)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre_symbol(z, p) != -1:
        z += 1
    m, c, t, x = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, x = t * c % p, x * b % p
    return min(x, p - x)


def sqrt_mod_squarefree(a: int, n: int, factors: Sequence[int] | None = None) -> int | None:
    """A square root of ``a`` modulo squarefree ``|n|`` via CRT, or None."""
    n = abs(n)
    if n == 1:
        return 0
    primes = list(factors) if factors is not None else prime_divisors(n)
    x, mod = 0, 1
    for p in primes:
        r = sqrt_mod_p(a, p)
        if r is None:
            return None
        # combine x (mod mod) with r (mod p)
        x = x + mod * ((r - x) * pow(mod, -1, p) % p)
        mod *= p
    return x % n


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

class UniPoly:
    """Dense univariate polynomial over Q, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rational]):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def x(cls) -> UniPoly:
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x: Rational) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other: object) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({[format_rational(c) for c in self.coeffs]})"

    def __add__(self, other: UniPoly | Rational) -> UniPoly:
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly(x + y for x, y in zip(a, b))

    def __neg__(self) -> UniPoly:
        return UniPoly(-c for c in self.coeffs)

    __radd__ = __add__

    def __sub__(self, other: UniPoly | Rational) -> UniPoly:
        return self + (-other)

    def __rsub__(self, other: Rational) -> UniPoly:
        return (-self) + other

    def __mul__(self, other: UniPoly | Rational) -> UniPoly:
        if not isinstance(other, UniPoly):
            return UniPoly(c * other for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return UniPoly([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> UniPoly:
        out = UniPoly([1])
        for _ in range(e):
            out = out * self
        return out

    def derivative(self) -> UniPoly:
        return UniPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def divmod(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [Fraction(0)] * max(len(rem) - other.degree, 1)
        lead = other.leading
        while len(rem) >= len(other.coeffs) and any(rem):
            shift = len(rem) - len(other.coeffs)
            factor = rem[-1] / lead
            quot[shift] = factor
            for i, c in enumerate(other.coeffs):
                rem[shift + i] -= factor * c
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return UniPoly(quot), UniPoly(rem)

    def __mod__(self, other: UniPoly) -> UniPoly:
        return self.divmod(other)[1]

    def monic(self) -> UniPoly:
        return self * (1 / self.leading) if self.coeffs else self

    def gcd(self, other: UniPoly) -> UniPoly:
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def squarefree_part(self) -> UniPoly:
        g = self.gcd(self.derivative())
        return self.divmod(g)[0] if g.degree > 0 else self

    def primitive_integer(self) -> list[int]:
        """Integer coefficients with content 1 and positive leading term."""
        if not self.coeffs:
            return []
        den = math.lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = math.gcd(*ints)
        sign = 1 if ints[-1] > 0 else -1
        return [sign * c // g for c in ints]

    def count_real_roots(self) -> int:
        """Distinct real roots, by a Sturm sequence."""
        f = self.squarefree_part()
        if f.degree <= 0:
            return 0
        seq = [f, f.derivative()]
        while seq[-1].degree > 0:
            r = seq[-2] % seq[-1]
            if r.is_zero():
                break
            seq.append(-r)

        def changes(signs: list[int]) -> int:
            signs = [s for s in signs if s]
            return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

        def sign(x: Fraction) -> int:
            return (x > 0) - (x < 0)

        at_neg = [sign(p.leading) * (-1 if p.degree % 2 else 1) for p in seq]
        at_pos = [sign(p.leading) for p in seq]
        return changes(at_neg) - changes(at_pos)


def _rational_reconstruct(a: int, m: int, num_bound: int, den_bound: int) -> Fraction | None:
    """Find r/s == a (mod m) with |r| <= num_bound, 0 < s <= den_bound."""
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > num_bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > den_bound or math.gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def rational_roots(f: UniPoly) -> list[Fraction]:
    """All rational roots of ``f``, each once, ascending.

    Roots are found modulo a small prime where ``f`` stays squarefree, lifted
    p-adically and recovered by rational reconstruction; every candidate is
    confirmed by exact evaluation.
    """
    if f.is_zero():
        raise ValueError("zero polynomial has every number as a root")
    roots: set[Fraction] = set()
    g = f.squarefree_part()
    coeffs = g.primitive_integer()
    if coeffs and coeffs[0] == 0:
        roots.add(Fraction(0))
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
    if len(coeffs) <= 1:
        return sorted(roots)
    if len(coeffs) == 2:
        roots.add(Fraction(-coeffs[0], coeffs[1]))
        return sorted(roots)
    lead, const = coeffs[-1], coeffs[0]
    deriv = [i * c for i, c in enumerate(coeffs) if i]

    def ev(cs: Sequence[int], x: int, mod: int) -> int:
        acc = 0
        for c in reversed(cs):
            acc = (acc * x + c) % mod
        return acc

    for p in small_primes(10**4)[1:]:
        if lead % p == 0:
            continue
        residues = [x for x in range(p) if ev(coeffs, x, p) == 0]
        if any(ev(deriv, x, p) == 0 for x in residues):
            continue  # p divides the discriminant
        break
    else:  # pragma: no cover - needs a degree-huge discriminant
        raise ArithmeticError("no suitable prime for root lifting")

    bound_num, bound_den = abs(const), abs(lead)
    target = 2 * bound_num * bound_den + 1
    for x in residues:
        mod = p
        while mod < target:
            # Newton step modulo mod**2
            mod2 = mod * mod
            fx = ev(coeffs, x, mod2)
            dfx = ev(deriv, x, mod2)
            x = (x - fx * pow(dfx, -1, mod2)) % mod2
            mod = mod2
        cand = _rational_reconstruct(x, mod, bound_num, bound_den)
        if cand is not None and f(cand) == 0:
            roots.add(cand)
    return sorted(roots)
