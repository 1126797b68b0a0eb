"""Small-degree polynomial arithmetic over GF(p); coefficient lists highest degree first."""
from __future__ import annotations

import random
from typing import Sequence

from .exactmath import sqrt_mod_p

Poly = list[int]


def trim(a: Sequence[int], p: int) -> Poly:
    out = [c % p for c in a]
    while out and out[0] == 0:
        out.pop(0)
    return out


def monic(a: Poly, p: int) -> Poly:
    inv = pow(a[0], -1, p)
    return [c * inv % p for c in a]


def sub(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    a = [0] * (n - len(a)) + list(a)
    b = [0] * (n - len(b)) + list(b)
    return trim([x - y for x, y in zip(a, b)], p)


def mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out, p)


def rem(a: Poly, b: Poly, p: int) -> Poly:
    a = trim(a, p)
    inv = pow(b[0], -1, p)
    while len(a) >= len(b):
        f = a[0] * inv % p
        for i, c in enumerate(b):
            a[i] = (a[i] - f * c) % p
        a = trim(a, p)
    return a


def gcd(a: Poly, b: Poly, p: int) -> Poly:
    a, b = trim(a, p), trim(b, p)
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p) if a else []


def derivative(a: Poly, p: int) -> Poly:
    n = len(a) - 1
    return trim([c * (n - i) for i, c in enumerate(a[:-1])], p)


def powmod(base: Poly, e: int, m: Poly, p: int) -> Poly:
    result: Poly = [1]
    base = rem(base, m, p)
    while e:
        if e & 1:
            result = rem(mul(result, base, p), m, p)
        base = rem(mul(base, base, p), m, p)
        e >>= 1
    return result


def roots(f: Sequence[int], p: int, rng: random.Random | None = None) -> list[int]:
    """Distinct roots of f modulo an odd prime p, ascending."""
    f = trim(f, p)
    if len(f) <= 1:
        return []
    d = gcd(sub(powmod([1, 0], p, f, p), [1, 0], p), f, p)
    return sorted(_split(d, p, rng or random.Random(p)))


def _split(d: Poly, p: int, rng: random.Random) -> list[int]:
    deg = len(d) - 1
    if deg <= 0:
        return []
    if deg == 1:
        return [-d[1] % p]
    if deg == 2:
        _, b, c = monic(d, p)
        r = sqrt_mod_p((b * b - 4 * c) % p, p)
        inv2 = pow(2, -1, p)
        return sorted({(-b + r) * inv2 % p, (-b - r) * inv2 % p})
    while True:
        a = rng.randrange(p)
        h = gcd(sub(powmod([1, a], (p - 1) // 2, d, p), [1], p), d, p)
        if 0 < len(h) - 1 < deg:
            q = _divide(d, h, p)
            return _split(h, p, rng) + _split(q, p, rng)


def _divide(a: Poly, b: Poly, p: int) -> Poly:
    a = list(a)
    inv = pow(b[0], -1, p)
    out = []
    while len(a) >= len(b):
        f = a[0] * inv % p
        out.append(f)
        for i, c in enumerate(b):
            a[i] = (a[i] - f * c) % p
        a.pop(0)
    return out


def const_times_square(f: Sequence[int], p: int) -> tuple[int, Poly] | None:
    """(c, h) with f = c h^2 mod p, or None. f must be nonzero mod p and p odd."""
    f = trim(f, p)
    deg = len(f) - 1
    if deg % 2:
        return None
    c = f[0]
    m = monic(f, p)
    half = deg // 2
    inv2 = pow(2, -1, p)
    h = [1]
    # match coefficients of x^(deg-1) ... x^half, each fixing one coefficient of h
    for k in range(1, half + 1):
        acc = sum(h[i] * h[k - i] for i in range(1, k))
        h.append((m[k] - acc) * inv2 % p)
    return (c, h) if mul(h, h, p) == m else None
