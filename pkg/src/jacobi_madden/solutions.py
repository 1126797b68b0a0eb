"""Solutions of a^4 + b^4 + c^4 + d^4 = (a + b + c + d)^4 and their t-values."""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .exactmath import Rational, as_fraction


class Verdict(str, enum.Enum):
    VALID = "valid"
    TRIVIAL = "trivial"
    INVALID = "invalid"


def jm_residual(a: int, b: int, c: int, d: int) -> int:
    return a**4 + b**4 + c**4 + d**4 - (a + b + c + d) ** 4


def verify_solution(a: int, b: int, c: int, d: int) -> Verdict:
    if jm_residual(a, b, c, d) != 0:
        return Verdict.INVALID
    nonzero = sum(1 for x in (a, b, c, d) if x)
    if nonzero >= 3:
        return Verdict.VALID
    if nonzero <= 1:
        return Verdict.TRIVIAL
    # two nonzero entries would contradict Fermat for exponent 4
    return Verdict.INVALID


def canonical(quad: Sequence[int]) -> tuple[int, int, int, int]:
    """Primitive, largest-magnitude entry positive, lexicographically least permutation."""
    g = math.gcd(*quad)
    if g == 0:
        return tuple(quad)  # type: ignore[return-value]
    v = tuple(x // g for x in quad)
    top = max(abs(x) for x in v)
    signs = [w for w in (v, tuple(-x for x in v)) if top in w]
    return min(min(itertools.permutations(w)) for w in signs)  # type: ignore[return-value]


@dataclass(frozen=True, order=True)
class Solution:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if verify_solution(self.a, self.b, self.c, self.d) is not Verdict.VALID:
            raise ValueError(f"{self.as_tuple()} is not a nontrivial solution")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def canonical(self) -> Solution:
        return Solution(*canonical(self.as_tuple()))

    def __iter__(self) -> Iterator[int]:
        return iter(self.as_tuple())

    def __str__(self) -> str:
        return ",".join(map(str, self.as_tuple()))


def from_rationals(v: Sequence[Rational]) -> tuple[int, ...]:
    """Clear denominators and divide out the content."""
    fr = [as_fraction(x) for x in v]
    den = math.lcm(*(x.denominator for x in fr))
    ints = [int(x * den) for x in fr]
    g = math.gcd(*ints)
    return tuple(x // g for x in ints) if g else tuple(ints)


# ---------------------------------------------------------------------------
# F, G, H and t
# ---------------------------------------------------------------------------

def _q(x: int, y: int) -> int:
    return x * x + x * y + y * y


def compute_FGH(a: int, b: int, c: int, d: int) -> tuple[int, int, int]:
    return _q(a, b), _q(c, d), _q(a + b, c + d)


def t_of(a: Rational, b: Rational, c: Rational, d: Rational) -> Fraction:
    den = (a + c + d) * (b + c + d)
    if den == 0:
        raise ZeroDivisionError("(a+c+d)(b+c+d) = 0")
    return Fraction(c * c + c * d + d * d) / den


def involution(t: Rational) -> Fraction:
    """t -> (t + 1)/(t - 1), which pairs the t-values of a solution."""
    t = as_fraction(t)
    return (t + 1) / (t - 1)


def t_orbit(sol: Sequence[int]) -> set[Fraction]:
    """Distinct t over all 24 orderings; a nontrivial solution gives exactly six."""
    values = set()
    for perm in itertools.permutations(sol):
        values.add(t_of(*perm))
    if len(values) != 6:
        raise AssertionError(f"orbit of {tuple(sol)} has {len(values)} values")
    return values


def permutations_with_t(sol: Sequence[int], t: Rational) -> list[tuple[int, ...]]:
    out = []
    for perm in dict.fromkeys(itertools.permutations(sol)):
        try:
            if t_of(*perm) == t:
                out.append(perm)
        except ZeroDivisionError:
            continue
    return out


# ---------------------------------------------------------------------------
# brute force
# ---------------------------------------------------------------------------

def brute_force(bound: int) -> list[tuple[int, int, int, int]]:
    """Every quadruple with max |entry| <= bound solving the equation, up to symmetry.

    Symmetry is permutation plus global negation.  Entries are enumerated in
    descending order a >= b >= c >= d; each class is reported by its sorted
    representative that is lexicographically greatest under negation,
    so (0, 0, 0, 7) rather than (-7, 0, 0, 0).
    """
    if bound < 1:
        raise ValueError("bound must be positive")
    p4 = {x: x**4 for x in range(-4 * bound, 4 * bound + 1)}
    found = set()
    for a in range(-bound, bound + 1):
        for b in range(-bound, a + 1):
            ab = p4[a] + p4[b]
            for c in range(-bound, b + 1):
                abc = ab + p4[c]
                s = a + b + c
                for d in range(-bound, c + 1):
                    if abc + p4[d] == p4[s + d]:
                        quad = (d, c, b, a)
                        neg = tuple(sorted(-x for x in quad))
                        found.add(max(quad, neg))
    return sorted(found)
