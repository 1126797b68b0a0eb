"""Enumeration and sieving of the parameter t = m/n."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .exactmath import FactorizationTooHard
from .quadform import BinaryConic, quadric_form, r_conic, s_conic
from .quartic import DegenerateQuartic, build_conic_quartic, local_obstruction

STAGES = ("conjecture", "quadric", "conic", "quartic")
DEFAULT_ORDER = STAGES
QUADRIC_ORDERS = ("rs", "sr")


@dataclass(frozen=True, order=True)
class TValue:
    """t = m/n in lowest terms with m, n of opposite parity and t > 1."""

    m: int
    n: int

    def __post_init__(self) -> None:
        if self.n <= 0:
            raise ValueError("denominator must be positive")
        if math.gcd(self.m, self.n) != 1:
            raise ValueError(f"{self.m}/{self.n} is not in lowest terms")
        if (self.m - self.n) % 2 == 0:
            raise ValueError(
                f"{self} has m and n both odd; use {normalize_t(self.m, self.n)} instead"
            )
        if self.m <= self.n:
            raise ValueError(f"{self} must exceed 1")

    @classmethod
    def parse(cls, text: str) -> TValue:
        m, _, n = text.strip().partition("/")
        return cls(int(m), int(n) if n else 1)

    @property
    def value(self) -> Fraction:
        return Fraction(self.m, self.n)

    def __str__(self) -> str:
        return f"{self.m}/{self.n}"


def normalize_t(m: int, n: int) -> TValue:
    """Choose the member of {t, (t+1)/(t-1)} whose numerator and denominator differ in parity."""
    if n < 0:
        m, n = -m, -n
    if math.gcd(m, n) != 1:
        raise ValueError(f"{m}/{n} is not in lowest terms")
    if m <= n:
        raise ValueError(f"|t| <= 1 is excluded (t = {m}/{n})")
    if (m - n) % 2:
        return TValue(m, n)
    a, b = m + n, m - n
    g = math.gcd(a, b)
    return TValue(a // g, b // g)


def conjecture_filter(t: TValue) -> bool:
    """150 | n, or 25(6E+1) | (m - n) for some integer E together with 6 | n.

    Taking E = 0 shows the second branch is exactly 25 | (m - n) and 6 | n.
    """
    m, n = t.m, t.n
    if n % 150 == 0:
        return True
    return (m - n) % 25 == 0 and n % 6 == 0


def enumerate_t(max_sum: int) -> Iterator[TValue]:
    """All non-integral t with m + n <= max_sum, by increasing m + n, then increasing m.

    Integers t = m/1 are skipped, so the stream starts 3/2, 4/3, 5/2.
    """
    if max_sum < 3:
        raise ValueError("max_sum must be at least 3")
    for s in range(3, max_sum + 1):
        for m in range(s // 2 + 1, s - 1):
            n = s - m
            if math.gcd(m, n) == 1 and (m - n) % 2:
                yield TValue(m, n)


def conics_for(t: Fraction, quadric_order: str = "rs") -> tuple[BinaryConic, BinaryConic]:
    """(parameterized conic, target conic) for the chosen quadric order."""
    if quadric_order == "rs":
        return r_conic(t), s_conic(t)
    if quadric_order == "sr":
        return s_conic(t), r_conic(t)
    raise ValueError(f"unknown quadric order {quadric_order!r}")


def factor_hints(m: int, n: int, base: Sequence[int] = ()) -> list[int]:
    """Numbers whose primes cover the discriminant of the t-quartics."""
    return [
        2, 3, m, n, m - n, m + n, m * m + n * n,
        m**4 - 16 * m**3 * n + 50 * m * m * n * n - 80 * m * n**3 + 49 * n**4,
        *base,
    ]


@dataclass
class SieveReport:
    t: TValue
    flags: dict[str, bool | None] = field(default_factory=dict)
    failed_stage: str | None = None
    obstruction: int | None = None
    quadric_order: str = "rs"

    @property
    def passed(self) -> bool:
        return self.failed_stage is None and all(v is True for v in self.flags.values())

    def to_json(self) -> dict:
        return {
            "t": str(self.t),
            "passed": self.passed,
            "failed_stage": self.failed_stage,
            "obstruction": self.obstruction,
            "quadric_order": self.quadric_order,
            **{stage: self.flags.get(stage) for stage in STAGES},
        }


def sieve_t(
    t: TValue,
    order: Sequence[str] = DEFAULT_ORDER,
    quadric_order: str = "rs",
) -> SieveReport:
    """Run the stages in ``order``, stopping at the first that fails.

    A stage whose factorization gives up is recorded as None (undecided) and
    also stops the run.
    """
    report = SieveReport(t, quadric_order=quadric_order)
    tv = t.value
    conic, target = conics_for(tv, quadric_order)
    base: tuple[int, ...] | None = None

    for stage in order:
        try:
            if stage == "conjecture":
                ok, place = conjecture_filter(t), None
            elif stage == "quadric":
                place = quadric_form(tv).obstruction()
                ok = place is None
            elif stage == "conic":
                place = conic.form.obstruction()
                ok = place is None
            elif stage == "quartic":
                base = base or conic.base_point()
                if base is None:
                    ok, place = False, conic.form.obstruction()
                else:
                    quartic = build_conic_quartic(conic, base, target)
                    place = local_obstruction(quartic, hints=factor_hints(t.m, t.n, base))
                    ok = place is None
            else:
                raise ValueError(f"unknown stage {stage!r}")
        except (FactorizationTooHard, DegenerateQuartic):
            report.flags[stage] = None
            report.failed_stage = stage
            return report
        report.flags[stage] = ok
        if not ok:
            report.failed_stage = stage
            report.obstruction = place
            return report
    return report


def _sieve_one(args: tuple[TValue, tuple[str, ...], str]) -> SieveReport:
    return sieve_t(*args)


def sieve(
    max_sum: int,
    order: Sequence[str] = DEFAULT_ORDER,
    quadric_order: str = "rs",
    workers: int = 1,
) -> list[SieveReport]:
    """Reports for every enumerated t, in enumeration order regardless of ``workers``."""
    jobs = [(t, tuple(order), quadric_order) for t in enumerate_t(max_sum)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_sieve_one, jobs, chunksize=16))
    return [_sieve_one(job) for job in jobs]
