from __future__ import annotations

import random
from fractions import Fraction

import pytest

BRUDNO = (5400, 1770, -2634, 955)
BRUDNO_ORBIT = {
    Fraction(961, 61), Fraction(2521, 325), Fraction(1651, 126),
    Fraction(1777, 1525), Fraction(1423, 1098), Fraction(511, 450),
}
ROW_31_6 = (53902630, 2542025, 35847220, -34122866)
ROW_193_18 = (27385, 48150, 7590, -31764)
GENS_373_150 = (
    "2984/25",
    "165858034880079528468553/154606810823279404439062500",
    "29529243840780598196578176/60686911309473227566225",
    "184247616563459246903349991070216/16933216732179015462369769140625",
)
ROWS_373_150 = (
    (-7929822455879583, 10830318289720550, 9309384955649330, 392431543415120),
    (50627178820, 1357751663, 55867457830, -41572821650),
)


def random_t(rng: random.Random, lo: int = 2, hi: int = 400) -> Fraction:
    """A random rational away from the singular values 0 and +-1."""
    while True:
        t = Fraction(rng.randint(-hi, hi), rng.randint(1, hi // lo))
        if t not in (0, 1, -1):
            return t


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20170312)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
