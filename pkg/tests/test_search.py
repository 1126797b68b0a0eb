from __future__ import annotations

from fractions import Fraction

import pytest

from conftest import BRUDNO, ROW_31_6, ROW_193_18, GENS_373_150, ROWS_373_150
from jacobi_madden.ecurve import GeneratorSet, curve_from_t, parse_generator
from jacobi_madden.search import (
    build_model,
    curve_method_hits,
    roundtrip,
    search_curve_method,
    search_quartic_method,
    slope_height,
)
from jacobi_madden.sieve import TValue
from jacobi_madden.solutions import Solution, Verdict, canonical, t_orbit, verify_solution


def canon(sol) -> Solution:
    return Solution(*canonical(sol))


def test_quartic_search_finds_smallest_solution():
    found = search_quartic_method(TValue(511, 450), 35)
    assert canon(BRUDNO) in found
    assert all(Fraction(511, 450) in t_orbit(s.as_tuple()) for s in found)


def test_quartic_search_height_is_a_threshold():
    assert slope_height(BRUDNO, Fraction(511, 450)) == 35
    assert canon(BRUDNO) not in search_quartic_method(TValue(511, 450), 34)


def test_quartic_search_table_row():
    assert slope_height(ROW_31_6, Fraction(31, 6)) == 1101
    assert canon(ROW_31_6) in search_quartic_method(TValue(31, 6), 1101)


def test_quartic_search_rejected_t():
    assert search_quartic_method(TValue(3, 2), 200) == []


def test_quartic_search_worker_invariance():
    t = TValue(193, 18)
    assert search_quartic_method(t, 60, workers=1) == search_quartic_method(t, 60, workers=3)


def test_quartic_search_quadric_order_agrees():
    # the other assignment of the two conics gives a different model with larger heights
    t = TValue(511, 450)
    model = build_model(t, "sr")
    height = slope_height(BRUDNO, t.value, model)
    assert height == 3167
    assert canon(BRUDNO) in search_quartic_method(t, height, workers=2, quadric_order="sr")


def table_gens(bound: int) -> GeneratorSet:
    curve = curve_from_t(Fraction(373, 150))
    return GeneratorSet(curve, tuple(parse_generator(curve, u) for u in GENS_373_150), bound)


def test_curve_method_rank_four_case():
    hits = list(curve_method_hits(Fraction(373, 150), table_gens(1)))
    assert canon(ROWS_373_150[1]) in {sol for _, sol in hits}
    for comb, sol in hits:
        assert verify_solution(*sol) is Verdict.VALID
        assert Fraction(373, 150) in t_orbit(sol.as_tuple())
    # at least one hit uses the third generator
    assert any(comb.coefficients[2] != 0 for comb, _ in hits)


def test_curve_method_known_generator_multiples_give_nothing():
    assert search_curve_method(TValue(31, 6), GeneratorSet.default(Fraction(31, 6), bound=3)) == []


def test_curve_method_without_generators():
    gens = GeneratorSet(curve_from_t(Fraction(31, 6)), (), 2)
    assert search_curve_method(TValue(31, 6), gens) == []


@pytest.mark.parametrize("sol", [BRUDNO, ROW_193_18])
def test_roundtrip_every_permutation(sol):
    rows = roundtrip(sol)
    assert len(rows) == 24
    assert all(r["ok"] for r in rows), [r for r in rows if not r["ok"]]
    assert {canonical(tuple(map(int, r["lift"].split(",")))) for r in rows} == {canonical(sol)}


def test_roundtrip_rejects_non_solutions():
    with pytest.raises(ValueError):
        roundtrip((1, 2, 3, 4))
    with pytest.raises(ValueError):
        roundtrip((0, 0, 0, 5))
