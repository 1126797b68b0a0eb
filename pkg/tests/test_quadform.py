from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conftest import BRUDNO, random_t
from jacobi_madden.quadform import (
    TRANSFORM_C,
    TRANSFORM_D,
    BinaryConic,
    ChartViolation,
    ConicBasePoint,
    DegenerateParameter,
    ParameterAtInfinity,
    SymMatrix4,
    TernaryForm,
    apply_transform,
    build_M1,
    build_M2,
    conic_base_point,
    conic_obstruction,
    conjugate,
    evaluate_form,
    legendre_obstruction,
    legendre_solve,
    parameterize_conic,
    pencil_reductions,
    pqrs_from_solution,
    quadric_form,
    r_conic,
    slope_of,
    tangent_slope,
)

T = sympy.Symbol("t")

# Matrices as printed, in the variable t.
PRINTED = {
    "M3": [[-2 * T, 0, 0, 0], [0, 8 - 6 * T, -6 * T, 0], [0, -6 * T, 48 - 6 * T, 0], [0, 0, 0, 8 * T]],
    "M4": [[-2, 0, 0, 0], [0, 8 * T - 6, -6, 0], [0, -6, -6, 0], [0, 0, 0, -8 * T]],
    "M5": [[0, 0, 0, 0], [0, 1 - T**2, 0, 0], [0, 0, 6, 0], [0, 0, 0, T**2 + 1]],
    "M31": [[14, -24, 0, 0], [-24, 48 - 6 * T, 0, 0], [0, 0, 2, 0], [0, 0, 0, -2 * T]],
    "M41": [[2 * T, 0, 0, 0], [0, -6, 0, 0], [0, 0, -2 * T, 0], [0, 0, 0, -2]],
    "M51": [[8 * T, -12 * T, 0, 0], [-12 * T, -3 * (T**2 - 8 * T + 1), 0, 0], [0, 0, 0, 0], [0, 0, 0, -(T**2 + 1)]],
    "M61": [[T**2 - 7, 12, 0, 0], [12, -24, 0, 0], [0, 0, -(T**2 + 1), 0], [0, 0, 0, 0]],
}


def printed_at(name: str, t: Fraction) -> list[list[Fraction]]:
    tv = sympy.Rational(t.numerator, t.denominator)
    return [[Fraction(str(sympy.sympify(e).subs(T, tv))) for e in row] for row in PRINTED[name]]


def sympy_form_matrix(expr, variables) -> sympy.Matrix:
    """Doubled-coefficient matrix of a quadratic form (the convention of M1, M2)."""
    return sympy.hessian(expr, variables)


def test_build_M1_M2_entries():
    assert build_M1(2).rows[3] == (1, 1, 0, -2)
    assert build_M2(2)[2, 2] == 2
    with pytest.raises(DegenerateParameter):
        build_M1(1)
    with pytest.raises(DegenerateParameter):
        build_M2(0)


def test_M1_M2_are_the_doubled_forms():
    # H + F - G t = 0 and t (H - F) - G = 0, expanded independently
    a, b, c, d = sympy.symbols("a b c d")
    F = a * a + a * b + b * b
    G = c * c + c * d + d * d
    H = (a + b) ** 2 + (a + b) * (c + d) + (c + d) ** 2
    m1 = sympy_form_matrix(H + F - G * T, (a, b, c, d))
    m2 = sympy_form_matrix(T * (H - F) - G, (a, b, c, d))
    for t in (Fraction(2), Fraction(961, 61), Fraction(-7, 3)):
        tv = sympy.Rational(t.numerator, t.denominator)
        assert [list(r) for r in build_M1(t).rows] == [[Fraction(str(x)) for x in m1.subs(T, tv).row(i)] for i in range(4)]
        assert [list(r) for r in build_M2(t).rows] == [[Fraction(str(x)) for x in m2.subs(T, tv).row(i)] for i in range(4)]


def test_brudno_on_both_quadrics():
    t = Fraction(961, 61)
    for v in (BRUDNO, (1770, 5400, -2634, 955)):
        assert evaluate_form(build_M1(t), v) == 0
        assert evaluate_form(build_M2(t), v) == 0
    assert evaluate_form(build_M1(Fraction(5)), (1, 0, 0, 0)) == 4


def test_conjugate_identity():
    ident = [[int(i == j) for j in range(4)] for i in range(4)]
    m = build_M2(Fraction(7, 3))
    assert conjugate(m, ident) == m


def test_M4_at_three_matches_print():
    got = conjugate(build_M2(3), TRANSFORM_C)
    assert [list(r) for r in got.rows] == printed_at("M4", Fraction(3))


@pytest.mark.parametrize("name", ["M3", "M4", "M5", "M31", "M41", "M51", "M61"])
def test_recomputed_matrices_against_print(name, rng):
    for _ in range(25):
        t = random_t(rng)
        got = [list(r) for r in pencil_reductions(t)[name].rows]
        want = printed_at(name, t)
        if name == "M3":
            # the printed (4,4) entry 8t disagrees with the expansion, which gives 8
            assert got[3][3] == 8
            want[3][3] = Fraction(8)
        assert got == want


def test_M3_erratum_from_symbolic_expansion():
    p, q, r, s = sympy.symbols("p q r s")
    a, b, c, d = 2 * r + 2 * s, 2 * r - 2 * s, -p - q - r, p - q - r
    F = a * a + a * b + b * b
    G = c * c + c * d + d * d
    H = (a + b) ** 2 + (a + b) * (c + d) + (c + d) ** 2
    hess = sympy.hessian(sympy.expand(H + F - G * T), (p, q, r, s))
    assert hess[3, 3] == 8
    assert sympy.simplify(hess[3, 3] - PRINTED["M3"][3][3]) != 0


def test_M5_diagonal_for_random_t(rng):
    for _ in range(50):
        t = random_t(rng)
        m5 = pencil_reductions(t)["M5"]
        assert m5.is_diagonal()
        assert [m5[i, i] for i in range(4)] == [0, 1 - t * t, 6, 1 + t * t]


def test_pencil_spot_values():
    red = pencil_reductions(3)
    assert [red["M5"][i, i] for i in range(4)] == [0, -8, 6, 10]
    assert pencil_reductions(2)["M51"][0, 0] == 16
    assert pencil_reductions(2)["M61"][0, 0] == -3


def test_pqrs_inverse_D():
    assert pqrs_from_solution(BRUDNO, "D") == (1906, Fraction(-1679, 2), 1815, Fraction(-3589, 2))
    assert apply_transform(pqrs_from_solution(BRUDNO, "D"), "D") == tuple(Fraction(x) for x in BRUDNO)
    with pytest.raises(ChartViolation):
        pqrs_from_solution((1, 1, 1, -1), "D")


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-10**6, 10**6), min_size=4, max_size=4), st.sampled_from(["C", "D"]))
def test_transform_round_trip(w, which):
    v = apply_transform(w, which)
    if which == "D" and v[2] + v[3] == 0:
        return
    assert pqrs_from_solution(v, which) == tuple(Fraction(x) for x in w)


def test_D_closed_form():
    a, b, c, d = BRUDNO
    p, q, r, s = pqrs_from_solution(BRUDNO, "D")
    assert (p, q, r, s) == (Fraction(a + b, 2) + c + d, Fraction(c + d, 2), Fraction(a - b, 2), Fraction(c - d, 2))


def test_legendre_examples():
    assert legendre_solve(1, 1, -2) in {(1, 1, 1), (1, 1, -1), (1, -1, 1), (1, -1, -1)}
    assert legendre_solve(1, 1, 1) is None
    assert legendre_obstruction(1, 1, 1) == -1
    x, y, z = legendre_solve(-925, 216, 997)
    assert -925 * x * x + 216 * y * y + 997 * z * z == 0 and (x, y, z) != (0, 0, 0)
    assert legendre_solve(1, 1, -3) is None  # 3 is not a sum of two rational squares


@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.integers(-60, 60), min_size=3, max_size=3).filter(lambda v: any(v)),
    st.lists(st.integers(-40, 40).filter(lambda x: x != 0), min_size=2, max_size=2),
)
def test_legendre_planted(sol, ab):
    # plant (x,y,z) by choosing c so that a x^2 + b y^2 + c z^2 = 0
    x, y, z = sol
    a, b = ab
    if z == 0:
        return
    num = -(a * x * x + b * y * y)
    if num == 0 or num % (z * z):
        return
    c = num // (z * z)
    found = legendre_solve(a, b, c)
    assert found is not None
    u, v, w = found
    assert a * u * u + b * v * v + c * w * w == 0 and any(found)


def test_legendre_insoluble_matches_brute_force():
    for a, b, c in [(1, 1, -3), (2, 3, -5 * 7), (1, 3, -7), (5, 7, -3), (-1, -2, 11)]:
        solution = legendre_solve(a, b, c)
        small = [
            (x, y, z)
            for x in range(-25, 26) for y in range(-25, 26) for z in range(0, 26)
            if (x, y, z) != (0, 0, 0) and a * x * x + b * y * y + c * z * z == 0
        ]
        if solution is None:
            assert not small
        else:
            u, v, w = solution
            assert a * u * u + b * v * v + c * w * w == 0


def test_ternary_form_from_general_matrix():
    # x^2 + xy + y^2 - 7 z^2: soluble ((2,1,1))
    form = TernaryForm.from_matrix([[1, Fraction(1, 2), 0], [Fraction(1, 2), 1, 0], [0, 0, -7]])
    v = form.solve()
    assert v is not None and form(v) == 0


def test_quadric_and_conic_forms_agree_on_solubility(rng):
    for _ in range(40):
        m = rng.randint(2, 200)
        t = Fraction(m, rng.randint(1, m - 1))
        assert (quadric_form(t).obstruction() is None) == (conic_obstruction(t) is None)


def test_conic_base_point_31_6():
    base = conic_base_point(Fraction(31, 6))
    p, q, r = base.as_tuple()
    assert q != 0
    assert 709 * p * p + 864 * p * q - 864 * q * q == 997 * r * r
    p, q, r = base.scaled(5).as_tuple()
    assert 709 * p * p + 864 * p * q - 864 * q * q == 997 * r * r


def test_conic_base_point_insoluble():
    assert conic_base_point(Fraction(3, 2)) is None
    assert conic_obstruction(Fraction(3, 2)) == 3


def test_base_point_validation():
    with pytest.raises(ValueError):
        ConicBasePoint(1, 1, 1, Fraction(31, 6))


def test_parameterization_matches_printed_formula(rng):
    t = Fraction(31, 6)
    base = conic_base_point(t)
    p0, q0, r0 = base.as_tuple()
    T2 = t * t + 1
    for _ in range(50):
        k = Fraction(rng.randint(-300, 300), rng.randint(1, 50))
        num = k * k * p0 * T2 - 2 * k * r0 * T2 + p0 * (t * t - 7) + 24 * q0
        den = q0 * (k * k * T2 - t * t + 7)
        p, q = parameterize_conic(base, t, k)
        assert p * den == q * num
        r = r_conic(t).z_of(p, q)
        assert r is not None
        assert (t * t - 7) * p * p + 24 * p * q - 24 * q * q == T2 * r * r
        back = slope_of(base, p, q, r)
        p2, q2 = parameterize_conic(base, t, back)
        assert p2 * q == q2 * p


def test_tangent_slope_returns_base_point():
    t = Fraction(31, 6)
    base = conic_base_point(t)
    p, q = parameterize_conic(base, t, tangent_slope(base))
    assert p * base.q0 == q * base.p0


def test_parameter_at_infinity():
    # z^2 = 4 p^2 - 3 q^2 through (1, 1, 1); slope 2 is parallel to an asymptote
    conic = BinaryConic(Fraction(4), Fraction(0), Fraction(-3), Fraction(1))
    assert conic.contains(1, 1, 1)
    with pytest.raises(ParameterAtInfinity):
        conic.parameterize((1, 1, 1), Fraction(2))
    p, q = conic.parameterize((1, 1, 1), Fraction(1))
    assert conic.z_of(p, q) is not None
