from __future__ import annotations

import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from jacobi_madden.exactmath import (
    FactorizationTooHard,
    UniPoly,
    factorize,
    format_rational,
    integer_sqrt_exact,
    is_probable_prime,
    legendre_symbol,
    rational_roots,
    rational_sqrt_exact,
    small_primes,
    sqrt_mod_p,
    sqrt_mod_squarefree,
    squarefree_decomposition,
    valuation,
)

rationals = st.fractions(max_denominator=10**6).filter(lambda q: abs(q.numerator) < 10**12)


def test_factorize_examples():
    assert factorize(338611) == {7: 1, 13: 1, 61: 2}
    assert factorize(1) == {}
    assert factorize(997) == {997: 1}
    assert factorize(-12) == {2: 2, 3: 1}
    with pytest.raises(ValueError):
        factorize(0)


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=1, max_value=10**12))
def test_factorize_recomposes(n):
    f = factorize(n)
    assert math.prod(p**e for p, e in f.items()) == n
    assert all(sympy.isprime(p) for p in f)


def test_factorize_large_semiprime_with_hint():
    p, q = sympy.nextprime(10**30), sympy.nextprime(3 * 10**29)
    assert factorize(p * q * 12, hints=[q]) == {2: 2, 3: 1, p: 1, q: 1}


def test_factorize_gives_up_past_digit_limit():
    p, q = sympy.nextprime(10**26), sympy.nextprime(7 * 10**25)
    with pytest.raises(FactorizationTooHard):
        factorize(p * q, digit_limit=20)


def test_primality_against_sympy():
    for n in list(range(-5, 2000)) + [2**61 - 1, 2**89 - 1, 3317044064679887385961981, 10**30 + 57]:
        assert is_probable_prime(n) == sympy.isprime(n), n
    assert small_primes(30) == (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)


def test_integer_and_rational_sqrt():
    assert integer_sqrt_exact(2073600) == 1440
    assert integer_sqrt_exact(0) == 0
    assert integer_sqrt_exact(-4) is None
    assert integer_sqrt_exact(2073601) is None
    assert rational_sqrt_exact(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt_exact(2) is None
    assert rational_sqrt_exact(Fraction(5334511**2, 338611**2)) == Fraction(5334511, 338611)
    assert rational_sqrt_exact(Fraction(-1, 4)) is None


@settings(max_examples=300, deadline=None)
@given(rationals)
def test_rational_sqrt_of_square(q):
    assert rational_sqrt_exact(q * q) == abs(q)


def test_sqrt_mod_p_examples():
    assert sqrt_mod_p(2, 7) in (3, 4)
    assert sqrt_mod_p(3, 7) is None
    assert sqrt_mod_p(5, 41) in (13, 28)
    assert sqrt_mod_p(0, 13) == 0


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=0, max_value=10**9), st.sampled_from([2, 3, 5, 13, 17, 97, 1009, 65537, 10**9 + 7]))
def test_sqrt_mod_p_property(a, p):
    x = sqrt_mod_p(a, p)
    euler = pow(a % p, (p - 1) // 2, p) if p > 2 else 1
    if a % p == 0 or euler == 1:
        assert x is not None and 0 <= x < p and (x * x - a) % p == 0
    else:
        assert x is None


def test_sqrt_mod_squarefree():
    n = 7 * 13 * 61
    for a in range(1, 200):
        x = sqrt_mod_squarefree(a, n)
        has_root = any((y * y - a) % n == 0 for y in range(n))
        assert (x is not None) == has_root
        if x is not None:
            assert (x * x - a) % n == 0


def test_legendre_symbol_matches_sympy():
    for p in (3, 5, 7, 61, 997):
        for a in range(-20, 40):
            expected = 0 if a % p == 0 else sympy.legendre_symbol(a % p, p)
            assert legendre_symbol(a, p) == expected


def test_valuation_and_squarefree():
    assert valuation(Fraction(48, 25), 2) == 4
    assert valuation(Fraction(48, 25), 5) == -2
    assert valuation(0, 3) == math.inf
    assert squarefree_decomposition(-72) == (-2, 6)
    assert squarefree_decomposition(338611) == (91, 61)


def test_format_rational():
    assert format_rational(Fraction(-6, 4)) == "-3/2"
    assert format_rational(7) == "7"


def test_unipoly_arithmetic():
    x = UniPoly.x()
    f = 2 * x**3 - x**2 - x - 3
    g, r = f.divmod(2 * x - 3)
    assert r.is_zero() and g == x**2 + x + 1
    assert f(Fraction(3, 2)) == 0
    assert (f - f).is_zero()
    assert (1 - x) == UniPoly([1, -1])
    assert f.derivative() == 6 * x**2 - 2 * x - 1
    assert ((x - 1) ** 2 * (x + 2)).squarefree_part() == ((x - 1) * (x + 2)).monic()
    assert UniPoly([Fraction(1, 2), Fraction(1, 3)]).primitive_integer() == [3, 2]


def test_count_real_roots():
    x = UniPoly.x()
    assert (x**4 + 1).count_real_roots() == 0
    assert ((x**2 - 2) * (x - 5) * (x + 1)).count_real_roots() == 4
    assert ((x - 1) ** 3).count_real_roots() == 1


def test_rational_roots_examples():
    x = UniPoly.x()
    assert rational_roots(2 * x**3 - x**2 - x - 3) == [Fraction(3, 2)]
    assert rational_roots(x**4 + 1) == []
    assert rational_roots(UniPoly([0, 0, -144])) == [0]
    with pytest.raises(ValueError):
        rational_roots(UniPoly([]))


@settings(max_examples=100, deadline=None)
@given(
    st.lists(st.fractions(max_denominator=60).filter(lambda q: abs(q) < 500), min_size=1, max_size=4),
    st.lists(st.integers(-50, 50), min_size=2, max_size=5),
)
def test_rational_roots_of_products(roots, extra):
    x = UniPoly.x()
    f = UniPoly([1])
    for r in roots:
        f = f * (x - r)
    g = UniPoly(extra)
    if g.is_zero():
        g = UniPoly([1])
    found = rational_roots(f * g)
    assert set(roots) <= set(found)
    assert found == sorted(set(found))
    assert all((f * g)(r) == 0 for r in found)
    # the exact root set, checked against sympy
    X = sympy.Symbol("X")
    expr = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed((f * g).coeffs)], X)
    expected = sorted({Fraction(int(r.p), int(r.q)) for r in sympy.roots(expr, filter="Q")})
    assert found == expected
