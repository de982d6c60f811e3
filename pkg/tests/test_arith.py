from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from bernsieve.arith import (
    binom_mod_p_lucas, binomial, integer_nth_root, is_prime, primes_up_to, rat_arith, rational_mod,
)

SMALL_PRIMES = [p for p in range(2, 101) if all(p % d for d in range(2, p))]
rationals = st.fractions(max_denominator=10**6).filter(lambda x: abs(x.numerator) < 10**9)


def test_rat_arith_examples():
    assert rat_arith(Fraction(1, 6), Fraction(-1, 2), "+") == Fraction(-1, 3)
    assert rat_arith(Fraction(1, 42), 42, "*") == 1
    assert rat_arith(Fraction(-1, 30), Fraction(1, 6), "/") == Fraction(-1, 5)


def test_rat_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        rat_arith(1, 0, "/")


def test_rationals_stay_reduced():
    x = rat_arith(Fraction(2, 4), Fraction(-6, 8), "*")
    assert (x.numerator, x.denominator) == (-3, 8)


@given(rationals, rationals, rationals)
def test_field_laws_hold_exactly(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@pytest.mark.parametrize("n,r,expected", [(4, 2, 6), (3, 5, 0), (6, 0, 1), (5, -1, 0)])
def test_binomial(n, r, expected):
    assert binomial(n, r) == expected


@pytest.mark.parametrize("u,v,p,expected", [(12, 4, 2, 1), (12, 3, 2, 0), (10, 4, 7, 0)])
def test_lucas_examples(u, v, p, expected):
    assert binom_mod_p_lucas(u, v, p) == expected
    assert comb(u, v) % p == expected


def test_lucas_rejects_composite():
    with pytest.raises(ValueError):
        binom_mod_p_lucas(10, 3, 9)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 10**6), st.sampled_from(SMALL_PRIMES))
def test_lucas_matches_direct(u, v, p):
    v = min(u, v) if u else 0
    assert binom_mod_p_lucas(u, v, p) == comb(u, v) % p


@given(st.integers(0, 3000), st.integers(0, 3000), st.sampled_from(SMALL_PRIMES))
def test_lucas_matches_direct_small(u, v, p):
    assert binom_mod_p_lucas(u, v, p) == comb(u, v) % p


def test_primes_up_to():
    assert primes_up_to(10) == [2, 3, 5, 7]
    assert primes_up_to(1) == []
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_prime_list_agrees_with_trial_division():
    trial = [n for n in range(2, 5000) if all(n % d for d in range(2, int(n**0.5) + 1))]
    assert primes_up_to(4999) == trial
    assert [n for n in range(5000) if is_prime(n)] == trial


def test_is_prime_64bit():
    assert is_prime(2**61 - 1)
    assert not is_prime(2**61 + 1)
    assert is_prime(18446744073709551557)  # largest 64-bit prime
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


@pytest.mark.parametrize("N,n,expected", [(4900, 2, (70, True)), (216, 3, (6, True)), (217, 3, (6, False)),
                                          (0, 5, (0, True)), (1, 2, (1, True)), (2**64, 64, (2, True))])
def test_integer_nth_root_examples(N, n, expected):
    assert integer_nth_root(N, n) == expected


def test_4900_is_sum_of_first_24_squares():
    assert sum(i * i for i in range(1, 25)) == 4900


@given(st.integers(0, 2**256), st.integers(2, 70))
def test_integer_nth_root_brackets(N, n):
    root, exact = integer_nth_root(N, n)
    assert root**n <= N < (root + 1) ** n
    assert exact == (root**n == N)


@given(st.integers(0, 2**64), st.integers(2, 12))
def test_integer_nth_root_exact_powers(y, n):
    assert integer_nth_root(y**n, n) == (y, True)


def test_rational_mod():
    assert rational_mod(Fraction(1, 6), 13) == 11
    assert rational_mod(Fraction(7, 6), 49) == 42
    with pytest.raises(ZeroDivisionError):
        rational_mod(Fraction(1, 6), 9)
