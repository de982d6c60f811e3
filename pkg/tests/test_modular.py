import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bernsieve.arith import primes_up_to
from bernsieve.modular import (
    InertPrimeCert, ModPoly, Refusal, count_roots_gcd, count_roots_mod_q, count_roots_scan, derivative_mod,
    discriminant_primes, inert_density, inert_primes, is_inert_prime, poly_gcd_mod, power_sum_congruence,
    reduce_bernoulli_mod_q,
)


def brute_roots(f):
    return sum(1 for x in range(f.q) if f(x) == 0)


def test_reduce_examples():
    assert reduce_bernoulli_mod_q(2, 13).coeffs == (11, 12, 1)
    assert reduce_bernoulli_mod_q(2, 5).coeffs == (1, 4, 1)
    with pytest.raises(ValueError, match="denominator prime"):
        reduce_bernoulli_mod_q(2, 3)


@pytest.mark.parametrize("q,expected", [(5, 0), (13, 2), (11, 2)])
def test_b2_root_counts(q, expected):
    f = reduce_bernoulli_mod_q(2, q)
    assert brute_roots(f) == expected
    assert count_roots_scan(f) == count_roots_gcd(f) == expected


def test_root_count_edge_cases():
    assert count_roots_gcd(ModPoly(7, ())) == 7 == count_roots_scan(ModPoly(7, ()))
    assert count_roots_gcd(ModPoly(7, (3,))) == 0 == count_roots_scan(ModPoly(7, (3,)))
    # (x-1)^2 (x-2) over F_5 has two distinct roots
    f = ModPoly(5, (-2, 5, -4, 1))
    assert count_roots_gcd(f) == count_roots_scan(f) == brute_roots(f) == 2


@settings(max_examples=100)
@given(st.sampled_from(primes_up_to(400)), st.lists(st.integers(0, 1000), min_size=1, max_size=9))
def test_root_methods_agree_on_random_polys(q, cs):
    f = ModPoly(q, tuple(cs))
    n = brute_roots(f)
    assert count_roots_scan(f) == count_roots_gcd(f) == n
    if f.degree >= 0:
        assert n <= f.degree


@pytest.mark.parametrize("k", range(2, 13, 2))
def test_root_methods_agree_on_bernoulli(k):
    for q in primes_up_to(2000):
        if q < k + 3:
            continue
        f = reduce_bernoulli_mod_q(k, q)
        n = count_roots_scan(f)
        assert n == count_roots_gcd(f)
        assert n <= k


def test_gcd_method_above_threshold():
    f = reduce_bernoulli_mod_q(2, 1000003)
    # 1000003 = 7 mod 12, so B_2 has no root
    assert count_roots_mod_q(f) == 0
    assert count_roots_mod_q(reduce_bernoulli_mod_q(2, 1000003), method="scan") == 0
    assert count_roots_mod_q(reduce_bernoulli_mod_q(2, 1000033)) == 2  # 1000033 = 1 mod 12


def test_k2_classification():
    for q in primes_up_to(10**4):
        if q < 5:
            continue
        assert (count_roots_mod_q(reduce_bernoulli_mod_q(2, q)) == 0) == (q % 12 in (5, 7))


def test_is_inert_examples():
    c = is_inert_prime(2, 1, 5)
    assert isinstance(c, InertPrimeCert) and c.checked_bound_ok and c.coprime_ok and c.root_count == 0
    r = is_inert_prime(2, 1, 13)
    assert isinstance(r, Refusal) and r.reason == "has_root" and not r
    assert is_inert_prime(2, 5, 5).reason == "q_divides_r"
    assert is_inert_prime(6, 1, 7).reason == "q_below_k_plus_3"
    assert is_inert_prime(2, 1, 9).reason == "not_prime"


def test_inert_primes_examples():
    assert [c.q for c in inert_primes(2, 1, 30)] == [5, 7, 17, 19, 29]
    with pytest.raises(ValueError):
        inert_primes(2, 1, 4)
    assert inert_primes(4, 1, 100)


def test_inert_primes_parallel_is_identical():
    assert inert_primes(6, 1, 3000, workers=3) == inert_primes(6, 1, 3000, workers=1)


def test_inert_primes_cross_checked_by_brute_force():
    for k in (4, 6, 8):
        for r in (1, 3, 10):
            got = [c.q for c in inert_primes(k, r, 300)]
            want = [q for q in primes_up_to(300) if q >= k + 3 and r % q
                    and brute_roots(reduce_bernoulli_mod_q(k, q)) == 0]
            assert got == want


def test_certificates_self_verify():
    for k in (2, 4, 10):
        for c in inert_primes(k, 7, 500):
            assert c.reverify()
            assert c.reverify(method="gcd")


def test_inert_density_examples():
    d = inert_density(2, 1, 10**4)
    assert abs(d.fraction - Fraction(1, 2)) < Fraction(5, 100)
    assert inert_density(2, 1, 5).fraction == 1
    assert inert_density(6, 1, 10**3).fraction > 0


def test_squarefree_transfer_mod_q():
    for k in (2, 4, 6, 8, 10):
        bad = set(discriminant_primes(k, 2000))
        for q in primes_up_to(2000):
            if q <= k + 1 or q in bad:
                continue
            f = reduce_bernoulli_mod_q(k, q)
            assert poly_gcd_mod(f, derivative_mod(f)).degree == 0


def test_power_sum_congruence_hand_instance():
    # 1^2 + ... + 7^2 = 140 = 42 mod 49 and 7 * B_2(1) = 7/6 = 42 mod 49
    assert power_sum_congruence(2, 1, 7, 1, 7) == (42, 42)


def test_power_sum_congruence_random():
    rng = random.Random(11)
    for _ in range(200):
        k = rng.choice([2, 4, 6, 8, 10])
        q = rng.choice([p for p in primes_up_to(200) if p >= k + 3])
        r = rng.choice([x for x in range(-30, 31) if x and x % q])
        d = q * rng.randint(1, 12)
        a = rng.randint(-500, 500)
        lhs, rhs = power_sum_congruence(k, r, d, a, q)
        assert lhs == rhs


def test_power_sum_congruence_preconditions():
    with pytest.raises(ValueError):
        power_sum_congruence(2, 7, 7, 1, 7)
    with pytest.raises(ValueError):
        power_sum_congruence(4, 1, 5, 1, 5)
