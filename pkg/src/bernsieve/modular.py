"""B_k modulo primes: reduction, root counting over F_q, and inert primes.

A prime q is *inert* for (k, r) here when q >= k + 3, q does not divide r and
B_k has no root mod q. Such a q rules out every d with v_q(d) = 1.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
import os

import numpy as np

from .arith import is_prime, primes_between, rational_mod
from .bernoulli import bernoulli_poly, discriminant, poly_eval, power_sum_direct

DEFAULT_SCAN_THRESHOLD = 10**5


def default_workers():
    return int(os.environ.get("BERNSIEVE_WORKERS", "1"))


@dataclass(frozen=True)
class ModPoly:
    """Polynomial over F_q, low degree first, trailing zeros stripped."""

    q: int
    coeffs: tuple

    def __post_init__(self):
        cs = [c % self.q for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.q
        return acc


def reduce_bernoulli_mod_q(k, q):
    """Coefficient-wise image of B_k in F_q; needs q > k + 1."""
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    if q <= k + 1:
        raise ValueError(f"denominator prime: q={q} may divide a denominator of B_{k}")
    return ModPoly(q, tuple(rational_mod(c, q) for c in bernoulli_poly(k).coeffs))


# -- polynomial arithmetic over F_q (lists, low degree first) --------------


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, q):
    a = list(a)
    dm = len(m) - 1
    inv = pow(m[-1], -1, q)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv % q
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % q
    return _trim(a[:dm])


def _pmulmod(a, b, m, q):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pmod([c % q for c in out], m, q)


def _pgcd(a, b, q):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, q)
    return a


def _x_pow_mod(e, m, q):
    result, base = [1], _pmod([0, 1], m, q)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, q)
        base = _pmulmod(base, base, m, q)
        e >>= 1
    return result


def poly_gcd_mod(f, g):
    """Monic gcd of two ModPolys over the same field."""
    q = f.q
    h = _pgcd(f.coeffs, g.coeffs, q)
    if h:
        inv = pow(h[-1], -1, q)
        h = [c * inv % q for c in h]
    return ModPoly(q, tuple(h))


def derivative_mod(f):
    return ModPoly(f.q, tuple(i * c for i, c in enumerate(f.coeffs))[1:])


# -- root counting ----------------------------------------------------------


def count_roots_scan(f):
    """Distinct roots by evaluating f at every residue."""
    q = f.q
    if not f.coeffs:
        return q
    if q < 2**31:
        xs = np.arange(q, dtype=np.int64)
        acc = np.zeros(q, dtype=np.int64)
        for c in reversed(f.coeffs):
            acc = (acc * xs + c) % q
        return int(np.count_nonzero(acc == 0))
    return sum(1 for x in range(q) if f(x) == 0)


def count_roots_gcd(f):
    """Distinct roots as deg gcd(x^q - x, f), with x^q reduced mod f first."""
    q = f.q
    if not f.coeffs:
        return q
    if f.degree == 0:
        return 0
    xq = _x_pow_mod(q, list(f.coeffs), q)
    xq = xq + [0] * max(0, 2 - len(xq))
    xq[1] = (xq[1] - 1) % q
    g = _pgcd(list(f.coeffs), _trim(xq), q)
    return len(g) - 1


def count_roots_mod_q(f, method="auto", threshold=DEFAULT_SCAN_THRESHOLD):
    if method == "scan" or (method == "auto" and f.q < threshold):
        return count_roots_scan(f)
    if method in ("gcd", "auto"):
        return count_roots_gcd(f)
    raise ValueError(f"unknown method {method!r}")


# -- inert primes -----------------------------------------------------------


@dataclass(frozen=True)
class InertPrimeCert:
    k: int
    r: int
    q: int
    root_count: int = 0

    @property
    def checked_bound_ok(self):
        return self.q >= self.k + 3

    @property
    def coprime_ok(self):
        return self.r % self.q != 0

    def reverify(self, method="auto", threshold=DEFAULT_SCAN_THRESHOLD):
        """Recheck all three hypotheses from scratch."""
        return (
            is_prime(self.q)
            and self.checked_bound_ok
            and self.coprime_ok
            and self.root_count == 0
            and count_roots_mod_q(reduce_bernoulli_mod_q(self.k, self.q), method, threshold) == 0
        )


@dataclass(frozen=True)
class Refusal:
    k: int
    r: int
    q: int
    reason: str

    def __bool__(self):
        return False


def is_inert_prime(k, r, q, method="auto", threshold=DEFAULT_SCAN_THRESHOLD):
    """An :class:`InertPrimeCert`, or a falsy :class:`Refusal` naming the failed hypothesis."""
    if k < 2 or k % 2:
        raise ValueError("k must be even and at least 2")
    if r == 0:
        raise ValueError("r must be nonzero")
    if not is_prime(q):
        return Refusal(k, r, q, "not_prime")
    if q < k + 3:
        return Refusal(k, r, q, "q_below_k_plus_3")
    if r % q == 0:
        return Refusal(k, r, q, "q_divides_r")
    if count_roots_mod_q(reduce_bernoulli_mod_q(k, q), method, threshold):
        return Refusal(k, r, q, "has_root")
    return InertPrimeCert(k, r, q)


def _check_chunk(args):
    k, r, qs, method, threshold = args
    return [q for q in qs if is_inert_prime(k, r, q, method, threshold)]


def inert_primes(k, r, q_max, method="auto", threshold=DEFAULT_SCAN_THRESHOLD, workers=None):
    """All inert primes q <= q_max for (k, r), ascending."""
    if k < 2 or k % 2:
        raise ValueError("k must be even and at least 2")
    if q_max < k + 3:
        raise ValueError(f"q_max must be at least k + 3 = {k + 3}")
    qs = primes_between(k + 2, q_max)
    workers = workers or default_workers()
    if workers > 1 and len(qs) > 1:
        step = -(-len(qs) // (4 * workers))
        chunks = [(k, r, qs[i : i + step], method, threshold) for i in range(0, len(qs), step)]
        with ProcessPoolExecutor(workers) as ex:
            found = [q for part in ex.map(_check_chunk, chunks) for q in part]
    else:
        found = _check_chunk((k, r, qs, method, threshold))
    return [InertPrimeCert(k, r, q) for q in found]


@dataclass(frozen=True)
class InertDensity:
    inert_count: int
    prime_count: int
    fraction: Fraction


def inert_density(k, r, q_max, **kw):
    """Share of primes in (k + 2, q_max] that are inert for (k, r)."""
    certs = inert_primes(k, r, q_max, **kw)
    total = len(primes_between(k + 2, q_max))
    return InertDensity(len(certs), total, Fraction(len(certs), total))


def discriminant_primes(k, bound):
    """Primes <= bound dividing the numerator of disc(B_k)."""
    num = abs(discriminant(bernoulli_poly(k)).numerator)
    return [p for p in primes_between(1, bound) if num % p == 0]


def power_sum_congruence(k, r, d, a, q):
    """Both sides of sum_{j<d} (a + jr)^k == r^k d B_k(a/r) reduced mod q^2.

    Requires q >= k + 3 prime, q | d and q not dividing r.
    """
    if not is_prime(q) or q < k + 3:
        raise ValueError("q must be a prime >= k + 3")
    if d % q or r % q == 0:
        raise ValueError("need q | d and q not dividing r")
    m = q * q
    lhs = power_sum_direct(k, r, d, a) % m
    rhs = rational_mod(Fraction(r) ** k * d * poly_eval(bernoulli_poly(k), Fraction(a, r)), m)
    return lhs, rhs
