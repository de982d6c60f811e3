"""Exact integer and rational arithmetic shared by the rest of the package.

Rationals are :class:`fractions.Fraction` values, which are always stored in
lowest terms with a positive denominator, so ``==`` is structural equality.
Nothing in here touches floating point.
"""

from fractions import Fraction
from math import comb, gcd, isqrt
import operator

Rational = Fraction

_OPS = {
    "+": operator.add,
    "-": operator.sub,
    "*": operator.mul,
    "/": operator.truediv,
}


def rat(num, den=1):
    """Build a reduced rational; ``den`` may be negative but not zero."""
    return Fraction(num, den)


def rat_arith(a, b, op):
    """Apply one of ``+ - * /`` to two rationals exactly.

    Division by zero raises :class:`ZeroDivisionError`.
    """
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operator {op!r}") from None
    return fn(Fraction(a), Fraction(b))


def binomial(n, r):
    """C(n, r) with the convention C(n, r) = 0 for r < 0 or r > n."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if r < 0 or r > n:
        return 0
    return comb(n, r)


# Deterministic Miller-Rabin: these bases are exact below 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3317044064679887385961981
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_prime(n):
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n >= _MR_LIMIT:
        raise ValueError("primality is only certified below 3.3e24")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(N):
    """All primes <= N in ascending order (sieve of Eratosthenes)."""
    if N < 2:
        return []
    flags = bytearray([1]) * (N + 1)
    flags[0] = flags[1] = 0
    for p in range(2, isqrt(N) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, N + 1, p)))
    return [i for i, f in enumerate(flags) if f]


def primes_between(lo, hi):
    """Primes p with lo < p <= hi."""
    return [p for p in primes_up_to(hi) if p > lo]


def _require_prime(p):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def binom_mod_p_lucas(u, v, p):
    """C(u, v) mod p, digit by digit in base p (Lucas / Kummer)."""
    _require_prime(p)
    if u < 0 or v < 0:
        raise ValueError("u and v must be non-negative")
    result = 1
    while u or v:
        u, u0 = divmod(u, p)
        v, v0 = divmod(v, p)
        if v0 > u0:
            return 0
        result = result * comb(u0, v0) % p
    return result % p


def integer_nth_root(N, n):
    """Return ``(floor(N ** (1/n)), exact)`` using integer Newton iteration.

    The starting guess comes from the bit length and always lies above the
    true root, so the iteration decreases monotonically onto the floor.
    """
    if N < 0:
        raise ValueError("N must be non-negative")
    if n < 2:
        raise ValueError("n must be at least 2")
    if N < 2:
        return N, True
    if n == 2:
        x = isqrt(N)
        return x, x * x == N
    if n >= N.bit_length():
        # 2**n > N, so the root is 1.
        return 1, N == 1
    x = 1 << -(-N.bit_length() // n)
    while True:
        y = ((n - 1) * x + N // x ** (n - 1)) // n
        if y >= x:
            break
        x = y
    return x, x**n == N


def valuation_int(n, p):
    """Exponent of p in a nonzero integer n."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def rational_mod(x, m):
    """Image of a rational in Z/m; the denominator must be a unit mod m."""
    x = Fraction(x)
    if gcd(x.denominator, m) != 1:
        raise ZeroDivisionError(f"denominator {x.denominator} is not invertible mod {m}")
    return x.numerator * pow(x.denominator, -1, m) % m


def euler_phi(m):
    result, n, p = m, m, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def divisors(n):
    small, large = [], []
    for i in range(1, isqrt(n) + 1):
        if n % i == 0:
            small.append(i)
            if i != n // i:
                large.append(n // i)
    return small + large[::-1]
