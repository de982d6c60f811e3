"""Bernoulli numbers and polynomials over the rationals.

Polynomials are dense, low-degree-first tuples of :class:`Fraction`.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb
import threading

from .arith import is_prime, divisors


@dataclass(frozen=True)
class RatPoly:
    """Dense polynomial with rational coefficients; ``coeffs[i]`` multiplies x**i."""

    coeffs: tuple = ()

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def constant(cls, c):
        return cls((c,))

    @classmethod
    def x(cls):
        return cls((0, 1))

    @property
    def degree(self):
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __call__(self, x):
        return poly_eval(self, x)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RatPoly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return RatPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPoly(tuple(out))

    __rmul__ = __mul__

    def __divmod__(self, other):
        return poly_divmod(self, other)

    def __mod__(self, other):
        return poly_divmod(self, other)[1]

    def monic(self):
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        return RatPoly(tuple(c / lc for c in self.coeffs))

    def __repr__(self):
        return f"RatPoly({format_poly(self)})"


def _as_poly(p):
    return p if isinstance(p, RatPoly) else RatPoly.constant(p)


def format_poly(p, var="x"):
    """Human-readable rendering, highest degree first."""
    if not p.coeffs:
        return "0"
    terms = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def poly_eval(p, x):
    """Exact Horner evaluation at a rational point."""
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def poly_derivative(p):
    return RatPoly(tuple(i * c for i, c in enumerate(p.coeffs))[1:])


def poly_divmod(a, b):
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a.coeffs)
    db = b.degree
    lc = b.leading
    if a.degree < db:
        return RatPoly(), a
    quot = [Fraction(0)] * (a.degree - db + 1)
    for i in range(a.degree - db, -1, -1):
        c = rem[i + db] / lc
        quot[i] = c
        if c:
            for j, bc in enumerate(b.coeffs):
                rem[i + j] -= c * bc
    return RatPoly(tuple(quot)), RatPoly(tuple(rem[:db]))


def poly_gcd(a, b):
    """Monic gcd via the Euclidean algorithm, normalising to monic each step."""
    a, b = a.monic(), b.monic()
    while b:
        a, b = b, (a % b).monic()
    return a


def resultant(f, g):
    """Resultant of two rational polynomials by the Euclidean recursion."""
    if f.is_zero() or g.is_zero():
        return Fraction(0)
    sign = 1
    acc = Fraction(1)
    while True:
        m, n = f.degree, g.degree
        if n == 0:
            return sign * acc * g.leading**m
        if m < n:
            f, g = g, f
            if m * n % 2:
                sign = -sign
            continue
        r = f % g
        if r.is_zero():
            return Fraction(0)
        # res(f, g) = (-1)^(mn) lc(g)^(m - deg r) res(g, r)
        if m * n % 2:
            sign = -sign
        acc *= g.leading ** (m - r.degree)
        f, g = g, r


def discriminant(f):
    n = f.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    res = resultant(f, poly_derivative(f))
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * res / f.leading


# -- Bernoulli numbers ------------------------------------------------------

_bern_cache = [Fraction(1)]
_bern_lock = threading.Lock()


def bernoulli_number(m):
    """b_m with the convention b_1 = -1/2.

    Uses sum_{j=0}^{m} C(m+1, j) b_j = 0, memoised. Readers never see a
    partially extended cache because appends happen under the lock.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    if m < len(_bern_cache):
        return _bern_cache[m]
    with _bern_lock:
        for n in range(len(_bern_cache), m + 1):
            if n > 1 and n % 2:
                _bern_cache.append(Fraction(0))
                continue
            s = sum(comb(n + 1, j) * _bern_cache[j] for j in range(n) if _bern_cache[j])
            _bern_cache.append(-s / (n + 1))
    return _bern_cache[m]


def bernoulli_numbers(m):
    """[b_0, ..., b_m]."""
    bernoulli_number(m)
    return list(_bern_cache[: m + 1])


_poly_cache = {}


def bernoulli_poly(k):
    """B_k(x) = sum_m C(k, m) b_m x^(k - m)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    p = _poly_cache.get(k)
    if p is None:
        bs = bernoulli_numbers(k)
        coeffs = [Fraction(0)] * (k + 1)
        for m in range(k + 1):
            coeffs[k - m] = comb(k, m) * bs[m]
        p = _poly_cache.setdefault(k, RatPoly(tuple(coeffs)))
    return p


# -- Power sums -------------------------------------------------------------


def power_sum_direct(k, r, d, x):
    """x^k + (x+r)^k + ... + (x+(d-1)r)^k by literal summation."""
    if r == 0:
        raise ValueError("r must be nonzero")
    if d < 1:
        raise ValueError("d must be at least 1")
    return sum((x + j * r) ** k for j in range(d))


def power_sum_bernoulli(k, r, d, x):
    """The same power sum through r^k/(k+1) * (B_{k+1}(x/r + d) - B_{k+1}(x/r)).

    Raises :class:`ArithmeticError` if the result is not an integer, which
    would mean the polynomial machinery is wrong.
    """
    if r == 0:
        raise ValueError("r must be nonzero")
    if d < 1:
        raise ValueError("d must be at least 1")
    if k < 1:
        raise ValueError("k must be at least 1")
    B = bernoulli_poly(k + 1)
    t = Fraction(x, r)
    val = Fraction(r) ** k / (k + 1) * (poly_eval(B, t + d) - poly_eval(B, t))
    if val.denominator != 1:
        raise ArithmeticError(f"power sum came out non-integral: {val}")
    return val


def von_staudt_clausen_primes(k):
    """Primes p with (p - 1) | k."""
    return [e + 1 for e in divisors(k) if is_prime(e + 1)]


def von_staudt_clausen_defect(k):
    """b_k + sum_{(p-1) | k} 1/p, which should be an integer for even k >= 2."""
    if k < 2 or k % 2:
        raise ValueError("k must be even and at least 2")
    return bernoulli_number(k) + sum(Fraction(1, p) for p in von_staudt_clausen_primes(k))


def squarefree_witness(k):
    """gcd(B_k, B_k') over Q; a nonzero constant when B_k is squarefree."""
    if k < 1:
        raise ValueError("k must be at least 1")
    B = bernoulli_poly(k)
    return poly_gcd(B, poly_derivative(B))


def denominator_primes(p):
    """Primes dividing the denominator of some coefficient of p."""
    out = set()
    for c in p.coeffs:
        d = c.denominator
        q = 2
        while d > 1:
            while d % q == 0:
                out.add(q)
                d //= q
            q += 1
    return sorted(out)
