"""Brute-force search for x^k + (x+r)^k + ... + (x+(d-1)r)^k = y^n.

This is the independent oracle for the sieve: any d for which a solution is
found must never be excluded.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
import json

from .arith import integer_nth_root, primes_up_to
from .bernoulli import power_sum_direct
from .errors import VerificationError
from .modular import default_workers, inert_primes
from .sieve import exclude_d

_PRIME_EXPONENTS = primes_up_to(4096)


def _prime_exponents(limit):
    if limit > _PRIME_EXPONENTS[-1]:
        return primes_up_to(limit)
    return [p for p in _PRIME_EXPONENTS if p <= limit]


def as_perfect_power(N):
    """Return ``(y, n)`` with y**n == N and n the smallest prime that works, else None.

    Conventions: 0 -> (0, 2), 1 -> (1, 2), -1 -> (-1, 3); a negative N only
    admits odd n.
    """
    if N == 0 or N == 1:
        return (N, 2)
    if N == -1:
        return (-1, 3)
    a = abs(N)
    for n in _prime_exponents(a.bit_length()):
        if N < 0 and n == 2:
            continue
        y, exact = integer_nth_root(a, n)
        if exact:
            return (-y if N < 0 else y, n)
    return None


@dataclass(frozen=True)
class Solution:
    k: int
    r: int
    d: int
    x: int
    y: int
    n: int
    value: int

    def to_json(self):
        return json.dumps({f: str(getattr(self, f)) for f in ("k", "r", "d", "x", "y", "n", "value")})


def search_solutions(k, r, d, x_lo, x_hi):
    """Every x in [x_lo, x_hi] whose power sum is a perfect power, ascending in x.

    Moving from x - |r| to x shifts the window by one term, so sums are
    slid incrementally, one running sum per residue class of x mod |r|. The
    result is bit-identical to :func:`power_sum_direct`.
    """
    if r == 0:
        raise ValueError("r must be nonzero")
    if d < 2:
        raise ValueError("d must be at least 2")
    if x_lo > x_hi:
        raise ValueError("x_lo must not exceed x_hi")
    step = abs(r)
    running = {}
    out = []
    for x in range(x_lo, x_hi + 1):
        prev = x - step
        if prev in running:
            s = running.pop(prev)
            if r > 0:
                s += (x + (d - 1) * r) ** k - prev**k
            else:
                # r < 0: window for x is {x, x-|r|, ...}; prev's window is shifted down by |r|
                s += x**k - (prev + (d - 1) * r) ** k
        else:
            s = power_sum_direct(k, r, d, x)
        running[x] = s
        w = as_perfect_power(s)
        if w is not None:
            out.append(Solution(k, r, d, x, w[0], w[1], s))
    return out


def _search_d(args):
    k, r, d, x_lo, x_hi = args
    return search_solutions(k, r, d, x_lo, x_hi)


def search_many(k, r, ds, x_lo, x_hi, workers=None):
    """Solutions for each d in ``ds``; returns {d: [Solution, ...]} in d order."""
    ds = list(ds)
    workers = workers or default_workers()
    jobs = [(k, r, d, x_lo, x_hi) for d in ds]
    if workers > 1 and len(ds) > 1:
        with ProcessPoolExecutor(workers) as ex:
            results = list(ex.map(_search_d, jobs))
    else:
        results = [_search_d(j) for j in jobs]
    return dict(zip(ds, results))


@dataclass
class CrossValidation:
    k: int
    r: int
    X: int
    x_range: tuple
    q_max: int
    sieve_applied: bool
    solutions: dict
    verdicts: dict
    violations: list

    @property
    def solution_ds(self):
        return [d for d, sols in self.solutions.items() if sols]


def cross_validate(k, r, X, x_lo, x_hi, q_max, workers=None, **kw):
    """Search every 2 <= d <= X and check that no solution-bearing d is excluded.

    For odd k the sieve does not apply and is never called; only the search
    runs. Raises :class:`VerificationError` if any violation is found.
    """
    ds = range(2, X + 1)
    solutions = search_many(k, r, ds, x_lo, x_hi, workers)
    verdicts = {}
    violations = []
    sieve_applied = k % 2 == 0 and k >= 2
    if sieve_applied:
        certs = inert_primes(k, r, q_max, workers=workers, **kw) if q_max >= k + 3 else []
        for d in ds:
            v = exclude_d(k, r, d, certs)
            verdicts[d] = v
            if v.excluded_by is not None and solutions[d]:
                violations.append((d, v.excluded_by, solutions[d][0]))
    report = CrossValidation(k, r, X, (x_lo, x_hi), q_max, sieve_applied, solutions, verdicts, violations)
    if violations:
        raise VerificationError(
            "exclusion criterion vs brute-force search",
            f"{len(violations)} excluded d carry solutions, first {violations[0]}",
            detail=report,
        )
    return report
