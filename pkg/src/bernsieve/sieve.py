"""Exclusion of d values by inert primes, and density bookkeeping.

For even k, a certified inert prime q excludes every d with v_q(d) = 1. The
range sieve marks, for each d <= X, the smallest such certified q.
"""

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .modular import inert_primes


def _require_even(k):
    if k < 2 or k % 2:
        raise ValueError("k must be even (the exclusion criterion needs even k >= 2)")


def ord_q(d, q):
    """v_q(d) by repeated division."""
    v = 0
    while d % q == 0:
        d //= q
        v += 1
    return v


@dataclass(frozen=True)
class SieveVerdict:
    d: int
    excluded_by: int = None

    @property
    def status(self):
        return "survivor" if self.excluded_by is None else "excluded"


def exclude_d(k, r, d, certs):
    """Verdict for one d: excluded by the smallest certified q with v_q(d) = 1."""
    _require_even(k)
    if d < 2:
        raise ValueError("d must be at least 2")
    for c in sorted(certs, key=lambda c: c.q):
        if (c.k, c.r) != (k, r):
            raise ValueError(f"certificate {c} is not for (k, r) = ({k}, {r})")
        if d % c.q == 0 and ord_q(d, c.q) == 1:
            return SieveVerdict(d, c.q)
    return SieveVerdict(d)


def mark_exclusions(X, qs):
    """Array ``e`` with e[d] = smallest q in qs with v_q(d) = 1, else 0."""
    e = np.zeros(X + 1, dtype=np.int64)
    for q in sorted(qs):
        ds = np.arange(q, X + 1, q, dtype=np.int64)
        ds = ds[(ds // q) % q != 0]
        ds = ds[e[ds] == 0]
        e[ds] = q
    return e


@dataclass
class SieveReport:
    k: int
    r: int
    X: int
    q_max: int
    certificate_primes: tuple
    excluded_by: np.ndarray  # index d; 0 means survivor; entries 0 and 1 unused

    @property
    def survivor_count(self):
        return int(np.count_nonzero(self.excluded_by[2:] == 0))

    @property
    def density_bound(self):
        return Fraction(self.survivor_count, self.X)

    def verdict(self, d):
        q = int(self.excluded_by[d])
        return SieveVerdict(d, q or None)

    def verdicts(self):
        return [self.verdict(d) for d in range(2, self.X + 1)]

    def survivors(self):
        return [int(d) + 2 for d in np.flatnonzero(self.excluded_by[2:] == 0)]

    def to_dict(self, include_verdicts=True):
        out = {
            "k": str(self.k),
            "r": str(self.r),
            "X": str(self.X),
            "q_max": str(self.q_max),
            "certificate_primes": [str(q) for q in self.certificate_primes],
            "survivor_count": str(self.survivor_count),
            "density_bound": _rat_json(self.density_bound),
        }
        if include_verdicts:
            out["verdicts"] = [
                {"d": str(v.d), "status": v.status, "excluding_q": _opt(v.excluded_by)}
                for v in self.verdicts()
            ]
        return out

    def to_json(self, include_verdicts=True):
        return json.dumps(self.to_dict(include_verdicts), indent=1) + "\n"

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["d", "status", "excluding_q"])
        for d in range(2, self.X + 1):
            q = int(self.excluded_by[d])
            w.writerow([d, "excluded" if q else "survivor", q or ""])
        return buf.getvalue()


def _rat_json(x):
    return {"num": str(x.numerator), "den": str(x.denominator)}


def _opt(q):
    return None if q is None else str(q)


def sieve_range(k, r, X, q_max, certs=None, **kw):
    """Run the exclusion sieve over 2 <= d <= X."""
    _require_even(k)
    if X < 2:
        raise ValueError("X must be at least 2")
    if certs is None:
        certs = inert_primes(k, r, q_max, **kw) if q_max >= k + 3 else []
    qs = tuple(sorted(c.q for c in certs if c.q <= q_max))
    return SieveReport(k, r, X, q_max, qs, mark_exclusions(X, qs))


@dataclass(frozen=True)
class DensityPoint:
    X: int
    q_max: int
    survivor_count: int
    density_bound: Fraction


def density_series(k, r, X_list, q_max_list, **kw):
    """Density bounds for every (X, q_max) pair, X outer, q_max inner.

    Certificates are computed once at the largest q_max; since each d records
    its smallest excluding prime, restricting to q <= q_max is a threshold.
    """
    _require_even(k)
    if not X_list or not q_max_list:
        raise ValueError("X_list and q_max_list must be nonempty")
    if list(X_list) != sorted(set(X_list)) or list(q_max_list) != sorted(set(q_max_list)):
        raise ValueError("bounds must be strictly increasing")
    top = max(q_max_list)
    certs = inert_primes(k, r, top, **kw) if top >= k + 3 else []
    qs = [c.q for c in certs]
    out = []
    for X in X_list:
        e = mark_exclusions(X, qs)[2:]
        for qm in q_max_list:
            surv = int(np.count_nonzero((e == 0) | (e > qm)))
            out.append(DensityPoint(X, qm, surv, Fraction(surv, X)))
    return out


def aq_slice(members, q):
    """The d in ``members`` with v_q(d) = 1, ascending."""
    return sorted(d for d in members if d % q == 0 and ord_q(d, q) == 1)
