"""Command-line front end.

Every number written by this tool is exact: integers are decimal strings and
rationals are ``{"num": ..., "den": ...}`` pairs. ``--approx`` adds a
truncated decimal rendering under an ``approx`` key for reading by eye.

Exit codes: 0 success, 1 a verification failed, 2 usage error.
"""

import argparse
import csv
import io
import json
import os
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import bernoulli as bn
from . import groups, modular, padic, search, sieve, smallgroups
from .errors import VerificationError


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    fmt: str = "text"
    out: str = None
    workers: int = 1
    threshold: int = modular.DEFAULT_SCAN_THRESHOLD
    approx: bool = False


def _rat(x, approx=False):
    x = Fraction(x)
    d = {"num": str(x.numerator), "den": str(x.denominator)}
    if approx:
        d["approx"] = decimal_str(x)
    return d


def decimal_str(x, digits=12):
    """Truncated decimal expansion of a rational, computed with integers only."""
    x = Fraction(x)
    sign = "-" if x < 0 else ""
    n, d = abs(x.numerator), x.denominator
    whole, rem = divmod(n, d)
    frac = (rem * 10**digits) // d
    return f"{sign}{whole}.{frac:0{digits}d}"


def _fmt_rat(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _require_even(k):
    if k < 2 or k % 2:
        raise UsageError("k must be even (the theorem assumes k >= 2 even)")


def _dump_json(obj):
    return json.dumps(obj, indent=1) + "\n"


def _csv(rows, header):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- subcommands: each returns the text to emit ----------------------------


def cmd_bernoulli(a, cfg):
    if a.poly:
        p = bn.bernoulli_poly(a.k)
        if cfg.fmt == "json":
            return _dump_json({"k": str(a.k), "coeffs": [_rat(c, cfg.approx) for c in p.coeffs]})
        if cfg.fmt == "csv":
            return _csv([[i, c.numerator, c.denominator] for i, c in enumerate(p.coeffs)], ["power", "num", "den"])
        return f"B_{a.k}(x) = {bn.format_poly(p)}\n"
    bs = bn.bernoulli_numbers(a.k)
    if cfg.fmt == "json":
        return _dump_json([{"m": str(m), "b": _rat(b, cfg.approx)} for m, b in enumerate(bs)])
    if cfg.fmt == "csv":
        return _csv([[m, b.numerator, b.denominator] for m, b in enumerate(bs)], ["m", "num", "den"])
    return "".join(f"b_{m} = {_fmt_rat(b)}\n" for m, b in enumerate(bs))


def identity_sweep(kmax, points, seed):
    """Run the classical identities for B_1..B_kmax; returns a list of (check, k, ok)."""
    rng = random.Random(seed)
    results = []
    for k in range(1, kmax + 1):
        B = bn.bernoulli_poly(k)
        xs = [Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6)) for _ in range(points)]
        sign = -1 if k % 2 else 1
        results.append(("symmetry B_k(1-x) = (-1)^k B_k(x)", k,
                        all(B(1 - x) == sign * B(x) for x in xs)))
        results.append(("difference B_k(x+1) - B_k(x) = k x^(k-1)", k,
                        all(B(x + 1) - B(x) == k * x ** (k - 1) for x in xs)))
        results.append(("derivative B_k' = k B_(k-1)", k,
                        bn.poly_derivative(B) == k * bn.bernoulli_poly(k - 1)))
        results.append(("squarefree gcd(B_k, B_k') = 1", k, bn.squarefree_witness(k).degree == 0))
        results.append(("denominator primes <= k+1", k, all(p <= k + 1 for p in bn.denominator_primes(B))))
        if k % 2 == 0:
            results.append(("Von Staudt-Clausen", k, bn.von_staudt_clausen_defect(k).denominator == 1))
    return results


def cmd_identities(a, cfg):
    results = identity_sweep(a.kmax, a.points, a.seed)
    failed = [(c, k) for c, k, ok in results if not ok]
    if cfg.fmt == "json":
        text = _dump_json({"kmax": str(a.kmax), "checks": [{"check": c, "k": str(k), "ok": ok} for c, k, ok in results]})
    elif cfg.fmt == "csv":
        text = _csv([[c, k, int(ok)] for c, k, ok in results], ["check", "k", "ok"])
    else:
        names = sorted({c for c, _, _ in results})
        text = "".join(f"{'PASS' if all(ok for c2, _, ok in results if c2 == c) else 'FAIL'} {c}\n" for c in names)
    if failed:
        c, k = failed[0]
        raise VerificationError(c, f"fails at k={k}", detail=text)
    return text


def _krange(a):
    if a.k is not None:
        _require_even(a.k)
        return [a.k]
    return list(range(2, a.kmax + 1, 2))


def _vertex_str(v):
    return f"({v[0]},{_fmt_rat(v[1])})"


def cmd_newton(a, cfg):
    reps = [padic.verify_np_lemma(k) for k in _krange(a)]
    if cfg.fmt == "json":
        return _dump_json([{
            "k": str(r.k), "s": str(r.s), "matches": r.matches, "degenerate": r.degenerate,
            "vertices": [[str(i), _rat(v)] for i, v in r.vertices],
            "slopes": [_rat(s, cfg.approx) for s in r.slopes]} for r in reps])
    if cfg.fmt == "csv":
        rows = [[r.k, r.s, int(r.matches), int(r.degenerate), " ".join(map(_vertex_str, r.vertices)),
                 " ".join(map(_fmt_rat, r.slopes))] for r in reps]
        return _csv(rows, ["k", "s", "matches", "degenerate", "vertices", "slopes"])
    out = []
    for r in reps:
        out.append(f"k={r.k} s={r.s} vertices {','.join(map(_vertex_str, r.vertices))} "
                   f"slopes {', '.join(map(_fmt_rat, r.slopes))}"
                   f"{' (degenerate)' if r.degenerate else ''} matches\n")
    return "".join(out)


def cmd_q2root(a, cfg):
    certs = [padic.no_q2_root_certificate(k) for k in _krange(a)]
    if cfg.fmt == "json":
        return _dump_json([{
            "k": str(c.k), "s": str(c.s),
            "root_valuations": [_rat(v) for v in c.root_valuations],
            "slope_integrality": c.slope_integrality,
            "f0_mod2": str(c.f0_mod2), "f1_mod2": str(c.f1_mod2),
            "residue_check": c.residue_check} for c in certs])
    if cfg.fmt == "csv":
        return _csv([[c.k, c.s, " ".join(map(_fmt_rat, c.root_valuations)), int(c.slope_integrality),
                      c.f0_mod2, c.f1_mod2, int(c.residue_check)] for c in certs],
                    ["k", "s", "root_valuations", "slope_integrality", "f0_mod2", "f1_mod2", "residue_check"])
    return "".join(f"k={c.k} root valuations {{{', '.join(map(_fmt_rat, c.root_valuations))}}} "
                   f"2B_k(0)=1, 2B_k(1)=1 mod 2: no root in Q_2\n" for c in certs)


def cmd_inert(a, cfg):
    _require_even(a.k)
    if a.qmax < a.k + 3:
        raise UsageError(f"--qmax must be at least k+3 = {a.k + 3}")
    certs = cached_inert_primes(a.k, a.r, a.qmax, cfg)
    total = len(modular.primes_between(a.k + 2, a.qmax))
    dens = modular.InertDensity(len(certs), total, Fraction(len(certs), total))
    if cfg.fmt == "json":
        return _dump_json({"k": str(a.k), "r": str(a.r), "q_max": str(a.qmax),
                           "inert_primes": [str(c.q) for c in certs],
                           "inert_count": str(dens.inert_count), "prime_count": str(dens.prime_count),
                           "fraction": _rat(dens.fraction, cfg.approx)})
    if cfg.fmt == "csv":
        return _csv([[c.q] for c in certs], ["q"]) + f"# fraction {dens.inert_count}/{dens.prime_count}\n"
    return (" ".join(str(c.q) for c in certs) + "\n"
            f"inert {dens.inert_count} of {dens.prime_count} primes in ({a.k + 2}, {a.qmax}]: "
            f"{_fmt_rat(dens.fraction)}\n")


def cached_inert_primes(k, r, q_max, cfg):
    """Inert primes, memoised on disk when BERNSIEVE_CACHE_DIR is set."""
    cache = os.environ.get("BERNSIEVE_CACHE_DIR")
    path = None
    if cache:
        path = os.path.join(cache, f"inert_k{k}_r{r}_q{q_max}.json")
        if os.path.exists(path):
            with open(path) as fh:
                return [modular.InertPrimeCert(k, r, int(q)) for q in json.load(fh)]
    certs = modular.inert_primes(k, r, q_max, threshold=cfg.threshold, workers=cfg.workers)
    if path:
        os.makedirs(cache, exist_ok=True)
        with open(path, "w") as fh:
            json.dump([str(c.q) for c in certs], fh)
    return certs


def _int_list(s):
    try:
        return [int(t) for t in s.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}") from None


def cmd_sieve(a, cfg):
    _require_even(a.k)
    if a.r == 0:
        raise UsageError("r must be nonzero")
    if a.X < 2:
        raise UsageError("--X must be at least 2")
    if a.series_qmax:
        xs = a.series_X or [a.X]
        pts = sieve.density_series(a.k, a.r, xs, a.series_qmax, threshold=cfg.threshold, workers=cfg.workers)
        if cfg.fmt == "json":
            return _dump_json([{"X": str(p.X), "q_max": str(p.q_max), "survivor_count": str(p.survivor_count),
                                "density_bound": _rat(p.density_bound, cfg.approx)} for p in pts])
        if cfg.fmt == "csv":
            return _csv([[p.X, p.q_max, p.survivor_count, p.density_bound.numerator, p.density_bound.denominator]
                         for p in pts], ["X", "q_max", "survivor_count", "num", "den"])
        return "".join(f"X={p.X} q_max={p.q_max} survivors={p.survivor_count} "
                       f"density_bound={_fmt_rat(p.density_bound)}\n" for p in pts)
    certs = cached_inert_primes(a.k, a.r, a.qmax, cfg) if a.qmax >= a.k + 3 else []
    rep = sieve.sieve_range(a.k, a.r, a.X, a.qmax, certs=certs)
    if cfg.fmt == "json":
        d = rep.to_dict(include_verdicts=not a.summary)
        if cfg.approx:
            d["density_bound"]["approx"] = decimal_str(rep.density_bound)
        return _dump_json(d)
    dens = rep.density_bound
    line = f"# density_bound {dens.numerator}/{dens.denominator} survivors {rep.survivor_count} X {rep.X}\n"
    if cfg.fmt == "csv":
        return (rep.to_csv() if not a.summary else "") + line
    return f"survivors {rep.survivor_count} of d in [2, {rep.X}], density_bound {_fmt_rat(dens)}\n"


def cmd_search(a, cfg):
    if a.r == 0:
        raise UsageError("r must be nonzero")
    if a.d < 2 or a.xlo > a.xhi:
        raise UsageError("need d >= 2 and xlo <= xhi")
    sols = search.search_solutions(a.k, a.r, a.d, a.xlo, a.xhi)
    if cfg.fmt == "csv":
        return _csv([[s.k, s.r, s.d, s.x, s.y, s.n, s.value] for s in sols], ["k", "r", "d", "x", "y", "n", "value"])
    return "".join(s.to_json() + "\n" for s in sols)


def cmd_crossval(a, cfg):
    if a.r == 0:
        raise UsageError("r must be nonzero")
    rep = search.cross_validate(a.k, a.r, a.X, a.xlo, a.xhi, a.qmax, workers=cfg.workers, threshold=cfg.threshold)
    rows = []
    for d in range(2, a.X + 1):
        v = rep.verdicts.get(d)
        rows.append((d, len(rep.solutions[d]), "n/a" if v is None else v.status,
                     "" if v is None or v.excluded_by is None else v.excluded_by))
    if cfg.fmt == "json":
        return _dump_json({"k": str(a.k), "r": str(a.r), "X": str(a.X), "sieve_applied": rep.sieve_applied,
                           "violations": [], "rows": [{"d": str(d), "solutions": str(n), "status": st,
                                                       "excluding_q": str(q) if q != "" else None}
                                                      for d, n, st, q in rows]})
    if cfg.fmt == "csv":
        return _csv(rows, ["d", "solutions", "status", "excluding_q"])
    note = "" if rep.sieve_applied else " (odd k: sieve not applied)"
    return (f"solution-bearing d: {' '.join(map(str, rep.solution_ds))}\n"
            f"violations: 0{note}\n")


def cmd_grouplemma(a, cfg):
    if a.instances:
        with open(a.instances) as fh:
            pairs = groups.parse_instances(fh.read())
        names = [f"instance{i + 1}" for i in range(len(pairs))]
    else:
        names, pairs = [], []
        for name, G in smallgroups.regular_instances(a.max_order):
            for pi in groups.cyclic_quotients(G):
                names.append(f"{name}->Z/{pi.m}")
                pairs.append((G, pi))
    if a.emit:
        return groups.format_instances(pairs)
    rep = groups.verify_lemma_sweep(pairs)
    rows = [(n, G.order, pi.m, groups.to_cycles(mu), pi(mu)) for n, (G, pi), mu in zip(names, pairs, rep.witnesses)]
    if cfg.fmt == "json":
        return _dump_json({"instances": str(rep.instances),
                           "witnesses": [{"instance": n, "order": str(o), "m": str(m), "mu": c, "pi_mu": str(p)}
                                         for n, o, m, c, p in rows]})
    if cfg.fmt == "csv":
        return _csv(rows, ["instance", "order", "m", "mu", "pi_mu"])
    return f"free element found for all {rep.instances} instances\n"


# -- parser -----------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default="text")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--workers", type=int, default=None,
                        help="process pool width (default: $BERNSIEVE_WORKERS or 1)")
    common.add_argument("--threshold", type=int, default=modular.DEFAULT_SCAN_THRESHOLD,
                        help="primes below this use exhaustive root scans, above it the gcd method")
    common.add_argument("--approx", action="store_true", help="append truncated decimals (JSON only)")

    p = argparse.ArgumentParser(prog="bernsieve", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="subcommand", required=True)

    s = sub.add_parser("bernoulli", parents=[common], help="Bernoulli numbers or polynomials")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--poly", action="store_true", help="print B_k(x) instead of b_0..b_k")
    s.set_defaults(func=cmd_bernoulli)

    s = sub.add_parser("identities", parents=[common], help="identity sweep over B_1..B_kmax")
    s.add_argument("--kmax", type=int, default=50)
    s.add_argument("--points", type=int, default=20)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_identities)

    for name, fn, hlp in (("newton", cmd_newton, "2-adic Newton polygon of B_k"),
                          ("q2root", cmd_q2root, "certificate that B_k has no root in Q_2")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        g = s.add_mutually_exclusive_group(required=True)
        g.add_argument("--k", type=int)
        g.add_argument("--kmax", type=int)
        s.set_defaults(func=fn)

    s = sub.add_parser("inert", parents=[common], help="inert primes for (k, r) and their share")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--r", type=int, default=1)
    s.add_argument("--qmax", type=int, required=True)
    s.set_defaults(func=cmd_inert)

    s = sub.add_parser("sieve", parents=[common], help="exclusion sieve over 2 <= d <= X")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--r", type=int, default=1)
    s.add_argument("--X", type=int, default=10**4)
    s.add_argument("--qmax", type=int, default=10**3)
    s.add_argument("--series-X", type=_int_list, default=None, help="comma-separated X bounds")
    s.add_argument("--series-qmax", type=_int_list, default=None, help="comma-separated q_max bounds")
    s.add_argument("--summary", action="store_true", help="omit per-d verdicts")
    s.set_defaults(func=cmd_sieve)

    s = sub.add_parser("search", parents=[common], help="brute-force solutions for one d (JSON lines)")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--r", type=int, default=1)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--xlo", type=int, default=-100)
    s.add_argument("--xhi", type=int, default=100)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("crossval", parents=[common], help="check the sieve never excludes a solved d")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--r", type=int, default=1)
    s.add_argument("--X", type=int, default=50)
    s.add_argument("--xlo", type=int, default=-200)
    s.add_argument("--xhi", type=int, default=200)
    s.add_argument("--qmax", type=int, default=10**3)
    s.set_defaults(func=cmd_crossval)

    s = sub.add_parser("grouplemma", parents=[common], help="free-element lemma on permutation groups")
    s.add_argument("--instances", help="instance file (see groups.py for the format)")
    s.add_argument("--max-order", type=int, default=16)
    s.add_argument("--emit", action="store_true", help="print the instances instead of checking them")
    s.set_defaults(func=cmd_grouplemma)
    return p


def run(argv=None):
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    cfg = RunConfig(a.subcommand, a.fmt, a.out, a.workers or modular.default_workers(), a.threshold, a.approx)
    try:
        text = a.func(a, cfg)
    except UsageError as e:
        print(f"bernsieve {a.subcommand}: {e}", file=sys.stderr)
        return 2
    except VerificationError as e:
        print(f"bernsieve {a.subcommand}: verification failed: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"bernsieve {a.subcommand}: {e}", file=sys.stderr)
        return 2
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
