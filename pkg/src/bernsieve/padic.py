"""p-adic valuations and Newton polygons, plus the 2-adic facts about B_k.

Polygon coordinates are ``(i, v_p(a_i))`` for the coefficient ``a_i`` of
``x**i``; we take the lower convex hull and a segment of slope ``m`` and
horizontal length ``L`` accounts for ``L`` roots of valuation ``-m``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering

from .arith import is_prime, valuation_int
from .bernoulli import RatPoly, bernoulli_poly, poly_eval
from .errors import VerificationError


@total_ordering
class _Infinity:
    """The valuation of 0. Compares above every integer and rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("+Infinity")

    def __repr__(self):
        return "+Infinity"


INF = _Infinity()


def valuation(x, p):
    """v_p(x) for a rational x, or :data:`INF` when x == 0."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    x = Fraction(x)
    if x == 0:
        return INF
    return valuation_int(x.numerator, p) - valuation_int(x.denominator, p)


@dataclass(frozen=True)
class Segment:
    start: tuple
    end: tuple
    slope: Fraction

    @property
    def length(self):
        return self.end[0] - self.start[0]


@dataclass(frozen=True)
class NewtonPolygon:
    p: int
    vertices: tuple

    @property
    def segments(self):
        out = []
        for a, b in zip(self.vertices, self.vertices[1:]):
            out.append(Segment(a, b, Fraction(b[1] - a[1], b[0] - a[0])))
        return tuple(out)

    @property
    def slopes(self):
        return tuple(s.slope for s in self.segments)

    def root_valuations(self):
        """Map root valuation -> number of roots (with multiplicity)."""
        return {-s.slope: s.length for s in self.segments}


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points):
    """Lower convex hull of points sorted by x; collinear interior points dropped."""
    hull = []
    for pt in sorted(points):
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    return hull


def newton_polygon(f, p):
    if f.is_zero():
        raise ValueError("the zero polynomial has no Newton polygon")
    pts = [(i, Fraction(valuation(c, p))) for i, c in enumerate(f.coeffs) if c != 0]
    return NewtonPolygon(p, tuple(lower_hull(pts)))


# -- The 2-adic polygon of B_k ---------------------------------------------


def two_adic_order(k):
    s = 0
    while k % 2 == 0:
        k //= 2
        s += 1
    return s


@dataclass(frozen=True)
class TwoAdicShape:
    """Expected 2-adic polygon of B_k for even k = 2**s * t."""

    k: int
    s: int = field(init=False)
    vertices: tuple = field(init=False)

    def __post_init__(self):
        if self.k < 2 or self.k % 2:
            raise ValueError("k must be even and at least 2")
        s = two_adic_order(self.k)
        object.__setattr__(self, "s", s)
        mid = self.k - 2**s
        verts = [(0, Fraction(-1))]
        if mid > 0:
            verts.append((mid, Fraction(-1)))
        verts.append((self.k, Fraction(0)))
        object.__setattr__(self, "vertices", tuple(verts))

    @property
    def degenerate(self):
        """True when k is a power of two and the horizontal piece has length 0."""
        return self.k == 2**self.s


@dataclass(frozen=True)
class NPLemmaReport:
    k: int
    s: int
    matches: bool
    degenerate: bool
    vertices: tuple
    slopes: tuple


def verify_np_lemma(k):
    """Compare the computed 2-adic polygon of B_k with the predicted shape.

    Raises :class:`VerificationError` naming the first vertex that differs.
    """
    shape = TwoAdicShape(k)
    np_ = newton_polygon(bernoulli_poly(k), 2)
    got, want = np_.vertices, shape.vertices
    for i in range(max(len(got), len(want))):
        g = got[i] if i < len(got) else None
        w = want[i] if i < len(want) else None
        if g != w:
            raise VerificationError(
                "2-adic Newton polygon of B_k",
                f"k={k}: vertex {i} is {g}, expected {w}",
                detail={"k": k, "index": i, "got": g, "expected": w},
            )
    return NPLemmaReport(k, shape.s, True, shape.degenerate, got, np_.slopes)


@dataclass(frozen=True)
class Q2RootCertificate:
    """Evidence that B_k has no root in Q_2.

    ``root_valuations``: valuations the polygon allows; the integral ones
    must be at most ``{0}`` (empty when k is a power of two). ``f0_mod2`` and
    ``f1_mod2`` are 2*B_k at 0 and 1 reduced mod 2; both must be 1.
    """

    k: int
    s: int
    root_valuations: tuple
    integral_valuations: tuple
    min_coeff_valuation: int
    f0_mod2: int
    f1_mod2: int

    @property
    def slope_integrality(self):
        return set(self.integral_valuations) <= {0}

    @property
    def residue_check(self):
        return self.min_coeff_valuation >= 0 and self.f0_mod2 == 1 and self.f1_mod2 == 1

    @property
    def valid(self):
        return self.slope_integrality and self.residue_check


def _mod2(x):
    # x is 2-integral: odd denominator, so x = num/den == num (mod 2)
    return x.numerator % 2


def no_q2_root_certificate(k):
    """Rebuild the argument that B_k (k even) has no 2-adic root.

    Raises :class:`VerificationError` if either half of the evidence fails.
    """
    shape = TwoAdicShape(k)
    B = bernoulli_poly(k)
    np_ = newton_polygon(B, 2)
    vals = tuple(sorted(np_.root_valuations()))
    integral = tuple(v for v in vals if v.denominator == 1)
    f = RatPoly(tuple(2 * c for c in B.coeffs))
    min_v = min(valuation(c, 2) for c in f.coeffs if c)
    if min_v < 0:
        raise VerificationError(
            "no Q_2 roots of B_k", f"k={k}: 2*B_k has a coefficient of valuation {min_v}"
        )
    cert = Q2RootCertificate(
        k=k,
        s=shape.s,
        root_valuations=vals,
        integral_valuations=integral,
        min_coeff_valuation=min_v,
        f0_mod2=_mod2(poly_eval(f, 0)),
        f1_mod2=_mod2(poly_eval(f, 1)),
    )
    if not cert.slope_integrality:
        raise VerificationError(
            "no Q_2 roots of B_k", f"k={k}: integral root valuations {integral}, expected only 0"
        )
    if not cert.residue_check:
        raise VerificationError(
            "no Q_2 roots of B_k",
            f"k={k}: 2*B_k mod 2 gives f(0)={cert.f0_mod2}, f(1)={cert.f1_mod2}",
        )
    return cert
