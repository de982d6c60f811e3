"""Finite permutation groups and a brute-force check of the free-element lemma.

Setting: H acts transitively on n >= 2 points, the stabilizers of points 1
and 2 coincide, and pi maps H onto Z/m. Then some element of H has no fixed
point and maps to a generator of Z/m. :func:`find_mu` searches for one.

Permutations are tuples of 0-based images; user-facing points are 1-based.
Products compose right to left: ``mul(g, h)(x) == g(h(x))``.
"""

from collections import deque
from dataclasses import dataclass
from itertools import product
from math import gcd
import re

from .arith import euler_phi
from .errors import VerificationError

DEFAULT_MAX_ELEMENTS = 10**5


def mul(g, h):
    return tuple(g[i] for i in h)


def inverse(g):
    out = [0] * len(g)
    for i, j in enumerate(g):
        out[j] = i
    return tuple(out)


def identity(n):
    return tuple(range(n))


def fixed_points(g):
    return [i + 1 for i, j in enumerate(g) if i == j]


def perm_order(g):
    n, e, h = 1, identity(len(g)), g
    while h != e:
        h = mul(g, h)
        n += 1
    return n


def from_cycles(text, degree):
    """Parse cycle notation such as ``(1 2 3)(4 5)`` into a permutation of {1..degree}."""
    img = list(range(degree))
    text = text.strip()
    if text in ("", "()", "e", "id"):
        return tuple(img)
    cycles = re.findall(r"\(([^()]*)\)", text)
    if re.sub(r"\([^()]*\)", "", text).strip():
        raise ValueError(f"bad cycle notation: {text!r}")
    seen = set()
    for cyc in cycles:
        pts = [int(t) for t in re.split(r"[\s,]+", cyc.strip()) if t]
        for p in pts:
            if not 1 <= p <= degree:
                raise ValueError(f"point {p} outside 1..{degree}")
            if p in seen:
                raise ValueError(f"point {p} repeated in {text!r}")
            seen.add(p)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a - 1] = b - 1
    return tuple(img)


def to_cycles(g):
    seen, parts = set(), []
    for start in range(len(g)):
        if start in seen or g[start] == start:
            continue
        cyc, i = [], start
        while i not in seen:
            seen.add(i)
            cyc.append(str(i + 1))
            i = g[i]
        parts.append("(" + " ".join(cyc) + ")")
    return "".join(parts) or "()"


class PermGroup:
    """A permutation group given by generators, with its elements enumerated.

    Elements are listed in breadth-first order from the identity, multiplying
    by generators on the left. ``_tree`` records, for every non-identity
    element, the generator index and predecessor that produced it.
    """

    def __init__(self, degree, generators, max_elements=DEFAULT_MAX_ELEMENTS):
        self.degree = degree
        self.generators = tuple(tuple(g) for g in generators)
        for g in self.generators:
            if sorted(g) != list(range(degree)):
                raise ValueError(f"{g} is not a permutation of {degree} points")
        e = identity(degree)
        self.identity = e
        elements, tree = [e], {e: None}
        queue = deque([e])
        while queue:
            x = queue.popleft()
            for gi, g in enumerate(self.generators):
                y = mul(g, x)
                if y not in tree:
                    if len(elements) >= max_elements:
                        raise OverflowError(f"group exceeds {max_elements} elements")
                    tree[y] = (gi, x)
                    elements.append(y)
                    queue.append(y)
        self.elements = tuple(elements)
        self._tree = tree
        self._index = {g: i for i, g in enumerate(elements)}

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return tuple(g) in self._index

    def index(self, g):
        return self._index[g]

    def orbit(self, point):
        seen, queue = {point - 1}, deque([point - 1])
        while queue:
            i = queue.popleft()
            for g in self.generators:
                j = g[i]
                if j not in seen:
                    seen.add(j)
                    queue.append(j)
        return sorted(i + 1 for i in seen)

    def is_transitive(self):
        return self.degree == 0 or len(self.orbit(1)) == self.degree

    def __repr__(self):
        gens = ", ".join(to_cycles(g) for g in self.generators)
        return f"PermGroup(degree={self.degree}, order={self.order}, gens=[{gens}])"


def stabilizer(G, point):
    """Elements fixing ``point`` (1-based), in enumeration order."""
    if not 1 <= point <= G.degree:
        raise ValueError(f"point must lie in 1..{G.degree}")
    i = point - 1
    return [g for g in G.elements if g[i] == i]


@dataclass
class CyclicMap:
    """A homomorphism from ``group`` to Z/m, stored on every element."""

    group: PermGroup
    m: int
    image: dict

    @classmethod
    def from_generator_images(cls, G, images, m):
        """Extend generator images to all of G and check it is a homomorphism.

        Raises ValueError if the images do not define a homomorphism.
        """
        if m < 1:
            raise ValueError("m must be positive")
        if len(images) != len(G.generators):
            raise ValueError("need one image per generator")
        images = [x % m for x in images]
        img = {}
        for x in G.elements:
            t = G._tree[x]
            img[x] = 0 if t is None else (images[t[0]] + img[t[1]]) % m
        pi = cls(G, m, img)
        if not pi.is_homomorphism(full=G.order <= 1000):
            raise ValueError(f"generator images {images} do not define a homomorphism to Z/{m}")
        return pi

    def __call__(self, g):
        return self.image[g]

    def is_homomorphism(self, full=True):
        """Check image(gh) = image(g) + image(h).

        With ``full=False`` only products by generators are checked, which
        already forces the multiplicative property on the whole group.
        """
        G, img, m = self.group, self.image, self.m
        lefts = G.elements if full else G.generators
        for g in lefts:
            a = img[g]
            for h in G.elements:
                if img[mul(g, h)] != (a + img[h]) % m:
                    return False
        return True

    def is_surjective(self):
        return gcd(self.m, *self.image.values()) == 1 if self.m > 1 else True

    def generator_images(self):
        return [self.image[g] for g in self.group.generators]


def cyclic_quotients(G, moduli=None):
    """All surjective homomorphisms G -> Z/m, for each m dividing |G| (or in ``moduli``)."""
    n = G.order
    ms = moduli or [m for m in range(1, n + 1) if n % m == 0]
    gen_orders = [perm_order(g) for g in G.generators]
    out = []
    for m in ms:
        choices = [[a for a in range(m) if a * o % m == 0] for o in gen_orders]
        for imgs in product(*choices):
            if m > 1 and gcd(m, *imgs) != 1:
                continue
            try:
                out.append(CyclicMap.from_generator_images(G, list(imgs), m))
            except ValueError:
                continue
    return out


def find_mu(G, pi):
    """First element (enumeration order) with no fixed point and pi(mu) generating Z/m.

    Raises ValueError naming the violated hypothesis, or VerificationError if
    an exhaustive search finds nothing.
    """
    if G.degree < 2:
        raise ValueError("hypothesis failed: need at least two points")
    if not G.is_transitive():
        raise ValueError("hypothesis failed: action is not transitive")
    if stabilizer(G, 1) != stabilizer(G, 2):
        raise ValueError("hypothesis failed: stabilizers of points 1 and 2 differ")
    if pi.group is not G:
        raise ValueError("hypothesis failed: pi is defined on a different group")
    if not pi.is_surjective():
        raise ValueError("hypothesis failed: pi is not surjective")
    for g in G.elements:
        if gcd(pi(g), pi.m) == 1 and all(g[i] != i for i in range(G.degree)):
            return g
    raise VerificationError(
        "free element lemma",
        f"no fixed-point-free element maps to a generator of Z/{pi.m}",
        detail=format_instance(G, pi),
    )


def check_orbit_stabilizer(G):
    return all(len(G.orbit(p)) * len(stabilizer(G, p)) == G.order for p in range(1, G.degree + 1))


def check_stabilizers_conjugate(G):
    """For transitive G: every H_j is g H_1 g^-1 for some g."""
    H1 = frozenset(stabilizer(G, 1))
    conj = {frozenset(mul(mul(g, h), inverse(g)) for h in H1) for g in G.elements}
    return all(frozenset(stabilizer(G, p)) in conj for p in range(1, G.degree + 1))


def generator_preimage(pi):
    """Elements mapping to a generator of Z/m."""
    return [g for g in pi.group.elements if gcd(pi(g), pi.m) == 1]


def check_preimage_count(pi):
    # |pi^-1(generators)| * m == phi(m) * |G|
    return len(generator_preimage(pi)) * pi.m == euler_phi(pi.m) * pi.group.order


@dataclass
class SweepReport:
    instances: int
    witnesses: list

    @property
    def passed(self):
        return self.instances == len(self.witnesses)


def verify_lemma_sweep(instances):
    """Run :func:`find_mu` plus independent re-checks on each (G, pi) pair."""
    witnesses = []
    for G, pi in instances:
        mu = find_mu(G, pi)
        problems = []
        if any(mu[i] == i for i in range(G.degree)):
            problems.append("mu has a fixed point")
        if gcd(pi(mu), pi.m) != 1:
            problems.append("pi(mu) does not generate")
        if not check_orbit_stabilizer(G):
            problems.append("orbit-stabilizer count")
        if not check_stabilizers_conjugate(G):
            problems.append("stabilizers not conjugate")
        if not check_preimage_count(pi):
            problems.append("generator preimage count")
        if problems:
            raise VerificationError("free element lemma", "; ".join(problems), detail=format_instance(G, pi))
        witnesses.append(mu)
    return SweepReport(len(witnesses), witnesses)


# -- text format ------------------------------------------------------------
#
#   # comment
#   degree 4
#   modulus 2
#   gen (1 2 3 4) 1
#   ---
#
# One ``gen`` line per generator: cycle notation, then its image in Z/m.
# Instances are separated by a line holding ``---``.


def format_instance(G, pi):
    lines = [f"degree {G.degree}", f"modulus {pi.m}"]
    for g, a in zip(G.generators, pi.generator_images()):
        lines.append(f"gen {to_cycles(g)} {a}")
    return "\n".join(lines) + "\n"


def format_instances(pairs):
    return "---\n".join(format_instance(G, pi) for G, pi in pairs)


def parse_instances(text):
    """Parse the text format into a list of (PermGroup, CyclicMap)."""
    out, block = [], []
    for raw in text.splitlines() + ["---"]:
        line = raw.split("#", 1)[0].strip()
        if line == "---":
            if block:
                out.append(_parse_block(block))
            block = []
        elif line:
            block.append(line)
    return out


def _parse_block(lines):
    degree = modulus = None
    gens = []
    for line in lines:
        key, _, rest = line.partition(" ")
        if key == "degree":
            degree = int(rest)
        elif key == "modulus":
            modulus = int(rest)
        elif key == "gen":
            m = re.fullmatch(r"(.*\))\s*(-?\d+)", rest.strip())
            if not m:
                raise ValueError(f"bad generator line: {line!r}")
            gens.append((m.group(1), int(m.group(2))))
        else:
            raise ValueError(f"unknown keyword {key!r}")
    if degree is None or modulus is None:
        raise ValueError("instance needs both 'degree' and 'modulus'")
    G = PermGroup(degree, [from_cycles(c, degree) for c, _ in gens])
    return G, CyclicMap.from_generator_images(G, [a for _, a in gens], modulus)
