"""A catalogue of every group of order <= 16, realised as regular permutation groups.

Groups are first built abstractly (element list + multiplication) from a few
constructions: cyclic groups, direct products, metacyclic presentations
<a, b | a^m, b^n = a^t, b a b^-1 = a^u>, one semidirect product family and
small permutation groups. :func:`are_isomorphic` is a brute-force test used
to confirm the catalogue has no repeats.
"""

from collections import Counter, deque
from dataclasses import dataclass
from itertools import product

from .groups import PermGroup, identity, mul

# Number of isomorphism classes of groups of order 1..16.
GROUP_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2,
                11: 1, 12: 5, 13: 1, 14: 2, 15: 1, 16: 14}


@dataclass
class AbstractGroup:
    name: str
    elements: list
    op: object  # (x, y) -> x*y
    generators: list

    def table(self):
        idx = {x: i for i, x in enumerate(self.elements)}
        return [[idx[self.op(x, y)] for y in self.elements] for x in self.elements]


def _closure(gens, op, e):
    seen, queue = [e], deque([e])
    known = {e}
    while queue:
        x = queue.popleft()
        for g in gens:
            y = op(g, x)
            if y not in known:
                known.add(y)
                seen.append(y)
                queue.append(y)
    return seen


def cyclic(n):
    return AbstractGroup(f"C{n}", list(range(n)), lambda x, y: (x + y) % n, [1 % n] if n > 1 else [])


def direct_product(A, B, name=None):
    els = [(a, b) for a in A.elements for b in B.elements]
    ea, eb = _identity_of(A), _identity_of(B)
    gens = [(g, eb) for g in A.generators] + [(ea, g) for g in B.generators]
    return AbstractGroup(name or f"{A.name}x{B.name}", els,
                         lambda x, y: (A.op(x[0], y[0]), B.op(x[1], y[1])), gens)


def _identity_of(G):
    for e in G.elements:
        if all(G.op(e, x) == x for x in G.elements):
            return e
    raise ValueError("no identity")


def metacyclic(m, n, t, u, name):
    """<a, b | a^m = 1, b^n = a^t, b a b^-1 = a^u>, elements a^i b^j."""
    if pow(u, n, m) != 1 % m or (t * (u - 1)) % m:
        raise ValueError("inconsistent metacyclic parameters")

    def op(x, y):
        i, j = x
        k, l = y
        a = i + k * pow(u, j, m)
        jl = j + l
        if jl >= n:
            a += t
            jl -= n
        return (a % m, jl)

    gens = [g for g in ((1 % m, 0), (0, 1 % n)) if g != (0, 0)]
    return AbstractGroup(name, [(i, j) for i in range(m) for j in range(n)], op, gens)


def c4xc2_by_c2(action, name):
    """(C4 x C2) x| C2, the C2 acting by the automorphism ``action`` of C4 x C2."""

    def act(c, x):
        return action(x) if c else x

    def op(x, y):
        (a1, b1, c1), (a2, b2, c2) = x, y
        a, b = act(c1, (a2, b2))
        return ((a1 + a) % 4, (b1 + b) % 2, (c1 + c2) % 2)

    els = [(a, b, c) for a in range(4) for b in range(2) for c in range(2)]
    return AbstractGroup(name, els, op, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])


def from_permutations(gens, name):
    gens = [tuple(g) for g in gens]
    e = identity(len(gens[0]))
    return AbstractGroup(name, _closure(gens, mul, e), mul, gens)


def _p(*images):
    return tuple(i - 1 for i in images)


def catalogue():
    """All groups of order <= 16 as AbstractGroups, ordered by size."""
    C = cyclic
    dp = direct_product
    gs = [C(1), C(2), C(3), C(4), dp(C(2), C(2)), C(5), C(6),
          metacyclic(3, 2, 0, 2, "S3"), C(7),
          C(8), dp(C(4), C(2)), dp(dp(C(2), C(2)), C(2), "C2^3"),
          metacyclic(4, 2, 0, 3, "D4"), metacyclic(4, 2, 2, 3, "Q8"),
          C(9), dp(C(3), C(3)), C(10), metacyclic(5, 2, 0, 4, "D5"), C(11),
          C(12), dp(C(6), C(2)), metacyclic(6, 2, 0, 5, "D6"), metacyclic(6, 2, 3, 5, "Dic3"),
          from_permutations([_p(2, 3, 1, 4), _p(2, 1, 4, 3)], "A4"),
          C(13), C(14), metacyclic(7, 2, 0, 6, "D7"), C(15),
          C(16), dp(C(4), C(4)), dp(C(8), C(2)), dp(dp(C(4), C(2)), C(2), "C4xC2^2"),
          dp(dp(dp(C(2), C(2)), C(2)), C(2), "C2^4"),
          metacyclic(8, 2, 0, 7, "D8"), metacyclic(8, 2, 4, 7, "Q16"),
          metacyclic(8, 2, 0, 3, "SD16"), metacyclic(8, 2, 0, 5, "M16"),
          metacyclic(4, 4, 0, 3, "C4:C4"),
          dp(C(2), metacyclic(4, 2, 0, 3, "D4"), "C2xD4"),
          dp(C(2), metacyclic(4, 2, 2, 3, "Q8"), "C2xQ8"),
          c4xc2_by_c2(lambda x: ((x[0]) % 4, (x[1] + x[0]) % 2), "(C4xC2):C2"),
          c4xc2_by_c2(lambda x: ((x[0] + 2 * x[1]) % 4, x[1]), "C4oD4")]
    return gs


def regular_representation(A):
    """Left-multiplication action of A on itself as a PermGroup of degree |A|."""
    idx = {x: i for i, x in enumerate(A.elements)}
    gens = [tuple(idx[A.op(g, x)] for x in A.elements) for g in A.generators]
    return PermGroup(len(A.elements), gens)


def element_orders(A):
    e = _identity_of(A)
    out = []
    for x in A.elements:
        n, y = 1, x
        while y != e:
            y = A.op(x, y)
            n += 1
        out.append(n)
    return out


def are_isomorphic(A, B):
    """Brute force: try every order-respecting assignment of A's generators in B."""
    if len(A.elements) != len(B.elements):
        return False
    oa, ob = element_orders(A), element_orders(B)
    if Counter(oa) != Counter(ob):
        return False
    ea, eb = _identity_of(A), _identity_of(B)
    # Spanning tree of A over its generators: each element = gen * parent.
    tree = {ea: None}
    order = [ea]
    queue = deque([ea])
    while queue:
        x = queue.popleft()
        for gi, g in enumerate(A.generators):
            y = A.op(g, x)
            if y not in tree:
                tree[y] = (gi, x)
                order.append(y)
                queue.append(y)
    ord_a = dict(zip(A.elements, oa))
    ord_b = dict(zip(B.elements, ob))
    choices = [[y for y in B.elements if ord_b[y] == ord_a[g]] for g in A.generators]
    for imgs in product(*choices):
        phi = {ea: eb}
        for x in order[1:]:
            gi, parent = tree[x]
            phi[x] = B.op(imgs[gi], phi[parent])
        if len(set(phi.values())) != len(phi):
            continue
        if all(phi[A.op(g, x)] == B.op(phi[g], phi[x]) for g in A.generators for x in A.elements):
            return True
    return False


def regular_instances(max_order=16):
    """(name, PermGroup) for the regular action of every group of order 2..max_order."""
    return [(A.name, regular_representation(A)) for A in catalogue() if 2 <= len(A.elements) <= max_order]
