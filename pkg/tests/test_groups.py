from collections import defaultdict
from itertools import product
from math import gcd

import pytest

from bernsieve.errors import VerificationError
from bernsieve.groups import (
    CyclicMap, PermGroup, check_orbit_stabilizer, check_preimage_count, check_stabilizers_conjugate,
    cyclic_quotients, find_mu, format_instances, from_cycles, inverse, mul, parse_instances, perm_order,
    stabilizer, to_cycles, verify_lemma_sweep,
)
from bernsieve.smallgroups import (
    GROUP_COUNTS, are_isomorphic, catalogue, cyclic, direct_product, from_permutations, metacyclic,
    regular_instances, regular_representation,
)


def cyc(text, n):
    return from_cycles(text, n)


C4 = PermGroup(4, [cyc("(1 2 3 4)", 4)])
C2 = PermGroup(2, [cyc("(1 2)", 2)])
S3 = PermGroup(3, [cyc("(1 2 3)", 3), cyc("(1 2)", 3)])


def test_cycle_notation_round_trip():
    g = cyc("(1 3 5)(2 4)", 6)
    assert g == (2, 3, 4, 1, 0, 5)
    assert to_cycles(g) == "(1 3 5)(2 4)"
    assert cyc("()", 3) == (0, 1, 2)
    with pytest.raises(ValueError):
        cyc("(1 2)(2 3)", 3)
    with pytest.raises(ValueError):
        cyc("(1 9)", 3)


def test_closure_group_axioms():
    for G in (C4, S3, PermGroup(5, [cyc("(1 2 3 4 5)", 5), cyc("(1 2)", 5)])):
        els = set(G.elements)
        assert G.identity in els
        assert all(mul(a, b) in els for a in els for b in els)
        assert all(inverse(a) in els for a in els)
    assert PermGroup(5, [cyc("(1 2 3 4 5)", 5), cyc("(1 2)", 5)]).order == 120


def test_closure_cap():
    with pytest.raises(OverflowError):
        PermGroup(6, [cyc("(1 2 3 4 5 6)", 6), cyc("(1 2)", 6)], max_elements=100)


def test_stabilizer_examples():
    assert stabilizer(C4, 3) == [C4.identity]
    assert len(stabilizer(S3, 1)) == 2
    assert stabilizer(C2, 1) == [C2.identity]


def test_cyclic_map_extension_and_rejection():
    pi = CyclicMap.from_generator_images(C4, [1], 2)
    g = cyc("(1 2 3 4)", 4)
    assert [pi(h) for h in (C4.identity, g, mul(g, g), mul(g, mul(g, g)))] == [0, 1, 0, 1]
    with pytest.raises(ValueError):
        CyclicMap.from_generator_images(C4, [1], 3)
    with pytest.raises(ValueError):
        # a transposition cannot map to 1 in Z/3
        CyclicMap.from_generator_images(S3, [0, 1], 3)


def test_find_mu_c2():
    pi = CyclicMap.from_generator_images(C2, [1], 2)
    assert find_mu(C2, pi) == (1, 0)


def test_find_mu_c4_quotient():
    g = cyc("(1 2 3 4)", 4)
    pi = CyclicMap.from_generator_images(C4, [1], 2)
    mu = find_mu(C4, pi)
    assert mu in (g, mul(g, mul(g, g)))
    # brute force: exactly g and g^3 qualify
    ok = [h for h in C4.elements if all(h[i] != i for i in range(4)) and pi(h) % 2 == 1]
    assert sorted(ok) == sorted([g, mul(g, mul(g, g))])


def test_find_mu_rejects_unequal_stabilizers():
    pi = CyclicMap.from_generator_images(S3, [0, 1], 2)
    with pytest.raises(ValueError, match="stabilizers"):
        find_mu(S3, pi)


def test_find_mu_rejects_intransitive():
    G = PermGroup(4, [cyc("(1 2)", 4), cyc("(3 4)", 4)])
    pi = CyclicMap.from_generator_images(G, [1, 0], 2)
    with pytest.raises(ValueError, match="transitive"):
        find_mu(G, pi)


def test_find_mu_refutation_is_reported():
    # a map that claims surjectivity but sends everything to 0 leaves no candidate
    pi = CyclicMap(C4, 2, {g: 0 for g in C4.elements})
    pi.is_surjective = lambda: True
    with pytest.raises(VerificationError) as exc:
        find_mu(C4, pi)
    assert "degree 4" in exc.value.detail


def test_non_regular_instance():
    # D4 on the square's vertices: stabilizers of adjacent points differ, but
    # of opposite points 1 and 3 agree. Relabel so those are points 1 and 2.
    G = PermGroup(4, [cyc("(1 3 2 4)", 4), cyc("(3 4)", 4)])
    assert G.order == 8 and G.is_transitive()
    assert stabilizer(G, 1) == stabilizer(G, 2)
    for pi in cyclic_quotients(G):
        mu = find_mu(G, pi)
        assert all(mu[i] != i for i in range(4)) and gcd(pi(mu), pi.m) == 1


def test_catalogue_matches_group_counts():
    by_order = defaultdict(list)
    for A in catalogue():
        by_order[len(A.elements)].append(A)
    assert {n: len(v) for n, v in by_order.items()} == GROUP_COUNTS
    for gs in by_order.values():
        for i, A in enumerate(gs):
            for B in gs[i + 1:]:
                assert not are_isomorphic(A, B), (A.name, B.name)


def test_catalogue_groups_are_associative():
    for A in catalogue():
        E, op = A.elements, A.op
        assert all(op(op(x, y), z) == op(x, op(y, z)) for x, y, z in product(E, repeat=3)), A.name


def test_isomorphism_oracle_sees_equal_groups():
    assert are_isomorphic(cyclic(6), direct_product(cyclic(2), cyclic(3)))
    assert are_isomorphic(metacyclic(3, 2, 0, 2, "S3"), from_permutations([(1, 0, 2), (1, 2, 0)], "S3"))
    assert not are_isomorphic(cyclic(8), direct_product(cyclic(4), cyclic(2)))
    d4_square = from_permutations([(1, 2, 3, 0), (0, 3, 2, 1)], "D4sq")
    assert are_isomorphic(d4_square, metacyclic(4, 2, 0, 3, "D4"))


def test_regular_representation_is_regular():
    for name, G in regular_instances(16):
        assert G.is_transitive()
        assert all(stabilizer(G, p) == [G.identity] for p in range(1, G.degree + 1)), name


def test_cyclic_quotients_of_c2_cubed():
    G = regular_representation(direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2)))
    qs = cyclic_quotients(G)
    assert sorted((pi.m, tuple(pi.generator_images())) for pi in qs)[0] == (1, (0, 0, 0))
    assert sum(1 for pi in qs if pi.m == 2) == 7
    assert all(pi.is_homomorphism(full=True) and pi.is_surjective() for pi in qs)


def test_cyclic_quotients_of_c12():
    G = regular_representation(cyclic(12))
    counts = defaultdict(int)
    for pi in cyclic_quotients(G):
        counts[pi.m] += 1
    # surjections Z/12 -> Z/m correspond to units of Z/m
    assert dict(counts) == {1: 1, 2: 1, 3: 2, 4: 2, 6: 2, 12: 4}


def test_invariants_on_examples():
    for G in (C4, S3, C2):
        assert check_orbit_stabilizer(G)
        assert check_stabilizers_conjugate(G)
    for pi in cyclic_quotients(C4):
        assert check_preimage_count(pi)


def test_sweep_regular_actions():
    inst = [(G, pi) for _, G in regular_instances(16) for pi in cyclic_quotients(G)]
    rep = verify_lemma_sweep(inst)
    assert rep.passed and rep.instances == len(inst)


def test_empty_sweep():
    rep = verify_lemma_sweep([])
    assert rep.passed and rep.instances == 0


def test_instance_text_format_round_trip():
    inst = [(C4, CyclicMap.from_generator_images(C4, [1], 2)), (C2, CyclicMap.from_generator_images(C2, [1], 2))]
    text = format_instances(inst)
    assert text.splitlines()[:3] == ["degree 4", "modulus 2", "gen (1 2 3 4) 1"]
    back = parse_instances("# two instances\n" + text)
    assert len(back) == 2
    for (G, pi), (H, rho) in zip(inst, back):
        assert G.elements == H.elements and pi.image == rho.image and pi.m == rho.m


def test_parse_rejects_bad_images():
    with pytest.raises(ValueError):
        parse_instances("degree 4\nmodulus 3\ngen (1 2 3 4) 1\n")
    with pytest.raises(ValueError):
        parse_instances("degree 4\ngen (1 2 3 4) 1\n")


def test_perm_order():
    assert perm_order(cyc("(1 2 3)(4 5)", 5)) == 6
