from __future__ import annotations

import random
from functools import reduce
from itertools import combinations
from math import gcd, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.utilities.iterables import multiset_partitions

from polyflower import flower as fl
from polyflower.errors import BadIndex, BadParameters, InvalidPartition, UnequalPetals, UnknownEdge
from polyflower.graph import FlowerSpec, boundary, build_flower, center, contract_edge, interior
from polyflower.linalg import AbelianGroup, determinant, group_from_matrix
from polyflower.oracle import (
    edge_generator_oracle,
    sandpile_group_cycle_cut,
    sandpile_group_laplacian,
    tau_matrix_tree,
)

SUN3 = FlowerSpec.of([3], [3], [3])
DIGONS = FlowerSpec.of([2], [], [2], [])
MIXED = FlowerSpec.of([2], [3], [5])
PAIRS = FlowerSpec.of([2], [2], [3], [3])

flowers = st.integers(2, 5).flatmap(
    lambda t: st.lists(st.lists(st.integers(2, 5), max_size=2), min_size=t, max_size=t)
).map(lambda ps: FlowerSpec.of(*ps))
positive = st.lists(st.integers(1, 200), min_size=1, max_size=7)


def brute_m(a):
    best = 1
    for size in range(1, len(a) + 1):
        for sub in combinations(a, size):
            if reduce(gcd, sub) > 1:
                best = max(best, size)
    return best


def brute_d(a, k):
    return reduce(gcd, (prod(c) for c in combinations(a, k)), 0)


def Z(*factors):
    return AbelianGroup(tuple(factors))


def test_invariants_examples():
    inv = fl.flower_invariants(SUN3)
    assert (inv.p, inv.q, inv.tau) == ((3, 3, 3), (2, 2, 2), 54)
    assert inv.relation_matrix == [[3, -3, 0], [0, 3, -3], [2, 2, 2]]

    inv = fl.flower_invariants(DIGONS)
    assert (inv.p, inv.q, inv.tau) == ((2, 1, 2, 1), (1, 1, 1, 1), 12)
    assert tau_matrix_tree(build_flower(DIGONS)) == 12

    digon_center = FlowerSpec.of([3], [3])
    assert fl.flower_invariants(digon_center).tau == 12
    assert tau_matrix_tree(build_flower(digon_center)) == 12


@settings(max_examples=60, deadline=None)
@given(flowers)
def test_invariant_properties(spec):
    inv = fl.flower_invariants(spec)
    for petal, p, q in zip(spec.petals, inv.p, inv.q):
        if petal.trivial:
            assert p == q == 1
        assert gcd(p, q) == 1
    assert abs(determinant(inv.relation_matrix)) == inv.tau == tau_matrix_tree(build_flower(spec))


def test_group_structure_examples():
    assert fl.group_structure(SUN3) == Z(3, 18)
    assert fl.group_structure(FlowerSpec.of([3], [3], [3], [3])) == Z(3, 3, 24)
    assert fl.group_structure(DIGONS) == Z(12)
    assert sandpile_group_laplacian(build_flower(DIGONS)) == Z(12)


@settings(max_examples=60, deadline=None)
@given(flowers)
def test_group_structure_matches_oracles(spec):
    g = build_flower(spec)
    group = fl.group_structure(spec)
    assert group == sandpile_group_laplacian(g) == sandpile_group_cycle_cut(g)
    assert group == group_from_matrix(fl.flower_invariants(spec).relation_matrix)
    assert fl.min_generators(spec) == group.rank
    assert fl.is_cyclic(spec) == group.is_cyclic


@settings(max_examples=50, deadline=None)
@given(flowers, st.randoms(use_true_random=False))
def test_permutation_invariance(spec, rnd):
    base = fl.group_structure(spec)
    order = list(range(spec.t))
    for _ in range(5):
        rnd.shuffle(order)
        assert fl.group_structure(spec.permuted(order)) == base


@given(positive)
def test_coprime_base(values):
    base = fl.coprime_base(values)
    assert all(gcd(a, b) == 1 for a, b in combinations(base, 2))
    for v in values:
        rest = v
        for b in base:
            while rest % b == 0:
                rest //= b
        assert rest == 1


@given(positive)
def test_product_gcds_brute_force(values):
    d = fl.product_gcds(values, len(values))
    assert d[0] == 1
    for k in range(1, len(values) + 1):
        assert d[k] == brute_d(values, k)
    assert all(d[k + 1] % d[k] == 0 for k in range(len(values)))


@pytest.mark.parametrize("a, m", [
    ((2, 2, 3, 3, 5, 5), 2),
    ((6, 10, 15, 105), 3),
    ((1, 1, 1), 1),
    ((7,), 1),
    ((4, 6, 9), 2),
])
def test_m_value_examples(a, m):
    assert fl.m_value(a) == m


@given(positive)
def test_m_value_brute_force(values):
    assert fl.m_value(values) == brute_m(values)


def test_min_generators_examples():
    assert fl.min_generators(SUN3) == 2
    assert fl.min_generators(DIGONS) == 1
    assert fl.min_generators(FlowerSpec.of([4, 4], [3, 5])) == 1


def test_is_cyclic_examples():
    assert fl.is_cyclic(MIXED)
    assert not fl.is_cyclic(SUN3)
    assert fl.is_cyclic(PAIRS)
    assert sandpile_group_laplacian(build_flower(PAIRS)).is_cyclic


def test_equal_petal_group():
    assert fl.equal_petal_group(SUN3) == Z(3, 18)
    five = FlowerSpec.of([3], [3], [3], [3], [3])
    assert fl.equal_petal_group(five) == Z(3, 3, 3, 30) == fl.group_structure(five)
    two = FlowerSpec.of([3], [], [3], [])
    assert fl.equal_petal_group(two) == Z(30) == sandpile_group_laplacian(build_flower(two))
    with pytest.raises(UnequalPetals):
        fl.equal_petal_group(MIXED)
    with pytest.raises(UnequalPetals):
        fl.equal_petal_group(FlowerSpec.of([3], [], []))


def gcd_generator(spec, label):
    g = build_flower(spec)
    return gcd(tau_matrix_tree(g), tau_matrix_tree(contract_edge(g, label))) == 1


def test_petal_generator_examples():
    spec = FlowerSpec.of([2], [3], [])
    assert fl.petal_generator_test(spec, 1)
    assert gcd_generator(spec, fl.petal_generator_edge(spec, 1))
    assert not fl.petal_generator_test(PAIRS, 1)
    assert not gcd_generator(PAIRS, fl.petal_generator_edge(PAIRS, 1))
    assert not any(fl.petal_generator_test(SUN3, i) for i in (1, 2, 3))
    with pytest.raises(BadIndex):
        fl.petal_generator_test(SUN3, 4)
    assert fl.petal_generator_edge(spec, 3) == center(3)
    assert fl.petal_generator_edge(FlowerSpec.of([3, 4], []), 1) == boundary(2, 1)


def test_exists_generating_edge_examples():
    assert fl.exists_generating_edge(MIXED)
    assert not fl.exists_generating_edge(PAIRS)
    g = build_flower(PAIRS)
    assert not any(edge_generator_oracle(g, lab) for lab in g.labels())
    assert fl.exists_generating_edge(FlowerSpec.of([3], [4]))


def test_classify_edge_examples():
    inv = fl.flower_invariants(MIXED)
    for i in (1, 2, 3):
        assert fl.classify_edge(MIXED, center(i)).coefficient == inv.q[i - 1]

    spec = FlowerSpec.of([2], [3], [])
    f1 = fl.classify_edge(spec, fl.petal_generator_edge(spec, 1))
    assert f1.generator and f1.coefficient == 1

    # interior edge of petal 2 equals 2 f_2 while tau(F) = 8
    spec = FlowerSpec.of([], [3, 2])
    e = fl.classify_edge(spec, interior(1, 1, petal=2))
    assert fl.petal_generator_test(spec, 2)
    assert (e.coefficient, e.order, e.generator) == (2, 4, False)
    assert not gcd_generator(spec, interior(1, 1, petal=2))

    with pytest.raises(UnknownEdge):
        fl.classify_edge(spec, interior(3, 1, petal=2))
    with pytest.raises(UnknownEdge):
        fl.classify_edge(spec, center(5))


def brute_prime_partitions(p):
    out = []
    for parts in multiset_partitions(list(range(1, len(p) + 1))):
        if fl.is_prime_partition(p, parts):
            out.append(tuple(sorted(tuple(sorted(x)) for x in parts)))
    return sorted(out)


def test_prime_partition_fixtures():
    a = (2, 2, 3, 3, 5, 5)
    assert fl.is_prime_partition(a, [(1, 3), (2, 5), (4, 6)])
    assert fl.is_prime_partition(a, [(1, 3, 5), (2, 4, 6)])
    every = [pp.parts for pp in fl.prime_partitions(a, minimum=False)]
    assert ((1, 3), (2, 5), (4, 6)) in every
    smallest = fl.prime_partitions(a)
    assert {pp.k for pp in smallest} == {2}
    assert ((1, 3, 5), (2, 4, 6)) in [pp.parts for pp in smallest]

    b = (6, 10, 15, 105)
    assert [pp.parts for pp in fl.prime_partitions(b, minimum=False)] == [((1,), (2,), (3,), (4,))]

    assert [pp.parts for pp in fl.prime_partitions((2, 3, 5))] == [((1, 2, 3),)]
    assert not fl.is_prime_partition((2, 3, 5), [(1,), (2, 3)])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 30), min_size=1, max_size=6))
def test_prime_partitions_brute_force(p):
    every = brute_prime_partitions(p)
    assert sorted(pp.parts for pp in fl.prime_partitions(p, minimum=False)) == every
    k = min(len(x) for x in every)
    assert k >= fl.m_value(p) or all(v == 1 for v in p)
    assert sorted(pp.parts for pp in fl.prime_partitions(p)) == [x for x in every if len(x) == k]


def test_reduced_relation_matrix_examples():
    assert fl.reduced_relation_matrix(MIXED, [(1, 2, 3)]) == [[fl.flower_invariants(MIXED).tau]]

    rprime = fl.reduced_relation_matrix(PAIRS, [(1, 3), (2, 4)])
    assert rprime[0] == [6, -6]
    # beta for {1,3}: q_1 p_3 + q_3 p_1 with p = (2, 2, 3, 3), q = (1, 1, 2, 2)
    assert rprime[1] == [1 * 3 + 2 * 2, 1 * 3 + 2 * 2]
    assert group_from_matrix(rprime) == sandpile_group_laplacian(build_flower(PAIRS))

    singletons = [(i,) for i in range(1, SUN3.t + 1)]
    assert fl.reduced_relation_matrix(SUN3, singletons) == fl.flower_invariants(SUN3).relation_matrix

    with pytest.raises(InvalidPartition):
        fl.reduced_relation_matrix(PAIRS, [(1, 2), (3, 4)])


def test_group_via_partition_examples():
    inv = fl.flower_invariants(MIXED)
    assert fl.group_via_partition(MIXED, [(1, 2, 3)]) == Z(inv.tau)
    assert fl.group_via_partition(PAIRS, [(1, 3), (2, 4)]) == fl.group_structure(PAIRS)
    assert fl.group_via_partition(SUN3, [(1,), (2,), (3,)]) == Z(3, 18)
    assert fl.mu_via_partition(SUN3, [(1,), (2,), (3,)]) == 2


@settings(max_examples=60, deadline=None)
@given(flowers)
def test_every_partition_gives_same_group(spec):
    inv = fl.flower_invariants(spec)
    group = fl.group_structure(spec)
    for pp in fl.prime_partitions(inv.p, minimum=False):
        assert fl.group_via_partition(spec, pp) == group
        assert fl.mu_via_partition(spec, pp) == fl.min_generators(spec)
        assert group_from_matrix(fl.reduced_relation_matrix(spec, pp)) == group
        assert all(gcd(a, b) == 1 for a, b in zip(pp.alphas, pp.betas(inv.q, inv.p)))


def test_thick_cycle():
    assert fl.thick_cycle_group([2, 3, 4]) == Z(26)
    assert fl.thick_cycle_group([2, 2]) == Z(4)
    assert fl.thick_cycle_group([3, 3, 3]) == Z(3, 9)
    for ns in ([2, 3, 4], [2, 2], [3, 3, 3], [1, 4, 6, 2]):
        g = build_flower(fl.thick_cycle_spec(ns))
        assert sandpile_group_laplacian(g) == fl.thick_cycle_group(ns)
    with pytest.raises(BadParameters):
        fl.thick_cycle_group([3])


def test_sunflower_examples():
    for t in range(3, 6):
        for r in range(2, 6):
            assert fl.sunflower_group(t, t, r, 1) == AbelianGroup.from_cyclic([r] * (t - 2) + [r * (r - 1) * t])
    assert fl.sunflower_group(4, 2, 3, 1) == fl.group_structure(fl.sunflower_spec(4, 2, 3, 1))
    for s in range(0, 5):
        spec = fl.sunflower_spec(4, s, 3, 2)
        assert fl.sunflower_group(4, s, 3, 2) == sandpile_group_laplacian(build_flower(spec))
    with pytest.raises(BadParameters):
        fl.sunflower_group(3, 4, 3, 1)


def test_large_flower_exact():
    spec = FlowerSpec.of(*[[7] * 30] * 6)
    inv = fl.flower_invariants(spec)
    assert inv.tau > 2**200
    group = fl.group_structure(spec)
    assert group.order == inv.tau
    assert group == group_from_matrix(inv.relation_matrix)


def test_random_permutations_deterministic():
    rng = random.Random(7)
    spec = FlowerSpec.of([3, 3], [4], [2, 2], [5], [6])
    base = fl.group_structure(spec)
    for _ in range(10):
        order = list(range(spec.t))
        rng.shuffle(order)
        assert fl.group_structure(spec.permuted(order)) == base
