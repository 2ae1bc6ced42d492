from __future__ import annotations

from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import in_row_lattice
from polyflower.chain import (
    chain_invariants,
    chain_tau,
    edge_coefficients,
    edge_order,
    is_generating_edge_chain,
    end_contraction_identity,
    regular_chain_tau,
)
from polyflower.errors import InvalidSideCount, TrivialChain, UnknownEdge
from polyflower.graph import ChainSpec, boundary, build_chain, contract_edge, interior
from polyflower.oracle import cycle_cut_matrix, element_order_oracle, tau_matrix_tree

chains = st.lists(st.integers(2, 6), min_size=1, max_size=4).map(lambda ks: ChainSpec(tuple(ks)))


def tau_contracting(g, *labels):
    """matrix-tree count of g with the given edges contracted in turn.

    An edge that became a loop (it was parallel to one contracted earlier)
    contributes tau(G / loop) = tau(G) - tau(G - loop) = 0.
    """
    for lab in labels:
        if not g.has_edge(lab):
            return 0
        g = contract_edge(g, lab)
    return tau_matrix_tree(g)


def test_single_triangle():
    inv = chain_invariants((3,))
    assert inv.taus == (1, 3)
    assert inv.tau_contracts == (1, 2)
    assert inv.tau_e0[1] == 2
    assert inv.tau_e0_en[1] == 1


def test_four_squares():
    inv = chain_invariants((4, 4, 4, 4))
    assert inv.tau == 209
    assert inv.tau_contracts[2] == 11


def test_digon_chain_indexing():
    # n digons stacked = n + 1 parallel edges, so tau = n + 1; the recurrence
    # with tau(P^0) = 1, tau(P^1) = r gives the same, one more than "tau(P_2^n) = n"
    inv = chain_invariants((2, 2, 2))
    assert inv.taus == (1, 2, 3, 4)
    assert tau_matrix_tree(build_chain((2, 2, 2))) == 4
    assert all(c == 1 for c in inv.tau_contracts)


def test_invalid_chain():
    with pytest.raises(InvalidSideCount):
        chain_invariants((3, 1))


@settings(max_examples=60, deadline=None)
@given(chains)
def test_recurrences_match_matrix_tree(spec):
    inv = chain_invariants(spec)
    for i in range(spec.n + 1):
        g = build_chain(spec.ks[:i])
        assert inv.taus[i] == tau_matrix_tree(g)
        assert inv.tau_contracts[i] == tau_contracting(g, boundary(i))
        if i >= 1:
            assert inv.tau_e0[i] == tau_contracting(g, boundary(0))
            assert inv.tau_e0_en[i] == tau_contracting(g, boundary(0), boundary(i))
            assert inv.taus[i] == inv.taus[i - 1] + inv.tau_contracts[i]
            assert gcd(inv.taus[i - 1], inv.taus[i]) == 1
        if i >= 2:
            assert inv.taus[i] == spec.ks[i - 1] * inv.taus[i - 1] - inv.taus[i - 2]
    assert gcd(inv.tau_contracts[-1], inv.tau) == 1


def test_regular_chain_recurrence():
    for r in range(2, 7):
        taus = [regular_chain_tau(r, n) for n in range(8)]
        assert taus[:2] == [1, r]
        for n in range(2, 8):
            assert taus[n] == r * taus[n - 1] - taus[n - 2]
    assert regular_chain_tau(3, 200) > 2**64


@pytest.mark.parametrize("ks, expected", [
    ((3,), {boundary(0): 1, interior(1, 1): 1, boundary(1): 2}),
    ((3, 3), {boundary(0): 1, interior(1, 1): 1, boundary(1): 2,
              interior(2, 1): 3, boundary(2): 5}),
])
def test_edge_coefficients_examples(ks, expected):
    assert edge_coefficients(ks) == expected


def test_edge_coefficients_four_squares():
    coeffs = edge_coefficients((4, 4, 4, 4))
    assert coeffs[boundary(2)] == 11
    non_generators = [lab for lab, c in coeffs.items() if gcd(c, 209) != 1]
    assert non_generators == [boundary(2)]


@settings(max_examples=60, deadline=None)
@given(chains)
def test_coefficients_in_relation_lattice(spec):
    g = build_chain(spec)
    m = cycle_cut_matrix(g)
    j0 = g.index_of(boundary(0))
    for lab, c in edge_coefficients(spec).items():
        vec = [0] * g.m
        vec[g.index_of(lab)] += 1
        vec[j0] -= c
        assert in_row_lattice(m, vec), (spec, lab, c)


@settings(max_examples=40, deadline=None)
@given(chains)
def test_head_coefficients_in_relation_lattice(spec):
    g = build_chain(spec)
    m = cycle_cut_matrix(g)
    jn = g.index_of(boundary(spec.n))
    coeffs = edge_coefficients(spec, base="head")
    assert set(coeffs) == set(g.labels())
    for lab, c in coeffs.items():
        ok = False
        for sign in (1, -1):
            vec = [0] * g.m
            vec[g.index_of(lab)] += 1
            vec[jn] -= sign * c
            ok |= in_row_lattice(m, vec)
        assert ok, (spec, lab, c)


def test_edge_order_examples():
    assert edge_order((3, 3), boundary(0)) == 8
    assert edge_order((3, 3), boundary(1)) == 4
    assert edge_order((4, 4, 4, 4), boundary(2)) == 19
    with pytest.raises(UnknownEdge):
        edge_order((3, 3), boundary(3))


def test_generating_edges_examples():
    assert not is_generating_edge_chain((4, 4, 4, 4), boundary(2))
    assert not is_generating_edge_chain((3, 3), boundary(1))
    assert is_generating_edge_chain((3, 3), boundary(2))


@settings(max_examples=40, deadline=None)
@given(chains)
def test_edge_orders_match_oracle(spec):
    g = build_chain(spec)
    tau = chain_tau(spec)
    for lab in g.labels():
        order = edge_order(spec, lab)
        assert order == element_order_oracle(g, lab)
        assert tau % order == 0
    # both free edges at the ends generate
    assert edge_order(spec, boundary(0)) == tau
    assert edge_order(spec, boundary(spec.n)) == tau


@pytest.mark.parametrize("ks", [(3,), (3, 3), (5, 2, 6), (2,), (2, 2, 2, 2)])
def test_end_contraction_examples(ks):
    assert end_contraction_identity(ks) == 1
    g = build_chain(ks)
    n = len(ks)
    lhs = (tau_contracting(g, boundary(0)) * tau_contracting(g, boundary(n))
           - tau_matrix_tree(g) * tau_contracting(g, boundary(0), boundary(n)))
    assert lhs == 1


def test_end_contraction_trivial():
    with pytest.raises(TrivialChain):
        end_contraction_identity(())


@given(st.lists(st.integers(2, 40), min_size=1, max_size=12))
def test_end_contraction_property(ks):
    assert end_contraction_identity(ks) == 1
