"""Spanning-tree recurrences and edge expressions for polygon chains.

For a chain ``G_n(k_1, ..., k_n)`` with shared edges ``e_0, ..., e_n``::

    tau(G_0) = 1,  tau(G_0 / e_0) = 1
    tau(G_i / e_i) = (k_i - 2) tau(G_{i-1}) + tau(G_{i-1} / e_{i-1})
    tau(G_i)       = (k_i - 1) tau(G_{i-1}) + tau(G_{i-1} / e_{i-1})

and in the sandpile group every edge is a multiple of ``e_0``:
``e_i = tau(G_i / e_i) e_0`` and an interior edge of polygon ``i`` equals
``tau(G_{i-1}) e_0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .errors import TrivialChain, UnknownEdge
from .graph import ChainSpec, EdgeLabel, _as_chain, boundary, interior

__all__ = [
    "ChainInvariants",
    "chain_invariants",
    "chain_tau",
    "chain_tau_contract_end",
    "chain_tau_contract_start",
    "edge_coefficients",
    "edge_order",
    "is_generating_edge_chain",
    "end_contraction_identity",
    "lemma52_identity",
    "regular_chain_tau",
]


@dataclass(frozen=True)
class ChainInvariants:
    """Spanning-tree counts of the prefixes ``G_0, ..., G_n`` of a chain.

    ``taus[i] = tau(G_i)``, ``tau_contracts[i] = tau(G_i / e_i)``,
    ``tau_e0[i] = tau(G_i / e_0)`` and ``tau_e0_en[i] = tau(G_i / e_0 / e_i)``.
    Index 0 holds the seeds ``1, 1, 1, 0``; the last seed is the value that
    makes the prefix recurrences valid from ``i = 1`` (contracting ``e_0``
    twice leaves a loop, and a contracted loop has no spanning trees).
    """

    spec: ChainSpec
    taus: tuple[int, ...]
    tau_contracts: tuple[int, ...]
    tau_e0: tuple[int, ...]
    tau_e0_en: tuple[int, ...]

    @property
    def tau(self) -> int:
        return self.taus[-1]


def chain_invariants(spec: ChainSpec | Sequence[int]) -> ChainInvariants:
    spec = _as_chain(spec)
    taus, con, e0, e0en = [1], [1], [1], [0]
    for k in spec.ks:
        t, c, a, b = taus[-1], con[-1], e0[-1], e0en[-1]
        taus.append((k - 1) * t + c)
        con.append((k - 2) * t + c)
        e0.append((k - 1) * a + b)
        e0en.append((k - 2) * a + b)
    return ChainInvariants(spec, tuple(taus), tuple(con), tuple(e0), tuple(e0en))


def chain_tau(spec: ChainSpec | Sequence[int]) -> int:
    return chain_invariants(spec).tau


def chain_tau_contract_end(spec: ChainSpec | Sequence[int]) -> int:
    """``tau(G_n / e_n)``: the chain with its far free edge contracted."""
    return chain_invariants(spec).tau_contracts[-1]


def chain_tau_contract_start(spec: ChainSpec | Sequence[int]) -> int:
    """``tau(G_n / e_0)``."""
    return chain_invariants(spec).tau_e0[-1]


def regular_chain_tau(r: int, n: int) -> int:
    """``tau`` of the chain of ``n`` copies of the ``r``-gon."""
    return chain_tau((r,) * n)


def _coefficients_from_start(spec: ChainSpec, petal: int = 0) -> dict[EdgeLabel, int]:
    inv = chain_invariants(spec)
    out = {boundary(0, petal): 1}
    for i, k in enumerate(spec.ks, start=1):
        for j in range(1, k - 1):
            out[interior(i, j, petal)] = inv.taus[i - 1]
        out[boundary(i, petal)] = inv.tau_contracts[i]
    return out


def edge_coefficients(spec: ChainSpec | Sequence[int], base: str = "tail",
                      petal: int = 0) -> dict[EdgeLabel, int]:
    """Multiplier ``c`` with ``e = c * g`` in the sandpile group, for every edge ``e``.

    ``base="tail"`` expresses edges in ``g = e_0``.  ``base="head"`` uses the
    far free edge ``g = e_n``; it runs the same recurrences on the reversed
    side sequence and maps labels back, so the multipliers there are only
    determined up to sign.
    """
    spec = _as_chain(spec)
    if base == "tail":
        return _coefficients_from_start(spec, petal)
    if base != "head":
        raise ValueError(f"base must be 'tail' or 'head', got {base!r}")
    n = spec.n
    rev = _coefficients_from_start(spec.reversed())
    out = {}
    for lab, c in rev.items():
        if lab.kind == "boundary":
            out[boundary(n - lab.index, petal)] = c
        else:
            # all interior edges of one polygon share a multiplier
            i = n + 1 - lab.index
            out[interior(i, lab.position, petal)] = c
    return out


def _lookup(coeffs: dict[EdgeLabel, int], e: EdgeLabel) -> int:
    try:
        return coeffs[e.canonical()]
    except KeyError:
        raise UnknownEdge(str(e)) from None


def edge_order(spec: ChainSpec | Sequence[int], e: EdgeLabel) -> int:
    """Order of edge ``e`` in the (cyclic) sandpile group of the chain."""
    spec = _as_chain(spec)
    tau = chain_tau(spec)
    return tau // gcd(_lookup(edge_coefficients(spec), e), tau)


def is_generating_edge_chain(spec: ChainSpec | Sequence[int], e: EdgeLabel) -> bool:
    spec = _as_chain(spec)
    return edge_order(spec, e) == chain_tau(spec)


def end_contraction_identity(spec: ChainSpec | Sequence[int]) -> int:
    """``tau(G/e_0) tau(G/e_n) - tau(G) tau(G/e_0/e_n)``; always 1 for ``n >= 1``."""
    spec = _as_chain(spec)
    if spec.trivial:
        raise TrivialChain("identity needs at least one polygon")
    inv = chain_invariants(spec)
    return inv.tau_e0[-1] * inv.tau_contracts[-1] - inv.taus[-1] * inv.tau_e0_en[-1]


lemma52_identity = end_contraction_identity
