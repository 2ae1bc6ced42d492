"""Brute-force ground truth computed directly on the graph.

Nothing here uses the chain or flower formulas: spanning trees come from the
matrix-tree theorem, and the sandpile group from two presentations, the
reduced Laplacian and the cycle-plus-cut lattice in the edge group.
"""

from __future__ import annotations

from math import gcd

from .errors import NotPlanarDecomposed
from .graph import EdgeLabel, Multigraph, contract_edge, reduced_laplacian, require_connected
from .linalg import AbelianGroup, IntMatrix, determinant, generator_order, group_from_matrix

__all__ = [
    "tau_matrix_tree",
    "sandpile_group_laplacian",
    "cycle_cut_matrix",
    "sandpile_group_cycle_cut",
    "edge_generator_oracle",
    "element_order_oracle",
]


def tau_matrix_tree(g: Multigraph, sink: int = 0) -> int:
    """Number of spanning trees as ``det`` of the reduced Laplacian."""
    require_connected(g)
    return determinant(reduced_laplacian(g, sink))


def sandpile_group_laplacian(g: Multigraph, sink: int = 0) -> AbelianGroup:
    require_connected(g)
    if g.n == 1:
        return AbelianGroup()
    return group_from_matrix(reduced_laplacian(g, sink))


def cycle_cut_matrix(g: Multigraph) -> IntMatrix:
    """Rows: bounded face cycles, then the vertex cuts ``c_v`` for ``v != 0``.

    Signs follow the stored edge directions: an edge counts ``+1`` in ``c_v``
    when ``v`` is its tail and ``-1`` when ``v`` is its head.
    """
    if g.faces is None:
        raise NotPlanarDecomposed("graph has no face cycles")
    require_connected(g)
    col = {e.label: j for j, e in enumerate(g.edges)}
    rows: IntMatrix = []
    for face in g.faces:
        row = [0] * g.m
        for lab, s in face:
            row[col[lab]] += s
        rows.append(row)
    for v in range(1, g.n):
        row = [0] * g.m
        for j, e in enumerate(g.edges):
            if e.tail == v:
                row[j] += 1
            if e.head == v:
                row[j] -= 1
        rows.append(row)
    if len(rows) != g.m:
        raise NotPlanarDecomposed(
            f"{len(g.faces)} faces + {g.n - 1} cuts do not match {g.m} edges"
        )
    return rows


def sandpile_group_cycle_cut(g: Multigraph) -> AbelianGroup:
    if g.m == 0:
        return AbelianGroup()
    return group_from_matrix(cycle_cut_matrix(g))


def edge_generator_oracle(g: Multigraph, e: EdgeLabel) -> bool:
    """True iff ``gcd(tau(g), tau(g / e)) == 1``."""
    return gcd(tau_matrix_tree(g), tau_matrix_tree(contract_edge(g, e))) == 1


def element_order_oracle(g: Multigraph, e: EdgeLabel) -> int:
    """Order of ``delta_e`` in ``Z^E / (cycles + cuts)``."""
    return generator_order(cycle_cut_matrix(g), g.index_of(e))
