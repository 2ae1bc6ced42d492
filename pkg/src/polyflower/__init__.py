"""Sandpile groups of polygon chains and polygon flowers."""

from .chain import (
    ChainInvariants,
    chain_invariants,
    chain_tau,
    edge_coefficients,
    edge_order,
    is_generating_edge_chain,
    end_contraction_identity,
    lemma52_identity,
)
from .flower import (
    FlowerInvariants,
    PrimePartition,
    classify_edge,
    classify_edges,
    equal_petal_group,
    exists_generating_edge,
    flower_invariants,
    group_structure,
    group_via_partition,
    is_cyclic,
    m_value,
    min_generators,
    petal_generator_test,
    prime_partitions,
    reduced_relation_matrix,
    sunflower_group,
    thick_cycle_group,
)
from .graph import (
    ChainSpec,
    EdgeLabel,
    FlowerSpec,
    Multigraph,
    boundary,
    build_chain,
    build_flower,
    center,
    contract_edge,
    delete_edge,
    interior,
    laplacian,
    reduced_laplacian,
)
from .linalg import (
    AbelianGroup,
    determinant,
    determinant_divisors,
    group_from_matrix,
    smith_normal_form,
)
from .oracle import (
    element_order_oracle,
    edge_generator_oracle,
    sandpile_group_cycle_cut,
    sandpile_group_laplacian,
    tau_matrix_tree,
)

__version__ = "0.1.0"
