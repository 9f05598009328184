"""grpmetric: integral metrics on finite groups, with verified isometries.

Constructions: group-invariant metrics (Hamming, Lee, base-q, coordinate
last-difference, block variants, chain and extended metrics), the embeddings
relating them, weight enumerators, and brute-force checkers for metric axioms,
invariance, symmetry groups and regular representations.
"""

from .groups import (
    ChainReport,
    FiniteGroup,
    Subgroup,
    SubgroupChain,
    Transversal,
    coordinate_chain,
    cyclic,
    cyclic_subgroup_of_index,
    dihedral,
    divisor_chain,
    element_order,
    geometric_chain,
    make_chain,
    make_group,
    parse_group,
    product,
    quaternion,
    smallest_order2_subgroup,
    subgroup,
    subgroup_generated,
    tabulated,
    transversal,
    validate_chain,
)
from .metrics import (
    BlockPartition,
    MetricReport,
    MetricTable,
    brt_metric,
    chain_extended_metric,
    chain_metric,
    custom_metric,
    diagonal_chain_metric,
    extend_metric,
    hamming_metric,
    hamming_power_metric,
    homogeneous_metric,
    lee_metric,
    parse_metric,
    product_metric,
    pullback_metric,
    qadic_metric,
    rt_metric,
    validate_metric,
)
from .weights import (
    EnumeratorPolynomial,
    WeightFunction,
    chain_enumerator,
    geometric_enumerator,
    product_enumerator_check,
    weight_enumerator,
    weight_function,
)
from .embeddings import (
    EmbeddingMap,
    HammingSpace,
    IsometryError,
    base_q_isometry,
    chain_isometry,
    compose,
    cyclic_embedding,
    cyclic_embedding_count,
    cyclic_embedding_variants,
    cyclic_embedding_weight,
    lift_gauge_check,
    lift_isometry,
    rm1_embedding,
    rm1_generator_matrix,
    trivial_isometry,
)
from .isometry import (
    RegularRepresentation,
    SymmetryGroup,
    TransferResult,
    find_regular_subgroups,
    has_cyclic_representation,
    is_isometric_embedding,
    search_isometry,
    symmetry_group,
    symmetry_group_bruteforce,
    transfer,
)
from .fixtures import four_point_metric

__version__ = "0.1.0"
