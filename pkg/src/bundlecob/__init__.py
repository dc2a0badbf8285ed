"""Exact Chern-number computations for split bundles over projective towers."""
from .decompose import decompose, external_product, question, reconstruct
from .geometry import (
    ChernVector,
    ClassSpec,
    GeneratorSpec,
    SpaceTower,
    chern_invariant,
    chern_vector,
    phi,
    phi_list,
    split_chern_classes,
    tangent_total_chern,
)
from .pairing import PairingMatrix, build_matrix, verification_report
from .partitions import (
    MonomialIndex,
    Partition,
    PartitionList,
    PartitionPair,
    enumerate_lists,
    enumerate_monomials,
    enumerate_pairs,
    enumerate_partitions,
)
from .relations import (
    first_bundle_relation,
    normal_cone_relation,
    projective_bundle_relation,
    verify_vanishing,
)
from .ring import GradedRing, TruncatedPolynomial, graded_ring, integrate, pushdown

__version__ = "0.1.0"
