"""Central extensions of finite abelian groups as perturbed direct products.

The package computes second cohomology with trivial action by exact linear
algebra over Z/n, realizes the twisted products as Cayley tables and decides
several isomorphism notions between them, each backed by a brute-force oracle.
"""
from .cohomology import (
    Cochain2, CocycleSpace, CohomologyClass, OneCochain, brute_force_spaces, class_equal,
    class_of, class_order, class_power, coboundary_of, compute_spaces, corestrict,
    is_coboundary, is_cocycle, is_symmetric, pullback, pushforward, restrict, trivial_cochain,
)
from .config import RunConfig
from .deciders import (
    IsoDecision, decide, decide_abstract_iso, decide_g2_iso, decide_hg2_iso, decide_upper_a_iso,
    decide_upper_c_iso, decide_upper_iso, localize, oracle_g2_iso, oracle_hg2_iso,
    oracle_upper_iso, validate_certificate,
)
from .errors import (
    BoundExceeded, CapExceeded, ExtlabError, HypothesisNotMet, InvalidGroup, NotACocycle,
    NotAHomomorphism,
)
from .extensions import MatrixHom, PerturbedProduct, assemble_hom, decompose_hom, perturbed_product
from .groups import FiniteGroup, GroupMap, Subgroup, build_group, direct_product, preset
from .modlinalg import AbelianModule, module_from_factors
from .theorems import verify_theorem

__version__ = "0.1.0"

__all__ = [
    "Cochain2", "CocycleSpace", "CohomologyClass", "OneCochain", "brute_force_spaces",
    "class_equal", "class_of", "class_order", "class_power", "coboundary_of", "compute_spaces",
    "corestrict", "is_coboundary", "is_cocycle", "is_symmetric", "pullback", "pushforward",
    "restrict", "trivial_cochain", "RunConfig", "IsoDecision", "decide", "decide_abstract_iso",
    "decide_g2_iso", "decide_hg2_iso", "decide_upper_a_iso", "decide_upper_c_iso",
    "decide_upper_iso", "localize", "oracle_g2_iso", "oracle_hg2_iso", "oracle_upper_iso",
    "validate_certificate", "BoundExceeded", "CapExceeded", "ExtlabError", "HypothesisNotMet",
    "InvalidGroup", "NotACocycle", "NotAHomomorphism", "MatrixHom", "PerturbedProduct",
    "assemble_hom", "decompose_hom", "perturbed_product", "FiniteGroup", "GroupMap", "Subgroup",
    "build_group", "direct_product", "preset", "AbelianModule", "module_from_factors",
    "verify_theorem", "__version__",
]
