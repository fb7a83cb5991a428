"""Minimal free resolutions of monomial ideals by certified iterated mapping cones."""

from .betti import BettiTable, convolve, depth, is_level, koszul_pure_powers, proj_dim, regularity
from .errors import (
    CertificationError,
    ConeBettiError,
    DomainError,
    InputError,
    ParseError,
    ResourceError,
)
from .mapping_cone import (
    CertifiedOrder,
    Engine,
    EngineResult,
    FallbackPolicy,
    StepWitness,
    WitnessKind,
    betti_engine,
    check_step,
    find_decreasing_order,
)
from .monomial import (
    MonomialIdeal,
    alexander_dual,
    colon,
    contains,
    disjoint_components,
    minimalize,
    polarize,
)
from .oracle import SimplicialComplex, homology_ranks, multigraded_betti, oracle_betti, upper_koszul

__version__ = "0.1.0"
