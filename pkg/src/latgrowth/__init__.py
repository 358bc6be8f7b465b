"""Lattice animals on Z^d: exact enumeration, growth and threshold bounds, percolation.

The package splits into small layers: ``lattice`` fixes coordinate and
edge-order conventions, ``animals`` defines the animal kinds and their
boundary statistics, ``counting`` enumerates them exactly, ``oracle``
re-derives small counts naively for cross-checking, ``eden`` encodes
site animals as growth-history bit strings, ``bounds`` holds the
analytic translation machinery, ``percolation`` runs Monte Carlo box
experiments, and ``cli`` ties everything into one executable.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .animals import (
    BoundaryStats,
    LatticeAnimal,
    MalformedAnimalError,
    bond_animal,
    boundary_stats,
    interface_boundary_2d,
    is_interface_2d,
    site_animal,
)
from .bounds import (
    Bound,
    CertificateRow,
    Expansion,
    RefinedGrowthBound,
    RefinedThresholdBound,
    cap_envelope,
    crude_growth_upper,
    evaluate_expansion,
    expansion_names,
    format_bound,
    growth_from_ratio,
    growth_lower_from_threshold_upper,
    kesten_certificate,
    kesten_growth_upper,
    probability_from_ratio,
    ratio_from_growth,
    ratio_from_probability,
    refined_growth_upper,
    refined_threshold_lower,
    stratum_growth_cap,
    threshold_lower_from_growth_upper,
)
from .counting import (
    BudgetExceededError,
    CountResult,
    RatioHistogram,
    count_animals,
    iter_animals,
    ratio_histogram,
)
from .eden import (
    DecodeError,
    EdenCode,
    EdenTree,
    TurnBoundCheck,
    check_turn_bound,
    code_length,
    eden_decode,
    eden_encode,
    ijq_upper_bound,
    max_turns_observed,
)
from .percolation import (
    PercConfig,
    PercEstimate,
    UnionFind,
    cluster_partition,
    cluster_tail,
    crossing_probability,
    estimate_threshold,
)
