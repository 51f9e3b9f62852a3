"""holoknot: invariants of framed holonomic knots.

A framed holonomic knot is the 2-jet curve t -> (f(t), f'(t), f''(t)) of a
circle function f whose 1-jet curve immerses. This package computes its
planar diagram, the Whitney index and self-linking number, the split
refinement of the self-linking number, Legendrian front censuses, knot-class
identification, and detects the bifurcations along paths in function space.
"""

__version__ = "0.1.0"

from .builder import CensusPlan, build_from_census, kink_function, plan_for_target
from .diagram import (
    Arc,
    Crossing,
    DoublePoint,
    EmbeddingReport,
    FramedDiagram,
    ValidationReport,
    build_diagram,
    embedding_check,
    find_double_points,
    validate_diagram,
)
from .generate import DistinguishedPair, generate_range, search_distinguishing_pair
from .homotopy import (
    HomotopyPath,
    Stage,
    align_critical_points,
    graph_flow,
    immersion_margin,
    regular_homotopy,
)
from .invariants import (
    PairCensus,
    PairData,
    SplitInvariants,
    cyclic_distance,
    delta,
    pair_census,
    pair_count,
    self_linking,
    split_invariants,
    whitney_by_degree,
    whitney_by_minima,
    whitney_formula,
)
from .isotopy import (
    FunctionPath,
    InvariantTrace,
    IsotopyEvent,
    braid_normalize,
    check_split_via_braid,
    detect_events,
    interpolate,
    monitor_invariants,
)
from .legendrian import (
    BoundReport,
    CombinatorialFront,
    FrontCounts,
    braid_bound_check,
    build_front,
    front_census,
    front_invariants,
    genus_bound_check,
)
from .oracle import (
    CrossingCode,
    KnotTableEntry,
    LaurentPolynomial,
    from_pd_code,
    identify,
    jones_in_a,
    kauffman_bracket,
    knot_table,
    to_crossing_code,
)
from .trig import (
    CriticalPoint,
    MarginReport,
    MorseProfile,
    Tolerances,
    TrigPolynomial,
    critical_points,
    evaluate_jets,
    genericity_margins,
    morse_perturb,
    periodic_bump,
    plateau_bump,
)

__all__ = [name for name in dir() if not name.startswith("_")]
