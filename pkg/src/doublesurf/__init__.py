"""Exact invariants for curves on a double surface in projective 3-space."""

from .curves import (
    UNKNOWN,
    AllocationError,
    CohomTable,
    CurveSpec,
    ShapeError,
    ShapeKind,
    ZeroCycle,
    coh_curve,
    coh_double_line,
    coh_integral,
    coh_lines,
    coh_restriction_sequence,
    coh_union,
    curve_chi,
    generic_member,
    is_known,
)
from .lattice import (
    DivClass,
    DomainError,
    Surface,
    SurfaceKind,
    UnsupportedSurfaceError,
    canonical,
    class_genus,
    degree,
    intersect,
    line_degree,
    pairing,
    parse_surface,
    surface_chi,
    surface_coh,
)
from .strata import (
    DegenerationReport,
    Irreducibility,
    IrreducibilityKind,
    LiftingReport,
    StratumReport,
    ThickFourLineReport,
    dim_flag,
    dim_linear_system,
    general_zpp_quadric,
    irreducibility,
    lifting_check,
    partitions_at_most,
    stratum_dimension,
    thick_four_line_analysis,
)
from .triples import (
    Conditions,
    ExistenceVerdict,
    Outcome,
    Triple,
    TripleRow,
    check_existence,
    enumerate_triples,
    fiber_dimension,
    realize,
    triple_degree,
    triple_genus,
)

__version__ = "0.1.0"
