"""Hilbert-scheme strata: dimensions, component counts, lifting verdicts.

Curves on the double surface with fixed numerical triple data (z, xi, eta)
form a locally closed stratum.  Over the locus where h1(O_R(Z + P - F))
vanishes, the stratum fibers over the flag space of pairs (cycle in
residual curve) times the linear system of the complementary class, with
affine fibers of dimension deg Z + chi(O_R(P - F)).  This module computes
those dimensions, the component counts coming from cycle distributions over
ruling lines, and the two worked analyses: thick 4-lines and general
self-pair triples on the quadric.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, TYPE_CHECKING

from .curves import (
    CohValue,
    CurveSpec,
    ZeroCycle,
    coh_curve,
    curve_chi,
    generic_member,
    is_known,
)
from .lattice import (
    DivClass,
    DomainError,
    Surface,
    SurfaceKind,
    class_genus,
    pairing,
    surface_coh,
)

if TYPE_CHECKING:
    from .triples import Triple


def dim_linear_system(surface: Surface, c: DivClass) -> int:
    """dim |O_F(c)| = h0 - 1."""
    return surface_coh(surface, c)[0] - 1


def dim_flag(surface: Surface, z: int, xi: DivClass) -> int:
    """Dimension of the dominating component of the flag space of pairs
    (cycle of degree z) in (curve of class xi): dim |xi| + z."""
    if not xi.effective:
        raise DomainError(f"{xi} is not effective")
    if z < 0:
        raise DomainError("cycle degree must be nonnegative")
    return dim_linear_system(surface, xi) + z


@lru_cache(maxsize=None)
def partitions_at_most(n: int, parts: int) -> int:
    """Number of partitions of n into at most ``parts`` parts."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    if parts == 0:
        return 0
    return partitions_at_most(n, parts - 1) + partitions_at_most(n - parts, parts)


class IrreducibilityKind(enum.Enum):
    IRREDUCIBLE = "IRREDUCIBLE"
    COMPONENTS = "COMPONENTS"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Irreducibility:
    kind: IrreducibilityKind
    count: Optional[int] = None

    def as_dict(self) -> dict:
        return {"kind": self.kind.value, "count": self.count}


IRREDUCIBLE = Irreducibility(IrreducibilityKind.IRREDUCIBLE)


def irreducibility(surface: Surface, z: int, xi: DivClass, eta: DivClass) -> Irreducibility:
    """Component structure of the stratum with the given numerics.

    On the plane every stratum is irreducible.  On the quadric a residual
    class with both coordinates positive has smooth connected generic
    member, hence one component; a pure ruling class (0, b) or (b, 0)
    contributes one component per partition of z into at most b parts
    (lines in the system are unlabeled), collapsing to irreducible when
    b = 1 or z <= 1.
    """
    if not (xi <= eta):
        raise DomainError(f"{xi} is not contained in {eta}")
    if surface.kind is SurfaceKind.DOUBLE_PLANE:
        return IRREDUCIBLE
    if surface.kind is SurfaceKind.GENERAL_DOUBLING:
        return Irreducibility(IrreducibilityKind.UNKNOWN)
    a, b = xi.coords
    if xi.is_zero or (a >= 1 and b >= 1):
        return IRREDUCIBLE
    count = partitions_at_most(z, a or b)
    if count <= 1:
        return IRREDUCIBLE
    return Irreducibility(IrreducibilityKind.COMPONENTS, count)


@dataclass(frozen=True)
class StratumReport:
    z: int
    xi: DivClass
    eta: DivClass
    dim_h_xi: int
    dim_d_z_xi: int
    dim_d_total: int
    fiber_dim: int
    stratum_dim: int
    fixed_support_dim: int
    on_v: bool
    irreducibility: Irreducibility

    def as_dict(self) -> dict:
        return {
            "z": self.z,
            "xi": list(self.xi.coords),
            "eta": list(self.eta.coords),
            "dim_h_xi": self.dim_h_xi,
            "dim_d_z_xi": self.dim_d_z_xi,
            "dim_d_total": self.dim_d_total,
            "fiber_dim": self.fiber_dim,
            "stratum_dim": self.stratum_dim,
            "fixed_support_dim": self.fixed_support_dim,
            "on_v": self.on_v,
            "irreducibility": self.irreducibility.as_dict(),
        }


def stratum_dimension(surface: Surface, z: int, xi: DivClass, eta: DivClass) -> StratumReport:
    """Dimension bookkeeping for the stratum with numerics (z, xi, eta).

    dim_d_total = (dim |xi| + z) + dim |eta - xi| counts the flag choices;
    the fiber adds deg Z + chi(O_R(P - F)).  The total is the stratum
    dimension whenever the generic h1 vanishes (reported as on_v); the
    fixed-support variant subtracts dim |xi|.
    """
    if not xi.effective or not eta.effective:
        raise DomainError("classes must be effective")
    if not (xi <= eta):
        raise DomainError(f"{xi} is not contained in {eta}")
    if xi.is_zero and z > 0:
        raise DomainError("an empty residual curve carries no cycle")
    dim_h_xi = dim_linear_system(surface, xi)
    dim_d_z_xi = dim_h_xi + z
    dim_d_total = dim_d_z_xi + dim_linear_system(surface, eta - xi)
    member = generic_member(surface, xi)
    twist = eta - surface.ribbon_twist
    fiber = z + curve_chi(member, twist)
    table = coh_curve(member, twist, ZeroCycle(z))
    on_v = is_known(table.h1) and table.h1 == 0
    stratum = dim_d_total + fiber
    return StratumReport(
        z=z,
        xi=xi,
        eta=eta,
        dim_h_xi=dim_h_xi,
        dim_d_z_xi=dim_d_z_xi,
        dim_d_total=dim_d_total,
        fiber_dim=fiber,
        stratum_dim=stratum,
        fixed_support_dim=stratum - dim_h_xi,
        on_v=on_v,
        irreducibility=irreducibility(surface, z, xi, eta),
    )


@dataclass(frozen=True)
class LiftingReport:
    lifts: bool
    h1: CohValue
    base_component: str
    base_dim: Optional[int]

    def as_dict(self) -> dict:
        return {
            "lifts": self.lifts,
            "h1": self.h1 if is_known(self.h1) else "UNKNOWN",
            "base_component": self.base_component,
            "base_dim": self.base_dim,
        }


def lifting_check(t: "Triple") -> LiftingReport:
    """Whether a general deformation of the residual curve lifts to the curve.

    True exactly when h1(O_R(Z + P - F)) = 0 is decidable; the report names
    the linear system of residual curves that is then dominated.
    """
    if t.residual.is_empty:
        raise DomainError("lifting concerns a nonempty residual curve")
    s = t.surface
    table = coh_curve(t.residual, t.part - s.ribbon_twist, t.cycle)
    lifts = is_known(table.h1) and table.h1 == 0
    xi = t.residual.total_class
    try:
        base_dim = dim_linear_system(s, xi)
    except DomainError:
        base_dim = None
    return LiftingReport(lifts, table.h1, f"|{xi}|", base_dim)


NOT_SPECIALIZATION = "NOT_SPECIALIZATION"
DIMENSION_OBSTRUCTION = "DIMENSION_OBSTRUCTION"


@dataclass(frozen=True)
class ThickFourLineReport:
    genus: int
    hom_dim_proj: int
    on_x_codim: int
    fixed_line_dim: int
    total_dim: int
    disjoint_pairs_dim: int
    verdict: str

    def as_dict(self) -> dict:
        return {
            "genus": self.genus,
            "hom_dim_proj": self.hom_dim_proj,
            "on_x_codim": self.on_x_codim,
            "fixed_line_dim": self.fixed_line_dim,
            "total_dim": self.total_dim,
            "disjoint_pairs_dim": self.disjoint_pairs_dim,
            "verdict": self.verdict,
        }


def thick_four_line_analysis(genus: int) -> ThickFourLineReport:
    """Dimension count for thick 4-lines of the given genus on the double quadric.

    The 4-lines with fixed support come from a projective space of
    homomorphism data of dimension 5 - 3g; lying on the double surface cuts
    a linear condition of codimension 4 - g (characteristic not 2), leaving
    1 - 2g, and moving the support line gives 2 - 2g.  The disjoint unions
    of two double lines of total genus g form a distinct irreducible family
    whose dimension, recomputed from the stratum bookkeeping, is also
    2 - 2g; equality of dimensions means neither family degenerates to the
    other.
    """
    if genus > -1:
        raise DomainError("the thick 4-line counts apply to genus at most -1")
    hom_dim_proj = 5 - 3 * genus
    on_x_codim = 4 - genus
    fixed_line_dim = 1 - 2 * genus
    total_dim = 2 - 2 * genus
    if (hom_dim_proj + 1) - on_x_codim - 1 != fixed_line_dim:
        raise DomainError("internal identity of the 4-line count broken")
    quadric = Surface.double_quadric()
    pairs = stratum_dimension(
        quadric, 1 - genus, DivClass.of(2, 0), DivClass.of(2, 0)
    ).stratum_dim
    verdict = NOT_SPECIALIZATION if total_dim == pairs else DIMENSION_OBSTRUCTION
    return ThickFourLineReport(
        genus=genus,
        hom_dim_proj=hom_dim_proj,
        on_x_codim=on_x_codim,
        fixed_line_dim=fixed_line_dim,
        total_dim=total_dim,
        disjoint_pairs_dim=pairs,
        verdict=verdict,
    )


@dataclass(frozen=True)
class DegenerationReport:
    a: int
    b: int
    z: int
    smooth_piece_h1: CohValue
    section_piece_h1: CohValue
    union_h1: CohValue
    all_vanish: bool

    def as_dict(self) -> dict:
        def render(v: CohValue):
            return v if is_known(v) else "UNKNOWN"

        return {
            "a": self.a,
            "b": self.b,
            "z": self.z,
            "smooth_piece_h1": render(self.smooth_piece_h1),
            "section_piece_h1": render(self.section_piece_h1),
            "union_h1": render(self.union_h1),
            "all_vanish": self.all_vanish,
        }


def general_zpp_quadric(a: int, b: int, z: int) -> DegenerationReport:
    """Degeneration chain for the general self-pair triple of type (a, b).

    Requires 1 < a < b and a nonempty cycle.  The class (a, b) degenerates
    to the union of a smooth rational curve C of type (1, b - a + 1),
    carrying the cycle, and a bidegree-(a-1, a-1) curve E cut by a surface
    of degree a - 1 missing the cycle.  The chain verifies
    h1(O_C(Z + C - Q)) = 0, h1 of the E-piece = 0, and concludes the
    vanishing on the union, which lifts a general deformation.
    """
    if not (1 < a < b):
        raise DomainError(
            "the degeneration needs 1 < a < b; type (1, b) is the rational-curve case"
        )
    if z < 1:
        raise DomainError("the degeneration needs a nonempty cycle")
    quadric = Surface.double_quadric()
    part = DivClass.of(a, b)
    smooth = CurveSpec.integral(quadric, DivClass.of(1, b - a + 1))
    section = CurveSpec.integral(quadric, DivClass.of(a - 1, a - 1))
    union = CurveSpec.union(smooth, section)
    twist = part - quadric.ribbon_twist
    cycle = ZeroCycle.on_lines(z, 0)  # the cycle sits on the smooth piece
    tab_smooth = coh_curve(smooth, twist - section.total_class, ZeroCycle(z))
    tab_section = coh_curve(section, twist)
    tab_union = coh_curve(union, twist, cycle)
    vals = (tab_smooth.h1, tab_section.h1, tab_union.h1)
    all_vanish = all(is_known(v) and v == 0 for v in vals)
    return DegenerationReport(a, b, z, *vals, all_vanish)
