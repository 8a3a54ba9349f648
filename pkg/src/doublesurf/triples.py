"""The triple invariant of a curve on a double surface.

A curve C on X = 2F meets the base surface in a divisorial part P plus a
zero-dimensional residual Z, and removing the whole intersection from C
leaves the residual curve R.  The triple (Z, R, P) carries all the
numerical data used here: the genus and degree formulas, enumeration of the
possible triples for a fixed (degree, genus), the dimension of the family
of curves sharing one triple, and the existence cascade deciding whether a
triple arises from a curve at all.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

from .curves import (
    AllocationError,
    CohValue,
    CurveSpec,
    ShapeKind,
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
    degree,
    pairing,
    surface_coh,
)


@dataclass(frozen=True)
class Triple:
    """A numerical triple: cycle degree data, residual curve, divisorial part."""

    surface: Surface
    cycle: ZeroCycle
    residual: CurveSpec
    part: DivClass

    def __post_init__(self) -> None:
        if self.residual.surface != self.surface:
            raise DomainError("residual curve lives on a different surface")
        if self.part.rank != self.surface.pic_rank:
            raise DomainError(f"class {self.part} does not live on {self.surface.token}")
        if not self.part.effective:
            raise DomainError(f"the divisorial part {self.part} must be effective")
        if not (self.residual.total_class <= self.part):
            raise DomainError(
                f"residual class {self.residual.total_class} is not contained in {self.part}"
            )
        if self.residual.is_empty and self.cycle.degree:
            raise DomainError("an empty residual curve forces an empty cycle")


def triple_genus(t: Triple) -> int:
    """p_a(C) = p_a(P) + p_a(R) + R.F - deg Z - 1.

    The empty residual curve has p_a = 1 by convention, so the formula
    degenerates to p_a(P) for curves contained in the base surface.
    """
    s = t.surface
    return (
        class_genus(s, t.part)
        + class_genus(s, t.residual.total_class)
        + pairing(s, t.residual.total_class, s.ribbon_twist)
        - t.cycle.degree
        - 1
    )


def triple_degree(t: Triple) -> int:
    """deg C = deg R + deg P."""
    s = t.surface
    return degree(s, t.part) + degree(s, t.residual.total_class)


def fiber_dimension(t: Triple) -> int:
    """Dimension deg Z + chi(O_R(P - F)) of the family of curves with this triple."""
    if t.residual.is_empty:
        raise DomainError("the fiber dimension needs a nonempty residual curve")
    return t.cycle.degree + curve_chi(t.residual, t.part - t.surface.ribbon_twist)


class TripleRow(NamedTuple):
    """Numerical triple data: cycle degree and the two divisor classes."""

    z: int
    xi: Optional[DivClass]  # residual class; None marks the empty residual curve
    eta: DivClass


def enumerate_triples(surface: Surface, deg: int, genus: int) -> list[TripleRow]:
    """All numerical triples of total degree ``deg`` and genus ``genus``.

    Classes satisfy 0 <= xi <= eta with deg(xi) + deg(eta) = deg; the cycle
    degree z is then determined by the genus formula and must be
    nonnegative.  The empty-residual stratum appears when the genus and
    degree are carried by eta alone.  Rows come in reverse-lexicographic
    order on (xi, eta).
    """
    if surface.kind is SurfaceKind.GENERAL_DOUBLING:
        raise DomainError("enumeration needs the full class lattice (plane or quadric)")
    if deg < 1:
        raise DomainError("the total degree must be at least 1")
    twist = surface.ribbon_twist
    rows = []
    for eta in _effective_classes(surface, deg):
        deg_eta = degree(surface, eta)
        deg_xi = deg - deg_eta
        if deg_xi < 0:
            continue
        for xi in _subclasses_of_degree(surface, eta, deg_xi):
            z = (
                class_genus(surface, eta)
                + class_genus(surface, xi)
                + pairing(surface, xi, twist)
                - 1
                - genus
            )
            if z < 0:
                continue
            if xi.is_zero:
                if z != 0:
                    continue
                rows.append(TripleRow(0, None, eta))
            else:
                rows.append(TripleRow(z, xi, eta))
    zero = tuple(0 for _ in range(surface.pic_rank))
    rows.sort(key=lambda r: (r.xi.coords if r.xi else zero, r.eta.coords), reverse=True)
    return rows


def _effective_classes(surface: Surface, max_degree: int):
    if surface.kind is SurfaceKind.DOUBLE_PLANE:
        for p in range(max_degree + 1):
            yield DivClass.of(p)
    else:
        for p1 in range(max_degree + 1):
            for p2 in range(max_degree + 1 - p1):
                yield DivClass.of(p1, p2)


def _subclasses_of_degree(surface: Surface, eta: DivClass, deg_xi: int):
    if surface.kind is SurfaceKind.DOUBLE_PLANE:
        if deg_xi <= eta.coords[0]:
            yield DivClass.of(deg_xi)
    else:
        e1, e2 = eta.coords
        for x1 in range(max(0, deg_xi - e2), min(e1, deg_xi) + 1):
            yield DivClass.of(x1, deg_xi - x1)


def realize(surface: Surface, row: TripleRow, general: bool = True) -> Triple:
    """Build a triple on the generic shape of the residual class."""
    if row.xi is None:
        residual = CurveSpec.empty(surface)
    else:
        residual = generic_member(surface, row.xi)
    return Triple(surface, ZeroCycle(row.z, general=general), residual, row.eta)


# --------------------------------------------------------------------------
# Existence cascade
# --------------------------------------------------------------------------


class Outcome(enum.Enum):
    EXISTS = "EXISTS"
    EXISTS_SPECIAL = "EXISTS_SPECIAL"
    NOT_EXISTS = "NOT_EXISTS"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class Conditions:
    """Per-criterion record; None marks a condition the rules cannot decide."""

    h1_vanishes: Optional[bool]
    globally_generated_surrogate: Optional[bool]
    regularity_2_5_2: Optional[bool]
    vanishing_2_5_3: Optional[bool]

    def as_dict(self) -> dict:
        return {
            "h1_vanishes": self.h1_vanishes,
            "globally_generated_surrogate": self.globally_generated_surrogate,
            "regularity_2_5_2": self.regularity_2_5_2,
            "vanishing_2_5_3": self.vanishing_2_5_3,
        }


@dataclass(frozen=True)
class ExistenceVerdict:
    outcome: Outcome
    code: str
    reason: str
    dim: Optional[int]
    dim_kind: Optional[str]  # "fiber" or "linear_system"
    conditions: Conditions
    failed: tuple[str, ...] = ()
    generality_assumed: bool = False

    def as_dict(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "code": self.code,
            "reason": self.reason,
            "dim": self.dim,
            "dim_kind": self.dim_kind,
            "conditions": self.conditions.as_dict(),
            "failed": list(self.failed),
            "generality_assumed": self.generality_assumed,
        }


# Stable justification codes carried by every verdict.
IN_F = "IN_F"
PRACTICAL_3 = "PRACTICAL_3"
PRACTICAL_2 = "PRACTICAL_2"
DIRECT = "DIRECT"
NO_QUARTIC_GENUS2 = "NO_QUARTIC_GENUS2"
COMPLETE_INTERSECTION = "COMPLETE_INTERSECTION"
RATIONAL_DEGREE_POSITIVE = "RATIONAL_DEGREE_POSITIVE"
RATIONAL_NEEDS_CYCLE = "RATIONAL_NEEDS_CYCLE"
LINE_UNION_MEETS_ALL = "LINE_UNION_MEETS_ALL"
LINE_UNION_MISSES_LINE = "LINE_UNION_MISSES_LINE"
GENERAL_POSITION_DEGENERATION = "GENERAL_POSITION_DEGENERATION"
DOUBLE_LINE_ALWAYS = "DOUBLE_LINE_ALWAYS"

SPECIAL_TABLE_VERSION = 1


def _known_zero(value: CohValue) -> Optional[bool]:
    if not is_known(value):
        return None
    return value == 0


def _generation_surrogate(t: Triple, twist: DivClass) -> Optional[bool]:
    """Decide whether sections of O_R(Z + P - F) generate along the cycle.

    Empty cycles impose nothing.  On shapes that decompose into rational
    pieces of computable degrees, a general cycle is generated exactly when
    every piece carrying cycle points has nonnegative twisted degree (a
    section with nonzero polar part at a general point exists iff the h0 of
    the piece drops when one point is removed).  Anything subtler stays
    undecided.
    """
    if t.cycle.degree == 0:
        return True
    r = t.residual
    s = t.surface
    if not t.cycle.general:
        return None
    if r.kind is ShapeKind.INTEGRAL and class_genus(s, r.total_class) == 0:
        pieces = [(t.cycle.degree + pairing(s, r.total_class, twist), t.cycle.degree)]
    elif r.kind is ShapeKind.DISJOINT_LINES:
        alloc = t.cycle.allocation_for(r)
        ldeg = pairing(s, r.line_class, twist)
        pieces = [(z_i + ldeg, z_i) for z_i in alloc]
    else:
        return None
    return all(m >= 0 for m, z_i in pieces if z_i > 0)


def _fiber_if_unobstructed(t: Triple, h1_value: CohValue) -> Optional[int]:
    if is_known(h1_value) and h1_value == 0:
        return fiber_dimension(t)
    return None


def _case_no_quartic(t: Triple, tab_cycle) -> Optional[ExistenceVerdict]:
    if (
        t.surface.kind is SurfaceKind.DOUBLE_QUADRIC
        and t.cycle.degree == 1
        and t.residual.kind is ShapeKind.INTEGRAL
        and t.residual.total_class.coords == (1, 1)
        and t.part.coords == (1, 1)
    ):
        return _verdict(
            Outcome.NOT_EXISTS,
            NO_QUARTIC_GENUS2,
            "the data would force a space curve of degree 4 and genus 2, and no such curve exists",
        )
    return None


def _case_complete_intersection(t: Triple, tab_cycle) -> Optional[ExistenceVerdict]:
    if (
        t.surface.kind is SurfaceKind.DOUBLE_QUADRIC
        and t.cycle.degree == 0
        and t.residual.kind is ShapeKind.INTEGRAL
        and t.residual.total_class == t.part
        and t.part.coords[0] == t.part.coords[1]
        and t.part.coords[0] >= 1
    ):
        return _verdict(
            Outcome.EXISTS_SPECIAL,
            COMPLETE_INTERSECTION,
            "a surface of the same bidegree through the curve cuts the double "
            "surface in a curve with this triple",
            dim=_fiber_if_unobstructed(t, tab_cycle.h1),
        )
    return None


_RATIONAL_SELF_TYPES = lambda a, b: (a == 1 and b != 1) or (b == 1 and a != 1) or (a, b) in ((1, 0), (0, 1))


def _case_rational_self(t: Triple, tab_cycle) -> Optional[ExistenceVerdict]:
    if (
        t.surface.kind is not SurfaceKind.DOUBLE_QUADRIC
        or t.residual.kind is not ShapeKind.INTEGRAL
        or t.residual.total_class != t.part
    ):
        return None
    a, b = t.part.coords
    if not _RATIONAL_SELF_TYPES(a, b):
        return None
    if t.cycle.degree >= 1:
        return _verdict(
            Outcome.EXISTS_SPECIAL,
            RATIONAL_DEGREE_POSITIVE,
            "on a smooth rational curve equal to its divisorial part the triple "
            "arises exactly when the cycle is nonempty",
            dim=_fiber_if_unobstructed(t, tab_cycle.h1),
        )
    return _verdict(
        Outcome.NOT_EXISTS,
        RATIONAL_NEEDS_CYCLE,
        "an empty cycle here would split the restricted conormal sequence of the "
        "curve in its double surface, which it does not",
    )


def _case_line_union(t: Triple, tab_cycle) -> Optional[ExistenceVerdict]:
    r = t.residual
    if t.surface.kind is not SurfaceKind.DOUBLE_QUADRIC or r.kind is not ShapeKind.DISJOINT_LINES:
        return None
    ruling_index = 0 if r.line_class.coords == (1, 0) else 1
    if t.part.coords[1 - ruling_index] != 0:
        return None  # the divisorial part must consist of the same ruling
    alloc = t.cycle.allocation_for(r)
    if all(z_i >= 1 for z_i in alloc):
        return _verdict(
            Outcome.EXISTS,
            LINE_UNION_MEETS_ALL,
            "the cycle meets every line of the union, which is exactly the "
            "existence criterion for unions of ruling lines",
            dim=fiber_dimension(t),
        )
    return _verdict(
        Outcome.NOT_EXISTS,
        LINE_UNION_MISSES_LINE,
        "some line of the union misses the cycle, so no curve restricts to this triple",
    )


def _case_general_self_pair(t: Triple, tab_cycle) -> Optional[ExistenceVerdict]:
    if (
        t.surface.kind is not SurfaceKind.DOUBLE_QUADRIC
        or t.residual.kind is not ShapeKind.INTEGRAL
        or t.residual.total_class != t.part
        or not t.cycle.general
        or t.cycle.degree < 1
    ):
        return None
    a, b = t.part.coords
    if not (1 < a < b):
        return None
    from .strata import general_zpp_quadric  # deferred: strata builds on this module

    chain = general_zpp_quadric(a, b, t.cycle.degree)
    if not chain.all_vanish:
        return None
    return _verdict(
        Outcome.EXISTS_SPECIAL,
        GENERAL_POSITION_DEGENERATION,
        "a union of a rational curve and a bidegree-(a-1, a-1) curve degenerates "
        "the class with vanishing h1, so a general deformation realizes the triple",
        dim=_fiber_if_unobstructed(t, tab_cycle.h1),
        generality_assumed=True,
    )


def _case_doubling_double_line(t: Triple, tab_cycle) -> Optional[ExistenceVerdict]:
    s = t.surface
    if (
        s.kind is not SurfaceKind.GENERAL_DOUBLING
        or t.residual.kind is not ShapeKind.INTEGRAL
        or t.residual.total_class.coords != (1, 0)
        or t.part.coords != (1, 0)
    ):
        return None
    if t.cycle.degree < s.d - 1:
        return None  # the matching double line would need positive genus
    return _verdict(
        Outcome.EXISTS_SPECIAL,
        DOUBLE_LINE_ALWAYS,
        "every double line supported on the distinguished line lies on the double "
        "surface, realizing the triple although both existence conditions may fail",
        dim=_fiber_if_unobstructed(t, tab_cycle.h1),
    )


#: Versioned table of special patterns, scanned in order after the practical
#: conditions fail.  Each entry inspects the triple and the table of
#: O_R(Z + P - F) and either claims the verdict or passes.
SPECIAL_TABLE = (
    (NO_QUARTIC_GENUS2, _case_no_quartic),
    (COMPLETE_INTERSECTION, _case_complete_intersection),
    (RATIONAL_DEGREE_POSITIVE, _case_rational_self),
    (LINE_UNION_MEETS_ALL, _case_line_union),
    (GENERAL_POSITION_DEGENERATION, _case_general_self_pair),
    (DOUBLE_LINE_ALWAYS, _case_doubling_double_line),
)


def _verdict(outcome, code, reason, dim=None, dim_kind=None, generality_assumed=False):
    if dim is not None and dim_kind is None:
        dim_kind = "fiber"
    return ExistenceVerdict(
        outcome, code, reason, dim, dim_kind, Conditions(None, None, None, None),
        generality_assumed=generality_assumed,
    )


def check_existence(t: Triple) -> ExistenceVerdict:
    """Decide whether the triple arises from a curve on the double surface.

    The cascade tries, in order: the empty-residual case (the curve lies in
    the base surface); the practical vanishing h1(O_R(P - F)) = 0, which
    settles every cycle at once; the regularity condition
    h1(O_R(Z + P - F - H)) = 0; the direct pair, vanishing of
    h1(O_R(Z + P - F)) plus a decidable generation surrogate; and finally a
    table of special patterns.  Anything left is Inconclusive, never
    guessed.
    """
    s = t.surface
    if t.residual.is_empty:
        dim = surface_coh(s, t.part)[0] - 1
        cond = Conditions(True, True, True, True)
        return ExistenceVerdict(
            Outcome.EXISTS,
            IN_F,
            "the residual curve is empty, so the curve lies in the base surface "
            "and moves in the complete linear system of its class",
            dim,
            "linear_system",
            cond,
        )
    twist = t.part - s.ribbon_twist
    tab_untwisted = coh_curve(t.residual, twist)
    tab_cycle = coh_curve(t.residual, twist, t.cycle)
    tab_reg = coh_curve(t.residual, twist - s.hyperplane, t.cycle)
    van3 = _known_zero(tab_untwisted.h1)
    reg2 = _known_zero(tab_reg.h1)
    h1v = _known_zero(tab_cycle.h1)
    gg = _generation_surrogate(t, twist)
    cond = Conditions(h1v, gg, reg2, van3)

    def exists(code: str, reason: str) -> ExistenceVerdict:
        dim = fiber_dimension(t)
        if dim < 0:
            raise DomainError(f"negative fiber dimension {dim}; cascade logic broken")
        return ExistenceVerdict(Outcome.EXISTS, code, reason, dim, "fiber", cond)

    if van3 is True:
        return exists(
            PRACTICAL_3,
            "h1(O_R(P - F)) = 0, which settles existence for every cycle on this curve",
        )
    if reg2 is True:
        return exists(
            PRACTICAL_2,
            "h1(O_R(Z + P - F - H)) = 0; regularity along the hyperplane class "
            "forces both existence conditions",
        )
    if h1v is True and gg is True:
        return exists(
            DIRECT,
            "h1(O_R(Z + P - F)) = 0 and global sections generate along the cycle",
        )
    for _code, case in SPECIAL_TABLE:
        special = case(t, tab_cycle)
        if special is not None:
            return ExistenceVerdict(
                special.outcome,
                special.code,
                special.reason,
                special.dim,
                special.dim_kind,
                cond,
                generality_assumed=special.generality_assumed,
            )
    failed = []
    for name, value in (
        ("vanishing_2_5_3", van3),
        ("regularity_2_5_2", reg2),
        ("h1_vanishes", h1v),
        ("globally_generated_surrogate", gg),
    ):
        failed.append(f"{name}={'false' if value is False else 'unknown'}")
    return ExistenceVerdict(
        Outcome.INCONCLUSIVE,
        "UNDECIDED",
        "no practical condition holds and no special pattern applies",
        None,
        None,
        cond,
        failed=tuple(failed),
    )
