"""Cohomology tables for twisted line bundles on curves in the base surface.

A curve R on the base surface is described by its class together with a
structural shape: an integral member of the class, a disjoint union of
ruling lines, a double line on the quadric, or a union of two pieces.  A
zero-dimensional divisor Z on R enters only through its degree and its
distribution over the components; positions are never recorded, and a
generality flag selects the generic-position branch of each rule.

Every computation returns an exact Euler characteristic together with
(h0, h1), where either value may be the explicit token UNKNOWN when the
shape rules cannot decide it.  UNKNOWN propagates; it is never silently
treated as zero.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Union

from .lattice import (
    DivClass,
    DomainError,
    Surface,
    SurfaceKind,
    class_genus,
    pairing,
    surface_chi,
    surface_coh,
)


class ShapeError(DomainError):
    """A curve shape does not match the operation or its base surface."""


class AllocationError(DomainError):
    """A zero-cycle cannot be distributed over the curve's components."""


class _UnknownType:
    """Singleton marker for a cohomology value the rules cannot decide."""

    _instance: Optional["_UnknownType"] = None

    def __new__(cls) -> "_UnknownType":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNKNOWN"

    def __bool__(self) -> bool:
        raise TypeError("UNKNOWN has no truth value; test with is_known()")


UNKNOWN = _UnknownType()

CohValue = Union[int, _UnknownType]


def is_known(value: CohValue) -> bool:
    return value is not UNKNOWN


class ShapeKind(enum.Enum):
    EMPTY = "empty"
    INTEGRAL = "integral"
    DISJOINT_LINES = "lines"
    DOUBLE_LINE = "double-line"
    UNION = "union"


_QUADRIC_RULINGS = ((1, 0), (0, 1))


@dataclass(frozen=True)
class CurveSpec:
    """An effective divisor on the base surface with structural annotation."""

    surface: Surface
    kind: ShapeKind
    total_class: DivClass
    line_class: Optional[DivClass] = None
    count: int = 0
    parts: Optional[tuple["CurveSpec", "CurveSpec"]] = None

    @classmethod
    def empty(cls, surface: Surface) -> "CurveSpec":
        zero = DivClass(tuple(0 for _ in range(surface.pic_rank)))
        return cls(surface, ShapeKind.EMPTY, zero)

    @classmethod
    def integral(cls, surface: Surface, total: DivClass) -> "CurveSpec":
        if total.rank != surface.pic_rank:
            raise ShapeError(f"class {total} does not live on {surface.token}")
        if not total.effective or total.is_zero:
            raise ShapeError(f"an integral curve needs a nonzero effective class, got {total}")
        return cls(surface, ShapeKind.INTEGRAL, total)

    @classmethod
    def disjoint_lines(cls, surface: Surface, line: DivClass, count: int) -> "CurveSpec":
        if surface.kind is not SurfaceKind.DOUBLE_QUADRIC:
            raise ShapeError("disjoint ruling lines only exist on the quadric")
        if line.coords not in _QUADRIC_RULINGS:
            raise ShapeError(f"{line} is not a ruling class of the quadric")
        if count < 1:
            raise ShapeError("need at least one line")
        return cls(surface, ShapeKind.DISJOINT_LINES, count * line, line_class=line, count=count)

    @classmethod
    def double_line(cls, surface: Surface, line: DivClass) -> "CurveSpec":
        if surface.kind is not SurfaceKind.DOUBLE_QUADRIC:
            raise ShapeError("double lines with square-zero support only exist on the quadric")
        if line.coords not in _QUADRIC_RULINGS:
            raise ShapeError(f"{line} is not a ruling class of the quadric")
        return cls(surface, ShapeKind.DOUBLE_LINE, 2 * line, line_class=line)

    @classmethod
    def union(cls, a: "CurveSpec", b: "CurveSpec") -> "CurveSpec":
        if a.surface != b.surface:
            raise ShapeError("union pieces must live on the same surface")
        for piece in (a, b):
            if piece.kind in (ShapeKind.UNION, ShapeKind.EMPTY):
                raise ShapeError("union pieces must be nonempty and not nested unions")
        return cls(a.surface, ShapeKind.UNION, a.total_class + b.total_class, parts=(a, b))

    @property
    def is_empty(self) -> bool:
        return self.kind is ShapeKind.EMPTY

    @property
    def allocation_slots(self) -> int:
        if self.kind is ShapeKind.EMPTY:
            return 0
        if self.kind is ShapeKind.DISJOINT_LINES:
            return self.count
        if self.kind is ShapeKind.UNION:
            return 2
        return 1

    def describe(self) -> str:
        if self.kind is ShapeKind.EMPTY:
            return "empty"
        if self.kind is ShapeKind.INTEGRAL:
            return f"integral {self.total_class}"
        if self.kind is ShapeKind.DISJOINT_LINES:
            return f"{self.count} disjoint lines of class {self.line_class}"
        if self.kind is ShapeKind.DOUBLE_LINE:
            return f"double line on {self.line_class}"
        a, b = self.parts
        return f"union[{a.describe()} + {b.describe()}]"


@dataclass(frozen=True)
class ZeroCycle:
    """Degree-and-allocation data for a zero-dimensional divisor Z on R.

    ``allocation`` lists per-component degrees (one slot per line of a line
    union, two slots for a union).  ``split`` is the pair (w, y) on a double
    line: w is the degree of the part cut by the reduced support line, y of
    the residual part.  ``general`` selects the generic-position branch of
    the rules; the split is always caller-supplied data, never inferred.
    """

    degree: int
    allocation: Optional[tuple[int, ...]] = None
    split: Optional[tuple[int, int]] = None
    general: bool = True

    def __post_init__(self) -> None:
        if self.degree < 0:
            raise AllocationError("a zero-cycle has nonnegative degree")
        if self.allocation is not None:
            alloc = tuple(int(a) for a in self.allocation)
            object.__setattr__(self, "allocation", alloc)
            if any(a < 0 for a in alloc) or sum(alloc) != self.degree:
                raise AllocationError(
                    f"allocation {alloc} does not distribute degree {self.degree}"
                )
        if self.split is not None:
            w, y = (int(v) for v in self.split)
            object.__setattr__(self, "split", (w, y))
            if w < 0 or y < 0 or w + y != self.degree:
                raise AllocationError(f"split {(w, y)} does not sum to degree {self.degree}")

    @classmethod
    def empty(cls) -> "ZeroCycle":
        return cls(0)

    @classmethod
    def of(cls, degree: int, general: bool = True) -> "ZeroCycle":
        return cls(degree, general=general)

    @classmethod
    def on_lines(cls, *per_line: int, general: bool = True) -> "ZeroCycle":
        return cls(sum(per_line), allocation=tuple(per_line), general=general)

    @classmethod
    def with_split(cls, w: int, y: int, general: bool = True) -> "ZeroCycle":
        return cls(w + y, split=(w, y), general=general)

    @staticmethod
    def balanced(degree: int, parts: int) -> tuple[int, ...]:
        """The most even distribution of ``degree`` over ``parts`` slots."""
        base, extra = divmod(degree, parts)
        return tuple(base + 1 if i < extra else base for i in range(parts))

    def allocation_for(self, curve: CurveSpec) -> tuple[int, ...]:
        slots = curve.allocation_slots
        if slots == 0:
            if self.degree:
                raise AllocationError("an empty curve carries no cycle")
            return ()
        if self.allocation is not None:
            if len(self.allocation) != slots:
                raise AllocationError(
                    f"allocation has {len(self.allocation)} entries, "
                    f"the curve has {slots} components"
                )
            return self.allocation
        if self.degree == 0:
            return (0,) * slots
        if slots == 1:
            return (self.degree,)
        if curve.kind is ShapeKind.UNION:
            return (self.degree, 0)
        if self.general:
            return self.balanced(self.degree, slots)
        raise AllocationError("a positioned cycle needs an explicit allocation")

    def split_for(self, degree_on_component: int) -> tuple[int, int]:
        if self.split is not None:
            if sum(self.split) != degree_on_component:
                raise AllocationError(
                    f"split {self.split} does not sum to the component degree "
                    f"{degree_on_component}"
                )
            return self.split
        if degree_on_component == 0:
            return (0, 0)
        raise AllocationError("a double line needs the (support, residual) split of its cycle")


@dataclass(frozen=True)
class CohomTable:
    """h0 and h1 of a twisted bundle on a curve, with the exact chi."""

    h0: CohValue
    h1: CohValue
    chi: int

    def __post_init__(self) -> None:
        for name in ("h0", "h1"):
            v = getattr(self, name)
            if is_known(v) and v < 0:
                raise DomainError(f"negative {name} = {v} (chi {self.chi}); shape rules broken")
        if is_known(self.h0) and is_known(self.h1) and self.h0 - self.h1 != self.chi:
            raise DomainError(
                f"inconsistent table h0={self.h0} h1={self.h1} chi={self.chi}"
            )

    @property
    def known(self) -> bool:
        return is_known(self.h0) and is_known(self.h1)

    def as_dict(self) -> dict:
        def render(v: CohValue):
            return v if is_known(v) else "UNKNOWN"

        return {"h0": render(self.h0), "h1": render(self.h1), "chi": self.chi}


def curve_chi(curve: CurveSpec, twist: DivClass, cycle: Optional[ZeroCycle] = None) -> int:
    """chi(O_R(Z + twist)) = deg Z + R.twist + 1 - p_a(R); 0 for the empty curve."""
    z = cycle.degree if cycle is not None else 0
    if curve.is_empty:
        if z:
            raise AllocationError("an empty curve carries no cycle")
        return 0
    s = curve.surface
    return z + pairing(s, curve.total_class, twist) + 1 - class_genus(s, curve.total_class)


def coh_integral(curve: CurveSpec, twist: DivClass, cycle: Optional[ZeroCycle] = None) -> CohomTable:
    """Degree rules for an integral curve.

    With m = deg Z + R.twist and g = p_a(R): h1 vanishes for m > 2g - 2,
    h0 vanishes for m < 0, and a rational curve is exact for every m.  The
    in-between range on a positive-genus curve is UNKNOWN.
    """
    if curve.kind is not ShapeKind.INTEGRAL:
        raise ShapeError(f"coh_integral got a {curve.kind.value} shape")
    cycle = cycle if cycle is not None else ZeroCycle.empty()
    chi = curve_chi(curve, twist, cycle)
    s = curve.surface
    m = cycle.degree + pairing(s, curve.total_class, twist)
    g = class_genus(s, curve.total_class)
    if g == 0:
        h0 = max(m + 1, 0)
        return CohomTable(h0, h0 - chi, chi)
    if m > 2 * g - 2:
        return CohomTable(chi, 0, chi)
    if m < 0:
        return CohomTable(0, -chi, chi)
    return CohomTable(UNKNOWN, UNKNOWN, chi)


def coh_restriction_sequence(surface: Surface, curve_class: DivClass, twist: DivClass) -> CohomTable:
    """Cohomology of O_R(twist) for any effective divisor R of the given class.

    Untwisted by any cycle.  Uses 0 -> O_F(twist - R) -> O_F(twist)
    -> O_R(twist) -> 0; the output depends only on classes, so it is valid
    for every member of the linear system, reduced or not.  Decidable when
    h1(twist - R) = 0 on the surface, and also when h1(twist) and
    h2(twist - R) both vanish (the long exact sequence then pinches h1 of
    the restriction to zero).
    """
    if not curve_class.effective or curve_class.is_zero:
        raise DomainError(f"need a nonzero effective class, got {curve_class}")
    a0, a1, a2 = surface_coh(surface, twist - curve_class)
    b0, b1, b2 = surface_coh(surface, twist)
    chi = surface_chi(surface, twist) - surface_chi(surface, twist - curve_class)
    if a1 == 0 or (b1 == 0 and a2 == 0):
        # The connecting map out of H2(twist - R) is onto H2(twist) because
        # H2 vanishes on a curve, so h1 = b1 + a2 - b2 exactly.
        h1 = b1 + a2 - b2
        return CohomTable(chi + h1, h1, chi)
    return CohomTable(UNKNOWN, UNKNOWN, chi)


def coh_lines(curve: CurveSpec, twist: DivClass, cycle: Optional[ZeroCycle] = None) -> CohomTable:
    """Exact cohomology on a disjoint union of ruling lines, per allocation."""
    if curve.kind is not ShapeKind.DISJOINT_LINES:
        raise ShapeError(f"coh_lines got a {curve.kind.value} shape")
    cycle = cycle if cycle is not None else ZeroCycle.empty()
    alloc = cycle.allocation_for(curve)
    ldeg = pairing(curve.surface, curve.line_class, twist)
    degs = [z_i + ldeg for z_i in alloc]
    h0 = sum(max(m + 1, 0) for m in degs)
    h1 = sum(max(-m - 1, 0) for m in degs)
    chi = curve_chi(curve, twist, cycle)
    return CohomTable(h0, h1, chi)


def coh_double_line(curve: CurveSpec, twist: DivClass, cycle: Optional[ZeroCycle] = None) -> CohomTable:
    """Filtration rules for a double line R = 2L on the quadric.

    The cycle splits as W = Z cut by L (degree w) and the residual Y
    (degree y), giving 0 -> O_L(W + twist) -> O_R(Z + twist)
    -> O_L(Y + twist) -> 0.  Uniform piece degrees decide the table; mixed
    signs leave it UNKNOWN (the extension class would matter).
    """
    if curve.kind is not ShapeKind.DOUBLE_LINE:
        raise ShapeError(f"coh_double_line got a {curve.kind.value} shape")
    cycle = cycle if cycle is not None else ZeroCycle.empty()
    w, y = cycle.split_for(cycle.degree)
    ldeg = pairing(curve.surface, curve.line_class, twist)
    m_w, m_y = w + ldeg, y + ldeg
    chi = curve_chi(curve, twist, cycle)
    if m_w >= -1 and m_y >= -1:
        return CohomTable(chi, 0, chi)
    if m_w <= -1 and m_y <= -1:
        return CohomTable(0, -chi, chi)
    return CohomTable(UNKNOWN, UNKNOWN, chi)


def coh_union(curve: CurveSpec, twist: DivClass, cycle: Optional[ZeroCycle] = None) -> CohomTable:
    """Two-component rule via 0 -> O_A(Z_A + twist - B) -> O_R(Z + twist) -> O_B(Z_B + twist) -> 0.

    The table is exact as soon as the first-piece h1 vanishes; chi is
    always exact.  By default the cycle sits on the first component.
    """
    if curve.kind is not ShapeKind.UNION:
        raise ShapeError(f"coh_union got a {curve.kind.value} shape")
    cycle = cycle if cycle is not None else ZeroCycle.empty()
    part_a, part_b = curve.parts
    z_a, z_b = cycle.allocation_for(curve)
    sub = coh_curve(part_a, twist - part_b.total_class, ZeroCycle(z_a, general=cycle.general))
    quot = coh_curve(part_b, twist, ZeroCycle(z_b, general=cycle.general))
    chi = sub.chi + quot.chi
    if is_known(sub.h1) and sub.h1 == 0:
        h0 = sub.h0 + quot.h0 if is_known(sub.h0) and is_known(quot.h0) else UNKNOWN
        return CohomTable(h0, quot.h1, chi)
    return CohomTable(UNKNOWN, UNKNOWN, chi)


def _combine(current: CohValue, new: CohValue, what: str) -> CohValue:
    if not is_known(new):
        return current
    if is_known(current) and current != new:
        raise DomainError(f"cohomology engines disagree on {what}: {current} vs {new}")
    return new


def coh_curve(curve: CurveSpec, twist: DivClass, cycle: Optional[ZeroCycle] = None) -> CohomTable:
    """Dispatch on the curve shape and merge with the class-level sequence.

    For an untwisted cycle (z = 0) on the plane or the quadric, the
    restriction-sequence computation applies to every shape and is merged
    in; where two engines both answer they must agree.
    """
    cycle = cycle if cycle is not None else ZeroCycle.empty()
    if curve.kind is ShapeKind.EMPTY:
        if cycle.degree:
            raise AllocationError("an empty curve carries no cycle")
        return CohomTable(0, 0, 0)
    dispatch = {
        ShapeKind.INTEGRAL: coh_integral,
        ShapeKind.DISJOINT_LINES: coh_lines,
        ShapeKind.DOUBLE_LINE: coh_double_line,
        ShapeKind.UNION: coh_union,
    }
    table = dispatch[curve.kind](curve, twist, cycle)
    if (
        cycle.degree == 0
        and curve.surface.kind is not SurfaceKind.GENERAL_DOUBLING
        and curve.total_class.effective
        and not curve.total_class.is_zero
    ):
        seq = coh_restriction_sequence(curve.surface, curve.total_class, twist)
        if seq.chi != table.chi:
            raise DomainError(f"chi mismatch between engines: {seq.chi} vs {table.chi}")
        h0 = _combine(table.h0, seq.h0, "h0")
        h1 = _combine(table.h1, seq.h1, "h1")
        table = CohomTable(h0, h1, table.chi)
    return table


def generic_member(surface: Surface, c: DivClass) -> CurveSpec:
    """Shape of the generic effective divisor in the class c."""
    if c.rank != surface.pic_rank:
        raise DomainError(f"class {c} does not live on {surface.token}")
    if not c.effective:
        raise DomainError(f"{c} is not effective")
    if c.is_zero:
        return CurveSpec.empty(surface)
    if surface.kind is SurfaceKind.DOUBLE_PLANE:
        return CurveSpec.integral(surface, c)
    if surface.kind is SurfaceKind.DOUBLE_QUADRIC:
        a, b = c.coords
        if a >= 1 and b >= 1:
            return CurveSpec.integral(surface, c)
        if b == 0:
            return CurveSpec.disjoint_lines(surface, DivClass.of(1, 0), a)
        return CurveSpec.disjoint_lines(surface, DivClass.of(0, 1), b)
    if c.coords == (1, 0):
        return CurveSpec.integral(surface, c)
    raise DomainError(f"only the line itself is supported on {surface.token}, got {c}")
