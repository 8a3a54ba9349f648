"""Divisor-class arithmetic and line-bundle cohomology on the base surfaces.

The objects of study live on a double surface: the effective divisor X = 2F
on projective 3-space, where F is a smooth surface.  Numerical questions
about curves on X reduce to exact lattice arithmetic on F.  Three bases are
supported:

* ``2H``   double plane; divisor classes are single integers ``(d)``.
* ``2Q``   double quadric; classes are bidegrees ``(a, b)`` with the
  hyperbolic intersection form ``(a, b) . (a', b') = a b' + a' b``.
* ``2F:d`` doubling of a smooth degree-d surface containing a line L.  No
  global class group is assumed; classes are formal combinations
  ``m L + k H`` written ``(m, k)``, and only pairings against multiples of
  L are defined (L.L = 2 - d by adjunction, L.H = 1).

All arithmetic is arbitrary-precision integer arithmetic.  Formal classes
with negative coordinates are allowed everywhere; effectivity is a caller
concern and is checked only where a contract demands it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass


class DomainError(ValueError):
    """Input is well formed but outside an operation's mathematical domain."""


class UnsupportedSurfaceError(DomainError):
    """The requested operation is not available on this base surface."""


class SurfaceKind(enum.Enum):
    DOUBLE_PLANE = "2H"
    DOUBLE_QUADRIC = "2Q"
    GENERAL_DOUBLING = "2F"


@dataclass(frozen=True)
class DivClass:
    """Element of the divisor class lattice, stored as integer coordinates."""

    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    @classmethod
    def of(cls, *coords: int) -> "DivClass":
        return cls(tuple(coords))

    @property
    def rank(self) -> int:
        return len(self.coords)

    @property
    def effective(self) -> bool:
        """True when all coordinates are nonnegative (effective-shaped)."""
        return all(c >= 0 for c in self.coords)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def _check_rank(self, other: "DivClass") -> None:
        if self.rank != other.rank:
            raise DomainError(f"rank mismatch: {self} vs {other}")

    def __add__(self, other: "DivClass") -> "DivClass":
        self._check_rank(other)
        return DivClass(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "DivClass") -> "DivClass":
        self._check_rank(other)
        return DivClass(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "DivClass":
        return DivClass(tuple(-a for a in self.coords))

    def __mul__(self, n: int) -> "DivClass":
        return DivClass(tuple(n * a for a in self.coords))

    __rmul__ = __mul__

    def __le__(self, other: "DivClass") -> bool:
        """Componentwise partial order."""
        self._check_rank(other)
        return all(a <= b for a, b in zip(self.coords, other.coords))

    def __lt__(self, other: "DivClass") -> bool:
        return self <= other and self != other

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class Surface:
    """The base surface F of a double surface X = 2F, with its class data.

    ``d`` is the degree of F in projective 3-space: 1 for the plane, 2 for
    the quadric, arbitrary for a general doubling.
    """

    kind: SurfaceKind
    d: int

    @classmethod
    def double_plane(cls) -> "Surface":
        return cls(SurfaceKind.DOUBLE_PLANE, 1)

    @classmethod
    def double_quadric(cls) -> "Surface":
        return cls(SurfaceKind.DOUBLE_QUADRIC, 2)

    @classmethod
    def general_doubling(cls, d: int) -> "Surface":
        if d < 1:
            raise DomainError("surface degree must be at least 1")
        return cls(SurfaceKind.GENERAL_DOUBLING, d)

    @property
    def token(self) -> str:
        if self.kind is SurfaceKind.GENERAL_DOUBLING:
            return f"2F:{self.d}"
        return self.kind.value

    @property
    def pic_rank(self) -> int:
        return 1 if self.kind is SurfaceKind.DOUBLE_PLANE else 2

    def cls(self, *coords: int) -> DivClass:
        if len(coords) != self.pic_rank:
            raise DomainError(
                f"classes on {self.token} have {self.pic_rank} coordinates, got {coords}"
            )
        return DivClass(tuple(coords))

    @property
    def hyperplane(self) -> DivClass:
        """Class of O_F(1)."""
        if self.kind is SurfaceKind.DOUBLE_PLANE:
            return DivClass.of(1)
        if self.kind is SurfaceKind.DOUBLE_QUADRIC:
            return DivClass.of(1, 1)
        return DivClass.of(0, 1)

    @property
    def ribbon_twist(self) -> DivClass:
        """Class of O_F(F), the conormal-dual twist of the double structure."""
        if self.kind is SurfaceKind.DOUBLE_PLANE:
            return DivClass.of(1)
        if self.kind is SurfaceKind.DOUBLE_QUADRIC:
            return DivClass.of(2, 2)
        return DivClass.of(0, self.d)

    @property
    def canonical(self) -> DivClass:
        if self.kind is SurfaceKind.DOUBLE_PLANE:
            return DivClass.of(-3)
        if self.kind is SurfaceKind.DOUBLE_QUADRIC:
            return DivClass.of(-2, -2)
        return DivClass.of(0, self.d - 4)

    @property
    def line(self) -> DivClass:
        """The distinguished line on a general doubling."""
        if self.kind is not SurfaceKind.GENERAL_DOUBLING:
            raise UnsupportedSurfaceError(f"{self.token} has no distinguished line")
        return DivClass.of(1, 0)


def parse_surface(token: str) -> Surface:
    """Parse a surface token: ``2H``, ``2Q`` or ``2F:d``."""
    token = token.strip()
    if token == "2H":
        return Surface.double_plane()
    if token == "2Q":
        return Surface.double_quadric()
    if token.startswith("2F:"):
        try:
            d = int(token[3:])
        except ValueError:
            raise DomainError(f"bad surface token {token!r}") from None
        return Surface.general_doubling(d)
    raise DomainError(f"bad surface token {token!r}; expected 2H, 2Q or 2F:d")


def pairing(surface: Surface, a: DivClass, b: DivClass) -> int:
    """Intersection pairing, extended to line-supported classes on 2F:d.

    On a general doubling the pairing is defined only when one argument is
    a multiple of the distinguished line: (m L).(alpha L + k H)
    = m (alpha (2 - d) + k).
    """
    if a.rank != surface.pic_rank or b.rank != surface.pic_rank:
        raise DomainError(f"classes {a}, {b} do not live on {surface.token}")
    if surface.kind is SurfaceKind.DOUBLE_PLANE:
        return a.coords[0] * b.coords[0]
    if surface.kind is SurfaceKind.DOUBLE_QUADRIC:
        return a.coords[0] * b.coords[1] + a.coords[1] * b.coords[0]
    if a.coords[1] == 0:
        m, other = a.coords[0], b
    elif b.coords[1] == 0:
        m, other = b.coords[0], a
    else:
        raise UnsupportedSurfaceError(
            f"pairing on {surface.token} is defined only against multiples of the line"
        )
    alpha, k = other.coords
    return m * (alpha * (2 - surface.d) + k)


def intersect(surface: Surface, a: DivClass, b: DivClass) -> int:
    """Full intersection number; requires a known lattice (plane or quadric)."""
    if surface.kind is SurfaceKind.GENERAL_DOUBLING:
        raise UnsupportedSurfaceError(
            f"no full intersection lattice on {surface.token}; "
            "only line-supported degrees are available"
        )
    return pairing(surface, a, b)


def canonical(surface: Surface) -> DivClass:
    return surface.canonical


def class_genus(surface: Surface, c: DivClass) -> int:
    """Arithmetic genus of a divisor of class c, by adjunction.

    2 p_a - 2 = c.(c + K).  The plane gives (d-1)(d-2)/2, the quadric
    (a-1)(b-1); the zero class gets p_a = 1, matching the empty-curve
    convention chi(O) = 0.
    """
    num = pairing(surface, c, c) + pairing(surface, c, surface.canonical)
    if num % 2 != 0:
        raise DomainError(f"adjunction number for {c} on {surface.token} is odd")
    return 1 + num // 2


def _p1_h0(m: int) -> int:
    return m + 1 if m >= 0 else 0


def _p1_h1(m: int) -> int:
    return -m - 1 if m <= -2 else 0


def _p2_h0(d: int) -> int:
    return (d + 1) * (d + 2) // 2 if d >= 0 else 0


def surface_coh(surface: Surface, c: DivClass) -> tuple[int, int, int]:
    """(h0, h1, h2) of the line bundle O_F(c), in closed form.

    Plane: h0(d) = (d+1)(d+2)/2 for d >= 0, h1 = 0, h2 = h0(-d-3).
    Quadric: Kuenneth product of the two P^1 factors, so for bidegree
    (a, b) the groups are built from h0(m) = max(m+1, 0) and
    h1(m) = max(-m-1, 0) on each factor.
    """
    if surface.kind is SurfaceKind.DOUBLE_PLANE:
        d = c.coords[0]
        return (_p2_h0(d), 0, _p2_h0(-d - 3))
    if surface.kind is SurfaceKind.DOUBLE_QUADRIC:
        a, b = c.coords
        h0 = _p1_h0(a) * _p1_h0(b)
        h1 = _p1_h0(a) * _p1_h1(b) + _p1_h1(a) * _p1_h0(b)
        h2 = _p1_h1(a) * _p1_h1(b)
        return (h0, h1, h2)
    raise UnsupportedSurfaceError(f"no line-bundle cohomology on {surface.token}")


def surface_chi(surface: Surface, c: DivClass) -> int:
    """Euler characteristic of O_F(c) as a polynomial in the class."""
    if surface.kind is SurfaceKind.DOUBLE_PLANE:
        d = c.coords[0]
        return (d + 1) * (d + 2) // 2
    if surface.kind is SurfaceKind.DOUBLE_QUADRIC:
        a, b = c.coords
        return (a + 1) * (b + 1)
    raise UnsupportedSurfaceError(f"no chi on {surface.token}")


def degree(surface: Surface, c: DivClass) -> int:
    """Degree of a curve of class c in projective 3-space, c.H."""
    return pairing(surface, c, surface.hyperplane)


def line_degree(surface: Surface, c: DivClass) -> int:
    """Degree of O_F(c) restricted to the distinguished line of 2F:d."""
    return pairing(surface, surface.line, c)
