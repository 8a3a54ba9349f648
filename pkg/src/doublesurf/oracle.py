"""Independent cohomology computations from monomial bases and exact ranks.

This module is the brute-force cross-check for the closed-form engines and
never feeds back into them.  Cohomology of a line bundle on the quadric is
computed by counting Laurent monomials in the two-chart Cech description of
each P^1 factor; restriction to a member of a linear system is computed
from the ranks of explicit multiplication matrices over the integers,
eliminated fraction-free.

A basis element of H^k(O(a, b)) is a pair of exponents (i, j): the first
factor contributes the monomial x^i y^(a-i), the second u^j v^(b-j).  A
factor is of type 0 (regular, 0 <= i <= a) or type 1 (Laurent,
a + 1 <= i <= -1); the pair of types is the Kuenneth piece and k is their
sum.  Multiplication by a bihomogeneous form acts exponent-wise, and a
product monomial that leaves its piece's support region is a coboundary,
hence zero.
"""

from __future__ import annotations

import random
from typing import Dict, Iterable, Optional, Tuple

Form = Dict[Tuple[int, int], int]  # (alpha, gamma) -> coefficient

_PIECES_BY_DEGREE = {0: ((0, 0),), 1: ((0, 1), (1, 0)), 2: ((1, 1),)}


def factor_exponents(m: int, laurent: bool) -> list[int]:
    """Exponent range of the Cech basis of H^0 (regular) or H^1 (Laurent) on P^1."""
    if laurent:
        return list(range(m + 1, 0))
    return list(range(0, m + 1))


def q_coh_dims(a: int, b: int) -> tuple[int, int, int]:
    """(h0, h1, h2) of O(a, b) on the quadric by counting basis monomials."""
    dims = []
    for k in (0, 1, 2):
        total = 0
        for e1, e2 in _PIECES_BY_DEGREE[k]:
            total += len(factor_exponents(a, bool(e1))) * len(factor_exponents(b, bool(e2)))
        dims.append(total)
    return tuple(dims)


def p2_h0_dim(d: int) -> int:
    """h0 of O(d) on the plane by counting monomials in three variables."""
    return sum(1 for i in range(d + 1) for j in range(d + 1 - i)) if d >= 0 else 0


def _piece_basis(deg: tuple[int, int], piece: tuple[int, int]) -> list[tuple[int, int]]:
    a, b = deg
    e1, e2 = piece
    return [
        (i, j)
        for i in factor_exponents(a, bool(e1))
        for j in factor_exponents(b, bool(e2))
    ]


def _in_piece(deg: tuple[int, int], piece: tuple[int, int], i: int, j: int) -> bool:
    a, b = deg
    e1, e2 = piece
    ok1 = (i <= -1 and a - i <= -1) if e1 else (0 <= i <= a)
    ok2 = (j <= -1 and b - j <= -1) if e2 else (0 <= j <= b)
    return ok1 and ok2


def multiplication_matrix(
    src_deg: tuple[int, int],
    form: Form,
    form_deg: tuple[int, int],
    piece: tuple[int, int],
) -> list[list[int]]:
    """Matrix of multiplication by the form on one Kuenneth piece.

    Rows are indexed by the target basis, columns by the source basis.
    """
    dst_deg = (src_deg[0] + form_deg[0], src_deg[1] + form_deg[1])
    src = _piece_basis(src_deg, piece)
    dst = _piece_basis(dst_deg, piece)
    index = {mono: r for r, mono in enumerate(dst)}
    matrix = [[0] * len(src) for _ in dst]
    for col, (i, j) in enumerate(src):
        for (alpha, gamma), coeff in form.items():
            ii, jj = i + alpha, j + gamma
            if _in_piece(dst_deg, piece, ii, jj):
                matrix[index[(ii, jj)]][col] += coeff
    return matrix


def integer_rank(matrix: Iterable[Iterable[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    rows = [list(r) for r in matrix]
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot_row = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        pivot = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            factor = rows[r][col]
            for c in range(col, ncols):
                rows[r][c] = (rows[r][c] * pivot - factor * rows[rank][c]) // prev
        prev = pivot
        rank += 1
        if rank == len(rows):
            break
    return rank


def generic_form(deg: tuple[int, int], seed: int = 0) -> Form:
    """A fixed pseudo-random member of the system, with all monomials present."""
    a, b = deg
    rng = random.Random(f"{a},{b};{seed}")
    return {
        (alpha, gamma): rng.randint(1, 997)
        for alpha in range(a + 1)
        for gamma in range(b + 1)
    }


def _poly_mul_1var(p: Dict[int, int], q: Dict[int, int]) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for i, c in p.items():
        for j, d in q.items():
            out[i + j] = out.get(i + j, 0) + c * d
    return out


def product_of_lines_form(deg: tuple[int, int]) -> Form:
    """A member that is a product of distinct ruling lines (one ruling only)."""
    a, b = deg
    if a and b:
        raise ValueError("a product of disjoint ruling lines has bidegree (k, 0) or (0, k)")
    n = a or b
    poly: Dict[int, int] = {0: 1}
    for k in range(1, n + 1):
        # Factor x - k y (exponent tracks the power of x).
        poly = _poly_mul_1var(poly, {1: 1, 0: -k})
    if a:
        return {(alpha, 0): c for alpha, c in poly.items()}
    return {(0, gamma): c for gamma, c in poly.items()}


def double_line_form(deg: tuple[int, int]) -> Form:
    """The square of a single ruling line, a ribbon member of (2,0) or (0,2)."""
    if deg not in ((2, 0), (0, 2)):
        raise ValueError("a double ruling line has bidegree (2, 0) or (0, 2)")
    if deg == (2, 0):
        return {(2, 0): 1}
    return {(0, 2): 1}


def q_restricted_coh(
    curve_class: tuple[int, int],
    twist: tuple[int, int],
    form: Optional[Form] = None,
) -> tuple[int, int]:
    """(h0, h1) of O_R(twist) for the member R = {form = 0} of the class.

    Extracted from the long exact sequence of
    0 -> O(twist - R) -> O(twist) -> O_R(twist) -> 0,
    where every map between surface groups is multiplication by the form:

        h0_R = coker(mu0) + ker(mu1),   h1_R = coker(mu1) + ker(mu2).
    """
    if form is None:
        form = generic_form(curve_class)
    src = (twist[0] - curve_class[0], twist[1] - curve_class[1])
    dims_src = q_coh_dims(*src)
    dims_dst = q_coh_dims(*twist)
    ranks = []
    for k in (0, 1, 2):
        rank_k = 0
        for piece in _PIECES_BY_DEGREE[k]:
            rank_k += integer_rank(multiplication_matrix(src, form, curve_class, piece))
        ranks.append(rank_k)
    h0 = (dims_dst[0] - ranks[0]) + (dims_src[1] - ranks[1])
    h1 = (dims_dst[1] - ranks[1]) + (dims_src[2] - ranks[2])
    return (h0, h1)
