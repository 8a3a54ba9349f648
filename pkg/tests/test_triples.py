"""Triple invariants: genus and degree formulas, enumeration, existence."""

import pytest
from hypothesis import given, settings, strategies as st

from doublesurf.curves import CurveSpec, ZeroCycle, coh_curve, generic_member
from doublesurf.lattice import DivClass, DomainError, Surface
from doublesurf.triples import (
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

Q = Surface.double_quadric()
P2 = Surface.double_plane()


def qc(a, b):
    return DivClass.of(a, b)


def quadric_line():
    return CurveSpec.integral(Q, qc(1, 0))


def triple_line_triple(b):
    return Triple(Q, ZeroCycle(b + 2), quadric_line(), qc(2, 0))


# ----------------------------------------------------------------- genus


def test_triple_genus_triple_lines():
    for b in range(0, 8):
        assert triple_genus(triple_line_triple(b)) == -2 - b


def test_triple_genus_double_line_on_doubling():
    for d in range(1, 8):
        Fd = Surface.general_doubling(d)
        line = CurveSpec.integral(Fd, DivClass.of(1, 0))
        for z in range(0, 2 * d + 1):
            t = Triple(Fd, ZeroCycle(z), line, DivClass.of(1, 0))
            assert triple_genus(t) == d - 1 - z


def test_triple_genus_empty_residual():
    t = Triple(Q, ZeroCycle.empty(), CurveSpec.empty(Q), qc(1, 1))
    assert triple_genus(t) == 0


# ---------------------------------------------------------------- degree


def test_triple_degree_examples():
    double_line = Triple(
        Surface.general_doubling(3),
        ZeroCycle(2),
        CurveSpec.integral(Surface.general_doubling(3), DivClass.of(1, 0)),
        DivClass.of(1, 0),
    )
    assert triple_degree(double_line) == 2
    assert triple_degree(triple_line_triple(1)) == 3
    four_line = Triple(
        Q, ZeroCycle.with_split(2, 2), CurveSpec.double_line(Q, qc(1, 0)), qc(2, 0)
    )
    assert triple_degree(four_line) == 4


# ----------------------------------------------------------- validation


def test_triple_validation():
    with pytest.raises(DomainError):
        Triple(Q, ZeroCycle(1), CurveSpec.empty(Q), qc(1, 1))  # cycle on empty curve
    with pytest.raises(DomainError):
        Triple(Q, ZeroCycle(0), CurveSpec.integral(Q, qc(2, 1)), qc(1, 1))  # R > P
    with pytest.raises(DomainError):
        Triple(Q, ZeroCycle(0), quadric_line(), qc(-1, 2))  # P not effective


# ------------------------------------------------------------ enumeration


def test_enumerate_quadric_degree2_genus_minus1():
    rows = enumerate_triples(Q, 2, -1)
    assert rows == [
        TripleRow(2, qc(1, 0), qc(1, 0)),
        TripleRow(2, qc(0, 1), qc(0, 1)),
        TripleRow(0, None, qc(2, 0)),
        TripleRow(0, None, qc(0, 2)),
    ]


def test_enumerate_contains_triple_lines():
    for b in range(0, 6):
        rows = enumerate_triples(Q, 3, -2 - b)
        assert TripleRow(b + 2, qc(1, 0), qc(2, 0)) in rows


def test_enumerate_plane_quartic():
    rows = enumerate_triples(P2, 4, 3)
    assert TripleRow(0, None, DivClass.of(4)) in rows


def _brute_force_rows(surface, d, g):
    """Independent double loop with inline arithmetic, no shared helpers."""
    rows = set()
    if surface.kind.value == "2H":
        for r in range(0, d + 1):
            p = d - r
            if r > p:
                continue
            genus_p = (p - 1) * (p - 2) // 2
            genus_r = (r - 1) * (r - 2) // 2
            z = genus_p + genus_r + r - 1 - g
            if z < 0 or (r == 0 and z != 0):
                continue
            rows.add((z, None if r == 0 else (r,), (p,)))
    else:
        for p1 in range(0, d + 1):
            for p2 in range(0, d + 1 - p1):
                for r1 in range(0, p1 + 1):
                    for r2 in range(0, p2 + 1):
                        if (p1 + p2) + (r1 + r2) != d:
                            continue
                        genus_p = (p1 - 1) * (p2 - 1)
                        genus_r = (r1 - 1) * (r2 - 1)
                        z = genus_p + genus_r + 2 * (r1 + r2) - 1 - g
                        if z < 0 or (r1 == r2 == 0 and z != 0):
                            continue
                        xi = None if r1 == r2 == 0 else (r1, r2)
                        rows.add((z, xi, (p1, p2)))
    return rows


@pytest.mark.parametrize("surface", [Q, P2], ids=["2Q", "2H"])
def test_enumeration_round_trip_and_count(surface):
    for d in range(1, 6):
        for g in range(-8, 3):
            rows = enumerate_triples(surface, d, g)
            as_set = {
                (r.z, r.xi.coords if r.xi else None, r.eta.coords) for r in rows
            }
            assert len(as_set) == len(rows)
            assert as_set == _brute_force_rows(surface, d, g)
            for row in rows:
                t = realize(surface, row)
                assert triple_degree(t) == d
                assert triple_genus(t) == g


def test_enumerate_rejects_general_doubling():
    with pytest.raises(DomainError):
        enumerate_triples(Surface.general_doubling(3), 2, 0)


# -------------------------------------------------------- fiber dimension


def test_fiber_dimension_examples():
    t = Triple(Q, ZeroCycle(2), quadric_line(), qc(1, 0))
    assert fiber_dimension(t) == 1
    # z + chi(O_L(L - F)) = (1 - g) + (-1) = -g for the genus-g double line
    for g in range(-6, 1):
        t = Triple(Q, ZeroCycle(1 - g), quadric_line(), qc(1, 0))
        assert fiber_dimension(t) == -g


def test_fiber_dimension_plane_self_pairs():
    # chi(O_R(a - 1)) on a plane curve of degree a, cross-checked by counting
    for a in range(1, 6):
        spec = CurveSpec.integral(P2, DivClass.of(a))
        t = Triple(P2, ZeroCycle.empty(), spec, DivClass.of(a))
        monomials = a * (a + 1) // 2  # h0(O(a-1)) - h0(O(-1))
        assert fiber_dimension(t) == monomials


def test_fiber_dimension_needs_residual():
    t = Triple(Q, ZeroCycle.empty(), CurveSpec.empty(Q), qc(1, 1))
    with pytest.raises(DomainError):
        fiber_dimension(t)


# ---------------------------------------------------------- existence


def test_existence_empty_residual():
    t = Triple(Q, ZeroCycle.empty(), CurveSpec.empty(Q), qc(2, 0))
    v = check_existence(t)
    assert v.outcome is Outcome.EXISTS
    assert v.code == "IN_F"
    assert v.dim_kind == "linear_system"
    assert v.dim == 2


def test_existence_double_plane_is_universal():
    for d in range(1, 7):
        for g in range(-8, (d - 1) * (d - 2) // 2 + 1):
            for row in enumerate_triples(P2, d, g):
                v = check_existence(realize(P2, row))
                assert v.outcome is Outcome.EXISTS, (d, g, row)


def test_existence_conic_series():
    conic = CurveSpec.integral(Q, qc(1, 1))
    outcomes = {}
    for z in range(0, 5):
        v = check_existence(Triple(Q, ZeroCycle(z), conic, qc(1, 1)))
        outcomes[z] = (v.outcome, v.code)
    assert outcomes[0] == (Outcome.EXISTS_SPECIAL, "COMPLETE_INTERSECTION")
    assert outcomes[1] == (Outcome.NOT_EXISTS, "NO_QUARTIC_GENUS2")
    assert outcomes[2][0] is Outcome.EXISTS
    assert outcomes[3][0] is Outcome.EXISTS
    assert outcomes[4][0] is Outcome.EXISTS


def test_existence_rational_self_pairs():
    for cls in [qc(1, 0), qc(0, 1), qc(1, 2), qc(1, 4)]:
        spec = CurveSpec.integral(Q, cls)
        v0 = check_existence(Triple(Q, ZeroCycle.empty(), spec, cls))
        assert v0.outcome is Outcome.NOT_EXISTS
        for z in range(1, 5):
            v = check_existence(Triple(Q, ZeroCycle(z), spec, cls))
            assert v.outcome in (Outcome.EXISTS, Outcome.EXISTS_SPECIAL), (cls, z)


def test_existence_line_unions():
    for b in range(1, 5):
        lines = CurveSpec.disjoint_lines(Q, qc(0, 1), b)
        part = qc(0, b)
        for z in range(0, 6):
            for alloc in _compositions(z, b):
                cycle = ZeroCycle(z, allocation=alloc)
                v = check_existence(Triple(Q, cycle, lines, part))
                if all(x >= 1 for x in alloc):
                    assert v.outcome is Outcome.EXISTS, (b, alloc)
                else:
                    assert v.outcome is Outcome.NOT_EXISTS, (b, alloc)


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def test_existence_double_line_regularity_window():
    spec = CurveSpec.double_line(Q, qc(1, 0))
    for z in range(0, 11):
        for w in range(0, z + 1):
            cycle = ZeroCycle.with_split(w, z - w)
            v = check_existence(Triple(Q, cycle, spec, qc(2, 0)))
            fires = v.outcome is Outcome.EXISTS and v.code == "PRACTICAL_2"
            assert fires == (2 <= w <= z - 2), (z, w)


def test_existence_doubling_counterexample():
    for d in range(3, 9):
        Fd = Surface.general_doubling(d)
        line = CurveSpec.integral(Fd, DivClass.of(1, 0))
        # z = 2d - 4 sits in the window [d - 1, 2d - 4] where both conditions fail
        t = Triple(Fd, ZeroCycle(2 * d - 4), line, DivClass.of(1, 0))
        v = check_existence(t)
        assert v.outcome is Outcome.EXISTS_SPECIAL
        assert v.code == "DOUBLE_LINE_ALWAYS"
        assert v.conditions.h1_vanishes is False
        assert v.conditions.globally_generated_surrogate is False
        # and the bundle really has no sections at all
        table = coh_curve(line, DivClass.of(1, -d), ZeroCycle(d))
        assert table.h0 == 0


def test_existence_doubling_below_genus_range_is_inconclusive():
    F6 = Surface.general_doubling(6)
    line = CurveSpec.integral(F6, DivClass.of(1, 0))
    v = check_existence(Triple(F6, ZeroCycle(2), line, DivClass.of(1, 0)))
    assert v.outcome is Outcome.INCONCLUSIVE


def test_existence_general_self_pair_uses_degeneration():
    spec = CurveSpec.integral(Q, qc(2, 3))
    v = check_existence(Triple(Q, ZeroCycle(1), spec, qc(2, 3)))
    assert v.outcome is Outcome.EXISTS_SPECIAL
    assert v.code == "GENERAL_POSITION_DEGENERATION"
    assert v.generality_assumed


def test_existence_inconclusive_records_failures():
    # (2, 2) self pair with one cycle point: nothing decides it
    spec = CurveSpec.integral(Q, qc(2, 2))
    v = check_existence(Triple(Q, ZeroCycle(1), spec, qc(2, 2)))
    assert v.outcome is Outcome.INCONCLUSIVE
    assert v.failed
    assert v.conditions.h1_vanishes is True  # vanishes, but generation is undecided


def test_exists_verdicts_carry_nonnegative_fiber_dimension():
    for d in range(1, 5):
        for g in range(-6, 2):
            for row in enumerate_triples(Q, d, g):
                t = realize(Q, row)
                v = check_existence(t)
                if v.outcome is Outcome.EXISTS and not t.residual.is_empty:
                    assert v.dim == fiber_dimension(t) >= 0


def test_practical3_implies_h1_vanishes_for_every_allocation():
    # whenever the cycle-free branch fires, the cycle-twisted h1 vanishes too
    for cls in [qc(1, 1), qc(1, 2), qc(2, 2), qc(0, 2), qc(2, 0), qc(1, 0)]:
        for p1 in range(cls.coords[0], 4):
            for p2 in range(cls.coords[1], 4):
                part = qc(p1, p2)
                spec = generic_member(Q, cls)
                base = coh_curve(spec, part - Q.ribbon_twist)
                from doublesurf.curves import is_known

                if not (is_known(base.h1) and base.h1 == 0):
                    continue
                for z in range(0, 5):
                    slots = spec.allocation_slots
                    for alloc in _compositions(z, slots):
                        table = coh_curve(
                            spec,
                            part - Q.ribbon_twist,
                            ZeroCycle(z, allocation=alloc),
                        )
                        assert is_known(table.h1) and table.h1 == 0


@settings(max_examples=60, deadline=None)
@given(d=st.integers(1, 5), g=st.integers(-8, 2))
def test_enumeration_is_deterministic(d, g):
    assert enumerate_triples(Q, d, g) == enumerate_triples(Q, d, g)
