"""Lattice arithmetic and closed-form surface cohomology."""

import pytest
from hypothesis import given, strategies as st

from doublesurf.lattice import (
    DivClass,
    DomainError,
    Surface,
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
from doublesurf.oracle import p2_h0_dim, q_coh_dims

Q = Surface.double_quadric()
P2 = Surface.double_plane()

coords = st.integers(-6, 6)


def qc(a, b):
    return DivClass.of(a, b)


def test_intersect_examples():
    assert intersect(Q, qc(1, 0), qc(0, 1)) == 1
    # degree of the quadric section on a ruling line, used by the triple-line check
    assert intersect(Q, qc(1, 0), qc(2, 2)) == 2
    assert intersect(P2, DivClass.of(3), DivClass.of(2)) == 6


def test_intersect_rejects_general_doubling():
    F5 = Surface.general_doubling(5)
    with pytest.raises(UnsupportedSurfaceError):
        intersect(F5, DivClass.of(1, 0), DivClass.of(1, 0))


@given(a1=coords, a2=coords, b1=coords, b2=coords, c1=coords, c2=coords, n=st.integers(-4, 4))
def test_intersect_symmetric_bilinear(a1, a2, b1, b2, c1, c2, n):
    a, b, c = qc(a1, a2), qc(b1, b2), qc(c1, c2)
    assert intersect(Q, a, b) == intersect(Q, b, a)
    assert intersect(Q, a + c, b) == intersect(Q, a, b) + intersect(Q, c, b)
    assert intersect(Q, n * a, b) == n * intersect(Q, a, b)


def test_canonical_classes():
    assert canonical(P2) == DivClass.of(-3)
    assert canonical(Q) == qc(-2, -2)
    for d in range(1, 8):
        Fd = Surface.general_doubling(d)
        assert line_degree(Fd, canonical(Fd)) == d - 4
        assert line_degree(Fd, Fd.ribbon_twist) == d
        assert pairing(Fd, Fd.line, Fd.line) == 2 - d


def test_class_genus():
    assert class_genus(Q, qc(1, 1)) == 0
    assert class_genus(Q, qc(2, 0)) == -1
    assert class_genus(Q, qc(0, 0)) == 1  # empty-curve convention
    assert class_genus(P2, DivClass.of(4)) == 3
    # a line on any doubling is rational, the doubled line has genus 1 - d
    for d in range(1, 7):
        Fd = Surface.general_doubling(d)
        assert class_genus(Fd, DivClass.of(1, 0)) == 0
        assert class_genus(Fd, DivClass.of(2, 0)) == 1 - d


@given(a=coords, b=coords)
def test_quadric_genus_closed_form(a, b):
    assert class_genus(Q, qc(a, b)) == (a - 1) * (b - 1)


def test_surface_coh_examples():
    assert surface_coh(Q, qc(-1, 3)) == (0, 0, 0)
    assert surface_coh(Q, qc(-2, 2)) == (0, 3, 0)
    assert surface_coh(P2, DivClass.of(2)) == (6, 0, 0)


def test_chi_and_degree_examples():
    assert surface_chi(Q, qc(2, 2)) == 9
    assert degree(Q, qc(0, 2)) == 2
    assert degree(P2, DivClass.of(3)) == 3


def test_quadric_coh_matches_monomial_oracle_on_box():
    for a in range(-6, 7):
        for b in range(-6, 7):
            assert surface_coh(Q, qc(a, b)) == q_coh_dims(a, b)


def test_plane_coh_matches_monomial_oracle_on_box():
    for d in range(-9, 10):
        h0, h1, h2 = surface_coh(P2, DivClass.of(d))
        assert h0 == p2_h0_dim(d)
        assert h1 == 0
        assert h2 == p2_h0_dim(-d - 3)


def test_euler_characteristic_identity_on_box():
    for a in range(-6, 7):
        for b in range(-6, 7):
            h0, h1, h2 = surface_coh(Q, qc(a, b))
            assert h0 - h1 + h2 == surface_chi(Q, qc(a, b)) == (a + 1) * (b + 1)


def test_serre_duality_on_box():
    for surface in (Q, P2):
        k = canonical(surface)
        box = (
            [qc(a, b) for a in range(-6, 7) for b in range(-6, 7)]
            if surface is Q
            else [DivClass.of(d) for d in range(-9, 10)]
        )
        for c in box:
            assert surface_coh(surface, c) == surface_coh(surface, k - c)[::-1]


def test_chi_genus_consistency_on_box():
    # chi(O_R) computed from the structure sequence equals 1 - p_a(R)
    for a in range(0, 7):
        for b in range(0, 7):
            c = qc(a, b)
            zero = qc(0, 0)
            chi_r = surface_chi(Q, zero) - surface_chi(Q, zero - c)
            assert chi_r == 1 - class_genus(Q, c)


def test_parse_surface():
    assert parse_surface("2H") == P2
    assert parse_surface("2Q") == Q
    assert parse_surface("2F:7").d == 7
    with pytest.raises(DomainError):
        parse_surface("3Q")
    with pytest.raises(DomainError):
        parse_surface("2F:x")


def test_divclass_arithmetic_and_order():
    assert qc(1, 2) + qc(3, -1) == qc(4, 1)
    assert qc(1, 2) - qc(3, -1) == qc(-2, 3)
    assert 3 * qc(1, -2) == qc(3, -6)
    assert qc(1, 1) <= qc(2, 1)
    assert not qc(1, 2) <= qc(2, 1)
    assert qc(1, 1) < qc(1, 2)
    with pytest.raises(DomainError):
        qc(1, 1) + DivClass.of(1)


def test_surface_cls_rank_guard():
    with pytest.raises(DomainError):
        Q.cls(1)
    with pytest.raises(DomainError):
        P2.cls(1, 2)
