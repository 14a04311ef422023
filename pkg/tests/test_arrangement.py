
import pytest
from hypothesis import given, settings, strategies as st

from clarr.arrangement import (
    Component,
    ProjPoint,
    add,
    build_curve,
    delete,
    intersect,
    singular_points,
)
from clarr.errors import EmptyCurve, LastComponent, NotReduced, SingularConic, UnknownId
from clarr.scalars import QuadScalar

L = Component.line
C = Component.conic


def triangle():
    return build_curve([L("x", (1, 0, 0)), L("y", (0, 1, 0)), L("z", (0, 0, 1))])


def test_projpoint_normalization():
    assert ProjPoint([2, 4, 2]) == ProjPoint([1, 2, 1])
    assert ProjPoint([3, 0, 0]).coords == (1, 0, 0)
    with pytest.raises(ValueError):
        ProjPoint([0, 0, 0])


def test_conjugate_points_distinct():
    s = QuadScalar(0, 1, 2)
    assert ProjPoint([s, 0, 1]) != ProjPoint([-s, 0, 1])
    assert ProjPoint([QuadScalar(1, 0, 0), 0, 1]) == ProjPoint([1, 0, 1])


def test_build_errors():
    with pytest.raises(NotReduced):
        build_curve([L("a", (1, 0, 0)), L("b", (2, 0, 0))])
    with pytest.raises(SingularConic):
        C("q", (1, 1, 0, 0, 0, 0))
    with pytest.raises(EmptyCurve):
        build_curve([])


def test_delete_add():
    t = triangle()
    assert delete(t, "z").degree == 2
    assert t.degree == 3
    assert add(t, C("q", (1, 0, 0, 1, 0, -2))).degree == 5
    with pytest.raises(NotReduced):
        add(t, L("x2", (1, 0, 0)))
    with pytest.raises(UnknownId):
        delete(t, "w")
    with pytest.raises(LastComponent):
        delete(build_curve([L("x", (1, 0, 0))]), "x")


def test_intersect_lines():
    (r,) = intersect(L("x", (1, 0, 0)), L("y", (0, 1, 0)))
    assert r.point == ProjPoint([0, 0, 1]) and r.multiplicity == 1


def test_line_conic_tangency():
    (r,) = intersect(L("x", (1, 0, 0)), C("q", (0, 0, -1, 1, 0, 0)))
    assert r.point == ProjPoint([0, 0, 1]) and r.multiplicity == 2


def test_conic_conic_four_points():
    recs = intersect(C("a", (1, 0, 0, 1, 0, -2)), C("b", (1, 0, 0, 2, 0, -3)))
    pts = {r.point for r in recs}
    assert pts == {ProjPoint([sx, sy, 1]) for sx in (1, -1) for sy in (1, -1)}
    assert all(r.multiplicity == 1 for r in recs)


def test_conic_conic_tangent_contact():
    # y^2 = xz and y^2 = xz + x^2 meet only at (0:0:1) with multiplicity 4
    recs = intersect(C("a", (0, 0, -1, 1, 0, 0)), C("b", (-1, 0, -1, 1, 0, 0)))
    assert [(r.point, r.multiplicity) for r in recs] == [(ProjPoint([0, 0, 1]), 4)]


def test_singular_points_triangle_plus_conic():
    t = add(triangle(), C("q", (1, 0, 0, 1, 0, -2)))
    pts = singular_points(t)
    assert len(pts) == 9
    exts = sorted(P.ext for P, _ in pts)
    assert exts == [-1, -1, 0, 0, 0, 2, 2, 2, 2]
    assert all(len(ids) >= 2 for _, ids in pts)


def test_pencil_single_point():
    pencil = build_curve([L(f"l{i}", (1, i, 0)) for i in range(5)])
    pts = singular_points(pencil)
    assert len(pts) == 1 and len(pts[0][1]) == 5


def test_generic_component_validation():
    g = Component.generic("g", "y^2*z - x^3 - x^2*z", [(ProjPoint([0, 0, 1]), 2)])
    assert g.kind == "generic"
    with pytest.raises(NotReduced):
        Component.generic("h", "x^2*y")


coef = st.integers(-6, 6)


@settings(max_examples=40, deadline=None)
@given(st.tuples(coef, coef, coef), st.tuples(coef, coef, coef, coef, coef, coef))
def test_bezout_line_conic(lc, qc):
    from clarr.arrangement import conic_determinant

    if not any(lc) or conic_determinant(qc) == 0:
        return
    recs = intersect(L("l", lc), C("q", qc))
    assert sum(r.multiplicity for r in recs) == 2


@settings(max_examples=25, deadline=None)
@given(st.tuples(coef, coef, coef, coef, coef, coef), st.tuples(coef, coef, coef, coef, coef, coef))
def test_bezout_conic_conic(a, b):
    from clarr.arrangement import _proportional, conic_determinant
    from clarr.errors import UnrepresentablePoint

    if conic_determinant(a) == 0 or conic_determinant(b) == 0:
        return
    c1, c2 = C("a", a), C("b", b)
    if _proportional(c1.poly, c2.poly):
        return
    try:
        recs = intersect(c1, c2)
    except UnrepresentablePoint:
        return
    assert sum(r.multiplicity for r in recs) == 4
    for r in recs:
        assert c1.contains(r.point) and c2.contains(r.point)
