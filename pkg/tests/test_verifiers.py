import pytest

from clarr.arrangement import Component, build_curve
from clarr.errors import NotAConic, NotALine, NotFree
from clarr.scene import load_bundled
from clarr.verifiers import (
    classify_conic_addition,
    classify_conic_deletion,
    classify_line_addition,
    classify_line_deletion,
    deletion_context,
    delta_formula_check,
    free_case_checks,
    mu_formula_check,
    verify_conic_addition,
    verify_conic_deletion,
    verify_line_addition,
    verify_line_deletion,
)
from corpus import a3, named_curves

L = Component.line
Q = Component.conic


def tri():
    return build_curve([L("x", (1, 0, 0)), L("y", (0, 1, 0)), L("z", (0, 0, 1))])


# -- pure case tables -----------------------------------------------------------


@pytest.mark.parametrize("x,a,b,want", [
    (2, 2, 4, ("A.1.a", "Unconstrained")),
    (3, 2, 4, ("A.1.b", "ForcedFree")),
    (4, 2, 4, ("A.1.a", "DichotomyViolated")),
    (5, 2, 4, ("A.1.b", "ForcedFree")),
    (6, 2, 4, ("A.1.c", "ForcedNonFree")),
])
def test_table_line_deletion(x, a, b, want):
    assert classify_line_deletion(x, a, b) == want


@pytest.mark.parametrize("x,a,b,want", [
    (2, 2, 4, ("A.2.c", "ForcedNonFree")),
    (3, 2, 4, ("A.2.b", "ForcedFree")),
    (4, 2, 4, ("A.2.a", "DichotomyViolated")),
    (5, 2, 4, ("A.2.b", "ForcedFree")),
    (6, 2, 4, ("A.2.a", "Unconstrained")),
])
def test_table_line_addition(x, a, b, want):
    assert classify_line_addition(x, a, b) == want


@pytest.mark.parametrize("k,a,b,want", [
    (2, 2, 4, "Unconstrained"), (4, 2, 4, "ForcedFree"), (6, 2, 4, "DichotomyViolated"),
    (8, 2, 4, "ForcedFree"), (10, 2, 4, "ForcedNonFree"),
    (1, 2, 4, "Unconstrained"), (3, 2, 4, "ForcedFree"), (5, 2, 4, "DichotomyViolated"),
    (7, 2, 4, "DichotomyViolated"),  # m = b - 1 forces a = b
    (7, 4, 4, "ForcedFree"), (9, 2, 4, "ForcedNonFree"),
])
def test_table_conic_deletion(k, a, b, want):
    assert classify_conic_deletion(k, a, b)[1] == want


@pytest.mark.parametrize("k,a,b,want", [
    (2, 2, 4, "ForcedNonFree"), (4, 2, 4, "ForcedFree"), (6, 2, 4, "DichotomyViolated"),
    (8, 2, 4, "ForcedFree"), (10, 2, 4, "Unconstrained"),
    (3, 2, 4, "ForcedNonFree"), (5, 2, 4, "DichotomyViolated"),  # m = a forces a = b
    (5, 2, 2, "ForcedFree"), (7, 2, 4, "DichotomyViolated"), (9, 2, 4, "ForcedFree"),
    (11, 2, 4, "Unconstrained"),
])
def test_table_conic_addition(k, a, b, want):
    assert classify_conic_addition(k, a, b)[1] == want


# -- verifiers on curves --------------------------------------------------------


def test_triangle_line_verdicts():
    t = tri()
    for cid in t.ids:
        v = verify_line_deletion(t, cid)
        assert v.classification == "ForcedFree" and v.exponents == (1, 1) and v.consistent_with_direct
    v = verify_line_addition(t, L("g", (1, 1, 1)))
    assert v.classification == "Unconstrained" and v.inputs["x"] == 3
    v = verify_line_addition(t, L("v", (1, 1, 0)))
    assert v.classification == "ForcedFree"


def test_near_pencil_delete_generic_line():
    c = load_bundled("near_pencil_4").curve
    v = verify_line_deletion(c, "z")
    assert v.classification == "ForcedFree" and v.exponents == (1, 2) and v.inputs["count"] == 3


def test_chern_factor_never_forced_free():
    c = load_bundled("chern_factor").curve
    for comp in c.lines():
        v = verify_line_deletion(c, comp.id)
        assert v.case_label in ("A.1.a", "A.1.c")
        assert v.classification in ("Unconstrained", "ForcedNonFree")


def test_chern_factor_external_line_through_P():
    c = load_bundled("chern_factor").curve
    v = verify_line_addition(c, L("ext", (1, 0, -3)))
    assert v.inputs["count"] == 4
    assert v.classification == "ForcedNonFree" and v.consistent_with_direct


def test_notfree_conic_deletion():
    c = load_bundled("notfree_pencil").curve
    v = verify_conic_deletion(c, "C1")
    assert (v.inputs["k"], v.inputs["m"], v.classification) == (4, 2, "Unconstrained")


def test_b1_k_equals_2b():
    c = load_bundled("free_6_7").curve
    v = verify_conic_deletion(c, "Q1")
    assert (v.inputs["k"], v.inputs["a"], v.inputs["b"]) == (14, 6, 7)
    assert v.classification == "ForcedFree" and v.consistent_with_direct


def test_b1_m_equals_a():
    c = named_curves()["lines4+K3K5"]
    v = verify_conic_deletion(c, "K3")
    assert (v.inputs["k"], v.inputs["m"], v.inputs["a"], v.inputs["b"]) == (6, 3, 3, 4)
    assert v.classification == "ForcedFree" and v.consistent_with_direct


def test_b2_k_equals_2a():
    v = verify_conic_addition(a3(), Q("K", (0, -2, 1, 0, 1, 0)))
    assert (v.inputs["k"], v.inputs["a"], v.inputs["b"]) == (4, 2, 3)
    assert v.classification == "ForcedFree" and v.consistent_with_direct


def test_b2_even_m_below_a_is_forced_non_free():
    c = load_bundled("notfree_pencil").curve
    v = verify_conic_addition(c, Q("K", (2, 0, 0, 3, 0, -5)))
    assert (v.inputs["k"], v.classification) == (4, "ForcedNonFree")
    assert v.consistent_with_direct


def test_triangle_plus_transverse_conic():
    v = verify_conic_addition(tri(), Q("q", (1, 0, 0, 1, 0, -2)))
    assert (v.inputs["k"], v.classification) == (6, "Unconstrained")


def test_not_applicable_without_split():
    pencil = build_curve([L(f"l{i}", (1, i, 0)) for i in range(4)])
    assert verify_line_deletion(pencil, "l0").classification == "NotApplicable"


def test_kind_errors():
    t = tri()
    with pytest.raises(NotAConic):
        verify_conic_deletion(t, "x")
    with pytest.raises(NotALine):
        verify_line_addition(t, Q("q", (1, 0, 0, 1, 0, -2)))


# -- free case and identities ---------------------------------------------------


def test_free_case_checks():
    assert all(c.ok for c in free_case_checks(tri()))
    checks = free_case_checks(load_bundled("near_pencil_4").curve)
    assert {c.value for c in checks if not c.external} == {2, 3}
    with pytest.raises(NotFree):
        free_case_checks(load_bundled("notfree_pencil").curve)


def test_free_6_7_conic_component_check():
    checks = {c.target: c for c in free_case_checks(load_bundled("free_6_7").curve, sample=False)}
    assert checks["C0"].value == 8 and checks["C0"].ok


def test_deletion_context_examples():
    t = tri()
    big = build_curve(list(t.components) + [Q("q", (1, 0, 0, 1, 0, -2))])
    ctx = deletion_context(big, "q")
    assert (ctx.tau_jump, ctx.k0, ctx.k) == (6, -2, 6)
    tangent = build_curve(list(t.components) + [Q("q", (1, -2, -1, 1, -2, -3))])
    ctx = deletion_context(tangent, "q")
    assert (ctx.tau_jump, ctx.k0, ctx.k) == (7, -1, 5)
    ctx = deletion_context(load_bundled("free_6_7").curve, "C0")
    assert (ctx.k, ctx.k0) == (8, 14)


def test_mu_and_delta_formulas():
    t = tri()
    assert mu_formula_check(t, Q("q", (1, 0, 0, 1, 0, -2))).lhs == 12
    assert mu_formula_check(t, Q("q", (1, -2, -1, 1, -2, -3))).lhs == 12
    line = build_curve([L("z", (0, 0, 1))])
    assert mu_formula_check(line, Q("q", (1, 0, 0, 1, 0, -2))).lhs == 4
    assert delta_formula_check(t, Q("q", (1, 0, 0, 1, 0, -2))).lhs == 6
    tangent_line = build_curve([L("y", (0, 1, 0))])
    rep = delta_formula_check(tangent_line, Q("q", (1, 0, 0, 0, -1, 0)))
    assert rep.lhs == 2 and len(rep.terms) == 1
