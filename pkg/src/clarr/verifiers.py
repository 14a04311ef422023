"""Case analysis of the line and conic addition-deletion theorems on concrete curves.

Every verifier takes the Chern splitting (a, b) from the computed global
invariants, evaluates the relevant count, classifies it, and cross-checks the
classification against the direct freeness test.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .arrangement import (
    Component,
    Curve,
    ProjPoint,
    add,
    conic_determinant,
    delete,
    intersection_count,
    points_between,
    singular_points,
)
from .errors import (
    IdentityViolated,
    NotAConic,
    NotALine,
    NotFree,
    NotReduced,
    SingularConic,
    UnrepresentablePoint,
)
from .global_invariants import FreenessReport, chern, freeness
from .local_invariants import epsilon_pair, local_data, milnor, pmap, tjurina

FORCED_FREE = "ForcedFree"
FORCED_NON_FREE = "ForcedNonFree"
UNCONSTRAINED = "Unconstrained"
VIOLATED = "DichotomyViolated"
NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class Verdict:
    case_label: str
    classification: str
    exponents: tuple[int, int] | None = None
    inputs: dict = field(default_factory=dict, compare=False)
    consistent_with_direct: bool = True

    def to_json(self) -> dict:
        return {
            "case": self.case_label,
            "classification": self.classification,
            "exponents": list(self.exponents) if self.exponents else None,
            "inputs": self.inputs,
            "consistent_with_direct": self.consistent_with_direct,
        }

    @property
    def ok(self) -> bool:
        return self.classification != VIOLATED and self.consistent_with_direct


def _consistent(cls: str, ab, direct: FreenessReport) -> bool:
    if cls == FORCED_FREE:
        return direct.is_free and direct.exponents == tuple(ab)
    if cls == FORCED_NON_FREE:
        return not direct.is_free
    return cls != VIOLATED


def _verdict(label: str, cls: str, ab, inputs: dict, direct: FreenessReport) -> Verdict:
    return Verdict(label, cls, tuple(ab) if cls == FORCED_FREE else None, inputs, _consistent(cls, ab, direct))


# -- pure case tables ------------------------------------------------------------


def classify_line_deletion(x: int, a: int, b: int) -> tuple[str, str]:
    """x = |C' meet L| + eps(C, C')."""
    if x in (a + 1, b + 1):
        return "A.1.b", FORCED_FREE
    if x > b + 1:
        return "A.1.c", FORCED_NON_FREE
    if x > a + 1:
        return "A.1.a", VIOLATED
    return "A.1.a", UNCONSTRAINED


def classify_line_addition(x: int, a: int, b: int) -> tuple[str, str]:
    """x = |C meet L| + eps(C u L, C)."""
    if x in (a + 1, b + 1):
        return "A.2.b", FORCED_FREE
    if x < a + 1:
        return "A.2.c", FORCED_NON_FREE
    if x < b + 1:
        return "A.2.a", VIOLATED
    return "A.2.a", UNCONSTRAINED


def classify_conic_deletion(k: int, a: int, b: int) -> tuple[str, str]:
    m, odd = divmod(k, 2)
    if not odd:
        if m in (a, b):
            return "B1.1.a", FORCED_FREE
        if m < a:
            return "B1.1.b", UNCONSTRAINED
        if m > b:
            return "B1.1.c", FORCED_NON_FREE
        return "B1.1", VIOLATED
    if m == a - 1:
        return "B1.2.a", FORCED_FREE
    if m == b - 1:
        # the theorem forces a = b = m + 1 here, so a < b is a contradiction
        return ("B1.2.a", FORCED_FREE) if a == b else ("B1.2.a", VIOLATED)
    if m < a - 1:
        return "B1.2.b", UNCONSTRAINED
    if m > b - 1:
        return "B1.2.c", FORCED_NON_FREE
    return "B1.2", VIOLATED


def classify_conic_addition(k: int, a: int, b: int) -> tuple[str, str]:
    m, odd = divmod(k, 2)
    if not odd:
        if m in (a, b):
            return "B2.1.a", FORCED_FREE
        if m < a:
            return "B2.1.b", FORCED_NON_FREE
        if m > b:
            return "B2.1.c", UNCONSTRAINED
        return "B2.1", VIOLATED
    if m == a:
        return ("B2.2.a", FORCED_FREE) if a == b else ("B2.2.a", VIOLATED)
    if m == b:
        return "B2.2.b", FORCED_FREE
    if m < a:
        return "B2.2.c", FORCED_NON_FREE
    if m > b:
        return "B2.2.d", UNCONSTRAINED
    return "B2.2", VIOLATED


# -- verifiers on curves ---------------------------------------------------------


def _split_or_none(curve: Curve):
    ch = chern(curve)
    return ch.split, ch


def _not_applicable(label: str, ch) -> Verdict:
    return Verdict(label, NOT_APPLICABLE, None, {"c1": ch.c1, "c2": ch.c2}, True)


def verify_line_deletion(curve: Curve, line_id: str, direct: FreenessReport | None = None) -> Verdict:
    L = curve.component(line_id)
    if L.kind != "line":
        raise NotALine(f"{line_id!r} is not a line")
    ab, ch = _split_or_none(curve)
    if ab is None:
        return _not_applicable("A.1", ch)
    small = delete(curve, line_id)
    n = intersection_count(curve, small.ids, [line_id])
    eps = epsilon_pair(curve, small)
    label, cls = classify_line_deletion(n + eps, *ab)
    direct = direct or freeness(curve)
    inputs = {"count": n, "epsilon": eps, "x": n + eps, "a": ab[0], "b": ab[1]}
    return _verdict(label, cls, ab, inputs, direct)


def verify_line_addition(curve: Curve, line: Component, direct: FreenessReport | None = None) -> Verdict:
    if line.kind != "line":
        raise NotALine(f"{line.id!r} is not a line")
    ab, ch = _split_or_none(curve)
    if ab is None:
        return _not_applicable("A.2", ch)
    big = add(curve, line)
    n = intersection_count(big, curve.ids, [line.id])
    eps = epsilon_pair(big, curve)
    label, cls = classify_line_addition(n + eps, *ab)
    direct = direct or freeness(curve)
    inputs = {"count": n, "epsilon": eps, "x": n + eps, "a": ab[0], "b": ab[1]}
    return _verdict(label, cls, ab, inputs, direct)


def verify_conic_deletion(curve: Curve, conic_id: str, direct: FreenessReport | None = None) -> Verdict:
    C0 = curve.component(conic_id)
    if C0.kind != "conic":
        raise NotAConic(f"{conic_id!r} is not a smooth conic")
    ab, ch = _split_or_none(curve)
    if ab is None:
        return _not_applicable("B1", ch)
    small = delete(curve, conic_id)
    n = intersection_count(curve, small.ids, [conic_id])
    eps = epsilon_pair(curve, small)
    k = n + eps
    label, cls = classify_conic_deletion(k, *ab)
    direct = direct or freeness(curve)
    inputs = {"count": n, "epsilon": eps, "k": k, "m": k // 2, "parity": "odd" if k % 2 else "even",
              "a": ab[0], "b": ab[1]}
    return _verdict(label, cls, ab, inputs, direct)


def verify_conic_addition(curve: Curve, conic: Component, direct: FreenessReport | None = None) -> Verdict:
    if conic.kind != "conic":
        raise NotAConic(f"{conic.id!r} is not a smooth conic")
    if conic_determinant(conic.coeffs) == 0:
        raise SingularConic(f"{conic.id!r} is singular")
    ab, ch = _split_or_none(curve)
    if ab is None:
        return _not_applicable("B2", ch)
    big = add(curve, conic)
    n = intersection_count(big, curve.ids, [conic.id])
    eps = epsilon_pair(big, curve)
    k = n + eps
    label, cls = classify_conic_addition(k, *ab)
    direct = direct or freeness(curve)
    inputs = {"count": n, "epsilon": eps, "k": k, "m": k // 2, "parity": "odd" if k % 2 else "even",
              "a": ab[0], "b": ab[1]}
    return _verdict(label, cls, ab, inputs, direct)


# -- free case -------------------------------------------------------------------


def _free_line_ok(x: int, a: int, b: int, component: bool) -> bool:
    if component:
        return x <= a + 1 or x == b + 1
    return x == a + 1 or x >= b + 1


def _free_conic_ok(k: int, a: int, b: int, component: bool) -> bool:
    m, odd = divmod(k, 2)
    if component:
        return (m == b or m <= a) if not odd else (m == a - 1 == b - 1 or m <= a - 1)
    return (m == a or m >= b) if not odd else (m == a == b or m >= b)


GENERIC_LINE = (Fraction(3), Fraction(5), Fraction(7))
GENERIC_CONIC = tuple(Fraction(c) for c in (1, 3, -5, 2, 7, -11))
MAX_SAMPLED_LINES = 24
MAX_SAMPLED_CONICS = 8


def _line_through(P: ProjPoint, Q: ProjPoint) -> tuple:
    p, q = P.coords, Q.coords
    return (p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0])


def _conic_through(pts: list[ProjPoint]):
    """Coefficients of the conic through five points, or None if not unique."""
    from .arrangement import CONIC_MONOMIALS
    from .polyring import HPoly

    rows = [[HPoly({m: 1}, degree=2).evaluate(P.coords) for m in CONIC_MONOMIALS] for P in pts]
    # kernel of a 5x6 matrix by Gauss-Jordan
    M = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(6):
        piv = next((i for i in range(r, 5) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(5):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [M[i][j] - f * M[r][j] for j in range(6)]
        pivots.append(c)
        r += 1
    free = [c for c in range(6) if c not in pivots]
    if len(free) != 1:
        return None
    fc = free[0]
    sol = [Fraction(0)] * 6
    sol[fc] = Fraction(1)
    for i, c in enumerate(pivots):
        sol[c] = -M[i][fc]
    return tuple(sol)


def sample_external_lines(curve: Curve) -> list[Component]:
    pts = [P for P, _ in singular_points(curve) if P.is_rational()]
    out, seen = [], set()
    cands = [_line_through(P, Q) for P, Q in combinations(pts, 2)] + [GENERIC_LINE]
    for coeffs in cands:
        if not any(coeffs):
            continue
        comp = Component.line(f"ext_line_{len(out)}", coeffs)
        key = ProjPoint(comp.coeffs)
        if key in seen or any(_same_poly(comp, c) for c in curve.components):
            continue
        seen.add(key)
        out.append(comp)
        if len(out) >= MAX_SAMPLED_LINES:
            break
    if not any(c.coeffs == GENERIC_LINE for c in out):
        comp = Component.line(f"ext_line_{len(out)}", GENERIC_LINE)
        if not any(_same_poly(comp, c) for c in curve.components):
            out.append(comp)
    return out


def sample_external_conics(curve: Curve) -> list[Component]:
    pts = [P for P, _ in singular_points(curve) if P.is_rational()]
    out = []
    for five in combinations(pts, 5):
        if len(out) >= MAX_SAMPLED_CONICS:
            break
        coeffs = _conic_through(list(five))
        if coeffs is None or conic_determinant(coeffs) == 0:
            continue
        comp = Component.conic(f"ext_conic_{len(out)}", coeffs)
        if any(_same_poly(comp, c) for c in curve.components) or any(_same_poly(comp, c) for c in out):
            continue
        out.append(comp)
    out.append(Component.conic(f"ext_conic_{len(out)}", GENERIC_CONIC))
    return out


def _same_poly(c1: Component, c2: Component) -> bool:
    from .arrangement import _proportional

    return _proportional(c1.poly, c2.poly)


@dataclass(frozen=True)
class FreeCaseCheck:
    target: str
    kind: str  # "line" | "conic"
    external: bool
    value: int | None
    ok: bool
    skipped: str | None = None

    def to_json(self) -> dict:
        return {"target": self.target, "kind": self.kind, "external": self.external,
                "value": self.value, "ok": self.ok, "skipped": self.skipped}


def free_case_checks(curve: Curve, direct: FreenessReport | None = None, sample: bool = True) -> list[FreeCaseCheck]:
    """Sharper statements valid for free curves, on every component line/conic
    and on a deterministic family of external lines and conics.

    External objects whose intersection with the curve needs more than one
    quadratic extension are skipped and reported as such.
    """
    direct = direct or freeness(curve)
    if not direct.is_free:
        raise NotFree("free_case_checks needs a free curve")
    a, b = direct.exponents

    def comp_check(c: Component) -> FreeCaseCheck:
        small = delete(curve, c.id)
        x = intersection_count(curve, small.ids, [c.id]) + epsilon_pair(curve, small)
        ok = _free_line_ok(x, a, b, True) if c.kind == "line" else _free_conic_ok(x, a, b, True)
        return FreeCaseCheck(c.id, c.kind, False, x, ok)

    def ext_check(c: Component) -> FreeCaseCheck:
        try:
            big = add(curve, c)
            x = intersection_count(big, curve.ids, [c.id]) + epsilon_pair(big, curve)
        except (UnrepresentablePoint, NotReduced) as e:
            return FreeCaseCheck(c.id, c.kind, True, None, True, type(e).__name__)
        ok = _free_line_ok(x, a, b, False) if c.kind == "line" else _free_conic_ok(x, a, b, False)
        return FreeCaseCheck(c.id, c.kind, True, x, ok)

    own = [c for c in curve.components if c.kind in ("line", "conic")]
    checks = pmap(comp_check, own)
    if sample and len(curve) > 1:
        ext = sample_external_lines(curve) + sample_external_conics(curve)
        checks += pmap(ext_check, ext)
    return checks


# -- addition-deletion identities ------------------------------------------------


@dataclass(frozen=True)
class DeletionContext:
    k: int
    k0: int
    epsilon_sum: int
    reduced_point_count: int
    tau_jump: int
    degree: int

    def to_json(self) -> dict:
        return {"k": self.k, "k0": self.k0, "epsilon_sum": self.epsilon_sum,
                "reduced_point_count": self.reduced_point_count, "tau_jump": self.tau_jump,
                "deg_C": self.degree, "k_plus_k0": self.k + self.k0, "expected": 2 * (self.degree - 1)}


def deletion_context(curve_with_conic: Curve, conic_id: str) -> DeletionContext:
    """k, k0 and the tau jump for C = curve minus the conic."""
    C0 = curve_with_conic.component(conic_id)
    if C0.kind != "conic":
        raise NotAConic(f"{conic_id!r} is not a smooth conic")
    big = curve_with_conic
    small = delete(big, conic_id)
    pts = points_between(big, small.ids, [conic_id])
    tau_jump = 0
    eps = 0
    for P in pts:
        hb, hs = big.local_factor(P), small.local_factor(P)
        tb, ts = tjurina(hb, P), tjurina(hs, P)
        mb, ms = milnor(hb, P), milnor(hs, P)
        tau_jump += tb - ts
        eps += (mb - tb) - (ms - ts)
    n = len(pts)
    k = n + eps
    dC = small.degree
    k0 = -2 + tau_jump - 2 * dC
    if k + k0 != 2 * (dC - 1):
        raise IdentityViolated(f"k + k0 = {k + k0}, expected {2 * (dC - 1)}")
    return DeletionContext(k, k0, eps, n, tau_jump, dC)


@dataclass(frozen=True)
class IdentityReport:
    name: str
    lhs: int
    rhs: int
    terms: tuple = ()

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs, "holds": self.holds,
                "terms": [[P.to_json(), t] for P, t in self.terms]}


def _jumps(curve: Curve, conic: Component):
    if conic.kind != "conic":
        raise NotAConic(f"{conic.id!r} is not a smooth conic")
    big = add(curve, conic)
    pts = points_between(big, curve.ids, [conic.id])
    return big, pts


def mu_formula_check(curve: Curve, conic: Component) -> IdentityReport:
    """Sum over C meet C0 of mu_P(C u C0) - mu_P(C) + 1 equals 4 deg C."""
    big, pts = _jumps(curve, conic)
    terms = []
    for P in pts:
        mb = milnor(big.local_factor(P), P)
        ms = milnor(curve.local_factor(P), P)
        terms.append((P, mb - ms + 1))
    rep = IdentityReport("mu_formula", sum(t for _, t in terms), 4 * curve.degree, tuple(terms))
    if not rep.holds:
        raise IdentityViolated(f"mu formula: {rep.lhs} != {rep.rhs}")
    return rep


def delta_formula_check(curve: Curve, conic: Component) -> IdentityReport:
    """Sum over C meet C0 of delta_P(C u C0) - delta_P(C) equals 2 deg C."""
    big, pts = _jumps(curve, conic)
    terms = []
    for P in pts:
        db = local_data(big, P).delta
        ds = local_data(curve, P).delta
        terms.append((P, db - ds))
    rep = IdentityReport("delta_formula", sum(t for _, t in terms), 2 * curve.degree, tuple(terms))
    if not rep.holds:
        raise IdentityViolated(f"delta formula: {rep.lhs} != {rep.rhs}")
    return rep


def identity_suite(curve: Curve, conic: Component) -> dict:
    """All addition-deletion identities for the pair (curve, external conic)."""
    big = add(curve, conic)
    ctx = deletion_context(big, conic.id)
    return {
        "deletion_context": ctx,
        "mu_formula": mu_formula_check(curve, conic),
        "delta_formula": delta_formula_check(curve, conic),
    }


__all__ = [
    "DeletionContext",
    "FreeCaseCheck",
    "IdentityReport",
    "Verdict",
    "classify_conic_addition",
    "classify_conic_deletion",
    "classify_line_addition",
    "classify_line_deletion",
    "deletion_context",
    "delta_formula_check",
    "free_case_checks",
    "identity_suite",
    "mu_formula_check",
    "verify_conic_addition",
    "verify_conic_deletion",
    "verify_line_addition",
    "verify_line_deletion",
]
