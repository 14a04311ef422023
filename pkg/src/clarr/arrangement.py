"""Reduced plane curves as labeled lists of lines, smooth conics and generic forms.

Intersections of two components are computed exactly.  Points carry their own
quadratic field: a point of a line and a conic may live in Q(sqrt(m)), and its
conjugate is a different point.  Two points are equal only when their
normalized coordinates agree, so points in different nontrivial extensions are
never merged.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    EmptyCurve,
    IdentityViolated,
    LastComponent,
    MissingSingularData,
    NotReduced,
    SchemaError,
    SingularConic,
    UnknownId,
    UnrepresentablePoint,
)
from .linalg import exact_det
from .polyring import (
    HPoly,
    _coeffs_in,
    binary_form_roots,
    graded_dim,
    ideal_piece_rank,
    partials,
    resultant,
    ugcd,
    utrim,
)
from .scalars import QuadScalar, Scalar, common_ext, parts, render, sqrt_in

CONIC_MONOMIALS = ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))

# projection centres tried when eliminating a variable; the coordinate points
# come first, the rest cover curves through all three of them
CENTRES = (
    (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3), (1, -1, 2),
    (2, 1, -3), (3, -2, 5), (1, 3, -4), (5, 7, 11), (2, -5, 3), (7, 3, -2),
)


class ProjPoint:
    """A point of P^2, normalized so its last nonzero coordinate is 1."""

    __slots__ = ("coords", "_hash")

    def __init__(self, coords: Sequence[Scalar]):
        coords = [Fraction(c) if isinstance(c, int) else c for c in coords]
        if len(coords) != 3:
            raise ValueError("a projective point has three coordinates")
        for i in (2, 1, 0):
            if coords[i]:
                piv = coords[i]
                break
        else:
            raise ValueError("(0:0:0) is not a projective point")
        common_ext(coords)
        norm = []
        for c in coords:
            v = c / piv if c else Fraction(0)
            if isinstance(v, QuadScalar) and not v.b:
                v = v.a
            norm.append(v)
        self.coords = tuple(norm)
        self._hash = hash(self.coords)

    @property
    def ext(self) -> int:
        return common_ext(self.coords)

    @property
    def chart(self) -> int:
        """Index of the last nonzero coordinate (the preferred affine chart)."""
        for i in (2, 1, 0):
            if self.coords[i]:
                return i
        raise AssertionError("unreachable")

    def is_rational(self) -> bool:
        return self.ext == 0

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjPoint) and self.coords == other.coords

    def __hash__(self) -> int:
        return self._hash

    def sort_key(self):
        key = [self.ext]
        for c in self.coords:
            key.extend(parts(c))
        return tuple(key)

    def __lt__(self, other: ProjPoint) -> bool:
        return self.sort_key() < other.sort_key()

    def render(self) -> str:
        return "(" + " : ".join(render(c) for c in self.coords) + ")"

    __str__ = render

    def __repr__(self) -> str:
        return f"ProjPoint{self.render()}"

    def to_json(self) -> list[str]:
        return [render(c) for c in self.coords]


@dataclass(frozen=True)
class SuppliedPoint:
    """User-supplied singular point of a generic component."""

    point: ProjPoint
    branches: int


@dataclass(frozen=True)
class Component:
    id: str
    kind: str  # "line" | "conic" | "generic"
    poly: HPoly = field(compare=False)
    coeffs: tuple = ()
    singular_points: tuple[SuppliedPoint, ...] = ()

    @property
    def degree(self) -> int:
        return self.poly.degree

    @classmethod
    def line(cls, id: str, coeffs: Sequence) -> Component:
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != 3:
            raise SchemaError(f"line {id!r} needs 3 coefficients")
        if not any(coeffs):
            raise SchemaError(f"line {id!r} has all coefficients zero")
        return cls(id, "line", HPoly.linear(*coeffs), coeffs)

    @classmethod
    def conic(cls, id: str, coeffs: Sequence) -> Component:
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != 6:
            raise SchemaError(f"conic {id!r} needs 6 coefficients (x2, xy, xz, y2, yz, z2)")
        if conic_determinant(coeffs) == 0:
            raise SingularConic(f"conic {id!r} is singular (determinant 0)")
        return cls(id, "conic", HPoly(dict(zip(CONIC_MONOMIALS, coeffs)), degree=2), coeffs)

    @classmethod
    def from_poly(cls, id: str, poly: HPoly | str, singular_points: Iterable = ()) -> Component:
        """Classify a form: degree 1 -> line, smooth degree 2 -> conic, else generic."""
        if isinstance(poly, str):
            poly = HPoly.parse(poly)
        if poly.degree == 1:
            return cls.line(id, [poly.coefficient(m) for m in ((1, 0, 0), (0, 1, 0), (0, 0, 1))])
        if poly.degree == 2:
            coeffs = [poly.coefficient(m) for m in CONIC_MONOMIALS]
            if conic_determinant(coeffs) != 0:
                return cls.conic(id, coeffs)
        return cls.generic(id, poly, singular_points)

    @classmethod
    def generic(cls, id: str, poly: HPoly | str, singular_points: Iterable = ()) -> Component:
        if isinstance(poly, str):
            poly = HPoly.parse(poly)
        if poly.degree < 1 or poly.is_zero():
            raise SchemaError(f"generic component {id!r} must be a non-constant form")
        if not poly.is_rational():
            raise SchemaError(f"generic component {id!r} must have rational coefficients")
        if not is_squarefree_form(poly):
            raise NotReduced(f"generic component {id!r} is not squarefree")
        pts = []
        for sp in singular_points:
            if not isinstance(sp, SuppliedPoint):
                sp = SuppliedPoint(sp[0], int(sp[1]))
            if poly.evaluate(sp.point.coords) != 0:
                raise SchemaError(f"supplied point {sp.point} is not on {id!r}")
            if sp.branches < 1:
                raise SchemaError("branch counts must be positive")
            pts.append(sp)
        return cls(id, "generic", poly, (), tuple(pts))

    def contains(self, P: ProjPoint) -> bool:
        return self.poly.evaluate(P.coords) == 0

    def to_json(self) -> dict:
        out: dict = {"id": self.id, "type": self.kind}
        if self.kind == "generic":
            out["poly"] = str(self.poly)
            out["singular_points"] = [
                {"point": sp.point.to_json(), "branches": sp.branches} for sp in self.singular_points
            ]
        else:
            out["coeffs"] = [render(c) for c in self.coeffs]
        return out


def conic_determinant(coeffs: Sequence) -> Fraction:
    A, B, C, D, E, F = (Fraction(c) for c in coeffs)
    return exact_det([[A, B / 2, C / 2], [B / 2, D, E / 2], [C / 2, E / 2, F]])


def is_squarefree_form(f: HPoly) -> bool:
    """A form is squarefree iff its singular scheme is 0-dimensional, i.e. the
    Hilbert function of S/J_f is eventually constant (checked at 3d-6.. 3d-4)."""
    d = f.degree
    if d <= 1:
        return True
    J = partials(f)
    k0 = max(3 * d - 6, 0)
    vals = {graded_dim(k) - ideal_piece_rank(J, k) for k in range(k0, k0 + 3)}
    return len(vals) == 1


@dataclass(frozen=True)
class IntersectionRecord:
    point: ProjPoint
    pair: tuple[str, str]
    multiplicity: int


# -- intersection algorithms -------------------------------------------------


def _line_points(coeffs) -> tuple[tuple, tuple]:
    a, b, c = coeffs
    cands = [(b, -a, Fraction(0)), (c, Fraction(0), -a), (Fraction(0), c, -b)]
    cands = [v for v in cands if any(v)]
    u = cands[0]
    for v in cands[1:]:
        cross = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])
        if any(cross):
            return u, v
    raise AssertionError("degenerate line")


def line_line(l1: Sequence, l2: Sequence) -> list[tuple[ProjPoint, int]]:
    a1, b1, c1 = l1
    a2, b2, c2 = l2
    p = (b1 * c2 - c1 * b2, c1 * a2 - a1 * c2, a1 * b2 - b1 * a2)
    if not any(p):
        raise NotReduced("coincident lines")
    return [(ProjPoint(p), 1)]


def line_curve(line: Sequence, q: HPoly) -> list[tuple[ProjPoint, int]]:
    """Points of a line and a conic (quadratic formula on a parametrization)."""
    if q.degree != 2:
        raise ValueError("line_curve handles conics only")
    u, v = _line_points(line)
    Qu = q.evaluate(u)
    Qv = q.evaluate(v)
    Quv = q.evaluate(tuple(u[i] + v[i] for i in range(3)))
    A, B, C = Qu, Quv - Qu - Qv, Qv

    def pt(s, t):
        return ProjPoint(tuple(s * u[i] + t * v[i] for i in range(3)))

    if A == 0:
        if B == 0:
            if C == 0:
                raise NotReduced("line is a component of the conic")
            return [(pt(1, 0), 2)]
        return [(pt(1, 0), 1), (pt(C, -B), 1)]
    disc = B * B - 4 * A * C
    if disc == 0:
        return [(pt(-B / (2 * A), 1), 2)]
    root = sqrt_in(disc)
    return [(pt((-B + root) / (2 * A), 1), 1), (pt((-B - root) / (2 * A), 1), 1)]


def _basis_for_centre(c) -> list[list[Fraction]]:
    """3x3 matrix with first column c completed by two standard basis vectors."""
    i = next(k for k in range(3) if c[k])
    others = [k for k in range(3) if k != i]
    M = [[Fraction(0)] * 3 for _ in range(3)]
    for r in range(3):
        M[r][0] = Fraction(c[r])
    M[others[0]][1] = Fraction(1)
    M[others[1]][2] = Fraction(1)
    return M


def _choose_centre(p: HPoly, q: HPoly):
    for c in CENTRES:
        if p.evaluate(c) != 0 and q.evaluate(c) != 0:
            return c
    raise UnrepresentablePoint("no projection centre off both curves")


def _fiber_roots(g: list, m: int) -> list:
    """Distinct roots of a monic polynomial of degree <= 2 over Q(sqrt(m))."""
    g = utrim(g)
    deg = len(g) - 1
    if deg == 1:
        return [-g[0] / g[1]]
    if deg == 2:
        c0, c1, c2 = g
        disc = c1 * c1 - 4 * c2 * c0
        if disc == 0:
            return [-c1 / (2 * c2)]
        root = sqrt_in(disc, m)
        if root is None:
            raise UnrepresentablePoint("intersection point needs a second quadratic extension")
        return [(-c1 + root) / (2 * c2), (-c1 - root) / (2 * c2)]
    raise UnrepresentablePoint(f"fiber of degree {deg} over Q(sqrt({m}))")


def curve_curve(p: HPoly, q: HPoly) -> list[tuple[ProjPoint, int]]:
    """Intersection of two plane curves without common component via resultants.

    A projection centre off both curves is moved to (1:0:0) and x eliminated.
    Every root of the resultant is lifted by a gcd along its fiber.  When a fiber
    holds a single point its multiplicity is the resultant root multiplicity;
    otherwise it is the local intersection number.
    """
    from .local_invariants import intersection_multiplicity

    c = _choose_centre(p, q)
    M = _basis_for_centre(c)
    P = p.substitute_linear(M)
    Q = q.substitute_linear(M)
    R = resultant(P, Q, 0)
    if R.is_zero():
        raise NotReduced("curves share a component")
    out: list[tuple[ProjPoint, int]] = []
    for root, mult, deg in binary_form_roots(R, 0):
        if root is None:
            raise UnrepresentablePoint(f"resultant has an irreducible factor of degree {deg}")
        u0, w0 = root
        m = common_ext((u0, w0))
        at = {1: u0, 2: w0}
        g = ugcd(_coeffs_in(P, 0, at), _coeffs_in(Q, 0, at))
        if len(g) < 2:
            raise IdentityViolated("resultant root without a common fiber point")
        xs = _fiber_roots(g, m)
        pts = []
        for x0 in xs:
            new = (x0, u0, w0)
            old = tuple(sum((M[r][j] * new[j] for j in range(3)), Fraction(0)) for r in range(3))
            pts.append(ProjPoint(old))
        if len(pts) == 1:
            out.append((pts[0], mult))
        else:
            for pt in pts:
                out.append((pt, intersection_multiplicity(p, q, pt)))
    total = sum(mu for _, mu in out)
    if total != p.degree * q.degree:
        raise IdentityViolated(f"Bezout: multiplicities sum to {total}, expected {p.degree * q.degree}")
    return out


_INTERSECTION_CACHE: dict = {}


def _intersect_polys(c1: Component, c2: Component) -> list[tuple[ProjPoint, int]]:
    key = (c1.kind, c1.poly, c2.kind, c2.poly)
    hit = _INTERSECTION_CACHE.get(key)
    if hit is not None:
        return hit
    if c1.kind == "line" and c2.kind == "line":
        res = line_line(c1.coeffs, c2.coeffs)
    elif c1.kind == "line" and c2.kind == "conic":
        res = line_curve(c1.coeffs, c2.poly)
    elif c2.kind == "line" and c1.kind == "conic":
        res = line_curve(c2.coeffs, c1.poly)
    else:
        res = curve_curve(c1.poly, c2.poly)
    _INTERSECTION_CACHE[key] = res
    return res


def intersect(c1: Component, c2: Component) -> list[IntersectionRecord]:
    """All intersection points of two distinct components, with multiplicities."""
    if c1.id == c2.id:
        raise ValueError("cannot intersect a component with itself")
    if _proportional(c1.poly, c2.poly):
        raise NotReduced(f"{c1.id} and {c2.id} are proportional")
    recs = [IntersectionRecord(P, (c1.id, c2.id), mu) for P, mu in _intersect_polys(c1, c2)]
    return sorted(recs, key=lambda r: r.point.sort_key())


def _proportional(p: HPoly, q: HPoly) -> bool:
    if p.degree != q.degree or set(p.terms) != set(q.terms):
        return False
    mono = next(iter(p.terms))
    ratio = q.terms[mono] / p.terms[mono]
    return all(q.terms[m] == ratio * c for m, c in p.terms.items())


def share_component(p: HPoly, q: HPoly) -> bool:
    """True when two forms have a common factor of positive degree."""
    if _proportional(p, q):
        return True
    c = _choose_centre(p, q)
    M = _basis_for_centre(c)
    return resultant(p.substitute_linear(M), q.substitute_linear(M), 0).is_zero()


# -- curves ---------------------------------------------------------------------


class Curve:
    """An ordered tuple of components.  Build through :func:`build_curve`."""

    def __init__(self, components: Sequence[Component]):
        self.components: tuple[Component, ...] = tuple(components)
        self._by_id = {c.id: c for c in self.components}

    @cached_property
    def f(self) -> HPoly:
        out = HPoly({(0, 0, 0): 1}, degree=0)
        for c in self.components:
            out = out * c.poly
        return out

    @property
    def degree(self) -> int:
        return sum(c.degree for c in self.components)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.components)

    def component(self, cid: str) -> Component:
        try:
            return self._by_id[cid]
        except KeyError:
            raise UnknownId(f"no component with id {cid!r}") from None

    def __contains__(self, cid: str) -> bool:
        return cid in self._by_id

    def __len__(self) -> int:
        return len(self.components)

    def sub(self, ids: Iterable[str]) -> Curve:
        keep = set(ids)
        return Curve([c for c in self.components if c.id in keep])

    def lines(self) -> list[Component]:
        return [c for c in self.components if c.kind == "line"]

    def conics(self) -> list[Component]:
        return [c for c in self.components if c.kind == "conic"]

    def is_cl(self) -> bool:
        return all(c.kind in ("line", "conic") for c in self.components)

    def through(self, P: ProjPoint) -> tuple[str, ...]:
        return tuple(c.id for c in self.components if c.contains(P))

    def local_factor(self, P: ProjPoint) -> HPoly:
        """Product of the components through P (the others are units near P)."""
        out = HPoly({(0, 0, 0): 1}, degree=0)
        for c in self.components:
            if c.contains(P):
                out = out * c.poly
        return out

    @cached_property
    def _singular(self) -> tuple[tuple[ProjPoint, tuple[str, ...]], ...]:
        pts: set = set()
        for c1, c2 in combinations(self.components, 2):
            for P, _ in _intersect_polys(c1, c2):
                pts.add(P)
        for c in self.components:
            if c.kind == "generic":
                for sp in c.singular_points:
                    pts.add(sp.point)
        return tuple((P, self.through(P)) for P in sorted(pts, key=ProjPoint.sort_key))

    def __repr__(self) -> str:
        return f"Curve({', '.join(self.ids)}; d={self.degree})"


def build_curve(components: Sequence[Component]) -> Curve:
    """Validate and assemble a reduced curve."""
    components = list(components)
    if not components:
        raise EmptyCurve("a curve needs at least one component")
    seen = set()
    for c in components:
        if c.id in seen:
            raise SchemaError(f"duplicate component id {c.id!r}")
        seen.add(c.id)
        if c.kind == "conic" and conic_determinant(c.coeffs) == 0:
            raise SingularConic(f"conic {c.id!r} is singular")
    for c1, c2 in combinations(components, 2):
        _check_pair(c1, c2)
    return Curve(components)


def _check_pair(c1: Component, c2: Component) -> None:
    if _proportional(c1.poly, c2.poly):
        raise NotReduced(f"components {c1.id!r} and {c2.id!r} are proportional")
    if (c1.kind == "generic" or c2.kind == "generic") and share_component(c1.poly, c2.poly):
        raise NotReduced(f"components {c1.id!r} and {c2.id!r} share a component")


def delete(curve: Curve, cid: str) -> Curve:
    curve.component(cid)
    if len(curve) < 2:
        raise LastComponent("cannot delete the last component")
    return Curve([c for c in curve.components if c.id != cid])


def add(curve: Curve, comp: Component) -> Curve:
    if comp.id in curve:
        raise SchemaError(f"duplicate component id {comp.id!r}")
    for c in curve.components:
        _check_pair(c, comp)
    return Curve(list(curve.components) + [comp])


def singular_points(curve: Curve) -> list[tuple[ProjPoint, tuple[str, ...]]]:
    """Pairwise intersection points plus supplied singular points of generic components.

    Each point comes with the ids of the components through it.
    """
    for c in curve.components:
        if c.kind == "generic" and c.degree >= 3 and not c.singular_points and not _smooth_form(c.poly):
            raise MissingSingularData(f"generic component {c.id!r} has no supplied singular points")
    return list(curve._singular)


def _smooth_form(f: HPoly) -> bool:
    """A form with empty singular locus: the Jacobian ideal contains a power of
    the irrelevant ideal, detected by the Hilbert function vanishing at 3d-5."""
    d = f.degree
    k = max(3 * d - 5, 0)
    return graded_dim(k) == ideal_piece_rank(partials(f), k)


def points_between(curve: Curve, ids_a: Iterable[str], ids_b: Iterable[str]) -> list[ProjPoint]:
    """Distinct points of (union of ids_a) meet (union of ids_b)."""
    A = [curve.component(i) for i in ids_a]
    B = [curve.component(i) for i in ids_b]
    pts = set()
    for a in A:
        for b in B:
            if a.id != b.id:
                for P, _ in _intersect_polys(a, b):
                    pts.add(P)
    return sorted(pts, key=ProjPoint.sort_key)


def intersection_count(curve: Curve, ids_a: Iterable[str], ids_b: Iterable[str]) -> int:
    return len(points_between(curve, ids_a, ids_b))


__all__ = [
    "Component",
    "Curve",
    "IntersectionRecord",
    "ProjPoint",
    "SuppliedPoint",
    "add",
    "build_curve",
    "delete",
    "intersect",
    "intersection_count",
    "points_between",
    "singular_points",
]
