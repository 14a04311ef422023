"""Milnor and Tjurina numbers, branch counts, delta and the epsilon defect.

Everything is reduced to one primitive: the dimension of O/I for an ideal I of
the local ring at the origin of the affine plane.  It is computed as the
dimension of C[u,v]/(I + m^N) for growing N.  Once two consecutive orders agree,
m^N lies in I + m^(N+1), hence in I by Nakayama, so the value is final.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Iterable, Sequence

from .arrangement import Curve, ProjPoint, singular_points
from .errors import MissingSingularData, NotFiniteColength, ParityError
from .linalg import exact_rank
from .polyring import AffinePoly, HPoly


@dataclass(frozen=True)
class SingularityData:
    point: ProjPoint
    mu: int
    tau: int
    branches: int
    delta: int
    epsilon: int
    components: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "point": self.point.to_json(),
            "components": list(self.components),
            "mu": self.mu,
            "tau": self.tau,
            "epsilon": self.epsilon,
            "branches": self.branches,
            "delta": self.delta,
        }


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("CLARR_THREADS", "1")))
    except ValueError:
        return 1


def pmap(fn: Callable, items: Sequence) -> list:
    """Order-preserving map, run on CLARR_THREADS worker threads."""
    n = thread_count()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))


# -- the local algebra ---------------------------------------------------------


def _truncated_dim(gens: Sequence[AffinePoly], N: int) -> int:
    monos = [(i, s - i) for s in range(N) for i in range(s, -1, -1)]
    index = {m: k for k, m in enumerate(monos)}
    rows = []
    for g in gens:
        og = g.order()
        for (a, b) in monos:
            if a + b + og >= N:
                continue
            row = [Fraction(0)] * len(monos)
            for (e1, e2), c in g.terms.items():
                k = index.get((e1 + a, e2 + b))
                if k is not None:
                    row[k] = c
            rows.append(row)
    if not rows:
        return len(monos)
    return len(monos) - exact_rank(rows)


def local_algebra_dim(gens: Iterable[AffinePoly], bound: int | None = None, start: int = 3) -> int:
    """dim_C O_0 / (gens) for polynomials in (u, v), by truncation.

    ``bound`` is a crude a-priori bound on the answer; the search gives up at
    order 2*bound + 4 and raises NotFiniteColength.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise NotFiniteColength("zero ideal")
    if any(g.coefficient((0, 0)) for g in gens):
        return 0
    if bound is None:
        degs = sorted((g.total_degree() for g in gens), reverse=True)
        bound = degs[0] * degs[1] if len(degs) > 1 else degs[0] ** 2
    cap = 2 * bound + 4
    N = start
    prev = _truncated_dim(gens, N)
    while N < cap:
        N += 1
        cur = _truncated_dim(gens, N)
        if cur == prev:
            return cur
        prev = cur
    raise NotFiniteColength(f"no stabilization up to truncation order {cap}")


def _power_coeffs(p, e: int) -> list:
    """Coefficients (low first) of (p + t)^e."""
    return [comb(e, k) * p ** (e - k) for k in range(e + 1)]


def localize(f: HPoly, P: ProjPoint, chart: int | None = None) -> AffinePoly:
    """f in the affine chart X_chart = 1, translated so that P is the origin.

    The chart variables (u, v) are the two remaining coordinates in order.
    """
    if chart is None:
        chart = P.chart
    if not P.coords[chart]:
        raise ValueError(f"point {P} is not in chart {chart}")
    pc = P.coords[chart]
    pt = [c / pc for c in P.coords]
    i, j = [k for k in range(3) if k != chart]
    cache: dict = {}

    def pw(var, e):
        key = (var, e)
        if key not in cache:
            cache[key] = _power_coeffs(pt[var], e)
        return cache[key]

    out: dict = {}
    for m, c in f.terms.items():
        cu = pw(i, m[i])
        cv = pw(j, m[j])
        for a, x in enumerate(cu):
            if not x:
                continue
            cx = c * x
            for b, y in enumerate(cv):
                if y:
                    out[(a, b)] = out.get((a, b), 0) + cx * y
    return AffinePoly(out)


def _grad(g: AffinePoly) -> list[AffinePoly]:
    return [g.derivative(0), g.derivative(1)]


@lru_cache(maxsize=None)
def _mu(f: HPoly, P: ProjPoint, chart: int) -> int:
    g = localize(f, P, chart)
    return local_algebra_dim(_grad(g), bound=max(f.degree - 1, 1) ** 2)


@lru_cache(maxsize=None)
def _tau(f: HPoly, P: ProjPoint, chart: int) -> int:
    g = localize(f, P, chart)
    if g.coefficient((0, 0)):
        return 0
    return local_algebra_dim([g] + _grad(g), bound=max(f.degree - 1, 1) ** 2)


def milnor(f: HPoly, P: ProjPoint, chart: int | None = None) -> int:
    """Milnor number of the curve f = 0 at P (0 at smooth points)."""
    if f.evaluate(P.coords) != 0:
        raise ValueError(f"{P} is not on the curve")
    return _mu(f, P, P.chart if chart is None else chart)


def tjurina(f: HPoly, P: ProjPoint, chart: int | None = None) -> int:
    return _tau(f, P, P.chart if chart is None else chart)


def intersection_multiplicity(p: HPoly, q: HPoly, P: ProjPoint) -> int:
    """Local intersection number of two curves without common component at P."""
    return local_algebra_dim([localize(p, P), localize(q, P)], bound=p.degree * q.degree)


# -- curve-level data ----------------------------------------------------------


def branches(curve: Curve, P: ProjPoint) -> int:
    total = 0
    for c in curve.components:
        if not c.contains(P):
            continue
        if c.kind != "generic":
            total += 1
            continue
        supplied = [sp.branches for sp in c.singular_points if sp.point == P]
        if supplied:
            total += supplied[0]
        elif any(c.poly.derivative(k).evaluate(P.coords) for k in range(3)):
            total += 1
        else:
            raise MissingSingularData(f"no branch count for {c.id!r} at {P}")
    return total


def delta(mu: int, branches: int) -> int:
    if (mu + branches - 1) % 2:
        raise ParityError(f"mu + r - 1 is odd (mu={mu}, r={branches})")
    return (mu + branches - 1) // 2


def _smooth_single(curve: Curve, ids: Sequence[str]) -> bool:
    return len(ids) == 1 and curve.component(ids[0]).kind != "generic"


def local_data(curve: Curve, P: ProjPoint) -> SingularityData:
    ids = curve.through(P)
    if not ids:
        raise ValueError(f"{P} is not on the curve")
    if _smooth_single(curve, ids):
        return SingularityData(P, 0, 0, 1, 0, 0, ids)
    g = curve.local_factor(P)
    mu = milnor(g, P)
    tau = tjurina(g, P)
    r = branches(curve, P)
    return SingularityData(P, mu, tau, r, delta(mu, r), mu - tau, ids)


def singularities(curve: Curve) -> list[SingularityData]:
    """Local data at every singular point, in canonical point order."""
    pts = [P for P, _ in singular_points(curve)]
    return pmap(lambda P: local_data(curve, P), pts)


def epsilon_at(curve: Curve, P: ProjPoint) -> int:
    ids = curve.through(P)
    if not ids or _smooth_single(curve, ids):
        return 0
    g = curve.local_factor(P)
    return milnor(g, P) - tjurina(g, P)


def _split(big: Curve, small: Curve) -> tuple[list[str], list[str]]:
    small_ids = list(small.ids)
    extra = [c for c in big.ids if c not in set(small_ids)]
    missing = [c for c in small_ids if c not in big]
    if missing or not extra:
        raise ValueError("small must be a proper sub-arrangement of big")
    return small_ids, extra


def epsilon_pair_points(big: Curve, small: Curve) -> list[ProjPoint]:
    """Points where the removed components meet the remaining ones."""
    from .arrangement import points_between

    small_ids, extra = _split(big, small)
    return points_between(big, small_ids, extra)


def epsilon_pair_at(big: Curve, small: Curve, P: ProjPoint) -> int:
    return epsilon_at(big, P) - epsilon_at(small, P)


def epsilon_pair(big: Curve, small: Curve) -> int:
    """Sum over the intersection points of small with big minus small of
    eps_p(big) - eps_p(small)."""
    pts = epsilon_pair_points(big, small)
    return sum(pmap(lambda P: epsilon_pair_at(big, small, P), pts))


__all__ = [
    "SingularityData",
    "branches",
    "delta",
    "epsilon_at",
    "epsilon_pair",
    "epsilon_pair_at",
    "intersection_multiplicity",
    "local_algebra_dim",
    "local_data",
    "localize",
    "milnor",
    "singularities",
    "tjurina",
]
