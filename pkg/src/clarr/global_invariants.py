"""Global Tjurina number, minimal degree of a Jacobian relation, Chern data and
freeness of the logarithmic derivation module."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import isqrt

from .arrangement import Curve
from .errors import IdentityViolated, StabilizationFailure
from .local_invariants import pmap, singularities
from .polyring import HPoly, graded_dim, ideal_piece_rank, partials, syzygy_kernel_dim


def hilbert_value(f: HPoly, k: int) -> int:
    """dim (S/J_f)_k."""
    if k < 0:
        return 0
    return graded_dim(k) - ideal_piece_rank(partials(f), k)


@lru_cache(maxsize=None)
def global_tjurina(f: HPoly) -> int:
    """Stable value of the Hilbert function of the Milnor-Jacobian algebra.

    Scans k = 3d-6, 3d-5, ... and stops at three equal consecutive values;
    gives up past k = 4d.
    """
    d = f.degree
    k = max(3 * d - 6, 0)
    cap = 4 * d
    vals = pmap(lambda j: hilbert_value(f, j), [k, k + 1, k + 2])
    k += 2
    while True:
        if vals[-1] == vals[-2] == vals[-3]:
            return vals[-1]
        k += 1
        if k > cap:
            raise StabilizationFailure(f"Hilbert function of S/J_f not stable up to k = {cap}")
        vals.append(hilbert_value(f, k))


def local_tjurina(curve: Curve) -> int:
    return sum(s.tau for s in singularities(curve))


def total_tjurina(curve: Curve, method: str = "global") -> int:
    if method == "global":
        return global_tjurina(curve.f)
    if method == "local":
        return local_tjurina(curve)
    if method == "both":
        g = global_tjurina(curve.f)
        loc = local_tjurina(curve)
        if g != loc:
            raise IdentityViolated(f"global tau {g} differs from the sum of local tau {loc}")
        return g
    raise ValueError(f"unknown method {method!r}")


@lru_cache(maxsize=None)
def mdr(f: HPoly) -> int:
    """Least degree r <= d-2 of a nonzero relation a f_x + b f_y + c f_z = 0,
    or d-1 when there is none."""
    d = f.degree
    for r in range(0, d - 1):
        if syzygy_kernel_dim(f, r) > 0:
            return r
    return d - 1


@dataclass(frozen=True)
class ChernData:
    c1: int
    c2: int
    split: tuple[int, int] | None

    def to_json(self) -> dict:
        return {"c1": self.c1, "c2": self.c2, "split": list(self.split) if self.split else None}


def chern_split(n: int, c2: int) -> tuple[int, int] | None:
    """Positive integers a <= b with a + b = n and a*b = c2, if any."""
    disc = n * n - 4 * c2
    if disc < 0:
        return None
    s = isqrt(disc)
    if s * s != disc or (n - s) % 2:
        return None
    a = (n - s) // 2
    if a < 1:
        return None
    return a, n - a


def chern_from_tau(d: int, tau: int) -> ChernData:
    c1 = 1 - d
    c2 = (d - 1) ** 2 - tau
    return ChernData(c1, c2, chern_split(d - 1, c2))


def chern(curve: Curve, tau: int | None = None) -> ChernData:
    if tau is None:
        tau = total_tjurina(curve)
    return chern_from_tau(curve.degree, tau)


@dataclass(frozen=True)
class FreenessReport:
    degree: int
    tau: int
    mdr: int
    is_free: bool
    exponents: tuple[int, int] | None
    flags: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "tau": self.tau,
            "mdr": self.mdr,
            "is_free": self.is_free,
            "exponents": list(self.exponents) if self.exponents else None,
            "flags": list(self.flags),
        }


def freeness_from(d: int, tau: int, r: int) -> FreenessReport:
    free = 2 * r <= d - 1 and tau == (d - 1) ** 2 - r * (d - 1 - r)
    flags = ("below_theorem_scope",) if d <= 2 else ()
    return FreenessReport(d, tau, r, free, (r, d - 1 - r) if free else None, flags)


def freeness(curve: Curve) -> FreenessReport:
    return freeness_from(curve.degree, total_tjurina(curve), mdr(curve.f))


__all__ = [
    "ChernData",
    "FreenessReport",
    "chern",
    "chern_from_tau",
    "chern_split",
    "freeness",
    "freeness_from",
    "global_tjurina",
    "hilbert_value",
    "mdr",
    "total_tjurina",
]
