"""Deterministic corpus of small CL arrangements shared by the consistency tests."""

import random

from clarr.arrangement import Component, build_curve, singular_points
from clarr.errors import ClarrError
from clarr.scene import load_bundled

L = Component.line
Q = Component.conic

LINES = {
    "x": (1, 0, 0), "y": (0, 1, 0), "z": (0, 0, 1),
    "x-y": (1, -1, 0), "x+y": (1, 1, 0), "x-z": (1, 0, -1), "x+z": (1, 0, 1),
    "y-z": (0, 1, -1), "y+z": (0, 1, 1), "x+y+z": (1, 1, 1), "x+y-z": (1, 1, -1),
    "x-y+z": (1, -1, 1), "x-y-z": (1, -1, -1),
}
CONICS = {
    "K1": (1, 0, 0, 1, 0, -1), "K2": (0, 1, 0, 0, 0, -1), "K3": (1, 0, 0, 0, -1, 0),
    "K4": (1, 0, 0, 1, 0, -2), "K5": (0, 0, -1, 1, 0, 0), "K6": (1, -1, 0, 1, 0, -1),
    "K7": (1, 0, 0, -1, 0, 1), "K8": (0, 1, 1, 0, 1, 0),
}


def a3():
    return build_curve([L(n, LINES[n]) for n in ("x", "y", "z", "x-y", "x-z", "y-z")])


def named_curves():
    """Bundled scenes plus hand-built curves that hit boundary cases."""
    out = {name: load_bundled(name).curve for name in ("triangle", "near_pencil_4", "chern_factor",
                                                        "notfree_pencil", "free_6_7")}
    out["A3"] = a3()
    out["A3+K"] = build_curve(list(a3().components) + [Q("K", (0, -2, 1, 0, 1, 0))])
    out["lines4+K3K5"] = build_curve([L(n, LINES[n]) for n in ("x", "z", "x-y", "y")]
                                     + [Q("K3", CONICS["K3"]), Q("K5", CONICS["K5"])])
    return out


def random_curves(seed=2026, count=40):
    """Random line/conic arrangements whose singular points all lie in one
    quadratic extension (others are outside the model and are skipped)."""
    rng = random.Random(seed)
    out = {}
    tries = 0
    while len(out) < count and tries < 20 * count:
        tries += 1
        ls = sorted(rng.sample(sorted(LINES), rng.randint(1, 5)))
        cs = sorted(rng.sample(sorted(CONICS), rng.randint(0, 2)))
        key = "+".join(ls + cs)
        if key in out:
            continue
        try:
            C = build_curve([L(n, LINES[n]) for n in ls] + [Q(n, CONICS[n]) for n in cs])
            singular_points(C)
        except ClarrError:
            continue
        if C.degree >= 3:
            out[key] = C
    return out


def external_objects():
    return [L(f"ext_{n}", c) for n, c in LINES.items()], [Q(f"ext_{n}", c) for n, c in CONICS.items()]
