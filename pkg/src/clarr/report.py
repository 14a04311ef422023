"""Deterministic JSON reports for scenes, verification runs and identity suites."""

from __future__ import annotations

import json
import time
from typing import Any

from .arrangement import Component, Curve, delete, intersection_count
from .errors import IdentityViolated, SchemaError
from .global_invariants import chern_from_tau, freeness_from, global_tjurina, mdr
from .local_invariants import epsilon_pair, local_data, singularities
from .scalars import render
from .scene import Scene, component_from_json, parse_point
from .verifiers import (
    FreeCaseCheck,
    deletion_context,
    free_case_checks,
    identity_suite,
    verify_conic_addition,
    verify_conic_deletion,
    verify_line_addition,
    verify_line_deletion,
)

THEOREMS = ("A", "B1", "B2", "free-case", "identities")


class Timer:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.laps: dict[str, float] = {}
        self._t = time.perf_counter()

    def lap(self, name: str) -> None:
        now = time.perf_counter()
        self.laps[name] = round(now - self._t, 3)
        self._t = now


def dumps(obj: Any) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _jsonable(obj):
    if hasattr(obj, "to_json"):
        return _jsonable(obj.to_json())
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, int, str)) or obj is None:
        return obj
    return render(obj)


def curve_summary(curve: Curve, with_local: bool = True) -> tuple[dict, list]:
    tau_g = global_tjurina(curve.f)
    sings = singularities(curve) if with_local else []
    tau_l = sum(s.tau for s in sings) if with_local else None
    if with_local and tau_g != tau_l:
        raise IdentityViolated(f"global tau {tau_g} differs from local sum {tau_l}")
    r = mdr(curve.f)
    ch = chern_from_tau(curve.degree, tau_g)
    fr = freeness_from(curve.degree, tau_g, r)
    if fr.is_free and ch.split != fr.exponents:
        raise IdentityViolated("free curve whose Chern polynomial does not split as its exponents")
    summary = {
        "degree": curve.degree,
        "components": len(curve),
        "tau": {"global": tau_g, "local": tau_l},
        "mdr": r,
        "chern": ch.to_json(),
        "free": {"is_free": fr.is_free, "exponents": list(fr.exponents) if fr.exponents else None},
        "flags": list(fr.flags),
    }
    return summary, sings


def _target(curve: Curve, target):
    """A component id of the curve, or an inline component (dict or JSON text)."""
    if isinstance(target, str) and target.lstrip().startswith("{"):
        try:
            target = json.loads(target)
        except json.JSONDecodeError as e:
            raise SchemaError(f"inline target is not valid JSON ({e})") from None
    if isinstance(target, dict):
        return component_from_json(target), True
    return curve.component(target), False


def verify(curve: Curve, theorem: str, target=None, direct=None) -> list:
    """Verdicts (or checks / identity reports) for one theorem on one target.

    Without a target the deletion theorems run over every component of the
    matching kind.
    """
    if theorem not in THEOREMS:
        raise SchemaError(f"unknown theorem {theorem!r}")
    if theorem == "free-case":
        return free_case_checks(curve, direct)
    if target is None:
        kinds = {"A": "line", "B1": "conic", "identities": "conic"}
        if theorem not in kinds:
            raise SchemaError(f"theorem {theorem} needs an external --target component")
        targets = [(c, False) for c in curve.components if c.kind == kinds[theorem]]
    else:
        targets = [_target(curve, target)]
    out = []
    for comp, external in targets:
        if theorem == "A":
            _expect_kind(comp, "line")
            v = verify_line_addition(curve, comp, direct) if external else verify_line_deletion(curve, comp.id, direct)
        elif theorem == "B1":
            _expect_kind(comp, "conic")
            if external:
                raise SchemaError("theorem B1 concerns a conic component; use B2 for an external conic")
            v = verify_conic_deletion(curve, comp.id, direct)
        elif theorem == "B2":
            _expect_kind(comp, "conic")
            if not external:
                raise SchemaError("theorem B2 concerns an external conic; use B1 for a component")
            v = verify_conic_addition(curve, comp, direct)
        else:
            _expect_kind(comp, "conic")
            base = curve if external else delete(curve, comp.id)
            v = {"target": comp.id, **identity_suite(base, comp)}
        out.append({"target": comp.id, "result": v} if not isinstance(v, dict) else v)
    return out


def _expect_kind(comp: Component, kind: str) -> None:
    if comp.kind != kind:
        raise SchemaError(f"target {comp.id!r} is a {comp.kind}, theorem needs a {kind}")


def verification_ok(results: list) -> bool:
    for r in results:
        if isinstance(r, FreeCaseCheck):
            if not r.ok:
                return False
        elif isinstance(r, dict) and "result" in r:
            if not r["result"].ok:
                return False
    return True


def run_query(curve: Curve, query: dict, direct=None):
    op = query["op"]
    args = query.get("args", {})
    if op == "verify":
        return verify(curve, args.get("theorem", ""), args.get("target"), direct)
    if op == "intersection_count":
        b = args["b"]
        a = args.get("a") or [i for i in curve.ids if i not in set(b)]
        return intersection_count(curve, a, b)
    if op == "deletion_counts":
        kind = args.get("kind", "line")
        counts = set()
        for c in curve.components:
            if c.kind == kind:
                counts.add(intersection_count(curve, [i for i in curve.ids if i != c.id], [c.id]))
        return sorted(counts)
    if op == "local":
        return local_data(curve, parse_point(args["point"]))
    if op == "epsilon_pair":
        small = curve
        for cid in args["remove"]:
            small = delete(small, cid)
        return epsilon_pair(curve, small)
    if op == "deletion_context":
        return deletion_context(curve, args["conic"])
    raise SchemaError(f"unknown query op {op!r}")


def analyze(scene: Scene, timing: bool = False) -> dict:
    if scene.is_suite:
        return suite_report(scene, timing)
    t = Timer(timing)
    curve = scene.curve
    summary, sings = curve_summary(curve)
    t.lap("invariants")
    direct = freeness_from(curve.degree, summary["tau"]["global"], summary["mdr"])
    queries = {q["name"]: run_query(curve, q, direct) for q in scene.queries}
    t.lap("queries")
    rep = {
        "scene": scene.name,
        "summary": summary,
        "components": [c.to_json() for c in curve.components],
        "singularities": sings,
        "queries": queries,
    }
    if timing:
        rep["timing"] = t.laps
    return rep


def verify_report(scene: Scene, theorem: str, target=None, timing: bool = False) -> dict:
    if scene.is_suite:
        raise SchemaError("verify needs a curve scene, not an identity suite")
    t = Timer(timing)
    curve = scene.curve
    summary, _ = curve_summary(curve, with_local=False)
    direct = freeness_from(curve.degree, summary["tau"]["global"], summary["mdr"])
    results = verify(curve, theorem, target, direct)
    t.lap("verify")
    rep = {
        "scene": scene.name,
        "theorem": theorem,
        "summary": summary,
        "results": results,
        "ok": verification_ok(results),
    }
    if timing:
        rep["timing"] = t.laps
    return rep


def suite_report(scene: Scene, timing: bool = False) -> dict:
    t = Timer(timing)
    rows = []
    for pair in scene.pairs:
        res = identity_suite(pair.curve, pair.conic)
        ctx = res["deletion_context"]
        rows.append({
            "name": pair.name,
            "deg_C": pair.curve.degree,
            "deletion_context": ctx,
            "mu_formula": res["mu_formula"],
            "delta_formula": res["delta_formula"],
            "k_sum_holds": ctx.k + ctx.k0 == 2 * (ctx.degree - 1),
        })
    t.lap("suite")
    all_hold = all(r["mu_formula"].holds and r["delta_formula"].holds and r["k_sum_holds"] for r in rows)
    rep = {"scene": scene.name, "pairs": rows, "count": len(rows), "all_hold": all_hold}
    if timing:
        rep["timing"] = t.laps
    return rep


# -- manifests ------------------------------------------------------------------


_MISSING = object()


def lookup(obj, path: str):
    cur = obj
    for part in path.split("."):
        if isinstance(cur, list):
            try:
                cur = cur[int(part)]
            except (ValueError, IndexError):
                return _MISSING
        elif isinstance(cur, dict):
            if part not in cur:
                return _MISSING
            cur = cur[part]
        else:
            return _MISSING
    return cur


def manifest_diff(report: dict, manifest: dict) -> list[tuple[str, Any, Any]]:
    """(path, expected, actual) for every expectation the report misses.

    ``expect`` maps dotted paths to exact values; ``expect_all`` maps a path of
    a list to a sub-path and the set of values allowed for every element.
    """
    data = json.loads(dumps(report))
    bad = []
    for path, want in sorted(manifest.get("expect", {}).items()):
        got = lookup(data, path)
        if got is _MISSING or got != want:
            bad.append((path, want, None if got is _MISSING else got))
    for path, rule in sorted(manifest.get("expect_all", {}).items()):
        items = lookup(data, path)
        if not isinstance(items, list):
            bad.append((path, rule, None))
            continue
        for i, item in enumerate(items):
            got = lookup(item, rule["path"])
            if got is _MISSING or got not in rule["in"]:
                bad.append((f"{path}.{i}.{rule['path']}", rule["in"], None if got is _MISSING else got))
    return bad


# -- text rendering -------------------------------------------------------------


def to_text(rep: dict) -> str:
    lines = [f"scene: {rep.get('scene')}"]
    s = rep.get("summary")
    if s:
        ch = s["chern"]
        fr = s["free"]
        lines.append(f"degree {s['degree']}, {s['components']} components")
        lines.append(f"tau: global {s['tau']['global']}, local {s['tau']['local']}")
        lines.append(f"mdr: {s['mdr']}")
        lines.append(f"chern: c1 = {ch['c1']}, c2 = {ch['c2']}, split = {ch['split']}")
        lines.append("free with exponents %s" % (fr["exponents"],) if fr["is_free"] else "not free")
        if s["flags"]:
            lines.append("flags: " + ", ".join(s["flags"]))
    for sd in rep.get("singularities", []):
        sd = sd.to_json() if hasattr(sd, "to_json") else sd
        pt = "(" + " : ".join(sd["point"]) + ")"
        lines.append(f"  {pt} on {','.join(sd['components'])}: mu={sd['mu']} tau={sd['tau']} "
                     f"eps={sd['epsilon']} r={sd['branches']} delta={sd['delta']}")
    if "results" in rep:
        data = json.loads(dumps(rep["results"]))
        for r in data:
            lines.append("  " + json.dumps(r, sort_keys=True))
        lines.append("ok" if rep["ok"] else "FAILED")
    if "queries" in rep and rep["queries"]:
        data = json.loads(dumps(rep["queries"]))
        for k in sorted(data):
            lines.append(f"  {k}: {json.dumps(data[k], sort_keys=True)}")
    if "pairs" in rep:
        for r in json.loads(dumps(rep["pairs"])):
            ctx = r["deletion_context"]
            lines.append(f"  {r['name']}: mu {r['mu_formula']['lhs']}={r['mu_formula']['rhs']}, "
                         f"delta {r['delta_formula']['lhs']}={r['delta_formula']['rhs']}, "
                         f"k={ctx['k']} k0={ctx['k0']}")
        lines.append(f"{rep['count']} pairs, all hold: {rep['all_hold']}")
    if "timing" in rep:
        lines.append("timing: " + json.dumps(rep["timing"], sort_keys=True))
    return "\n".join(lines) + "\n"
