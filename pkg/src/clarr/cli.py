"""Command line front end.

Exit codes: 0 success, 2 bad input (schema, parse, non-reduced curve, wrong
target), 3 intersection point outside a single quadratic extension, 4 internal
identity violation or failed stabilization, 5 verification failure (violated
dichotomy or verdict inconsistent with direct freeness), 6 manifest mismatch.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .errors import (
    ClarrError,
    IdentityViolated,
    NotFiniteColength,
    StabilizationFailure,
    UnrepresentablePoint,
)
from .report import THEOREMS, analyze, dumps, manifest_diff, to_text, verify_report
from .scene import BUNDLED, load_bundled, load_manifest, load_scene

EXIT_INPUT = 2
EXIT_UNREPRESENTABLE = 3
EXIT_INTERNAL = 4
EXIT_VERIFY = 5
EXIT_MANIFEST = 6


def _emit(rep: dict, fmt: str) -> None:
    sys.stdout.write(dumps(rep) if fmt == "json" else to_text(rep))


def cmd_analyze(args) -> int:
    rep = analyze(load_scene(args.scene), timing=args.timing)
    _emit(rep, args.format)
    return 0


def cmd_verify(args) -> int:
    rep = verify_report(load_scene(args.scene), args.theorem, args.target, timing=args.timing)
    _emit(rep, args.format)
    return 0 if rep["ok"] else EXIT_VERIFY


def cmd_examples(args) -> int:
    if args.action == "list":
        for name in BUNDLED:
            print(name)
        return 0
    if not args.name:
        print("examples run needs a name", file=sys.stderr)
        return EXIT_INPUT
    names = BUNDLED if args.name == "all" else [args.name]
    status = 0
    for name in names:
        rep = analyze(load_bundled(name), timing=args.timing)
        bad = manifest_diff(rep, load_manifest(name))
        if args.format == "json":
            rep["manifest"] = {"pass": not bad, "mismatches": [list(b) for b in bad]}
            _emit(rep, "json")
        else:
            print(f"{name}: {'pass' if not bad else 'FAIL'}")
            for path, want, got in bad:
                print(f"  {path}: expected {want!r}, got {got!r}")
        if bad:
            status = EXIT_MANIFEST
    return status


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="clarr", description="Invariants and freeness of conic-line arrangements.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--timing", action="store_true", help="include wall-clock timings (not deterministic)")

    a = sub.add_parser("analyze", help="full invariant report for a scene file")
    a.add_argument("scene")
    common(a)
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="run a theorem verifier on a scene")
    v.add_argument("scene")
    v.add_argument("--theorem", required=True, choices=THEOREMS)
    v.add_argument("--target", help="component id, or an inline component as JSON")
    common(v)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("examples", help="bundled example scenes")
    e.add_argument("action", choices=("list", "run"))
    e.add_argument("name", nargs="?", help="bundled scene name or 'all'")
    common(e)
    e.set_defaults(func=cmd_examples, format="text")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UnrepresentablePoint as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_UNREPRESENTABLE
    except (IdentityViolated, StabilizationFailure, NotFiniteColength) as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except ClarrError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
