"""Command-line entry point.

    k3bubble pbt family.json --format ascii
    k3bubble equiv --random-suite 200 --seed 42

Exit status: 0 on success, 1 on invalid input (a JSON diagnostic is written to
stderr), 2 on an internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .ak import (
    BranchConfig,
    BranchError,
    build_dbs_tree,
    check_equivalence,
    family_from_branches,
    run_random_suite,
)
from .exact import ParseError, Poly, parse_poly
from .k3 import RANK, EmbeddingError, embed_cartan, localize, polarize
from .pbt import FamilyError, FamilyInput, build_pbt, odaka_rescale, validate_family
from .render import input_digest, render
from .rootsys import DEFAULT_MAX_RANK, ADEType, ClassificationError, build_root_system

COMMANDS = ("validate", "pbt", "dbs", "equiv", "localize", "rescale")
FORMATS = ("ascii", "json", "dot")


class InputError(Exception):
    """Bad input; ``code`` is a stable diagnostic tag."""

    def __init__(self, code: str, message: str, **extra):
        super().__init__(message)
        self.code = code
        self.extra = extra


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError("usage", message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="k3bubble", description="Bubbling trees from exact period data.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", nargs="?", default=None,
                   help='input JSON file, or "-" for standard input')
    p.add_argument("--format", choices=FORMATS, default="ascii")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--random-suite", type=int, default=None, metavar="N")
    p.add_argument("--recenter", action="store_true",
                   help="subtract the mean of the branches (dbs only)")
    p.add_argument("--max-rank", type=int, default=DEFAULT_MAX_RANK)
    return p


# -- input decoding -------------------------------------------------------------


def _read_input(path: str | None, stdin) -> dict:
    if path is None:
        raise InputError("missing-input", "an input file (or '-') is required")
    try:
        text = stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError("io", f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("json", f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    if not isinstance(doc, dict):
        raise InputError("schema", "top-level JSON value must be an object")
    return doc


def _polys(items, field: str) -> list[Poly]:
    if not isinstance(items, list):
        raise InputError("schema", f"{field!r} must be a list of polynomial literals")
    out = []
    for i, s in enumerate(items):
        if not isinstance(s, str):
            raise InputError("schema", f"{field}[{i}] must be a string literal")
        try:
            out.append(parse_poly(s))
        except ParseError as exc:
            raise InputError("parse", f"{field}[{i}]: {exc}", offset=exc.offset, reason=exc.code) from None
    return out


def family_from_doc(doc: dict, max_rank: int) -> FamilyInput:
    system = doc.get("system")
    if not isinstance(system, dict) or "family" not in system or "rank" not in system:
        raise InputError("schema", "'system' must be an object with 'family' and 'rank'")
    try:
        ade = ADEType(str(system["family"]), system["rank"])
        rs = build_root_system(ade, max_rank=max_rank)
    except ValueError as exc:
        raise InputError("system", str(exc)) from None
    zeta = _polys(doc.get("zeta"), "zeta")
    if len(zeta) != ade.rank:
        raise InputError("schema", f"'zeta' needs {ade.rank} entries for {ade}, got {len(zeta)}")
    return FamilyInput(rs, tuple(zeta))


def family_canonical(f: FamilyInput) -> dict:
    return {
        "system": {"family": f.system.ade.family, "rank": f.system.ade.rank},
        "zeta": [str(z) for z in f.zeta],
    }


def branches_from_doc(doc: dict, recenter: bool) -> BranchConfig:
    bs = _polys(doc.get("branches"), "branches")
    recenter = recenter or bool(doc.get("recenter", False))
    return BranchConfig.recentered(bs) if recenter else BranchConfig(tuple(bs))


# -- commands -------------------------------------------------------------------


def _no_dot(args):
    if args.format == "dot":
        raise InputError("usage", f"--format dot is not available for {args.command}")


def cmd_validate(args, doc) -> str:
    _no_dot(args)
    f = validate_family(family_from_doc(doc, args.max_rank))
    if args.format == "json":
        return json.dumps({"valid": True, "system": str(f.system.ade)}, sort_keys=True) + "\n"
    return f"valid: {f.system.ade} family, degenerates at t=0 with smooth general fibers\n"


def cmd_pbt(args, doc) -> str:
    f = family_from_doc(doc, args.max_rank)
    tree = build_pbt(f)
    return render(tree, args.format, digest=input_digest(family_canonical(f)))


def cmd_rescale(args, doc) -> str:
    _no_dot(args)
    f = family_from_doc(doc, args.max_rank)
    curve, types = odaka_rescale(f)
    if args.format == "json":
        payload = {"rescaled": [str(z) for z in curve], "central_fiber": [str(t) for t in types]}
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    labels = ",".join(map(str, types)) or "none"
    return f"rescaled: [{', '.join(map(str, curve))}]\ncentral fiber: {labels}\n"


def cmd_dbs(args, doc) -> str:
    b = branches_from_doc(doc, args.recenter)
    tree = build_dbs_tree(b)
    canon = {"branches": [str(x) for x in b.branches]}
    return render(tree, args.format, digest=input_digest(canon))


def cmd_equiv(args, doc) -> tuple[int, str]:
    _no_dot(args)
    if args.random_suite is not None:
        n = args.random_suite
        if n < 0:
            raise InputError("usage", "--random-suite must be nonnegative")
        ok = 0
        failures = []
        for i, (b, eq, _) in enumerate(run_random_suite(n, args.seed)):
            if eq.isomorphic:
                ok += 1
            else:
                failures.append({"case": i, "branches": [str(x) for x in b.branches],
                                 "mismatch": eq.mismatch})
        if args.format == "json":
            out = json.dumps({"cases": n, "isomorphic": ok, "seed": args.seed,
                              "failures": failures}, sort_keys=True, indent=2) + "\n"
        else:
            out = f"{ok}/{n} isomorphic\n" + "".join(
                f"case {f['case']}: {f['mismatch']}\n" for f in failures)
        return (0 if ok == n else 2), out
    b = branches_from_doc(doc, args.recenter)
    eq = check_equivalence(build_pbt(family_from_branches(b.validate())), build_dbs_tree(b))
    if args.format == "json":
        out = json.dumps({
            "isomorphic": eq.isomorphic,
            "mapping": [{"pbt_path": list(p), "indices": list(s)} for p, s in eq.mapping],
            "mismatch": eq.mismatch,
        }, sort_keys=True, indent=2) + "\n"
    else:
        lines = ["isomorphic" if eq.isomorphic else f"mismatch: {eq.mismatch}"]
        for path, idx in eq.mapping:
            lines.append(f"  {list(path)} <-> {{{','.join(map(str, idx))}}}")
        out = "\n".join(lines) + "\n"
    return (0 if eq.isomorphic else 2), out


def cmd_localize(args, doc) -> str:
    _no_dot(args)
    d = doc.get("d")
    if not isinstance(d, int) or isinstance(d, bool) or d <= 0:
        raise InputError("schema", "'d' must be a positive integer")
    classes = doc.get("classes")
    if (not isinstance(classes, list) or not classes
            or any(not isinstance(c, list) or len(c) != RANK for c in classes)):
        raise InputError("schema", f"'classes' must be a nonempty list of {RANK}-integer lists")
    if any(not isinstance(x, int) or isinstance(x, bool) for c in classes for x in c):
        raise InputError("schema", "'classes' entries must be integers")
    period = _polys(doc.get("period"), "period")
    if len(period) != RANK:
        raise InputError("schema", f"'period' needs {RANK} entries, got {len(period)}")
    h = embed_cartan(classes, polarize(d))
    coords = localize(period, h)
    payload = {
        "system": {"family": h.ade.family, "rank": h.ade.rank},
        "zeta": [str(Poly.coerce(a)) for a in coords],
    }
    if args.format == "json":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    lines = [f"{h.ade} localization:"]
    lines += [f"  theta_{j + 1}: {z}" for j, z in enumerate(payload["zeta"])]
    return "\n".join(lines) + "\n"


_HANDLERS = {
    "validate": cmd_validate,
    "pbt": cmd_pbt,
    "dbs": cmd_dbs,
    "equiv": cmd_equiv,
    "localize": cmd_localize,
    "rescale": cmd_rescale,
}


def _diagnostic(stream, code: str, message: str, **extra):
    payload = {"code": code, "message": message}
    payload.update(extra)
    stream.write(json.dumps(payload, sort_keys=True) + "\n")


def run(argv: Sequence[str] | None = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.recenter and args.command != "dbs":
            raise InputError("usage", "--recenter applies to dbs only")
        if args.random_suite is not None and args.command != "equiv":
            raise InputError("usage", "--random-suite applies to equiv only")
        doc = None
        if not (args.command == "equiv" and args.random_suite is not None):
            doc = _read_input(args.input, stdin)
        result = _HANDLERS[args.command](args, doc)
        status, text = result if isinstance(result, tuple) else (0, result)
        stdout.write(text)
        return status
    except InputError as exc:
        _diagnostic(stderr, exc.code, str(exc), **exc.extra)
        return 1
    except (FamilyError, BranchError, EmbeddingError, ClassificationError) as exc:
        extra = {}
        roots = getattr(exc, "roots", ())
        if roots:
            extra["roots"] = [list(r) for r in roots]
        _diagnostic(stderr, exc.code, str(exc), **extra)
        return 1
    except AssertionError as exc:
        _diagnostic(stderr, "internal-invariant", str(exc) or "internal invariant violated")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
