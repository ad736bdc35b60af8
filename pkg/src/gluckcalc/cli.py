"""Command-line front end.

Every command prints one JSON report on stdout.  Exit codes: 0 OK, 1 FAIL,
2 UNKNOWN (budget), 64 usage or parse error, 66 input file missing.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from . import catalog
from .acsearch import ac_search, search_nodes
from .alexander import NonMeridionalPresentation, WrongDeficiency, alexander_polynomial
from .budget import SearchBudget, Unknown
from .diagrams import (
    InvalidPresentation,
    NotATree,
    PreconditionViolated,
    RibbonPresentation,
    apply_move,
    group_of,
    is_syntactically_trivial,
    is_triangular,
    to_path_form,
    validate,
)
from .handles import (
    ClosedSphereSpec,
    EulerViolation,
    core_presentation,
    euler_check,
    gluck_presentation,
    handle_counts,
    spec_problems,
    step2_presentation,
    verify_product_ball,
    verify_step2,
)
from .io import (
    ParseError,
    ac_certificate_to_json,
    diagram_move_to_json,
    load_json,
    load_payload,
    parse_ac_certificate,
    parse_move_script,
    parse_undisking,
    parse_word,
    presentation_to_json,
    to_json,
    undisking_to_json,
)
from .presentations import GroupPresentation, ReplayMismatch, abelianization, verify_certificate
from .undisking import (
    CertificateInvalid,
    TriangularizationError,
    certify_undisking,
    triangularize_detailed,
    verify_undisking,
)

EXIT = {"OK": 0, "FAIL": 1, "UNKNOWN": 2}
EX_USAGE = 64
EX_NOINPUT = 66


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _budget(args) -> SearchBudget:
    return SearchBudget(
        max_nodes=int(float(args.max_nodes)),
        max_total_length=args.max_length,
        max_conjugator_length=args.max_conjugator,
    )


def _report(args, verdict: str, **fields) -> dict:
    rep = {"command": args.command_echo, "verdict": verdict}
    rep.update(fields)
    return rep


def _invariants(p: GroupPresentation) -> dict:
    out = {"group": presentation_to_json(p), "abelianization": abelianization(p).to_dict()}
    try:
        delta = alexander_polynomial(p)
        out["alexander"] = {"text": str(delta), "coefficients": delta.to_pairs()}
    except (WrongDeficiency, NonMeridionalPresentation) as exc:
        out["alexander"] = None
        out["alexander_note"] = str(exc)
    return out


def _load(path: str):
    return load_payload(path)


def _need(payload, kind, path):
    if not isinstance(payload, kind):
        raise ParseError(path, f"expected a {kind.__name__} record")
    return payload


def _group(payload) -> GroupPresentation:
    if isinstance(payload, RibbonPresentation):
        return group_of(payload)
    if isinstance(payload, ClosedSphereSpec):
        return core_presentation(payload)
    return payload


# --- commands --------------------------------------------------------------------


def cmd_validate(args):
    x = _load(args.file)
    if isinstance(x, RibbonPresentation):
        d = validate(x)
        return _report(args, "OK" if d.valid else "FAIL", diagnostics=d.to_dict())
    if isinstance(x, ClosedSphereSpec):
        probs = spec_problems(x)
        return _report(args, "FAIL" if probs else "OK", diagnostics={"messages": probs})
    return _report(args, "OK", diagnostics={"messages": []})


def cmd_invariants(args):
    x = _load(args.file)
    if isinstance(x, RibbonPresentation):
        d = validate(x)
        if not d.valid:
            return _report(args, "FAIL", diagnostics=d.to_dict())
        inv = _invariants(group_of(x))
        inv["syntactically_trivial"] = is_syntactically_trivial(x)
        inv["triangular"] = is_triangular(x)
        return _report(args, "OK", invariants=inv, diagnostics=d.to_dict())
    if isinstance(x, ClosedSphereSpec):
        inv = {"gluck": presentation_to_json(gluck_presentation(x)), "euler": euler_check(x)}
        inv["abelianization"] = abelianization(gluck_presentation(x)).to_dict()
        return _report(args, "OK", invariants=inv)
    return _report(args, "OK", invariants=_invariants(x))


def cmd_moves(args):
    p = _need(_load(args.file), RibbonPresentation, args.file)
    moves = parse_move_script(load_json(args.script))
    before = _invariants(group_of(p))
    q = p
    for k, m in enumerate(moves):
        try:
            q = apply_move(q, m)
        except PreconditionViolated as exc:
            return _report(args, "FAIL", diagnostics={"failed_move": k, "message": str(exc)})
    after = _invariants(group_of(q))
    same = (
        abelianization(group_of(p)).invariants() == abelianization(group_of(q)).invariants()
        and before["alexander"] == after["alexander"]
    )
    return _report(
        args,
        "OK" if same else "FAIL",
        result=to_json(q),
        invariants={"before": before, "after": after, "preserved": same},
    )


def cmd_undisking(args):
    p = _need(_load(args.file), RibbonPresentation, args.file)
    if args.certificate:
        cert = parse_undisking(load_json(args.certificate))
        ok = len(cert.passes) <= args.bound and verify_undisking(p, cert)
        return _report(args, "OK" if ok else "FAIL", certificate=undisking_to_json(cert))
    budget = _budget(args)
    r = certify_undisking(p, args.bound, budget)
    if isinstance(r, Unknown):
        return _report(args, "UNKNOWN", diagnostics=r.to_dict(), budget=budget.to_dict())
    return _report(args, "OK", certificate=undisking_to_json(r), budget=budget.to_dict())


def cmd_triangularize(args):
    p = _need(_load(args.file), RibbonPresentation, args.file)
    budget = _budget(args)
    if args.certificate:
        cert = parse_undisking(load_json(args.certificate))
    else:
        cert = certify_undisking(p, 1, budget)
        if isinstance(cert, Unknown):
            return _report(args, "UNKNOWN", diagnostics=cert.to_dict())
    try:
        t = triangularize_detailed(p, cert, budget)
    except CertificateInvalid as exc:
        return _report(args, "FAIL", diagnostics={"message": str(exc)})
    except TriangularizationError as exc:
        return _report(args, "UNKNOWN", diagnostics={"message": str(exc)})
    return _report(
        args,
        "OK",
        result=to_json(t.presentation),
        moves=[diagram_move_to_json(m) for m in t.moves],
        relabeling={str(k): v for k, v in sorted(t.labels.items())},
        certificate=undisking_to_json(t.certificate),
        invariants={"triangular": is_triangular(t.presentation), **_invariants(group_of(t.presentation))},
    )


def cmd_pathform(args):
    p = _need(_load(args.file), RibbonPresentation, args.file)
    try:
        q = to_path_form(p)
    except NotATree as exc:
        return _report(args, "FAIL", diagnostics={"message": str(exc)})
    return _report(args, "OK", result=to_json(q))


def cmd_handles(args):
    s = _need(_load(args.file), ClosedSphereSpec, args.file)
    try:
        h = handle_counts(s, args.which)
    except EulerViolation as exc:
        return _report(args, "FAIL", diagnostics={"message": str(exc)})
    return _report(args, "OK", counts=h.to_dict(), invariants={"euler": True})


def cmd_gluck_pres(args):
    s = _need(_load(args.file), ClosedSphereSpec, args.file)
    return _report(args, "OK", result=presentation_to_json(gluck_presentation(s)))


def cmd_product_ball(args):
    s = _need(_load(args.file), ClosedSphereSpec, args.file)
    probs = spec_problems(s)
    if probs:
        return _report(args, "FAIL", diagnostics={"messages": probs})
    budget = _budget(args)
    v = verify_product_ball(s, budget, threads=args.threads)
    counts = handle_counts(s, "product5").to_dict()
    if not v.certified:
        return _report(args, "UNKNOWN", result={"verdict": v.verdict, "route": v.route, "counts": counts},
                       diagnostics=v.unknown.to_dict() if v.unknown else {})
    return _report(
        args,
        "OK",
        result={"verdict": v.verdict, "route": v.route, "counts": counts},
        presentation=presentation_to_json(v.presentation),
        certificate=ac_certificate_to_json(v.certificate),
    )


def cmd_step2(args):
    s = _need(_load(args.file), ClosedSphereSpec, args.file)
    u = parse_word(json.loads(args.u), "u") if args.u else ()
    budget = _budget(args)
    slid = step2_presentation(s, 1, args.j, u, args.inverse)
    r = verify_step2(s, 1, args.j, u, budget, inverse=args.inverse, threads=args.threads)
    if isinstance(r, Unknown):
        return _report(args, "UNKNOWN", presentation=presentation_to_json(slid), diagnostics=r.to_dict())
    return _report(
        args,
        "OK",
        presentation=presentation_to_json(slid),
        certificate=ac_certificate_to_json(r),
        budget={"nodes": search_nodes(r), **budget.to_dict()},
    )


def cmd_ac_search(args):
    p = _group(_load(args.file))
    budget = _budget(args)
    r = ac_search(
        p,
        args.m,
        budget,
        threads=args.threads,
        allow_stabilization=args.stabilize,
        allow_automorphisms=args.automorphisms,
    )
    if isinstance(r, Unknown):
        return _report(args, "UNKNOWN", diagnostics=r.to_dict(), budget=budget.to_dict())
    return _report(
        args,
        "OK",
        certificate=ac_certificate_to_json(r),
        budget={"nodes": search_nodes(r), **budget.to_dict()},
    )


def cmd_ac_verify(args):
    p = _group(_load(args.file))
    cert = parse_ac_certificate(load_json(args.certificate))
    try:
        ok = verify_certificate(p, cert, args.m)
    except ReplayMismatch as exc:
        return _report(args, "FAIL", diagnostics={"message": str(exc)})
    return _report(args, "OK" if ok else "FAIL", invariants={"m_trivial": ok})


def cmd_catalog(args):
    if args.action == "list":
        return _report(args, "OK", result=[{"name": e.name, "params": list(e.params)} for e in catalog.entries()])
    if args.action == "get":
        if not args.name:
            raise UsageError("catalog get needs an entry name")
        try:
            e = catalog.entry(args.name, args.n)
        except KeyError as exc:
            raise UsageError(str(exc)) from exc
        except catalog.UnsupportedParameter as exc:
            return _report(args, "FAIL", diagnostics={"message": str(exc)})
        exp = {k: {"value": v.value, "provenance": v.provenance} for k, v in e.expected.items()}
        return _report(args, "OK", result=to_json(e.payload), expected=exp)
    if args.action == "validate-kawauchi":
        d = Path(args.name) if args.name else catalog.KAWAUCHI_DIR
        rows = catalog.validate_kawauchi(d)
        ok = all(r["ok"] for r in rows)
        return _report(args, "OK" if ok else "FAIL", result=rows)
    raise UsageError(f"unknown catalog action {args.action!r}")


# --- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gluckcalc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, *files, search=False):
        sp = sub.add_parser(name)
        for f in files:
            sp.add_argument(f)
        sp.add_argument("--pretty", action="store_true", help="indented, human-readable output")
        if search:
            sp.add_argument("--max-nodes", default="1e6", help="node budget (default 1e6)")
            sp.add_argument("--max-length", type=int, default=64, help="total relator length cap")
            sp.add_argument("--max-conjugator", type=int, default=4, help="conjugator length cap")
            sp.add_argument("--threads", type=int, default=1, help="worker threads (never changes verdicts)")
        sp.set_defaults(fn=fn)
        return sp

    add("validate", cmd_validate, "file")
    add("invariants", cmd_invariants, "file")

    mv = sub.add_parser("moves")
    mvs = mv.add_subparsers(dest="action", required=True, parser_class=_Parser)
    ap = mvs.add_parser("apply")
    ap.add_argument("script")
    ap.add_argument("file")
    ap.add_argument("--pretty", action="store_true")
    ap.set_defaults(fn=cmd_moves)

    u = add("undisking", cmd_undisking, "file", search=True)
    u.add_argument("--bound", type=int, required=True)
    u.add_argument("--certificate", help="verify this certificate instead of searching")
    t = add("triangularize", cmd_triangularize, "file", search=True)
    t.add_argument("--certificate")
    add("pathform", cmd_pathform, "file")
    h = add("handles", cmd_handles, "file")
    h.add_argument("--which", choices=("gluck4", "product5"), default="gluck4")
    add("gluck-pres", cmd_gluck_pres, "file")
    add("product-ball", cmd_product_ball, "file", search=True)
    s2 = add("step2", cmd_step2, "file", search=True)
    s2.add_argument("--j", type=int, default=None, help="relator slid over (default: none)")
    s2.add_argument("--u", default=None, help="conjugator as JSON [[g, sign], ...]")
    s2.add_argument("--inverse", action="store_true")
    acs = add("ac-search", cmd_ac_search, "file", search=True)
    acs.add_argument("--m", type=int, required=True)
    acs.add_argument("--stabilize", action="store_true", help="allow one stabilization")
    acs.add_argument("--automorphisms", action="store_true", help="allow Nielsen automorphisms")
    acv = add("ac-verify", cmd_ac_verify, "file", "certificate")
    acv.add_argument("--m", type=int, required=True)

    cat = add("catalog", cmd_catalog, "action")
    cat.add_argument("name", nargs="?")
    cat.add_argument("--n", type=int, default=None)
    return parser


def _echo(argv: List[str]) -> List[str]:
    """Arguments minus --threads and --pretty, so reports do not depend on them."""
    out, skip = [], False
    for a in argv:
        if skip:
            skip = False
            continue
        if a == "--threads":
            skip = True
            continue
        if a.startswith("--threads=") or a == "--pretty":
            continue
        out.append(a)
    return out


def run(argv: Optional[List[str]] = None, out=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out or sys.stdout
    pretty = "--pretty" in argv
    try:
        args = build_parser().parse_args(argv)
        args.command_echo = _echo(argv)
        if hasattr(args, "threads") and args.threads < 1:
            raise UsageError("--threads must be at least 1")
        if hasattr(args, "max_nodes"):
            try:
                _budget(args)
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
        report = args.fn(args)
        code = EXIT[report["verdict"]]
    except UsageError as exc:
        report, code = {"command": _echo(argv), "verdict": "FAIL", "error": {"kind": "usage", "message": str(exc)}}, EX_USAGE
    except ParseError as exc:
        report = {"command": _echo(argv), "verdict": "FAIL", "error": {"kind": "parse", "path": exc.path, "message": exc.message}}
        code = EX_USAGE
    except FileNotFoundError as exc:
        report = {"command": _echo(argv), "verdict": "FAIL", "error": {"kind": "file_not_found", "message": str(exc)}}
        code = EX_NOINPUT
    except (InvalidPresentation, ValueError) as exc:
        report = {"command": _echo(argv), "verdict": "FAIL", "error": {"kind": "invalid", "message": str(exc)}}
        code = EXIT["FAIL"]
    out.write(json.dumps(report, indent=2 if pretty else None, sort_keys=True) + "\n")
    return code


def main() -> None:
    sys.exit(run())
