"""Command-line interface.

Commands::

    metalg verify     --input doc.alg [--output report.json] [--field q]
    metalg idempotent --input doc.alg ...
    metalg cohomology --input doc.alg [--modules A,Ae,kermu] ...
    metalg decompose  --input doc.alg ...
    metalg conjugate  --input doc.alg ...
    metalg reverify   --input report.json

Each analysis command parses the input document, runs its analysis, prints
a human-readable report to stdout and, with --output, writes the
structured JSON report.  ``reverify`` re-checks every certificate inside a
previously written JSON report from the report's own data.

Exit codes: 0 success; 1 usage, parse or validation error; 2 axiom or
action-law violation (also: reverify rejection); 3 certified mathematical
negative (not separable, obstructed, not inner).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .algebra import ActionLawViolation, BadEmbedding, NotAnIdeal
from .decomposition import DimensionBound, MethodDisagreement
from . import __version__
from .formats import (
    ANALYSES,
    MODULE_NAMES,
    ParseError,
    ReverifyFailure,
    ValidationError,
    build_report,
    document_digest,
    emit_report,
    parse_input_document,
    realize_input,
    reverify_report,
    run_analysis,
)
from .metagroup import AxiomViolation, MalformedTable


def _make_parser():
    parser = argparse.ArgumentParser(
        prog="metalg",
        description="exact workbench for finite metagroup algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ANALYSES:
        p = sub.add_parser(name, help="run the %s analysis" % name)
        p.add_argument("--input", required=True, help="input document path")
        p.add_argument("--output", help="write the structured JSON report here")
        p.add_argument("--field", help="override the document's field spec (q or gf:p)")
        if name == "cohomology":
            p.add_argument(
                "--modules",
                default="A,Ae,kermu",
                help="comma-separated coefficient modules from: %s" % ",".join(MODULE_NAMES),
            )
    p = sub.add_parser("reverify", help="re-check a structured report offline")
    p.add_argument("--input", required=True, help="report JSON path")
    return parser


def main(argv=None) -> int:
    parser = _make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    if args.command == "reverify":
        return _cmd_reverify(args)
    return _cmd_analysis(args)


def _cmd_reverify(args) -> int:
    try:
        report = json.loads(Path(args.input).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        print("error: cannot load report: %s" % exc, file=sys.stderr)
        return 1
    try:
        reverify_report(report)
    except ReverifyFailure as exc:
        print("REJECTED: %s" % exc, file=sys.stderr)
        return 2
    except (AxiomViolation, MalformedTable, ActionLawViolation, NotAnIdeal, BadEmbedding) as exc:
        print("REJECTED: %s" % exc, file=sys.stderr)
        return 2
    except (ParseError, ValidationError) as exc:
        print("error: embedded input is invalid: %s" % exc, file=sys.stderr)
        return 1
    print("report verified: every certificate re-checks from the report data")
    return 0


def _cmd_analysis(args) -> int:
    try:
        path = Path(args.input)
        text = path.read_text()
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    t0 = time.monotonic()
    try:
        spec = parse_input_document(text, base_dir=path.parent)
        if args.field:
            spec.field_spec = args.field
    except ParseError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    try:
        real = realize_input(spec)
    except (ParseError, ValidationError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except (AxiomViolation, MalformedTable) as exc:
        return _axiom_failure(args, spec, text, exc)
    except (ActionLawViolation, BadEmbedding, NotAnIdeal) as exc:
        print("rejected: %s" % exc, file=sys.stderr)
        return 2
    modules = ("A", "Ae", "kermu")
    if args.command == "cohomology":
        modules = tuple(m for m in args.modules.split(",") if m)
        for m in modules:
            if m not in MODULE_NAMES:
                print("error: unknown module %r" % m, file=sys.stderr)
                return 1
    try:
        payload, code = run_analysis(real, args.command, modules)
    except (ValidationError,) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except (AxiomViolation, MalformedTable, ActionLawViolation, NotAnIdeal,
            MethodDisagreement, DimensionBound) as exc:
        print("rejected: %s" % exc, file=sys.stderr)
        return 2
    elapsed = int((time.monotonic() - t0) * 1000)
    report = build_report(real, args.command, {args.command: payload}, elapsed)
    sys.stdout.write(emit_report(report, "text"))
    if args.output:
        Path(args.output).write_text(emit_report(report, "structured"))
    return code


def _jsonable(x):
    if isinstance(x, tuple):
        return list(x)
    return x


def _axiom_failure(args, spec, text, exc) -> int:
    """A broken table is a reportable outcome, not a crash."""
    payload = {
        "status": "axiom-violation",
        "axiom": getattr(exc, "axiom", "malformed"),
        "witness": _jsonable(getattr(exc, "witness", None)),
        "message": str(exc),
    }
    report = {
        "format": "metalg-report/1",
        "tool": {"name": "metalg", "version": __version__},
        "input": {
            "digest": document_digest(text),
            "document": text,
            "field": spec.field_spec,
            "analyses": [args.command],
        },
        "results": {args.command: payload},
        "meta": {"command": args.command, "elapsed_ms": 0},
    }
    sys.stdout.write(emit_report(report, "text"))
    if args.output:
        Path(args.output).write_text(emit_report(report, "structured"))
    return 2


def console() -> None:
    sys.exit(main())
