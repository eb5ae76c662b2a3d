"""Command line front end: ``superbicross check|nf|build``.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage, input or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .dsl.bundled import BUNDLED, bundled_text
from .dsl.printer import print_presentation
from .dsl.semantics import build_model, doc_from_hopf, evaluate, run_checks
from .dsl.syntax import IMPLICIT_HANDLE, DslError, PresentationDoc, parse_expression, parse_presentation

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(source: str) -> str:
    path = Path(source)
    if path.exists():
        return path.read_text(encoding="utf-8")
    if source in BUNDLED:
        return bundled_text(source)
    raise UsageError(f"no such file: {source} (bundled instances: {', '.join(BUNDLED)})")


def _load(source: str) -> PresentationDoc:
    return parse_presentation(_read(source))


def _pick(handles, wanted: str | None, what: str) -> str:
    handles = list(handles)
    if wanted is not None:
        if wanted not in handles:
            raise UsageError(f"no {what} named {wanted!r}; have {', '.join(handles) or 'none'}")
        return wanted
    if IMPLICIT_HANDLE in handles:
        return IMPLICIT_HANDLE
    if len(handles) == 1:
        return handles[0]
    raise UsageError(f"several {what}s ({', '.join(handles)}); choose one explicitly")


def cmd_check(args) -> int:
    doc = _load(args.file)
    rep = run_checks(doc, max_degree=args.max_degree, samples=args.samples, seed=args.seed)
    text = rep.to_jsonl()
    if args.report:
        Path(args.report).write_text(text, encoding="utf-8")
        print(rep.summary())
    else:
        sys.stdout.write(text)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_nf(args) -> int:
    model = build_model(_load(args.file))
    P = model.algebras[_pick(model.algebras, args.algebra, "algebra")]
    e = P.element(evaluate(parse_expression(args.expr), P.index))
    print(e.render())
    return EXIT_OK


def cmd_build(args) -> int:
    doc = _load(args.file)
    model = build_model(doc)
    handle = _pick(model.bicross, args.bicross, "bicross block")
    built = model.build(handle)
    name = f"{doc.name or handle}_built"
    out = doc_from_hopf(built, handle="B", name=name)
    out.conventions = list(doc.conventions)
    out.symbols = list(doc.symbols)
    Path(args.emit).write_text(print_presentation(out), encoding="utf-8")
    print(f"{name}: {len(built.algebra)} generators, {len(built.algebra.rules)} rules -> {args.emit}")
    return EXIT_OK


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="superbicross", description="Check and build Hopf superalgebra presentations.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="run the check suites of a .hsa file and print JSONL records")
    c.add_argument("file", help="path to a .hsa file or a bundled instance name")
    c.add_argument("--max-degree", type=int, help="cap the word degree of every suite")
    c.add_argument("--samples", type=int, help="sample count for every suite")
    c.add_argument("--seed", type=int, help="seed for every suite")
    c.add_argument("--report", help="write the JSONL report here and print a summary instead")
    c.set_defaults(func=cmd_check)

    n = sub.add_parser("nf", help="print the normal form of an expression")
    n.add_argument("file")
    n.add_argument("--expr", required=True)
    n.add_argument("--algebra", help="algebra block handle (default: the only or implicit one)")
    n.set_defaults(func=cmd_nf)

    b = sub.add_parser("build", help="emit the built bicrossproduct as a .hsa presentation")
    b.add_argument("file")
    b.add_argument("--emit", required=True, help="output path")
    b.add_argument("--bicross", help="bicross block handle (default: the only one)")
    b.set_defaults(func=cmd_build)
    return p


def _error(payload: dict) -> None:
    print(json.dumps(payload, ensure_ascii=False), file=sys.stderr)


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse has already reported the problem
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except DslError as exc:
        _error({"error": exc.to_dict(), "file": args.file})
        return EXIT_USAGE
    except (UsageError, OSError, UnicodeDecodeError) as exc:
        _error({"error": {"kind": "usage", "message": str(exc)}})
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
