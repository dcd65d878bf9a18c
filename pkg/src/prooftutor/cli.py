"""Command line interface.

``prooftutor prove`` runs one proof synchronously and writes the export;
``prooftutor serve`` starts the HTTP service.  Exit codes of ``prove``:
0 the goal was proved, 1 it was not, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .documents import (
    Document, DocumentError, FormulaRef, build_knowledge_base, load_document,
)
from .formulas import ParseError, render_formula
from .presentation import export_proof
from .search import ConfigError, Outcome, ProverConfig, RuleSetting, prove, simplify
from .rules import rule_catalog

__all__ = ["main", "cli_prove", "cli_serve"]


class UsageError(Exception):
    pass


def _load_documents(paths: list[str]) -> list[Document]:
    documents = []
    for path in paths:
        try:
            with open(path, encoding="utf-8") as handle:
                documents.append(load_document(handle))
        except FileNotFoundError:
            raise UsageError(f"document not found: {path}")
        except (DocumentError, ParseError) as err:
            raise UsageError(f"{path}: {err}")
    if not documents:
        raise UsageError("at least one --doc is required")
    return documents


def _find_ref(documents: list[Document], spec: str) -> FormulaRef:
    if "." not in spec:
        raise UsageError(f"expected ENV.LABEL, got {spec!r}")
    env_name, label = spec.split(".", 1)
    for doc in documents:
        for env in doc.environments():
            if env.name != env_name:
                continue
            for current, _ in env.formulas:
                if current == label:
                    return FormulaRef(doc.id, env_name, label)
            raise UsageError(f"no label {label!r} in environment {env_name!r}")
    raise UsageError(f"no environment {env_name!r} in the given documents")


def _selection(documents: list[Document], kb_spec: str,
               goal_ref: FormulaRef) -> set[FormulaRef]:
    if kb_spec == "auto":
        refs = {
            FormulaRef(doc.id, env.name, label)
            for doc in documents
            for env in doc.environments()
            for label, _ in env.formulas}
    elif kb_spec in ("", "none"):
        refs = set()
    else:
        refs = {_find_ref(documents, part.strip())
                for part in kb_spec.split(",") if part.strip()}
    refs.discard(goal_ref)
    return refs


def _config(rule_specs: list[str], depth: int | None, timeout: int | None) -> ProverConfig:
    known = {r.id for r in rule_catalog()}
    rules: dict[str, RuleSetting] = {}
    base = ProverConfig()
    for spec in rule_specs:
        if "=" not in spec:
            raise UsageError(f"expected ID=on|off|PRIORITY, got {spec!r}")
        rule_id, value = spec.split("=", 1)
        if rule_id not in known:
            raise UsageError(f"unknown rule id {rule_id!r}")
        current = rules.get(rule_id, base.rules[rule_id])
        if value == "on":
            setting = RuleSetting(True, current.priority)
        elif value == "off":
            setting = RuleSetting(False, current.priority)
        elif value.isdigit() and int(value) >= 1:
            setting = RuleSetting(current.active, int(value))
        else:
            raise UsageError(f"bad rule setting {spec!r}")
        rules[rule_id] = setting
    try:
        return ProverConfig(
            rules,
            depth if depth is not None else 20,
            timeout if timeout is not None else 5000)
    except ConfigError as err:
        raise UsageError(str(err))


def cli_prove(argv: list[str]) -> int:
    parser = argparse.ArgumentParser(
        prog="prooftutor prove", add_help=True,
        description="Prove one labeled goal from document files.")
    parser.add_argument("--doc", action="append", default=[],
                        help="document file (.tmadoc.json); repeatable")
    parser.add_argument("--goal", required=True, metavar="ENV.LABEL")
    parser.add_argument("--kb", default="auto",
                        help="'auto' (everything but the goal) or ENV.LABEL,...")
    parser.add_argument("--rule", action="append", default=[],
                        metavar="ID=on|off|PRIORITY")
    parser.add_argument("--depth", type=int, default=None)
    parser.add_argument("--timeout", type=int, default=None, metavar="MS")
    parser.add_argument("--simplify", action="store_true",
                        help="also drop unused assumptions from the prose")
    parser.add_argument("--format", default="text",
                        choices=["text", "html", "json"])
    parser.add_argument("-o", "--output", default=None, metavar="PATH")
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return 0 if err.code == 0 else 2
    try:
        documents = _load_documents(args.doc)
        goal_ref = _find_ref(documents, args.goal)
        selection = _selection(documents, args.kb, goal_ref)
        config = _config(args.rule, args.depth, args.timeout)
        kb = build_knowledge_base(documents, selection)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    doc = next(d for d in documents if d.id == goal_ref.document)
    goal = dict(doc.environment(goal_ref.environment).formulas)[goal_ref.label]

    result = prove(goal, kb, config)
    proved = result.outcome == Outcome.PROVED
    if proved:
        options = {"prune_failures"}
        if args.simplify:
            options.add("elide_unused_assumptions")
        tree = simplify(result.tree, options)
        payload = export_proof(tree, kb, args.format)
    elif args.format == "json":
        payload = export_proof(result.tree, kb, "json")
    else:
        payload = (f"No proof found for {render_formula(goal)}: "
                   f"{result.outcome.value} after {result.elapsed_ms} ms, "
                   f"{result.nodes_expanded} expansions.\n").encode("utf-8")
    if args.output:
        Path(args.output).write_bytes(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
    return 0 if proved else 1


def cli_serve(argv: list[str]) -> int:
    parser = argparse.ArgumentParser(
        prog="prooftutor serve",
        description="Serve documents, the prover, and stored proofs over HTTP.")
    parser.add_argument("--docs", nargs="*", default=[],
                        help="document files or directories of *.tmadoc.json")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int,
                        default=int(os.environ.get("PROOFTUTOR_PORT", "8421")))
    parser.add_argument("--data", default=None,
                        help="proof store directory (default $PROOFTUTOR_DATA)")
    parser.add_argument("--workers", type=int, default=None,
                        help="worker pool size (default $PROOFTUTOR_WORKERS or 2)")
    parser.add_argument("--corpus", action="store_true",
                        help="also serve the bundled corpus documents")
    args = parser.parse_args(argv)

    paths: list[str] = []
    for entry in args.docs:
        path = Path(entry)
        if path.is_dir():
            paths.extend(str(p) for p in sorted(path.glob("*.tmadoc.json")))
        else:
            paths.append(entry)
    documents: list[Document] = []
    if paths:
        try:
            documents = _load_documents(paths)
        except UsageError as err:
            print(f"error: {err}", file=sys.stderr)
            return 2
    if args.corpus or not documents:
        from .corpus import corpus_documents
        documents = documents + corpus_documents()

    from .service import create_app
    import uvicorn

    app = create_app(documents, data_dir=args.data, workers=args.workers)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = argparse.ArgumentParser(prog="prooftutor")
    parser.add_argument("command", choices=["prove", "serve"])
    if not argv:
        parser.print_help(sys.stderr)
        return 2
    command, rest = argv[0], argv[1:]
    if command == "prove":
        return cli_prove(rest)
    if command == "serve":
        return cli_serve(rest)
    parser.print_help(sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
