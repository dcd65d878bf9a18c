"""Notebook-like documents and knowledge-base selection.

A document is an ordered tree of sections, text cells, and formal
environments (definitions, axioms, lemmas, propositions, theorems).
Each environment holds labeled closed formulas.  Documents are loaded
from ``.tmadoc.json`` files:

    {"id": str, "title": str, "cells": [CELL]}

    CELL = {"type": "section", "title": str, "cells": [CELL]}
         | {"type": "text", "content": str}
         | {"type": "env", "kind": "definition|axiom|lemma|proposition|theorem",
            "name": str, "formulas": [{"label": str, "formula": str}]}

Formula strings use the grammar of :mod:`prooftutor.formulas`.  The
outline of a document keeps only the formal skeleton; checking a set of
formula references against one or more documents yields the knowledge
base a proof may use.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import IO, Iterable, Iterator, Union

from .formulas import (
    Formula, ParseError, free_vars, function_arities, parse_formula,
    predicate_arities, render_formula,
)

__all__ = [
    "TextCell", "EnvironmentCell", "SectionCell", "Cell", "Document",
    "FormulaRef", "KBEntry", "KnowledgeBase",
    "OutlineSection", "OutlineEnvironment", "OutlineNode",
    "DocumentError", "FormatError", "DuplicateLabelError", "ResolveError",
    "load_document", "document_to_json", "outline", "build_knowledge_base",
]

ENV_KINDS = ("definition", "axiom", "lemma", "proposition", "theorem")


class DocumentError(Exception):
    pass


class FormatError(DocumentError):
    pass


class DuplicateLabelError(DocumentError):
    pass


class ResolveError(DocumentError):
    pass


@dataclass(frozen=True)
class TextCell:
    content: str


@dataclass(frozen=True)
class EnvironmentCell:
    kind: str
    name: str
    formulas: tuple[tuple[str, Formula], ...]  # (label, formula)


@dataclass(frozen=True)
class SectionCell:
    title: str
    cells: tuple["Cell", ...]


Cell = Union[TextCell, EnvironmentCell, SectionCell]


@dataclass(frozen=True)
class Document:
    id: str
    title: str
    cells: tuple[Cell, ...]

    def environments(self) -> Iterator[EnvironmentCell]:
        yield from _environments(self.cells)

    def environment(self, name: str) -> EnvironmentCell:
        for env in self.environments():
            if env.name == name:
                return env
        raise ResolveError(f"no environment {name!r} in document {self.id!r}")


@dataclass(frozen=True, order=True)
class FormulaRef:
    document: str
    environment: str
    label: str

    def __str__(self) -> str:
        return f"{self.document}/{self.environment}.{self.label}"


@dataclass(frozen=True)
class KBEntry:
    ref: FormulaRef
    display_label: str
    formula: Formula


@dataclass(frozen=True)
class KnowledgeBase:
    entries: tuple[KBEntry, ...] = ()

    def __iter__(self) -> Iterator[KBEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class OutlineSection:
    title: str
    children: tuple["OutlineNode", ...]


@dataclass(frozen=True)
class OutlineEnvironment:
    kind: str
    name: str
    formulas: tuple[tuple[str, str], ...]  # (label, rendered formula) for tooltips


OutlineNode = Union[OutlineSection, OutlineEnvironment]


def _environments(cells: Iterable[Cell]) -> Iterator[EnvironmentCell]:
    for cell in cells:
        if isinstance(cell, EnvironmentCell):
            yield cell
        elif isinstance(cell, SectionCell):
            yield from _environments(cell.cells)


# ---------------------------------------------------------------------------
# Loading


def _require(data: dict, key: str, kind: type, where: str):
    if not isinstance(data, dict) or key not in data:
        raise FormatError(f"missing {key!r} in {where}")
    value = data[key]
    if not isinstance(value, kind):
        raise FormatError(f"{key!r} in {where} must be {kind.__name__}")
    return value


def _load_cell(data: dict, where: str) -> Cell:
    if not isinstance(data, dict):
        raise FormatError(f"cell in {where} must be an object")
    ctype = _require(data, "type", str, where)
    if ctype == "text":
        return TextCell(_require(data, "content", str, where))
    if ctype == "section":
        title = _require(data, "title", str, where)
        cells = _require(data, "cells", list, f"section {title!r}")
        return SectionCell(title, tuple(
            _load_cell(c, f"section {title!r}") for c in cells))
    if ctype == "env":
        kind = _require(data, "kind", str, where)
        if kind not in ENV_KINDS:
            raise FormatError(f"unknown environment kind {kind!r} in {where}")
        name = _require(data, "name", str, where)
        raw = _require(data, "formulas", list, f"environment {name!r}")
        formulas = []
        labels = set()
        for item in raw:
            label = _require(item, "label", str, f"environment {name!r}")
            text = _require(item, "formula", str, f"environment {name!r}")
            if label in labels:
                raise DuplicateLabelError(
                    f"duplicate label {label!r} in environment {name!r}")
            labels.add(label)
            try:
                formula = parse_formula(text)
            except ParseError as err:
                raise ParseError(
                    f"in environment {name!r}, label {label!r}: {err.args[0]}",
                    err.position, err.expected) from err
            unbound = free_vars(formula)
            if unbound:
                raise FormatError(
                    f"formula {name}.{label} has free variables "
                    f"{sorted(unbound)}; stored formulas must be closed")
            formulas.append((label, formula))
        return EnvironmentCell(kind, name, tuple(formulas))
    raise FormatError(f"unknown cell type {ctype!r} in {where}")


def _check_arities(doc: Document) -> None:
    functions: dict[str, int] = {}
    predicates: dict[str, int] = {}
    for env in doc.environments():
        for label, formula in env.formulas:
            for table, seen in ((function_arities(formula), functions),
                                (predicate_arities(formula), predicates)):
                for name, arity in table.items():
                    before = seen.setdefault(name, arity)
                    if before != arity:
                        raise FormatError(
                            f"{name!r} used with arity {arity} in {env.name}.{label} "
                            f"but with arity {before} elsewhere in document {doc.id!r}")


def load_document(source: Union[str, bytes, IO]) -> Document:
    """Parse a document from JSON text, bytes, or a readable stream."""
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    try:
        data = json.loads(source)
    except json.JSONDecodeError as err:
        raise FormatError(f"not valid JSON: {err}") from err
    doc_id = _require(data, "id", str, "document")
    title = _require(data, "title", str, "document")
    cells = _require(data, "cells", list, f"document {doc_id!r}")
    doc = Document(doc_id, title, tuple(
        _load_cell(c, f"document {doc_id!r}") for c in cells))
    names = set()
    for env in doc.environments():
        if env.name in names:
            raise DuplicateLabelError(
                f"duplicate environment name {env.name!r} in document {doc_id!r}")
        names.add(env.name)
    _check_arities(doc)
    return doc


def _cell_to_json(cell: Cell) -> dict:
    if isinstance(cell, TextCell):
        return {"type": "text", "content": cell.content}
    if isinstance(cell, SectionCell):
        return {"type": "section", "title": cell.title,
                "cells": [_cell_to_json(c) for c in cell.cells]}
    return {"type": "env", "kind": cell.kind, "name": cell.name,
            "formulas": [{"label": label, "formula": render_formula(f)}
                         for label, f in cell.formulas]}


def document_to_json(doc: Document) -> dict:
    return {"id": doc.id, "title": doc.title,
            "cells": [_cell_to_json(c) for c in doc.cells]}


# ---------------------------------------------------------------------------
# Outline and knowledge base


def outline(doc: Document) -> tuple[OutlineNode, ...]:
    """The formal skeleton of a document: sections and environments only."""
    return _outline_cells(doc.cells)


def _outline_cells(cells: Iterable[Cell]) -> tuple[OutlineNode, ...]:
    nodes = []
    for cell in cells:
        if isinstance(cell, SectionCell):
            nodes.append(OutlineSection(cell.title, _outline_cells(cell.cells)))
        elif isinstance(cell, EnvironmentCell):
            nodes.append(OutlineEnvironment(
                cell.kind, cell.name,
                tuple((label, render_formula(f)) for label, f in cell.formulas)))
    return tuple(nodes)


def build_knowledge_base(docs: Iterable[Document],
                         selection: Iterable[FormulaRef]) -> KnowledgeBase:
    """The selected formulas, in document order, as a knowledge base."""
    wanted = set(selection)
    entries = []
    seen = set()
    for doc in docs:
        for env in doc.environments():
            for label, formula in env.formulas:
                ref = FormulaRef(doc.id, env.name, label)
                if ref in wanted:
                    entries.append(KBEntry(ref, f"{env.name}.{label}", formula))
                    seen.add(ref)
    missing = wanted - seen
    if missing:
        ref = sorted(missing)[0]
        raise ResolveError(f"cannot resolve {ref}")
    return KnowledgeBase(tuple(entries))
