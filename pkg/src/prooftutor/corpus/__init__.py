"""Bundled problem sets: documents plus a problem manifest.

Each problem names a goal formula inside one of the bundled documents
and the knowledge-base selection to prove it from.  The ``ground-fo``
problems stay inside the function-free fragment with at most two
constants and two predicates, which keeps them decidable by ground
expansion; the ``propositional`` problems exercise the connective
rules, case splits, and the configuration surface.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from ..documents import (
    Document, FormulaRef, KnowledgeBase, build_knowledge_base, load_document,
)
from ..formulas import Formula

__all__ = ["CorpusProblem", "corpus_documents", "corpus_problems", "problem_inputs"]

_DOCUMENT_FILES = ("propositional.tmadoc.json", "quantifiers.tmadoc.json",
                   "stress.tmadoc.json")


@dataclass(frozen=True)
class CorpusProblem:
    name: str
    fragment: str  # "propositional" | "ground-fo"
    goal: FormulaRef
    selection: tuple[FormulaRef, ...]


def _read(name: str) -> str:
    return resources.files(__package__).joinpath(name).read_text("utf-8")


def corpus_documents() -> list[Document]:
    """The bundled documents, in manifest order."""
    return [load_document(_read(name)) for name in _DOCUMENT_FILES]


def corpus_problems() -> list[CorpusProblem]:
    data = json.loads(_read("problems.json"))
    problems = []
    for raw in data["problems"]:
        problems.append(CorpusProblem(
            raw["name"], raw["fragment"],
            FormulaRef(**raw["goal"]),
            tuple(FormulaRef(**ref) for ref in raw["selection"])))
    return problems


def problem_inputs(problem: CorpusProblem,
                   docs: list[Document] | None = None
                   ) -> tuple[Formula, KnowledgeBase]:
    """The goal formula and knowledge base a problem asks to prove."""
    docs = docs if docs is not None else corpus_documents()
    doc = next(d for d in docs if d.id == problem.goal.document)
    env = doc.environment(problem.goal.environment)
    goal = dict(env.formulas)[problem.goal.label]
    kb = build_knowledge_base(docs, set(problem.selection))
    return goal, kb
