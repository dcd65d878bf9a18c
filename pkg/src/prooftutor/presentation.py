"""Natural-language proof rendering and tree views.

A simplified proof tree (one successful alternative per situation)
turns into nested prose blocks, one block per proof step.  Every block
carries the ids of the situation and application it describes, which
gives clients a bijection between prose and tree nodes for two-way
click navigation.  The wording lives in a template table keyed by the
application's description key, so it can be swapped out wholesale.
"""

from __future__ import annotations

import html as html_module
import json
from dataclasses import dataclass, field
from typing import Optional

from .documents import KnowledgeBase
from .formulas import render_formula
from .rules import rule_by_id
from .search import ApplicationNode, ProofTree, SituationNode, Status

__all__ = [
    "ProseBlock", "ProseDocument", "NotSimplified", "UnsupportedFormat",
    "render_proof_nl", "tree_to_view", "export_proof", "TEMPLATES",
]


class NotSimplified(Exception):
    pass


class UnsupportedFormat(Exception):
    pass


# One English template per rule variant.  Placeholders come from the
# application's bindings plus {goal}, the goal of the situation the
# step resolves.  Closing steps end with the tombstone.
TEMPLATES = {
    "goal_true": "The goal is true. ∎",
    "contradiction_bottom":
        "The knowledge contains falsity ({label}), so anything follows. ∎",
    "contradiction_pair":
        "Assumptions ({positive}) and ({negative}) contradict each other. ∎",
    "goal_in_kb": "The goal is identical to assumption ({label}). ∎",
    "and_goal": "For proving {goal}, we show both parts.",
    "impl_goal":
        "For proving {goal}, we assume ({assumption_label}) {assumption} and show {show}.",
    "iff_goal": "For proving {goal}, we prove both directions.",
    "not_goal":
        "For proving {goal}, we assume ({assumption_label}) {assumption} and derive a contradiction.",
    "forall_goal":
        "For proving {goal}, let {constant} be arbitrary but fixed; we show {instance}.",
    "and_kb": "From ({label}) we know ({added}).",
    "iff_kb": "From ({label}) we obtain both directions ({added}).",
    "exists_kb":
        "By ({label}) we may choose {constant} such that ({instance_label}) {instance}.",
    "modus_ponens":
        "From ({antecedent}) and ({implication}) we obtain ({conclusion_label}) {conclusion}.",
    "or_kb": "We distinguish two cases based on ({label}).",
    "not_kb.not_not": "From ({label}) we obtain ({added}).",
    "not_kb.not_or": "From ({label}), both disjuncts fail: ({added}).",
    "not_kb.not_implies":
        "From ({label}), the antecedent holds while the consequent fails: ({added}).",
    "not_kb.not_top": "Assumption ({label}) denies a truth, giving ({added}).",
    "not_kb.not_forall": "From ({label}) there is a counterexample: ({added}).",
    "not_kb.not_exists": "From ({label}), no witness exists: ({added}).",
    "not_kb.not_and":
        "By ({label}), one of the conjuncts fails; we distinguish two cases.",
    "not_kb.not_iff":
        "By ({label}), the two sides differ; we distinguish two cases.",
    "or_goal.left": "For proving {goal}, we show {side}.",
    "or_goal.right": "For proving {goal}, we show {side}.",
    "or_goal.negated":
        "For proving {goal}, we assume ({assumption_label}) {assumption} and show {show}.",
    "exists_goal.witness":
        "For proving {goal}, we take the witness {term} and show {instance}.",
    "exists_goal.fresh":
        "For proving {goal}, we pick a fresh {constant} and show {instance}.",
    "forall_kb": "Instantiating ({label}) with {term} gives ({instance_label}) {instance}.",
    "implies_kb": "We use ({label}) by cases on its antecedent.",
    "by_contradiction":
        "For proving {goal}, we assume the contrary ({assumption_label}) {assumption} and derive a contradiction.",
}

# Titles for the children of branching steps, by description key.
CASE_TITLES = {
    "and_goal": ("Part 1", "Part 2"),
    "iff_goal": ("Direction 1", "Direction 2"),
    "or_kb": ("Case 1", "Case 2"),
    "not_kb.not_and": ("Case 1", "Case 2"),
    "not_kb.not_iff": ("Case 1", "Case 2"),
    "implies_kb": ("Case 1", "Case 2"),
}


@dataclass
class ProseBlock:
    situation_id: int
    application_id: int
    text: str
    title: Optional[str] = None
    children: list["ProseBlock"] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "situation_id": self.situation_id,
            "application_id": self.application_id,
            "title": self.title,
            "text": self.text,
            "children": [child.to_json() for child in self.children],
        }


@dataclass
class ProseDocument:
    goal: str
    knowledge: list[tuple[str, str]]
    blocks: list[ProseBlock]

    def to_json(self) -> dict:
        return {
            "goal": self.goal,
            "knowledge": [{"label": label, "formula": text}
                          for label, text in self.knowledge],
            "blocks": [block.to_json() for block in self.blocks],
        }

    def anchor_ids(self) -> set[int]:
        ids: set[int] = set()

        def collect(block: ProseBlock) -> None:
            ids.add(block.situation_id)
            ids.add(block.application_id)
            for child in block.children:
                collect(child)

        for block in self.blocks:
            collect(block)
        return ids


def _ensure_simplified(tree: ProofTree) -> None:
    for node in tree.situations():
        if node.status is not Status.SUCCESS:
            raise NotSimplified("tree contains non-successful nodes")
        if len(node.alternatives) != 1:
            raise NotSimplified("situation nodes must have exactly one alternative")
        if any(alt.status is not Status.SUCCESS for alt in node.alternatives):
            raise NotSimplified("tree contains non-successful nodes")


def render_proof_nl(tree: ProofTree, kb: KnowledgeBase = KnowledgeBase()) -> ProseDocument:
    """Nested prose, one block per proof step of a simplified tree."""
    _ensure_simplified(tree)
    elided = tree.elided_labels or frozenset()
    knowledge = [(entry.display_label, render_formula(entry.formula))
                 for entry in kb if entry.display_label not in elided]
    blocks = [_block_for(tree.root, None)]
    return ProseDocument(render_formula(tree.root.situation.goal), knowledge, blocks)


def _block_for(node: SituationNode, title: Optional[str]) -> ProseBlock:
    alt = node.alternatives[0]
    app = alt.application
    context = dict(app.bindings)
    context["goal"] = render_formula(node.situation.goal)
    template = TEMPLATES[app.description_key]
    text = template.format(**context)
    titles = CASE_TITLES.get(app.description_key, ())
    children = []
    for index, child in enumerate(alt.children):
        child_title = titles[index] if index < len(titles) else None
        children.append(_block_for(child, child_title))
    return ProseBlock(node.id, alt.id, text, title, children)


# ---------------------------------------------------------------------------
# Tree view


def tree_to_view(tree: ProofTree) -> dict:
    """Flat node list for clients: ids, kinds, statuses, display names."""
    nodes = []

    def visit_situation(node: SituationNode) -> None:
        nodes.append({
            "id": node.id,
            "kind": "situation",
            "status": node.status.value,
            "children": [alt.id for alt in node.alternatives],
        })
        for alt in node.alternatives:
            visit_application(alt)

    def visit_application(node: ApplicationNode) -> None:
        nodes.append({
            "id": node.id,
            "kind": "application",
            "status": node.status.value,
            "rule_display_name": rule_by_id(node.application.rule).display_name,
            "children": [child.id for child in node.children],
        })
        for child in node.children:
            visit_situation(child)

    visit_situation(tree.root)
    nodes.sort(key=lambda n: n["id"])
    return {"root": tree.root.id, "nodes": nodes}


# ---------------------------------------------------------------------------
# Export


def _flatten_text(block: ProseBlock, depth: int, lines: list[str]) -> None:
    prefix = "  " * depth
    title = f"{block.title}: " if block.title else ""
    lines.append(f"{prefix}{title}{block.text}")
    for child in block.children:
        _flatten_text(child, depth + 1, lines)


def _block_html(block: ProseBlock) -> str:
    title = f"<strong>{html_module.escape(block.title)}:</strong> " if block.title else ""
    children = "".join(_block_html(child) for child in block.children)
    return (
        f'<div class="step" data-node-id="{block.situation_id}">'
        f'<p data-node-id="{block.application_id}">{title}'
        f"{html_module.escape(block.text)}</p>{children}</div>"
    )


def export_proof(tree: ProofTree, kb: KnowledgeBase = KnowledgeBase(),
                 format: str = "text") -> bytes:
    """Serialize a proof for humans (text, html) or tools (json)."""
    if format == "json":
        payload = {"tree": tree_to_view(tree)}
        try:
            payload["prose"] = render_proof_nl(tree, kb).to_json()
        except NotSimplified:
            payload["prose"] = None
        return json.dumps(payload, sort_keys=True, indent=2).encode("utf-8")
    if format == "text":
        prose = render_proof_nl(tree, kb)
        lines = [f"Theorem: {prose.goal}."]
        if prose.knowledge:
            knowledge = ", ".join(f"({label}) {text}" for label, text in prose.knowledge)
            lines.append(f"Knowledge: {knowledge}.")
        for block in prose.blocks:
            _flatten_text(block, 0, lines)
        return ("\n".join(lines) + "\n").encode("utf-8")
    if format == "html":
        prose = render_proof_nl(tree, kb)
        knowledge = ""
        if prose.knowledge:
            items = "".join(
                f"<li>({html_module.escape(label)}) {html_module.escape(text)}</li>"
                for label, text in prose.knowledge)
            knowledge = f"<ul class=\"knowledge\">{items}</ul>"
        body = "".join(_block_html(block) for block in prose.blocks)
        doc = (
            "<!DOCTYPE html><html><head><meta charset=\"utf-8\">"
            f"<title>Proof of {html_module.escape(prose.goal)}</title></head>"
            f"<body><h1>Theorem: {html_module.escape(prose.goal)}</h1>"
            f"{knowledge}<div class=\"proof\">{body}</div></body></html>"
        )
        return doc.encode("utf-8")
    raise UnsupportedFormat(f"unsupported export format {format!r}")
