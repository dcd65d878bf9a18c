"""Prioritized depth-first proof search over AND/OR trees.

A situation node's alternatives are the rule applications that could
handle it (OR); an application node's children are the situations that
must all be proved (AND).  The search expands the highest-priority
alternative first, backtracks on failure, and stops with the first
success at the root.  Depth and time limits leave unexplored nodes
pending, as does cancellation.

Statuses on a finished tree are Success, Failed, or Pending; Open only
occurs while the search is running.  ``simplify`` prunes a successful
tree down to the single all-successful formal proof.
"""

from __future__ import annotations

import enum
import sys
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional

from .documents import KnowledgeBase
from .formulas import parse_formula, render_formula
from .rules import (
    Assumption, ProofSituation, RuleApplication, applicable_applications,
    initial_situation, rule_catalog,
)

__all__ = [
    "RuleSetting", "ProverConfig", "ConfigError", "Status",
    "SituationNode", "ApplicationNode", "ProofTree", "ProofResult", "NotProved",
    "prove", "propagate_status", "simplify",
    "proof_tree_to_json", "proof_tree_from_json",
    "proof_result_to_json", "proof_result_from_json",
]


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class RuleSetting:
    active: bool
    priority: int


@dataclass(frozen=True)
class ProverConfig:
    """Per-rule activation and priority plus search limits."""

    rules: dict[str, RuleSetting] = field(default_factory=dict)
    depth_limit: int = 20
    time_limit_ms: int = 5000

    def __post_init__(self):
        catalog = {r.id: r for r in rule_catalog()}
        merged = dict(self.rules)
        unknown = set(merged) - set(catalog)
        if unknown:
            raise ConfigError(f"unknown rule ids: {sorted(unknown)}")
        for rule_id, descriptor in catalog.items():
            merged.setdefault(rule_id, RuleSetting(
                descriptor.default_active, descriptor.default_priority))
        object.__setattr__(self, "rules", merged)
        if self.depth_limit < 1:
            raise ConfigError("depth_limit must be >= 1")
        if self.time_limit_ms < 1:
            raise ConfigError("time_limit_ms must be >= 1")
        for rule_id, setting in merged.items():
            if setting.priority < 1:
                raise ConfigError(f"priority of {rule_id} must be >= 1")

    def with_rule(self, rule_id: str, active: Optional[bool] = None,
                  priority: Optional[int] = None) -> "ProverConfig":
        if rule_id not in self.rules:
            raise ConfigError(f"unknown rule ids: [{rule_id!r}]")
        old = self.rules[rule_id]
        setting = RuleSetting(
            old.active if active is None else active,
            old.priority if priority is None else priority)
        rules = dict(self.rules)
        rules[rule_id] = setting
        return ProverConfig(rules, self.depth_limit, self.time_limit_ms)

    def to_json(self) -> dict:
        return {
            "rules": {rule_id: {"active": s.active, "priority": s.priority}
                      for rule_id, s in sorted(self.rules.items())},
            "depth_limit": self.depth_limit,
            "time_limit_ms": self.time_limit_ms,
        }

    @staticmethod
    def from_json(data: dict) -> "ProverConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be an object")
        rules = {}
        for rule_id, raw in (data.get("rules") or {}).items():
            if not isinstance(raw, dict):
                raise ConfigError(f"setting for {rule_id} must be an object")
            defaults = {r.id: r for r in rule_catalog()}.get(rule_id)
            active = raw.get("active", defaults.default_active if defaults else True)
            priority = raw.get("priority", defaults.default_priority if defaults else 1)
            if not isinstance(active, bool) or not isinstance(priority, int):
                raise ConfigError(f"bad setting for {rule_id}")
            rules[rule_id] = RuleSetting(active, priority)
        depth = data.get("depth_limit", 20)
        time_ms = data.get("time_limit_ms", 5000)
        if not isinstance(depth, int) or not isinstance(time_ms, int):
            raise ConfigError("limits must be integers")
        return ProverConfig(rules, depth, time_ms)


class Status(enum.Enum):
    OPEN = "open"
    SUCCESS = "success"
    FAILED = "failed"
    PENDING = "pending"


class SituationNode:
    __slots__ = ("id", "situation", "status", "alternatives", "expanded")

    def __init__(self, node_id: int, situation: ProofSituation):
        self.id = node_id
        self.situation = situation
        self.status = Status.OPEN
        self.alternatives: list[ApplicationNode] = []
        self.expanded = False


class ApplicationNode:
    __slots__ = ("id", "application", "status", "children", "expanded")

    def __init__(self, node_id: int, application: RuleApplication,
                 children: list[SituationNode]):
        self.id = node_id
        self.application = application
        self.status = Status.OPEN
        self.children = children
        self.expanded = False


@dataclass
class ProofTree:
    root: SituationNode
    elided_labels: Optional[frozenset[str]] = None

    def situations(self) -> Iterator[SituationNode]:
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            for alt in node.alternatives:
                stack.extend(alt.children)

    def applications(self) -> Iterator[tuple[SituationNode, "ApplicationNode"]]:
        for node in self.situations():
            for alt in node.alternatives:
                yield node, alt


class Outcome(str, enum.Enum):
    PROVED = "proved"
    FAILED = "failed"
    DEPTH_LIMIT = "depth_limit"
    TIME_LIMIT = "time_limit"
    INTERRUPTED = "interrupted"

    def __str__(self) -> str:
        return self.value


@dataclass
class ProofResult:
    outcome: Outcome
    version: int
    tree: ProofTree
    nodes_expanded: int
    elapsed_ms: int


class NotProved(Exception):
    pass


# ---------------------------------------------------------------------------
# Search


class _Search:
    def __init__(self, config: ProverConfig, cancel: Optional[Callable[[], bool]]):
        self.config = config
        self.cancel = cancel or (lambda: False)
        self.deadline = time.monotonic() + config.time_limit_ms / 1000.0
        self.counter = 0
        self.nodes_expanded = 0
        self.timed_out = False
        self.cancelled = False

    def next_id(self) -> int:
        value = self.counter
        self.counter += 1
        return value

    def should_stop(self) -> bool:
        if self.cancelled or self.timed_out:
            return True
        if self.cancel():
            self.cancelled = True
            return True
        if time.monotonic() > self.deadline:
            self.timed_out = True
            return True
        return False

    def run(self, node: SituationNode, depth: int) -> None:
        """Expand ``node`` depth-first; sets its final status."""
        if self.should_stop():
            return
        if depth > self.config.depth_limit:
            node.status = Status.PENDING
            return
        applications = applicable_applications(node.situation, self.config)
        node.expanded = True
        self.nodes_expanded += 1
        for app in applications:
            alt = ApplicationNode(
                self.next_id(), app,
                [SituationNode(self.next_id(), child) for child in app.children])
            node.alternatives.append(alt)
        for alt in node.alternatives:
            if self.should_stop():
                break
            alt.expanded = True
            failed = False
            for child in alt.children:
                self.run(child, depth + 1)
                if child.status is not Status.SUCCESS:
                    failed = child.status is Status.FAILED
                    break
            if all(c.status is Status.SUCCESS for c in alt.children):
                alt.status = Status.SUCCESS
                node.status = Status.SUCCESS
                return  # first success: later alternatives stay pending
            alt.status = Status.FAILED if failed else Status.PENDING
        if node.alternatives and not all(
                alt.status is Status.FAILED for alt in node.alternatives):
            node.status = Status.PENDING
        else:
            node.status = Status.FAILED


def prove(goal, kb: KnowledgeBase = KnowledgeBase(),
          config: Optional[ProverConfig] = None,
          cancel: Optional[Callable[[], bool]] = None,
          version: int = 1) -> ProofResult:
    """Search for a proof of ``goal`` from ``kb`` under ``config``.

    ``goal`` is a closed formula (or its text).  ``cancel`` is polled
    between node expansions; raising it never corrupts the tree, it
    only leaves pending nodes behind.  The returned tree is final:
    every node is Success, Failed, or Pending.
    """
    if isinstance(goal, str):
        goal = parse_formula(goal)
    config = config or ProverConfig()
    started = time.monotonic()
    search = _Search(config, cancel)
    # recursion alternates situation and application levels plus helper frames
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 10 * config.depth_limit + 200))
    root = SituationNode(search.next_id(), initial_situation(goal, kb))
    search.run(root, 1)
    tree = ProofTree(root)
    propagate_status(tree)
    elapsed_ms = int((time.monotonic() - started) * 1000)
    if root.status is Status.SUCCESS:
        outcome = Outcome.PROVED
    elif search.cancelled:
        outcome = Outcome.INTERRUPTED
    elif search.timed_out:
        outcome = Outcome.TIME_LIMIT
    elif root.status is Status.FAILED:
        outcome = Outcome.FAILED
    else:
        outcome = Outcome.DEPTH_LIMIT
    return ProofResult(outcome, version, tree, search.nodes_expanded, elapsed_ms)


def propagate_status(tree: ProofTree) -> ProofTree:
    """Recompute all statuses bottom-up; idempotent.

    An unexpanded node is Pending: it was never handed to the engine,
    so even a closing alternative with no children stays Pending until
    the search actually takes it.
    """
    _propagate_situation(tree.root)
    return tree


def _propagate_situation(node: SituationNode) -> Status:
    if not node.expanded:
        node.status = Status.PENDING
        return node.status
    statuses = [_propagate_application(alt) for alt in node.alternatives]
    if any(s is Status.SUCCESS for s in statuses):
        node.status = Status.SUCCESS
    elif all(s is Status.FAILED for s in statuses):
        node.status = Status.FAILED
    else:
        node.status = Status.PENDING
    return node.status


def _propagate_application(node: ApplicationNode) -> Status:
    statuses = [_propagate_situation(child) for child in node.children]
    if not node.expanded:
        node.status = Status.PENDING
    elif all(s is Status.SUCCESS for s in statuses):
        node.status = Status.SUCCESS
    elif any(s is Status.FAILED for s in statuses):
        node.status = Status.FAILED
    else:
        node.status = Status.PENDING
    return node.status


# ---------------------------------------------------------------------------
# Simplification

SIMPLIFY_OPTIONS = frozenset({"prune_failures", "elide_unused_assumptions"})


def simplify(tree: ProofTree, options: Iterable[str] = ("prune_failures",)) -> ProofTree:
    """Prune a successful search tree down to the formal proof.

    ``prune_failures`` keeps exactly the first successful alternative of
    every situation; ``elide_unused_assumptions`` records which
    knowledge-base assumptions the retained steps never touch, so that
    presentation can drop them.  Node ids are preserved.
    """
    options = set(options)
    unknown = options - SIMPLIFY_OPTIONS
    if unknown:
        raise ValueError(f"unknown simplify options: {sorted(unknown)}")
    if tree.root.status is not Status.SUCCESS:
        raise NotProved("only successful proofs can be simplified")
    root = tree.root
    if "prune_failures" in options:
        root = _prune(tree.root)
    elided = tree.elided_labels
    if "elide_unused_assumptions" in options:
        used = set()
        stack = [root]
        while stack:
            node = stack.pop()
            for alt in node.alternatives:
                used.update(alt.application.focus)
                for key, value in alt.application.bindings:
                    if key.endswith("label") or key in ("implication", "antecedent",
                                                        "positive", "negative"):
                        used.add(value)
                stack.extend(alt.children)
        initial = {a.label for a in tree.root.situation.assumptions}
        elided = frozenset(initial - used)
    return ProofTree(root, elided)


def _prune(node: SituationNode) -> SituationNode:
    chosen = next(alt for alt in node.alternatives
                  if alt.status is Status.SUCCESS)
    copy = SituationNode(node.id, node.situation)
    copy.status = Status.SUCCESS
    copy.expanded = True
    app_copy = ApplicationNode(chosen.id, chosen.application,
                               [_prune(child) for child in chosen.children])
    app_copy.status = Status.SUCCESS
    app_copy.expanded = True
    copy.alternatives = [app_copy]
    return copy


# ---------------------------------------------------------------------------
# Serialization (stable across runs: no wall-clock data inside trees)


def _situation_to_json(s: ProofSituation) -> dict:
    return {
        "goal": render_formula(s.goal),
        "assumptions": [[label, render_formula(f)] for label, f in s.assumptions],
        "signature": sorted(s.signature),
    }


def _situation_from_json(data: dict) -> ProofSituation:
    return ProofSituation(
        parse_formula(data["goal"]),
        tuple(Assumption(label, parse_formula(text))
              for label, text in data["assumptions"]),
        frozenset(data["signature"]))


def _situation_node_to_json(node: SituationNode) -> dict:
    return {
        "id": node.id,
        "kind": "situation",
        "status": node.status.value,
        "expanded": node.expanded,
        "situation": _situation_to_json(node.situation),
        "alternatives": [_application_node_to_json(alt) for alt in node.alternatives],
    }


def _application_node_to_json(node: ApplicationNode) -> dict:
    app = node.application
    return {
        "id": node.id,
        "kind": "application",
        "status": node.status.value,
        "expanded": node.expanded,
        "rule": app.rule,
        "focus": list(app.focus),
        "bindings": [list(pair) for pair in app.bindings],
        "description_key": app.description_key,
        "children": [_situation_node_to_json(child) for child in node.children],
    }


def _situation_node_from_json(data: dict) -> SituationNode:
    node = SituationNode(data["id"], _situation_from_json(data["situation"]))
    node.status = Status(data["status"])
    node.expanded = data["expanded"]
    node.alternatives = [
        _application_node_from_json(alt, node.situation)
        for alt in data["alternatives"]]
    return node


def _application_node_from_json(data: dict, parent: ProofSituation) -> ApplicationNode:
    children = [_situation_node_from_json(c) for c in data["children"]]
    app = RuleApplication(
        data["rule"], tuple(data["focus"]),
        tuple((k, v) for k, v in data["bindings"]),
        tuple(child.situation for child in children),
        data["description_key"])
    node = ApplicationNode(data["id"], app, children)
    node.status = Status(data["status"])
    node.expanded = data["expanded"]
    return node


def proof_tree_to_json(tree: ProofTree) -> dict:
    data = {"root": _situation_node_to_json(tree.root)}
    if tree.elided_labels is not None:
        data["elided_labels"] = sorted(tree.elided_labels)
    return data


def proof_tree_from_json(data: dict) -> ProofTree:
    elided = data.get("elided_labels")
    return ProofTree(
        _situation_node_from_json(data["root"]),
        frozenset(elided) if elided is not None else None)


def proof_result_to_json(result: ProofResult) -> dict:
    return {
        "outcome": result.outcome.value,
        "version": result.version,
        "stats": {"nodes_expanded": result.nodes_expanded,
                  "elapsed_ms": result.elapsed_ms},
        "tree": proof_tree_to_json(result.tree),
    }


def proof_result_from_json(data: dict) -> ProofResult:
    return ProofResult(
        Outcome(data["outcome"]), data["version"],
        proof_tree_from_json(data["tree"]),
        data["stats"]["nodes_expanded"], data["stats"]["elapsed_ms"])
