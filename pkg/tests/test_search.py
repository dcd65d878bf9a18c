import itertools
import json
import random

import pytest

from oracles import is_tautology
from prooftutor.documents import FormulaRef, KBEntry, KnowledgeBase
from prooftutor.formulas import Atom, And, Or, Not, Implies, Iff, parse_formula
from prooftutor.checker import check_step
from prooftutor.search import (
    ApplicationNode, ConfigError, NotProved, Outcome, ProofTree, ProverConfig,
    RuleSetting, SituationNode, Status, proof_result_from_json,
    proof_result_to_json, proof_tree_from_json, proof_tree_to_json,
    propagate_status, prove, simplify,
)
from prooftutor.rules import initial_situation, applicable_applications


def kb_from(*texts):
    entries = tuple(
        KBEntry(FormulaRef("d", "T", str(i + 1)), f"T.{i + 1}", parse_formula(t))
        for i, t in enumerate(texts))
    return KnowledgeBase(entries)


def bc_config(depth=30, time_ms=10000):
    rules = {"ByContradiction": RuleSetting(True, 15)}
    return ProverConfig(rules, depth, time_ms)


# ---------------------------------------------------------------------------
# Config


def test_config_defaults_cover_catalog():
    config = ProverConfig()
    assert config.depth_limit == 20
    assert config.time_limit_ms == 5000
    assert config.rules["ByContradiction"].active is False
    assert config.rules["ImplGoal"] == RuleSetting(True, 4)


def test_config_rejects_unknown_rule_and_bad_limits():
    with pytest.raises(ConfigError):
        ProverConfig({"NoSuchRule": RuleSetting(True, 1)})
    with pytest.raises(ConfigError):
        ProverConfig(depth_limit=0)
    with pytest.raises(ConfigError):
        ProverConfig(time_limit_ms=0)
    with pytest.raises(ConfigError):
        ProverConfig({"ImplGoal": RuleSetting(True, 0)})


def test_config_json_round_trip():
    config = ProverConfig().with_rule("OrKB", priority=2).with_rule(
        "ByContradiction", active=True)
    again = ProverConfig.from_json(config.to_json())
    assert again == config
    partial = ProverConfig.from_json(
        {"rules": {"ImplGoal": {"active": False}}, "depth_limit": 7})
    assert partial.rules["ImplGoal"] == RuleSetting(False, 4)
    assert partial.depth_limit == 7
    assert partial.time_limit_ms == 5000


# ---------------------------------------------------------------------------
# prove on the pinned examples


def test_prove_identity():
    result = prove("P -> P")
    assert result.outcome == Outcome.PROVED
    tree = simplify(result.tree)
    steps = [alt.application.rule for _, alt in tree.applications()]
    assert steps == ["ImplGoal", "GoalInKB"]


def test_prove_bare_atom_fails():
    result = prove("P")
    assert result.outcome == Outcome.FAILED
    assert result.tree.root.status is Status.FAILED


def test_prove_ground_chaining():
    kb = kb_from("forall x. P(x) -> Q(x)", "P(a)")
    result = prove("Q(a)", kb)
    assert result.outcome == Outcome.PROVED


def test_prove_identity_without_impl_goal_fails():
    config = ProverConfig().with_rule("ImplGoal", active=False)
    result = prove("P -> P", config=config)
    assert result.outcome == Outcome.FAILED


def test_version_carried_through():
    assert prove("P -> P", version=3).version == 3


# ---------------------------------------------------------------------------
# Status propagation


def make_leaf_tree():
    """Root with one closing alternative and one never-expanded one."""
    root_situation = initial_situation(parse_formula("P"), kb_from("P"))
    root = SituationNode(0, root_situation)
    root.expanded = True
    apps = applicable_applications(root_situation)
    closing = ApplicationNode(1, apps[0], [])
    closing.expanded = True
    unexplored = ApplicationNode(2, apps[0], [])
    root.alternatives = [closing, unexplored]
    return ProofTree(root)


def test_propagate_closing_application_succeeds():
    tree = propagate_status(make_leaf_tree())
    assert tree.root.alternatives[0].status is Status.SUCCESS
    assert tree.root.status is Status.SUCCESS


def test_propagate_keeps_unexpanded_pending():
    tree = propagate_status(make_leaf_tree())
    assert tree.root.alternatives[1].status is Status.PENDING


def test_propagate_failed_child_fails_application():
    result = prove("P -> Q & R", kb_from("Q"))
    assert result.outcome == Outcome.FAILED
    tree = result.tree
    for node, alt in tree.applications():
        if alt.application.rule == "AndGoal":
            assert alt.status is Status.FAILED
            statuses = {child.status for child in alt.children}
            assert Status.FAILED in statuses


def test_propagate_is_idempotent():
    result = prove("(A -> B) & (B -> C) -> (A -> C)")
    tree = result.tree
    first = proof_tree_to_json(propagate_status(tree))
    second = proof_tree_to_json(propagate_status(tree))
    assert first == second


def test_no_open_status_in_final_trees():
    for goal in ("P -> P", "P", "A | !A", "A & B -> B & A"):
        result = prove(goal)
        for node in result.tree.situations():
            assert node.status is not Status.OPEN
            for alt in node.alternatives:
                assert alt.status is not Status.OPEN


# ---------------------------------------------------------------------------
# Simplification


def test_simplify_identity_tree():
    result = prove("P -> P")
    tree = simplify(result.tree)
    for node in tree.situations():
        assert node.status is Status.SUCCESS
        assert len(node.alternatives) == 1


def test_simplify_is_idempotent():
    result = prove("A | !A")
    once = simplify(result.tree)
    twice = simplify(once)
    assert proof_tree_to_json(once) == proof_tree_to_json(twice)


def test_simplify_requires_success():
    result = prove("P")
    with pytest.raises(NotProved):
        simplify(result.tree)


def test_simplify_rejects_unknown_option():
    result = prove("P -> P")
    with pytest.raises(ValueError):
        simplify(result.tree, {"prune_failures", "polish"})


def test_simplify_preserves_node_ids():
    result = prove("A | !A")
    raw_ids = {n.id for n in result.tree.situations()}
    kept = {n.id for n in simplify(result.tree).situations()}
    assert kept <= raw_ids


def test_elide_unused_assumptions():
    kb = kb_from("Q", "P")  # T.1 = Q unused, T.2 = P closes the goal
    result = prove("P", kb)
    assert result.outcome == Outcome.PROVED
    tree = simplify(result.tree, {"prune_failures", "elide_unused_assumptions"})
    assert tree.elided_labels == {"T.1"}


# ---------------------------------------------------------------------------
# Limits, interruption, determinism


def test_depth_limit_marks_pending():
    chain = [f"A{i} -> A{i + 1}" for i in range(8)]
    kb = kb_from("A0", *chain)
    config = ProverConfig(depth_limit=3)
    result = prove("A8", kb, config)
    assert result.outcome == Outcome.DEPTH_LIMIT
    assert result.tree.root.status is Status.PENDING
    assert any(n.status is Status.PENDING for n in result.tree.situations())
    relaxed = prove("A8", kb, ProverConfig(depth_limit=20))
    assert relaxed.outcome == Outcome.PROVED


def slow_problem():
    # every instantiation names a new witness, which feeds the next
    # instantiation: the pool grows forever
    kb = kb_from("forall x. exists y. R(x, y)", "P(a)")
    return "false", kb


def test_time_limit_yields_pending_nodes():
    goal, kb = slow_problem()
    config = ProverConfig(depth_limit=100000, time_limit_ms=150)
    result = prove(goal, kb, config)
    assert result.outcome == Outcome.TIME_LIMIT
    assert result.tree.root.status is not Status.SUCCESS
    assert any(n.status is Status.PENDING for n in result.tree.situations())


def test_cancellation_interrupts():
    goal, kb = slow_problem()
    calls = [0]

    def cancel():
        calls[0] += 1
        return calls[0] > 40

    config = ProverConfig(depth_limit=100000, time_limit_ms=60000)
    result = prove(goal, kb, config, cancel=cancel)
    assert result.outcome == Outcome.INTERRUPTED
    assert result.tree.root.status is not Status.SUCCESS


def test_first_success_no_success_right_of_success():
    for goal in ("A | !A", "P -> P", "(A | B) & !A -> B"):
        result = prove(goal)
        assert result.outcome == Outcome.PROVED
        for node in result.tree.situations():
            seen_success = False
            for alt in node.alternatives:
                if seen_success:
                    assert alt.status in (Status.PENDING, Status.FAILED)
                    assert not alt.expanded
                if alt.status is Status.SUCCESS:
                    seen_success = True


def test_determinism_byte_identical():
    kb = kb_from("forall x. P(x) -> Q(x)", "P(a) | Q(a)")
    for goal in ("Q(a)", "exists x. Q(x)"):
        first = json.dumps(proof_tree_to_json(prove(goal, kb).tree), sort_keys=True)
        second = json.dumps(proof_tree_to_json(prove(goal, kb).tree), sort_keys=True)
        assert first == second


def test_priority_change_changes_the_proof():
    base = bc_config()
    eager = ProverConfig(
        dict(base.rules) | {"ByContradiction": RuleSetting(True, 1)},
        base.depth_limit, base.time_limit_ms)
    tree_a = simplify(prove("P -> P", config=base).tree)
    tree_b = simplify(prove("P -> P", config=eager).tree)
    rules_a = [alt.application.rule for _, alt in tree_a.applications()]
    rules_b = [alt.application.rule for _, alt in tree_b.applications()]
    assert rules_a != rules_b
    assert rules_a[0] == "ImplGoal"
    assert rules_b[0] == "ByContradiction"


# ---------------------------------------------------------------------------
# Soundness and oracle agreement (sampled here, exhaustive in acceptance)


def every_application_checks(tree):
    for node, alt in tree.applications():
        result = check_step(node.situation, alt.application)
        assert result.ok, (alt.application.rule, result.reason)


def test_returned_trees_pass_the_checker():
    kb = kb_from("forall x. P(x) -> Q(x)", "P(a) | Q(a)")
    for goal in ("Q(a)", "exists x. Q(x)", "P -> P"):
        every_application_checks(prove(goal, kb).tree)


def random_formula(rng, depth):
    atoms = [Atom("P"), Atom("Q"), Atom("R")]
    if depth == 0 or rng.random() < 0.3:
        return rng.choice(atoms)
    kind = rng.choice([Not, And, Or, Implies, Iff])
    if kind is Not:
        return Not(random_formula(rng, depth - 1))
    return kind(random_formula(rng, depth - 1), random_formula(rng, depth - 1))


def test_oracle_agreement_sampled():
    rng = random.Random(2024)
    config = bc_config()
    for _ in range(300):
        f = random_formula(rng, 3)
        expected = is_tautology(f)
        result = prove(f, config=config)
        assert (result.outcome == Outcome.PROVED) == expected, f
        every_application_checks(result.tree)


def test_monotonicity_sampled():
    config = ProverConfig()
    richer = bc_config(depth=40, time_ms=10000)
    kb = kb_from("forall x. P(x) -> Q(x)", "P(a)")
    for goal in ("Q(a)", "P -> P", "A & B -> B & A", "exists x. Q(x)"):
        base = prove(goal, kb, config)
        if base.outcome == Outcome.PROVED:
            assert prove(goal, kb, richer).outcome == Outcome.PROVED


# ---------------------------------------------------------------------------
# Serialization


def test_tree_serialization_round_trip():
    result = prove("A | !A", kb_from("Q"))
    data = proof_tree_to_json(result.tree)
    again = proof_tree_from_json(data)
    assert proof_tree_to_json(again) == data


def test_result_serialization_round_trip():
    result = prove("P -> P")
    data = proof_result_to_json(result)
    again = proof_result_from_json(data)
    assert proof_result_to_json(again) == data
    assert again.outcome == Outcome.PROVED
    assert again.version == 1
