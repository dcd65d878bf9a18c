"""Proof situations and the catalog of natural-style inference rules.

A proof situation is a closed goal formula, an ordered list of labeled
closed assumptions, and the set of constants in scope.  Each inference
rule turns a situation into zero or more child situations; zero
children closes the branch.  ``applicable_applications`` enumerates
every way an active rule can fire on a situation, in a deterministic
order driven by rule priorities.

Assumption labels are consecutive integers allocated per proof;
formulas imported from a knowledge base keep their display label
("T.1").  A rule never adds an assumption alpha-equal to an existing
one, and a rule without a new effect is not applicable, which keeps
every search branch finitely progressing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from .documents import KnowledgeBase
from .formulas import (
    And, Atom, Bottom, BOTTOM, Constant, Exists, Forall, Formula, Iff, Implies,
    Not, Or, Term, Top, alpha_eq, bound_names, constants_of, free_vars,
    fresh_constant, function_arities, ground_subterms, render_formula,
    render_term, substitute,
)

__all__ = [
    "Assumption", "ProofSituation", "RuleDescriptor", "RuleApplication",
    "InvalidApplication", "rule_catalog", "rule_by_id",
    "applicable_applications", "apply_application", "initial_situation",
    "situation_pool", "fresh_for_situation", "GOAL_RULES", "KB_RULES",
    "CLOSING_RULES",
]


class Assumption(NamedTuple):
    label: str
    formula: Formula


@dataclass(frozen=True)
class ProofSituation:
    goal: Formula
    assumptions: tuple[Assumption, ...] = ()
    signature: frozenset[str] = frozenset()

    def find(self, label: str) -> Formula:
        for current, formula in self.assumptions:
            if current == label:
                return formula
        raise KeyError(label)

    def has_alpha(self, f: Formula) -> Optional[str]:
        """The label of an assumption alpha-equal to ``f``, if any."""
        for label, formula in self.assumptions:
            if alpha_eq(formula, f):
                return label
        return None


@dataclass(frozen=True)
class RuleDescriptor:
    id: str
    display_name: str
    default_priority: int
    default_active: bool
    kind: str  # "goal-rule" | "kb-rule" | "closing-rule"


@dataclass(frozen=True)
class RuleApplication:
    rule: str
    focus: tuple[str, ...]  # assumption labels; empty = the goal
    bindings: tuple[tuple[str, str], ...]
    children: tuple[ProofSituation, ...]
    description_key: str

    def binding(self, key: str, default: str = "") -> str:
        for k, v in self.bindings:
            if k == key:
                return v
        return default


class InvalidApplication(Exception):
    pass


# ---------------------------------------------------------------------------
# Catalog
#
# Priorities follow the intended hand-proof order: close when possible,
# decompose the goal, then use the knowledge base, and only then fall
# back to case analysis and indirect proof.  ByContradiction starts
# inactive so that switching it on demonstrates how extra rules open up
# otherwise unprovable goals.

CATALOG = (
    RuleDescriptor("GoalTrue", "Goal is true", 1, True, "closing-rule"),
    RuleDescriptor("ContradictionInKB", "Contradictory knowledge", 1, True, "closing-rule"),
    RuleDescriptor("GoalInKB", "Goal already known", 2, True, "closing-rule"),
    RuleDescriptor("AndGoal", "Prove conjunction", 3, True, "goal-rule"),
    RuleDescriptor("ImplGoal", "Assume and show", 4, True, "goal-rule"),
    RuleDescriptor("IffGoal", "Prove both directions", 5, True, "goal-rule"),
    RuleDescriptor("NotGoal", "Indirect negation", 6, True, "goal-rule"),
    RuleDescriptor("ForallGoal", "Arbitrary but fixed", 7, True, "goal-rule"),
    RuleDescriptor("AndKB", "Split known conjunction", 8, True, "kb-rule"),
    RuleDescriptor("IffKB", "Split known equivalence", 8, True, "kb-rule"),
    RuleDescriptor("ExistsKB", "Name a witness", 9, True, "kb-rule"),
    RuleDescriptor("ModusPonensKB", "Modus ponens", 10, True, "kb-rule"),
    RuleDescriptor("OrKB", "Case distinction", 11, True, "kb-rule"),
    RuleDescriptor("NotKB", "Use negated knowledge", 11, True, "kb-rule"),
    RuleDescriptor("OrGoal", "Prove disjunction", 12, True, "goal-rule"),
    RuleDescriptor("ExistsGoal", "Provide a witness", 13, True, "goal-rule"),
    RuleDescriptor("ForallKB", "Instantiate", 14, True, "kb-rule"),
    RuleDescriptor("ImpliesKB", "Implication cases", 14, True, "kb-rule"),
    RuleDescriptor("ByContradiction", "Proof by contradiction", 15, False, "goal-rule"),
)

_BY_ID = {rule.id: rule for rule in CATALOG}
_INDEX = {rule.id: i for i, rule in enumerate(CATALOG)}

GOAL_RULES = tuple(r.id for r in CATALOG if r.kind == "goal-rule")
KB_RULES = tuple(r.id for r in CATALOG if r.kind == "kb-rule")
CLOSING_RULES = tuple(r.id for r in CATALOG if r.kind == "closing-rule")


def rule_catalog() -> list[RuleDescriptor]:
    """The fixed rule catalog in default-priority order."""
    return list(CATALOG)


def rule_by_id(rule_id: str) -> RuleDescriptor:
    try:
        return _BY_ID[rule_id]
    except KeyError:
        raise KeyError(f"unknown rule id {rule_id!r}") from None


# ---------------------------------------------------------------------------
# Helpers shared by the rule implementations


def initial_situation(goal: Formula, kb: KnowledgeBase = KnowledgeBase()) -> ProofSituation:
    """The root situation for proving ``goal`` from a knowledge base."""
    if free_vars(goal):
        raise ValueError(f"goal must be closed, found free {sorted(free_vars(goal))}")
    assumptions = tuple(Assumption(e.display_label, e.formula) for e in kb)
    signature = constants_of(goal)
    for _, f in assumptions:
        signature |= constants_of(f)
    return ProofSituation(goal, assumptions, frozenset(signature))


def situation_pool(s: ProofSituation) -> list[Term]:
    """Ground terms available for instantiation, first occurrence first."""
    return ground_subterms([s.goal] + [f for _, f in s.assumptions])


def fresh_for_situation(s: ProofSituation, hint: str) -> str:
    """A constant name unused anywhere in the situation.

    Bound-variable and function names are avoided too, so that rendered
    child formulas still reparse to the same tree.
    """
    taken = set(s.signature)
    for f in [s.goal] + [a.formula for a in s.assumptions]:
        taken |= bound_names(f)
        taken |= set(function_arities(f))
    return fresh_constant(taken, hint)


def _next_labels(s: ProofSituation, count: int) -> list[str]:
    highest = 0
    for label, _ in s.assumptions:
        if label.isdigit():
            highest = max(highest, int(label))
    return [str(highest + 1 + k) for k in range(count)]


def _extend(s: ProofSituation, formulas: Sequence[Formula],
            goal: Optional[Formula] = None,
            signature: Optional[frozenset[str]] = None
            ) -> tuple[ProofSituation, list[str], bool]:
    """Add the given assumptions (skipping alpha-duplicates).

    Returns the child situation, the label each formula ended up under,
    and whether anything new was added.
    """
    assumptions = list(s.assumptions)
    labels = []
    added = False
    fresh = iter(_next_labels(s, len(formulas)))
    for f in formulas:
        existing = None
        for label, known in assumptions:
            if alpha_eq(known, f):
                existing = label
                break
        if existing is None:
            label = next(fresh)
            assumptions.append(Assumption(label, f))
            added = True
        else:
            label = existing
        labels.append(label)
    child = ProofSituation(goal if goal is not None else s.goal,
                           tuple(assumptions),
                           signature if signature is not None else s.signature)
    return child, labels, added


def _same_goal_child(s: ProofSituation, formulas: Sequence[Formula]):
    return _extend(s, formulas)


def _render_pairs(**kwargs: str) -> tuple[tuple[str, str], ...]:
    return tuple(kwargs.items())


# ---------------------------------------------------------------------------
# Rule implementations.  Each returns [(subkey, RuleApplication)].

Apps = list


def _gen_goal_true(s: ProofSituation) -> Apps:
    if isinstance(s.goal, Top):
        return [((), RuleApplication("GoalTrue", (), (), (), "goal_true"))]
    return []


def _gen_contradiction_in_kb(s: ProofSituation) -> Apps:
    apps = []
    for i, (label, f) in enumerate(s.assumptions):
        if isinstance(f, Bottom):
            apps.append(((0, i, 0), RuleApplication(
                "ContradictionInKB", (label,),
                _render_pairs(label=label), (), "contradiction_bottom")))
    for j, (neg_label, neg) in enumerate(s.assumptions):
        if not isinstance(neg, Not):
            continue
        for i, (pos_label, pos) in enumerate(s.assumptions):
            if i != j and alpha_eq(pos, neg.body):
                apps.append(((1, j, i), RuleApplication(
                    "ContradictionInKB", (pos_label, neg_label),
                    _render_pairs(positive=pos_label, negative=neg_label),
                    (), "contradiction_pair")))
    return apps


def _gen_goal_in_kb(s: ProofSituation) -> Apps:
    apps = []
    for i, (label, f) in enumerate(s.assumptions):
        if alpha_eq(f, s.goal):
            apps.append(((i,), RuleApplication(
                "GoalInKB", (label,), _render_pairs(label=label), (), "goal_in_kb")))
    return apps


def _gen_and_goal(s: ProofSituation) -> Apps:
    if not isinstance(s.goal, And):
        return []
    left = ProofSituation(s.goal.left, s.assumptions, s.signature)
    right = ProofSituation(s.goal.right, s.assumptions, s.signature)
    return [((), RuleApplication(
        "AndGoal", (),
        _render_pairs(left=render_formula(s.goal.left),
                      right=render_formula(s.goal.right)),
        (left, right), "and_goal"))]


def _gen_impl_goal(s: ProofSituation) -> Apps:
    if not isinstance(s.goal, Implies):
        return []
    child, labels, _ = _extend(s, [s.goal.left], goal=s.goal.right)
    return [((), RuleApplication(
        "ImplGoal", (),
        _render_pairs(assumption=render_formula(s.goal.left),
                      assumption_label=labels[0],
                      show=render_formula(s.goal.right)),
        (child,), "impl_goal"))]


def _gen_iff_goal(s: ProofSituation) -> Apps:
    if not isinstance(s.goal, Iff):
        return []
    fwd = ProofSituation(Implies(s.goal.left, s.goal.right), s.assumptions, s.signature)
    bwd = ProofSituation(Implies(s.goal.right, s.goal.left), s.assumptions, s.signature)
    return [((), RuleApplication(
        "IffGoal", (),
        _render_pairs(left=render_formula(s.goal.left),
                      right=render_formula(s.goal.right)),
        (fwd, bwd), "iff_goal"))]


def _gen_not_goal(s: ProofSituation) -> Apps:
    if not isinstance(s.goal, Not):
        return []
    child, labels, _ = _extend(s, [s.goal.body], goal=BOTTOM)
    return [((), RuleApplication(
        "NotGoal", (),
        _render_pairs(assumption=render_formula(s.goal.body),
                      assumption_label=labels[0]),
        (child,), "not_goal"))]


def _gen_forall_goal(s: ProofSituation) -> Apps:
    if not isinstance(s.goal, Forall):
        return []
    name = fresh_for_situation(s, s.goal.var)
    instance = substitute(s.goal.body, s.goal.var, Constant(name))
    child = ProofSituation(instance, s.assumptions, s.signature | {name})
    return [((), RuleApplication(
        "ForallGoal", (),
        _render_pairs(var=s.goal.var, constant=name,
                      instance=render_formula(instance)),
        (child,), "forall_goal"))]


def _gen_and_kb(s: ProofSituation) -> Apps:
    apps = []
    for i, (label, f) in enumerate(s.assumptions):
        if not isinstance(f, And):
            continue
        others = [a for a in s.assumptions if a.label != label]
        parts = []
        for part in (f.left, f.right):
            if any(alpha_eq(known, part) for _, known in others):
                continue
            if any(alpha_eq(part, p) for p in parts):
                continue
            parts.append(part)
        if not parts:
            continue
        labels = _next_labels(s, len(parts))
        assumptions = []
        for current in s.assumptions:
            if current.label == label:
                assumptions.extend(Assumption(l, p) for l, p in zip(labels, parts))
            else:
                assumptions.append(current)
        child = ProofSituation(s.goal, tuple(assumptions), s.signature)
        apps.append(((i,), RuleApplication(
            "AndKB", (label,),
            _render_pairs(label=label, added=", ".join(labels)),
            (child,), "and_kb")))
    return apps


def _gen_iff_kb(s: ProofSituation) -> Apps:
    apps = []
    for i, (label, f) in enumerate(s.assumptions):
        if not isinstance(f, Iff):
            continue
        others = [a for a in s.assumptions if a.label != label]
        parts = []
        for part in (Implies(f.left, f.right), Implies(f.right, f.left)):
            if any(alpha_eq(known, part) for _, known in others):
                continue
            if any(alpha_eq(part, p) for p in parts):
                continue
            parts.append(part)
        if not parts:
            continue
        labels = _next_labels(s, len(parts))
        assumptions = []
        for current in s.assumptions:
            if current.label == label:
                assumptions.extend(Assumption(l, p) for l, p in zip(labels, parts))
            else:
                assumptions.append(current)
        child = ProofSituation(s.goal, tuple(assumptions), s.signature)
        apps.append(((i,), RuleApplication(
            "IffKB", (label,),
            _render_pairs(label=label, added=", ".join(labels)),
            (child,), "iff_kb")))
    return apps


def _gen_exists_kb(s: ProofSituation) -> Apps:
    apps = []
    for i, (label, f) in enumerate(s.assumptions):
        if not isinstance(f, Exists):
            continue
        if _exists_already_used(s, f):
            continue
        name = fresh_for_situation(s, f.var)
        instance = substitute(f.body, f.var, Constant(name))
        child, labels, _ = _extend(s, [instance], signature=s.signature | {name})
        apps.append(((i,), RuleApplication(
            "ExistsKB", (label,),
            _render_pairs(label=label, var=f.var, constant=name,
                          instance_label=labels[0],
                          instance=render_formula(instance)),
            (child,), "exists_kb")))
    return apps


def _exists_already_used(s: ProofSituation, f: Exists) -> bool:
    if f.var not in free_vars(f.body):
        return s.has_alpha(f.body) is not None
    for name in s.signature:
        if s.has_alpha(substitute(f.body, f.var, Constant(name))) is not None:
            return True
    return False


def _gen_modus_ponens(s: ProofSituation) -> Apps:
    apps = []
    for j, (impl_label, f) in enumerate(s.assumptions):
        if not isinstance(f, Implies):
            continue
        if s.has_alpha(f.right) is not None:
            continue
        for i, (ante_label, known) in enumerate(s.assumptions):
            if alpha_eq(known, f.left):
                child, labels, _ = _extend(s, [f.right])
                apps.append(((j, i), RuleApplication(
                    "ModusPonensKB", (impl_label, ante_label),
                    _render_pairs(implication=impl_label, antecedent=ante_label,
                                  conclusion=render_formula(f.right),
                                  conclusion_label=labels[0]),
                    (child,), "modus_ponens")))
                break
    return apps


def _gen_or_kb(s: ProofSituation) -> Apps:
    apps = []
    for i, (label, f) in enumerate(s.assumptions):
        if not isinstance(f, Or):
            continue
        if s.has_alpha(f.left) is not None or s.has_alpha(f.right) is not None:
            continue
        left, left_labels, _ = _extend(s, [f.left])
        right, right_labels, _ = _extend(s, [f.right])
        apps.append(((i,), RuleApplication(
            "OrKB", (label,),
            _render_pairs(label=label, left_label=left_labels[0],
                          right_label=right_labels[0]),
            (left, right), "or_kb")))
    return apps


def _gen_not_kb(s: ProofSituation) -> Apps:
    apps = []
    for i, (label, f) in enumerate(s.assumptions):
        if not isinstance(f, Not):
            continue
        inner = f.body
        if isinstance(inner, Not):
            app = _not_kb_additions(s, label, [inner.body], "not_kb.not_not")
        elif isinstance(inner, Or):
            app = _not_kb_additions(
                s, label, [Not(inner.left), Not(inner.right)], "not_kb.not_or")
        elif isinstance(inner, Implies):
            app = _not_kb_additions(
                s, label, [inner.left, Not(inner.right)], "not_kb.not_implies")
        elif isinstance(inner, Top):
            app = _not_kb_additions(s, label, [BOTTOM], "not_kb.not_top")
        elif isinstance(inner, Forall):
            app = _not_kb_additions(
                s, label, [Exists(inner.var, Not(inner.body))], "not_kb.not_forall")
        elif isinstance(inner, Exists):
            app = _not_kb_additions(
                s, label, [Forall(inner.var, Not(inner.body))], "not_kb.not_exists")
        elif isinstance(inner, And):
            app = _not_kb_cases(
                s, label, [[Not(inner.left)], [Not(inner.right)]], "not_kb.not_and")
        elif isinstance(inner, Iff):
            app = _not_kb_cases(
                s, label,
                [[inner.left, Not(inner.right)], [Not(inner.left), inner.right]],
                "not_kb.not_iff")
        else:
            app = None
        if app is not None:
            apps.append(((i,), app))
    return apps


def _not_kb_additions(s, label, formulas, key) -> Optional[RuleApplication]:
    news = [f for f in formulas if s.has_alpha(f) is None]
    deduped = []
    for f in news:
        if not any(alpha_eq(f, g) for g in deduped):
            deduped.append(f)
    if not deduped:
        return None
    child, labels, _ = _extend(s, deduped)
    return RuleApplication(
        "NotKB", (label,),
        _render_pairs(label=label, added=", ".join(labels)),
        (child,), key)


def _not_kb_cases(s, label, cases, key) -> Optional[RuleApplication]:
    children = []
    for case in cases:
        child, _, added = _extend(s, case)
        if not added:
            return None
        children.append(child)
    return RuleApplication(
        "NotKB", (label,), _render_pairs(label=label), tuple(children), key)


def _gen_or_goal(s: ProofSituation) -> Apps:
    if not isinstance(s.goal, Or):
        return []
    left_text = render_formula(s.goal.left)
    right_text = render_formula(s.goal.right)
    show_left = ProofSituation(s.goal.left, s.assumptions, s.signature)
    show_right = ProofSituation(s.goal.right, s.assumptions, s.signature)
    negated, labels, _ = _extend(s, [Not(s.goal.left)], goal=s.goal.right)
    return [
        ((0,), RuleApplication(
            "OrGoal", (), _render_pairs(side=left_text),
            (show_left,), "or_goal.left")),
        ((1,), RuleApplication(
            "OrGoal", (), _render_pairs(side=right_text),
            (show_right,), "or_goal.right")),
        ((2,), RuleApplication(
            "OrGoal", (),
            _render_pairs(assumption=render_formula(Not(s.goal.left)),
                          assumption_label=labels[0], show=right_text),
            (negated,), "or_goal.negated")),
    ]


def _gen_exists_goal(s: ProofSituation) -> Apps:
    if not isinstance(s.goal, Exists):
        return []
    apps = []
    seen_instances: list[Formula] = []
    pool = situation_pool(s)
    for k, term in enumerate(pool):
        instance = substitute(s.goal.body, s.goal.var, term)
        if any(alpha_eq(instance, other) for other in seen_instances):
            continue
        seen_instances.append(instance)
        child = ProofSituation(instance, s.assumptions, s.signature)
        apps.append(((k,), RuleApplication(
            "ExistsGoal", (),
            _render_pairs(var=s.goal.var, term=render_term(term),
                          instance=render_formula(instance)),
            (child,), "exists_goal.witness")))
    if not pool:
        name = fresh_for_situation(s, s.goal.var)
        instance = substitute(s.goal.body, s.goal.var, Constant(name))
        child = ProofSituation(instance, s.assumptions, s.signature | {name})
        apps.append(((0,), RuleApplication(
            "ExistsGoal", (),
            _render_pairs(var=s.goal.var, constant=name,
                          instance=render_formula(instance)),
            (child,), "exists_goal.fresh")))
    return apps


def _gen_forall_kb(s: ProofSituation) -> Apps:
    apps = []
    pool = situation_pool(s)
    for i, (label, f) in enumerate(s.assumptions):
        if not isinstance(f, Forall):
            continue
        seen_instances: list[Formula] = []
        for k, term in enumerate(pool):
            instance = substitute(f.body, f.var, term)
            if s.has_alpha(instance) is not None:
                continue
            if any(alpha_eq(instance, other) for other in seen_instances):
                continue
            seen_instances.append(instance)
            child, labels, _ = _extend(s, [instance])
            apps.append(((i, k), RuleApplication(
                "ForallKB", (label,),
                _render_pairs(label=label, var=f.var, term=render_term(term),
                              instance=render_formula(instance),
                              instance_label=labels[0]),
                (child,), "forall_kb")))
    return apps


def _gen_implies_kb(s: ProofSituation) -> Apps:
    apps = []
    for i, (label, f) in enumerate(s.assumptions):
        if not isinstance(f, Implies):
            continue
        negated = Not(f.left)
        if s.has_alpha(negated) is not None or s.has_alpha(f.right) is not None:
            continue
        left, left_labels, _ = _extend(s, [negated])
        right, right_labels, _ = _extend(s, [f.right])
        apps.append(((i,), RuleApplication(
            "ImpliesKB", (label,),
            _render_pairs(label=label, negated_label=left_labels[0],
                          consequent_label=right_labels[0]),
            (left, right), "implies_kb")))
    return apps


def _gen_by_contradiction(s: ProofSituation) -> Apps:
    if isinstance(s.goal, Bottom):
        return []
    negated = Not(s.goal)
    child, labels, _ = _extend(s, [negated], goal=BOTTOM)
    return [((), RuleApplication(
        "ByContradiction", (),
        _render_pairs(assumption=render_formula(negated),
                      assumption_label=labels[0]),
        (child,), "by_contradiction"))]


_GENERATORS = {
    "GoalTrue": _gen_goal_true,
    "ContradictionInKB": _gen_contradiction_in_kb,
    "GoalInKB": _gen_goal_in_kb,
    "AndGoal": _gen_and_goal,
    "ImplGoal": _gen_impl_goal,
    "IffGoal": _gen_iff_goal,
    "NotGoal": _gen_not_goal,
    "ForallGoal": _gen_forall_goal,
    "AndKB": _gen_and_kb,
    "IffKB": _gen_iff_kb,
    "ExistsKB": _gen_exists_kb,
    "ModusPonensKB": _gen_modus_ponens,
    "OrKB": _gen_or_kb,
    "NotKB": _gen_not_kb,
    "OrGoal": _gen_or_goal,
    "ExistsGoal": _gen_exists_goal,
    "ForallKB": _gen_forall_kb,
    "ImpliesKB": _gen_implies_kb,
    "ByContradiction": _gen_by_contradiction,
}


def applicable_applications(s: ProofSituation, config=None) -> list[RuleApplication]:
    """Every application of an active rule, highest priority first.

    Ties are broken by catalog order, then by the rule's own
    deterministic enumeration (assumption order, then term-pool order).
    ``config`` is a :class:`prooftutor.search.ProverConfig`; ``None``
    means catalog defaults.
    """
    ranked = []
    for index, rule in enumerate(CATALOG):
        if config is None:
            active, priority = rule.default_active, rule.default_priority
        else:
            setting = config.rules[rule.id]
            active, priority = setting.active, setting.priority
        if not active:
            continue
        for subkey, app in _GENERATORS[rule.id](s):
            ranked.append(((priority, index, subkey), app))
    ranked.sort(key=lambda pair: pair[0])
    return [app for _, app in ranked]


def apply_application(s: ProofSituation, app: RuleApplication) -> list[ProofSituation]:
    """The child situations of ``app``, after validating it against ``s``."""
    from .checker import check_step

    result = check_step(s, app)
    if not result.ok:
        raise InvalidApplication(result.reason)
    return list(app.children)
