"""Independent validation of single proof steps.

``check_step`` re-derives what a rule application must look like from
the rule definitions alone and compares that against the application's
recorded children.  It shares only the formula primitives with the
search machinery, so it can serve as a soundness oracle for trees the
engine produces: formulas are compared up to alpha-equivalence and
label bookkeeping is only checked for consistency, never trusted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .formulas import (
    And, Bottom, BOTTOM, Constant, Exists, Forall, Formula, Iff, Implies, Not,
    Or, Top, alpha_eq, constants_of, free_vars, parse_term, render_term,
    substitute,
)
from .rules import (
    ProofSituation, RuleApplication, rule_by_id, situation_pool,
)

__all__ = ["StepCheck", "check_step"]


@dataclass(frozen=True)
class StepCheck:
    ok: bool
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def _valid() -> StepCheck:
    return StepCheck(True)


def _invalid(reason: str) -> StepCheck:
    return StepCheck(False, reason)


def check_step(s: ProofSituation, app: RuleApplication) -> StepCheck:
    """Valid iff ``app`` is a legitimate instance of its rule at ``s``."""
    try:
        rule_by_id(app.rule)
    except KeyError:
        return _invalid(f"unknown rule {app.rule!r}")
    for label in app.focus:
        try:
            s.find(label)
        except KeyError:
            return _invalid(f"focus label {label!r} not among assumptions")
    for child in app.children:
        problem = _situation_problem(child)
        if problem:
            return _invalid(problem)
    checker = _CHECKERS.get(app.rule)
    if checker is None:
        return _invalid(f"no checker for rule {app.rule!r}")
    return checker(s, app)


def _situation_problem(child: ProofSituation) -> Optional[str]:
    labels = [label for label, _ in child.assumptions]
    if len(labels) != len(set(labels)):
        return "duplicate assumption labels in child situation"
    if free_vars(child.goal):
        return "child goal is not closed"
    for label, f in child.assumptions:
        if free_vars(f):
            return f"assumption {label!r} is not closed"
    mentioned = constants_of(child.goal)
    for _, f in child.assumptions:
        mentioned |= constants_of(f)
    if not mentioned <= child.signature:
        return "child signature misses occurring constants"
    return None


# ---------------------------------------------------------------------------
# Comparison helpers


def _formulas(s: ProofSituation) -> list[Formula]:
    return [f for _, f in s.assumptions]


def _alpha_in(f: Formula, fs: Sequence[Formula]) -> bool:
    return any(alpha_eq(f, g) for g in fs)


def _seq_alpha_eq(xs: Sequence[Formula], ys: Sequence[Formula]) -> bool:
    return len(xs) == len(ys) and all(alpha_eq(x, y) for x, y in zip(xs, ys))


def _expected_additions(s: ProofSituation, adds: Sequence[Formula]) -> list[Formula]:
    """What a deduplicating extension of ``s`` must append, in order."""
    result: list[Formula] = []
    known = _formulas(s)
    for f in adds:
        if _alpha_in(f, known) or _alpha_in(f, result):
            continue
        result.append(f)
    return result


def _check_extension(s: ProofSituation, child: ProofSituation,
                     adds: Sequence[Formula], goal: Formula,
                     signature: frozenset) -> Optional[str]:
    if not alpha_eq(child.goal, goal):
        return "child goal differs from the rule's prescription"
    if child.signature != signature:
        return "child signature differs from the rule's prescription"
    base = _formulas(s)
    got = _formulas(child)
    if not _seq_alpha_eq(got[:len(base)], base):
        return "child does not preserve the existing assumptions"
    expected = _expected_additions(s, adds)
    if not _seq_alpha_eq(got[len(base):], expected):
        return "child assumptions differ from the rule's prescription"
    return None


def _check_single_extension(s, app, adds, goal=None, signature=None,
                            ) -> StepCheck:
    if len(app.children) != 1:
        return _invalid("rule must produce exactly one child")
    problem = _check_extension(
        s, app.children[0], adds,
        s.goal if goal is None else goal,
        s.signature if signature is None else signature)
    return _invalid(problem) if problem else _valid()


def _check_same_assumptions(s, child, goal) -> Optional[str]:
    if not alpha_eq(child.goal, goal):
        return "child goal differs from the rule's prescription"
    if child.signature != s.signature:
        return "child signature differs"
    if not _seq_alpha_eq(_formulas(child), _formulas(s)):
        return "child assumptions differ"
    return None


def _fresh_problem(s: ProofSituation, name: str) -> Optional[str]:
    if name in s.signature:
        return "constant not fresh"
    occurring = constants_of(s.goal)
    for _, f in s.assumptions:
        occurring |= constants_of(f)
    if name in occurring:
        return "constant not fresh"
    return None


# ---------------------------------------------------------------------------
# Per-rule checks


def _check_goal_true(s, app):
    if not isinstance(s.goal, Top):
        return _invalid("goal is not true")
    if app.children:
        return _invalid("closing rule must not have children")
    return _valid()


def _check_contradiction(s, app):
    if app.children:
        return _invalid("closing rule must not have children")
    if len(app.focus) == 1:
        if isinstance(s.find(app.focus[0]), Bottom):
            return _valid()
        return _invalid("focused assumption is not falsity")
    if len(app.focus) == 2:
        positive = s.find(app.focus[0])
        negative = s.find(app.focus[1])
        if isinstance(negative, Not) and alpha_eq(negative.body, positive):
            return _valid()
        return _invalid("focused assumptions are not contradictory")
    return _invalid("contradiction needs one or two focused assumptions")


def _check_goal_in_kb(s, app):
    if app.children:
        return _invalid("closing rule must not have children")
    if len(app.focus) != 1:
        return _invalid("exactly one focused assumption required")
    if alpha_eq(s.find(app.focus[0]), s.goal):
        return _valid()
    return _invalid("goal not among assumptions")


def _check_and_goal(s, app):
    if not isinstance(s.goal, And):
        return _invalid("goal is not a conjunction")
    if len(app.children) != 2:
        return _invalid("conjunction splits into two children")
    for child, part in zip(app.children, (s.goal.left, s.goal.right)):
        problem = _check_same_assumptions(s, child, part)
        if problem:
            return _invalid(problem)
    return _valid()


def _check_impl_goal(s, app):
    if not isinstance(s.goal, Implies):
        return _invalid("goal is not an implication")
    return _check_single_extension(s, app, [s.goal.left], goal=s.goal.right)


def _check_iff_goal(s, app):
    if not isinstance(s.goal, Iff):
        return _invalid("goal is not a biconditional")
    if len(app.children) != 2:
        return _invalid("biconditional splits into two children")
    directions = (Implies(s.goal.left, s.goal.right),
                  Implies(s.goal.right, s.goal.left))
    for child, direction in zip(app.children, directions):
        problem = _check_same_assumptions(s, child, direction)
        if problem:
            return _invalid(problem)
    return _valid()


def _check_not_goal(s, app):
    if not isinstance(s.goal, Not):
        return _invalid("goal is not a negation")
    return _check_single_extension(s, app, [s.goal.body], goal=BOTTOM)


def _check_forall_goal(s, app):
    if not isinstance(s.goal, Forall):
        return _invalid("goal is not universally quantified")
    name = app.binding("constant")
    if not name:
        return _invalid("missing introduced constant")
    problem = _fresh_problem(s, name)
    if problem:
        return _invalid(problem)
    instance = substitute(s.goal.body, s.goal.var, Constant(name))
    if len(app.children) != 1:
        return _invalid("rule must produce exactly one child")
    child = app.children[0]
    if not alpha_eq(child.goal, instance):
        return _invalid("child goal is not the prescribed instance")
    if child.signature != s.signature | {name}:
        return _invalid("child signature must gain exactly the new constant")
    if not _seq_alpha_eq(_formulas(child), _formulas(s)):
        return _invalid("child assumptions differ")
    return _valid()


def _replacement_check(s, app, parts_of) -> StepCheck:
    label = app.focus[0]
    focused = s.find(label)
    parts = parts_of(focused)
    if parts is None:
        return _invalid("focused assumption has the wrong shape")
    others = [f for l, f in s.assumptions if l != label]
    expected_parts = []
    for part in parts:
        if _alpha_in(part, others) or _alpha_in(part, expected_parts):
            continue
        expected_parts.append(part)
    if not expected_parts:
        return _invalid("rule would have no new effect")
    expected = []
    for l, f in s.assumptions:
        if l == label:
            expected.extend(expected_parts)
        else:
            expected.append(f)
    if len(app.children) != 1:
        return _invalid("rule must produce exactly one child")
    child = app.children[0]
    if not alpha_eq(child.goal, s.goal) or child.signature != s.signature:
        return _invalid("in-place split must keep goal and signature")
    if not _seq_alpha_eq(_formulas(child), expected):
        return _invalid("child assumptions differ from the in-place split")
    return _valid()


def _check_and_kb(s, app):
    return _replacement_check(
        s, app, lambda f: (f.left, f.right) if isinstance(f, And) else None)


def _check_iff_kb(s, app):
    return _replacement_check(
        s, app,
        lambda f: (Implies(f.left, f.right), Implies(f.right, f.left))
        if isinstance(f, Iff) else None)


def _check_exists_kb(s, app):
    focused = s.find(app.focus[0])
    if not isinstance(focused, Exists):
        return _invalid("focused assumption is not existential")
    if focused.var not in free_vars(focused.body):
        if _alpha_in(focused.body, _formulas(s)):
            return _invalid("existential already used")
    else:
        for name in s.signature:
            witness = substitute(focused.body, focused.var, Constant(name))
            if _alpha_in(witness, _formulas(s)):
                return _invalid("existential already used")
    name = app.binding("constant")
    if not name:
        return _invalid("missing introduced constant")
    problem = _fresh_problem(s, name)
    if problem:
        return _invalid(problem)
    instance = substitute(focused.body, focused.var, Constant(name))
    return _check_single_extension(
        s, app, [instance], signature=s.signature | {name})


def _check_modus_ponens(s, app):
    if len(app.focus) != 2:
        return _invalid("modus ponens focuses an implication and its antecedent")
    implication = s.find(app.focus[0])
    antecedent = s.find(app.focus[1])
    if not isinstance(implication, Implies):
        return _invalid("first focus is not an implication")
    if not alpha_eq(antecedent, implication.left):
        return _invalid("second focus does not match the antecedent")
    if _alpha_in(implication.right, _formulas(s)):
        return _invalid("conclusion already assumed")
    return _check_single_extension(s, app, [implication.right])


def _check_or_kb(s, app):
    focused = s.find(app.focus[0])
    if not isinstance(focused, Or):
        return _invalid("focused assumption is not a disjunction")
    if _alpha_in(focused.left, _formulas(s)) or _alpha_in(focused.right, _formulas(s)):
        return _invalid("case distinction would have no new effect")
    if len(app.children) != 2:
        return _invalid("case distinction needs two children")
    for child, case in zip(app.children, (focused.left, focused.right)):
        problem = _check_extension(s, child, [case], s.goal, s.signature)
        if problem:
            return _invalid(problem)
    return _valid()


def _check_not_kb(s, app):
    focused = s.find(app.focus[0])
    if not isinstance(focused, Not):
        return _invalid("focused assumption is not a negation")
    inner = focused.body
    if isinstance(inner, Not):
        additions, cases = [inner.body], None
    elif isinstance(inner, Or):
        additions, cases = [Not(inner.left), Not(inner.right)], None
    elif isinstance(inner, Implies):
        additions, cases = [inner.left, Not(inner.right)], None
    elif isinstance(inner, Top):
        additions, cases = [BOTTOM], None
    elif isinstance(inner, Forall):
        additions, cases = [Exists(inner.var, Not(inner.body))], None
    elif isinstance(inner, Exists):
        additions, cases = [Forall(inner.var, Not(inner.body))], None
    elif isinstance(inner, And):
        additions, cases = None, [[Not(inner.left)], [Not(inner.right)]]
    elif isinstance(inner, Iff):
        additions, cases = None, [[inner.left, Not(inner.right)],
                                  [Not(inner.left), inner.right]]
    else:
        return _invalid("negated atom or falsity cannot be decomposed")
    if additions is not None:
        if not _expected_additions(s, additions):
            return _invalid("rule would have no new effect")
        return _check_single_extension(s, app, additions)
    if len(app.children) != len(cases):
        return _invalid("wrong number of case children")
    for child, case in zip(app.children, cases):
        if not _expected_additions(s, case):
            return _invalid("a case would have no new effect")
        problem = _check_extension(s, child, case, s.goal, s.signature)
        if problem:
            return _invalid(problem)
    return _valid()


def _check_or_goal(s, app):
    if not isinstance(s.goal, Or):
        return _invalid("goal is not a disjunction")
    if len(app.children) != 1:
        return _invalid("each disjunction alternative has one child")
    child = app.children[0]
    if app.description_key == "or_goal.left":
        problem = _check_same_assumptions(s, child, s.goal.left)
        return _invalid(problem) if problem else _valid()
    if app.description_key == "or_goal.right":
        problem = _check_same_assumptions(s, child, s.goal.right)
        return _invalid(problem) if problem else _valid()
    if app.description_key == "or_goal.negated":
        problem = _check_extension(
            s, child, [Not(s.goal.left)], s.goal.right, s.signature)
        return _invalid(problem) if problem else _valid()
    return _invalid(f"unknown disjunction variant {app.description_key!r}")


def _check_exists_goal(s, app):
    if not isinstance(s.goal, Exists):
        return _invalid("goal is not existentially quantified")
    if len(app.children) != 1:
        return _invalid("witness alternatives have one child")
    child = app.children[0]
    pool = situation_pool(s)
    if app.description_key == "exists_goal.fresh":
        if pool:
            return _invalid("fresh witness is only allowed on an empty term pool")
        name = app.binding("constant")
        if not name:
            return _invalid("missing introduced constant")
        problem = _fresh_problem(s, name)
        if problem:
            return _invalid(problem)
        instance = substitute(s.goal.body, s.goal.var, Constant(name))
        if not alpha_eq(child.goal, instance):
            return _invalid("child goal is not the prescribed instance")
        if child.signature != s.signature | {name}:
            return _invalid("child signature must gain exactly the new constant")
        if not _seq_alpha_eq(_formulas(child), _formulas(s)):
            return _invalid("child assumptions differ")
        return _valid()
    term = parse_term(app.binding("term"))
    if not any(render_term(term) == render_term(t) for t in pool):
        return _invalid("witness term is not in the term pool")
    instance = substitute(s.goal.body, s.goal.var, term)
    problem = _check_same_assumptions(s, child, instance)
    return _invalid(problem) if problem else _valid()


def _check_forall_kb(s, app):
    focused = s.find(app.focus[0])
    if not isinstance(focused, Forall):
        return _invalid("focused assumption is not universally quantified")
    term = parse_term(app.binding("term"))
    pool = situation_pool(s)
    if not any(render_term(term) == render_term(t) for t in pool):
        return _invalid("instantiation term is not in the term pool")
    instance = substitute(focused.body, focused.var, term)
    if _alpha_in(instance, _formulas(s)):
        return _invalid("instance already assumed")
    return _check_single_extension(s, app, [instance])


def _check_implies_kb(s, app):
    focused = s.find(app.focus[0])
    if not isinstance(focused, Implies):
        return _invalid("focused assumption is not an implication")
    negated = Not(focused.left)
    if _alpha_in(negated, _formulas(s)) or _alpha_in(focused.right, _formulas(s)):
        return _invalid("implication cases would have no new effect")
    if len(app.children) != 2:
        return _invalid("implication cases need two children")
    for child, addition in zip(app.children, (negated, focused.right)):
        problem = _check_extension(s, child, [addition], s.goal, s.signature)
        if problem:
            return _invalid(problem)
    return _valid()


def _check_by_contradiction(s, app):
    if isinstance(s.goal, Bottom):
        return _invalid("goal is already falsity")
    return _check_single_extension(s, app, [Not(s.goal)], goal=BOTTOM)


_CHECKERS = {
    "GoalTrue": _check_goal_true,
    "ContradictionInKB": _check_contradiction,
    "GoalInKB": _check_goal_in_kb,
    "AndGoal": _check_and_goal,
    "ImplGoal": _check_impl_goal,
    "IffGoal": _check_iff_goal,
    "NotGoal": _check_not_goal,
    "ForallGoal": _check_forall_goal,
    "AndKB": _check_and_kb,
    "IffKB": _check_iff_kb,
    "ExistsKB": _check_exists_kb,
    "ModusPonensKB": _check_modus_ponens,
    "OrKB": _check_or_kb,
    "NotKB": _check_not_kb,
    "OrGoal": _check_or_goal,
    "ExistsGoal": _check_exists_goal,
    "ForallKB": _check_forall_kb,
    "ImpliesKB": _check_implies_kb,
    "ByContradiction": _check_by_contradiction,
}
