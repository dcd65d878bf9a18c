"""Independent oracles the test suite checks the engine against.

Nothing here touches the search machinery: truth tables decide the
propositional questions, and ground (Herbrand) expansion reduces the
function-free first-order fragment to a propositional one.
"""

from __future__ import annotations

import itertools

from prooftutor.formulas import (
    And, Atom, Bottom, Constant, Exists, Forall, Formula, FunctionApp, Iff,
    Implies, Not, Or, Top, Variable, render_formula, substitute,
)

MAX_ORACLE_ATOMS = 18


class UnsupportedFragment(Exception):
    pass


def atom_keys(f: Formula) -> list[str]:
    """Rendered atoms of ``f`` in first-occurrence order."""
    keys: dict[str, None] = {}

    def walk(g):
        if isinstance(g, Atom):
            keys.setdefault(render_formula(g), None)
        elif isinstance(g, Not):
            walk(g.body)
        elif isinstance(g, (And, Or, Implies, Iff)):
            walk(g.left)
            walk(g.right)
        elif isinstance(g, (Forall, Exists)):
            raise UnsupportedFragment("quantifier in propositional oracle")

    walk(f)
    return list(keys)


def evaluate(f: Formula, valuation: dict[str, bool]) -> bool:
    if isinstance(f, Atom):
        return valuation[render_formula(f)]
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Not):
        return not evaluate(f.body, valuation)
    if isinstance(f, And):
        return evaluate(f.left, valuation) and evaluate(f.right, valuation)
    if isinstance(f, Or):
        return evaluate(f.left, valuation) or evaluate(f.right, valuation)
    if isinstance(f, Implies):
        return (not evaluate(f.left, valuation)) or evaluate(f.right, valuation)
    if isinstance(f, Iff):
        return evaluate(f.left, valuation) == evaluate(f.right, valuation)
    raise UnsupportedFragment(f"cannot evaluate {type(f).__name__}")


def is_tautology(f: Formula) -> bool:
    """Truth-table check over the atoms of ``f``."""
    keys = atom_keys(f)
    if len(keys) > MAX_ORACLE_ATOMS:
        raise UnsupportedFragment(f"too many atoms: {len(keys)}")
    for bits in itertools.product((False, True), repeat=len(keys)):
        if not evaluate(f, dict(zip(keys, bits))):
            return False
    return True


def satisfiable(formulas: list[Formula]) -> bool:
    keys: dict[str, None] = {}
    for f in formulas:
        for key in atom_keys(f):
            keys.setdefault(key, None)
    keys = list(keys)
    if len(keys) > MAX_ORACLE_ATOMS:
        raise UnsupportedFragment(f"too many atoms: {len(keys)}")
    for bits in itertools.product((False, True), repeat=len(keys)):
        valuation = dict(zip(keys, bits))
        if all(evaluate(f, valuation) for f in formulas):
            return True
    return False


def propositional_entails(assumptions: list[Formula], goal: Formula) -> bool:
    return not satisfiable(list(assumptions) + [Not(goal)])


# ---------------------------------------------------------------------------
# Ground first-order oracle (function-free fragment)


def _nnf(f: Formula) -> Formula:
    if isinstance(f, (Atom, Top, Bottom)):
        return f
    if isinstance(f, And):
        return And(_nnf(f.left), _nnf(f.right))
    if isinstance(f, Or):
        return Or(_nnf(f.left), _nnf(f.right))
    if isinstance(f, Implies):
        return Or(_nnf(Not(f.left)), _nnf(f.right))
    if isinstance(f, Iff):
        return Or(And(_nnf(f.left), _nnf(f.right)),
                  And(_nnf(Not(f.left)), _nnf(Not(f.right))))
    if isinstance(f, Forall):
        return Forall(f.var, _nnf(f.body))
    if isinstance(f, Exists):
        return Exists(f.var, _nnf(f.body))
    inner = f.body  # f is a negation
    if isinstance(inner, Atom):
        return f
    if isinstance(inner, Top):
        return Bottom()
    if isinstance(inner, Bottom):
        return Top()
    if isinstance(inner, Not):
        return _nnf(inner.body)
    if isinstance(inner, And):
        return Or(_nnf(Not(inner.left)), _nnf(Not(inner.right)))
    if isinstance(inner, Or):
        return And(_nnf(Not(inner.left)), _nnf(Not(inner.right)))
    if isinstance(inner, Implies):
        return And(_nnf(inner.left), _nnf(Not(inner.right)))
    if isinstance(inner, Iff):
        return Or(And(_nnf(inner.left), _nnf(Not(inner.right))),
                  And(_nnf(Not(inner.left)), _nnf(inner.right)))
    if isinstance(inner, Forall):
        return Exists(inner.var, _nnf(Not(inner.body)))
    if isinstance(inner, Exists):
        return Forall(inner.var, _nnf(Not(inner.body)))
    raise UnsupportedFragment(f"cannot normalize {type(inner).__name__}")


def _reject_functions(f: Formula) -> None:
    def check_term(t):
        if isinstance(t, FunctionApp):
            raise UnsupportedFragment("function symbols not supported")

    def walk(g):
        if isinstance(g, Atom):
            for t in g.args:
                check_term(t)
        elif isinstance(g, Not):
            walk(g.body)
        elif isinstance(g, (And, Or, Implies, Iff)):
            walk(g.left)
            walk(g.right)
        elif isinstance(g, (Forall, Exists)):
            walk(g.body)

    walk(f)


def _constants(f: Formula) -> set[str]:
    names = set()

    def from_term(t):
        if isinstance(t, Constant):
            names.add(t.name)

    def walk(g):
        if isinstance(g, Atom):
            for t in g.args:
                from_term(t)
        elif isinstance(g, Not):
            walk(g.body)
        elif isinstance(g, (And, Or, Implies, Iff)):
            walk(g.left)
            walk(g.right)
        elif isinstance(g, (Forall, Exists)):
            walk(g.body)

    walk(f)
    return names


def _skolemize(f: Formula, counter: list[int], under_forall: bool) -> Formula:
    """Replace existentials by fresh constants; reject them under universals."""
    if isinstance(f, (Atom, Top, Bottom, Not)):
        return f  # NNF: Not wraps atoms only
    if isinstance(f, (And, Or)):
        return type(f)(_skolemize(f.left, counter, under_forall),
                       _skolemize(f.right, counter, under_forall))
    if isinstance(f, Forall):
        return Forall(f.var, _skolemize(f.body, counter, True))
    if isinstance(f, Exists):
        if under_forall:
            raise UnsupportedFragment("existential under a universal")
        counter[0] += 1
        name = f"sk{counter[0]}"
        return _skolemize(substitute(f.body, f.var, Constant(name)),
                          counter, under_forall)
    raise UnsupportedFragment(f"unexpected {type(f).__name__} after NNF")


def _ground(f: Formula, universe: list[str]) -> Formula:
    if isinstance(f, (Atom, Top, Bottom, Not)):
        return f
    if isinstance(f, (And, Or)):
        return type(f)(_ground(f.left, universe), _ground(f.right, universe))
    if isinstance(f, Forall):
        parts = [_ground(substitute(f.body, f.var, Constant(c)), universe)
                 for c in universe]
        result = parts[0]
        for part in parts[1:]:
            result = And(result, part)
        return result
    raise UnsupportedFragment(f"unexpected {type(f).__name__} while grounding")


def herbrand_entails(assumptions: list[Formula], goal: Formula) -> bool:
    """Classical entailment on the function-free fragment.

    Refutation style: the assumptions plus the negated goal are put in
    negation normal form, existentials become Skolem constants, the
    remaining universals are expanded over the finite Herbrand universe,
    and the resulting ground problem goes to the truth table.
    """
    formulas = [Not(goal)] + list(assumptions)
    for f in formulas:
        _reject_functions(f)
    counter = [0]
    skolemized = [_skolemize(_nnf(f), counter, False) for f in formulas]
    universe = set()
    for f in skolemized:
        universe |= _constants(f)
    if not universe:
        universe = {"h"}
    grounded = [_ground(f, sorted(universe)) for f in skolemized]
    return not satisfiable(grounded)
