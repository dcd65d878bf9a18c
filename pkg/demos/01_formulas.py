# A tour of the formula layer: parsing, printing, and substitution.

from prooftutor import (
    Atom, Forall, Variable, parse_formula, render_formula,
    free_vars, substitute, alpha_eq, ground_subterms, fresh_constant,
)

# The grammar is plain ASCII. Negation binds tightest, then & and |,
# then -> and <->; a quantifier swallows everything to its right.
f = parse_formula("forall x. P(x) & Q(x) -> exists y. R(x, y)")
print("parsed:", f)

# Printing adds only the parentheses needed to get the same tree back.
g = parse_formula("(forall x. P(x)) & Q")
print("printed:", render_formula(g))
assert parse_formula(render_formula(g)) == g

# Free variables and capture-avoiding substitution. In parsed text an
# unbound lowercase name is a constant, so an open formula is built
# directly from the syntax tree.
h = Forall("y", Atom("=", (Variable("x"), Variable("y"))))
print("free vars:", sorted(free_vars(h)))

# Substituting y for x under the binder would capture it, so the bound
# variable is renamed first.
renamed = substitute(h, "x", Variable("y"))
print("after substitution:", render_formula(renamed))

# Alpha-equivalence ignores bound names.
assert alpha_eq(parse_formula("forall x. P(x)"), parse_formula("forall z. P(z)"))

# The ground subterms of a formula set feed quantifier instantiation.
pool = ground_subterms([parse_formula("P(f(a), b)")])
print("term pool:", [str(t) for t in pool])

# Fresh constants keep their hint when possible.
print(fresh_constant({"x"}, "x"), fresh_constant({"x", "x0"}, "x"))
