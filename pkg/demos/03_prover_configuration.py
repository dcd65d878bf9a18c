# How the prover setup shapes the search: switching rules off makes
# true statements unprovable, switching extra rules on never loses a
# proof, and priorities choose between different proofs.

from prooftutor import Outcome, ProverConfig, RuleSetting, prove, simplify

GOAL = "P -> P"

# Defaults find the direct proof.
print("defaults:        ", prove(GOAL).outcome.value)

# Without the assume-and-show rule (and with indirect proof still off),
# the goal becomes an "unprovable theorem".
crippled = ProverConfig().with_rule("ImplGoal", active=False)
print("ImplGoal off:    ", prove(GOAL, config=crippled).outcome.value)

# Turning ByContradiction on cannot prevent a proof that worked without
# it; the search just has one more alternative per goal.
richer = ProverConfig().with_rule("ByContradiction", active=True)
assert prove(GOAL, config=richer).outcome == Outcome.PROVED

# Priorities steer which proof is found first. Giving ByContradiction
# top priority yields an indirect proof of the same statement.
eager = ProverConfig({"ByContradiction": RuleSetting(True, 1)})
direct = simplify(prove(GOAL, config=richer).tree)
indirect = simplify(prove(GOAL, config=eager).tree)
print("default order:   ", [a.application.rule for _, a in direct.applications()])
print("eager order:     ", [a.application.rule for _, a in indirect.applications()])

# Search limits make everything terminate: this knowledge base spawns a
# new witness for every instantiation and would never saturate.
from prooftutor.corpus import corpus_documents, corpus_problems, problem_inputs

docs = corpus_documents()
stuck = next(p for p in corpus_problems() if p.name == "q01")
goal, kb = problem_inputs(stuck, docs)
tight = ProverConfig(depth_limit=1)
print("depth limit 1:   ", prove(goal, kb, tight).outcome.value)
print("defaults again:  ", prove(goal, kb).outcome.value)
