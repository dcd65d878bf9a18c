# Searching for proofs and reading the results: colored trees (as
# statuses), simplification, and the natural-language rendering.

from prooftutor import (
    Status, export_proof, prove, render_proof_nl, simplify, tree_to_view,
)
from prooftutor.corpus import corpus_documents, corpus_problems, problem_inputs

docs = corpus_documents()
problems = {p.name: p for p in corpus_problems()}


def show_tree(tree, indent=0):
    node_status = tree.status.value if hasattr(tree, "status") else "?"
    print("  " * indent + f"[{tree.id}] goal {tree.situation.goal}  ({node_status})")
    for alt in tree.alternatives:
        print("  " * (indent + 1) + f"({alt.id}) {alt.application.rule}  ({alt.status.value})")
        for child in alt.children:
            show_tree(child, indent + 2)


# A case split: C follows from A | B with A -> C and B -> C.
goal, kb = problem_inputs(problems["p-cases"], docs)
result = prove(goal, kb)
print("outcome:", result.outcome.value, "after", result.nodes_expanded, "expansions")
show_tree(result.tree.root)

# Simplification keeps exactly the first successful alternative of each
# situation: the all-green formal proof tree.
tree = simplify(result.tree, {"prune_failures", "elide_unused_assumptions"})
assert all(n.status is Status.SUCCESS for n in tree.situations())

print()
print(export_proof(tree, kb, "text").decode())

# The prose blocks and the tree view share node ids, which is what a
# client uses for two-way click navigation.
prose = render_proof_nl(tree, kb)
view = tree_to_view(tree)
print("prose anchors:", sorted(prose.anchor_ids()))
print("tree nodes:   ", sorted(n["id"] for n in view["nodes"]))

# A quantifier problem end to end.
goal, kb = problem_inputs(problems["q05"], docs)
result = prove(goal, kb)
print()
print(export_proof(simplify(result.tree), kb, "text").decode())
