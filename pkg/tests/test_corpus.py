from prooftutor.corpus import corpus_documents, corpus_problems, problem_inputs
from prooftutor.formulas import (
    Atom, Constant, FunctionApp, Forall, Exists, Not, And, Or, Implies, Iff,
    subformulas,
)


def atoms_of(f):
    return [sub for sub in subformulas(f) if isinstance(sub, Atom)]


def terms_of(f):
    for atom in atoms_of(f):
        stack = list(atom.args)
        while stack:
            t = stack.pop()
            yield t
            if isinstance(t, FunctionApp):
                stack.extend(t.args)


def test_documents_load_and_have_titles():
    docs = corpus_documents()
    assert {d.id for d in docs} == {"prop-basics", "ground-fo", "stress"}
    assert all(d.title for d in docs)


def test_problem_refs_all_resolve():
    docs = corpus_documents()
    for problem in corpus_problems():
        goal, kb = problem_inputs(problem, docs)
        assert goal is not None
        assert len(kb) == len(problem.selection)


def test_at_least_fifty_ground_fo_problems():
    fo = [p for p in corpus_problems() if p.fragment == "ground-fo"]
    assert len(fo) >= 50


def test_ground_fo_problems_stay_in_fragment():
    docs = corpus_documents()
    for problem in corpus_problems():
        if problem.fragment != "ground-fo":
            continue
        goal, kb = problem_inputs(problem, docs)
        formulas = [goal] + [entry.formula for entry in kb]
        constants = set()
        predicates = set()
        for f in formulas:
            for atom in atoms_of(f):
                predicates.add((atom.pred, len(atom.args)))
            for term in terms_of(f):
                assert not isinstance(term, FunctionApp), problem.name
                if isinstance(term, Constant):
                    constants.add(term.name)
        assert len(constants) <= 2, problem.name
        assert len(predicates) <= 2, problem.name
        assert all(1 <= arity <= 2 for _, arity in predicates), problem.name


def test_problem_names_unique():
    names = [p.name for p in corpus_problems()]
    assert len(names) == len(set(names))
