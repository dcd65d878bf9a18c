"""Natural-style proof search for first-order predicate logic.

The package is organized in layers:

* :mod:`prooftutor.formulas` -- terms, formulas, parser, printer, and
  substitution machinery.
* :mod:`prooftutor.documents` -- notebook-like documents, outlines, and
  knowledge-base selection.
* :mod:`prooftutor.rules` / :mod:`prooftutor.checker` -- proof
  situations, the inference-rule catalog, and the independent step
  checker.
* :mod:`prooftutor.search` -- prioritized depth-first proof search over
  AND/OR trees, with limits, cancellation, and simplification.
* :mod:`prooftutor.presentation` -- natural-language proof rendering
  and tree views for clients.

An HTTP service (:mod:`prooftutor.service`) and a CLI
(:mod:`prooftutor.cli`) expose the same functionality to tools, and
:mod:`prooftutor.corpus` bundles worked problem sets.
"""

from .formulas import (
    Variable, Constant, FunctionApp, Term,
    Atom, Top, Bottom, Not, And, Or, Implies, Iff, Forall, Exists, Formula,
    TOP, BOTTOM, ParseError,
    parse_formula, parse_term, render_formula, render_term,
    free_vars, substitute, alpha_eq, ground_subterms, fresh_constant,
)
from .documents import (
    Document, SectionCell, TextCell, EnvironmentCell,
    FormulaRef, KnowledgeBase, KBEntry,
    DocumentError, FormatError, DuplicateLabelError, ResolveError,
    load_document, document_to_json, outline, build_knowledge_base,
)
from .rules import (
    Assumption, ProofSituation, RuleApplication, RuleDescriptor,
    rule_catalog, rule_by_id, applicable_applications, apply_application,
    initial_situation, InvalidApplication,
)
from .checker import StepCheck, check_step
from .search import (
    ProverConfig, RuleSetting, ConfigError, Status, Outcome,
    SituationNode, ApplicationNode, ProofTree, ProofResult, NotProved,
    prove, propagate_status, simplify,
    proof_tree_to_json, proof_tree_from_json,
    proof_result_to_json, proof_result_from_json,
)
from .presentation import (
    ProseBlock, ProseDocument, NotSimplified, UnsupportedFormat,
    render_proof_nl, tree_to_view, export_proof,
)

__version__ = "0.1.0"
