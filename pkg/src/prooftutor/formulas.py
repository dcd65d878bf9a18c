"""Terms and formulas of first-order predicate logic.

The surface grammar is plain ASCII:

    connectives   !   &   |   ->   <->        (tightest to loosest)
    quantifiers   forall x. ...   exists x. ...
    atoms         P, Q(x, f(a)), s = t, true, false

Conjunction and disjunction associate to the left, implication and
biconditional to the right, and a quantifier's scope extends as far to
the right as possible.  Predicate names start with an uppercase letter;
function and constant names start with a lowercase letter.  A lowercase
identifier is a variable exactly when an enclosing quantifier binds it,
otherwise it denotes a constant.  ``true``/``false`` and the quantifier
words are reserved.

``render_formula`` emits the minimal parenthesization that reparses to
the same tree, so the rendered string is the canonical serialized form
of a formula.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

__all__ = [
    "Variable", "Constant", "FunctionApp", "Term",
    "Atom", "Top", "Bottom", "Not", "And", "Or", "Implies", "Iff",
    "Forall", "Exists", "Formula", "TOP", "BOTTOM",
    "ParseError", "parse_formula", "parse_term", "render_formula", "render_term",
    "free_vars", "substitute", "alpha_eq", "ground_subterms", "fresh_constant",
    "constants_of", "function_arities", "predicate_arities", "bound_names", "subformulas",
]

IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
KEYWORDS = frozenset({"forall", "exists", "true", "false"})


# ---------------------------------------------------------------------------
# Abstract syntax


@dataclass(frozen=True)
class Variable:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Constant:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class FunctionApp:
    name: str
    args: tuple["Term", ...]

    def __str__(self) -> str:
        return render_term(self)


Term = Union[Variable, Constant, FunctionApp]


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple[Term, ...] = ()

    def __str__(self) -> str:
        return render_formula(self)


@dataclass(frozen=True)
class Top:
    def __str__(self) -> str:
        return "true"


@dataclass(frozen=True)
class Bottom:
    def __str__(self) -> str:
        return "false"


@dataclass(frozen=True)
class Not:
    body: "Formula"

    def __str__(self) -> str:
        return render_formula(self)


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return render_formula(self)


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return render_formula(self)


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return render_formula(self)


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return render_formula(self)


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"

    def __str__(self) -> str:
        return render_formula(self)


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"

    def __str__(self) -> str:
        return render_formula(self)


Formula = Union[Atom, Top, Bottom, Not, And, Or, Implies, Iff, Forall, Exists]

TOP = Top()
BOTTOM = Bottom()

_BINARY = {And: ("&", 4), Or: ("|", 3), Implies: ("->", 2), Iff: ("<->", 1)}
_QUANT = {Forall: "forall", Exists: "exists"}


# ---------------------------------------------------------------------------
# Parsing


class ParseError(Exception):
    """Raised on malformed input, carrying the offset and the expected tokens."""

    def __init__(self, message: str, position: int, expected: Iterable[str] = ()):
        self.position = position
        self.expected = frozenset(expected)
        super().__init__(f"{message} (at position {position})")


@dataclass(frozen=True)
class _Token:
    kind: str  # "ident", "keyword", a literal symbol, or "end"
    text: str
    pos: int


_SYMBOLS = ("<->", "->", "(", ")", ",", ".", "!", "&", "|", "=")


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(_Token(sym, sym, i))
                i += len(sym)
                break
        else:
            m = IDENT_RE.match(text, i)
            if m is None:
                raise ParseError(f"unexpected character {ch!r}", i)
            word = m.group()
            kind = "keyword" if word in KEYWORDS else "ident"
            tokens.append(_Token(kind, word, i))
            i = m.end()
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.index = 0
        self.bound: list[str] = []
        self.func_arity: dict[str, int] = {}
        self.pred_arity: dict[str, int] = {}

    @property
    def current(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.current
        if tok.kind != kind:
            raise ParseError(
                f"expected {kind!r} but found {tok.text or 'end of input'!r}",
                tok.pos, {kind})
        return self.advance()

    def fail(self, expected: Iterable[str]) -> ParseError:
        tok = self.current
        found = tok.text or "end of input"
        return ParseError(f"unexpected token {found!r}", tok.pos, expected)

    # Grammar, loosest first.  A quantifier body is a full formula, which
    # makes its scope extend maximally to the right.

    def formula(self) -> Formula:
        left = self.implication()
        if self.current.kind == "<->":
            self.advance()
            return Iff(left, self.formula())
        return left

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.current.kind == "->":
            self.advance()
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.current.kind == "|":
            self.advance()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.current.kind == "&":
            self.advance()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        tok = self.current
        if tok.kind == "!":
            self.advance()
            return Not(self.unary())
        if tok.kind == "keyword" and tok.text in ("forall", "exists"):
            self.advance()
            var = self.expect("ident")
            if not var.text[0].islower():
                raise ParseError(
                    f"bound variable {var.text!r} must start lowercase", var.pos)
            self.expect(".")
            self.bound.append(var.text)
            try:
                body = self.formula()
            finally:
                self.bound.pop()
            return Forall(var.text, body) if tok.text == "forall" else Exists(var.text, body)
        return self.atom()

    def atom(self) -> Formula:
        tok = self.current
        if tok.kind == "(":
            self.advance()
            inner = self.formula()
            self.expect(")")
            return inner
        if tok.kind == "keyword":
            if tok.text == "true":
                self.advance()
                return TOP
            if tok.text == "false":
                self.advance()
                return BOTTOM
            raise self.fail({"formula"})
        if tok.kind != "ident":
            raise self.fail({"formula"})
        if tok.text[0].isupper():
            self.advance()
            args = self.arguments() if self.current.kind == "(" else ()
            self.check_arity(self.pred_arity, tok, len(args))
            return Atom(tok.text, args)
        # A lone term is only a formula as one side of an equality.
        left = self.term()
        self.expect("=")
        right = self.term()
        return Atom("=", (left, right))

    def arguments(self) -> tuple[Term, ...]:
        self.expect("(")
        args = [self.term()]
        while self.current.kind == ",":
            self.advance()
            args.append(self.term())
        self.expect(")")
        return tuple(args)

    def term(self) -> Term:
        tok = self.current
        if tok.kind != "ident" or not tok.text[0].islower():
            raise self.fail({"term"})
        self.advance()
        if self.current.kind == "(":
            args = self.arguments()
            self.check_arity(self.func_arity, tok, len(args))
            return FunctionApp(tok.text, args)
        if tok.text in self.bound:
            return Variable(tok.text)
        self.check_arity(self.func_arity, tok, 0)
        return Constant(tok.text)

    def check_arity(self, table: dict[str, int], tok: _Token, arity: int) -> None:
        seen = table.setdefault(tok.text, arity)
        if seen != arity:
            raise ParseError(
                f"{tok.text!r} used with arity {arity} after arity {seen}", tok.pos)


def parse_formula(text: str) -> Formula:
    """Parse ``text`` into the unique formula tree the grammar assigns it."""
    parser = _Parser(text)
    result = parser.formula()
    if parser.current.kind != "end":
        raise parser.fail({"end of input"})
    return result


def parse_term(text: str) -> Term:
    """Parse a single closed or open term (no connectives)."""
    parser = _Parser(text)
    result = parser.term()
    if parser.current.kind != "end":
        raise parser.fail({"end of input"})
    return result


# ---------------------------------------------------------------------------
# Printing


def render_term(t: Term) -> str:
    if isinstance(t, (Variable, Constant)):
        return t.name
    return f"{t.name}({', '.join(render_term(a) for a in t.args)})"


def _open_right(f: Formula) -> bool:
    """True when the rendered formula could swallow a following operator."""
    if isinstance(f, (Forall, Exists)):
        return True
    if isinstance(f, Not):
        return _open_right(f.body)
    return False


def _render(f: Formula, min_prec: int, more_right: bool) -> str:
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, Atom):
        if f.pred == "=":
            return f"{render_term(f.args[0])} = {render_term(f.args[1])}"
        if f.args:
            return f"{f.pred}({', '.join(render_term(a) for a in f.args)})"
        return f.pred
    if isinstance(f, Not):
        return "!" + _render(f.body, 5, more_right)
    if isinstance(f, (Forall, Exists)):
        parens = more_right
        body = _render(f.body, 1, False)
        text = f"{_QUANT[type(f)]} {f.var}. {body}"
        return f"({text})" if parens else text
    op, prec = _BINARY[type(f)]
    parens = prec < min_prec
    if type(f) in (And, Or):  # left-associative
        left_min, right_min = prec, prec + 1
    else:  # right-associative
        left_min, right_min = prec + 1, prec
    left = _render(f.left, left_min, True)
    right = _render(f.right, right_min, False if parens else more_right)
    text = f"{left} {op} {right}"
    return f"({text})" if parens else text


def render_formula(f: Formula) -> str:
    """Print ``f`` with the fewest parentheses that still round-trip."""
    return _render(f, 1, False)


# ---------------------------------------------------------------------------
# Structural helpers


def _term_vars(t: Term) -> Iterator[str]:
    if isinstance(t, Variable):
        yield t.name
    elif isinstance(t, FunctionApp):
        for a in t.args:
            yield from _term_vars(a)


def _children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, Not):
        return (f.body,)
    if isinstance(f, (And, Or, Implies, Iff)):
        return (f.left, f.right)
    if isinstance(f, (Forall, Exists)):
        return (f.body,)
    return ()


def subformulas(f: Formula) -> Iterator[Formula]:
    """All subformulas of ``f`` including ``f`` itself, preorder."""
    yield f
    for child in _children(f):
        yield from subformulas(child)


def free_vars(f: Formula) -> frozenset[str]:
    """The variables occurring free in ``f``."""
    if isinstance(f, Atom):
        return frozenset(v for t in f.args for v in _term_vars(t))
    if isinstance(f, (Top, Bottom)):
        return frozenset()
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, (And, Or, Implies, Iff)):
        return free_vars(f.left) | free_vars(f.right)
    return free_vars(f.body) - {f.var}


def _subst_term(t: Term, var: str, replacement: Term) -> Term:
    if isinstance(t, Variable):
        return replacement if t.name == var else t
    if isinstance(t, FunctionApp):
        return FunctionApp(t.name, tuple(_subst_term(a, var, replacement) for a in t.args))
    return t


def substitute(f: Formula, var: str, t: Term) -> Formula:
    """Capture-avoiding substitution of ``t`` for free occurrences of ``var``.

    A bound variable that would capture ``t`` is renamed to the first of
    ``y1``, ``y2``, ... that collides with nothing in scope.
    """
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(_subst_term(a, var, t) for a in f.args))
    if isinstance(f, (Top, Bottom)):
        return f
    if isinstance(f, Not):
        return Not(substitute(f.body, var, t))
    if isinstance(f, (And, Or, Implies, Iff)):
        return type(f)(substitute(f.left, var, t), substitute(f.right, var, t))
    # quantifier
    if f.var == var or var not in free_vars(f.body):
        return f
    bound = f.var
    if bound in free_vars_term(t):
        avoid = free_vars(f.body) | free_vars_term(t) | {var, bound}
        k = 1
        while f"{bound}{k}" in avoid:
            k += 1
        fresh = f"{bound}{k}"
        body = substitute(f.body, bound, Variable(fresh))
        return type(f)(fresh, substitute(body, var, t))
    return type(f)(bound, substitute(f.body, var, t))


def free_vars_term(t: Term) -> frozenset[str]:
    return frozenset(_term_vars(t))


def alpha_eq(f: Formula, g: Formula) -> bool:
    """Equality up to consistent renaming of bound variables."""
    if f is g:  # shared subtrees are common on hot paths
        return True
    return _alpha(f, g, {}, {})


def _alpha_term(s: Term, t: Term, fwd: dict, bwd: dict) -> bool:
    if isinstance(s, Variable) and isinstance(t, Variable):
        # bound variables must map to each other; free ones must match by name
        if s.name in fwd or t.name in bwd:
            return fwd.get(s.name) == t.name and bwd.get(t.name) == s.name
        return s.name == t.name
    if isinstance(s, Constant) and isinstance(t, Constant):
        return s.name == t.name
    if isinstance(s, FunctionApp) and isinstance(t, FunctionApp):
        return (s.name == t.name and len(s.args) == len(t.args)
                and all(_alpha_term(a, b, fwd, bwd) for a, b in zip(s.args, t.args)))
    return False


def _alpha(f: Formula, g: Formula, fwd: dict, bwd: dict) -> bool:
    if type(f) is not type(g):
        return False
    if isinstance(f, Atom):
        return (f.pred == g.pred and len(f.args) == len(g.args)
                and all(_alpha_term(a, b, fwd, bwd) for a, b in zip(f.args, g.args)))
    if isinstance(f, (Top, Bottom)):
        return True
    if isinstance(f, Not):
        return _alpha(f.body, g.body, fwd, bwd)
    if isinstance(f, (And, Or, Implies, Iff)):
        return _alpha(f.left, g.left, fwd, bwd) and _alpha(f.right, g.right, fwd, bwd)
    fwd2 = dict(fwd)
    bwd2 = dict(bwd)
    fwd2[f.var] = g.var
    bwd2[g.var] = f.var
    return _alpha(f.body, g.body, fwd2, bwd2)


def _collect_ground(t: Term, seen: dict) -> bool:
    """Record every ground subterm of ``t`` in ``seen``; True if t is ground."""
    if isinstance(t, Variable):
        return False
    if isinstance(t, Constant):
        seen.setdefault(t, None)
        return True
    ground = True
    for a in t.args:
        if not _collect_ground(a, seen):
            ground = False
    if ground:
        seen.setdefault(t, None)
    return ground


def ground_subterms(fs: Iterable[Formula]) -> list[Term]:
    """Variable-free subterms of ``fs``, deduplicated, first occurrence first."""
    seen: dict[Term, None] = {}
    for f in fs:
        for sub in subformulas(f):
            if isinstance(sub, Atom):
                for t in sub.args:
                    _collect_ground(t, seen)
    return list(seen)


def fresh_constant(signature: Iterable[str], hint: str) -> str:
    """``hint`` if unused, else the first unused of ``hint0``, ``hint1``, ..."""
    taken = set(signature)
    if hint not in taken:
        return hint
    k = 0
    while f"{hint}{k}" in taken:
        k += 1
    return f"{hint}{k}"


def _term_constants(t: Term) -> Iterator[str]:
    if isinstance(t, Constant):
        yield t.name
    elif isinstance(t, FunctionApp):
        for a in t.args:
            yield from _term_constants(a)


def constants_of(f: Formula) -> frozenset[str]:
    """Names of all constants occurring in ``f``."""
    names = set()
    for sub in subformulas(f):
        if isinstance(sub, Atom):
            for t in sub.args:
                names.update(_term_constants(t))
    return frozenset(names)


def _term_functions(t: Term, table: dict[str, int]) -> None:
    if isinstance(t, Constant):
        table.setdefault(t.name, 0)
    elif isinstance(t, FunctionApp):
        table.setdefault(t.name, len(t.args))
        for a in t.args:
            _term_functions(a, table)


def function_arities(f: Formula) -> dict[str, int]:
    """First-seen arity of every function symbol in ``f`` (constants are arity 0)."""
    table: dict[str, int] = {}
    for sub in subformulas(f):
        if isinstance(sub, Atom):
            for t in sub.args:
                _term_functions(t, table)
    return table


def predicate_arities(f: Formula) -> dict[str, int]:
    table: dict[str, int] = {}
    for sub in subformulas(f):
        if isinstance(sub, Atom):
            table.setdefault(sub.pred, len(sub.args))
    return table


def bound_names(f: Formula) -> frozenset[str]:
    """Every variable name bound by some quantifier in ``f``."""
    return frozenset(sub.var for sub in subformulas(f) if isinstance(sub, (Forall, Exists)))
