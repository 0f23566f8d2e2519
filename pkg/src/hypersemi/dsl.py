"""Universally quantified conjectures over ideal-sorted subset variables.

Concrete syntax::

    forall A:right, B:left : A*B <= A &cap B

* sorts: ``subset left right ideal bi quasi``
* formulas: atoms ``t <= t`` and ``t = t``; connectives ``!`` > ``&`` > ``|``
* terms: ``*`` > ``&cap`` > ``&cup`` (all left-associative), the full
  carrier ``H``, generated ideals ``R(t)``, ``L(t)``, ``I(t)``, parentheses.

Variables range over the nonempty subsets in their sort, in ascending
bitmask order; the first quantified variable varies slowest.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Optional, Union

from .core import (
    Hypergroupoid,
    Subset,
    _product,
    associativity_witness,
    format_subset,
    is_subset,
)
from .enumeration import (
    EnumerationSpec,
    EnumerationStats,
    Filter,
    enumerate_prefix,
    map_partitions,
    named_alphabet,
)
from .ideals import IdealClass, _generated, members_of_class

SORTS = {c.value: c for c in IdealClass}
RESERVED = {"forall", "H", "R", "L", "I"}


class DSLError(ValueError):
    pass


class ParseError(DSLError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


class SortError(DSLError):
    pass


class EvaluationError(DSLError):
    def __init__(self, message: str, term: "Term"):
        super().__init__(f"{message} (in term {pretty(term)})")
        self.term = term


# -- AST --------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Full:
    pass


@dataclass(frozen=True)
class Product:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Union_:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Intersection:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Generated:
    kind: str  # "R", "L" or "I"
    arg: "Term"


Term = Union[Var, Full, Product, Union_, Intersection, Generated]


@dataclass(frozen=True)
class Atom:
    rel: str  # "<=" or "="
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


Formula = Union[Atom, Not, And, Or]


@dataclass(frozen=True)
class Conjecture:
    bindings: tuple[tuple[str, IdealClass], ...]
    body: Formula

    def __str__(self) -> str:
        return pretty(self)


# -- lexer ------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<op>&cap\b|&cup\b|<=|[=&|!*():,])
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # "op", "name", "end"
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "ws":
            chunk = m.group()
            if "\n" in chunk:
                line += chunk.count("\n")
                line_start = pos + chunk.rindex("\n") + 1
        else:
            out.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    out.append(Token("end", "", line, pos - line_start + 1))
    return out


# -- parser -----------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, expected: str) -> ParseError:
        t = self.tok
        found = "end of input" if t.kind == "end" else repr(t.text)
        return ParseError(f"expected {expected}, found {found}", t.line, t.col)

    def at(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(repr(text))
        t = self.tok
        self.i += 1
        return t

    def conjecture(self) -> Conjecture:
        if not (self.tok.kind == "name" and self.tok.text == "forall"):
            raise self.error("'forall'")
        self.i += 1
        bindings = [self.binding()]
        while self.at(","):
            self.i += 1
            bindings.append(self.binding())
        self.expect(":")
        body = self.formula()
        if self.tok.kind != "end":
            raise self.error("end of input")
        return Conjecture(tuple(bindings), body)

    def binding(self) -> tuple[str, IdealClass]:
        t = self.tok
        if t.kind != "name" or t.text in RESERVED:
            raise self.error("a variable name")
        self.i += 1
        self.expect(":")
        s = self.tok
        if s.kind != "name" or s.text not in SORTS:
            raise self.error("a sort (" + ", ".join(SORTS) + ")")
        self.i += 1
        return t.text, SORTS[s.text]

    def formula(self) -> Formula:
        f = self.conj()
        while self.at("|"):
            self.i += 1
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.neg()
        while self.at("&"):
            self.i += 1
            f = And(f, self.neg())
        return f

    def neg(self) -> Formula:
        if self.at("!"):
            self.i += 1
            return Not(self.neg())
        return self.atom()

    def atom(self) -> Formula:
        if self.at("("):
            # either a parenthesised formula or a term that starts with '('
            start = self.i
            try:
                self.i += 1
                f = self.formula()
                self.expect(")")
                if not (self.at("<=") or self.at("=") or self.at("*")
                        or self.at("&cap") or self.at("&cup")):
                    return f
            except ParseError:
                pass
            self.i = start
        lhs = self.term()
        if self.at("<=") or self.at("="):
            rel = self.tok.text
            self.i += 1
        else:
            raise self.error("'<=' or '='")
        return Atom(rel, lhs, self.term())

    def term(self) -> Term:
        t = self.cap()
        while self.at("&cup"):
            self.i += 1
            t = Union_(t, self.cap())
        return t

    def cap(self) -> Term:
        t = self.prod()
        while self.at("&cap"):
            self.i += 1
            t = Intersection(t, self.prod())
        return t

    def prod(self) -> Term:
        t = self.primary()
        while self.at("*"):
            self.i += 1
            t = Product(t, self.primary())
        return t

    def primary(self) -> Term:
        t = self.tok
        if self.at("("):
            self.i += 1
            inner = self.term()
            self.expect(")")
            return inner
        if t.kind == "name":
            if t.text in ("R", "L", "I"):
                self.i += 1
                self.expect("(")
                inner = self.term()
                self.expect(")")
                return Generated(t.text, inner)
            if t.text == "H":
                self.i += 1
                return Full()
            if t.text != "forall":
                self.i += 1
                return Var(t.text)
        raise self.error("a term")


def parse(text: str) -> Conjecture:
    """Parse and sort-check a conjecture."""
    c = _Parser(text).conjecture()
    names = [name for name, _ in c.bindings]
    seen = set()
    for name in names:
        if name in seen:
            raise SortError(f"variable {name} is bound twice")
        seen.add(name)
    for v in _variables(c.body):
        if v not in seen:
            raise SortError(f"variable {v} is not bound by the quantifier prefix")
    return c


def _variables(node) -> Iterator[str]:
    if isinstance(node, Var):
        yield node.name
    elif isinstance(node, Full):
        return
    elif isinstance(node, (Product, Union_, Intersection, And, Or)):
        yield from _variables(node.left)
        yield from _variables(node.right)
    elif isinstance(node, Generated):
        yield from _variables(node.arg)
    elif isinstance(node, Not):
        yield from _variables(node.arg)
    elif isinstance(node, Atom):
        yield from _variables(node.lhs)
        yield from _variables(node.rhs)


# -- printer ----------------------------------------------------------------

_TERM_PREC = {Union_: 1, Intersection: 2, Product: 3}
_TERM_OP = {Union_: " &cup ", Intersection: " &cap ", Product: "*"}


def _term_str(t: Term, min_prec: int = 0) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Full):
        return "H"
    if isinstance(t, Generated):
        return f"{t.kind}({_term_str(t.arg)})"
    prec = _TERM_PREC[type(t)]
    s = _term_str(t.left, prec) + _TERM_OP[type(t)] + _term_str(t.right, prec + 1)
    return f"({s})" if prec < min_prec else s


def _formula_str(f: Formula, min_prec: int = 0) -> str:
    if isinstance(f, Atom):
        return f"{_term_str(f.lhs)} {f.rel} {_term_str(f.rhs)}"
    if isinstance(f, Not):
        return "!" + _formula_str(f.arg, 3)
    prec, op = (1, " | ") if isinstance(f, Or) else (2, " & ")
    s = _formula_str(f.left, prec) + op + _formula_str(f.right, prec + 1)
    return f"({s})" if prec < min_prec else s


def pretty(node) -> str:
    """Render a conjecture, formula or term in the concrete syntax."""
    if isinstance(node, Conjecture):
        binds = ", ".join(f"{name}:{sort.value}" for name, sort in node.bindings)
        return f"forall {binds} : {_formula_str(node.body)}"
    if isinstance(node, (Atom, Not, And, Or)):
        return _formula_str(node)
    return _term_str(node)


# -- evaluation -------------------------------------------------------------

@dataclass(frozen=True)
class Counterexample:
    structure: Hypergroupoid
    assignment: dict[str, Subset]
    conjecture: Conjecture
    sides: tuple[tuple[str, Subset, Subset], ...]  # (atom text, lhs, rhs) per atom

    def replay(self) -> bool:
        """``True`` when the assignment still falsifies the conjecture."""
        return not _holds(self.structure, self.conjecture.body, self.assignment, [])

    def __str__(self) -> str:
        lines = [str(self.structure)]
        lines.append("assignment: " + ", ".join(
            f"{k} = {format_subset(v)}" for k, v in self.assignment.items()))
        for text, lhs, rhs in self.sides:
            lines.append(f"  {text}:  {format_subset(lhs)} vs {format_subset(rhs)}")
        return "\n".join(lines)


def _needs_associativity(c: Conjecture) -> Optional[object]:
    """The first construct whose meaning presupposes associativity, if any."""
    for name, sort in c.bindings:
        if sort is IdealClass.BI:
            return Var(name)

    def walk(node):
        if isinstance(node, Generated):
            return node
        if isinstance(node, Product):
            if isinstance(node.left, Product) or isinstance(node.right, Product):
                return node
            return walk(node.left) or walk(node.right)
        if isinstance(node, (Union_, Intersection, And, Or)):
            return walk(node.left) or walk(node.right)
        if isinstance(node, Not):
            return walk(node.arg)
        if isinstance(node, Atom):
            return walk(node.lhs) or walk(node.rhs)
        return None

    return walk(c.body)


def _value(H: Hypergroupoid, t: Term, env: dict[str, Subset]) -> Subset:
    if isinstance(t, Var):
        return env[t.name]
    if isinstance(t, Full):
        return H.full
    if isinstance(t, Union_):
        return _value(H, t.left, env) | _value(H, t.right, env)
    if isinstance(t, Intersection):
        return _value(H, t.left, env) & _value(H, t.right, env)
    if isinstance(t, Product):
        a = _value(H, t.left, env)
        b = _value(H, t.right, env)
        if not a or not b:
            raise EvaluationError("product of an empty subset", t)
        return _product(H, a, b)
    if isinstance(t, Generated):
        a = _value(H, t.arg, env)
        if not a:
            raise EvaluationError("generated ideal of an empty subset", t)
        g = _generated(H, a)
        return {"R": g.right, "L": g.left, "I": g.two_sided}[t.kind]
    raise TypeError(f"not a term: {t!r}")


def _holds(H: Hypergroupoid, f: Formula, env: dict[str, Subset], sides: list) -> bool:
    if isinstance(f, Atom):
        lhs = _value(H, f.lhs, env)
        rhs = _value(H, f.rhs, env)
        sides.append((_formula_str(f), lhs, rhs))
        return is_subset(lhs, rhs) if f.rel == "<=" else lhs == rhs
    if isinstance(f, Not):
        return not _holds(H, f.arg, env, sides)
    if isinstance(f, And):
        return _holds(H, f.left, env, sides) and _holds(H, f.right, env, sides)
    if isinstance(f, Or):
        return _holds(H, f.left, env, sides) or _holds(H, f.right, env, sides)
    raise TypeError(f"not a formula: {f!r}")


def assignments(H: Hypergroupoid, c: Conjecture) -> Iterator[dict[str, Subset]]:
    """Every sorted assignment, in lexicographic order."""
    names = [name for name, _ in c.bindings]
    pools = [members_of_class(H, sort) for _, sort in c.bindings]
    for values in itertools.product(*pools):
        yield dict(zip(names, values))


def evaluate(H: Hypergroupoid, c: Conjecture, *, checked: bool = True) -> Union[bool, Counterexample]:
    """``True`` if ``c`` holds in ``H``, else the first counterexample.

    ``checked=False`` skips the associativity check for callers that
    enumerate hypersemigroups only.
    """
    if checked:
        culprit = _needs_associativity(c)
        if culprit is not None:
            w = associativity_witness(H)
            if w is not None:
                raise EvaluationError(f"needs a hypersemigroup; associativity fails at {w}", culprit)
    for env in assignments(H, c):
        sides: list = []
        if not _holds(H, c.body, env, sides):
            return Counterexample(H, env, c, tuple(sides))
    return True


# -- hunting ----------------------------------------------------------------

@dataclass(frozen=True)
class HuntResult:
    counterexample: Optional[Counterexample]
    stats: EnumerationStats
    restriction: Optional[str] = None

    @property
    def exhausted(self) -> bool:
        return self.counterexample is None


def _hunt_partition(spec: EnumerationSpec, prefix: tuple, c: Conjecture,
                    assuming: Optional[Conjecture] = None):
    found = []

    def visit(H: Hypergroupoid):
        if assuming is not None and evaluate(H, assuming, checked=False) is not True:
            return None
        r = evaluate(H, c, checked=False)
        if r is not True:
            found.append(r)
            return True
        return None

    stats = enumerate_prefix(spec, prefix, visit, count_regular=False)
    return (found[0] if found else None), stats


def hunt(c: Conjecture, max_order: int, *, assuming: Optional[Conjecture] = None,
         alphabet: str = "all", canonicalize: bool = False,
         workers: int = 1, depth: int = 2, alphabet_from: int = 1) -> HuntResult:
    """Search hypersemigroups of order ``1..max_order`` for a counterexample.

    With ``assuming``, only structures satisfying that conjecture are
    examined; this is how statements about, say, regular hypersemigroups
    are phrased (``assuming=parse("forall A:subset : A <= A*H*A")``).

    ``alphabet`` names a cell alphabet (see
    :func:`~hypersemi.enumeration.named_alphabet`), applied from order
    ``alphabet_from`` on; smaller orders use every nonempty subset.  The
    first counterexample in visitation order is returned.
    """
    if max_order < 1:
        raise DSLError("max_order must be at least 1")
    total = EnumerationStats()
    restriction = None
    for n in range(1, max_order + 1):
        cells = named_alphabet(alphabet, n) if n >= alphabet_from else None
        if cells is not None:
            restriction = f"order >= {max(alphabet_from, 1)}: cells restricted to {alphabet}"
        spec = EnumerationSpec(n, Filter.ASSOCIATIVE, canonicalize, cells)
        spec.validate()
        # ordered merge: partitions return in visitation order
        results = map_partitions(spec, _hunt_partition, workers=workers,
                                 depth=depth if workers > 1 else 0, args=(c, assuming))
        order_stats = EnumerationStats(total_tables=spec.total_tables)
        hit = None
        for found, stats in results:
            order_stats = order_stats.merge(stats)
            if found is not None:
                hit = found
                break
        # the search space grows with the order, so totals add across orders
        total = EnumerationStats(
            total.total_tables + order_stats.total_tables,
            total.visited + order_stats.visited,
            total.associative_count + order_stats.associative_count,
            0,
            total.nodes + order_stats.nodes,
            total.elapsed + order_stats.elapsed,
        )
        if hit is not None:
            return HuntResult(hit, total, restriction)
    return HuntResult(None, total, restriction)
