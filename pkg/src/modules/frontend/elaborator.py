"""
Elaboration of surface documents into core formulas.

Two passes over the document. The first collects the signature (every
symbol by position, the variables that occur inside quotations, binder
sorts); the second converts the surface trees, applying ``quote`` bottom-up
so inner quotations are already terms when the outer one is built.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from src.core.exceptions import (
    ArityClash,
    IllTyped,
    Location,
    QianaError,
    QianaSyntaxError,
    SignatureError,
    UnsupportedConstruct,
)
from src.modules.frontend.models import (
    MODAL_SYSTEMS,
    Binary,
    Binder,
    Comparison,
    CompileOptions,
    Equation,
    InContext,
    InContextTerm,
    ModalOperator,
    Name,
    Negation,
    Numeral,
    Predication,
    Quantified,
    QuotEscape,
    Quotation,
    SurfaceAxiom,
    TheoryDocument,
    walk,
)
from src.modules.modal.models import Box, Diamond, MAnd, MImplies, MNot, ModalFormula, MOr, Prop
from src.modules.modal.services import embed_modal_formula
from src.modules.quotation.services import quote
from src.modules.signature.models import (
    BOX,
    CONNECTIVES,
    EQ,
    INJECTABLE,
    IST,
    QUOT,
    TRUTH,
    AugmentedSignature,
    Signature,
    Symbol,
    function,
    is_reserved_name,
    predicate,
)
from src.modules.signature.services import augment, default_quotable_vars
from src.modules.syntax.models import And, App, Atom, Escape, Forall, Formula, Not, Term, Var
from src.modules.syntax.services import disj, exists, iff, implies
from src.modules.temporal.models import LEQ, LT, TEMPORAL_SIGNATURE, TIME_ZERO
from src.modules.temporal.services import elaborate_temporal
from src.modules.typed.models import SymbolType, TypedSignature
from src.modules.typed.services import build_typed_signature, ensure_well_typed, resolve_sorts

logger = logging.getLogger(__name__)

BUILTIN_TERMS: Dict[str, Symbol] = {s.name: s for s in CONNECTIVES}
INJECTABLE_NAMES = frozenset(s.name for s in INJECTABLE)
COMPARISONS: Dict[str, Symbol] = {"<": LT, "<=": LEQ}

Scope = Dict[str, int]
Env = Dict[str, Optional[str]]


@dataclass(frozen=True)
class ElaboratedTheory:
    """A document after elaboration: closed core formulas over a derived signature."""
    asig: AugmentedSignature
    axioms: Tuple[Tuple[Formula, Optional[int]], ...]
    conjecture: Optional[Formula]
    options: CompileOptions
    tsig: Optional[TypedSignature] = None
    warnings: Tuple[str, ...] = ()

    @property
    def signature(self):
        return self.tsig if self.tsig is not None else self.asig


def _describe(symbol: Symbol) -> str:
    return f"{symbol.kind.value} {symbol}"


def numeral_symbol(digits: str, temporal: bool) -> Symbol:
    """``0`` is the first instant in temporal mode; other numerals are constants ``num_<digits>``."""
    if temporal and digits == "0":
        return TIME_ZERO
    return function(f"num_{digits}", 0)


class _Collector:
    """First pass: symbols, quotation variables and binder sorts."""

    def __init__(self, temporal: bool):
        self.temporal = temporal
        self.symbols: Dict[str, Symbol] = {}
        self.used_vars: List[str] = []
        self.var_sorts: Dict[str, str] = {}
        self.sort_clashes: Dict[str, Tuple[str, Optional[Location]]] = {}
        self.payloads: List[Tuple[Predication, Optional[Location]]] = []
        self.uses_equality = False
        self.warnings: List[str] = []

    def record(self, symbol: Symbol, location: Optional[Location] = None) -> None:
        seen = self.symbols.get(symbol.name)
        if seen is None:
            self.symbols[symbol.name] = symbol
        elif seen != symbol:
            raise ArityClash(f"{symbol.name} is used both as {_describe(seen)} and as {_describe(symbol)}", location)

    def _bind_sort(self, binder: Binder) -> None:
        first = self.var_sorts.setdefault(binder.name, binder.sort)
        if first != binder.sort and binder.name not in self.sort_clashes:
            self.sort_clashes[binder.name] = (binder.sort, binder.location)

    def _use_var(self, name: str) -> None:
        if name not in self.used_vars:
            self.used_vars.append(name)

    def check_name(self, name: str, location: Optional[Location]) -> None:
        if is_reserved_name(name) and name not in INJECTABLE_NAMES:
            raise SignatureError(f"{name} is a reserved name", location)

    def formula(self, node, scope: Scope, depth: int) -> None:
        if isinstance(node, Predication):
            self._predication(node, scope, depth)
        elif isinstance(node, Equation):
            self.uses_equality = True
            self.term(node.left, scope, depth)
            self.term(node.right, scope, depth)
        elif isinstance(node, Comparison):
            if not self.temporal:
                raise UnsupportedConstruct(f"'{node.op}' on instants needs temporal mode")
            self.term(node.left, scope, depth)
            self.term(node.right, scope, depth)
        elif isinstance(node, Negation):
            self.formula(node.body, scope, depth)
        elif isinstance(node, Binary):
            self.formula(node.left, scope, depth)
            self.formula(node.right, scope, depth)
        elif isinstance(node, Quantified):
            inner = dict(scope)
            for binder in node.binders:
                inner[binder.name] = depth
                if binder.sort:
                    self._bind_sort(binder)
                if depth > 0:
                    self._use_var(binder.name)
            self.formula(node.body, inner, depth)
        elif isinstance(node, InContext):
            self.term(node.context, scope, depth)
            self._quoted(node.body, scope, depth, None)
        elif isinstance(node, InContextTerm):
            self.term(node.context, scope, depth)
            self.term(node.term, scope, depth)
        elif isinstance(node, ModalOperator):
            self.formula(node.body, scope, depth + 1)
        else:
            raise TypeError(f"not a surface formula: {node!r}")

    def _predication(self, node: Predication, scope: Scope, depth: int) -> None:
        if node.name in scope and not node.args:
            raise QianaSyntaxError(f"variable {node.name} used as a formula", node.location)
        if node.name == TRUTH.name:
            if len(node.args) != TRUTH.arity:
                raise ArityClash(f"truth expects {TRUTH.arity} argument", node.location)
        else:
            self.check_name(node.name, node.location)
            self.record(predicate(node.name, len(node.args)), node.location)
        for arg in node.args:
            self.term(arg, scope, depth)

    def term(self, node, scope: Scope, depth: int) -> None:
        if isinstance(node, Name):
            if not node.args and node.name in scope:
                if depth > 0:
                    if scope[node.name] < depth:
                        message = (
                            f"{node.name} is bound outside the quotation and quoted as a constant; "
                            f"write quot({node.name}) to refer to its value"
                        )
                        logger.warning(message)
                        self.warnings.append(message)
                    self._use_var(node.name)
                return
            builtin = BUILTIN_TERMS.get(node.name)
            if builtin is not None:
                if len(node.args) != builtin.arity:
                    raise ArityClash(f"{node.name} expects {builtin.arity} arguments", node.location)
            else:
                self.check_name(node.name, node.location)
                self.record(function(node.name, len(node.args)), node.location)
            for arg in node.args:
                self.term(arg, scope, depth)
        elif isinstance(node, Numeral):
            self.record(numeral_symbol(node.digits, self.temporal))
        elif isinstance(node, Quotation):
            self._quoted(node.payload, scope, depth, node.location)
        elif isinstance(node, QuotEscape):
            if depth == 0:
                self.term(node.term, scope, 0)
                return
            outer = {name: level for name, level in scope.items() if level < depth}
            self.term(node.term, outer, depth - 1)
        else:
            raise TypeError(f"not a surface term: {node!r}")

    def _quoted(self, payload, scope: Scope, depth: int, location: Optional[Location]) -> None:
        if isinstance(payload, Predication):
            if not payload.args and payload.name in scope:
                self.term(Name(payload.name, (), payload.location), scope, depth + 1)
                return
            # term or formula is decided once every other occurrence is known
            if payload.name != TRUTH.name:
                self.check_name(payload.name, payload.location)
            self.payloads.append((payload, payload.location or location))
            for arg in payload.args:
                self.term(arg, scope, depth + 1)
            return
        self.formula(payload, scope, depth + 1)

    def settle_payloads(self) -> None:
        for payload, location in self.payloads:
            if payload.name == TRUTH.name:
                continue
            seen = self.symbols.get(payload.name)
            if seen is not None and seen.is_function and seen.arity == len(payload.args):
                continue
            self.record(predicate(payload.name, len(payload.args)), location)


class _Converter:
    """Second pass: surface trees to core terms and formulas."""

    def __init__(self, asig: AugmentedSignature, options: CompileOptions):
        self.asig = asig
        self.options = options

    def _binder_sort(self, sort: Optional[str]) -> Optional[str]:
        return sort if self.options.typed else None

    def formula(self, node, env: Env, outer: Tuple[Env, ...]) -> Formula:
        if isinstance(node, Predication):
            args = tuple(self.term(a, env, outer) for a in node.args)
            if node.name == TRUTH.name:
                return Atom(TRUTH, args)
            return Atom(predicate(node.name, len(args)), args)
        if isinstance(node, Equation):
            return Atom(EQ, (self.term(node.left, env, outer), self.term(node.right, env, outer)))
        if isinstance(node, Comparison):
            return Atom(COMPARISONS[node.op], (self.term(node.left, env, outer), self.term(node.right, env, outer)))
        if isinstance(node, Negation):
            return Not(self.formula(node.body, env, outer))
        if isinstance(node, Binary):
            left, right = self.formula(node.left, env, outer), self.formula(node.right, env, outer)
            if node.op == "&":
                return And(left, right)
            if node.op == "|":
                return disj(left, right)
            if node.op == "=>":
                return implies(left, right)
            return iff(left, right)
        if isinstance(node, Quantified):
            inner = dict(env)
            for binder in node.binders:
                inner[binder.name] = binder.sort
            body = self.formula(node.body, inner, outer)
            for binder in reversed(node.binders):
                sort = self._binder_sort(binder.sort)
                body = Forall(binder.name, body, sort) if node.quantifier == "forall" else exists(binder.name, body, sort)
            return body
        if isinstance(node, InContext):
            return Atom(IST, (self.term(node.context, env, outer), self._quote(node.body, env, outer)))
        if isinstance(node, InContextTerm):
            return Atom(IST, (self.term(node.context, env, outer), self.term(node.term, env, outer)))
        if isinstance(node, ModalOperator):
            raise UnsupportedConstruct(f"{node.op} is only allowed in propositional modal statements")
        raise TypeError(f"not a surface formula: {node!r}")

    def term(self, node, env: Env, outer: Tuple[Env, ...]) -> Term:
        if isinstance(node, Name):
            if not node.args and node.name in env:
                return Var(node.name)
            args = tuple(self.term(a, env, outer) for a in node.args)
            symbol = BUILTIN_TERMS.get(node.name) or function(node.name, len(args))
            return App(symbol, args)
        if isinstance(node, Numeral):
            return App(numeral_symbol(node.digits, self.options.temporal))
        if isinstance(node, Quotation):
            return self._quote(node.payload, env, outer)
        if isinstance(node, QuotEscape):
            if outer:
                return Escape(self.term(node.term, outer[-1], outer[:-1]))
            return App(QUOT, (self.term(node.term, env, outer),))
        raise TypeError(f"not a surface term: {node!r}")

    def _reads_as_term(self, payload, env: Env) -> bool:
        if not isinstance(payload, Predication):
            return False
        if not payload.args and payload.name in env:
            return True
        arity = len(payload.args)
        base = self.asig.base
        return function(payload.name, arity) in base.functions and predicate(payload.name, arity) not in base.predicates

    def _quote(self, payload, env: Env, outer: Tuple[Env, ...]) -> Term:
        inner_outer = outer + (env,)
        if self._reads_as_term(payload, env):
            core = self.term(Name(payload.name, payload.args, payload.location), env, inner_outer)
        else:
            core = self.formula(payload, env, inner_outer)
        return quote(core, self.asig)


def to_modal_formula(node) -> ModalFormula:
    """Read a propositional surface formula with box/dia as a modal formula.

    Raises:
        UnsupportedConstruct: the formula has terms, quantifiers or quotations.
    """
    if isinstance(node, Predication) and not node.args:
        return Prop(node.name)
    if isinstance(node, Negation):
        return MNot(to_modal_formula(node.body))
    if isinstance(node, ModalOperator):
        body = to_modal_formula(node.body)
        return Box(body) if node.op == "box" else Diamond(body)
    if isinstance(node, Binary):
        left, right = to_modal_formula(node.left), to_modal_formula(node.right)
        if node.op == "&":
            return MAnd(left, right)
        if node.op == "|":
            return MOr(left, right)
        if node.op == "=>":
            return MImplies(left, right)
        return MAnd(MImplies(left, right), MImplies(right, left))
    raise UnsupportedConstruct("modal statements are propositional: only propositions, connectives, box and dia")


def _has_modal_operator(formula) -> bool:
    return any(isinstance(node, ModalOperator) for node in walk(formula))


def _declared_symbol(declaration) -> Symbol:
    arity = len(declaration.args)
    if declaration.result is None:
        return predicate(declaration.name, arity)
    return function(declaration.name, arity)


def elaborate(doc: TheoryDocument, opts: Optional[CompileOptions] = None) -> ElaboratedTheory:
    """Derive the signature of a document and convert its statements.

    Args:
        doc: parsed document
        opts: command-line options; set values override ``#option`` directives

    Returns:
        ElaboratedTheory with axioms paired with their source lines.

    Raises:
        QianaError: any elaboration failure (ArityClash, NotQuotable, SignatureError,
            UnknownSort, IllTyped, UnsupportedConstruct), located at the offending statement.
    """
    options = CompileOptions.from_document(doc, opts)
    if options.modal is not None:
        if options.modal not in MODAL_SYSTEMS:
            raise UnsupportedConstruct(f"unknown modal system: {options.modal}")
        if options.typed:
            raise UnsupportedConstruct("modal mode is untyped only")
    if options.temporal:
        doc = elaborate_temporal(doc)

    collector = _Collector(temporal=options.temporal)
    if options.temporal:
        for symbol in TEMPORAL_SIGNATURE.symbols():
            collector.record(symbol)
    if options.modal:
        collector.record(BOX)

    declarations: Dict[str, SymbolType] = {}
    object_sorts: List[str] = []
    for declaration in doc.sorts:
        if declaration.is_object_sort:
            object_sorts.append(declaration.name)
            continue
        declarations[declaration.name] = SymbolType(declaration.args, declaration.result)
        if declaration.name != EQ.name:
            collector.check_name(declaration.name, declaration.location)
            collector.record(_declared_symbol(declaration), declaration.location)

    for statement in doc.statements():
        if _has_modal_operator(statement.formula) and not options.modal:
            raise UnsupportedConstruct("box and dia need modal mode (--modal or #option modal)", statement.location)
        _located(statement, collector.formula, statement.formula, {}, 0)
    collector.settle_payloads()
    if collector.uses_equality or options.disambiguation:
        collector.record(EQ)

    symbols = list(collector.symbols.values())
    base = Signature(
        frozenset(s for s in symbols if s.is_function),
        frozenset(s for s in symbols if s.is_predicate),
    )
    quotable_vars = default_quotable_vars(
        collector.used_vars,
        base.max_arity,
        requested=options.vars,
        declared=doc.quotable,
        avoid=collector.symbols.keys(),
    )
    asig = augment(base.with_quotable_vars(quotable_vars))

    tsig = None
    if options.typed:
        for name in quotable_vars:
            if name in collector.sort_clashes:
                sort, location = collector.sort_clashes[name]
                raise IllTyped(
                    f"quotable variable {name} is bound at sort {collector.var_sorts[name]} and at sort {sort}",
                    location,
                )
        var_sorts = {name: collector.var_sorts[name] for name in quotable_vars if name in collector.var_sorts}
        tsig = build_typed_signature(asig, declarations, var_sorts, object_sorts, options.explicit_equality)

    converter = _Converter(asig, options)

    def convert(statement: SurfaceAxiom) -> Formula:
        if _has_modal_operator(statement.formula):
            return embed_modal_formula(to_modal_formula(statement.formula), asig)
        formula = converter.formula(statement.formula, {}, ())
        if tsig is not None:
            formula = resolve_sorts(formula, tsig)
            ensure_well_typed(formula, tsig)
        return formula

    axioms = tuple((_located(a, convert, a), a.line) for a in doc.axioms)
    conjecture = _located(doc.conjecture, convert, doc.conjecture) if doc.conjecture else None

    logger.info(
        f"Elaborated {len(axioms)} axioms over {len(symbols)} symbols, "
        f"V = [{', '.join(quotable_vars)}]" + (", typed" if tsig else "")
    )
    return ElaboratedTheory(
        asig=asig,
        axioms=axioms,
        conjecture=conjecture,
        options=options,
        tsig=tsig,
        warnings=tuple(collector.warnings),
    )


def _located(statement: SurfaceAxiom, fn, *args):
    """Run ``fn`` and attach the statement's location to errors raised without one."""
    try:
        return fn(*args)
    except QianaError as e:
        if e.location is None:
            e.location = statement.location
        raise
