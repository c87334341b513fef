"""
Typechecking and the typed finite closure.

The typed closure reuses the untyped schema builders through
``TypedVocabulary``, which hands out the per-sort helper family for each
occurrence. Where a schema leaves the sort of a helper implicit, the choice
made is recorded in the manifest.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from src.core.exceptions import ArityClash, IllTyped, SignatureError, UnknownSort
from src.core.utils import Diagnostic
from src.modules.axioms.builders import Vocabulary, closed, const, guarded_all, make_axiom, truth, variables
from src.modules.axioms.models import (
    PACK_HELPER,
    PACK_IST,
    PACK_OPTIONAL,
    PACK_TEMPORAL,
    PACK_TRUTH,
    PACK_USER,
    TYPED_PREFIX,
    Axiom,
    AxiomOptions,
    AxiomSet,
    concat,
    make_set,
)
from src.modules.axioms.services import (
    UserAxiom,
    connective_truth_schemas,
    context_quantifier_schema,
    disambiguation_schemas,
    explosion_schema,
    ist_schemas,
    quantifier_truth_schema,
    sub_schemas,
    user_axioms,
)
from src.modules.signature.models import (
    EQ,
    EVAL,
    IDENTIFIER,
    QAND,
    QNEG,
    QUOT,
    REACH,
    SUBQ,
    TRUTH,
    WFT,
    AugmentedSignature,
    Symbol,
)
from src.modules.syntax.models import And, App, Atom, Escape, Forall, Formula, Node, Not, Term, Var
from src.modules.syntax.services import conj, iff, implies, qand, qforall, qneg
from src.modules.temporal.services import event_calculus_schemas
from src.modules.typed.models import (
    BASE_SORTS,
    FIXED_TYPES,
    FORMULA_SORT,
    O,
    Q,
    SymbolType,
    TypedSignature,
    eq_symbol,
    eval_symbol,
    quot_symbol,
    reach_symbol,
    wft_symbol,
)

logger = logging.getLogger(__name__)

T = TYPED_PREFIX


class TypedVocabulary(Vocabulary):
    """Per-sort helper families; native equality stays the polymorphic ``=``."""

    typed = True

    def __init__(self, tsig: TypedSignature):
        self.tsig = tsig

    def binder(self, sort: Optional[str]) -> Optional[str]:
        return sort

    def reach(self, term: Term, sort: Optional[str] = None) -> Atom:
        return Atom(reach_symbol(sort or Q), (term,))

    def wft(self, term: Term, sort: Optional[str] = None) -> Atom:
        return Atom(wft_symbol(sort or Q), (term,))

    def eval(self, term: Term, sort: Optional[str] = None) -> App:
        return App(eval_symbol(sort or Q), (term,))

    def quot(self, term: Term, sort: Optional[str] = None) -> App:
        return App(quot_symbol(sort or Q), (term,))

    def eq(self, left: Term, right: Term, sort: Optional[str] = None) -> Atom:
        if self.tsig.explicit_equality:
            return Atom(eq_symbol(sort or Q), (left, right))
        return Atom(EQ, (left, right))


# Signatures

def build_typed_signature(
    asig: AugmentedSignature,
    declarations: Mapping[str, SymbolType],
    var_sorts: Optional[Mapping[str, str]] = None,
    object_sorts: Sequence[str] = (),
    explicit_equality: bool = False,
) -> TypedSignature:
    """Attach δ to an augmented signature.

    Args:
        asig: the untyped augmented signature
        declarations: symbol name -> declared type, from ``#sort`` directives
        var_sorts: sort of each quotable variable; missing ones default to o
        object_sorts: user subsorts of o
        explicit_equality: add the eq_γ family

    Raises:
        UnknownSort: a symbol has no declaration or a declaration names an unknown sort.
        ArityClash: a declaration disagrees with how the symbol is used.
        SignatureError: a subsort or symbol name collides with a sort or a helper family.
    """
    object_sorts = tuple(dict.fromkeys(object_sorts))
    for sort in object_sorts:
        if sort in BASE_SORTS or not IDENTIFIER.match(sort):
            raise SignatureError(f"invalid object sort name: {sort}")
    sorts = BASE_SORTS + object_sorts

    def known(sort: str) -> str:
        if sort not in sorts:
            raise UnknownSort(f"unknown sort: {sort}")
        return sort

    family_names = {
        family(sort).name
        for sort in sorts
        for family in (quot_symbol, eval_symbol, reach_symbol, wft_symbol, eq_symbol)
    }
    resolved: Dict[Symbol, SymbolType] = {}
    for symbol in asig.base_functions + asig.base_predicates:
        if symbol.name in family_names:
            raise SignatureError(f"{symbol.name} clashes with a per-sort helper symbol")
        if symbol in FIXED_TYPES or symbol == EQ:
            continue
        declared = declarations.get(symbol.name)
        if declared is None:
            raise UnknownSort(f"no sort declaration for {symbol}")
        if declared.is_predicate != symbol.is_predicate or len(declared.args) != symbol.arity:
            raise ArityClash(f"{symbol} is used as declared {declared}")
        for sort in declared.args + ((declared.result,) if declared.result else ()):
            known(sort)
        resolved[symbol] = declared

    var_sorts = dict(var_sorts or {})
    for name in asig.quotable_vars:
        var_sorts[name] = known(var_sorts.get(name, O))

    equality = declarations.get(EQ.name)
    tsig = TypedSignature(
        asig=asig,
        declarations=resolved,
        var_sorts=var_sorts,
        object_sorts=object_sorts,
        equality_sort=known(equality.args[0]) if equality and equality.args else O,
        explicit_equality=explicit_equality,
    )
    logger.debug(f"Typed signature over sorts {', '.join(sorts)} with {len(resolved)} declared symbols")
    return tsig


# Typechecking

@dataclass(frozen=True)
class TypeCheckResult:
    sort: Optional[str]
    diagnostics: Tuple[Diagnostic, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.diagnostics


def _check(node: Node, tsig: TypedSignature, env: Dict[str, str], out: List[Diagnostic]) -> Optional[str]:
    if isinstance(node, Var):
        sort = env.get(node.name)
        if sort is None:
            out.append(Diagnostic("unsorted", f"variable {node.name} has no sort", node.name))
        return sort

    if isinstance(node, Escape) or (isinstance(node, App) and node.symbol == QUOT):
        out.append(Diagnostic("unresolved", f"unresolved quot escape in {node}", "quot"))
        return Q

    if isinstance(node, (App, Atom)):
        symbol = node.symbol if isinstance(node, App) else node.predicate
        actual = [_check(a, tsig, env, out) for a in node.args]
        if symbol == EQ:
            left, right = actual
            if left and right and left != right:
                out.append(Diagnostic("ill_typed", f"= between {left} and {right}: expected {left}, got {right}", "="))
            return FORMULA_SORT
        declared = tsig.symbol_type(symbol)
        if declared is None:
            out.append(Diagnostic("unknown_symbol", f"no type for {symbol}", symbol.name))
            return None
        for index, (expected, got) in enumerate(zip(declared.args, actual), start=1):
            if got is not None and got != expected:
                out.append(Diagnostic(
                    "ill_typed",
                    f"{symbol.name} argument {index}: expected {expected}, got {got}",
                    symbol.name,
                ))
        return FORMULA_SORT if declared.is_predicate else declared.result

    if isinstance(node, Not):
        _check(node.body, tsig, env, out)
        return FORMULA_SORT
    if isinstance(node, And):
        _check(node.left, tsig, env, out)
        _check(node.right, tsig, env, out)
        return FORMULA_SORT
    if isinstance(node, Forall):
        if node.sort is None:
            out.append(Diagnostic("unsorted", f"binder {node.var} has no sort", node.var))
        elif not tsig.is_sort(node.sort):
            out.append(Diagnostic("unknown_sort", f"unknown sort {node.sort} for {node.var}", node.sort))
        _check(node.body, tsig, {**env, node.var: node.sort}, out)
        return FORMULA_SORT
    raise TypeError(f"not a term or formula: {node!r}")


def typecheck(node: Node, tsig: TypedSignature, env: Optional[Mapping[str, str]] = None) -> TypeCheckResult:
    """Sort of a term (``$o`` for formulas) plus every ill-typed application found."""
    diagnostics: List[Diagnostic] = []
    sort = _check(node, tsig, dict(env or {}), diagnostics)
    return TypeCheckResult(sort, tuple(diagnostics))


def ensure_well_typed(formula: Formula, tsig: TypedSignature) -> None:
    """Raises IllTyped with every diagnostic when the formula does not typecheck."""
    result = typecheck(formula, tsig)
    if not result.ok:
        raise IllTyped("; ".join(d.message for d in result.diagnostics))


def resolve_sorts(node: Node, tsig: TypedSignature, env: Optional[Mapping[str, str]] = None) -> Node:
    """Turn untyped quot(e) into quot_γ by the sort of e, and = into eq_γ under explicit equality.

    Raises:
        IllTyped: the sort of an escaped term cannot be determined.
    """
    env = dict(env or {})
    vocab = TypedVocabulary(tsig)

    if isinstance(node, Var):
        return node
    if isinstance(node, Escape):
        node = App(QUOT, (node.term,))
    if isinstance(node, App):
        args = tuple(resolve_sorts(a, tsig, env) for a in node.args)
        if node.symbol == QUOT:
            sort = typecheck(args[0], tsig, env).sort
            if sort is None:
                raise IllTyped(f"cannot determine the sort of {args[0]} under quot")
            return vocab.quot(args[0], sort)
        return App(node.symbol, args)
    if isinstance(node, Atom):
        args = tuple(resolve_sorts(a, tsig, env) for a in node.args)
        if node.predicate == EQ and tsig.explicit_equality:
            sort = typecheck(args[0], tsig, env).sort or tsig.equality_sort
            return vocab.eq(args[0], args[1], sort)
        return Atom(node.predicate, args)
    if isinstance(node, Not):
        return Not(resolve_sorts(node.body, tsig, env))
    if isinstance(node, And):
        return And(resolve_sorts(node.left, tsig, env), resolve_sorts(node.right, tsig, env))
    if isinstance(node, Forall):
        return Forall(node.var, resolve_sorts(node.body, tsig, {**env, node.var: node.sort}), node.sort)
    raise TypeError(f"not a term or formula: {node!r}")


def erase_sorts(node: Node, tsig: TypedSignature) -> Node:
    """Collapse every per-sort family onto its untyped symbol and drop binder sorts."""
    collapse: Dict[Symbol, Symbol] = {}
    for sort in tsig.sorts:
        collapse.update({
            quot_symbol(sort): QUOT,
            eval_symbol(sort): EVAL,
            reach_symbol(sort): REACH,
            wft_symbol(sort): WFT,
            eq_symbol(sort): EQ,
        })

    def erase(n: Node) -> Node:
        if isinstance(n, Var):
            return n
        if isinstance(n, App):
            return App(collapse.get(n.symbol, n.symbol), tuple(erase(a) for a in n.args))
        if isinstance(n, Atom):
            return Atom(collapse.get(n.predicate, n.predicate), tuple(erase(a) for a in n.args))
        if isinstance(n, Not):
            return Not(erase(n.body))
        if isinstance(n, And):
            return And(erase(n.left), erase(n.right))
        if isinstance(n, Forall):
            return Forall(n.var, erase(n.body))
        return n

    return erase(node)


# Typed schemas

def typed_functions(tsig: TypedSignature) -> List[Symbol]:
    """F with quot replaced by the quot_γ family."""
    return [f for f in tsig.asig.functions if f != QUOT] + [quot_symbol(s) for s in tsig.sorts]


def typed_substitution_functions(tsig: TypedSignature) -> List[Symbol]:
    """Only quotation-valued symbols can sit under subq."""
    asig = tsig.asig
    return asig.quoted_function_symbols + asig.quoted_predicate_symbols + [QAND, QNEG]


def typed_equality_schemas(tsig: TypedSignature, vocab: TypedVocabulary) -> List[Axiom]:
    x, y, z = Var("X"), Var("Y"), Var("Z")
    axioms: List[Axiom] = []
    for sort in tsig.sorts:
        xy, yz, xz = vocab.eq(x, y, sort), vocab.eq(y, z, sort), vocab.eq(x, z, sort)
        axioms.append(make_axiom(T + "A12", closed(vocab, [x], [sort], vocab.eq(x, x, sort)), [sort]))
        axioms.append(make_axiom(T + "A13", closed(vocab, [x, y], [sort] * 2, implies(xy, vocab.eq(y, x, sort))), [sort]))
        axioms.append(make_axiom(T + "A14", closed(vocab, [x, y, z], [sort] * 3, implies(And(xy, yz), xz)), [sort]))

    functions = typed_functions(tsig) + [eval_symbol(s) for s in tsig.sorts] + [SUBQ]
    predicates = (
        [p for p in tsig.asig.base_predicates if p != EQ]
        + [TRUTH]
        + [reach_symbol(s) for s in tsig.sorts]
        + [wft_symbol(s) for s in tsig.sorts]
    )
    for symbol in functions + predicates:
        declared = tsig.symbol_type(symbol)
        if symbol.arity == 0 or declared is None:
            continue
        xs, ys = variables("X", symbol.arity), variables("Y", symbol.arity)
        premise = conj(*[vocab.eq(a, b, s) for a, b, s in zip(xs, ys, declared.args)])
        if declared.is_predicate:
            body = implies(premise, iff(Atom(symbol, xs), Atom(symbol, ys)))
            tag = "A16"
        else:
            body = implies(premise, vocab.eq(App(symbol, xs), App(symbol, ys), declared.result))
            tag = "A15"
        axioms.append(make_axiom(T + tag, closed(vocab, xs + ys, list(declared.args) * 2, body), [symbol.name]))
    return axioms


def typed_reach_schemas(tsig: TypedSignature, vocab: TypedVocabulary) -> List[Axiom]:
    x = Var("X")
    axioms = [
        make_axiom(T + "A17", closed(vocab, [x], [sort], vocab.reach(vocab.quot(x, sort), Q)), [sort])
        for sort in tsig.sorts
    ]
    for f in typed_functions(tsig):
        declared = tsig.symbol_type(f)
        ts = variables("T", f.arity)
        formula = guarded_all(vocab, ts, declared.args,
                              [vocab.reach(t, s) for t, s in zip(ts, declared.args)],
                              vocab.reach(App(f, ts), declared.result))
        axioms.append(make_axiom(T + "A18", formula, [f.name]))
    return axioms


def typed_wft_schemas(tsig: TypedSignature, vocab: TypedVocabulary) -> List[Axiom]:
    y = Var("Y")
    axioms = [
        make_axiom(T + "A19", closed(vocab, [y], [sort], vocab.wft(vocab.quot(y, sort), sort)), [sort])
        for sort in tsig.sorts
    ]
    for name, quoted in tsig.asig.quoted_vars:
        axioms.append(make_axiom(T + "A20", vocab.wft(const(quoted), tsig.var_sorts[name]), [name]))
    for f, quoted in tsig.asig.quoted_functions:
        declared = tsig.base_type(f)
        ts = variables("T", f.arity)
        formula = guarded_all(vocab, ts, [Q] * f.arity,
                              [vocab.wft(t, s) for t, s in zip(ts, declared.args)],
                              vocab.wft(App(quoted, ts), declared.result))
        axioms.append(make_axiom(T + "A21", formula, [quoted.name]))
    return axioms


def typed_eval_schemas(tsig: TypedSignature, vocab: TypedVocabulary) -> Tuple[List[Axiom], List[str]]:
    """Typed A22-A28 and the sort readings chosen for the unsubscripted helpers."""
    asig = tsig.asig
    t = Var("T")
    t1, t2 = variables("T", 2)
    axioms: List[Axiom] = []
    resolutions: List[str] = []

    for sort in tsig.sorts:
        formula = guarded_all(vocab, [t], [sort], [vocab.reach(t, sort)],
                              vocab.eq(vocab.eval(vocab.quot(t, sort), sort), t, sort))
        axioms.append(make_axiom(T + "A22", formula, [sort]))

    for f, quoted in asig.quoted_functions:
        declared = tsig.base_type(f)
        ts = variables("T", f.arity)
        body = vocab.eq(
            vocab.eval(App(quoted, ts), declared.result),
            App(f, [vocab.eval(a, s) for a, s in zip(ts, declared.args)]),
            declared.result,
        )
        axioms.append(make_axiom(T + "A23", guarded_all(vocab, ts, [Q] * f.arity,
                                                        [vocab.reach(a, Q) for a in ts], body), [f.name]))
        readings = ", ".join(f"eval_{s}" for s in declared.args) or "none"
        resolutions.append(
            f"{T}A23[{f.name}]: E read as eval_{declared.result} on the result and {readings} on arguments; Reach as reach_q"
        )

    identity: List[Tuple[str, Formula, Sequence[str]]] = []
    for quoted in asig.quoted_predicate_symbols:
        ts = variables("T", quoted.arity)
        body = vocab.eq(vocab.eval(App(quoted, ts), Q), App(quoted, ts), Q)
        identity.append(("A24", guarded_all(vocab, ts, [Q] * quoted.arity,
                                            [vocab.reach(a, Q) for a in ts], body), [quoted.name]))
    identity.append(("A25", closed(vocab, [t1, t2], [Q, Q],
                                   vocab.eq(vocab.eval(qand(t1, t2), Q), qand(t1, t2), Q)), []))
    identity.append(("A26", closed(vocab, [t1, t2], [Q, Q],
                                   vocab.eq(vocab.eval(qforall(t1, t2), Q), qforall(t1, t2), Q)), []))
    identity.append(("A27", closed(vocab, [t], [Q], vocab.eq(vocab.eval(qneg(t), Q), qneg(t), Q)), []))
    for name, quoted in asig.quoted_vars:
        identity.append(("A28", vocab.eq(vocab.eval(const(quoted), Q), const(quoted), Q), [name]))
    axioms.extend(make_axiom(T + tag, formula, params) for tag, formula, params in identity)
    resolutions.append(f"{T}A24-{T}A28: E read as eval_q")
    return axioms, resolutions


def typed_truth_schemas(tsig: TypedSignature, vocab: TypedVocabulary) -> List[Axiom]:
    axioms: List[Axiom] = []
    for p, quoted in tsig.asig.quoted_predicates:
        declared = tsig.base_type(p)
        ts = variables("T", p.arity)
        evaluated = [vocab.eval(a, s) for a, s in zip(ts, declared.args)]
        reading = vocab.eq(*evaluated, tsig.equality_sort) if p == EQ else Atom(p, evaluated)
        formula = guarded_all(vocab, ts, [Q] * p.arity,
                              [vocab.wft(a, s) for a, s in zip(ts, declared.args)],
                              iff(truth(App(quoted, ts)), reading))
        axioms.append(make_axiom(T + "A1FIN", formula, [p.name]))
    axioms.extend(connective_truth_schemas(vocab, T))
    for name, qv in tsig.asig.quoted_vars:
        axioms.append(quantifier_truth_schema(name, qv, vocab, tsig.var_sorts[name], T))
    for name, qv in tsig.asig.quoted_vars:
        axioms.append(context_quantifier_schema(name, qv, vocab, tsig.var_sorts[name], T))
    return axioms


def gen_typed_helper_axioms(tsig: TypedSignature, opts: Optional[AxiomOptions] = None) -> AxiomSet:
    opts = opts or AxiomOptions()
    vocab = TypedVocabulary(tsig)
    axioms: List[Axiom] = []
    if tsig.explicit_equality:
        axioms.extend(typed_equality_schemas(tsig, vocab))
    axioms.extend(typed_reach_schemas(tsig, vocab))
    axioms.extend(typed_wft_schemas(tsig, vocab))
    eval_axioms, resolutions = typed_eval_schemas(tsig, vocab)
    axioms.extend(eval_axioms)
    axioms.extend(sub_schemas(tsig.asig, typed_substitution_functions(tsig), vocab, T, quot_sorts=tsig.sorts))
    return make_set(axioms, PACK_HELPER, tsig.asig, opts, resolutions)


def gen_typed_event_calculus_axioms(tsig: TypedSignature) -> AxiomSet:
    return make_set(event_calculus_schemas(TypedVocabulary(tsig), T), PACK_TEMPORAL, tsig.asig)


def gen_typed_closure(
    theory: Iterable[UserAxiom],
    tsig: TypedSignature,
    opts: Optional[AxiomOptions] = None,
    temporal: bool = False,
) -> AxiomSet:
    """Typed analogue of the Qiana closure.

    Args:
        theory: typed closed formulas, optionally paired with source lines
        tsig: typed signature
        opts: optional packs; equality mode is taken from ``tsig``
        temporal: append the typed event-calculus axioms

    Raises:
        IllTyped: a theory formula does not typecheck.
    """
    opts = opts or AxiomOptions(explicit_equality=tsig.explicit_equality)
    vocab = TypedVocabulary(tsig)

    resolved: List[UserAxiom] = []
    for item in theory:
        formula, line = item if isinstance(item, tuple) else (item, None)
        formula = resolve_sorts(formula, tsig)
        ensure_well_typed(formula, tsig)
        resolved.append((formula, line))

    optional: List[Axiom] = []
    if opts.explosion:
        optional.append(explosion_schema(vocab, T))
    if opts.disambiguation:
        optional.extend(disambiguation_schemas(tsig.asig, vocab, T))

    parts = [
        make_set(user_axioms(resolved), PACK_USER, tsig.asig, opts),
        make_set(ist_schemas(vocab, T), PACK_IST, tsig.asig),
        gen_typed_helper_axioms(tsig, opts),
        make_set(typed_truth_schemas(tsig, vocab), PACK_TRUTH, tsig.asig),
        make_set(optional, PACK_OPTIONAL, tsig.asig, opts),
    ]
    if temporal:
        parts.append(gen_typed_event_calculus_axioms(tsig))
    closure = concat(*parts)
    logger.info(f"Typed Qiana closure: {len(closure)} axioms over {len(tsig.sorts)} sorts")
    return closure
