"""
Builders, connective sugar, free variables, substitution and the
quotation-set classifiers.
"""

from dataclasses import replace
from functools import reduce
from typing import FrozenSet, Iterable, Iterator, Optional, Sequence, Set

from src.modules.signature.models import (
    QAND,
    QFORALL,
    QNEG,
    QUOT,
    TRUTH,
    AugmentedSignature,
    Symbol,
    SymbolRole,
)
from src.modules.syntax.models import (
    NO_MEMBERSHIP,
    And,
    App,
    Atom,
    Escape,
    Forall,
    Formula,
    MembershipFlags,
    Node,
    Not,
    Term,
    Var,
)


# Builders

def app(symbol: Symbol, *args: Term) -> App:
    return App(symbol, tuple(args))


def atom(predicate: Symbol, *args: Term) -> Atom:
    return Atom(predicate, tuple(args))


def var(name: str) -> Var:
    return Var(name)


def conj(*formulas: Formula) -> Formula:
    """Right-nested conjunction of one or more formulas."""
    if not formulas:
        raise ValueError("conj needs at least one formula")
    return reduce(lambda acc, f: And(f, acc), reversed(formulas[:-1]), formulas[-1])


def disj(left: Formula, right: Formula) -> Formula:
    return Not(And(Not(left), Not(right)))


def implies(left: Formula, right: Formula) -> Formula:
    return disj(Not(left), right)


def iff(left: Formula, right: Formula) -> Formula:
    return And(implies(left, right), implies(right, left))


def exists(name: str, body: Formula, sort: Optional[str] = None) -> Formula:
    return Not(Forall(name, Not(body), sort))


def forall_all(names: Sequence[str], body: Formula, sorts: Optional[Sequence[Optional[str]]] = None) -> Formula:
    sorts = list(sorts) if sorts is not None else [None] * len(names)
    for name, sort in zip(reversed(list(names)), reversed(sorts)):
        body = Forall(name, body, sort)
    return body


def exists_all(names: Sequence[str], body: Formula, sorts: Optional[Sequence[Optional[str]]] = None) -> Formula:
    sorts = list(sorts) if sorts is not None else [None] * len(names)
    for name, sort in zip(reversed(list(names)), reversed(sorts)):
        body = exists(name, body, sort)
    return body


def guarded(guards: Sequence[Formula], body: Formula) -> Formula:
    """``g1 ∧ … ∧ gn → body``; just ``body`` when there are no guards."""
    if not guards:
        return body
    return implies(conj(*guards), body)


# Quoted connective sugar (terms)

def qand(left: Term, right: Term) -> App:
    return App(QAND, (left, right))


def qneg(body: Term) -> App:
    return App(QNEG, (body,))


def qforall(quoted_var: Term, body: Term) -> App:
    return App(QFORALL, (quoted_var, body))


def quot(term: Term) -> App:
    return App(QUOT, (term,))


def qor(left: Term, right: Term) -> App:
    return qneg(qand(qneg(left), qneg(right)))


def qimplies(left: Term, right: Term) -> App:
    return qor(qneg(left), right)


def qiff(left: Term, right: Term) -> App:
    return qand(qimplies(left, right), qimplies(right, left))


# Traversal

def free_vars(node: Node) -> FrozenSet[str]:
    """Free variables; a variable under quot(x) counts as free."""
    if isinstance(node, Var):
        return frozenset({node.name})
    if isinstance(node, Escape):
        return free_vars(node.term)
    if isinstance(node, (App, Atom)):
        return frozenset().union(*(free_vars(a) for a in node.args))
    if isinstance(node, Not):
        return free_vars(node.body)
    if isinstance(node, And):
        return free_vars(node.left) | free_vars(node.right)
    if isinstance(node, Forall):
        return free_vars(node.body) - {node.var}
    raise TypeError(f"not a term or formula: {node!r}")


def subterms(node: Node) -> Iterator[Term]:
    """All terms occurring in a node, outermost first."""
    if isinstance(node, (Var, App, Escape)):
        yield node
        children = node.args if isinstance(node, App) else ((node.term,) if isinstance(node, Escape) else ())
        for child in children:
            yield from subterms(child)
    elif isinstance(node, Atom):
        for child in node.args:
            yield from subterms(child)
    elif isinstance(node, Not):
        yield from subterms(node.body)
    elif isinstance(node, And):
        yield from subterms(node.left)
        yield from subterms(node.right)
    elif isinstance(node, Forall):
        yield from subterms(node.body)


def atoms(formula: Formula) -> Iterator[Atom]:
    if isinstance(formula, Atom):
        yield formula
    elif isinstance(formula, Not):
        yield from atoms(formula.body)
    elif isinstance(formula, And):
        yield from atoms(formula.left)
        yield from atoms(formula.right)
    elif isinstance(formula, Forall):
        yield from atoms(formula.body)


def symbols_of(node: Node) -> Set[Symbol]:
    """Every function and predicate symbol occurring in a node."""
    found: Set[Symbol] = set()
    for term in subterms(node):
        if isinstance(term, App):
            found.add(term.symbol)
    if not isinstance(node, (Var, App, Escape)):
        found.update(a.predicate for a in atoms(node))
    return found


def fresh_name(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    if base not in taken:
        return base
    index = 1
    while f"{base}_{index}" in taken:
        index += 1
    return f"{base}_{index}"


def substitute(node: Node, name: str, replacement: Term) -> Node:
    """Capture-avoiding substitution ``node[name ← replacement]``."""
    if isinstance(node, Var):
        return replacement if node.name == name else node
    if isinstance(node, Escape):
        return Escape(substitute(node.term, name, replacement))
    if isinstance(node, App):
        return App(node.symbol, tuple(substitute(a, name, replacement) for a in node.args))
    if isinstance(node, Atom):
        return Atom(node.predicate, tuple(substitute(a, name, replacement) for a in node.args))
    if isinstance(node, Not):
        return Not(substitute(node.body, name, replacement))
    if isinstance(node, And):
        return And(substitute(node.left, name, replacement), substitute(node.right, name, replacement))
    if isinstance(node, Forall):
        if node.var == name or name not in free_vars(node.body):
            return node
        incoming = free_vars(replacement)
        if node.var in incoming:
            renamed = fresh_name(node.var, incoming | free_vars(node.body) | {name})
            body = substitute(node.body, node.var, Var(renamed))
            return Forall(renamed, substitute(body, name, replacement), node.sort)
        return Forall(node.var, substitute(node.body, name, replacement), node.sort)
    raise TypeError(f"not a term or formula: {node!r}")


# Quotation-set membership

def classify(t: Term, asig: AugmentedSignature) -> MembershipFlags:
    """Membership flags of a term, by structural recursion on the quotation grammars."""
    return replace(_classify(t, asig), is_quotable=is_quotable(t, asig))


def _classify(t: Term, asig: AugmentedSignature) -> MembershipFlags:
    if not isinstance(t, App):
        return NO_MEMBERSHIP

    role = asig.role(t.symbol)
    children = [_classify(a, asig) for a in t.args]

    def every(attr: str) -> bool:
        return all(getattr(c, attr) for c in children)

    if role == SymbolRole.QUOTED_VARIABLE:
        return MembershipFlags(in_Q=True, in_Qv=True, in_boldT=True, in_boldTv=True)
    if role == SymbolRole.QUOTED_FUNCTION:
        return MembershipFlags(
            in_Q=every("in_Q"), in_Qv=every("in_Qv"),
            in_boldT=every("in_boldT"), in_boldTv=every("in_boldTv"),
        )
    if role == SymbolRole.QUOTED_PREDICATE:
        return MembershipFlags(
            in_Q=every("in_Q"), in_Qv=every("in_Qv"),
            in_boldL=every("in_boldT"), in_boldLv=every("in_boldTv"),
        )
    if t.symbol in (QAND, QNEG):
        return MembershipFlags(
            in_Q=every("in_Q"), in_Qv=every("in_Qv"),
            in_boldL=every("in_boldL"), in_boldLv=every("in_boldLv"),
        )
    if t.symbol == QFORALL:
        binder = isinstance(t.args[0], App) and asig.role(t.args[0].symbol) == SymbolRole.QUOTED_VARIABLE
        body = children[1]
        return MembershipFlags(
            in_Q=binder and body.in_Q, in_Qv=binder and body.in_Qv,
            in_boldL=binder and body.in_boldL, in_boldLv=binder and body.in_boldLv,
        )
    if t.symbol == QUOT:
        inner = t.args[0]
        escaped_var = isinstance(inner, Var) and asig.is_quotable_var(inner.name)
        body = children[0]
        return MembershipFlags(
            in_Q=body.in_Q, in_Qv=body.in_Qv or escaped_var,
            in_boldT=body.in_Q, in_boldTv=body.in_Q or escaped_var,
        )
    return NO_MEMBERSHIP


def is_quotable(node: Node, asig: AugmentedSignature) -> bool:
    """Membership in T_q (terms) or L_q (formulas)."""
    if isinstance(node, Var):
        return asig.is_quotable_var(node.name)
    if isinstance(node, Escape):
        return True
    if isinstance(node, App):
        role = asig.role(node.symbol)
        if role == SymbolRole.BASE_FUNCTION:
            return all(is_quotable(a, asig) for a in node.args)
        if role in (SymbolRole.HELPER, SymbolRole.UNKNOWN):
            return False
        return _classify(node, asig).in_Q
    if isinstance(node, Atom):
        if node.predicate == TRUTH or asig.quote_symbol(node.predicate) is None:
            return False
        return all(is_quotable(a, asig) for a in node.args)
    if isinstance(node, Not):
        return is_quotable(node.body, asig)
    if isinstance(node, And):
        return is_quotable(node.left, asig) and is_quotable(node.right, asig)
    if isinstance(node, Forall):
        return asig.is_quotable_var(node.var) and is_quotable(node.body, asig)
    return False
