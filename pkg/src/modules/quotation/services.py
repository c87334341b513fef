"""
The quotation operator, its inverse and quoted substitution.

    quote        μ: T_q ⊔ L_q → 𝑻 ⊔ 𝑳
    unquote      μ⁻¹: Qv → terms and formulas, one quotation level at a time
    subst_quoted z[x̲ ← t]_q, where x̲ is a quoted-variable constant
"""

import logging
from typing import Union

from src.core.exceptions import NotInQv, NotQuotable
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
    And,
    App,
    Atom,
    Escape,
    Forall,
    Formula,
    Node,
    Not,
    Term,
    Var,
    is_formula,
    is_term,
)
from src.modules.syntax.services import _classify, qand, qforall, qneg, quot

logger = logging.getLogger(__name__)


def quote(node: Node, asig: AugmentedSignature) -> Term:
    """Quote a quotable term or formula.

    Raises:
        NotQuotable: the node contains truth, a variable outside V, a helper
            symbol, or a quoted fragment that is not in Q.
    """
    if isinstance(node, Var):
        quoted = asig.quoted_var(node.name)
        if quoted is None:
            raise NotQuotable(f"variable {node.name} is not in the quotable set V")
        return App(quoted)

    if isinstance(node, Escape):
        return quot(node.term)

    if isinstance(node, App):
        role = asig.role(node.symbol)
        if role == SymbolRole.BASE_FUNCTION:
            return App(asig.quote_symbol(node.symbol), tuple(quote(a, asig) for a in node.args))
        if role in (SymbolRole.HELPER, SymbolRole.UNKNOWN):
            raise NotQuotable(f"{node.symbol.name} is not quotable")
        if not _classify(node, asig).in_Q:
            raise NotQuotable(f"quoted fragment {node} is not a closed quotation")
        return quot(node)

    if isinstance(node, Atom):
        if node.predicate == TRUTH:
            raise NotQuotable("truth is not quotable")
        quoted = asig.quote_symbol(node.predicate)
        if quoted is None:
            raise NotQuotable(f"{node.predicate.name} is not quotable")
        return App(quoted, tuple(quote(a, asig) for a in node.args))

    if isinstance(node, Not):
        return qneg(quote(node.body, asig))
    if isinstance(node, And):
        return qand(quote(node.left, asig), quote(node.right, asig))
    if isinstance(node, Forall):
        binder = asig.quoted_var(node.var)
        if binder is None:
            raise NotQuotable(f"variable {node.var} is not in the quotable set V")
        return qforall(App(binder), quote(node.body, asig))

    raise NotQuotable(f"cannot quote {node!r}")


def subst_quoted(z: Term, qvar: Symbol, t: Term) -> Term:
    """z[x̲ ← t]_q: replace the quoted-variable constant ``qvar`` by ``t``.

    Stops at qforall binders for the same variable and never enters quot(·).
    """
    if not isinstance(z, App):
        return z
    if z.symbol == qvar:
        return t
    if z.symbol == QUOT:
        return z
    if z.symbol == QFORALL:
        binder, body = z.args
        if isinstance(binder, App) and binder.symbol == qvar:
            return z
        return App(QFORALL, (subst_quoted(binder, qvar, t), subst_quoted(body, qvar, t)))
    return App(z.symbol, tuple(subst_quoted(a, qvar, t) for a in z.args))


def unquote(t: Term, asig: AugmentedSignature) -> Union[Term, Formula]:
    """Remove one level of quotation.

    Total on Qv: shapes the recursion cannot handle are returned unchanged.

    Raises:
        NotInQv: the term is not in Qv.
    """
    if not _classify(t, asig).in_Qv:
        raise NotInQv(f"{t} is not a quotation")
    return _unquote(t, asig)


def _unquote(t: Term, asig: AugmentedSignature) -> Union[Term, Formula]:
    if not isinstance(t, App):
        return t

    role = asig.role(t.symbol)
    if role == SymbolRole.QUOTED_VARIABLE:
        return Var(asig.original(t.symbol))
    if role == SymbolRole.QUOT:
        return t.args[0]
    if role == SymbolRole.QUOTED_FUNCTION:
        args = [_unquote(a, asig) for a in t.args]
        if all(is_term(a) for a in args):
            return App(asig.original(t.symbol), tuple(args))
        return t
    if role == SymbolRole.QUOTED_PREDICATE:
        args = [_unquote(a, asig) for a in t.args]
        if all(is_term(a) for a in args):
            return Atom(asig.original(t.symbol), tuple(args))
        return t
    if t.symbol == QNEG:
        body = _unquote(t.args[0], asig)
        return Not(body) if is_formula(body) else t
    if t.symbol == QAND:
        left, right = (_unquote(a, asig) for a in t.args)
        return And(left, right) if is_formula(left) and is_formula(right) else t
    if t.symbol == QFORALL:
        binder, body = t.args
        if not (isinstance(binder, App) and asig.role(binder.symbol) == SymbolRole.QUOTED_VARIABLE):
            return t
        name = asig.original(binder.symbol)
        inner = _unquote(subst_quoted(body, binder.symbol, quot(Var(name))), asig)
        return Forall(name, inner) if is_formula(inner) else t
    return t
