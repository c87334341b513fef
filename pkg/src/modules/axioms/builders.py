"""
Formula builders for generated axioms.

Generators talk to the helper symbols through a ``Vocabulary`` so the same
schema code serves untyped closures and, with per-sort symbol families,
typed ones.
"""

import re
from typing import Iterable, List, Optional, Sequence

from src.modules.axioms.models import Axiom, Provenance
from src.modules.signature.models import EQ, EVAL, IST, QUOT, REACH, SUBQ, TRUTH, WFT, Symbol
from src.modules.syntax.models import App, Atom, Formula, Term, Var
from src.modules.syntax.services import forall_all, guarded

_UNSAFE = re.compile(r"[^A-Za-z0-9_]")

# Sort names used by generators; untyped vocabularies ignore them.
SORT_QUOTATION = "q"
SORT_CONTEXT = "c"


class Vocabulary:
    """Helper symbols of the untyped finite closure."""

    typed = False

    def binder(self, sort: Optional[str]) -> Optional[str]:
        return None

    def reach(self, term: Term, sort: Optional[str] = None) -> Atom:
        return Atom(REACH, (term,))

    def wft(self, term: Term, sort: Optional[str] = None) -> Atom:
        return Atom(WFT, (term,))

    def eval(self, term: Term, sort: Optional[str] = None) -> App:
        return App(EVAL, (term,))

    def quot(self, term: Term, sort: Optional[str] = None) -> App:
        return App(QUOT, (term,))

    def eq(self, left: Term, right: Term, sort: Optional[str] = None) -> Atom:
        return Atom(EQ, (left, right))


UNTYPED = Vocabulary()


def variables(prefix: str, count: int) -> List[Var]:
    return [Var(f"{prefix}{index}") for index in range(1, count + 1)]


def closed(vocab: Vocabulary, binders: Sequence[Var], sorts: Sequence[Optional[str]], body: Formula) -> Formula:
    """Universally close ``body`` over ``binders`` with per-binder sorts."""
    names = [v.name for v in binders]
    return forall_all(names, body, [vocab.binder(s) for s in sorts])


def subq(term: Term, quoted_var: Term, replacement: Term) -> App:
    return App(SUBQ, (term, quoted_var, replacement))


def truth(term: Term) -> Atom:
    return Atom(TRUTH, (term,))


def ist(context: Term, term: Term) -> Atom:
    return Atom(IST, (context, term))


def const(symbol: Symbol) -> App:
    return App(symbol)


def guarded_all(
    vocab: Vocabulary,
    binders: Sequence[Var],
    sorts: Sequence[Optional[str]],
    guards: Sequence[Formula],
    body: Formula,
) -> Formula:
    return closed(vocab, binders, sorts, guarded(guards, body))


def axiom_name(tag: str, params: Iterable[str] = ()) -> str:
    """``A4FIN`` + (``x``,) -> ``a4fin_x``; always a valid TPTP lower word."""
    parts = [tag.lower()] + [str(p) for p in params]
    return _UNSAFE.sub("_", "_".join(parts))


def make_axiom(tag: str, formula: Formula, params: Sequence[str] = (), line: Optional[int] = None) -> Axiom:
    return Axiom(axiom_name(tag, params), formula, Provenance(tag, tuple(params), line))

