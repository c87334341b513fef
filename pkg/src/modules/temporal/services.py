"""
Event-calculus axioms and the temporal elaboration pass.
"""

import logging
from typing import List, Optional

from src.core.exceptions import ArityClash
from src.modules.axioms.builders import UNTYPED, Vocabulary, closed, make_axiom
from src.modules.axioms.models import PACK_TEMPORAL, Axiom, AxiomSet, make_set
from src.modules.frontend.models import Name, Predication, TheoryDocument, rewrite, walk
from src.modules.signature.models import AugmentedSignature
from src.modules.syntax.models import And, App, Atom, Formula, Not, Var
from src.modules.syntax.services import conj, disj, exists_all, iff, implies, qneg
from src.modules.temporal.models import (
    CLIPPED,
    DECLIPPED,
    HAPPENS,
    HOLDS_AT,
    INITIALLY_P,
    INITIATES,
    LEQ,
    LT,
    RELEASES,
    TEMPORAL_SIGNATURE,
    TERMINATES,
    TIME_ZERO,
)
from src.modules.typed.models import SortTag

logger = logging.getLogger(__name__)

FLUENT = SortTag.QUOTATION.value
INSTANT = SortTag.TIME.value
ACTION = SortTag.ACTION.value


def _holds(f, t) -> Atom:
    return Atom(HOLDS_AT, (f, t))


def _happens(a, t1, t2) -> Atom:
    return Atom(HAPPENS, (a, t1, t2))


def _lt(t1, t2) -> Atom:
    return Atom(LT, (t1, t2))


def _clipping(boundary, vocab: Vocabulary, change, release) -> Formula:
    """EC3/EC6: ``boundary(t1, f, t4)`` iff some event in between changes f."""
    t1, f, t4 = Var("T1"), Var("F"), Var("T4")
    a, t2, t3 = Var("A"), Var("T2"), Var("T3")
    witness = conj(
        _happens(a, t2, t3),
        disj(Atom(change, (a, f, t2)), Atom(release, (a, f, t2))),
        _lt(t1, t3),
        _lt(t2, t4),
    )
    body = iff(
        Atom(boundary, (t1, f, t4)),
        exists_all([a.name, t2.name, t3.name], witness, [vocab.binder(s) for s in (ACTION, INSTANT, INSTANT)]),
    )
    return closed(vocab, [t1, f, t4], [INSTANT, FLUENT, INSTANT], body)


def event_calculus_schemas(vocab: Vocabulary = UNTYPED, prefix: str = "") -> List[Axiom]:
    f, t = Var("F"), Var("T")
    a, t1, t2, t3 = Var("A"), Var("T1"), Var("T2"), Var("T3")
    zero = App(TIME_ZERO)

    ec1 = closed(vocab, [f, t], [FLUENT, INSTANT], implies(
        And(Atom(INITIALLY_P, (f,)), Not(Atom(CLIPPED, (zero, f, t)))),
        _holds(f, t),
    ))
    ec2 = closed(vocab, [f, t3, a, t1, t2], [FLUENT, INSTANT, ACTION, INSTANT, INSTANT], implies(
        conj(_happens(a, t1, t2), Atom(INITIATES, (a, f, t1)), Not(Atom(CLIPPED, (t1, f, t3))), _lt(t2, t3)),
        _holds(f, t3),
    ))
    ec3 = _clipping(CLIPPED, vocab, TERMINATES, RELEASES)
    ec4 = closed(vocab, [f, t], [FLUENT, INSTANT], implies(
        And(Atom(INITIALLY_P, (qneg(f),)), Not(Atom(DECLIPPED, (zero, f, t)))),
        Not(_holds(f, t)),
    ))
    ec5 = closed(vocab, [f, t3, a, t1, t2], [FLUENT, INSTANT, ACTION, INSTANT, INSTANT], implies(
        conj(_happens(a, t1, t2), Atom(TERMINATES, (a, f, t1)), Not(Atom(DECLIPPED, (t1, f, t3))), _lt(t2, t3)),
        Not(_holds(f, t3)),
    ))
    ec6 = _clipping(DECLIPPED, vocab, INITIATES, RELEASES)
    ec7 = closed(vocab, [a, t1, t2], [ACTION, INSTANT, INSTANT], implies(
        _happens(a, t1, t2),
        Atom(LEQ, (t1, t2)),
    ))
    formulas = [ec1, ec2, ec3, ec4, ec5, ec6, ec7]
    return [make_axiom(f"{prefix}EC{index}", formula) for index, formula in enumerate(formulas, start=1)]


def gen_event_calculus_axioms(asig: Optional[AugmentedSignature] = None) -> AxiomSet:
    """EC1-EC7; the same seven axioms on every call."""
    return make_set(event_calculus_schemas(), PACK_TEMPORAL, asig)


def _expand_happens(node):
    if isinstance(node, Predication) and node.name == HAPPENS.name and len(node.args) == 2:
        action, instant = node.args
        return Predication(node.name, (action, instant, instant), node.location)
    if isinstance(node, Predication) and node.name == "Initially":
        return Predication(INITIALLY_P.name, node.args, node.location)
    return node


def elaborate_temporal(doc: TheoryDocument) -> TheoryDocument:
    """Expand Happens(a, t) to Happens(a, t, t) and Initially to Initially_P.

    Raises:
        ArityClash: an event-calculus symbol is used or declared with the wrong arity.
    """
    symbols = TEMPORAL_SIGNATURE.by_name()
    for declaration in doc.sorts:
        expected = symbols.get(declaration.name)
        if expected is not None and declaration.args is not None and len(declaration.args) != expected.arity:
            raise ArityClash(
                f"{declaration.name} is an event-calculus symbol of arity {expected.arity}",
                declaration.location,
            )

    elaborated = doc.map_formulas(lambda formula: rewrite(formula, _expand_happens))

    for statement in elaborated.statements():
        for node in walk(statement.formula):
            if not isinstance(node, (Predication, Name)):
                continue
            expected = symbols.get(node.name)
            if expected is None or expected.is_predicate != isinstance(node, Predication):
                continue
            if len(node.args) != expected.arity:
                raise ArityClash(
                    f"{node.name} expects {expected.arity} arguments, got {len(node.args)}",
                    node.location or statement.location,
                )

    if elaborated != doc:
        logger.debug("Expanded temporal sugar")
    return elaborated
