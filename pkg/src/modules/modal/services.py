"""
Embedding of propositional modal logic.

box φ is ist(box, [[φ]]) and dia φ is ~ist(box, qneg([[φ]])). Necessitation
is captured by the tauto predicate, which a Hilbert system over quoted
formulas (wff/tauto axioms) closes under the tautologies of K.
"""

import logging
from typing import Dict, List

from src.core.exceptions import SignatureError, UndeclaredProposition
from src.modules.axioms.builders import UNTYPED, closed, const, ist, make_axiom, truth
from src.modules.axioms.models import PACK_MODAL, Axiom, AxiomSet, make_set
from src.modules.modal.models import Box, Diamond, MAnd, MImplies, MNot, ModalFormula, ModalSystem, MOr, Prop
from src.modules.quotation.services import quote
from src.modules.signature.models import BOX, IST, TAUTO, WFF, AugmentedSignature
from src.modules.syntax.models import And, App, Atom, Formula, Not, Var
from src.modules.syntax.services import disj, implies, qand, qimplies, qneg, quot

logger = logging.getLogger(__name__)


def _box_context(asig: AugmentedSignature) -> App:
    if BOX not in asig.base.functions:
        raise SignatureError("modal mode needs the box/0 context in the signature")
    return const(BOX)


def embed_modal_formula(mf: ModalFormula, asig: AugmentedSignature) -> Formula:
    """Translate a modal formula, adding one quotation level per box or dia.

    Raises:
        UndeclaredProposition: a proposition is not an arity-0 predicate of ``asig``.
    """
    if isinstance(mf, Prop):
        symbol = asig.base.predicate_named(mf.name)
        if symbol is None or symbol.arity != 0:
            raise UndeclaredProposition(f"{mf.name} is not a declared proposition")
        return Atom(symbol)
    if isinstance(mf, MNot):
        return Not(embed_modal_formula(mf.body, asig))
    if isinstance(mf, MAnd):
        return And(embed_modal_formula(mf.left, asig), embed_modal_formula(mf.right, asig))
    if isinstance(mf, MOr):
        return disj(embed_modal_formula(mf.left, asig), embed_modal_formula(mf.right, asig))
    if isinstance(mf, MImplies):
        return implies(embed_modal_formula(mf.left, asig), embed_modal_formula(mf.right, asig))
    if isinstance(mf, Box):
        return ist(_box_context(asig), quote(embed_modal_formula(mf.body, asig), asig))
    if isinstance(mf, Diamond):
        return Not(ist(_box_context(asig), qneg(quote(embed_modal_formula(mf.body, asig), asig))))
    raise TypeError(f"not a modal formula: {mf!r}")


def _wff(term) -> Atom:
    return Atom(WFF, (term,))


def _tauto(term) -> Atom:
    return Atom(TAUTO, (term,))


def tauto_schemas(asig: AugmentedSignature) -> List[Axiom]:
    """wff over propositions and connectives, Hilbert axioms, modus ponens and the K closure rules."""
    box = _box_context(asig)
    q_box, q_ist = asig.quote_symbol(BOX), asig.quote_symbol(IST)
    a, b, c = Var("A"), Var("B"), Var("C")

    def boxed(term):
        return App(q_ist, (const(q_box), quot(term)))

    axioms: List[Axiom] = []
    for p, quoted in asig.quoted_predicates:
        if p.arity == 0:
            axioms.append(make_axiom("MODAL-T1", _wff(const(quoted)), [p.name]))

    schemas = [
        ("T2", [a], implies(_wff(a), _wff(qneg(a)))),
        ("T3", [a, b], implies(And(_wff(a), _wff(b)), _wff(qand(a, b)))),
        ("T4", [a], implies(_wff(a), _wff(boxed(a)))),
        ("T5", [a, b], implies(And(_wff(a), _wff(b)), _tauto(qimplies(a, qimplies(b, a))))),
        ("T6", [a, b, c], implies(
            And(_wff(a), And(_wff(b), _wff(c))),
            _tauto(qimplies(qimplies(a, qimplies(b, c)), qimplies(qimplies(a, b), qimplies(a, c)))),
        )),
        ("T7", [a, b], implies(
            And(_wff(a), _wff(b)),
            _tauto(qimplies(qimplies(qneg(b), qneg(a)), qimplies(qimplies(qneg(b), a), b))),
        )),
        ("T8", [a, b], implies(And(_tauto(qimplies(a, b)), _tauto(a)), _tauto(b))),
        ("T9", [a], implies(_tauto(a), _tauto(boxed(a)))),
        ("T9B", [a, b], implies(_tauto(boxed(qimplies(a, b))), _tauto(qimplies(boxed(a), boxed(b))))),
    ]
    for tag, binders, body in schemas:
        axioms.append(make_axiom(f"MODAL-{tag}", closed(UNTYPED, binders, [None] * len(binders), body)))

    logger.debug(f"Generated {len(axioms)} tauto axioms around {box}")
    return axioms


def modal_schemas(asig: AugmentedSignature) -> Dict[str, Axiom]:
    """QK, QN, QT, Q4, Q5 and QD by name."""
    box = _box_context(asig)
    q_box, q_ist = asig.quote_symbol(BOX), asig.quote_symbol(IST)
    p, q = Var("P"), Var("Q")

    def necessary(term):
        return ist(box, term)

    def possible(term):
        return Not(ist(box, qneg(term)))

    def one(body):
        return closed(UNTYPED, [p], [None], body)

    formulas = {
        "QK": closed(UNTYPED, [p, q], [None, None],
                     implies(necessary(qimplies(p, q)), implies(necessary(p), necessary(q)))),
        "QN": one(implies(_tauto(p), necessary(p))),
        "QT": one(implies(necessary(p), truth(p))),
        "Q4": one(implies(necessary(p), necessary(App(q_ist, (const(q_box), quot(p)))))),
        "Q5": one(implies(possible(p), necessary(qneg(App(q_ist, (const(q_box), quot(qneg(p)))))))),
        "QD": one(implies(necessary(p), possible(p))),
    }
    return {name: make_axiom(f"MODAL-{name}", formula) for name, formula in formulas.items()}


def gen_modal_system(sys: ModalSystem, asig: AugmentedSignature) -> AxiomSet:
    """The modal pack of a system: tauto axioms, QK and QN, then the system's own axioms.

    The Qiana closure itself is generated separately and concatenated by the caller.
    """
    schemas = modal_schemas(asig)
    axioms = tauto_schemas(asig) + [schemas["QK"], schemas["QN"]]
    axioms.extend(schemas[name] for name in sys.extra_axioms)
    logger.debug(f"Modal system {sys.value}: {len(axioms)} axioms")
    return make_set(axioms, PACK_MODAL, asig)
