import pytest

from src.core.exceptions import ArityClash
from src.modules.frontend.models import Name, Predication
from src.modules.frontend.parser import parse
from src.modules.runner.services import compile_problem, compile_source
from src.modules.signature.models import QNEG
from src.modules.syntax.models import App, Atom
from src.modules.syntax.services import atoms, symbols_of
from src.modules.temporal.models import CLIPPED, HAPPENS, HOLDS_AT, INITIALLY_P, INITIATES, LEQ, LT, TIME_ZERO
from src.modules.temporal.services import elaborate_temporal, gen_event_calculus_axioms
from src.modules.tptp.emitter import emit_fof


def test_seven_axioms():
    pack = gen_event_calculus_axioms()
    assert [a.provenance.tag for a in pack] == [f"EC{i}" for i in range(1, 8)]
    assert [a.name for a in pack] == [f"ec{i}" for i in range(1, 8)]
    assert pack.manifest.packs == {"temporal": 7}


def test_axioms_do_not_depend_on_the_signature(small_asig):
    assert gen_event_calculus_axioms().formulas() == gen_event_calculus_axioms(small_asig).formulas()


def test_negated_fluents_use_qneg():
    ec4 = gen_event_calculus_axioms().named("ec4").formula
    initially = [a for a in atoms(ec4) if a.predicate == INITIALLY_P]
    assert initially and initially[0].args[0].symbol == QNEG


def test_ec7_orders_event_bounds():
    ec7 = gen_event_calculus_axioms().named("ec7").formula
    assert {a.predicate for a in atoms(ec7)} == {HAPPENS, LEQ}


def test_event_calculus_golden(golden):
    golden("event_calculus.p", emit_fof(gen_event_calculus_axioms()).render())


def test_happens_and_initially_surface_forms():
    doc = elaborate_temporal(parse("Happens(kick, t1).\nInitially([[ up ]]).\n"))
    happens, initially = (a.formula for a in doc.axioms)
    assert happens == Predication("Happens", (Name("kick"), Name("t1"), Name("t1")))
    assert initially.name == "Initially_P"


def test_full_happens_is_kept():
    doc = elaborate_temporal(parse("Happens(kick, t1, t2).\n"))
    assert len(doc.axioms[0].formula.args) == 3


@pytest.mark.parametrize("source", ["HoldsAt([[ up ]]).\n", "Happens(kick).\n", "Clipped(t1, t2).\n"])
def test_arity_is_enforced(source):
    with pytest.raises(ArityClash):
        elaborate_temporal(parse(source))


def test_conflicting_declaration_is_rejected():
    with pytest.raises(ArityClash) as excinfo:
        elaborate_temporal(parse("#sort HoldsAt: q.\n"))
    assert excinfo.value.location.line == 1


def test_zero_and_comparisons():
    theory = compile_source("#option temporal true.\nHoldsAt([[ up ]], 0).\nt1 < t2.\nt1 <= t2.\n")
    holds, less, less_equal = (formula for formula, _ in theory.axioms)
    assert holds.predicate == HOLDS_AT
    assert holds.args[1] == App(TIME_ZERO)
    assert less.predicate == LT and less_equal.predicate == LEQ


def test_zero_is_a_numeral_outside_temporal_mode():
    theory = compile_source("p(0).\n")
    (formula, _), = theory.axioms
    assert formula.args[0].symbol.name == "num_0"


def test_temporal_romeo_compiles(read_corpus):
    problem = compile_problem(read_corpus("temporal_romeo.qiana"))
    assert problem.closure.manifest.packs["temporal"] == 7
    assert problem.closure.count("EC2") == 1
    conjecture = problem.theory.conjecture
    assert isinstance(conjecture, Atom) and conjecture.predicate == HAPPENS
    used = set()
    for formula, _ in problem.theory.axioms:
        used |= symbols_of(formula)
    assert {CLIPPED, HAPPENS, INITIATES} <= used
