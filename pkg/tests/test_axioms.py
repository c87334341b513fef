import random

import pytest

from src.core.exceptions import OpenFormula, QianaError, SignatureError
from src.modules.axioms.builders import axiom_name
from src.modules.axioms.models import AxiomOptions
from src.modules.axioms.services import (
    gen_helper_axioms,
    gen_ist_axioms,
    gen_truth_fin,
    qiana_closure,
    substitution_functions,
    user_axioms,
)
from src.modules.quotation.services import quote, subst_quoted
from src.modules.signature.models import EQ, QAND, QNEG, WFT, REACH, function, predicate
from src.modules.signature.services import build_signature
from src.modules.syntax.models import App, Atom, Forall, Var
from src.modules.syntax.services import atoms, free_vars
from tests.generators import CONST, F, generator_signature, random_closed_formula, random_formula, random_term
from tests.oracles import (
    eval_normalize,
    expected_closure_size,
    reach_derivation,
    subq_normalize,
    truth_expansion,
    wft_derivation,
)

SMALL_COUNTS = {
    "A5": 1, "A6": 1, "A7": 1, "A8": 1, "A9": 1, "A10": 1,
    "A17": 1, "A18": 13,
    "A19": 1, "A20": 3, "A21": 2,
    "A22": 1, "A23": 2, "A24": 2, "A25": 1, "A26": 1, "A27": 1, "A28": 3,
    "A29": 3, "A30": 6, "A31": 24, "A32": 3, "A33": 6, "A34": 3,
    "A1FIN": 2, "A2FIN": 1, "A3FIN": 1, "A4FIN": 3, "A11FIN": 3,
}


def scaled_signature(scale: int):
    """S, 2S, 4S: each doubles the symbols and variables of the previous one."""
    functions = []
    predicates = []
    for index in range(scale):
        functions += [function(f"a{index}", 0), function(f"g{index}", 1)]
        predicates += [predicate(f"p{index}", 1), predicate(f"r{index}", 2)]
    quotable = [f"x{index}" for index in range(3 * scale)]
    return build_signature(functions, predicates, quotable)


def test_small_signature_counts(small_asig):
    closure = qiana_closure([], small_asig)
    assert closure.manifest.counts == SMALL_COUNTS
    assert closure.manifest.packs == {"user": 0, "ist": 6, "helper": 76, "truth": 10, "optional": 0}
    assert len(closure) == expected_closure_size(2, 1, 3) == 92


def test_a31_ranges_over_substitution_functions(small_asig):
    names = [s.name for s in substitution_functions(small_asig)]
    assert names == ["c", "f", "q_c", "q_f", "q_ist", "q_p", "qand", "qneg"]
    assert QAND in substitution_functions(small_asig) and QNEG in substitution_functions(small_asig)


@pytest.mark.parametrize("scale, total", [(1, 98), (2, 247), (4, 761)])
def test_closure_size_formula(scale, total):
    asig = scaled_signature(scale)
    closure = qiana_closure([], asig)
    nf, np, v = 2 * scale, 2 * scale, 3 * scale
    assert len(closure) == expected_closure_size(nf, np, v) == total


def test_growth_is_at_most_quadratic():
    sizes = [len(qiana_closure([], scaled_signature(scale))) for scale in (1, 2, 4)]
    assert sizes[1] / sizes[0] <= 4.5
    assert sizes[2] / sizes[1] <= 4.5


def test_every_axiom_is_closed_and_uniquely_named():
    closure = qiana_closure([], scaled_signature(2), AxiomOptions(explosion=True, explicit_equality=True))
    names = [a.name for a in closure]
    assert len(names) == len(set(names))
    assert all(not free_vars(a.formula) for a in closure)


def test_axiom_names():
    assert axiom_name("A31", ["x", "f"]) == "a31_x_f"
    assert axiom_name("A4FIN", ["y"]) == "a4fin_y"
    assert axiom_name("TYPED-A17") == "typed_a17"


def test_generation_is_deterministic(small_asig):
    first = qiana_closure([], small_asig)
    second = qiana_closure([], small_asig)
    assert [a.formula for a in first] == [a.formula for a in second]
    assert first.manifest.digest == second.manifest.digest
    assert qiana_closure([], small_asig, AxiomOptions(explosion=True)).manifest.digest != first.manifest.digest


def test_closure_order_ignores_declaration_order():
    functions = [function("f", 1), function("c", 0)]
    predicates = [predicate("p", 1), predicate("r", 2)]
    forward = build_signature(functions, predicates, ("x", "y", "z"))
    backward = build_signature(functions[::-1], predicates[::-1], ("x", "y", "z"))
    theory = [Atom(predicates[0], (App(functions[1]),))]
    closure = qiana_closure(theory, forward)
    assert [a.name for a in closure] == [a.name for a in qiana_closure(theory, backward)]
    assert list(closure.manifest.packs) == ["user", "ist", "helper", "truth", "optional"]
    assert [a.provenance.tag for a in closure][:7] == ["USER", "A5", "A6", "A7", "A8", "A9", "A10"]


def test_ist_pack_is_signature_independent(small_asig):
    assert gen_ist_axioms(small_asig).formulas() == gen_ist_axioms(scaled_signature(2)).formulas()


def test_truth_guards(small_asig):
    truth = gen_truth_fin(small_asig)
    a1 = truth.named("a1fin_p").formula
    assert {a.predicate for a in atoms(a1)} >= {WFT}
    for name in ("a2fin", "a3fin", "a4fin_x", "a11fin_z"):
        assert REACH in {a.predicate for a in atoms(truth.named(name).formula)}


def test_explicit_equality(small_asig):
    helper = gen_helper_axioms(small_asig, AxiomOptions(explicit_equality=True))
    assert helper.count("A12") == helper.count("A13") == helper.count("A14") == 1
    assert helper.count("A15") == 10
    assert helper.count("A16") == 6
    assert gen_helper_axioms(small_asig).count("A15") == 0


def test_optional_packs(small_asig):
    closure = qiana_closure([], small_asig, AxiomOptions(explosion=True))
    assert closure.count("EXPLOSION") == 1
    assert closure.manifest.packs["optional"] == 1

    with_eq = build_signature([function("f", 1), function("c", 0)], [predicate("p", 1), EQ])
    closure = qiana_closure([], with_eq, AxiomOptions(disambiguation=True))
    assert closure.count("DISAMBIG1") == closure.count("DISAMBIG2") == 1


def test_disambiguation_needs_equality(small_asig):
    with pytest.raises(SignatureError):
        qiana_closure([], small_asig, AxiomOptions(disambiguation=True))


def test_user_axioms_keep_lines_and_order(small_asig):
    p = predicate("p", 1)
    theory = [(Atom(p, (App(function("c", 0)),)), 3), Forall("x", Atom(p, (Var("x"),)))]
    closure = qiana_closure(theory, small_asig)
    users = closure.tagged("USER")
    assert [a.name for a in users] == ["user_1", "user_2"]
    assert users[0].provenance.line == 3
    assert closure.axioms[:2] == tuple(users)


def test_open_user_axiom_is_rejected():
    with pytest.raises(OpenFormula) as excinfo:
        user_axioms([(Atom(predicate("p", 1), (Var("x"),)), 7)])
    assert excinfo.value.location.line == 7


def test_duplicate_names_are_rejected(small_asig):
    from src.modules.axioms.models import concat
    with pytest.raises(QianaError):
        concat(gen_ist_axioms(small_asig), gen_ist_axioms(small_asig))


def test_reach_and_wft_derivations_exist():
    asig = generator_signature()
    closure = qiana_closure([], asig)
    rng = random.Random(5)
    for _ in range(200):
        code = quote(random_term(rng, asig, 3), asig)
        assert reach_derivation(code, closure)
        assert wft_derivation(code, closure, asig)
        assert reach_derivation(quote(random_formula(rng, asig, 3), asig), closure)


def test_eval_normalizes_quoted_terms():
    asig = generator_signature()
    closure = qiana_closure([], asig)
    rng = random.Random(11)
    for _ in range(200):
        term = random_term(rng, asig, 3, variables=())
        assert eval_normalize(quote(term, asig), closure, asig) == term


def test_subq_normalizer_agrees_with_quoted_substitution():
    asig = generator_signature()
    closure = qiana_closure([], asig)
    rng = random.Random(13)
    replacements = [quote(App(CONST), asig), quote(App(F, (App(CONST),)), asig)]
    for _ in range(300):
        code = quote(random_formula(rng, asig, 3), asig)
        for name in asig.quotable_vars:
            qvar = asig.quoted_var(name)
            t = rng.choice(replacements)
            assert subq_normalize(code, qvar, t, closure, asig) == subst_quoted(code, qvar, t)


def test_truth_expansion_reaches_atoms():
    asig = generator_signature()
    closure = qiana_closure([], asig)
    rng = random.Random(17)
    for _ in range(100):
        formula = random_closed_formula(rng, asig, 3)
        used = truth_expansion(formula, closure, asig)
        assert used and all(name.startswith(("a1fin", "a2fin", "a3fin", "a4fin")) for name in used)
