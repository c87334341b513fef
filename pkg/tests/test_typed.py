import pytest

from src.core.exceptions import ArityClash, IllTyped, SignatureError, UnknownSort
from src.modules.axioms.models import TYPED_PREFIX
from src.modules.frontend.models import CompileOptions
from src.modules.runner.services import compile_problem, compile_source
from src.modules.signature.models import QUOT, TRUTH, function, predicate
from src.modules.signature.services import build_signature
from src.modules.syntax.models import App, Atom, Forall, Var
from src.modules.tptp.models import DIALECT_TFF
from src.modules.typed.models import SymbolType
from src.modules.typed.services import build_typed_signature, ensure_well_typed, resolve_sorts, typecheck

ROMEO = function("romeo", 0)
SAYS = function("says", 1)
DEAD = predicate("dead", 1)

DECLARATIONS = {
    "romeo": SymbolType((), "person"),
    "says": SymbolType(("person",), "c"),
    "dead": SymbolType(("person",)),
}


@pytest.fixture
def tsig():
    asig = build_signature([ROMEO, SAYS], [DEAD], ("x", "y", "z"))
    return build_typed_signature(asig, DECLARATIONS, {"x": "person"}, ["person"])


def test_sorts_and_variable_defaults(tsig):
    assert tsig.sorts == ("o", "q", "c", "tau", "a", "person")
    assert tsig.var_sort("x") == "person"
    assert tsig.var_sort("y") == "o"
    assert tsig.sort_aliases()["a"] == "act"


def test_symbol_types(tsig):
    assert str(tsig.symbol_type(SAYS)) == "person -> c"
    assert str(tsig.symbol_type(tsig.asig.quote_symbol(DEAD))) == "q -> q"
    assert tsig.tptp_type(SAYS) == "person > c"
    assert tsig.tptp_type(DEAD) == "person > $o"
    assert tsig.tptp_type(ROMEO) == "person"


def test_missing_declaration():
    asig = build_signature([ROMEO], [DEAD], ("x", "y", "z"))
    with pytest.raises(UnknownSort):
        build_typed_signature(asig, {"romeo": SymbolType((), "person")}, object_sorts=["person"])


def test_unknown_sort():
    asig = build_signature([ROMEO], [], ("x", "y", "z"))
    with pytest.raises(UnknownSort):
        build_typed_signature(asig, {"romeo": SymbolType((), "human")})


def test_declaration_arity_must_match():
    asig = build_signature([ROMEO], [DEAD], ("x", "y", "z"))
    declarations = {"romeo": SymbolType((), "o"), "dead": SymbolType(("o", "o"))}
    with pytest.raises(ArityClash):
        build_typed_signature(asig, declarations)


def test_subsort_cannot_shadow_a_base_sort():
    asig = build_signature([], [], ("x", "y", "z"))
    with pytest.raises(SignatureError):
        build_typed_signature(asig, {}, object_sorts=["q"])


def test_well_typed_formula(tsig):
    result = typecheck(Atom(DEAD, (App(ROMEO),)), tsig)
    assert result.ok and result.sort == "$o"


def test_ill_typed_application(tsig):
    formula = Atom(DEAD, (App(SAYS, (App(ROMEO),)),))
    result = typecheck(formula, tsig)
    assert not result.ok
    assert result.diagnostics[0].code == "ill_typed"
    assert "expected person, got c" in result.diagnostics[0].message
    with pytest.raises(IllTyped):
        ensure_well_typed(formula, tsig)


def test_binders_need_sorts(tsig):
    result = typecheck(Forall("x", Atom(DEAD, (Var("x"),))), tsig)
    assert [d.code for d in result.diagnostics][:1] == ["unsorted"]
    assert typecheck(Forall("x", Atom(DEAD, (Var("x"),)), "person"), tsig).ok


def test_quot_is_resolved_by_the_sort_of_its_argument(tsig):
    q_dead = tsig.asig.quote_symbol(DEAD)
    formula = Forall("x", Atom(TRUTH, (App(q_dead, (App(QUOT, (Var("x"),)),)),)), "person")
    resolved = resolve_sorts(formula, tsig)
    inner = resolved.body.args[0].args[0]
    assert inner.symbol.name == "quot_person"
    assert typecheck(resolved, tsig).ok


def test_typed_corpus_compiles_to_tff(read_corpus):
    problem = compile_problem(read_corpus("typed_romeo.qiana"))
    document = problem.document
    assert document.dialect == DIALECT_TFF
    declared = {d.name: d for d in document.type_declarations}
    assert declared["type_person"].type_text == "$tType"
    assert declared["type_act"].identifier == "act"
    assert declared["decl_says"].type_text == "person > c"
    assert "tff(goal, conjecture," in document.render()


def test_typed_closure_tags(read_corpus):
    closure = compile_problem(read_corpus("typed_romeo.qiana")).closure
    assert all(a.provenance.tag == "USER" or a.provenance.tag.startswith(TYPED_PREFIX) for a in closure)
    assert closure.count("TYPED-A17") == 6
    assert closure.count("TYPED-A19") == 6
    assert closure.count("USER") == 9
    assert any(r.startswith("TYPED-A24") for r in closure.manifest.resolutions)


def test_typed_binders_carry_sorts(read_corpus):
    theory = compile_source(read_corpus("typed_romeo.qiana"))
    assert theory.tsig is not None
    for formula, _ in theory.axioms:
        node = formula
        while isinstance(node, Forall):
            assert node.sort is not None
            node = node.body


def test_undeclared_symbol_in_typed_mode():
    with pytest.raises(UnknownSort):
        compile_source("#option typed true.\np(a).\n")


def test_ill_typed_statement_is_located():
    source = (
        "#option typed true.\n#sort person.\n"
        "#sort romeo: () -> person.\n#sort says: person -> c.\n#sort dead: person.\n"
        "dead(says(romeo)).\n"
    )
    with pytest.raises(IllTyped) as excinfo:
        compile_source(source)
    assert excinfo.value.location.line == 6


def test_typed_flag_overrides_document():
    source = "#sort b: () -> o.\n#sort p: o.\np(b).\n"
    assert compile_source(source).tsig is None
    assert compile_source(source, CompileOptions(typed=True)).tsig is not None


CLASHING_SORTS = (
    "#option typed true.\n#sort person.\n#sort place.\n"
    "#sort verona: () -> c.\n#sort dead: person.\n#sort ruined: place.\n"
    "<verona> forall X: person. dead(X).\n"
    "<verona> forall X: place. ruined(X).\n"
)


def test_quotable_variable_bound_at_two_sorts():
    with pytest.raises(IllTyped) as excinfo:
        compile_source(CLASHING_SORTS)
    assert excinfo.value.location.line == 8
    assert "person" in str(excinfo.value) and "place" in str(excinfo.value)


def test_unquoted_variable_may_change_sort():
    source = (
        "#option typed true.\n#sort person.\n#sort place.\n"
        "#sort dead: person.\n#sort ruined: place.\n"
        "forall X: person. dead(X).\n"
        "forall X: place. ruined(X).\n"
    )
    assert compile_source(source).tsig is not None


def test_clashing_sorts_are_ignored_untyped():
    source = CLASHING_SORTS.replace("#option typed true.\n", "")
    assert compile_source(source).tsig is None
