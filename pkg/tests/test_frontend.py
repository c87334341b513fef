import logging

import pytest

from src.core.exceptions import (
    ArityClash,
    NotQuotable,
    QianaSyntaxError,
    SignatureError,
    UnsupportedConstruct,
)
from src.modules.frontend.elaborator import elaborate
from src.modules.frontend.models import Binary, InContext, InContextTerm, Quantified, SortDeclaration
from src.modules.frontend.parser import parse
from src.modules.frontend.render import render
from src.modules.quotation.services import quote
from src.modules.signature.models import EQ, IST, QUOT, function, predicate
from src.modules.syntax.models import App, Atom, Forall, Var

CORPUS = [
    "empty.qiana",
    "modal_d.qiana",
    "modal_k.qiana",
    "paraconsistency.qiana",
    "quote_symbol.qiana",
    "romeo.qiana",
    "stories.qiana",
    "temporal_romeo.qiana",
    "typed_romeo.qiana",
    "var_growth.qiana",
]


def compile_text(source: str):
    return elaborate(parse(source))


# Parsing

def test_directives():
    doc = parse(
        "#option vars 4.\n#option typed true.\n#quotable x y.\n#quotable z.\n"
        "#sort person.\n#sort knows: person * person.\n#sort mother: person -> person.\n"
        "#sort rain: ().\np.\n#conjecture p.\n"
    )
    assert doc.options == {"vars": "4", "typed": "true"}
    assert doc.flag("typed") and not doc.flag("temporal")
    assert doc.quotable == ("x", "y", "z")
    assert doc.sorts == (
        SortDeclaration("person"),
        SortDeclaration("knows", ("person", "person")),
        SortDeclaration("mother", ("person",), "person"),
        SortDeclaration("rain", ()),
    )
    assert len(doc.axioms) == 1 and doc.conjecture is not None


def test_precedence():
    formula = parse("p | q & r => s <=> t.").axioms[0].formula
    assert formula.op == "<=>"
    assert formula.left.op == "=>"
    assert formula.left.left.op == "|"
    assert formula.left.left.right.op == "&"


def test_quantifier_body_extends_right():
    formula = parse("forall X Y. p(X) => q(Y).").axioms[0].formula
    assert isinstance(formula, Quantified)
    assert [b.name for b in formula.binders] == ["X", "Y"]
    assert isinstance(formula.body, Binary)


def test_context_sugar():
    doc = parse("<c> p & q.\n<c>! t.\n")
    first, second = (a.formula for a in doc.axioms)
    assert isinstance(first, Binary) and isinstance(first.left, InContext)
    assert isinstance(second, InContextTerm)


def test_syntax_error_location():
    with pytest.raises(QianaSyntaxError) as excinfo:
        parse("p(a).\n\nq(b) r(c).\n")
    assert excinfo.value.location.line == 3


def test_second_conjecture():
    with pytest.raises(QianaSyntaxError) as excinfo:
        parse("#conjecture p.\n#conjecture q.\n")
    assert excinfo.value.location.line == 2


def test_comments_are_ignored():
    doc = parse("% a comment\np. % trailing\n")
    assert len(doc.axioms) == 1
    assert doc.axioms[0].line == 2


@pytest.mark.parametrize("name", CORPUS)
def test_render_parses_back(name, read_corpus):
    doc = parse(read_corpus(name))
    assert parse(render(doc)) == doc


def test_render_parenthesizes_nested_binaries():
    doc = parse("(p => q) => r.\n~(p & q).\n<c> (p | q).\n")
    text = render(doc)
    assert "(p => q) => r." in text
    assert "~(p & q)." in text
    assert parse(text) == doc


# Elaboration

def test_romeo_axioms_and_lines(read_corpus):
    theory = compile_text(read_corpus("romeo.qiana"))
    assert len(theory.axioms) == 9
    assert [line for _, line in theory.axioms] == [10, 13, 15, 16, 19, 21, 24, 25, 28]
    assert theory.conjecture is not None
    assert theory.asig.quotable_vars == ("X", "v1", "v2")
    assert not theory.warnings


def test_context_becomes_ist_of_quotation():
    theory = compile_text("<c> p(a).\n")
    formula, _ = theory.axioms[0]
    p, a = predicate("p", 1), function("a", 0)
    assert formula == Atom(IST, (App(function("c", 0)), quote(Atom(p, (App(a),)), theory.asig)))


def test_nested_quotation():
    theory = compile_text("holds([[ P([[ 1 = 1 ]]) ]]).\n")
    asig = theory.asig
    formula, _ = theory.axioms[0]
    one = asig.quote_symbol(function("num_1", 0))
    inner = App(asig.quote_symbol(EQ), (App(one), App(one)))
    outer = App(asig.quote_symbol(predicate("P", 1)), (App(QUOT, (inner,)),))
    assert formula == Atom(predicate("holds", 1), (outer,))


def test_escape_reads_enclosing_variable():
    theory = compile_text("forall X. p(X) => <c> q(quot(X)).\n")
    formula, _ = theory.axioms[0]
    assert isinstance(formula, Forall)
    quoted = [n for n in _apps(formula) if n.symbol == QUOT]
    assert quoted == [App(QUOT, (Var("X"),))]


def test_quot_at_top_level_is_an_application():
    theory = compile_text("p(quot(a)).\n")
    formula, _ = theory.axioms[0]
    assert formula.args[0] == App(QUOT, (App(function("a", 0)),))


def test_capture_warning(caplog):
    with caplog.at_level(logging.WARNING, logger="src.modules.frontend.elaborator"):
        theory = compile_text("forall X. <c> p(X).\n")
    assert len(theory.warnings) == 1
    assert "quot(X)" in theory.warnings[0]
    assert "quoted as a constant" in caplog.text


def test_term_payload_is_quoted_as_term():
    theory = compile_text("likes([[f(a)]]).\nq(f(b)).\n")
    formula, _ = theory.axioms[0]
    f, a = function("f", 1), function("a", 0)
    assert formula.args[0] == quote(App(f, (App(a),)), theory.asig)
    assert predicate("f", 1) not in theory.asig.base.predicates


def test_formula_payload_declares_a_predicate():
    theory = compile_text("likes([[g(a)]]).\n")
    assert predicate("g", 1) in theory.asig.base.predicates


def test_declared_quotable_set_missing_a_variable():
    with pytest.raises(NotQuotable):
        compile_text("#quotable x y.\n<c> forall W. p(W).\n")


def test_declared_quotable_set_is_used():
    theory = compile_text("#quotable W.\n<c> forall W. p(W).\n")
    assert theory.asig.quotable_vars[0] == "W"


def test_arity_clash_is_located():
    with pytest.raises(ArityClash) as excinfo:
        compile_text("p(a).\np(a, b).\n")
    assert excinfo.value.location.line == 2


def test_function_and_predicate_share_a_name():
    with pytest.raises(ArityClash):
        compile_text("p(f(a)).\nf(a).\n")


@pytest.mark.parametrize("source", ["qand(a).\n", "p(wft).\n", "reach(a).\n", "p(q_a).\n"])
def test_reserved_names(source):
    with pytest.raises((SignatureError, ArityClash)):
        compile_text(source)


def test_truth_inside_a_context():
    with pytest.raises(NotQuotable):
        compile_text("<c> truth([[p]]).\n")


def test_variable_as_formula():
    with pytest.raises(QianaSyntaxError):
        compile_text("forall X. X.\n")


def test_comparison_needs_temporal_mode():
    with pytest.raises(UnsupportedConstruct):
        compile_text("t1 < t2.\n")


def test_numerals_are_constants():
    theory = compile_text("p(3).\n")
    assert function("num_3", 0) in theory.asig.base.functions


def test_equality_is_injected_on_use():
    assert EQ in compile_text("a = b.\n").asig.base.predicates
    assert EQ not in compile_text("p(a).\n").asig.base.predicates


def test_corpus_elaborates(read_corpus):
    for name in CORPUS:
        compile_text(read_corpus(name))


def _apps(node):
    if isinstance(node, App):
        yield node
        for a in node.args:
            yield from _apps(a)
    elif isinstance(node, Atom):
        for a in node.args:
            yield from _apps(a)
    elif hasattr(node, "body"):
        yield from _apps(node.body)
    else:
        for child in (getattr(node, "left", None), getattr(node, "right", None)):
            if child is not None:
                yield from _apps(child)
