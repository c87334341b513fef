"""
Parser for the .qiana surface language.
"""

import logging
from functools import lru_cache
from typing import List, Optional

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from src.core.exceptions import Location, QianaError, QianaSyntaxError
from src.modules.frontend.models import (
    Binary,
    Binder,
    Comparison,
    Equation,
    InContext,
    InContextTerm,
    ModalOperator,
    Name,
    Negation,
    Numeral,
    Predication,
    Quantified,
    QuotEscape,
    Quotation,
    SortDeclaration,
    SurfaceAxiom,
    TheoryDocument,
)

logger = logging.getLogger(__name__)


@lru_cache()
def get_parser() -> Lark:
    return Lark.open(
        "grammar.lark",
        rel_to=__file__,
        parser="lalr",
        lexer="contextual",
        propagate_positions=True,
        maybe_placeholders=False,
    )


def _location(token: Token) -> Location:
    return Location(token.line, token.column)


class SurfaceTransformer(Transformer):
    """Builds surface nodes; identifiers stay unclassified until elaboration."""

    # terms

    def name(self, items):
        token = items[0]
        return Name(str(token), (), _location(token))

    def application(self, items):
        token, *args = items
        return Name(str(token), tuple(args), _location(token))

    def numeral(self, items):
        return Numeral(str(items[0]))

    @v_args(meta=True)
    def quotation(self, meta, items):
        return Quotation(items[0], Location(meta.line, meta.column))

    def escape(self, items):
        return QuotEscape(items[0])

    # formulas

    def predication(self, items):
        term = items[0]
        if not isinstance(term, Name):
            raise QianaSyntaxError(f"{type(term).__name__.lower()} used as a formula")
        return Predication(term.name, term.args, term.location)

    def equation(self, items):
        return Equation(items[0], items[1])

    def less(self, items):
        return Comparison("<", items[0], items[1])

    def less_equal(self, items):
        return Comparison("<=", items[0], items[1])

    def negation(self, items):
        return Negation(items[0])

    def conjoin(self, items):
        return Binary("&", items[0], items[1])

    def disjoin(self, items):
        return Binary("|", items[0], items[1])

    def implies(self, items):
        return Binary("=>", items[0], items[1])

    def equivalence(self, items):
        return Binary("<=>", items[0], items[1])

    def binder(self, items):
        name = str(items[0])
        sort = str(items[1]) if len(items) > 1 else None
        return Binder(name, sort, _location(items[0]))

    def universal(self, items):
        *binders, body = items
        return Quantified("forall", tuple(binders), body)

    def existential(self, items):
        *binders, body = items
        return Quantified("exists", tuple(binders), body)

    def in_context(self, items):
        return InContext(items[0], items[1])

    def in_context_term(self, items):
        return InContextTerm(items[0], items[1])

    def box(self, items):
        return ModalOperator("box", items[0])

    def dia(self, items):
        return ModalOperator("dia", items[0])

    # statements

    @v_args(meta=True)
    def axiom(self, meta, items):
        return SurfaceAxiom(items[0], Location(meta.line, meta.column))

    @v_args(meta=True)
    def conjecture(self, meta, items):
        return ("conjecture", SurfaceAxiom(items[0], Location(meta.line, meta.column)))

    def option(self, items):
        key, value = items
        return ("option", (str(key), str(value)))

    def quotable(self, items):
        return ("quotable", tuple(str(t) for t in items))

    def sort_args(self, items):
        return tuple(str(t) for t in items)

    @v_args(meta=True)
    def object_sort(self, meta, items):
        return ("sort", SortDeclaration(str(items[0]), None, None, Location(meta.line, meta.column)))

    @v_args(meta=True)
    def function_sort(self, meta, items):
        name, args, result = items
        return ("sort", SortDeclaration(str(name), args, str(result), Location(meta.line, meta.column)))

    @v_args(meta=True)
    def predicate_sort(self, meta, items):
        name, args = items
        return ("sort", SortDeclaration(str(name), args, None, Location(meta.line, meta.column)))

    def start(self, items):
        options = {}
        quotable: Optional[List[str]] = None
        sorts: List[SortDeclaration] = []
        axioms: List[SurfaceAxiom] = []
        conjecture: Optional[SurfaceAxiom] = None

        for item in items:
            if isinstance(item, SurfaceAxiom):
                axioms.append(item)
                continue
            kind, value = item
            if kind == "option":
                options[value[0]] = value[1]
            elif kind == "quotable":
                quotable = (quotable or []) + list(value)
            elif kind == "sort":
                sorts.append(value)
            elif kind == "conjecture":
                if conjecture is not None:
                    raise QianaSyntaxError("a document has at most one conjecture", value.location)
                conjecture = value

        return TheoryDocument(
            options=options,
            quotable=tuple(quotable) if quotable is not None else None,
            sorts=tuple(sorts),
            axioms=tuple(axioms),
            conjecture=conjecture,
        )


def parse(source: str) -> TheoryDocument:
    """Parse .qiana text into a TheoryDocument.

    Raises:
        QianaSyntaxError: the text does not follow the grammar; carries line and column.
    """
    text = source.replace("\r\n", "\n")
    try:
        tree = get_parser().parse(text)
    except UnexpectedInput as e:
        line = e.line if e.line and e.line > 0 else text.count("\n") + 1
        column = e.column if e.column and e.column > 0 else 0
        raise QianaSyntaxError(f"unexpected input: {_excerpt(e, text)}", Location(line, column)) from e

    try:
        doc = SurfaceTransformer().transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, QianaError):
            raise e.orig_exc from e
        raise

    logger.debug(f"Parsed {len(doc.axioms)} axioms, {len(doc.sorts)} sort declarations")
    return doc


def _excerpt(error: UnexpectedInput, text: str) -> str:
    context = error.get_context(text, span=20).splitlines()
    return context[0].strip() if context else ""
