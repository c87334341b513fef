"""
Reads emitted TPTP back into core formulas, inverting the mangling table.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput, VisitError

from src.core.exceptions import Location, QianaError, QianaSyntaxError
from src.modules.signature.models import EQ
from src.modules.syntax.models import And, App, Atom, Not, Var
from src.modules.syntax.services import disj, exists_all, forall_all, iff, implies
from src.modules.tptp.emitter import FormulaRenderer
from src.modules.tptp.mangle import SymbolTable, unmangle_variable
from src.modules.tptp.models import (
    DIALECT_FOF,
    DIALECT_TFF,
    ROLE_TYPE,
    AnnotatedFormula,
    TptpDocument,
    TypeDeclaration,
)

logger = logging.getLogger(__name__)


@lru_cache()
def get_parser() -> Lark:
    return Lark.open("tptp.lark", rel_to=__file__, parser="lalr", maybe_placeholders=False)


@dataclass(frozen=True)
class _Call:
    """An identifier applied to arguments, before we know if it is a term or an atom."""
    name: str
    args: Tuple[object, ...]


class TptpTransformer(Transformer):
    def __init__(self, table: SymbolTable, sort_aliases: Optional[Dict[str, str]] = None):
        super().__init__()
        self.table = table
        self.sorts = {alias: sort for sort, alias in (sort_aliases or {}).items()}
        self.native_equality = False

    # terms

    def variable(self, items):
        return Var(unmangle_variable(str(items[0])))

    def application(self, items):
        return _Call(str(items[0]), tuple(items[1:]))

    def _term(self, node):
        if isinstance(node, Var):
            return node
        return App(self.table.symbol(node.name), tuple(self._term(a) for a in node.args))

    # formulas

    def atomic(self, items):
        node = items[0]
        if isinstance(node, Var):
            raise QianaSyntaxError(f"variable {node.name} used as a formula")
        return Atom(self.table.symbol(node.name), tuple(self._term(a) for a in node.args))

    def equality(self, items):
        self.native_equality = True
        left, right = items
        return Atom(EQ, (self._term(left), self._term(right)))

    def negation(self, items):
        return Not(items[0])

    def binary(self, items):
        left, op, right = items
        if op == "&":
            return And(left, right)
        if op == "|":
            return disj(left, right)
        if op == "=>":
            return implies(left, right)
        return iff(left, right)

    def binder(self, items):
        name = unmangle_variable(str(items[0]))
        sort = self.sorts.get(str(items[1]), str(items[1])) if len(items) > 1 else None
        return name, sort

    def quantified(self, items):
        mark, *binders, body = items
        names = [name for name, _ in binders]
        sorts = [sort for _, sort in binders]
        if mark == "!":
            return forall_all(names, body, sorts)
        return exists_all(names, body, sorts)

    # types

    def type_atom(self, items):
        return str(items[0])

    def type_expr(self, items):
        return items[0]

    def unary_type(self, items):
        return f"{items[0]} > {items[1]}"

    def product_type(self, items):
        *args, result = items
        return f"({' * '.join(args)}) > {result}"

    def typing(self, items):
        return str(items[0]), items[1]

    # statements

    def statement(self, items):
        dialect, name, role, body = items
        return str(dialect), str(name), str(role), body

    def start(self, items):
        return items


def read_tptp(text: str, table: SymbolTable, sort_aliases: Optional[Dict[str, str]] = None) -> TptpDocument:
    """Parse TPTP text written by the emitter.

    Args:
        text: FOF or TFF problem text
        table: the mangling table the text was produced with
        sort_aliases: internal sort name -> TPTP type name (typed output)

    Raises:
        QianaSyntaxError: the text does not parse or names an unknown identifier.
    """
    try:
        tree = get_parser().parse(text)
    except UnexpectedInput as exc:
        raise QianaSyntaxError(f"TPTP syntax error: {exc.__class__.__name__}", Location(exc.line, exc.column))

    transformer = TptpTransformer(table, sort_aliases)
    try:
        statements = transformer.transform(tree)
    except VisitError as exc:
        if isinstance(exc.orig_exc, QianaError):
            raise exc.orig_exc
        raise QianaSyntaxError(str(exc.orig_exc))

    dialect = statements[0][0] if statements else DIALECT_FOF
    renderer = FormulaRenderer(
        table,
        native_equality=transformer.native_equality,
        typed=dialect == DIALECT_TFF,
        sort_aliases=sort_aliases,
    )
    declarations: List[TypeDeclaration] = []
    formulas: List[AnnotatedFormula] = []
    for _, name, role, body in statements:
        if role == ROLE_TYPE:
            identifier, type_text = body
            declarations.append(TypeDeclaration(name, identifier, type_text))
        else:
            formulas.append(AnnotatedFormula(name, role, body, renderer.formula(body)))

    logger.debug(f"Read {len(formulas)} formulas and {len(declarations)} type declarations")
    return TptpDocument(
        dialect=dialect,
        type_declarations=tuple(declarations),
        formulas=tuple(formulas),
        sort_aliases=dict(sort_aliases or {}),
        table=table,
    )


def reparse(document: TptpDocument) -> TptpDocument:
    """Read a rendered document back with its own table."""
    if document.table is None:
        raise QianaError("document carries no symbol table")
    return read_tptp(document.render(), document.table, document.sort_aliases)
