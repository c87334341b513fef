"""
TPTP rendering of axiom sets.

The core only knows ~, &, ! and atoms; the renderer recognises the exact
shapes the sugar builders produce (<=>, =>, |, ?) so files stay legible and
reading a file back yields the same core formulas.
"""

import logging
from typing import Dict, Iterable, List, Optional, Set, Tuple

from src.core.exceptions import UnsupportedConstruct
from src.modules.axioms.models import AxiomSet
from src.modules.signature.models import EQ, Symbol
from src.modules.syntax.models import And, App, Atom, Escape, Forall, Formula, Not, Term, Var
from src.modules.syntax.services import symbols_of
from src.modules.tptp.mangle import SymbolTable, mangle_variable
from src.modules.tptp.models import (
    DIALECT_FOF,
    DIALECT_TFF,
    ROLE_AXIOM,
    ROLE_CONJECTURE,
    AnnotatedFormula,
    TptpDocument,
    TypeDeclaration,
)
from src.modules.typed.services import ensure_well_typed

logger = logging.getLogger(__name__)

CONJECTURE_NAME = "goal"


# Sugar recognition, tried in this order: iff, implies, or, exists

def match_implies(f: Formula) -> Optional[Tuple[Formula, Formula]]:
    if isinstance(f, Not) and isinstance(f.body, And):
        left, right = f.body.left, f.body.right
        if isinstance(left, Not) and isinstance(left.body, Not) and isinstance(right, Not):
            return left.body.body, right.body
    return None


def match_or(f: Formula) -> Optional[Tuple[Formula, Formula]]:
    if isinstance(f, Not) and isinstance(f.body, And):
        left, right = f.body.left, f.body.right
        if isinstance(left, Not) and isinstance(right, Not):
            return left.body, right.body
    return None


def match_iff(f: Formula) -> Optional[Tuple[Formula, Formula]]:
    if isinstance(f, And):
        forward, backward = match_implies(f.left), match_implies(f.right)
        if forward and backward and forward == (backward[1], backward[0]):
            return forward
    return None


def match_exists(f: Formula) -> Optional[Forall]:
    if isinstance(f, Not) and isinstance(f.body, Forall) and isinstance(f.body.body, Not):
        return f.body
    return None


class FormulaRenderer:
    """Renders core formulas with one symbol table and one equality mode."""

    def __init__(
        self,
        table: SymbolTable,
        native_equality: bool = True,
        typed: bool = False,
        sort_aliases: Optional[Dict[str, str]] = None,
    ):
        self.table = table
        self.native_equality = native_equality
        self.typed = typed
        self.sort_aliases = sort_aliases or {}

    def term(self, t: Term) -> str:
        if isinstance(t, Var):
            return mangle_variable(t.name)
        if isinstance(t, App):
            name = self.table.identifier(t.symbol)
            if not t.args:
                return name
            return f"{name}({', '.join(self.term(a) for a in t.args)})"
        if isinstance(t, Escape):
            raise UnsupportedConstruct("unresolved quot(...) escape outside a quotation")
        raise UnsupportedConstruct(f"not a term: {t!r}")

    def _binder(self, name: str, sort: Optional[str]) -> str:
        var = mangle_variable(name)
        if not self.typed:
            return var
        if sort is None:
            raise UnsupportedConstruct(f"typed output needs a sort for variable {name}")
        return f"{var}: {self.sort_aliases.get(sort, sort)}"

    def _quantifier(self, mark: str, first: Forall, through_exists: bool) -> str:
        binders = [self._binder(first.var, first.sort)]
        body = first.body.body if through_exists else first.body
        while True:
            if through_exists:
                nested = match_exists(body)
                if nested is None:
                    break
                binders.append(self._binder(nested.var, nested.sort))
                body = nested.body.body
            else:
                if not isinstance(body, Forall):
                    break
                binders.append(self._binder(body.var, body.sort))
                body = body.body
        return f"{mark}[{', '.join(binders)}] : {self.unit(body)}"

    def formula(self, f: Formula) -> str:
        """Top-level rendering; binary connectives are parenthesised."""
        for matcher, op in ((match_iff, "<=>"), (match_implies, "=>"), (match_or, "|")):
            parts = matcher(f)
            if parts:
                return f"({self.unit(parts[0])} {op} {self.unit(parts[1])})"
        witness = match_exists(f)
        if witness is not None:
            return self._quantifier("? ", witness, through_exists=True)
        if isinstance(f, And):
            return f"({self.unit(f.left)} & {self.unit(f.right)})"
        if isinstance(f, Not):
            return f"~ {self.unit(f.body)}"
        if isinstance(f, Forall):
            return self._quantifier("! ", f, through_exists=False)
        if isinstance(f, Atom):
            return self.atom(f)
        raise UnsupportedConstruct(f"not a formula: {f!r}")

    def unit(self, f: Formula) -> str:
        text = self.formula(f)
        if text.startswith(("! ", "? ", "~ ")):
            return f"({text})"
        return text

    def atom(self, a: Atom) -> str:
        if a.predicate == EQ and (self.native_equality or self.typed):
            left, right = a.args
            return f"({self.term(left)} = {self.term(right)})"
        name = self.table.identifier(a.predicate)
        if not a.args:
            return name
        return f"{name}({', '.join(self.term(t) for t in a.args)})"


def collect_symbols(formulas: Iterable[Formula]) -> Set[Symbol]:
    found: Set[Symbol] = set()
    for f in formulas:
        found |= symbols_of(f)
    return found


def header_lines(axioms: AxiomSet, dialect: str) -> List[str]:
    manifest = axioms.manifest
    lines = [
        f"Qiana closure ({dialect.upper()})",
        f"manifest digest: {manifest.digest}",
        f"axioms: {len(axioms)}",
    ]
    if manifest.packs:
        lines.append("packs: " + ", ".join(f"{k}={v}" for k, v in manifest.packs.items()))
    lines.extend(f"resolved: {r}" for r in manifest.resolutions)
    return lines


def _annotate(axioms: AxiomSet, renderer: FormulaRenderer, conjecture: Optional[Formula]) -> List[AnnotatedFormula]:
    annotated = [
        AnnotatedFormula(a.name, ROLE_AXIOM, a.formula, renderer.formula(a.formula), str(a.provenance))
        for a in axioms
    ]
    if conjecture is not None:
        annotated.append(
            AnnotatedFormula(CONJECTURE_NAME, ROLE_CONJECTURE, conjecture, renderer.formula(conjecture))
        )
    return annotated


def emit_fof(
    axioms: AxiomSet,
    conjecture: Optional[Formula] = None,
    table: Optional[SymbolTable] = None,
) -> TptpDocument:
    """Render an untyped closure as FOF.

    Equality renders natively unless the manifest records explicit equality.
    """
    formulas = axioms.formulas() + ([conjecture] if conjecture is not None else [])
    table = table or SymbolTable.build(collect_symbols(formulas))
    native = not axioms.manifest.options.get("explicit_equality", False)
    renderer = FormulaRenderer(table, native_equality=native)
    document = TptpDocument(
        dialect=DIALECT_FOF,
        header=tuple(header_lines(axioms, DIALECT_FOF)),
        formulas=tuple(_annotate(axioms, renderer, conjecture)),
        table=table,
    )
    logger.debug(f"Emitted FOF document with {len(document.formulas)} formulas")
    return document


def emit_tff(axioms: AxiomSet, tsig, conjecture: Optional[Formula] = None) -> TptpDocument:
    """Render a typed closure as monomorphic TFF.

    Args:
        axioms: typed closure; every binder carries a sort
        tsig: TypedSignature providing sorts and symbol types
        conjecture: optional goal

    Raises:
        IllTyped: a formula does not typecheck against ``tsig``.
    """
    formulas = axioms.formulas() + ([conjecture] if conjecture is not None else [])
    for f in formulas:
        ensure_well_typed(f, tsig)

    symbols = collect_symbols(formulas) | set(tsig.declared_symbols())
    symbols.discard(EQ)
    table = SymbolTable.build(symbols, fixed=tsig.family_symbols())
    aliases = tsig.sort_aliases()
    renderer = FormulaRenderer(table, typed=True, sort_aliases=aliases)

    declarations = [
        TypeDeclaration(f"type_{aliases[sort]}", aliases[sort], "$tType")
        for sort in tsig.sorts
    ]
    for symbol, identifier in table.items():
        declarations.append(
            TypeDeclaration(f"decl_{identifier}", identifier, tsig.tptp_type(symbol))
        )

    document = TptpDocument(
        dialect=DIALECT_TFF,
        header=tuple(header_lines(axioms, DIALECT_TFF)),
        type_declarations=tuple(declarations),
        formulas=tuple(_annotate(axioms, renderer, conjecture)),
        table=table,
        sort_aliases=aliases,
    )
    logger.debug(
        f"Emitted TFF document with {len(declarations)} declarations and {len(document.formulas)} formulas"
    )
    return document
