"""
Surface syntax of .qiana documents.

The parser produces these nodes; the elaborator turns them into core terms
and formulas. Identifiers are not classified here: whether ``X`` is a
variable or a constant depends on the enclosing quantifiers.
"""

from dataclasses import dataclass, field, fields, replace
from typing import Callable, Dict, Optional, Tuple, Union

from src.core.exceptions import Location
from src.modules.axioms.models import AxiomOptions

TRUE_VALUES = ("true", "on", "yes", "1")
MODAL_SYSTEMS = ("k", "t", "s4", "s5", "d")


# Terms

@dataclass(frozen=True)
class Name:
    """An identifier, applied or bare: variable, constant, function or predicate."""
    name: str
    args: Tuple["SurfaceTerm", ...] = ()
    location: Optional[Location] = field(default=None, compare=False)


@dataclass(frozen=True)
class Numeral:
    digits: str


@dataclass(frozen=True)
class Quotation:
    """``[[ payload ]]``."""
    payload: "SurfaceFormula"
    location: Optional[Location] = field(default=None, compare=False)


@dataclass(frozen=True)
class QuotEscape:
    """``quot(t)``; inside a quotation ``t`` is read in the enclosing scope."""
    term: "SurfaceTerm"


SurfaceTerm = Union[Name, Numeral, Quotation, QuotEscape]


# Formulas

@dataclass(frozen=True)
class Predication:
    name: str
    args: Tuple[SurfaceTerm, ...] = ()
    location: Optional[Location] = field(default=None, compare=False)


@dataclass(frozen=True)
class Equation:
    left: SurfaceTerm
    right: SurfaceTerm


@dataclass(frozen=True)
class Comparison:
    """``t1 < t2`` or ``t1 <= t2`` on instants."""
    op: str
    left: SurfaceTerm
    right: SurfaceTerm


@dataclass(frozen=True)
class Negation:
    body: "SurfaceFormula"


@dataclass(frozen=True)
class Binary:
    """op is one of ``&``, ``|``, ``=>``, ``<=>``."""
    op: str
    left: "SurfaceFormula"
    right: "SurfaceFormula"


@dataclass(frozen=True)
class Binder:
    name: str
    sort: Optional[str] = None
    location: Optional[Location] = field(default=None, compare=False)


@dataclass(frozen=True)
class Quantified:
    quantifier: str
    binders: Tuple[Binder, ...]
    body: "SurfaceFormula"


@dataclass(frozen=True)
class InContext:
    """``<c> φ``, sugar for ist(c, [[φ]])."""
    context: SurfaceTerm
    body: "SurfaceFormula"


@dataclass(frozen=True)
class InContextTerm:
    """``<c>! t``, sugar for ist(c, t)."""
    context: SurfaceTerm
    term: SurfaceTerm


@dataclass(frozen=True)
class ModalOperator:
    """``box φ`` or ``dia φ``."""
    op: str
    body: "SurfaceFormula"


SurfaceFormula = Union[
    Predication, Equation, Comparison, Negation, Binary, Quantified, InContext, InContextTerm, ModalOperator
]

SURFACE_NODES = (
    Name, Numeral, Quotation, QuotEscape, Predication, Equation, Comparison,
    Negation, Binary, Binder, Quantified, InContext, InContextTerm, ModalOperator,
)


def rewrite(node, fn: Callable):
    """Rebuild a surface tree bottom-up, applying ``fn`` to every node."""
    if isinstance(node, tuple):
        return tuple(rewrite(child, fn) for child in node)
    if not isinstance(node, SURFACE_NODES):
        return node
    changes = {f.name: rewrite(getattr(node, f.name), fn) for f in fields(node) if f.name != "location"}
    return fn(replace(node, **changes))


def walk(node):
    """Every surface node below (and including) ``node``, parents first."""
    if isinstance(node, tuple):
        for child in node:
            yield from walk(child)
        return
    if not isinstance(node, SURFACE_NODES):
        return
    yield node
    for f in fields(node):
        if f.name != "location":
            yield from walk(getattr(node, f.name))


# Statements

@dataclass(frozen=True)
class SortDeclaration:
    """``#sort name.`` (object subsort, ``args`` None) or a symbol signature.

    Predicates have ``result`` None; propositions have ``args == ()``.
    """
    name: str
    args: Optional[Tuple[str, ...]] = None
    result: Optional[str] = None
    location: Optional[Location] = field(default=None, compare=False)

    @property
    def is_object_sort(self) -> bool:
        return self.args is None


@dataclass(frozen=True)
class SurfaceAxiom:
    formula: SurfaceFormula
    location: Optional[Location] = field(default=None, compare=False)

    @property
    def line(self) -> Optional[int]:
        return self.location.line if self.location else None


@dataclass(frozen=True)
class TheoryDocument:
    options: Dict[str, str] = field(default_factory=dict)
    quotable: Optional[Tuple[str, ...]] = None
    sorts: Tuple[SortDeclaration, ...] = ()
    axioms: Tuple[SurfaceAxiom, ...] = ()
    conjecture: Optional[SurfaceAxiom] = None

    def option(self, key: str, default: Optional[str] = None) -> Optional[str]:
        return self.options.get(key, default)

    def flag(self, key: str) -> bool:
        return str(self.options.get(key, "")).lower() in TRUE_VALUES

    def statements(self) -> Tuple[SurfaceAxiom, ...]:
        return self.axioms + ((self.conjecture,) if self.conjecture else ())

    def map_formulas(self, fn: Callable[[SurfaceFormula], SurfaceFormula]) -> "TheoryDocument":
        axioms = tuple(replace(a, formula=fn(a.formula)) for a in self.axioms)
        conjecture = replace(self.conjecture, formula=fn(self.conjecture.formula)) if self.conjecture else None
        return replace(self, axioms=axioms, conjecture=conjecture)


@dataclass(frozen=True)
class CompileOptions:
    """Elaboration and generation switches; CLI flags merged over #option directives."""
    vars: Optional[int] = None
    typed: bool = False
    temporal: bool = False
    modal: Optional[str] = None
    explosion: bool = False
    disambiguation: bool = False
    explicit_equality: bool = False

    @classmethod
    def from_document(cls, doc: TheoryDocument, overrides: Optional["CompileOptions"] = None) -> "CompileOptions":
        """Document directives, with anything set in ``overrides`` taking precedence."""
        overrides = overrides or cls()
        vars_option = doc.option("vars")
        modal = overrides.modal or doc.option("modal")
        return cls(
            vars=overrides.vars if overrides.vars is not None else (int(vars_option) if vars_option else None),
            typed=overrides.typed or doc.flag("typed"),
            temporal=overrides.temporal or doc.flag("temporal"),
            modal=modal.lower() if modal else None,
            explosion=overrides.explosion or doc.flag("explosion"),
            disambiguation=overrides.disambiguation or doc.flag("disambiguation"),
            explicit_equality=overrides.explicit_equality or doc.flag("explicit_equality"),
        )

    def axiom_options(self) -> AxiomOptions:
        return AxiomOptions(
            explosion=self.explosion,
            disambiguation=self.disambiguation,
            explicit_equality=self.explicit_equality,
        )
