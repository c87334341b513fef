"""
Immutable first-order terms and formulas.

The formula core is {Atom, Not, And, Forall}; Or, Implies, Iff and Exists
are expanded into it by the builders in ``services``.
"""

from dataclasses import dataclass
from typing import Optional, Tuple, Union

from src.core.exceptions import ArityError
from src.modules.signature.models import Symbol


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class App:
    """Function application; constants are applications with no arguments."""
    symbol: Symbol
    args: Tuple["Term", ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if not self.symbol.is_function:
            raise ArityError(f"{self.symbol.name} is not a function symbol")
        if len(self.args) != self.symbol.arity:
            raise ArityError(
                f"{self.symbol.name} expects {self.symbol.arity} arguments, got {len(self.args)}"
            )

    def __str__(self) -> str:
        if not self.args:
            return self.symbol.name
        return f"{self.symbol.name}({', '.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class Escape:
    """An injection ``quot(e)`` written inside a quotation payload.

    Only meaningful as input to ``quote``, which turns it into quot(e);
    elaborated theories never contain it.
    """
    term: "Term"

    def __str__(self) -> str:
        return f"quot({self.term})"


Term = Union[Var, App, Escape]


@dataclass(frozen=True)
class Atom:
    predicate: Symbol
    args: Tuple[Term, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if not self.predicate.is_predicate:
            raise ArityError(f"{self.predicate.name} is not a predicate symbol")
        if len(self.args) != self.predicate.arity:
            raise ArityError(
                f"{self.predicate.name} expects {self.predicate.arity} arguments, got {len(self.args)}"
            )

    def __str__(self) -> str:
        if not self.args:
            return self.predicate.name
        return f"{self.predicate.name}({', '.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class Not:
    body: "Formula"

    def __str__(self) -> str:
        return f"~{self.body}"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return f"({self.left} & {self.right})"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"
    sort: Optional[str] = None  # typed mode only

    def __str__(self) -> str:
        binder = f"{self.var}:{self.sort}" if self.sort else self.var
        return f"![{binder}]: {self.body}"


Formula = Union[Atom, Not, And, Forall]
Node = Union[Term, Formula]

TERM_TYPES = (Var, App, Escape)
FORMULA_TYPES = (Atom, Not, And, Forall)


def is_term(node) -> bool:
    return isinstance(node, TERM_TYPES)


def is_formula(node) -> bool:
    return isinstance(node, FORMULA_TYPES)


@dataclass(frozen=True)
class MembershipFlags:
    """Membership of a term in the quotation sets Q, Qv, 𝑻, 𝑻ᵥ, 𝑳, 𝑳ᵥ."""
    in_Q: bool = False
    in_Qv: bool = False
    in_boldT: bool = False
    in_boldTv: bool = False
    in_boldL: bool = False
    in_boldLv: bool = False
    is_quotable: bool = False


NO_MEMBERSHIP = MembershipFlags()
