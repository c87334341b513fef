"""
Error hierarchy shared by every Qiana module.

Operations that produce diagnostics (signature validation, typechecking)
return them as values; everything else raises one of these.
"""

from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class Location:
    """1-based source position."""
    line: int
    column: int = 0

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class QianaError(Exception):
    """Base class for all compiler and runner errors."""

    def __init__(self, message: str, location: Optional[Location] = None):
        super().__init__(message)
        self.message = message
        self.location = location

    def __str__(self) -> str:
        if self.location is not None:
            return f"{self.location}: {self.message}"
        return self.message


class SignatureError(QianaError):
    """Reserved name or name collision in a signature."""


class ArityError(QianaError):
    """A term or atom was built with the wrong number of arguments."""


class ArityClash(QianaError):
    """A document uses one symbol with two different arities or kinds."""


class NotQuotable(QianaError):
    """The node lies outside T_q / L_q."""


class NotInQv(QianaError):
    """unquote was called on a term outside Qv."""


class OpenFormula(QianaError):
    """A formula that must be closed has free variables."""


class QianaSyntaxError(QianaError):
    """Surface or TPTP text failed to parse."""


class UnknownSort(QianaError):
    """Typed mode met a sort or a symbol without a sort declaration."""


class IllTyped(QianaError):
    """A typed formula does not typecheck."""


class UndeclaredProposition(QianaError):
    """A modal formula mentions a proposition that is not an arity-0 predicate."""


class UnsupportedConstruct(QianaError):
    """The emitter met a node it cannot render."""


class SpawnFailure(QianaError):
    """The external prover could not be started."""
