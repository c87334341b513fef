"""
TPTP documents as produced by the emitter and read back by the reader.
"""

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from src.core.exceptions import QianaError
from src.modules.syntax.models import Formula
from src.modules.tptp.mangle import SymbolTable

ROLE_AXIOM = "axiom"
ROLE_CONJECTURE = "conjecture"
ROLE_TYPE = "type"

DIALECT_FOF = "fof"
DIALECT_TFF = "tff"


@dataclass(frozen=True)
class TypeDeclaration:
    """``tff(name, type, identifier: type).``; sorts are declared with ``$tType``."""
    name: str
    identifier: str
    type_text: str

    def render(self) -> str:
        return f"tff({self.name}, type, {self.identifier}: {self.type_text})."


@dataclass(frozen=True)
class AnnotatedFormula:
    name: str
    role: str
    formula: Formula
    text: str
    comment: Optional[str] = None

    def render(self, dialect: str) -> str:
        line = f"{dialect}({self.name}, {self.role}, {self.text})."
        if self.comment:
            return f"% {self.comment}\n{line}"
        return line


@dataclass(frozen=True)
class TptpDocument:
    """An ordered TPTP problem.

    ``table`` is the mangling table the text was produced with and is what
    the reader inverts; ``sort_aliases`` maps internal sort names to TPTP
    type names.
    """
    dialect: str = DIALECT_FOF
    header: Tuple[str, ...] = ()
    type_declarations: Tuple[TypeDeclaration, ...] = ()
    formulas: Tuple[AnnotatedFormula, ...] = ()
    sort_aliases: Dict[str, str] = field(default_factory=dict)
    table: Optional[SymbolTable] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        names = [d.name for d in self.type_declarations] + [f.name for f in self.formulas]
        if len(names) != len(set(names)):
            raise QianaError("TPTP document has duplicate formula names")
        if sum(1 for f in self.formulas if f.role == ROLE_CONJECTURE) > 1:
            raise QianaError("TPTP document has more than one conjecture")

    @property
    def conjecture(self) -> Optional[AnnotatedFormula]:
        return next((f for f in self.formulas if f.role == ROLE_CONJECTURE), None)

    def structure(self) -> Tuple:
        """Comparable content, ignoring comments and rendered text."""
        return (
            self.dialect,
            tuple((d.name, d.identifier, d.type_text) for d in self.type_declarations),
            tuple((f.name, f.role, f.formula) for f in self.formulas),
        )

    def render(self) -> str:
        lines = [f"% {line}" if line else "%" for line in self.header]
        if self.type_declarations:
            lines.append("")
            lines.extend(d.render() for d in self.type_declarations)
        if self.formulas:
            lines.append("")
            lines.extend(f.render(self.dialect) for f in self.formulas)
        return "\n".join(lines) + "\n"
