"""
Propositional modal formulas and the systems they are read in.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Tuple, Union


@dataclass(frozen=True)
class Prop:
    name: str


@dataclass(frozen=True)
class MNot:
    body: "ModalFormula"


@dataclass(frozen=True)
class MAnd:
    left: "ModalFormula"
    right: "ModalFormula"


@dataclass(frozen=True)
class MOr:
    left: "ModalFormula"
    right: "ModalFormula"


@dataclass(frozen=True)
class MImplies:
    left: "ModalFormula"
    right: "ModalFormula"


@dataclass(frozen=True)
class Box:
    body: "ModalFormula"


@dataclass(frozen=True)
class Diamond:
    body: "ModalFormula"


ModalFormula = Union[Prop, MNot, MAnd, MOr, MImplies, Box, Diamond]


class ModalSystem(str, Enum):
    K = "k"
    T = "t"
    S4 = "s4"
    S5 = "s5"
    D = "d"

    @property
    def extra_axioms(self) -> Tuple[str, ...]:
        """Axioms added on top of QK + QN."""
        return {
            ModalSystem.K: (),
            ModalSystem.T: ("QT",),
            ModalSystem.S4: ("QT", "Q4"),
            ModalSystem.S5: ("QT", "Q5"),
            ModalSystem.D: ("QD",),
        }[self]
