"""
Event-calculus symbols.

    HoldsAt(f, t)          Initiates(a, f, t)     Clipped(t1, f, t2)
    Happens(a, t1, t2)     Terminates(a, f, t)    Declipped(t1, f, t2)
    Initially_P(f)         Releases(a, f, t)

Fluents are quoted formulas; ``<`` and ``<=`` on instants are ``lt`` and
``leq``, the first instant is the constant ``time0``.
"""

from dataclasses import dataclass
from typing import Dict, Tuple

from src.modules.signature.models import Symbol, function, predicate

HOLDS_AT = predicate("HoldsAt", 2)
HAPPENS = predicate("Happens", 3)
INITIATES = predicate("Initiates", 3)
TERMINATES = predicate("Terminates", 3)
RELEASES = predicate("Releases", 3)
CLIPPED = predicate("Clipped", 3)
DECLIPPED = predicate("Declipped", 3)
INITIALLY_P = predicate("Initially_P", 1)
LT = predicate("lt", 2)
LEQ = predicate("leq", 2)
TIME_ZERO = function("time0", 0)

# Surface spellings that map onto the symbols above
SURFACE_NAMES: Dict[str, Symbol] = {
    "Initially": INITIALLY_P,
    "0": TIME_ZERO,
    "<": LT,
    "<=": LEQ,
}


@dataclass(frozen=True)
class TemporalSignature:
    predicates: Tuple[Symbol, ...] = (
        HOLDS_AT, HAPPENS, INITIATES, TERMINATES, RELEASES, CLIPPED, DECLIPPED, INITIALLY_P, LT, LEQ,
    )
    functions: Tuple[Symbol, ...] = (TIME_ZERO,)

    def symbols(self) -> Tuple[Symbol, ...]:
        return self.predicates + self.functions

    def by_name(self) -> Dict[str, Symbol]:
        return {s.name: s for s in self.symbols()}


TEMPORAL_SIGNATURE = TemporalSignature()
