"""
Symbols, base signatures and their augmentation with quoted counterparts.
"""

import re
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from src.core.exceptions import SignatureError

IDENTIFIER = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")

QUOTED_PREFIX = "q_"
QUOTED_VAR_PREFIX = "qv_"
COLLISION_PREFIX = "s_"
RESERVED_PREFIXES = (QUOTED_PREFIX, QUOTED_VAR_PREFIX, COLLISION_PREFIX)


class SymbolKind(str, Enum):
    FUNCTION = "function"
    PREDICATE = "predicate"
    VARIABLE = "variable"


@dataclass(frozen=True, order=True)
class Symbol:
    """A function, predicate or variable name with its arity."""
    name: str
    kind: SymbolKind
    arity: int = 0

    def __post_init__(self):
        if not IDENTIFIER.match(self.name or ""):
            raise SignatureError(f"invalid identifier: {self.name!r}")
        if self.arity < 0:
            raise SignatureError(f"negative arity for {self.name}")
        if self.kind == SymbolKind.VARIABLE and self.arity != 0:
            raise SignatureError(f"variable {self.name} must have arity 0")

    @property
    def is_function(self) -> bool:
        return self.kind == SymbolKind.FUNCTION

    @property
    def is_predicate(self) -> bool:
        return self.kind == SymbolKind.PREDICATE

    def __str__(self) -> str:
        return f"{self.name}/{self.arity}"


def function(name: str, arity: int = 0) -> Symbol:
    return Symbol(name, SymbolKind.FUNCTION, arity)


def predicate(name: str, arity: int = 0) -> Symbol:
    return Symbol(name, SymbolKind.PREDICATE, arity)


# Builtins of the augmented signature
QAND = function("qand", 2)
QNEG = function("qneg", 1)
QFORALL = function("qforall", 2)
QUOT = function("quot", 1)
TRUTH = predicate("truth", 1)
IST = predicate("ist", 2)
EQ = predicate("eq", 2)

# Helpers of the finite axiomatization
REACH = predicate("reach", 1)
WFT = predicate("wft", 1)
EVAL = function("eval", 1)
SUBQ = function("subq", 3)

# Modal pack
BOX = function("box", 0)
WFF = predicate("wff", 1)
TAUTO = predicate("tauto", 1)

CONNECTIVES: Tuple[Symbol, ...] = (QAND, QNEG, QFORALL)
BUILTINS: Tuple[Symbol, ...] = (QAND, QFORALL, QNEG, QUOT, TRUTH, IST)
HELPERS: Tuple[Symbol, ...] = (REACH, WFT, EVAL, SUBQ, WFF, TAUTO)

# Reserved symbols a base signature may still contain, exactly as declared here.
INJECTABLE: FrozenSet[Symbol] = frozenset({IST, EQ, BOX})

RESERVED_NAMES: FrozenSet[str] = frozenset(
    s.name for s in BUILTINS + HELPERS + (EQ, BOX)
)


def is_reserved_name(name: str) -> bool:
    return name in RESERVED_NAMES or name.startswith(RESERVED_PREFIXES)


@dataclass(frozen=True)
class Signature:
    """Base signature S_b together with the finite set V of quotable variables."""
    functions: FrozenSet[Symbol] = frozenset()
    predicates: FrozenSet[Symbol] = frozenset()
    quotable_vars: Tuple[str, ...] = ()

    @property
    def max_arity(self) -> int:
        arities = [s.arity for s in self.functions | self.predicates]
        return max(arities, default=0)

    def sorted_functions(self) -> List[Symbol]:
        return sorted(self.functions, key=lambda s: (s.name, s.arity))

    def sorted_predicates(self) -> List[Symbol]:
        return sorted(self.predicates, key=lambda s: (s.name, s.arity))

    def function_named(self, name: str) -> Optional[Symbol]:
        return next((s for s in self.functions if s.name == name), None)

    def predicate_named(self, name: str) -> Optional[Symbol]:
        return next((s for s in self.predicates if s.name == name), None)

    def with_quotable_vars(self, names: Iterable[str]) -> "Signature":
        return Signature(self.functions, self.predicates, tuple(names))

    def with_symbols(self, functions: Iterable[Symbol] = (), predicates: Iterable[Symbol] = ()) -> "Signature":
        return Signature(
            self.functions | frozenset(functions),
            self.predicates | frozenset(predicates),
            self.quotable_vars,
        )


class SymbolRole(str, Enum):
    """Where a function symbol sits in the augmented signature."""
    BASE_FUNCTION = "base_function"
    QUOTED_FUNCTION = "quoted_function"
    QUOTED_PREDICATE = "quoted_predicate"
    QUOTED_VARIABLE = "quoted_variable"
    CONNECTIVE = "connective"
    QUOT = "quot"
    HELPER = "helper"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class AugmentedSignature:
    """The augmented signature S: base symbols, their quotations and the builtins.

    The maps are stored as sorted pair tuples so the value stays hashable;
    lookups go through the cached dictionaries below.
    """
    base: Signature
    quoted_functions: Tuple[Tuple[Symbol, Symbol], ...]
    quoted_predicates: Tuple[Tuple[Symbol, Symbol], ...]
    quoted_vars: Tuple[Tuple[str, Symbol], ...]
    builtins: Tuple[Symbol, ...] = field(default=BUILTINS)

    @cached_property
    def _quote_map(self) -> Dict[Symbol, Symbol]:
        return dict(self.quoted_functions + self.quoted_predicates)

    @cached_property
    def _origin(self) -> Dict[Symbol, Tuple[SymbolRole, object]]:
        origin: Dict[Symbol, Tuple[SymbolRole, object]] = {}
        for original, quoted in self.quoted_functions:
            origin[quoted] = (SymbolRole.QUOTED_FUNCTION, original)
        for original, quoted in self.quoted_predicates:
            origin[quoted] = (SymbolRole.QUOTED_PREDICATE, original)
        for name, quoted in self.quoted_vars:
            origin[quoted] = (SymbolRole.QUOTED_VARIABLE, name)
        return origin

    @cached_property
    def _quoted_var_map(self) -> Dict[str, Symbol]:
        return dict(self.quoted_vars)

    @property
    def quotable_vars(self) -> Tuple[str, ...]:
        return self.base.quotable_vars

    def role(self, symbol: Symbol) -> SymbolRole:
        if symbol in self._origin:
            return self._origin[symbol][0]
        if symbol in CONNECTIVES:
            return SymbolRole.CONNECTIVE
        if symbol == QUOT:
            return SymbolRole.QUOT
        if symbol in self.base.functions:
            return SymbolRole.BASE_FUNCTION
        if symbol in HELPERS:
            return SymbolRole.HELPER
        return SymbolRole.UNKNOWN

    def original(self, quoted: Symbol):
        """Base symbol (or variable name) a quoted symbol stands for."""
        return self._origin[quoted][1]

    def quote_symbol(self, symbol: Symbol) -> Optional[Symbol]:
        return self._quote_map.get(symbol)

    def quoted_var(self, name: str) -> Optional[Symbol]:
        return self._quoted_var_map.get(name)

    def is_quotable_var(self, name: str) -> bool:
        return name in self._quoted_var_map

    @property
    def base_functions(self) -> List[Symbol]:
        return [original for original, _ in self.quoted_functions]

    @property
    def base_predicates(self) -> List[Symbol]:
        """P ∖ {truth}: every predicate that has a quoted counterpart."""
        return [original for original, _ in self.quoted_predicates]

    @property
    def quoted_function_symbols(self) -> List[Symbol]:
        return [quoted for _, quoted in self.quoted_functions]

    @property
    def quoted_predicate_symbols(self) -> List[Symbol]:
        return [quoted for _, quoted in self.quoted_predicates]

    @property
    def quoted_var_symbols(self) -> List[Symbol]:
        return [quoted for _, quoted in self.quoted_vars]

    @property
    def functions(self) -> List[Symbol]:
        """The augmented function set F, in generation order."""
        return (
            self.base_functions
            + self.quoted_function_symbols
            + self.quoted_predicate_symbols
            + self.quoted_var_symbols
            + [QAND, QNEG, QFORALL, QUOT]
        )

    @property
    def predicates(self) -> List[Symbol]:
        """The augmented predicate set P = P_b ⊔ {truth}."""
        return self.base_predicates + [TRUTH]
