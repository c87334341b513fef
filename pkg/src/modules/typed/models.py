"""
Sorts and typed signatures.

Every quotation lives in sort q whatever it quotes. Each sort γ gets its own
escape and helper family:

    quot_γ : γ -> q      eval_γ : q -> γ
    reach_γ : γ          wft_γ : q          eq_γ : γ * γ  (explicit equality only)
"""

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, List, Optional, Tuple

from src.modules.signature.models import (
    BOX,
    EQ,
    IST,
    QAND,
    QFORALL,
    QNEG,
    SUBQ,
    TAUTO,
    TRUTH,
    WFF,
    AugmentedSignature,
    Symbol,
    SymbolRole,
    function,
    predicate,
)
from src.modules.temporal.models import (
    CLIPPED,
    DECLIPPED,
    HAPPENS,
    HOLDS_AT,
    INITIALLY_P,
    INITIATES,
    LEQ,
    LT,
    RELEASES,
    TERMINATES,
    TIME_ZERO,
)

FORMULA_SORT = "$o"


class SortTag(str, Enum):
    OBJECT = "o"
    QUOTATION = "q"
    CONTEXT = "c"
    TIME = "tau"
    ACTION = "a"


BASE_SORTS: Tuple[str, ...] = tuple(tag.value for tag in SortTag)

# TPTP type names that differ from the internal sort name
TPTP_SORT_NAMES: Dict[str, str] = {SortTag.ACTION.value: "act"}

O, Q, C, TAU, A = (tag.value for tag in SortTag)


@dataclass(frozen=True)
class SymbolType:
    """``args -> result`` for functions, ``args`` alone (result None) for predicates."""
    args: Tuple[str, ...] = ()
    result: Optional[str] = None

    @property
    def is_predicate(self) -> bool:
        return self.result is None

    def __str__(self) -> str:
        args = " * ".join(self.args) if self.args else "()"
        return args if self.result is None else f"{args} -> {self.result}"


# Sorts fixed for every typed document
FIXED_TYPES: Dict[Symbol, SymbolType] = {
    IST: SymbolType((C, Q)),
    TRUTH: SymbolType((Q,)),
    QAND: SymbolType((Q, Q), Q),
    QNEG: SymbolType((Q,), Q),
    QFORALL: SymbolType((Q, Q), Q),
    SUBQ: SymbolType((Q, Q, Q), Q),
    BOX: SymbolType((), C),
    WFF: SymbolType((Q,)),
    TAUTO: SymbolType((Q,)),
    HOLDS_AT: SymbolType((Q, TAU)),
    HAPPENS: SymbolType((A, TAU, TAU)),
    INITIATES: SymbolType((A, Q, TAU)),
    TERMINATES: SymbolType((A, Q, TAU)),
    RELEASES: SymbolType((A, Q, TAU)),
    CLIPPED: SymbolType((TAU, Q, TAU)),
    DECLIPPED: SymbolType((TAU, Q, TAU)),
    INITIALLY_P: SymbolType((Q,)),
    LT: SymbolType((TAU, TAU)),
    LEQ: SymbolType((TAU, TAU)),
    TIME_ZERO: SymbolType((), TAU),
}

FAMILY_PREFIXES = ("quot_", "eval_", "reach_", "wft_", "eq_")


def quot_symbol(sort: str) -> Symbol:
    return function(f"quot_{sort}", 1)


def eval_symbol(sort: str) -> Symbol:
    return function(f"eval_{sort}", 1)


def reach_symbol(sort: str) -> Symbol:
    return predicate(f"reach_{sort}", 1)


def wft_symbol(sort: str) -> Symbol:
    return predicate(f"wft_{sort}", 1)


def eq_symbol(sort: str) -> Symbol:
    return predicate(f"eq_{sort}", 2)


@dataclass(frozen=True)
class TypedSignature:
    """An augmented signature together with δ.

    ``declarations`` gives the type of every base symbol that is not fixed;
    ``var_sorts`` gives the sort of every quotable variable. Object subsorts
    declared by the user are appended to the five base sorts.
    """
    asig: AugmentedSignature
    declarations: Dict[Symbol, SymbolType] = field(default_factory=dict)
    var_sorts: Dict[str, str] = field(default_factory=dict)
    object_sorts: Tuple[str, ...] = ()
    equality_sort: str = O
    explicit_equality: bool = False

    @property
    def sorts(self) -> Tuple[str, ...]:
        return BASE_SORTS + self.object_sorts

    def is_sort(self, name: str) -> bool:
        return name in self.sorts

    def sort_aliases(self) -> Dict[str, str]:
        return {s: TPTP_SORT_NAMES.get(s, s) for s in self.sorts}

    @cached_property
    def _families(self) -> Dict[Symbol, SymbolType]:
        families: Dict[Symbol, SymbolType] = {}
        for sort in self.sorts:
            families[quot_symbol(sort)] = SymbolType((sort,), Q)
            families[eval_symbol(sort)] = SymbolType((Q,), sort)
            families[reach_symbol(sort)] = SymbolType((sort,))
            families[wft_symbol(sort)] = SymbolType((Q,))
            if self.explicit_equality:
                families[eq_symbol(sort)] = SymbolType((sort, sort))
        return families

    def family_symbols(self) -> List[Symbol]:
        return list(self._families)

    def base_type(self, symbol: Symbol) -> Optional[SymbolType]:
        if symbol == EQ:
            return SymbolType((self.equality_sort, self.equality_sort))
        return FIXED_TYPES.get(symbol) or self.declarations.get(symbol)

    def symbol_type(self, symbol: Symbol) -> Optional[SymbolType]:
        """δ(symbol); None for unknown symbols and for polymorphic ``=``."""
        if symbol == EQ:
            return None
        if symbol in self._families:
            return self._families[symbol]
        role = self.asig.role(symbol)
        if role in (SymbolRole.QUOTED_FUNCTION, SymbolRole.QUOTED_PREDICATE):
            return SymbolType((Q,) * symbol.arity, Q)
        if role == SymbolRole.QUOTED_VARIABLE:
            return SymbolType((), Q)
        return FIXED_TYPES.get(symbol) or self.declarations.get(symbol)

    def var_sort(self, name: str) -> Optional[str]:
        return self.var_sorts.get(name)

    def declared_symbols(self) -> List[Symbol]:
        """Every symbol a TFF document over this signature declares."""
        symbols = (
            self.asig.base_functions
            + self.asig.base_predicates
            + self.asig.quoted_function_symbols
            + self.asig.quoted_predicate_symbols
            + self.asig.quoted_var_symbols
            + [QAND, QNEG, QFORALL, TRUTH, SUBQ]
            + self.family_symbols()
        )
        return [s for s in dict.fromkeys(symbols) if s != EQ]

    def tptp_type(self, symbol: Symbol) -> str:
        """``s``, ``s1 > s0`` or ``(s1 * s2) > s0``; predicates return ``$o``."""
        declared = self.symbol_type(symbol)
        if declared is None:
            raise KeyError(f"no type for {symbol}")
        aliases = self.sort_aliases()
        args = [aliases[s] for s in declared.args]
        result = FORMULA_SORT if declared.is_predicate else aliases[declared.result]
        if not args:
            return result
        if len(args) == 1:
            return f"{args[0]} > {result}"
        return f"({' * '.join(args)}) > {result}"
