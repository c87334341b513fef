"""
Injective mapping from symbols and variables to TPTP identifiers.

Reserved and quoted symbols (builtins, helpers, q_*, qv_*, per-sort
families) keep their names. Base symbols are lowercased; a lowercased name
that lands on a reserved name or does not start with a letter gets the s_
prefix, and remaining duplicates get _1, _2, ... in sorted-name order.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Optional

from src.core.exceptions import QianaSyntaxError
from src.modules.signature.models import COLLISION_PREFIX, Symbol, is_reserved_name

logger = logging.getLogger(__name__)

VARIABLE_PREFIX = "V_"


def mangle_variable(name: str) -> str:
    """Upper-case names stay; everything else (and anything already V_-prefixed) gets V_."""
    if name[0].isupper() and not name.startswith(VARIABLE_PREFIX):
        return name
    return f"{VARIABLE_PREFIX}{name}"


def unmangle_variable(identifier: str) -> str:
    if identifier.startswith(VARIABLE_PREFIX):
        return identifier[len(VARIABLE_PREFIX):]
    return identifier


@dataclass
class SymbolTable:
    """Symbol <-> identifier map for one document."""
    fixed_names: FrozenSet[str] = frozenset()
    _forward: Dict[Symbol, str] = field(default_factory=dict)
    _backward: Dict[str, Symbol] = field(default_factory=dict)

    @classmethod
    def build(cls, symbols: Iterable[Symbol], fixed: Iterable[Symbol] = ()) -> "SymbolTable":
        """Assign identifiers deterministically.

        Args:
            symbols: every symbol the document mentions
            fixed: symbols that must keep their names even though they are
                not reserved (for instance per-sort families)
        """
        fixed = set(fixed)
        table = cls(fixed_names=frozenset(s.name for s in fixed))
        ordered = sorted(set(symbols) | fixed, key=lambda s: (s.name, s.kind.value, s.arity))

        kept = [s for s in ordered if table._keeps_name(s)]
        for symbol in kept:
            table._assign(symbol, symbol.name)

        for symbol in ordered:
            if symbol in table._forward:
                continue
            candidate = symbol.name.lower()
            if is_reserved_name(candidate) or candidate in table.fixed_names or not candidate[0].isalpha():
                candidate = f"{COLLISION_PREFIX}{candidate}"
            identifier = candidate
            counter = 1
            while identifier in table._backward:
                identifier = f"{candidate}_{counter}"
                counter += 1
            table._assign(symbol, identifier)
        return table

    def _keeps_name(self, symbol: Symbol) -> bool:
        return is_reserved_name(symbol.name) or symbol.name in self.fixed_names

    def _assign(self, symbol: Symbol, identifier: str) -> None:
        if identifier in self._backward and self._backward[identifier] != symbol:
            raise ValueError(f"identifier {identifier} assigned twice")
        self._forward[symbol] = identifier
        self._backward[identifier] = symbol

    def identifier(self, symbol: Symbol) -> str:
        if symbol not in self._forward:
            raise KeyError(f"symbol {symbol} is not in the table")
        return self._forward[symbol]

    def symbol(self, identifier: str) -> Symbol:
        if identifier not in self._backward:
            raise QianaSyntaxError(f"unknown identifier {identifier}")
        return self._backward[identifier]

    def lookup(self, identifier: str) -> Optional[Symbol]:
        return self._backward.get(identifier)

    def items(self):
        return sorted(self._forward.items(), key=lambda item: item[1])

    def __len__(self) -> int:
        return len(self._forward)


def mangle_symbol(symbol: Symbol, table: Optional[SymbolTable] = None) -> str:
    """Identifier of a symbol, within ``table`` when one is given.

    Without a table the symbol is mangled on its own, so duplicate
    resolution does not apply.
    """
    if table is None:
        table = SymbolTable.build([symbol])
    return table.identifier(symbol)
