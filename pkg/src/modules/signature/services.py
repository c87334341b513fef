"""
Signature validation, augmentation and the default quotable-variable rule.
"""

import logging
from collections import defaultdict
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from src.core.exceptions import NotQuotable, SignatureError
from src.core.utils import Diagnostic
from src.modules.signature.models import (
    BUILTINS,
    INJECTABLE,
    IST,
    QUOTED_PREFIX,
    QUOTED_VAR_PREFIX,
    AugmentedSignature,
    Signature,
    Symbol,
    function,
    is_reserved_name,
)

logger = logging.getLogger(__name__)

MIN_QUOTABLE_VARS = 2
DEFAULT_PADDING = 3


def validate_base(sig: Signature) -> List[Diagnostic]:
    """Check the invariants of a base signature.

    Returns:
        One diagnostic per violated invariant; empty when the signature is valid.
    """
    diagnostics: List[Diagnostic] = []

    for symbol in sorted(sig.functions | sig.predicates):
        if is_reserved_name(symbol.name) and symbol not in INJECTABLE:
            diagnostics.append(Diagnostic("reserved", f"reserved name: {symbol.name}", symbol.name))

    kinds: Dict[str, set] = defaultdict(set)
    for symbol in sig.functions | sig.predicates:
        kinds[symbol.name].add((symbol.kind, symbol.arity))
    for name in sig.quotable_vars:
        kinds[name].add(("variable", 0))
    for name in sorted(kinds):
        if len(kinds[name]) > 1:
            diagnostics.append(Diagnostic("collision", f"name collision: {name}", name))

    if len(set(sig.quotable_vars)) != len(sig.quotable_vars):
        diagnostics.append(Diagnostic("duplicate_var", "duplicate quotable variable"))

    needed = max(MIN_QUOTABLE_VARS, sig.max_arity)
    if len(sig.quotable_vars) < needed:
        diagnostics.append(
            Diagnostic("v_too_small", f"V too small: need ≥ {needed}", ",".join(sig.quotable_vars))
        )
    return diagnostics


def with_ist(sig: Signature) -> Signature:
    """Inject ist/2 unless the signature already has it."""
    if IST in sig.predicates:
        return sig
    return sig.with_symbols(predicates=[IST])


def augment(sig: Signature) -> AugmentedSignature:
    """Build the augmented signature of a base signature.

    ist/2 is injected when absent. Quoted counterparts are named with the
    q_ prefix, quoted variables with qv_.

    Raises:
        SignatureError: reserved names or any other invalid base signature.
    """
    sig = with_ist(sig)
    diagnostics = validate_base(sig)
    if diagnostics:
        raise SignatureError("; ".join(d.message for d in diagnostics))

    quoted_functions = tuple(
        (f, function(f"{QUOTED_PREFIX}{f.name}", f.arity)) for f in sig.sorted_functions()
    )
    quoted_predicates = tuple(
        (p, function(f"{QUOTED_PREFIX}{p.name}", p.arity)) for p in sig.sorted_predicates()
    )
    quoted_vars = tuple(
        (name, function(f"{QUOTED_VAR_PREFIX}{name}", 0)) for name in sig.quotable_vars
    )
    asig = AugmentedSignature(
        base=sig,
        quoted_functions=quoted_functions,
        quoted_predicates=quoted_predicates,
        quoted_vars=quoted_vars,
        builtins=BUILTINS,
    )
    logger.debug(
        f"Augmented signature: {len(quoted_functions)} quoted functions, "
        f"{len(quoted_predicates)} quoted predicates, {len(quoted_vars)} quoted variables"
    )
    return asig


def build_signature(
    functions: Iterable[Symbol] = (),
    predicates: Iterable[Symbol] = (),
    quotable_vars: Sequence[str] = ("x", "y", "z"),
) -> AugmentedSignature:
    """Convenience constructor used by tests and the modal/temporal packs."""
    return augment(Signature(frozenset(functions), frozenset(predicates), tuple(quotable_vars)))


def default_quotable_vars(
    used: Iterable[str],
    max_arity: int,
    requested: Optional[int] = None,
    declared: Optional[Sequence[str]] = None,
    avoid: Iterable[str] = (),
) -> Tuple[str, ...]:
    """Compute V for a document.

    Args:
        used: variables occurring inside quotations, in order of appearance
        max_arity: highest arity over the base signature
        requested: explicit |V| (``--vars N``)
        declared: explicit list from a ``#quotable`` directive
        avoid: names already taken by symbols; padding skips them

    Raises:
        NotQuotable: an explicit V cannot hold every variable that is used.
    """
    used = list(dict.fromkeys(used))
    if declared is not None:
        base = list(dict.fromkeys(declared))
        missing = [name for name in used if name not in base]
        if missing:
            raise NotQuotable(f"variable {missing[0]} is not in the declared quotable set")
    else:
        base = used

    if requested is not None:
        if len(base) > requested:
            raise NotQuotable(
                f"{len(base)} quotable variables are needed but |V| is fixed at {requested}"
            )
        target = requested
    elif declared is not None:
        target = max(len(base), MIN_QUOTABLE_VARS, max_arity)
    else:
        target = max(len(base), DEFAULT_PADDING, max_arity)

    taken = set(avoid)
    padded = list(base)
    counter = 1
    while len(padded) < target:
        candidate = f"v{counter}"
        if candidate not in padded and candidate not in taken:
            padded.append(candidate)
        counter += 1
    return tuple(padded)


def padding_size(max_arity: int) -> int:
    """The |V| the default rule starts from before counting used variables."""
    return max(DEFAULT_PADDING, max_arity)
