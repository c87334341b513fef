"""
Seeded random and exhaustive generators of terms and formulas over a small signature.
"""

import random
from typing import Iterator, List, Optional, Sequence

from src.modules.quotation.services import quote
from src.modules.signature.models import AugmentedSignature, function, predicate
from src.modules.signature.services import build_signature
from src.modules.syntax.models import And, App, Atom, Forall, Formula, Not, Term, Var

CONST = function("c", 0)
F = function("f", 1)
P = predicate("p", 1)
R = predicate("r", 2)

VARS = ("x", "y", "z")


def generator_signature(quotable_vars: Sequence[str] = VARS) -> AugmentedSignature:
    """Two functions, two predicates: F = {c/0, f/1}, P = {p/1, r/2}."""
    return build_signature([CONST, F], [P, R], tuple(quotable_vars))


def random_term(
    rng: random.Random,
    asig: AugmentedSignature,
    depth: int,
    variables: Sequence[str] = VARS,
    quotations: bool = True,
) -> Term:
    roll = rng.random()
    if depth <= 0 or roll < 0.35:
        if variables and rng.random() < 0.5:
            return Var(rng.choice(list(variables)))
        return App(CONST)
    if quotations and roll < 0.45:
        return quote(random_formula(rng, asig, depth - 1, variables=variables or VARS, quotations=False), asig)
    return App(F, (random_term(rng, asig, depth - 1, variables, quotations),))


def random_formula(
    rng: random.Random,
    asig: AugmentedSignature,
    depth: int,
    variables: Sequence[str] = VARS,
    quotations: bool = True,
    bound: Optional[List[str]] = None,
) -> Formula:
    """A quotable formula of nesting depth at most ``depth``.

    With ``bound`` given, terms only use variables bound so far and the result is closed.
    """
    in_scope = variables if bound is None else bound
    roll = rng.random()
    if depth <= 0 or roll < 0.3:
        if rng.random() < 0.5:
            return Atom(P, (random_term(rng, asig, depth, in_scope, quotations),))
        return Atom(R, (
            random_term(rng, asig, depth, in_scope, quotations),
            random_term(rng, asig, depth, in_scope, quotations),
        ))
    if roll < 0.5:
        return Not(random_formula(rng, asig, depth - 1, variables, quotations, bound))
    if roll < 0.75:
        return And(
            random_formula(rng, asig, depth - 1, variables, quotations, bound),
            random_formula(rng, asig, depth - 1, variables, quotations, bound),
        )
    name = rng.choice(list(variables))
    inner = None if bound is None else bound + [name]
    return Forall(name, random_formula(rng, asig, depth - 1, variables, quotations, inner))


def random_closed_formula(rng: random.Random, asig: AugmentedSignature, depth: int) -> Formula:
    return random_formula(rng, asig, depth, bound=[])


def random_augmented_term(rng: random.Random, asig: AugmentedSignature, depth: int) -> Term:
    """Any term over the augmented function set, with stray variables at the leaves."""
    if depth <= 0 or rng.random() < 0.25:
        leaves = [App(s) for s in asig.functions if s.arity == 0]
        leaves += [Var("x"), Var("w")]
        return rng.choice(leaves)
    symbol = rng.choice([s for s in asig.functions if s.arity > 0])
    return App(symbol, tuple(random_augmented_term(rng, asig, depth - 1) for _ in range(symbol.arity)))


# Exhaustive enumeration by size

def terms_of_size(size: int, variables: Sequence[str]) -> Iterator[Term]:
    if size == 1:
        yield from (Var(v) for v in variables)
        yield App(CONST)
        return
    for t in terms_of_size(size - 1, variables):
        yield App(F, (t,))


def formulas_of_size(size: int, variables: Sequence[str]) -> Iterator[Formula]:
    """Every formula with exactly ``size`` nodes, counting each term node."""
    if size >= 2:
        for t in terms_of_size(size - 1, variables):
            yield Atom(P, (t,))
    for left in range(1, size - 1):
        for a in terms_of_size(left, variables):
            for b in terms_of_size(size - 1 - left, variables):
                yield Atom(R, (a, b))
    if size >= 2:
        for body in formulas_of_size(size - 1, variables):
            yield Not(body)
            for name in variables:
                yield Forall(name, body)
    for left in range(1, size - 1):
        for a in formulas_of_size(left, variables):
            for b in formulas_of_size(size - 1 - left, variables):
                yield And(a, b)


def formulas_up_to(size: int, variables: Sequence[str]) -> Iterator[Formula]:
    for n in range(1, size + 1):
        yield from formulas_of_size(n, variables)
