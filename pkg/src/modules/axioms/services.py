"""
Generators for the finite Qiana closure.

    user axioms
    + ist reasoning axioms        (A5-A10)
    + helper axioms               (A12-A34: equality, reach, wft, eval, subq)
    + finite truth axioms         (A1fin-A4fin, A11fin)
    + optional packs              (explosion, disambiguation)

Every generator is pure and returns an AxiomSet in a fixed order.
"""

import logging
from itertools import permutations
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from src.core.exceptions import Location, OpenFormula, SignatureError
from src.modules.axioms.builders import (
    SORT_CONTEXT,
    SORT_QUOTATION,
    UNTYPED,
    Vocabulary,
    closed,
    const,
    guarded_all,
    ist,
    make_axiom,
    subq,
    truth,
    variables,
)
from src.modules.axioms.models import (
    PACK_HELPER,
    PACK_IST,
    PACK_OPTIONAL,
    PACK_TRUTH,
    PACK_USER,
    Axiom,
    AxiomOptions,
    AxiomSet,
    concat,
    make_set,
)
from src.modules.signature.models import (
    EQ,
    EVAL,
    QAND,
    QFORALL,
    QNEG,
    REACH,
    SUBQ,
    WFT,
    AugmentedSignature,
    Symbol,
)
from src.modules.syntax.models import And, App, Atom, Forall, Formula, Not, Var
from src.modules.syntax.services import conj, free_vars, iff, implies, qand, qforall, qiff, qneg, qor

logger = logging.getLogger(__name__)

Q = SORT_QUOTATION
C = SORT_CONTEXT

UserAxiom = Union[Formula, Tuple[Formula, Optional[int]]]


def _reach_q(vocab: Vocabulary):
    def reach(term):
        return vocab.reach(term, Q)
    return reach


# ist reasoning axioms

def ist_schemas(vocab: Vocabulary = UNTYPED, prefix: str = "") -> List[Axiom]:
    """A5-A10 over a context variable C and quotation variables X1..X3."""
    c = Var("C")
    x1, x2, x3 = variables("X", 3)

    def over(*xs: Var):
        return [c, *xs], [C] + [Q] * len(xs)

    schemas = []

    binders, sorts = over(x1, x2)
    schemas.append(("A5", closed(vocab, binders, sorts,
                                 implies(ist(c, qand(x1, x2)), ist(c, x1)))))
    schemas.append(("A6", closed(vocab, binders, sorts,
                                 iff(ist(c, qand(x1, x2)), ist(c, qand(x2, x1))))))

    binders, sorts = over(x1)
    schemas.append(("A7", closed(vocab, binders, sorts,
                                 iff(ist(c, qneg(qneg(x1))), ist(c, x1)))))

    binders, sorts = over(x1, x2, x3)
    schemas.append(("A8", closed(vocab, binders, sorts,
                                 iff(ist(c, qand(qand(x1, x2), x3)), ist(c, qand(x1, qand(x2, x3)))))))
    schemas.append(("A9", closed(vocab, binders, sorts,
                                 iff(ist(c, qor(qand(x1, x2), x3)), ist(c, qand(qor(x1, x3), qor(x2, x3)))))))

    binders, sorts = over(x1, x2)
    schemas.append(("A10", closed(vocab, binders, sorts,
                                  implies(And(ist(c, qor(x1, x2)), ist(c, qneg(x1))), ist(c, x2)))))

    return [make_axiom(prefix + tag, formula) for tag, formula in schemas]


def gen_ist_axioms(asig: AugmentedSignature) -> AxiomSet:
    """The six context reasoning axioms; independent of the signature."""
    return make_set(ist_schemas(), PACK_IST, asig)


# Helper axioms

def equality_schemas(
    functions: Sequence[Symbol],
    predicates: Sequence[Symbol],
    vocab: Vocabulary = UNTYPED,
) -> List[Axiom]:
    """A12-A16. Congruence is skipped for arity-0 symbols."""
    x, y, z = Var("X"), Var("Y"), Var("Z")
    eq = vocab.eq
    axioms = [
        make_axiom("A12", closed(vocab, [x], [None], eq(x, x))),
        make_axiom("A13", closed(vocab, [x, y], [None, None], implies(eq(x, y), eq(y, x)))),
        make_axiom("A14", closed(vocab, [x, y, z], [None] * 3,
                                 implies(And(eq(x, y), eq(y, z)), eq(x, z)))),
    ]
    for f in functions:
        if f.arity == 0:
            continue
        xs, ys = variables("X", f.arity), variables("Y", f.arity)
        body = implies(conj(*[eq(a, b) for a, b in zip(xs, ys)]), eq(App(f, xs), App(f, ys)))
        axioms.append(make_axiom("A15", closed(vocab, xs + ys, [None] * (2 * f.arity), body), [f.name]))
    for p in predicates:
        if p.arity == 0:
            continue
        xs, ys = variables("X", p.arity), variables("Y", p.arity)
        body = implies(conj(*[eq(a, b) for a, b in zip(xs, ys)]), iff(Atom(p, xs), Atom(p, ys)))
        axioms.append(make_axiom("A16", closed(vocab, xs + ys, [None] * (2 * p.arity), body), [p.name]))
    return axioms


def reach_schemas(asig: AugmentedSignature) -> List[Axiom]:
    """A17 plus one A18 closure rule per augmented function symbol."""
    x = Var("X")
    axioms = [make_axiom("A17", closed(UNTYPED, [x], [None], UNTYPED.reach(UNTYPED.quot(x))))]
    for f in asig.functions:
        ts = variables("T", f.arity)
        formula = guarded_all(UNTYPED, ts, [None] * f.arity,
                              [UNTYPED.reach(t) for t in ts], UNTYPED.reach(App(f, ts)))
        axioms.append(make_axiom("A18", formula, [f.name]))
    return axioms


def wft_schemas(asig: AugmentedSignature) -> List[Axiom]:
    """A19, one A20 per quoted variable and one A21 per quoted function."""
    y = Var("Y")
    axioms = [make_axiom("A19", closed(UNTYPED, [y], [None], UNTYPED.wft(UNTYPED.quot(y))))]
    for name, quoted in asig.quoted_vars:
        axioms.append(make_axiom("A20", UNTYPED.wft(const(quoted)), [name]))
    for f in asig.quoted_function_symbols:
        ts = variables("T", f.arity)
        formula = guarded_all(UNTYPED, ts, [None] * f.arity,
                              [UNTYPED.wft(t) for t in ts], UNTYPED.wft(App(f, ts)))
        axioms.append(make_axiom("A21", formula, [f.name]))
    return axioms


def eval_schemas(asig: AugmentedSignature) -> List[Axiom]:
    """A22-A28: eval undoes one level of quotation and is the identity on
    quoted predicate applications, connectives and quoted variables."""
    v = UNTYPED
    t = Var("T")
    t1, t2 = variables("T", 2)
    axioms = [make_axiom("A22", closed(v, [t], [None], v.eq(v.eval(v.quot(t)), t)))]

    for f, quoted in asig.quoted_functions:
        ts = variables("T", f.arity)
        body = v.eq(v.eval(App(quoted, ts)), App(f, [v.eval(a) for a in ts]))
        axioms.append(make_axiom("A23", guarded_all(v, ts, [None] * f.arity, [v.reach(a) for a in ts], body), [f.name]))

    for quoted in asig.quoted_predicate_symbols:
        ts = variables("T", quoted.arity)
        body = v.eq(v.eval(App(quoted, ts)), App(quoted, ts))
        axioms.append(make_axiom("A24", guarded_all(v, ts, [None] * quoted.arity, [v.reach(a) for a in ts], body), [quoted.name]))

    axioms.append(make_axiom("A25", closed(v, [t1, t2], [None, None], v.eq(v.eval(qand(t1, t2)), qand(t1, t2)))))
    axioms.append(make_axiom("A26", closed(v, [t1, t2], [None, None], v.eq(v.eval(qforall(t1, t2)), qforall(t1, t2)))))
    axioms.append(make_axiom("A27", closed(v, [t], [None], v.eq(v.eval(qneg(t)), qneg(t)))))

    for name, quoted in asig.quoted_vars:
        axioms.append(make_axiom("A28", v.eq(v.eval(const(quoted)), const(quoted)), [name]))
    return axioms


def substitution_functions(asig: AugmentedSignature) -> List[Symbol]:
    """Symbols subq descends through: base and quoted symbols plus qand and qneg."""
    return (
        asig.base_functions
        + asig.quoted_function_symbols
        + asig.quoted_predicate_symbols
        + [QAND, QNEG]
    )


def sub_schemas(
    asig: AugmentedSignature,
    functions: Sequence[Symbol],
    vocab: Vocabulary = UNTYPED,
    prefix: str = "",
    quot_sorts: Sequence[Optional[str]] = (None,),
) -> List[Axiom]:
    """A29-A34 for quoted substitution.

    Args:
        asig: augmented signature providing the quoted variables
        functions: the A31 range
        vocab: helper symbols (per-sort families in typed mode)
        prefix: tag prefix for typed variants
        quot_sorts: sorts A34 is instantiated at; a single untyped case by default
    """
    t = Var("T")
    t1, t2 = variables("T", 2)
    reach = _reach_q(vocab)
    quoted_vars = asig.quoted_vars
    axioms: List[Axiom] = []

    for name, qv in quoted_vars:
        x = const(qv)
        body = vocab.eq(subq(x, x, t), t, Q)
        axioms.append(make_axiom(prefix + "A29", guarded_all(vocab, [t], [Q], [reach(t)], body), [name]))

    for (xname, qx), (yname, qy) in permutations(quoted_vars, 2):
        body = vocab.eq(subq(const(qx), const(qy), t), const(qx), Q)
        axioms.append(make_axiom(prefix + "A30", guarded_all(vocab, [t], [Q], [reach(t)], body), [xname, yname]))

    for name, qv in quoted_vars:
        x = const(qv)
        for f in functions:
            ts = variables("T", f.arity)
            body = vocab.eq(subq(App(f, ts), x, t), App(f, [subq(a, x, t) for a in ts]), Q)
            formula = guarded_all(vocab, [t] + ts, [Q] * (f.arity + 1), [reach(a) for a in ts], body)
            axioms.append(make_axiom(prefix + "A31", formula, [name, f.name]))

    for name, qv in quoted_vars:
        x = const(qv)
        body = vocab.eq(subq(qforall(x, t1), x, t2), qforall(x, t1), Q)
        axioms.append(make_axiom(prefix + "A32", guarded_all(vocab, [t1, t2], [Q, Q], [reach(t1), reach(t2)], body), [name]))

    for (xname, qx), (yname, qy) in permutations(quoted_vars, 2):
        x, y = const(qx), const(qy)
        body = vocab.eq(subq(qforall(y, t1), x, t2), qforall(y, subq(t1, x, t2)), Q)
        axioms.append(make_axiom(prefix + "A33", guarded_all(vocab, [t1, t2], [Q, Q], [reach(t1), reach(t2)], body), [xname, yname]))


    for name, qv in quoted_vars:
        x = const(qv)
        for sort in quot_sorts:
            wrapped = vocab.quot(t1, sort)
            body = vocab.eq(subq(wrapped, x, t2), wrapped, Q)
            formula = guarded_all(vocab, [t1, t2], [sort, Q], [reach(t2)], body)
            params = [name] if sort is None else [name, sort]
            axioms.append(make_axiom(prefix + "A34", formula, params))
    return axioms


def equality_range(asig: AugmentedSignature) -> Tuple[List[Symbol], List[Symbol]]:
    """Functions and predicates of the extended signature the congruence axioms range over."""
    functions = asig.functions + [EVAL, SUBQ]
    predicates = list(dict.fromkeys(asig.predicates + [REACH, WFT, EQ]))
    return functions, predicates


def gen_helper_axioms(asig: AugmentedSignature, opts: Optional[AxiomOptions] = None) -> AxiomSet:
    """A12-A34 over the augmented signature; A12-A16 only with explicit equality."""
    opts = opts or AxiomOptions()
    axioms: List[Axiom] = []
    if opts.explicit_equality:
        axioms.extend(equality_schemas(*equality_range(asig)))
    axioms.extend(reach_schemas(asig))
    axioms.extend(wft_schemas(asig))
    axioms.extend(eval_schemas(asig))
    axioms.extend(sub_schemas(asig, substitution_functions(asig)))
    logger.debug(f"Generated {len(axioms)} helper axioms")
    return make_set(axioms, PACK_HELPER, asig, opts)


# Finite truth axioms

def connective_truth_schemas(vocab: Vocabulary = UNTYPED, prefix: str = "") -> List[Axiom]:
    """A2fin and A3fin."""
    t1, t2 = variables("T", 2)
    reach = _reach_q(vocab)
    a2 = guarded_all(vocab, [t1, t2], [Q, Q], [reach(t1), reach(t2)],
                     iff(truth(qand(t1, t2)), And(truth(t1), truth(t2))))
    a3 = guarded_all(vocab, [t1], [Q], [reach(t1)], iff(truth(qneg(t1)), Not(truth(t1))))
    return [make_axiom(prefix + "A2FIN", a2), make_axiom(prefix + "A3FIN", a3)]


def quantifier_truth_schema(name: str, qv: Symbol, vocab: Vocabulary = UNTYPED,
                            sort: Optional[str] = None, prefix: str = "") -> Axiom:
    """A4fin for one quoted variable."""
    t1, x = Var("T1"), Var("X")
    inner = Forall(x.name, truth(subq(t1, const(qv), vocab.quot(x, sort))), vocab.binder(sort))
    formula = guarded_all(vocab, [t1], [Q], [vocab.reach(t1, Q)],
                          iff(truth(qforall(const(qv), t1)), inner))
    params = [name] if not vocab.typed else [name, sort]
    return make_axiom(prefix + "A4FIN", formula, params)


def context_quantifier_schema(name: str, qv: Symbol, vocab: Vocabulary = UNTYPED,
                              sort: Optional[str] = None, prefix: str = "") -> Axiom:
    """A11fin for one quoted variable."""
    t1, t2, x = Var("T1"), Var("T2"), Var("X")
    inner = Forall(x.name, ist(t2, subq(t1, const(qv), vocab.quot(x, sort))), vocab.binder(sort))
    formula = guarded_all(vocab, [t1, t2], [Q, C], [vocab.reach(t1, Q)],
                          implies(ist(t2, qforall(const(qv), t1)), inner))
    params = [name] if not vocab.typed else [name, sort]
    return make_axiom(prefix + "A11FIN", formula, params)


def gen_truth_fin(asig: AugmentedSignature) -> AxiomSet:
    """A1fin per predicate other than truth, A2fin, A3fin, then A4fin and A11fin per quotable variable."""
    v = UNTYPED
    axioms: List[Axiom] = []
    for p, quoted in asig.quoted_predicates:
        ts = variables("T", p.arity)
        body = iff(truth(App(quoted, ts)), Atom(p, [v.eval(a) for a in ts]))
        axioms.append(make_axiom("A1FIN", guarded_all(v, ts, [None] * p.arity, [v.wft(a) for a in ts], body), [p.name]))
    axioms.extend(connective_truth_schemas())
    for name, qv in asig.quoted_vars:
        axioms.append(quantifier_truth_schema(name, qv))
    for name, qv in asig.quoted_vars:
        axioms.append(context_quantifier_schema(name, qv))
    return make_set(axioms, PACK_TRUTH, asig)


# Optional packs

def explosion_schema(vocab: Vocabulary = UNTYPED, prefix: str = "") -> Axiom:
    c = Var("C")
    x1, x2 = variables("X", 2)
    formula = guarded_all(vocab, [c, x1, x2], [C, Q, Q],
                          [vocab.reach(x1, Q), vocab.reach(x2, Q)],
                          implies(ist(c, x1), ist(c, qor(x1, x2))))
    return make_axiom(prefix + "EXPLOSION", formula)


def disambiguation_schemas(asig: AugmentedSignature, vocab: Vocabulary = UNTYPED, prefix: str = "") -> List[Axiom]:
    q_eq = asig.quote_symbol(EQ)
    if q_eq is None:
        raise SignatureError("disambiguation needs eq/2 in the base signature")
    c, t = Var("C"), Var("T")
    t1, t2 = variables("T", 2)
    first = guarded_all(vocab, [c, t], [C, Q], [vocab.wft(t, Q)],
                        ist(c, App(q_eq, (t, vocab.quot(vocab.eval(t, Q), Q)))))
    second = closed(vocab, [c, t1, t2, t], [C, Q, Q, Q],
                    implies(ist(c, App(q_eq, (t1, t2))), ist(c, qiff(t, subq(t, t1, t2)))))
    return [make_axiom(prefix + "DISAMBIG1", first), make_axiom(prefix + "DISAMBIG2", second)]


def gen_optional(asig: AugmentedSignature, opts: Optional[AxiomOptions] = None) -> AxiomSet:
    opts = opts or AxiomOptions()
    axioms: List[Axiom] = []
    if opts.explosion:
        axioms.append(explosion_schema())
    if opts.disambiguation:
        axioms.extend(disambiguation_schemas(asig))
    return make_set(axioms, PACK_OPTIONAL, asig, opts)


# Closure

def user_axioms(theory: Iterable[UserAxiom]) -> List[Axiom]:
    """Wrap theory formulas as USER axioms, carrying source lines when given.

    Raises:
        OpenFormula: a formula has free variables.
    """
    axioms = []
    for index, item in enumerate(theory, start=1):
        formula, line = item if isinstance(item, tuple) else (item, None)
        loose = free_vars(formula)
        if loose:
            location = Location(line) if line is not None else None
            raise OpenFormula(f"axiom has free variables: {', '.join(sorted(loose))}", location)
        axioms.append(make_axiom("USER", formula, [str(index)], line))
    return axioms


def qiana_closure(
    theory: Iterable[UserAxiom],
    asig: AugmentedSignature,
    opts: Optional[AxiomOptions] = None,
) -> AxiomSet:
    """H_C^fin: user axioms followed by every generated pack.

    Args:
        theory: closed formulas, optionally paired with their source line
        asig: augmented signature the theory is written over
        opts: optional packs and equality mode

    Returns:
        The concatenated AxiomSet; its manifest counts every tag and pack.
    """
    opts = opts or AxiomOptions()
    closure = concat(
        make_set(user_axioms(theory), PACK_USER, asig, opts),
        gen_ist_axioms(asig),
        gen_helper_axioms(asig, opts),
        gen_truth_fin(asig),
        gen_optional(asig, opts),
    )
    logger.info(f"Qiana closure: {len(closure)} axioms, packs {closure.manifest.packs}")
    return closure
