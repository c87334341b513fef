"""
Compile pipeline and prover orchestration.

Compilation (parse, elaborate, close, emit) is pure; only ``run_prover``
touches the outside world.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import List, Optional, Sequence

from src.core.exceptions import NotQuotable, QianaError
from src.modules.axioms.models import AxiomSet, concat
from src.modules.axioms.services import qiana_closure
from src.modules.frontend.elaborator import ElaboratedTheory, elaborate
from src.modules.frontend.models import CompileOptions, TheoryDocument
from src.modules.frontend.parser import parse
from src.modules.modal.models import ModalSystem
from src.modules.modal.services import gen_modal_system
from src.modules.runner.prover_client import run_prover
from src.modules.runner.schemas import ProverConfig, ProverVerdict, SZSStatus, VarAttempt
from src.modules.signature.services import padding_size
from src.modules.temporal.services import gen_event_calculus_axioms
from src.modules.tptp.emitter import emit_fof, emit_tff
from src.modules.tptp.models import TptpDocument
from src.modules.typed.services import gen_typed_closure

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CompiledProblem:
    theory: ElaboratedTheory
    closure: AxiomSet
    document: TptpDocument


def compile_source(source: str, opts: Optional[CompileOptions] = None) -> ElaboratedTheory:
    """Parse and elaborate .qiana text."""
    return elaborate(parse(source), opts)


def build_closure(theory: ElaboratedTheory) -> AxiomSet:
    """The full axiom set of an elaborated theory: the Qiana closure plus the mode packs."""
    options = theory.options
    if theory.tsig is not None:
        return gen_typed_closure(theory.axioms, theory.tsig, options.axiom_options(), temporal=options.temporal)

    parts = [qiana_closure(theory.axioms, theory.asig, options.axiom_options())]
    if options.temporal:
        parts.append(gen_event_calculus_axioms(theory.asig))
    if options.modal:
        parts.append(gen_modal_system(ModalSystem(options.modal), theory.asig))
    return concat(*parts)


def emit(theory: ElaboratedTheory, closure: AxiomSet) -> TptpDocument:
    if theory.tsig is not None:
        return emit_tff(closure, theory.tsig, theory.conjecture)
    return emit_fof(closure, theory.conjecture)


def compile_document(doc: TheoryDocument, opts: Optional[CompileOptions] = None) -> CompiledProblem:
    theory = elaborate(doc, opts)
    closure = build_closure(theory)
    return CompiledProblem(theory=theory, closure=closure, document=emit(theory, closure))


def compile_problem(source: str, opts: Optional[CompileOptions] = None) -> CompiledProblem:
    """Source text to a TPTP problem; the output depends only on ``source`` and ``opts``."""
    return compile_document(parse(source), opts)


def prove_source(source: str, cfg: ProverConfig, opts: Optional[CompileOptions] = None) -> ProverVerdict:
    """Compile and prove one source.

    Raises:
        QianaError: the source has no conjecture or does not compile.
    """
    problem = compile_problem(source, opts)
    if problem.theory.conjecture is None:
        raise QianaError("nothing to prove: the document has no #conjecture")
    verdict = run_prover(problem.document, cfg)
    return verdict.model_copy(update={"vars": len(problem.theory.asig.quotable_vars)})


def solve_with_var_growth(
    doc: TheoryDocument,
    cfg: ProverConfig,
    n_max: int,
    opts: Optional[CompileOptions] = None,
) -> ProverVerdict:
    """Recompile with |V| = n for growing n until the prover finds a proof.

    Starts at max(3, max arity). A size at which the document does not fit
    (NotQuotable) counts as an Error attempt.

    Returns:
        The first Theorem verdict, otherwise the last one; ``attempts`` lists every n tried.
    """
    if doc.conjecture is None:
        raise QianaError("nothing to prove: the document has no #conjecture")
    opts = opts or CompileOptions()
    start = padding_size(elaborate(doc, replace(opts, vars=None)).asig.base.max_arity)
    if n_max < start:
        raise QianaError(f"|V| bound {n_max} is below the starting size {start}")

    attempts: List[VarAttempt] = []
    verdict: Optional[ProverVerdict] = None
    for n in range(start, n_max + 1):
        try:
            problem = compile_document(doc, replace(opts, vars=n))
        except NotQuotable as e:
            logger.info(f"|V| = {n}: {e}")
            attempts.append(VarAttempt(vars=n, status=SZSStatus.ERROR, error=str(e)))
            continue
        verdict = run_prover(problem.document, cfg)
        attempts.append(VarAttempt(vars=n, status=verdict.status, wall_time=verdict.wall_time))
        logger.info(f"|V| = {n}: {verdict.status.value}")
        if verdict.is_theorem:
            break

    if verdict is None:
        verdict = ProverVerdict(status=SZSStatus.ERROR, excerpt=attempts[-1].error or "")
    n_last = attempts[-1].vars
    return verdict.model_copy(update={"vars": n_last, "attempts": attempts})


def _prove_or_error(source: str, cfg: ProverConfig, opts: Optional[CompileOptions]) -> ProverVerdict:
    try:
        return prove_source(source, cfg, opts)
    except QianaError as e:
        logger.error(f"Goal failed to compile: {e}")
        return ProverVerdict(status=SZSStatus.ERROR, excerpt=str(e))


def prove_many(
    sources: Sequence[str],
    cfg: ProverConfig,
    opts: Optional[CompileOptions] = None,
) -> List[ProverVerdict]:
    """Prove several sources with at most ``cfg.parallel_goals`` prover processes at once.

    Verdicts come back in the order of ``sources``; a source that does not
    compile yields an Error verdict carrying the message.
    """
    with ThreadPoolExecutor(max_workers=cfg.parallel_goals) as pool:
        return list(pool.map(lambda source: _prove_or_error(source, cfg, opts), sources))
