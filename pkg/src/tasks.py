"""
Celery tasks for background prover runs.
"""

import logging
from typing import Any, Dict

from src.celery_app import celery_app
from src.core.exceptions import QianaError

logger = logging.getLogger(__name__)


@celery_app.task(bind=True)
def prove_theory_task(self, request: Dict[str, Any]) -> Dict[str, Any]:
    """
    Compile a theory and run the prover on its conjecture.

    Args:
        request: a ProveRequest as a dict

    Returns:
        The ProverVerdict as a dict, or an error status with the message
    """
    task_id = self.request.id
    logger.info(f"Starting prover task {task_id}")

    # Import here to avoid circular imports
    from src.modules.frontend.models import CompileOptions
    from src.modules.frontend.parser import parse
    from src.modules.runner.schemas import ProveRequest, ProverConfig
    from src.modules.runner.services import compile_document, solve_with_var_growth
    from src.modules.runner.prover_client import run_prover

    body = ProveRequest(**request)
    try:
        doc = parse(body.source)
        options = CompileOptions.from_document(doc, body.compile_options())
        cfg = ProverConfig.from_settings(
            executable=body.prover,
            timeout=body.timeout,
            modal=options.modal is not None,
        )
        if body.vars_auto is not None:
            verdict = solve_with_var_growth(doc, cfg, body.vars_auto, options)
        else:
            problem = compile_document(doc, options)
            verdict = run_prover(problem.document, cfg)
            verdict = verdict.model_copy(update={"vars": len(problem.theory.asig.quotable_vars)})
    except QianaError as e:
        logger.error(f"Prover task {task_id} failed: {e}")
        return {"status": "error", "message": str(e)}

    logger.info(f"Prover task {task_id} finished: {verdict.status.value}")
    return verdict.model_dump(mode="json")
