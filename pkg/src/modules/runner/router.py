"""
Theories router: check, list axioms, compile and queue prover runs.
"""

from fastapi import APIRouter, HTTPException, status
from celery.result import AsyncResult

from src.celery_app import celery_app
from src.core.exceptions import QianaError
from src.modules.runner import schemas
from src.modules.runner.services import compile_problem, compile_source
from src.tasks import prove_theory_task

router = APIRouter(prefix="/theories", tags=["Theories"])
tasks_router = APIRouter(prefix="/tasks", tags=["Tasks"])


def _unprocessable(error: QianaError) -> HTTPException:
    return HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(error))


@router.post("/check", response_model=schemas.CheckResponse)
def check_theory(request: schemas.TheoryRequest):
    """
    Parse and elaborate a theory; typed theories are also typechecked.
    """
    try:
        theory = compile_source(request.source, request.compile_options())
    except QianaError as e:
        raise _unprocessable(e)

    return {
        "functions": [str(s) for s in theory.asig.base_functions],
        "predicates": [str(s) for s in theory.asig.base_predicates],
        "quotable_vars": list(theory.asig.quotable_vars),
        "axioms": len(theory.axioms),
        "has_conjecture": theory.conjecture is not None,
        "typed": theory.tsig is not None,
        "warnings": list(theory.warnings),
    }


@router.post("/axioms", response_model=schemas.AxiomsResponse)
def list_axioms(request: schemas.TheoryRequest):
    """
    Generated axiom set with provenance and manifest.
    """
    try:
        problem = compile_problem(request.source, request.compile_options())
    except QianaError as e:
        raise _unprocessable(e)

    manifest = problem.closure.manifest
    return {
        "manifest": manifest.to_dict(),
        "digest": manifest.digest,
        "axioms": [
            {
                "name": axiom.name,
                "tag": axiom.provenance.tag,
                "params": list(axiom.provenance.params),
                "line": axiom.provenance.line,
                "formula": str(axiom.formula),
            }
            for axiom in problem.closure
        ],
    }


@router.post("/compile", response_model=schemas.CompileResponse)
def compile_theory(request: schemas.TheoryRequest):
    """
    Compile a theory to a TPTP problem (FOF, or TFF in typed mode).
    """
    try:
        problem = compile_problem(request.source, request.compile_options())
    except QianaError as e:
        raise _unprocessable(e)

    return {
        "dialect": problem.document.dialect,
        "problem": problem.document.render(),
        "digest": problem.closure.manifest.digest,
        "total": len(problem.closure),
    }


@router.post("/prove", response_model=schemas.TaskTriggerResponse)
def prove_theory(request: schemas.ProveRequest):
    """
    Queue a prover run. Poll GET /tasks/status/{task_id} for the verdict.

    The theory is compiled once here so that errors are reported immediately.
    """
    try:
        problem = compile_problem(request.source, request.compile_options())
    except QianaError as e:
        raise _unprocessable(e)
    if problem.theory.conjecture is None:
        raise HTTPException(
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
            detail="nothing to prove: the document has no #conjecture",
        )

    task = prove_theory_task.delay(request.model_dump())

    return {
        "task_id": task.id,
        "status": "queued",
        "message": f"Prover run queued ({len(problem.closure)} axioms)",
        "check_status_url": f"/tasks/status/{task.id}",
    }


@tasks_router.get("/status/{task_id}", response_model=schemas.TaskStatusResponse)
def get_task_status(task_id: str):
    """
    Get the status of a prover run.

    - **task_id**: Celery task ID returned by POST /theories/prove

    Returns task status: pending, started, success, failure, retry
    """
    result = AsyncResult(task_id, app=celery_app)

    response = {
        "task_id": task_id,
        "status": result.status.lower(),
        "result": None,
        "error": None,
    }

    if result.ready():
        if result.successful():
            response["result"] = result.get()
        else:
            response["error"] = str(result.result)

    return response
