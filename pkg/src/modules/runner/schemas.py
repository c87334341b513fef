"""
Pydantic schemas for the prover runner and the theories API.
"""

import shlex
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from src.config import Settings, get_settings
from src.modules.frontend.models import CompileOptions

# Argument templates by executable name; {problem} and {timeout} are filled in per run
ARGUMENT_TEMPLATES: Dict[str, str] = {
    "vampire": "--input_syntax tptp --time_limit {timeout} {problem}",
    "eprover": "--auto --tstp-format -s --cpu-limit={timeout} {problem}",
}
FALLBACK_TEMPLATE = "{problem}"


class SZSStatus(str, Enum):
    """Verdicts we distinguish; every other SZS value is folded into one of these."""
    THEOREM = "Theorem"
    COUNTER_SATISFIABLE = "CounterSatisfiable"
    SATISFIABLE = "Satisfiable"
    UNSATISFIABLE = "Unsatisfiable"
    TIMEOUT = "Timeout"
    GAVE_UP = "GaveUp"
    ERROR = "Error"


class ProverConfig(BaseModel):
    """How to launch the external prover."""
    executable: str = Field(..., description="Prover executable name or path")
    arguments: Optional[str] = Field(None, description="Argument template with {problem} and {timeout}")
    timeout: float = Field(60.0, gt=0, description="Wall-clock limit in seconds")
    parallel_goals: int = Field(2, ge=1, description="Maximum concurrent prover processes")

    @classmethod
    def from_settings(
        cls,
        settings: Optional[Settings] = None,
        executable: Optional[str] = None,
        timeout: Optional[float] = None,
        modal: bool = False,
    ) -> "ProverConfig":
        """Settings, with explicit arguments taking precedence.

        Modal goals default to the longer MODAL_PROVER_TIMEOUT.
        """
        settings = settings or get_settings()
        default_timeout = settings.MODAL_PROVER_TIMEOUT if modal else settings.PROVER_TIMEOUT
        return cls(
            executable=executable or settings.QIANA_PROVER,
            arguments=settings.QIANA_PROVER_ARGS if not executable else None,
            timeout=timeout if timeout is not None else default_timeout,
            parallel_goals=settings.PROVER_PARALLEL_GOALS,
        )

    @property
    def template(self) -> str:
        if self.arguments:
            return self.arguments
        return ARGUMENT_TEMPLATES.get(Path(self.executable).name, FALLBACK_TEMPLATE)

    def command(self, problem: Path) -> List[str]:
        arguments = self.template.format(problem=shlex.quote(str(problem)), timeout=int(max(1, round(self.timeout))))
        return [self.executable] + shlex.split(arguments)


class ProverVerdict(BaseModel):
    """Outcome of one prover run."""
    status: SZSStatus
    szs_value: Optional[str] = Field(None, description="Raw value of the SZS status line")
    wall_time: float = 0.0
    excerpt: str = Field("", description="Tail of the prover output")
    vars: Optional[int] = Field(None, description="|V| the problem was compiled with")
    attempts: List["VarAttempt"] = Field(default_factory=list)

    @property
    def is_theorem(self) -> bool:
        return self.status == SZSStatus.THEOREM


class VarAttempt(BaseModel):
    """One step of |V| growth."""
    vars: int
    status: SZSStatus
    wall_time: float = 0.0
    error: Optional[str] = None


ProverVerdict.model_rebuild()


# API bodies

class TheoryRequest(BaseModel):
    """A .qiana source plus compile flags."""
    source: str = Field(..., description=".qiana document text")
    vars: Optional[int] = Field(None, ge=1)
    typed: bool = False
    temporal: bool = False
    modal: Optional[str] = Field(None, pattern="^(k|t|s4|s5|d)$")
    explosion: bool = False
    disambiguation: bool = False
    explicit_equality: bool = False

    def compile_options(self) -> CompileOptions:
        return CompileOptions(
            vars=self.vars,
            typed=self.typed,
            temporal=self.temporal,
            modal=self.modal,
            explosion=self.explosion,
            disambiguation=self.disambiguation,
            explicit_equality=self.explicit_equality,
        )


class ProveRequest(TheoryRequest):
    prover: Optional[str] = None
    timeout: Optional[float] = Field(None, gt=0)
    vars_auto: Optional[int] = Field(None, ge=1, description="Grow |V| up to this bound")


class CheckResponse(BaseModel):
    ok: bool = True
    functions: List[str]
    predicates: List[str]
    quotable_vars: List[str]
    axioms: int
    has_conjecture: bool
    typed: bool = False
    warnings: List[str] = Field(default_factory=list)


class AxiomEntry(BaseModel):
    name: str
    tag: str
    params: List[str] = Field(default_factory=list)
    line: Optional[int] = None
    formula: str


class AxiomsResponse(BaseModel):
    manifest: Dict[str, Any]
    digest: str
    axioms: List[AxiomEntry]


class CompileResponse(BaseModel):
    dialect: str
    problem: str
    digest: str
    total: int


class TaskTriggerResponse(BaseModel):
    """Response when a prover run is queued."""
    task_id: str
    status: str
    message: str
    check_status_url: str


class TaskStatusResponse(BaseModel):
    """Response for task status check."""
    task_id: str
    status: str = Field(..., description="pending, started, success, failure, retry")
    result: Optional[Dict[str, Any]] = None
    error: Optional[str] = None
