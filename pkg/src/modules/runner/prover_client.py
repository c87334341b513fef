"""
External TPTP prover client.

Each run writes the problem to its own temporary directory, launches the
prover there and reads the verdict from the ``SZS status`` line.
"""

import logging
import re
import subprocess
import tempfile
import time
from pathlib import Path
from typing import Optional, Tuple

from src.core.exceptions import SpawnFailure
from src.modules.runner.schemas import ProverConfig, ProverVerdict, SZSStatus
from src.modules.tptp.models import TptpDocument

logger = logging.getLogger(__name__)

SZS_LINE = re.compile(r"SZS status\s+(\w+)")
EXCERPT_CHARS = 2000

SZS_TABLE = {
    "Theorem": SZSStatus.THEOREM,
    "CounterSatisfiable": SZSStatus.COUNTER_SATISFIABLE,
    "Satisfiable": SZSStatus.SATISFIABLE,
    "Unsatisfiable": SZSStatus.UNSATISFIABLE,
    "ContradictoryAxioms": SZSStatus.UNSATISFIABLE,
    "Timeout": SZSStatus.TIMEOUT,
    "GaveUp": SZSStatus.GAVE_UP,
    "ResourceOut": SZSStatus.GAVE_UP,
    "MemoryOut": SZSStatus.GAVE_UP,
    "Unknown": SZSStatus.GAVE_UP,
    "Incomplete": SZSStatus.GAVE_UP,
    "Inappropriate": SZSStatus.ERROR,
    "InputError": SZSStatus.ERROR,
    "SyntaxError": SZSStatus.ERROR,
    "OSError": SZSStatus.ERROR,
    "Error": SZSStatus.ERROR,
}


def parse_szs(output: str) -> Tuple[SZSStatus, Optional[str]]:
    """Map the first SZS status line of prover output to a verdict.

    Returns:
        (status, raw value); Error with no value when there is no SZS line.
    """
    match = SZS_LINE.search(output)
    if match is None:
        return SZSStatus.ERROR, None
    value = match.group(1)
    return SZS_TABLE.get(value, SZSStatus.ERROR), value


def _excerpt(output: str) -> str:
    return output[-EXCERPT_CHARS:]


def _decode(data) -> str:
    if data is None:
        return ""
    if isinstance(data, bytes):
        return data.decode("utf-8", errors="replace")
    return data


def run_prover(doc: TptpDocument, cfg: ProverConfig) -> ProverVerdict:
    """Run the configured prover on a rendered TPTP document.

    Raises:
        SpawnFailure: the executable cannot be started.
    """
    with tempfile.TemporaryDirectory(prefix="qiana-") as workdir:
        problem = Path(workdir) / "problem.p"
        problem.write_text(doc.render(), encoding="utf-8")
        command = cfg.command(problem)
        logger.info(f"Running prover: {' '.join(command)}")

        started = time.monotonic()
        try:
            completed = subprocess.run(
                command,
                cwd=workdir,
                stdout=subprocess.PIPE,
                stderr=subprocess.STDOUT,
                timeout=cfg.timeout,
                text=True,
            )
        except subprocess.TimeoutExpired as e:
            elapsed = time.monotonic() - started
            logger.warning(f"Prover timed out after {elapsed:.2f}s")
            return ProverVerdict(
                status=SZSStatus.TIMEOUT,
                szs_value=None,
                wall_time=elapsed,
                excerpt=_excerpt(_decode(e.output)),
            )
        except OSError as e:
            raise SpawnFailure(f"cannot start prover {cfg.executable}: {e}") from e

    elapsed = time.monotonic() - started
    output = completed.stdout or ""
    status, value = parse_szs(output)
    if value is None:
        logger.error(f"No SZS status line in prover output (exit code {completed.returncode})")
    logger.info(f"Prover verdict {status.value} in {elapsed:.2f}s")
    return ProverVerdict(status=status, szs_value=value, wall_time=elapsed, excerpt=_excerpt(output))
