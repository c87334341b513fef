from pathlib import Path

import pytest
from pydantic import ValidationError

from src.config import Settings
from src.core.exceptions import QianaError, SpawnFailure
from src.modules.frontend.parser import parse
from src.modules.runner.prover_client import parse_szs, run_prover
from src.modules.runner.schemas import ProverConfig, SZSStatus
from src.modules.runner.services import (
    compile_problem,
    prove_many,
    prove_source,
    solve_with_var_growth,
)

GOAL = "p(a).\n#conjecture p(a).\n"


@pytest.mark.parametrize("output, status, value", [
    ("% SZS status Theorem for problem", SZSStatus.THEOREM, "Theorem"),
    ("% SZS status CounterSatisfiable for problem", SZSStatus.COUNTER_SATISFIABLE, "CounterSatisfiable"),
    ("% SZS status Satisfiable", SZSStatus.SATISFIABLE, "Satisfiable"),
    ("% SZS status ContradictoryAxioms", SZSStatus.UNSATISFIABLE, "ContradictoryAxioms"),
    ("% SZS status Timeout", SZSStatus.TIMEOUT, "Timeout"),
    ("% SZS status ResourceOut", SZSStatus.GAVE_UP, "ResourceOut"),
    ("% SZS status MemoryOut", SZSStatus.GAVE_UP, "MemoryOut"),
    ("% SZS status Incomplete", SZSStatus.GAVE_UP, "Incomplete"),
    ("% SZS status InputError", SZSStatus.ERROR, "InputError"),
    ("% SZS status Nonsense", SZSStatus.ERROR, "Nonsense"),
    ("no status here", SZSStatus.ERROR, None),
])
def test_parse_szs(output, status, value):
    assert parse_szs(output) == (status, value)


def test_parse_szs_takes_the_first_line():
    output = "% SZS status Theorem for a\n% SZS status GaveUp for b\n"
    assert parse_szs(output)[0] == SZSStatus.THEOREM


# Configuration

def test_known_templates():
    problem = Path("/tmp/problem.p")
    vampire = ProverConfig(executable="/opt/bin/vampire", timeout=30)
    assert vampire.command(problem) == [
        "/opt/bin/vampire", "--input_syntax", "tptp", "--time_limit", "30", "/tmp/problem.p",
    ]
    eprover = ProverConfig(executable="eprover", timeout=5.4)
    assert "--cpu-limit=5" in eprover.command(problem)
    assert ProverConfig(executable="my-prover").command(problem) == ["my-prover", "/tmp/problem.p"]


def test_custom_arguments():
    cfg = ProverConfig(executable="vampire", arguments="--mode casc -t {timeout} {problem}", timeout=0.2)
    assert cfg.command(Path("/tmp/a b.p")) == ["vampire", "--mode", "casc", "-t", "1", "/tmp/a b.p"]


def test_timeout_must_be_positive():
    with pytest.raises(ValidationError):
        ProverConfig(executable="vampire", timeout=0)


def test_from_settings():
    settings = Settings(
        QIANA_PROVER="vampire",
        QIANA_PROVER_ARGS="--mode casc {problem}",
        PROVER_TIMEOUT=12.0,
        MODAL_PROVER_TIMEOUT=99.0,
        PROVER_PARALLEL_GOALS=3,
    )
    cfg = ProverConfig.from_settings(settings)
    assert cfg.executable == "vampire"
    assert cfg.template == "--mode casc {problem}"
    assert cfg.timeout == 12.0 and cfg.parallel_goals == 3
    assert ProverConfig.from_settings(settings, modal=True).timeout == 99.0
    assert ProverConfig.from_settings(settings, timeout=1.5, modal=True).timeout == 1.5

    explicit = ProverConfig.from_settings(settings, executable="eprover")
    assert explicit.arguments is None
    assert explicit.template.startswith("--auto")


# Running

def test_fake_prover_theorem(fake_prover):
    verdict = prove_source(GOAL, fake_prover)
    assert verdict.status == SZSStatus.THEOREM
    assert verdict.szs_value == "Theorem"
    assert verdict.vars == 3
    assert "fake prover" in verdict.excerpt
    assert verdict.wall_time >= 0


def test_fake_prover_other_status(fake_prover, monkeypatch):
    monkeypatch.setenv("FAKE_SZS_STATUS", "GaveUp")
    assert prove_source(GOAL, fake_prover).status == SZSStatus.GAVE_UP


def test_no_conjecture_is_satisfiable(fake_prover):
    problem = compile_problem("p(a).\n")
    assert run_prover(problem.document, fake_prover).status == SZSStatus.SATISFIABLE


def test_prove_source_needs_a_conjecture(fake_prover):
    with pytest.raises(QianaError):
        prove_source("p(a).\n", fake_prover)


def test_timeout(slow_prover):
    verdict = prove_source(GOAL, slow_prover)
    assert verdict.status == SZSStatus.TIMEOUT
    assert verdict.szs_value is None
    assert verdict.wall_time < 10


def test_missing_executable(tmp_path):
    cfg = ProverConfig(executable=str(tmp_path / "no-such-prover"))
    with pytest.raises(SpawnFailure):
        prove_source(GOAL, cfg)


def test_prove_many_keeps_order(fake_prover):
    sources = [GOAL, "p(a).\n", "q(b).\n#conjecture q(b).\n", "p(a) p.\n"]
    verdicts = prove_many(sources, fake_prover)
    assert [v.status for v in verdicts] == [
        SZSStatus.THEOREM, SZSStatus.ERROR, SZSStatus.THEOREM, SZSStatus.ERROR,
    ]
    assert "no #conjecture" in verdicts[1].excerpt


# Growing |V|

def test_var_growth(read_corpus, fake_prover):
    verdict = solve_with_var_growth(parse(read_corpus("var_growth.qiana")), fake_prover, 6)
    assert verdict.status == SZSStatus.THEOREM
    assert verdict.vars == 4
    assert [(a.vars, a.status) for a in verdict.attempts] == [
        (3, SZSStatus.ERROR),
        (4, SZSStatus.THEOREM),
    ]
    assert "quotable" in verdict.attempts[0].error


def test_var_growth_exhausts(read_corpus, fake_prover, monkeypatch):
    monkeypatch.setenv("FAKE_SZS_STATUS", "CounterSatisfiable")
    verdict = solve_with_var_growth(parse(read_corpus("var_growth.qiana")), fake_prover, 5)
    assert verdict.status == SZSStatus.COUNTER_SATISFIABLE
    assert verdict.vars == 5
    assert [a.vars for a in verdict.attempts] == [3, 4, 5]


def test_var_growth_bound_below_start(read_corpus, fake_prover):
    with pytest.raises(QianaError):
        solve_with_var_growth(parse(read_corpus("var_growth.qiana")), fake_prover, 2)


def test_var_growth_only_errors(fake_prover):
    doc = parse("<c> forall A B C D. r(A, B) & r(C, D).\n#conjecture q.\n")
    verdict = solve_with_var_growth(doc, fake_prover, 3)
    assert verdict.status == SZSStatus.ERROR
    assert verdict.attempts[0].error
