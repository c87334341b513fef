import pytest

from src.cli import EXIT_ERROR, EXIT_NOT_PROVED, EXIT_OK, cli_main


@pytest.fixture
def romeo(corpus_dir):
    return str(corpus_dir / "romeo.qiana")


def test_check(romeo, capsys):
    assert cli_main(["check", romeo]) == EXIT_OK
    out = capsys.readouterr().out
    assert out == f"{romeo}: ok (untyped), 9 axioms, conjecture: yes, V = [X, v1, v2]\n"


def test_check_typed(corpus_dir, capsys):
    assert cli_main(["check", str(corpus_dir / "typed_romeo.qiana")]) == EXIT_OK
    assert "ok (typed)" in capsys.readouterr().out


def test_check_reports_capture_warnings(tmp_path, capsys):
    path = tmp_path / "capture.qiana"
    path.write_text("forall X. <c> p(X).\n", encoding="utf-8")
    assert cli_main(["check", str(path)]) == EXIT_OK
    assert "warning: X is bound outside the quotation" in capsys.readouterr().err


def test_vars_flag(romeo, capsys):
    assert cli_main(["check", "--vars", "5", romeo]) == EXIT_OK
    assert "V = [X, v1, v2, v3, v4]" in capsys.readouterr().out


def test_axioms(romeo, capsys):
    assert cli_main(["axioms", romeo]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("user_1\tUSER[1] @line 10\t")
    assert lines[-1].startswith("digest ") and len(lines[-1]) == len("digest ") + 64
    assert '"total":' in "\n".join(lines)


def test_axioms_digest_is_stable(romeo, capsys):
    cli_main(["axioms", romeo])
    first = capsys.readouterr().out
    cli_main(["axioms", romeo])
    assert capsys.readouterr().out == first


def test_compile_to_file(romeo, tmp_path):
    out = tmp_path / "romeo.p"
    assert cli_main(["compile", romeo, "--out", str(out)]) == EXIT_OK
    text = out.read_text(encoding="utf-8")
    assert text.startswith("% Qiana closure (FOF)")
    assert "fof(goal, conjecture," in text


def test_compile_typed_emits_tff(corpus_dir, capsys):
    assert cli_main(["compile", str(corpus_dir / "typed_romeo.qiana")]) == EXIT_OK
    assert "tff(type_person, type, person: $tType)." in capsys.readouterr().out


def test_syntax_error_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.qiana"
    path.write_text("p(a).\nq(b) r.\n", encoding="utf-8")
    assert cli_main(["check", str(path)]) == EXIT_ERROR
    assert capsys.readouterr().err.startswith("error: 2:")


def test_missing_file_exits_2(tmp_path):
    assert cli_main(["check", str(tmp_path / "missing.qiana")]) == EXIT_ERROR


@pytest.mark.parametrize("argv, code", [
    (["frobnicate", "x.qiana"], EXIT_ERROR),
    ([], EXIT_ERROR),
    (["check", "--modal", "z", "x.qiana"], EXIT_ERROR),
    (["--help"], EXIT_OK),
])
def test_usage(argv, code, capsys):
    assert cli_main(argv) == code


def test_prove_theorem(romeo, fake_prover_path, capsys):
    assert cli_main(["prove", romeo, "--prover", str(fake_prover_path)]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith(f"SZS Theorem for {romeo} (")
    assert "|V| = 3)" in out


def test_prove_not_proved(romeo, fake_prover_path, monkeypatch):
    monkeypatch.setenv("FAKE_SZS_STATUS", "CounterSatisfiable")
    assert cli_main(["prove", romeo, "--prover", str(fake_prover_path)]) == EXIT_NOT_PROVED


def test_prove_several_files(corpus_dir, fake_prover_path, capsys):
    files = [str(corpus_dir / name) for name in ("romeo.qiana", "stories.qiana", "quote_symbol.qiana")]
    assert cli_main(["prove", *files, "--prover", str(fake_prover_path)]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert [line.split(" for ")[1].split(" (")[0] for line in lines] == files


def test_prove_vars_auto(corpus_dir, fake_prover_path, capsys):
    path = str(corpus_dir / "var_growth.qiana")
    assert cli_main(["prove", path, "--prover", str(fake_prover_path), "--vars-auto", "6"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith(f"SZS Theorem for {path}")
    assert lines[0].endswith("|V| = 4)")
    assert lines[1].startswith("  |V| = 3: Error (")
    assert lines[2] == "  |V| = 4: Theorem"


def test_prove_without_conjecture(tmp_path, fake_prover_path, capsys):
    path = tmp_path / "facts.qiana"
    path.write_text("p(a).\n", encoding="utf-8")
    assert cli_main(["prove", str(path), "--prover", str(fake_prover_path)]) == EXIT_ERROR
    assert "no #conjecture" in capsys.readouterr().err
