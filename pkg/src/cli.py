"""
Command line: ``python -m src.cli {check,axioms,compile,prove} FILE ...``.

Exit codes: 0 success or Theorem, 1 any other verdict, 2 usage or compile error.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from src.config import get_settings
from src.core.exceptions import QianaError
from src.core.utils import natural_key
from src.modules.frontend.models import MODAL_SYSTEMS, CompileOptions
from src.modules.frontend.parser import parse
from src.modules.runner.schemas import ProverConfig, ProverVerdict
from src.modules.runner.services import compile_problem, compile_source, prove_many, solve_with_var_growth

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NOT_PROVED = 1
EXIT_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qiana", description="Compile Qiana theories to TPTP and prove them.")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")

    flags = argparse.ArgumentParser(add_help=False)
    flags.add_argument("--vars", type=int, metavar="N", help="number of quotable variables |V|")
    flags.add_argument("--typed", action="store_true", help="many-sorted mode, emits TFF")
    flags.add_argument("--temporal", action="store_true", help="event-calculus mode")
    flags.add_argument("--modal", choices=MODAL_SYSTEMS, help="modal system for box/dia")
    flags.add_argument("--explosion", action="store_true", help="add the explosion axiom")
    flags.add_argument("--disambiguation", action="store_true", help="add the disambiguation axioms")
    flags.add_argument("--explicit-equality", action="store_true", help="axiomatize equality instead of native =")
    flags.add_argument("--out", type=Path, metavar="FILE", help="write output to FILE instead of stdout")

    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("check", parents=[flags], help="parse, elaborate and typecheck").add_argument("file", type=Path)
    commands.add_parser("axioms", parents=[flags], help="print the generated axioms").add_argument("file", type=Path)
    commands.add_parser("compile", parents=[flags], help="write the TPTP problem").add_argument("file", type=Path)

    prove = commands.add_parser("prove", parents=[flags], help="compile and run the prover")
    prove.add_argument("files", type=Path, nargs="+")
    prove.add_argument("--prover", metavar="PATH", help="prover executable (default: $QIANA_PROVER)")
    prove.add_argument("--timeout", type=float, metavar="SECS", help="prover time limit per goal")
    prove.add_argument("--vars-auto", type=int, metavar="MAX", help="grow |V| until proved or MAX is reached")
    return parser


def compile_options(args: argparse.Namespace) -> CompileOptions:
    return CompileOptions(
        vars=args.vars,
        typed=args.typed,
        temporal=args.temporal,
        modal=args.modal,
        explosion=args.explosion,
        disambiguation=args.disambiguation,
        explicit_equality=args.explicit_equality,
    )


def _write(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")
        logger.info(f"Wrote {out}")


def cmd_check(args: argparse.Namespace) -> int:
    theory = compile_source(args.file.read_text(encoding="utf-8"), compile_options(args))
    for warning in theory.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    mode = "typed" if theory.tsig is not None else "untyped"
    _write(
        f"{args.file}: ok ({mode}), {len(theory.axioms)} axioms, "
        f"conjecture: {'yes' if theory.conjecture is not None else 'no'}, "
        f"V = [{', '.join(theory.asig.quotable_vars)}]\n",
        args.out,
    )
    return EXIT_OK


def cmd_axioms(args: argparse.Namespace) -> int:
    problem = compile_problem(args.file.read_text(encoding="utf-8"), compile_options(args))
    manifest = problem.closure.manifest
    lines = [f"{axiom.name}\t{axiom.provenance}\t{axiom.formula}" for axiom in problem.closure]
    counts = {tag: manifest.counts[tag] for tag in sorted(manifest.counts, key=natural_key)}
    lines.append(json.dumps({"packs": manifest.packs, "counts": counts, "total": manifest.total}, indent=2))
    lines.append(f"digest {manifest.digest}")
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_compile(args: argparse.Namespace) -> int:
    problem = compile_problem(args.file.read_text(encoding="utf-8"), compile_options(args))
    _write(problem.document.render(), args.out)
    return EXIT_OK


def _summary(path: Path, verdict: ProverVerdict) -> str:
    text = f"SZS {verdict.status.value} for {path} ({verdict.wall_time:.2f}s"
    if verdict.vars is not None:
        text += f", |V| = {verdict.vars}"
    return text + ")"


def cmd_prove(args: argparse.Namespace) -> int:
    options = compile_options(args)
    sources = [path.read_text(encoding="utf-8") for path in args.files]
    documents = [parse(source) for source in sources]
    modal = options.modal is not None or any(doc.option("modal") for doc in documents)
    cfg = ProverConfig.from_settings(get_settings(), executable=args.prover, timeout=args.timeout, modal=modal)

    if args.vars_auto is not None:
        verdicts = [solve_with_var_growth(doc, cfg, args.vars_auto, options) for doc in documents]
    else:
        for source in sources:
            problem = compile_problem(source, options)
            if problem.theory.conjecture is None:
                raise QianaError("nothing to prove: the document has no #conjecture")
        verdicts = prove_many(sources, cfg, options)

    lines: List[str] = []
    for path, verdict in zip(args.files, verdicts):
        lines.append(_summary(path, verdict))
        for attempt in verdict.attempts:
            lines.append(f"  |V| = {attempt.vars}: {attempt.status.value}" + (f" ({attempt.error})" if attempt.error else ""))
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK if all(v.is_theorem for v in verdicts) else EXIT_NOT_PROVED


COMMANDS = {
    "check": cmd_check,
    "axioms": cmd_axioms,
    "compile": cmd_compile,
    "prove": cmd_prove,
}


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_OK

    settings = get_settings()
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else settings.LOG_LEVEL,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        return COMMANDS[args.command](args)
    except QianaError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
