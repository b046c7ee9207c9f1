"""Command line interface.

Subcommands:

  run <file.sgc>   execute a construction script and emit its report
  verify-paper     run the built-in end-to-end verification of the exotic
                   CP^2 # 3 CP^2bar construction
  simplify <file>  simplify a presentation document and emit the result

Exit codes: 0 PASS, 1 FAIL, 2 INCONCLUSIVE, 64 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import construction, script as sgc
from .tietze import tietze_simplify

USAGE_EXIT = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-cosets", type=int, default=100_000, metavar="N",
                   help="coset budget for enumerations (default 100000)")
    p.add_argument("--tietze-budget", type=int, default=1000, metavar="N",
                   help="step budget for presentation simplification (default 1000)")
    p.add_argument("--emit", choices=("json", "text"), default="json",
                   help="report format (default json)")
    p.add_argument("--trace", action="store_true",
                   help="include derivation traces in text output")
    p.add_argument("--out", metavar="PATH", help="write the report to a file")


def _emit(payload: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(payload)
        if not payload.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(payload)


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as err:
        print(f"sgcalc: cannot read {path}: {err}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _cmd_run(args: argparse.Namespace) -> int:
    text = _read(args.file)
    try:
        parsed = sgc.parse(text)
    except sgc.ParseError as err:
        print(f"sgcalc: parse error in {args.file}: {err}", file=sys.stderr)
        return USAGE_EXIT
    report = sgc.execute(parsed, sgc.Budgets(args.max_cosets, args.tietze_budget))
    if args.emit == "json":
        _emit(report.to_json(), args.out)
    else:
        _emit(report.to_text(trace=args.trace), args.out)
    return report.exit_code


def _verify_text(report: construction.ConstructionReport, trace: bool) -> str:
    lines = []
    for c in report.checks:
        mark = "ok  " if c.ok else "FAIL"
        lines.append(f"{mark} {c.name}: {c.detail}")
    if trace and report.replay is not None:
        lines.append("")
        lines.append("kill-order replay:")
        for step in report.replay.steps:
            cited = ", ".join(str(i) for i in step.uses)
            lines.append(f"  kill {step.generator} (relations {cited})")
            for d in step.derivation:
                lines.append(f"    {d}")
    if trace and report.trace is not None:
        lines.append("")
        lines.append(
            "simplification: "
            + ", ".join(report.trace.eliminated_generators())
            + f" eliminated in {len(report.trace.steps)} steps"
        )
    lines.append("")
    lines.append("assumptions:")
    lines += [f"  {a}" for a in report.assumptions]
    lines.append("axioms:")
    lines += [f"  {a}" for a in report.axioms]
    lines.append(f"verdict: {report.verdict}")
    return "\n".join(lines) + "\n"


def _cmd_verify(args: argparse.Namespace) -> int:
    report = construction.verify_main_theorem(args.max_cosets, args.tietze_budget)
    if args.emit == "json":
        _emit(json.dumps(report.to_dict(), indent=2), args.out)
    else:
        _emit(_verify_text(report, args.trace), args.out)
    return {"PASS": 0, "FAIL": 1, "INCONCLUSIVE": 2}[report.verdict]


def _cmd_simplify(args: argparse.Namespace) -> int:
    text = _read(args.file)
    try:
        p = sgc.parse_presentation_document(text)
    except sgc.ParseError as err:
        print(f"sgcalc: parse error in {args.file}: {err}", file=sys.stderr)
        return USAGE_EXIT
    final, trace = tietze_simplify(p, args.tietze_budget)
    if args.emit == "json":
        payload = json.dumps(
            {
                "initial": {
                    "generators": list(p.alphabet.names),
                    "relators": [str(r) for r in p.relators],
                },
                "final": {
                    "generators": list(final.alphabet.names),
                    "relators": [str(r) for r in final.relators],
                },
                "steps": len(trace.steps),
                "eliminated": trace.eliminated_generators(),
                "complete": trace.complete,
            },
            indent=2,
        )
        _emit(payload, args.out)
    else:
        lines = [
            sgc.format_presentation_document(final).rstrip("\n"),
            f"steps: {len(trace.steps)}",
            f"eliminated: {', '.join(trace.eliminated_generators()) or '(none)'}",
            f"complete: {trace.complete}",
        ]
        if args.trace:
            lines += [f"  {step!r}" for step in trace.steps]
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if trace.complete else 2


def main(argv: list[str] | None = None) -> int:
    parser = _Parser(prog="sgcalc", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a .sgc construction script")
    p_run.add_argument("file")
    _add_common(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_verify = sub.add_parser(
        "verify-paper",
        help="verify the built-in exotic CP^2 # 3 CP^2bar construction end to end",
    )
    _add_common(p_verify)
    p_verify.set_defaults(func=_cmd_verify)

    p_simp = sub.add_parser("simplify", help="simplify a presentation document")
    p_simp.add_argument("file")
    _add_common(p_simp)
    p_simp.set_defaults(func=_cmd_simplify)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
