"""
``fmzv verify | eval | table``.

Reports, values and CSV go to stdout (or ``--out``); logs go to stderr.
Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 only
inconclusive results.
"""

import argparse
import sys
from typing import Any, Dict, List, Optional, Sequence

from pydantic import ValidationError

from app.core.config import settings, validate_configuration
from app.core.exceptions import AccuracyError, CapabilityError, DomainError
from app.core.logging import app_logger
from app.models.schemas import RunConfig, Status, TheoremCase
from app.services import appendix
from app.services.indices import Index, enumerate_Ikr
from app.services.numeric import format_real, symmetric_hat, symmetric_hat_star
from app.services.padic import prime_window, zetaA, zetaA_star
from app.services.theorems import THEOREMS, get_theorem, rhs_eval, t_poly
from app.services.verifier import EXACT_SUITES, run_case, verify
from app.services.words import PRODUCTS, LinComb
from app.utils.table_formatter import format_as_ascii_table, report_rows, residue_rows, to_csv

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3

PARAMETER_FLAGS = ("k", "r", "i", "a", "b", "c", "l", "m", "k1", "k2", "k3")
LIMIT_FLAGS = ("kmax", "amax", "rmax", "wmax")


def _add_window_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--primes", default=None, help="prime window A:B (default FMZV_DEFAULT_PRIMES)")
    parser.add_argument("--n", type=int, default=None, help="truncation level 1, 2 or 3")
    parser.add_argument("--digits", type=int, default=None, help="decimal digits for real values")


def _add_output_options(parser: argparse.ArgumentParser, default_format: str) -> None:
    parser.add_argument("--format", choices=("json", "csv", "text"), default=default_format)
    parser.add_argument("--out", default=None, help="write output to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fmzv", description="Verify 𝓕ₙ-multiple zeta value formulas")
    commands = parser.add_subparsers(dest="command", required=True)

    verify_parser = commands.add_parser("verify", help="run verification suites", allow_abbrev=False)
    verify_parser.add_argument("--id", dest="ids", action="append", default=None,
                               help="statement id (repeatable, comma lists allowed); default all")
    _add_window_options(verify_parser)
    for flag in LIMIT_FLAGS:
        verify_parser.add_argument(f"--{flag}", type=int, default=None)
    for flag in PARAMETER_FLAGS:
        verify_parser.add_argument(f"--{flag}", dest=f"param_{flag}", type=int, default=None)
    verify_parser.add_argument("--index", dest="param_index", default=None, help="index such as 2,1,3")
    verify_parser.add_argument("--side", choices=("A", "S"), default="A")
    verify_parser.add_argument("--jobs", type=int, default=None)
    verify_parser.add_argument("--list", action="store_true", help="list statement ids and exit")
    _add_output_options(verify_parser, "json")

    eval_parser = commands.add_parser("eval", help="evaluate a single value")
    eval_parser.add_argument("target", choices=("a", "s", "word"))
    eval_parser.add_argument("--index", default=None)
    eval_parser.add_argument("--star", action="store_true")
    eval_parser.add_argument("--reg", default="sh", help="regularization: sh or st")
    eval_parser.add_argument("--op", choices=tuple(PRODUCTS), default="harmonic")
    eval_parser.add_argument("--left", default=None)
    eval_parser.add_argument("--right", default=None)
    _add_window_options(eval_parser)

    table_parser = commands.add_parser("table", help="emit a table as CSV")
    table_parser.add_argument("name", choices=("appendix", "sumF2", "sumF3"))
    table_parser.add_argument("--amax", type=int, default=10)
    table_parser.add_argument("--kmax", type=int, default=10)
    _add_window_options(table_parser)
    _add_output_options(table_parser, "csv")
    return parser


def _split_ids(raw: Optional[List[str]]) -> List[str]:
    if not raw:
        return ["all"]
    ids = [part.strip() for chunk in raw for part in chunk.split(",") if part.strip()]
    for theorem_id in ids:
        if theorem_id != "all" and theorem_id not in EXACT_SUITES:
            get_theorem(theorem_id)
    return ids


def _single_case_params(args: argparse.Namespace) -> Dict[str, Any]:
    params: Dict[str, Any] = {}
    for flag in PARAMETER_FLAGS:
        value = getattr(args, f"param_{flag}")
        if value is not None:
            params[flag] = value
    if args.param_index is not None:
        params["index"] = tuple(Index.parse(args.param_index))
    return params


def _run_config(args: argparse.Namespace, **extra) -> RunConfig:
    return RunConfig(
        command=args.command,
        window=args.primes or settings.default_primes,
        n=args.n,
        digits=args.digits or settings.default_digits,
        output_format=getattr(args, "format", "text"),
        out=getattr(args, "out", None),
        **extra,
    )


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    with open(out, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)
    app_logger.info(f"wrote {out}")


def cmd_verify(args: argparse.Namespace) -> int:
    if args.list:
        rows = [{"id": tid, "side": theorem.side.value, "levels": theorem.levels, "title": theorem.title}
                for tid, theorem in THEOREMS.items()]
        rows.extend({"id": name, "side": "A", "levels": (), "title": "exact rational suite"}
                    for name in EXACT_SUITES)
        _emit(format_as_ascii_table(rows, max_width=60, max_rows=len(rows)), None)
        return EXIT_OK
    ids = _split_ids(args.ids)
    params = _single_case_params(args)
    if params and (len(ids) != 1 or ids == ["all"] or ids[0] in EXACT_SUITES):
        raise DomainError("parameter flags need exactly one statement id")
    config = _run_config(args, ids=ids, side=args.side, params=params, jobs=args.jobs,
                         limits={flag: getattr(args, flag) for flag in LIMIT_FLAGS})
    report = verify(config.ids, config.n, config.window, config.digits, config.limits,
                    config.side, config.params or None, config.jobs)
    if config.output_format == "json":
        text = report.to_json()
    elif config.output_format == "csv":
        text = to_csv(report_rows(report.cases))
    else:
        text = format_as_ascii_table(report_rows(report.cases), max_width=48, max_rows=len(report.cases))
        text += f"\n{report.window_note}"
    _emit(text, config.out)
    for case in report.failed:
        app_logger.error(f"FAIL {case.case}: {case.detail}")
    return report.exit_code


def _eval_a(args: argparse.Namespace, config: RunConfig) -> str:
    index = Index.parse(args.index or "")
    n = config.n or 1
    window = prime_window(*config.window)
    values = {f"ζ_A{n}{index}": zetaA(index, window, n)}
    if args.star:
        values[f"ζ*_A{n}{index}"] = zetaA_star(index, window, n)
    return format_as_ascii_table(residue_rows(values, window), max_width=40, max_rows=len(window))


def _eval_s(args: argparse.Namespace, config: RunConfig) -> str:
    index = Index.parse(args.index or "")
    n = config.n or 1
    evaluate = symmetric_hat_star if args.star else symmetric_hat
    series = evaluate(index, args.reg, n, config.digits)
    return "\n".join(f"t^{level}: {format_real(series[level], config.digits)}" for level in range(n))


def _eval_word(args: argparse.Namespace) -> str:
    left = LinComb.from_index(Index.parse(args.left or ""))
    right = LinComb.from_index(Index.parse(args.right or ""))
    return PRODUCTS[args.op](left, right).render_indices()


def cmd_eval(args: argparse.Namespace) -> int:
    config = _run_config(args)
    if args.target == "a":
        text = _eval_a(args, config)
    elif args.target == "s":
        text = _eval_s(args, config)
    else:
        text = _eval_word(args)
    _emit(text, None)
    return EXIT_OK


def _sum_f2_rows(kmax: int, config: RunConfig) -> List[Dict[str, Any]]:
    rows = []
    for k in range(1, kmax + 1):
        for r in range(1, k + 1):
            params = {"k": k, "r": r}
            case = TheoremCase(theorem_id="sumF2", params=params, n=2, window=config.window, digits=config.digits)
            report = run_case(case)
            rows.append({"k": k, "r": r, "size": len(enumerate_Ikr(k, r)),
                         "rhs": rhs_eval("sumF2", params, 2).render(), "status": report.status.value})
    return rows


def _sum_f3_rows(kmax: int) -> List[Dict[str, Any]]:
    rows = []
    for k in range(1, kmax + 1):
        for r in range(1, k + 1):
            params = {"k": k, "r": r}
            rows.append({"k": k, "r": r, "size": len(enumerate_Ikr(k, r)),
                         "t_terms": len(t_poly(k, r).items()), "rhs": rhs_eval("sumF3", params, 3).render()})
    return rows


TABLE_COLUMNS = {
    "appendix": ["a", "b", "I", "II", "III", "IV", "V", "VI",
                 "C_bruteforce", "C_direct", "C_closed", "C_expected", "status"],
    "sumF2": ["k", "r", "size", "rhs", "status"],
    "sumF3": ["k", "r", "size", "t_terms", "rhs"],
}


def cmd_table(args: argparse.Namespace) -> int:
    config = _run_config(args)
    if args.name == "appendix":
        rows = appendix.appendix_grid(args.amax)
        app_logger.debug(f"appendix grid: {len(rows)} rows")
    elif args.name == "sumF2":
        rows = _sum_f2_rows(args.kmax, config)
    else:
        rows = _sum_f3_rows(args.kmax)
    columns = TABLE_COLUMNS[args.name]
    if config.output_format == "text":
        text = format_as_ascii_table([{c: row[c] for c in columns} for row in rows], max_width=40,
                                     max_rows=max(len(rows), 1))
    else:
        text = to_csv(rows, columns)
    _emit(text, config.out)
    failed = [row for row in rows if row.get("status") == Status.FAIL.value]
    return EXIT_FAIL if failed else EXIT_OK


COMMANDS = {"verify": cmd_verify, "eval": cmd_eval, "table": cmd_table}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    for problem in validate_configuration():
        app_logger.warning(problem)
    try:
        return COMMANDS[args.command](args)
    except (ValidationError, DomainError) as exc:
        app_logger.error(f"usage error: {exc}")
        return EXIT_USAGE
    except (CapabilityError, AccuracyError) as exc:
        app_logger.error(f"not computed: {exc}")
        return EXIT_INCONCLUSIVE
    except OSError as exc:
        app_logger.error(f"cannot write {exc.filename}: {exc.strerror}")
        return EXIT_USAGE
