"""Command-line interface.

Subcommands cover the batch workflow: validate or classify a model
bundle, compute ranking weights, fit variable thresholds, and inspect SD
functions. Exit code 0 means success, 1 means the input failed
validation, 2 means the invocation itself was wrong. Diagnostics go to
standard error, as text or as JSON lines with `--format json-lines`.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from .bundle import read_model, read_ranking, read_threshold_points, write_results
from .engine import classify
from .errors import CatsdError
from .sdfunc import Affine, Constant, eval_sd, format_sd_rows, parse_sd_rows
from .srf import WeightElicitation, format_weight, srf_weights

MODEL_DIR_VAR = "CATSD_MODEL_DIR"


def _print_issues(issues, fmt: str) -> None:
    for issue in issues:
        if fmt == "json-lines":
            print(json.dumps(issue.to_dict(), sort_keys=True), file=sys.stderr)
        else:
            context = ", ".join(f"{k}={v}" for k, v in issue.context.items())
            suffix = f" ({context})" if context else ""
            print(f"{issue.code}: {issue.message}{suffix}", file=sys.stderr)


def _print_error(err: CatsdError, fmt: str) -> None:
    if fmt == "json-lines":
        payload = {"code": err.code, "message": str(err.args[0]), "context": err.context}
        print(json.dumps(payload, sort_keys=True), file=sys.stderr)
    else:
        print(str(err), file=sys.stderr)


def _emit(record: dict, text: str, fmt: str) -> None:
    if fmt == "json-lines":
        print(json.dumps(record, sort_keys=True))
    else:
        print(text)


def _fraction_text(value) -> str:
    frac = Fraction(value)
    return str(frac.numerator) if frac.denominator == 1 else f"{frac.numerator}/{frac.denominator}"


def _threshold_text(kind) -> str:
    if isinstance(kind, Constant):
        return _fraction_text(kind.c) if float(kind.c).is_integer() else repr(float(kind.c))
    slope = _fraction_text(kind.slope)
    intercept = Fraction(kind.intercept)
    if intercept == 0:
        return f"{slope}*level"
    sign = "-" if intercept < 0 else "+"
    return f"{slope}*level {sign} {_fraction_text(abs(intercept))}"


def _load_model(args) -> object:
    path = args.model or os.environ.get(MODEL_DIR_VAR)
    if not path:
        raise CatsdError(
            "MISSING_FILE",
            f"no model path given and {MODEL_DIR_VAR} is not set",
        )
    return read_model(path)


def _cmd_classify(args) -> int:
    project = _load_model(args)
    if not project.ok:
        _print_issues(project.report.issues, args.format)
        return 1
    report = classify(project.actions, project.performances, project.model, epsilon=args.epsilon)
    paths = write_results(args.out, report, detail=args.detail)
    for path in paths:
        _emit({"written": path}, path, args.format)
    return 0


def _cmd_validate(args) -> int:
    project = _load_model(args)
    if project.report.ok:
        _emit({"ok": True}, "model valid", args.format)
        return 0
    _print_issues(project.report.issues, args.format)
    _emit(
        {"ok": False, "issues": len(project.report.issues)},
        f"model invalid: {len(project.report.issues)} issue(s)",
        args.format,
    )
    return 1


def _cmd_weights(args) -> int:
    ranking = read_ranking(args.ranking)
    weights = srf_weights(WeightElicitation(ranking, args.z))
    for cid, weight in weights.items():
        shown = format_weight(weight)
        _emit(
            {"criterion": cid, "weight": shown, "exact": _fraction_text(weight)},
            f"{cid}: {shown}",
            args.format,
        )
    return 0


def _cmd_fit_thresholds(args) -> int:
    fits = read_threshold_points(args.points)
    for name, kind in fits.items():
        text = _threshold_text(kind)
        if isinstance(kind, Constant):
            record = {"threshold": name, "kind": "constant", "value": _fraction_text(kind.c)}
        else:
            record = {
                "threshold": name,
                "kind": "affine",
                "slope": _fraction_text(kind.slope),
                "intercept": _fraction_text(kind.intercept),
            }
        _emit(record, f"{name}: {text}", args.format)
    return 0


def _read_sd_file(path):
    import csv as csvmod

    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csvmod.DictReader(fh))
    if rows and "function_id" in rows[0]:
        ids = {row["function_id"] for row in rows}
        if len(ids) != 1:
            raise CatsdError(
                "BAD_VALUE",
                f"the file holds {len(ids)} SD functions; split it or pass one",
                functions=sorted(ids),
            )
        body = [(row["condition"], row["value"]) for row in rows]
        return parse_sd_rows(body, id=ids.pop())
    if not rows or "condition" not in rows[0] or "value" not in rows[0]:
        raise CatsdError("MISSING_COLUMN", "an SD file needs condition and value columns")
    return parse_sd_rows([(row["condition"], row["value"]) for row in rows])


def _cmd_sd(args) -> int:
    f = _read_sd_file(args.function)
    if args.sd_command == "parse":
        for condition, value in format_sd_rows(f):
            _emit({"condition": condition, "value": value}, f"{condition},{value}", args.format)
        return 0
    value = eval_sd(f, args.delta)
    _emit({"delta": args.delta, "value": value}, repr(value), args.format)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(args.data_dir)
    uvicorn.run(app, host=args.bind, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    # The flag is accepted before or after the subcommand, so it lives on
    # the main parser and, via a parent, on every subparser. The copies
    # default to SUPPRESS so an unset one does not overwrite a set one.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("text", "json-lines"),
        default=argparse.SUPPRESS,
        help="output style for results and diagnostics",
    )
    parser = argparse.ArgumentParser(
        prog="catsd",
        description="Similarity-based nominal classification toolkit",
    )
    parser.add_argument(
        "--format",
        choices=("text", "json-lines"),
        default="text",
        help="output style for results and diagnostics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="classify actions and write result sheets")
    p.add_argument("--model", help=f"bundle directory or zip (default: ${MODEL_DIR_VAR})")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--detail", choices=("summary", "full"), default="summary")
    p.add_argument("--epsilon", type=float, default=0.0, help="acceptance widening")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("validate", parents=[common], help="check a model bundle")
    p.add_argument("--model", help=f"bundle directory or zip (default: ${MODEL_DIR_VAR})")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("weights", parents=[common], help="deck-of-cards criteria weights")
    p.add_argument("--ranking", required=True, help="ranking CSV or JSON")
    p.add_argument("--z", type=float, required=True, help="importance ratio of top to bottom subset")
    p.set_defaults(func=_cmd_weights)

    p = sub.add_parser("fit-thresholds", parents=[common], help="fit threshold lines through anchor points")
    p.add_argument("--points", required=True, help="points CSV or JSON")
    p.set_defaults(func=_cmd_fit_thresholds)

    p = sub.add_parser("sd", help="inspect a similarity-dissimilarity function")
    sd_sub = p.add_subparsers(dest="sd_command", required=True)
    pp = sd_sub.add_parser("parse", parents=[common], help="parse and reprint the canonical rows")
    pp.add_argument("--function", required=True, help="SD function CSV")
    pp.set_defaults(func=_cmd_sd)
    pe = sd_sub.add_parser("eval", parents=[common], help="evaluate at a difference")
    pe.add_argument("--function", required=True, help="SD function CSV")
    pe.add_argument("--delta", type=float, required=True)
    pe.set_defaults(func=_cmd_sd)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--bind", default="127.0.0.1")
    p.add_argument("--data-dir", default="./catsd-projects", help="project storage directory")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return exit_.code if isinstance(exit_.code, int) else 2
    try:
        return args.func(args)
    except CatsdError as err:
        _print_error(err, args.format)
        return 1
    except FileNotFoundError as err:
        print(f"cannot open {err.filename!r}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
