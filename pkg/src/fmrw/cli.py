"""Command-line front end.

    fmrw validate  --program FILE
    fmrw analyze   --program FILE --target NET --mode {h,l,t,f} [--out FILE]
    fmrw quantify  --shortlist FILE --failure-data FILE [--method ...]
    fmrw compose   --system FILE --failure-data FILE [--top NAME]
    fmrw verify    --program FILE --target NET --mode M --readings SRC
    fmrw verify    --fuzz N [--seed S]        (FMRW_SEED also honored)
    fmrw export    --shortlist FILE --failure-data FILE --format {xml,cft-csv,csv} --out F
    fmrw report    [--du] [--st]              (bundled case study end to end)

Exit status: 0 success, 1 detected violations/diagnostics, 2 usage or input
errors. Outputs are deterministic for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from fmrw.exceptions import FmrwError
from fmrw import corpus
from fmrw.composer import analyze_system, load_system_model
from fmrw.fbd import parse_program, validate_program
from fmrw.interchange import (
    atomic_write_text,
    export_cft_csv,
    export_hiphops_xml,
    shortlist_from_json,
    shortlist_to_csv,
    shortlist_to_json,
)
from fmrw.oracle import OracleConfig, check_completeness, check_soundness
from fmrw.oracle.fuzz import run_fuzz_campaign
from fmrw.quant import Method, QuantConfig, load_database, sif_pfd, top_measures
from fmrw.reasoning import Mode, analyze
from fmrw.report import build_report, render_report, sci

USAGE_ERROR = 2
VIOLATION = 1


def _load_program(path: str | None):
    if path is None:
        return corpus.corpus_program(), True
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    bundled = os.path.abspath(path) == os.path.abspath(corpus.data_path(corpus.PROGRAM_FILE))
    return parse_program(text), bundled


def _emit(text: str, out: str | None) -> None:
    if out:
        atomic_write_text(out, text)
    else:
        sys.stdout.write(text)


def cmd_validate(args) -> int:
    program, _ = _load_program(args.program)
    diags = validate_program(program)
    for d in diags:
        print(d)
    if not diags:
        print("program is valid")
    return VIOLATION if diags else 0


def cmd_analyze(args) -> int:
    program, _ = _load_program(args.program)
    sl = analyze(program, args.target, Mode(args.mode))
    if args.format == "json":
        _emit(shortlist_to_json(sl), args.out)
    else:
        _emit(shortlist_to_csv(sl), args.out)
    for warning in sl.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    return 0


def cmd_quantify(args) -> int:
    with open(args.shortlist, "r", encoding="utf-8") as fh:
        sl = shortlist_from_json(fh.read())
    db = _database(args)
    cfg = QuantConfig(risk_time=args.risk_time, method=Method(args.method))
    tm = top_measures(sl.event_cut_sets(), db, cfg)
    lines = []
    for idx, (cs, m) in enumerate(tm.per_cut_set, start=1):
        lines.append(f"{idx:3d}  Q={sci(m.q)}  W={sci(m.w)}/h  {' & '.join(sorted(cs))}")
    lines.append(f"{cfg.method.value.upper()}  Q_TE={sci(tm.q_top)}  W_TE={sci(tm.w_top)}/h")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_compose(args) -> int:
    model = load_system_model(args.system)
    db = _database(args)
    cfg = QuantConfig(risk_time=args.risk_time, method=Method(args.method))
    tops = [args.top] if args.top else list(model.tops)
    lines = []
    for top in tops:
        sl, tm = analyze_system(model, top, db, cfg)
        lines.append(f"top {top}: {len(sl.cut_sets)} cut sets")
        for cs in sl.cut_sets:
            lines.append("  " + " & ".join(sorted(cs)))
        lines.append(f"  {cfg.method.value.upper()}  Q={sci(tm.q_top)}  W={sci(tm.w_top)}/h")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_verify(args) -> int:
    if args.fuzz:
        seed = args.seed if args.seed is not None else int(os.environ.get("FMRW_SEED", "0"))
        report = run_fuzz_campaign(n_programs=args.fuzz, seed=seed)
        print(
            f"fuzz: {report.cases} programs, {report.checks} checks, "
            f"{len(report.failures)} failures (seed={seed})"
        )
        for f in report.failures:
            print(json.dumps(f.report, indent=1))
        return 0 if report.passed else VIOLATION

    if not args.target or not args.mode:
        print("verify needs --target and --mode (or --fuzz N)", file=sys.stderr)
        return USAGE_ERROR
    program, bundled = _load_program(args.program)
    mode = Mode(args.mode)
    readings = _readings(args, bundled, mode)
    cfg = OracleConfig(intended=readings)
    sl = analyze(program, args.target, mode)
    ok = True
    results = {}
    for check in (check_completeness, check_soundness):
        r = check(program, args.target, mode, sl, cfg)
        results[r.kind] = r.to_dict()
        ok = ok and r.passed
    print(json.dumps(results, indent=1))
    return 0 if ok else VIOLATION


def cmd_export(args) -> int:
    with open(args.shortlist, "r", encoding="utf-8") as fh:
        sl = shortlist_from_json(fh.read())
    db = _database(args)
    if args.format == "xml":
        export_hiphops_xml(sl, db, args.out)
    elif args.format == "cft-csv":
        export_cft_csv(sl, db, args.out)
    else:
        atomic_write_text(args.out, shortlist_to_csv(sl))
    print(f"wrote {args.out}")
    return 0


def cmd_report(args) -> int:
    program = corpus.corpus_program()
    db = _database(args)
    cfg = QuantConfig(risk_time=args.risk_time)
    want_du = args.du or not (args.du or args.st)
    want_st = args.st or not (args.du or args.st)
    chunks = []

    if want_du:
        sl = analyze(program, "SIF_OUT", Mode.TRUE)
        model = corpus.corpus_system_model(
            "du", shortlist_overrides={("Inputs", "Out", "DU"): sl}
        )
        _, tm = analyze_system(model, "SIF_DU", db, cfg)
        inputs_q = top_measures(sl.event_cut_sets(), db, cfg).q_top
        rep = build_report(program, sl, db, cfg, methods=("ep", "re"))
        chunks.append("== dangerous undetected failure ==\n" + render_report(rep))
        chunks.append(f"inputs PFD = {sci(inputs_q)}\ncombined Q_DU = {sci(tm.q_top)}\n")

    if want_st:
        sl = analyze(program, "SIF_OUT", Mode.FALSE)
        model = corpus.corpus_system_model(
            "st", shortlist_overrides={("Inputs", "Out", "ST"): sl}
        )
        _, tm = analyze_system(model, "SIF_ST", db, cfg)
        rep = build_report(program, sl, db, cfg, methods=("ep", "re"))
        chunks.append("== spurious trip ==\n" + render_report(rep))
        chunks.append(f"combined W_ST = {sci(tm.w_top)}/h\n")

    _emit("\n".join(chunks), args.out)
    return 0


def _database(args):
    if getattr(args, "failure_data", None):
        return load_database(args.failure_data)
    return corpus.corpus_failure_database()


def _readings(args, bundled: bool, mode: Mode) -> dict[str, float]:
    src = getattr(args, "readings", None)
    if src is None:
        if bundled:
            return corpus.profile_for_mode(mode)
        raise FmrwError("verify needs --readings for non-bundled programs")
    profiles = corpus.corpus_profiles()
    if src in profiles:
        return profiles[src]
    with open(src, "r", encoding="utf-8") as fh:
        return json.load(fh)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fmrw",
        description="Failure-mode reasoning workbench for function-block safety programs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, program=True, quant=False, out=True):
        if program:
            p.add_argument("--program", help="program document (default: bundled case study)")
        if quant:
            p.add_argument("--failure-data", help="failure-rate CSV (default: bundled)")
            p.add_argument("--method", choices=[m.value for m in Method], default="ep")
            p.add_argument("--risk-time", type=float, default=17520.0,
                           help="risk-assessment time in hours (default 17520)")
        if out:
            p.add_argument("--out", help="write output to FILE instead of stdout")

    p = sub.add_parser("validate", help="check program invariants")
    common(p, out=False)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="derive the failure-mode short list")
    common(p)
    p.add_argument("--target", required=True)
    p.add_argument("--mode", required=True, choices=[m.value for m in Mode])
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("quantify", help="quantify a short list")
    common(p, program=False, quant=True)
    p.add_argument("--shortlist", required=True, help="short-list JSON file")
    p.set_defaults(func=cmd_quantify)

    p = sub.add_parser("compose", help="synthesize and quantify a system model")
    common(p, program=False, quant=True)
    p.add_argument("--system", required=True, help="system model JSON file")
    p.add_argument("--top", help="top name (default: every declared top)")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("verify", help="fault-injection oracle checks")
    common(p, out=False)
    p.add_argument("--target")
    p.add_argument("--mode", choices=[m.value for m in Mode])
    p.add_argument("--readings",
                   help="intended readings: bundled profile name or JSON file")
    p.add_argument("--fuzz", type=int, metavar="N",
                   help="check N random programs instead of one analysis")
    p.add_argument("--seed", type=int, help="fuzz seed (default: FMRW_SEED or 0)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="write interchange files")
    common(p, program=False, quant=True, out=False)
    p.add_argument("--shortlist", required=True)
    p.add_argument("--format", choices=["xml", "cft-csv", "csv"], required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("report", help="bundled case-study results")
    common(p, program=False, quant=True)
    p.add_argument("--du", action="store_true", help="dangerous-undetected analysis")
    p.add_argument("--st", action="store_true", help="spurious-trip analysis")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FmrwError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
