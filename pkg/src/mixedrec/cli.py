"""Command line front end.

    mixedrec zeros --family ch --n 5 --p 2 --q 1 --r 4 --s 3
    mixedrec verify --id MP_111 --n 6 --lambda 2 --phi 1.0
    mixedrec verify --prop conthahn1-i --n 5 --p 2 --q 1 --r 4 --s 3
    mixedrec sweep --suite identities --seed 7 --count 200 --n-max 15
    mixedrec reproduce-paper

Exit codes: 0 ok, 1 check failed, 2 invalid input, 3 convergence failure,
4 degenerate U in a Christoffel construction.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .config import (ConstraintViolation, ConvergenceFailure, DEFAULT_CONFIG, DegenerateU, InvalidParams,
                     MixedRecError, PrecisionConfig, SharedZeroSuspected, SingularParams, load_config)
from .families import CH, MP, PJ, family_polynomial, params_to_dict
from .identities import IdentityId, build_identity, residual_report
from .interlace import ALIASES, PROPOSITIONS, verify_proposition
from .roots import find_real_zeros
from .sweeps import SUITES, RunReport, Timer, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_CONVERGENCE, EXIT_DEGENERATE_U = 0, 1, 2, 3, 4

# reference examples with their 3-decimal values; merged lists include A
REFERENCE_EXAMPLES = (
    {
        "name": "n=5 complex",
        "n": 5,
        "params": CH(2, 1, 4, 3),
        "p_zeros": (-4.445, -2.957, -1.746, -0.601, 0.750),
        "shifts": (
            ("conthahn1-i", -0.636, (-4.766, -3.205, -1.889, -0.636, -0.597, 0.911)),
            ("conthahn1-ii", -3.727, (-4.483, -3.727, -2.919, -1.664, -0.485, 0.915)),
        ),
    },
    {
        "name": "n=6 real",
        "n": 6,
        "params": CH(2, 0, 4, 0),
        "p_zeros": (-3.041, -1.623, -0.511, 0.511, 1.623, 3.041),
        "shifts": (
            ("conthahn-i", 0.0, (-3.316, -1.800, -0.575, 0.0, 0.575, 1.800, 3.316)),
            ("conthahn-ii", 0.0, (-3.179, -1.694, -0.533, 0.0, 0.533, 1.694, 3.179)),
        ),
    },
)


def fmt3(x) -> str:
    s = f"{float(x):.3f}"
    return "0.000" if s == "-0.000" else s


def reproduce_rows(config: PrecisionConfig = DEFAULT_CONFIG) -> list[dict]:
    """One row per reference value: (example, quantity, printed, computed, match)."""
    rows = []

    def add(example, quantity, printed, computed):
        p, c = fmt3(printed), fmt3(computed)
        rows.append({"example": example, "quantity": quantity, "printed": p, "computed": c,
                     "status": "passed" if p == c else "failed"})

    for ex in REFERENCE_EXAMPLES:
        zs = find_real_zeros(family_polynomial(ex["n"], ex["params"], config), config)
        for i, (want, got) in enumerate(zip(ex["p_zeros"], zs.to_floats())):
            add(ex["name"], f"p_n zero {i + 1}", want, got)
        if len(zs) != len(ex["p_zeros"]):
            add(ex["name"], "p_n zero count", len(ex["p_zeros"]), len(zs))
        for prop, A_want, merged_want in ex["shifts"]:
            cert = verify_proposition(prop, ex["n"], ex["params"], config)
            add(ex["name"], f"{prop} A", A_want, cert.A)
            merged = sorted(cert.details["g_zeros"] + [float(cert.A)])
            for i, (want, got) in enumerate(zip(merged_want, merged)):
                add(ex["name"], f"{prop} merged zero {i + 1}", want, got)
            if len(merged) != len(merged_want):
                add(ex["name"], f"{prop} merged count", len(merged_want), len(merged))
            add(ex["name"], f"{prop} interlacing ok", 1, int(cert.ok))
    return rows


# ---------------------------------------------------------------- argument parsing

def _global_parser() -> argparse.ArgumentParser:
    # global flags live on a parent parser so they are accepted after the subcommand
    g = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    g.add_argument("--precision-digits", type=int, dest="working_digits")
    g.add_argument("--residual-tol", type=float)
    g.add_argument("--sep-tol", type=float)
    g.add_argument("--realness-tol", type=float)
    g.add_argument("--config", help="key = value file with PrecisionConfig fields")
    g.add_argument("--output", help="write the result here instead of stdout")
    g.add_argument("--format", choices=("csv", "json"))
    g.add_argument("--no-timestamp", action="store_true", help="omit wall_ms for byte-stable JSON")
    g.add_argument("--jobs", type=int, default=1)
    g.add_argument("--seed", type=int, default=0)
    return g


def _param_flags(p: argparse.ArgumentParser):
    p.add_argument("--n", type=int, required=True)
    # values stay strings until parsed at working precision, so pi/4 carries no decimal drift
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--phi", help="radians; pi/4 style fractions accepted")
    for name in ("a", "b", "p", "q", "r", "s"):
        p.add_argument(f"--{name}")


def build_parser() -> argparse.ArgumentParser:
    common = _global_parser()
    # no prefix matching: --r must not be read as --residual-tol
    parser = argparse.ArgumentParser(prog="mixedrec", description=__doc__.splitlines()[0],
                                     parents=[common], allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", required=True)

    z = sub.add_parser("zeros", parents=[common], allow_abbrev=False, help="real zeros of one polynomial")
    z.add_argument("--family", required=True, type=str.lower, choices=("mp", "pj", "ch"))
    _param_flags(z)

    v = sub.add_parser("verify", parents=[common], allow_abbrev=False, help="check one identity or proposition instance")
    which = v.add_mutually_exclusive_group(required=True)
    which.add_argument("--id", dest="identity")
    which.add_argument("--prop")
    _param_flags(v)

    s = sub.add_parser("sweep", parents=[common], allow_abbrev=False, help="seeded random sweep over a suite")
    s.add_argument("--suite", required=True)
    s.add_argument("--count", type=int, default=10)
    s.add_argument("--n-max", type=int, default=12)
    s.add_argument("--item", action="append", help="restrict to one identity/proposition (repeatable)")

    sub.add_parser("reproduce-paper", parents=[common], allow_abbrev=False, help="recompute the reference CH examples")
    return parser


def _config_from(args) -> PrecisionConfig:
    config = load_config(args.config) if args.config else DEFAULT_CONFIG
    return config.with_overrides(working_digits=args.working_digits, residual_tol=args.residual_tol,
                                 sep_tol=args.sep_tol, realness_tol=args.realness_tol)


def _params_for(family: str, args, config: PrecisionConfig):
    names = {"MP": ("lam", "phi"), "PJ": ("a", "b"), "CH": ("p", "q", "r", "s")}[family]
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--lambda" if n == "lam" else f"--{n}" for n in missing)
        raise InvalidParams(f"{family} needs {flags}")
    values = [getattr(args, n) for n in names]
    params = {"MP": MP, "PJ": PJ, "CH": CH}[family](*values)
    with config.workdps():
        params.validate()
    return params


def _emit(text: str, args):
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_report(report: RunReport, args):
    _emit(report.to_json(timestamps=not args.no_timestamp) + "\n", args)


def _fail(msg: str, code: int) -> int:
    print(f"mixedrec: {msg}", file=sys.stderr)
    return code


# ---------------------------------------------------------------- commands

def cmd_zeros(args, config) -> int:
    family = args.family.upper()
    if args.n < 1:
        raise InvalidParams("degree must be >= 1")
    params = _params_for(family, args, config)
    with Timer() as t:
        zs = find_real_zeros(family_polynomial(args.n, params, config), config)
    if not zs.all_real:
        print(f"mixedrec: {zs.complex_count} non-real zero(s) omitted", file=sys.stderr)
    if (args.format or "csv") == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "zero", "residual"])
        for i, (z, res) in enumerate(zip(zs.zeros, zs.residuals)):
            w.writerow([i, f"{float(z):.17g}", f"{float(res):.17g}"])
        _emit(buf.getvalue(), args)
        return EXIT_OK
    entries = [{"key": f"zero/{i:03d}", "index": i, "zero": float(z), "residual": float(res),
                "status": "passed"} for i, (z, res) in enumerate(zip(zs.zeros, zs.residuals))]
    report = RunReport(_command_echo(args), _config_echo(config, args), entries, t.ms)
    report.config.update({"family": family, "n": args.n, "params": params_to_dict(params),
                          "complex_zero_count": zs.complex_count})
    _emit_report(report, args)
    return EXIT_OK


def cmd_verify(args, config) -> int:
    with Timer() as t:
        if args.identity:
            try:
                identity = IdentityId(args.identity)
            except ValueError:
                raise InvalidParams(f"unknown identity {args.identity!r}; expected one of "
                                    f"{[i.value for i in IdentityId]}") from None
            params = _params_for(identity.family, args, config)
            rep = residual_report(build_identity(identity, args.n, params, config), config=config)
            entry = {"key": identity.value, **rep.to_dict(), "status": "passed" if rep.passed else "failed"}
        else:
            prop = ALIASES.get(args.prop, args.prop)
            if prop not in PROPOSITIONS:
                raise InvalidParams(f"unknown proposition {args.prop!r}; expected one of {sorted(PROPOSITIONS)}")
            params = _params_for(PROPOSITIONS[prop][0], args, config)
            try:
                cert = verify_proposition(prop, args.n, params, config)
                entry = {"key": prop, **cert.to_dict(), "status": "passed" if cert.ok else "failed"}
            except SharedZeroSuspected as exc:
                entry = {"key": prop, "prop": prop, "n": args.n, "params": params_to_dict(params),
                         "status": "skipped", "reason": str(exc)}
    report = RunReport(_command_echo(args), _config_echo(config, args), [entry], t.ms)
    _emit_report(report, args)
    return EXIT_OK if entry["status"] == "passed" else EXIT_FAIL


def cmd_sweep(args, config) -> int:
    if args.suite not in SUITES:
        raise InvalidParams(f"unknown suite {args.suite!r}; expected one of {SUITES}")
    if args.count < 1 or args.n_max < 1 or args.jobs < 1:
        raise InvalidParams("--count, --n-max and --jobs must be >= 1")
    with Timer() as t:
        entries = run_suite(args.suite, args.seed, args.count, args.n_max, config, args.jobs, args.item)
    report = RunReport(_command_echo(args), _config_echo(config, args), entries, t.ms)
    _emit_report(report, args)
    summary = report.summary
    print(f"{args.suite}: {summary}", file=sys.stderr)
    if args.suite == "exploratory-mp-open-question":
        return EXIT_OK
    return EXIT_FAIL if summary["failed"] else EXIT_OK


def cmd_reproduce(args, config) -> int:
    with Timer() as t:
        rows = reproduce_rows(config)
    width = max(len(r["quantity"]) for r in rows)
    lines = [f"{'example':<12} {'quantity':<{width}} {'printed':>9} {'computed':>9}  match"]
    for r in rows:
        mark = "ok" if r["status"] == "passed" else "MISMATCH"
        lines.append(f"{r['example']:<12} {r['quantity']:<{width}} {r['printed']:>9} {r['computed']:>9}  {mark}")
    bad = sum(r["status"] != "passed" for r in rows)
    lines.append(f"{len(rows) - bad}/{len(rows)} values match")
    if args.format == "json" or args.output:
        entries = [{"key": f"{r['example']}/{i:03d}", **r} for i, r in enumerate(rows)]
        _emit_report(RunReport(_command_echo(args), _config_echo(config, args), entries, t.ms), args)
        print("\n".join(lines), file=sys.stderr)
    else:
        print("\n".join(lines))
    return EXIT_FAIL if bad else EXIT_OK


def _command_echo(args) -> str:
    return " ".join(sys.argv[1:]) if args.argv is None else " ".join(args.argv)


def _config_echo(config: PrecisionConfig, args) -> dict:
    out = config.to_dict()
    out.update({"seed": args.seed, "jobs": args.jobs})
    return out


COMMANDS = {"zeros": cmd_zeros, "verify": cmd_verify, "sweep": cmd_sweep, "reproduce-paper": cmd_reproduce}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.argv = None if argv is None else list(argv)
    if args.command in ("verify", "sweep") and args.format == "csv":
        return _fail(f"{args.command} writes JSON only", EXIT_INVALID)
    try:
        config = _config_from(args)
        return COMMANDS[args.command](args, config)
    except DegenerateU as exc:
        return _fail(f"DegenerateU: {exc}", EXIT_DEGENERATE_U)
    except ConvergenceFailure as exc:
        return _fail(f"ConvergenceFailure: {exc}", EXIT_CONVERGENCE)
    except (InvalidParams, SingularParams, ConstraintViolation, ValueError, OSError) as exc:
        return _fail(f"{type(exc).__name__}: {exc}", EXIT_INVALID)
    except MixedRecError as exc:
        return _fail(f"{type(exc).__name__}: {exc}", EXIT_FAIL)


if __name__ == "__main__":
    sys.exit(main())
