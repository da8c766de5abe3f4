"""Command-line interface: ``sltopgen <subcommand> [options]``.

Exit status: 0 when the tuple generates or the check passes, 2 when it is
obstructed or a check fails, 1 on any error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import __version__
from .classdata import (
    ENUMERATION_CAP,
    ClassTuple,
    Outcome,
    class_dimension,
    enumerate_shapes,
    gamma,
    generation_criterion,
    is_quadratic,
    min_generators,
    restrict_tuple,
)
from .errors import SLTopGenError
from .genexp.groups import DEFAULT_CLOSURE_CAP
from .genexp.probability import ExperimentConfig, Mode, estimate_generation_probability
from .genexp.shapes import classify_good_bad, enumerate_prime_order_shapes
from .gflinalg.field import parse_field_order
from .io import dump_tuple, load_tuple
from .obstructions import audit_passes, sl3_base_case_audit
from .stabbounds import alpha_exact, alpha_table

DEFAULT_SEED = 20240601
SEED_ENV = "SLTOPGEN_SEED"

EXIT_OK, EXIT_ERROR, EXIT_OBSTRUCTED = 0, 1, 2

_REASONS = {
    Outcome.GENERATING: "",
    Outcome.EIGENSPACE: "condition (i): largest eigenspaces too large",
    Outcome.QUADRATIC_PAIR: "condition (ii): two quadratic classes",
    Outcome.SL2_INVOLUTION: "two involutions modulo the centre in SL_2",
}


def effective_seed(arg: int | None) -> int:
    if arg is not None:
        return arg
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise SLTopGenError(f"{SEED_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_SEED


# -- rendering -----------------------------------------------------------


def _render(rows: list[dict], fmt: str, seed: int, extra: dict | None = None) -> str:
    """Rows as CSV (seed as the last column), JSON, or an aligned plain table."""
    if fmt == "json":
        doc = dict(extra or {})
        doc["rows"] = rows
        doc["seed"] = seed
        return json.dumps(doc, indent=2, default=str) + "\n"
    if fmt == "csv":
        out = io.StringIO()
        fields = list(rows[0]) + ["seed"] if rows else ["seed"]
        w = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({**row, "seed": seed})
        return out.getvalue()
    lines = []
    if rows:
        cols = list(rows[0])
        cells = [[str(r[c]) for c in cols] for r in rows]
        widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
        lines.append("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip())
        lines.extend("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells)
    for k, v in (extra or {}).items():
        lines.append(f"{k}: {v}")
    lines.append(f"seed: {seed}")
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# -- subcommands ---------------------------------------------------------


def _load(args) -> ClassTuple:
    if not args.spec:
        raise SLTopGenError("--spec is required")
    return load_tuple(args.spec)


def cmd_check(args, seed):
    classes = _load(args)
    verdict = generation_criterion(classes)
    reason = _REASONS[verdict.outcome]
    summary = verdict.outcome.value
    if reason:
        summary += f" ({reason})"
    if verdict.witness is not None:
        summary += f", witness {verdict.witness}"
    row = {
        "outcome": verdict.outcome.value,
        "witness": "" if verdict.witness is None else verdict.witness,
        "n": classes.n,
        "e": classes.e,
        "sum_gamma": sum(gamma(c) for c in classes),
        "bound": classes.n * (classes.e - 1),
    }
    if args.format == "table":
        text = f"{summary}\nseed: {seed}\n"
    else:
        text = _render([row], args.format, seed)
    _emit(text, args.out)
    return EXIT_OK if verdict.generating else EXIT_OBSTRUCTED


def cmd_min_gens(args, seed):
    rows = []
    for spec in enumerate_shapes(args.n, cap=args.cap):
        rows.append(
            {
                "shape": str(spec),
                "gamma": gamma(spec),
                "quadratic": is_quadratic(spec),
                "class_dimension": class_dimension(spec),
                "min_generators": min_generators(spec),
            }
        )
    _emit(_render(rows, args.format, seed), args.out)
    return EXIT_OK


def cmd_restrict(args, seed):
    classes = _load(args)
    try:
        restricted = restrict_tuple(classes)
    except SLTopGenError as exc:
        raise SLTopGenError(f"restriction step: {exc}") from None
    _emit(dump_tuple(restricted, seed=seed), args.out)
    return EXIT_OK


def cmd_alpha(args, seed):
    table = alpha_exact(args.n, cap=args.cap) if args.exact else alpha_table(args.n)
    if args.format == "csv":
        lines = table.to_csv().splitlines()
        text = "\n".join([lines[0] + ",seed"] + [line + f",{seed}" for line in lines[1:]]) + "\n"
    else:
        rows = list(csv.DictReader(io.StringIO(table.to_csv())))
        text = _render(rows, args.format, seed, {"threshold_check": table.check()})
    _emit(text, args.out)
    return EXIT_OK if table.check() else EXIT_OBSTRUCTED


def cmd_audit(args, seed):
    classes = _load(args)
    try:
        records = sl3_base_case_audit(classes)
    except SLTopGenError as exc:
        raise SLTopGenError(f"SL_3 base-case audit: {exc}") from None
    passed = audit_passes(records)
    _emit(_render([r.to_dict() for r in records], args.format, seed, {"all_pass": passed}), args.out)
    return EXIT_OK if passed else EXIT_OBSTRUCTED


def _field_q(args) -> int:
    if not args.q:
        raise SLTopGenError("--q is required")
    return parse_field_order(args.q).q


def cmd_shapes(args, seed):
    q = _field_q(args)
    rows = []
    for s in enumerate_prime_order_shapes(args.n, q, args.r):
        rows.append(
            {
                "shape": s.label(),
                "a": s.a,
                "orbit_degree": s.orbit_degree,
                "gamma": s.gamma,
                "dimension": s.dimension,
                "det_one": s.det_one,
            }
        )
    _emit(_render(rows, args.format, seed), args.out)
    return EXIT_OK


def cmd_classify(args, seed):
    q = _field_q(args)
    report = classify_good_bad(args.n, q, args.r, args.s)
    if args.format == "json":
        doc = report.to_dict()
        doc["seed"] = seed
        text = json.dumps(doc, indent=2) + "\n"
    else:
        rows = [
            {"C": c.label(), "D": d.label(), "status": status, "dim_omega": c.dimension + d.dimension}
            for status, pairs in (("good", report.good), ("bad", report.bad))
            for c, d in pairs
        ]
        extra = {"good_exists": report.good_exists, "max_bad_dimension": report.max_bad_dimension}
        text = _render(rows, args.format, seed, extra if args.format == "table" else None)
    _emit(text, args.out)
    return EXIT_OK if report.good_exists else EXIT_OBSTRUCTED


def cmd_simulate(args, seed):
    F = parse_field_order(args.q) if args.q else None
    classes = load_tuple(args.spec) if args.spec else None
    if classes is not None and classes.e != 2:
        raise SLTopGenError("simulate needs exactly two classes")
    if F is None:
        raise SLTopGenError("--q is required")
    n = classes.n if classes is not None else args.n
    if n is None:
        raise SLTopGenError("--n is required")
    config = ExperimentConfig(
        n=n,
        p=F.p,
        k=F.k,
        classes=None if classes is None else tuple(classes),
        r=args.r,
        s=args.s,
        sample_count=args.samples,
        master_seed=seed,
        closure_cap=args.cap,
        mode=Mode(args.mode),
    )
    report = estimate_generation_probability(config)
    if args.format == "csv":
        text = report.to_csv()
    elif args.format == "json":
        text = report.to_json()
    else:
        row = report.csv_row()
        text = "\n".join(f"{k}: {v}" for k, v in row.items()) + "\n"
        if report.exact is not None:
            text += f"exact: {report.exact}\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args, seed):
    from .oracles import run_all

    results = run_all()
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name}" + ("" if r.passed else f"  ({r.detail})") for r in results]
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed} passed, {failed} failed")
    lines.append(f"seed: {seed}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if not failed else EXIT_OBSTRUCTED


# -- parser --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sltopgen", description="Topological generation of SL_n by conjugacy classes.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, fmt="table"):
        p = sub.add_parser(name, help=help)
        p.add_argument("--format", choices=("csv", "json", "table"), default=fmt)
        p.add_argument("--out", help="write the artifact here instead of stdout")
        p.add_argument("--seed", type=int, help=f"master seed (default ${SEED_ENV} or {DEFAULT_SEED})")
        p.set_defaults(func=func)
        return p

    p = add("check", cmd_check, "decide generation for a class-tuple file")
    p.add_argument("--spec", required=True)

    p = add("min-gens", cmd_min_gens, "least number of class elements generating, per shape")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cap", type=int, default=ENUMERATION_CAP, help="largest n to enumerate")

    p = add("restrict", cmd_restrict, "restrict a generating tuple from SL_n to SL_{n-1}")
    p.add_argument("--spec", required=True)

    p = add("alpha", cmd_alpha, "class-dimension bounds against 9/4 n^2", fmt="csv")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--exact", action="store_true", help="also enumerate shapes for exact values")
    p.add_argument("--cap", type=int, default=ENUMERATION_CAP)

    p = add("audit-sl3", cmd_audit, "dimension count against the non-parabolic maximal subgroups of SL_3")
    p.add_argument("--spec", required=True)

    for name, func, help in (
        ("shapes", cmd_shapes, "order-r semisimple shapes over GF(q)"),
        ("classify", cmd_classify, "good and bad class pairs of orders r and s"),
    ):
        p = add(name, func, help)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--q", required=True, help="field order, e.g. 4 or 2^2")
        p.add_argument("--r", type=int, required=True)
        if name == "classify":
            p.add_argument("--s", type=int, required=True)

    p = add("simulate", cmd_simulate, "Monte Carlo generation probability", fmt="csv")
    p.add_argument("--n", type=int)
    p.add_argument("--q", required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--spec", help="two-class tuple file (instead of --r/--s)")
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--cap", type=int, default=DEFAULT_CLOSURE_CAP, help="closure cap")
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.MONTECARLO.value)

    add("verify-oracles", cmd_verify, "run the built-in oracle checks")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        seed = effective_seed(args.seed)
        return args.func(args, seed)
    except (SLTopGenError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
