"""Command-line front end: argument parsing, command dispatch, and
deterministic report emission.

Every command prints one report to standard output, newline-terminated,
with stable key order and rationals in "a/b" form, so identical inputs
produce identical bytes.  Exit codes: 0 success, 1 computation failure
on well-formed input (precision exhaustion and kin), 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .chern_index import index_integrality_scan, kawasaki_index
from .curvecalc import (
    CurveConfig,
    adjunction_report,
    config_truncation,
    embeddedness_verdict,
    intersection_report,
    load_config,
    with_precision,
)
from .errors import InvalidInput, PrecisionExhausted
from .exact import format_rational, parse_rational
from .germ import DEFAULT_TRUNCATION
from .lens import LensSpace, allowed_q_set, cobordism_congruence, lens_equivalent
from .surface import orbifold_genus
from .wps import (
    build_model,
    c0_config,
    c0_index,
    c0prime_config,
    dossier,
    genus_bound_profile,
    seifert_euler,
    uniqueness_inequality,
)

SCHEMA_VERSION = 1

MIN_PRECISION = 8
MAX_PRECISION = 256


@dataclass(frozen=True)
class RunConfig:
    """Parsed invocation: the command path, input files, and the three
    global knobs."""

    command: tuple[str, ...]
    paths: tuple[str, ...]
    output_format: str
    precision: int | None
    seed: int | None


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _scalar(value) -> str:
    if value is True:
        return "true"
    if value is False:
        return "false"
    if value is None:
        return "null"
    if isinstance(value, (int, str)):
        return str(value)
    raise InvalidInput(f"non-scalar report value {value!r}")


def _flatten(prefix: str, value, out: list):
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            out.append((prefix, "[" + ", ".join(_scalar(v) for v in value) + "]"))
        else:
            for i, v in enumerate(value):
                _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append((prefix, _scalar(value)))


def _render_rows(rows: list) -> str:
    headers = list(rows[0].keys())
    cells = [[_scalar(r[h]) for h in headers] for r in rows]
    widths = [
        max(len(h), *(len(row[i]) for row in cells)) for i, h in enumerate(headers)
    ]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    for row in cells:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def emit_report(result: dict, output_format: str = "json") -> str:
    """Serialize one report deterministically.  JSON preserves insertion
    order; table mode prints aligned "path  value" lines, with a
    top-level "rows" list of records rendered as a column table."""
    if output_format == "json":
        return json.dumps(result, indent=2) + "\n"
    scalars = {k: v for k, v in result.items() if k != "rows"}
    flat: list[tuple[str, str]] = []
    _flatten("", scalars, flat)
    text = ""
    if flat:
        width = max(len(k) for k, _ in flat)
        text = "".join(f"{k.ljust(width)}  {v}\n" for k, v in flat)
    rows = result.get("rows")
    if rows:
        if text:
            text += "\n"
        text += _render_rows(rows)
    return text


def _with_retries(compute, start: int | None):
    """Run compute(trunc) with doubling retries on PrecisionExhausted.
    start None means: try the input's own truncation first."""
    if start is None:
        try:
            return compute(None)
        except PrecisionExhausted:
            start = DEFAULT_TRUNCATION
    trunc = start
    while True:
        try:
            return compute(trunc)
        except PrecisionExhausted:
            if trunc >= MAX_PRECISION:
                raise
            trunc = min(2 * trunc, MAX_PRECISION)


def _cmd_lens_classify(args) -> dict:
    first = LensSpace(args.p, args.q)
    second = LensSpace(args.p, args.qprime)
    record = cobordism_congruence(args.p, args.q, args.qprime)
    return {
        "schema": SCHEMA_VERSION,
        "p": args.p,
        "q": args.q,
        "q_prime": args.qprime,
        "equivalent_unoriented": lens_equivalent(first, second),
        "equivalent_oriented": lens_equivalent(first, second, oriented=True),
        "congruence": record.to_json(),
    }


def _cmd_lens_allowed(args) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "p": args.p,
        "q": args.q,
        "allowed": allowed_q_set(args.p, args.q),
    }


def _prepare_config(path: str, trunc: int | None) -> CurveConfig:
    config = load_config(path)
    if trunc is not None:
        config = with_precision(config, trunc)
    return config


def _cmd_adjunction(args) -> dict:
    def compute(trunc):
        config = _prepare_config(args.path, trunc)
        report = adjunction_report(config)
        out = {
            "schema": SCHEMA_VERSION,
            "lhs": format_rational(report.lhs),
            "rhs": format_rational(report.rhs),
            "holds": report.holds,
            "contributions": [c.to_json() for c in report.contributions],
        }
        out["verdict"] = (
            embeddedness_verdict(config).to_json() if report.holds else None
        )
        return out

    return _with_retries(compute, args.precision)


def _cmd_intersect(args) -> dict:
    def compute(trunc):
        first = _prepare_config(args.path_a, trunc)
        second = _prepare_config(args.path_b, trunc)
        report = intersection_report(first, second)
        return {
            "schema": SCHEMA_VERSION,
            "algebraic": format_rational(report.algebraic),
            "local_sum": format_rational(report.local_sum),
            "holds": report.holds,
            "contributions": [c.to_json() for c in report.contributions],
        }

    return _with_retries(compute, args.precision)


def _cmd_index_eval(args) -> dict:
    data = _load_json(args.path)
    if not isinstance(data, dict):
        raise InvalidInput("index input must be an object")
    try:
        c1_pair = parse_rational(data["c1_pair"])
        genus = data["genus"]
        points = [(int(m), tuple(int(w) for w in ws)) for m, ws in data["points"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"bad index input: {exc}") from exc
    report = kawasaki_index(c1_pair, genus, points)
    return {
        "schema": SCHEMA_VERSION,
        "d": format_rational(report.d),
        "index": format_rational(report.index),
        "integral": report.integral,
    }


def _cmd_index_scan(args) -> dict:
    rows = index_integrality_scan(args.p, args.q)
    return {
        "schema": SCHEMA_VERSION,
        "p": args.p,
        "q": args.q,
        "rows": [r.to_json() for r in rows],
    }


def _cmd_chains_betti(args) -> dict:
    from .chains import boundary_squared_is_zero, homology_betti, load_complex

    complex_ = load_complex(args.path)
    squared_zero = boundary_squared_is_zero(complex_)
    return {
        "schema": SCHEMA_VERSION,
        "boundary_squared_zero": squared_zero,
        "betti": homology_betti(complex_),
    }


def _cmd_chains_validate(args) -> dict:
    from .chains import load_group_complex, validate_group_complex

    group_complex = load_group_complex(args.path)
    return {
        "schema": SCHEMA_VERSION,
        "valid": validate_group_complex(group_complex),
    }


def _cmd_wps_report(args) -> dict:
    return dossier(build_model(args.p, args.q, args.qprime))


def _sweep_row(p: int, q: int) -> dict:
    model = build_model(p, q, q)
    config = c0_config(model)
    report = adjunction_report(config)
    verdict = embeddedness_verdict(config) if report.holds else None
    index = c0_index(model)
    profile = genus_bound_profile(
        model, sorted({Fraction(1, p), Fraction(1, 2), Fraction(1)})
    )
    holds = (
        report.holds
        and verdict is not None
        and verdict.embedded
        and index.d == 3
        and profile.strictly_decreasing
        and profile.peak_identity
        and uniqueness_inequality(model)
    )
    for qprime in allowed_q_set(p, q):
        sibling = build_model(p, q, qprime)
        partner = c0prime_config(sibling)
        partner_report = adjunction_report(partner)
        meeting = intersection_report(c0_config(sibling), partner)
        holds = (
            holds
            and partner_report.holds
            and meeting.holds
            and meeting.algebraic == Fraction(1, p + q)
            and embeddedness_verdict(partner).embedded
        )
    return {
        "p": p,
        "q": q,
        "C0_C0": format_rational(Fraction(p, p + q)),
        "c1_KX_C0": format_rational(-model.c1_value),
        "genus_C0": format_rational(orbifold_genus(config.domain)),
        "seifert_euler": format_rational(seifert_euler(model)),
        "index_d": format_rational(index.d),
        "holds": holds,
    }


def _cmd_sweep(args) -> dict:
    import math

    if args.p_max < 2:
        raise InvalidInput(f"--p-max must be >= 2, got {args.p_max}")
    rows = [
        _sweep_row(p, q)
        for p in range(2, args.p_max + 1)
        for q in range(1, p)
        if math.gcd(p, q) == 1
    ]
    return {"schema": SCHEMA_VERSION, "p_max": args.p_max, "rows": rows}


def _add_common_flags(parser: argparse.ArgumentParser, leaf: bool) -> None:
    # leaf parsers suppress defaults so a flag placed after the
    # subcommand overrides one placed before it, not the other way round
    parser.add_argument(
        "--format",
        dest="output_format",
        choices=("json", "table"),
        default=argparse.SUPPRESS if leaf else "json",
        help="report format (default: json)",
    )
    parser.add_argument(
        "--precision",
        type=int,
        default=argparse.SUPPRESS if leaf else None,
        metavar="N",
        help=f"series truncation override, {MIN_PRECISION}..{MAX_PRECISION}; "
        "doubled automatically while a result is unresolved",
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=argparse.SUPPRESS if leaf else None,
        metavar="S",
        help="seed for randomized subcommands (reserved; current commands "
        "are deterministic)",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbicurves",
        description="Exact invariants of orbifold curve configurations.",
    )
    _add_common_flags(parser, leaf=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_common_flags(common, leaf=True)
    sub = parser.add_subparsers(dest="command", required=True)

    lens = sub.add_parser("lens", help="lens space classification and congruence")
    lens_sub = lens.add_subparsers(dest="verb", required=True)
    classify = lens_sub.add_parser(
        "classify",
        parents=[common],
        help="equivalence and congruence record for (p, q, q')",
    )
    classify.add_argument("p", type=int)
    classify.add_argument("q", type=int)
    classify.add_argument("qprime", type=int)
    classify.set_defaults(handler=_cmd_lens_classify)
    allowed = lens_sub.add_parser(
        "allowed", parents=[common], help="all q' passing the congruence"
    )
    allowed.add_argument("p", type=int)
    allowed.add_argument("q", type=int)
    allowed.set_defaults(handler=_cmd_lens_allowed)

    adj = sub.add_parser(
        "adjunction", parents=[common], help="adjunction report for a configuration file"
    )
    adj.add_argument("path")
    adj.set_defaults(handler=_cmd_adjunction)

    inter = sub.add_parser(
        "intersect", parents=[common], help="intersection report for two configuration files"
    )
    inter.add_argument("path_a")
    inter.add_argument("path_b")
    inter.set_defaults(handler=_cmd_intersect)

    index = sub.add_parser("index", help="deformation index counts")
    index_sub = index.add_subparsers(dest="verb", required=True)
    index_eval = index_sub.add_parser(
        "eval", parents=[common], help="index for point data in a file"
    )
    index_eval.add_argument("path")
    index_eval.set_defaults(handler=_cmd_index_eval)
    index_scan = index_sub.add_parser(
        "scan", parents=[common], help="integrality scan over q'"
    )
    index_scan.add_argument("p", type=int)
    index_scan.add_argument("q", type=int)
    index_scan.set_defaults(handler=_cmd_index_scan)

    chains = sub.add_parser("chains", help="weighted simplicial chains")
    chains_sub = chains.add_subparsers(dest="verb", required=True)
    betti = chains_sub.add_parser(
        "betti", parents=[common], help="rational Betti numbers of a complex file"
    )
    betti.add_argument("path")
    betti.set_defaults(handler=_cmd_chains_betti)
    validate = chains_sub.add_parser(
        "validate", parents=[common], help="check full complex-of-groups data"
    )
    validate.add_argument("path")
    validate.set_defaults(handler=_cmd_chains_validate)

    wps = sub.add_parser("wps", help="weighted projective cap model")
    wps_sub = wps.add_subparsers(dest="verb", required=True)
    report = wps_sub.add_parser(
        "report", parents=[common], help="full dossier for (p, q, q')"
    )
    report.add_argument("p", type=int)
    report.add_argument("q", type=int)
    report.add_argument("qprime", type=int)
    report.set_defaults(handler=_cmd_wps_report)

    sweep = sub.add_parser(
        "sweep", parents=[common], help="verify the cap invariants over all (p, q)"
    )
    sweep.add_argument("--p-max", type=int, required=True, metavar="N")
    sweep.set_defaults(handler=_cmd_sweep)

    return parser


def run_config(args) -> RunConfig:
    paths = tuple(
        getattr(args, name)
        for name in ("path", "path_a", "path_b")
        if getattr(args, name, None) is not None
    )
    command = tuple(
        part
        for part in (args.command, getattr(args, "verb", None))
        if part is not None
    )
    return RunConfig(
        command=command,
        paths=paths,
        output_format=args.output_format,
        precision=args.precision,
        seed=args.seed,
    )


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    config = run_config(args)
    if config.precision is not None and not (
        MIN_PRECISION <= config.precision <= MAX_PRECISION
    ):
        print(
            f"error: --precision must be in {MIN_PRECISION}..{MAX_PRECISION}, "
            f"got {config.precision}",
            file=sys.stderr,
        )
        return 2
    try:
        payload = args.handler(args)
    except ArithmeticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, LookupError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(emit_report(payload, config.output_format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
