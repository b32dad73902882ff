"""Command-line surface for the toolkit.

Subcommands: effect, simulate, pi, meta, forest, funnel. Every run echoes
its effective configuration so any published number can be reproduced from
the output alone; in text mode the echo is commented header lines, in json
it is a "config" key, and in csv/svg it goes to stderr.

Exit codes: 0 success, 2 input/parse error, 3 domain/precondition error,
4 numeric non-convergence.
"""

from __future__ import annotations

import argparse
import csv as _csv
import io as _stdio
import json
import sys
from pathlib import Path
from typing import Mapping, Sequence

from .effect_size import (
    EffectSize,
    category_label,
    classify,
    cohens_d,
    confidence_interval,
    standard_error_d,
)
from .errors import ParseError, ReplikitError, UnsupportedFormatError
from .io import (
    OutputFormat,
    batch_to_csv,
    boxplot_dict,
    config_dict,
    fmt4,
    meta_result_dict,
    parse_study_csv,
    render_table,
)
from .meta import fixed_effect_pool, forest_model, funnel_data
from .prediction import ReplicationDesign, confirms, prediction_interval
from .simulation import (
    SimulationConfig,
    boxplot_summary,
    pair_replications,
    pairing_stream,
    run_simulation,
    tabulate_categories,
    tabulate_sign_agreement,
)
from .stats_core import ContaminationSpec, SampleSummary
from .svg import render_forest_svg, render_funnel_svg

NAMED_EFFECTS = {"none": 0.0, "small": 0.2}

PROG = "replikit"


def _add_common(parser: argparse.ArgumentParser, default_format: str = "text") -> None:
    parser.add_argument("--seed", type=int, default=42, help="master seed (default 42)")
    parser.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=default_format,
        help=f"output format (default {default_format})",
    )
    parser.add_argument(
        "--level", type=float, default=0.95, help="confidence/prediction level (default 0.95)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Effect-size, replication-simulation, and meta-analysis toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("effect", help="two-arm summaries -> d, se, CI, category")
    _add_common(p)
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--mean1", type=float, required=True)
    p.add_argument("--sd1", type=float, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--mean2", type=float, required=True)
    p.add_argument("--sd2", type=float, required=True)
    p.add_argument("--hedges", action="store_true", help="apply the small-sample correction")
    p.set_defaults(handler=_cmd_effect)

    p = sub.add_parser(
        "simulate", help="Monte Carlo scenario -> category/sign tables + boxplot data"
    )
    _add_common(p)
    p.add_argument("--runs", type=int, default=10000, help="number of experiments (even)")
    p.add_argument("--n-per-arm", type=int, default=30)
    p.add_argument("--effect", default="none", help="true effect: none, small, or a number")
    p.add_argument("--dist", choices=["normal", "mixed"], default="normal")
    p.add_argument("--epsilon", type=float, default=0.1, help="mixed: contamination probability")
    p.add_argument("--scale-mult", type=float, default=10.0, help="mixed: outlier sd multiplier")
    p.add_argument("--mu", type=float, default=100.0)
    p.add_argument("--sigma", type=float, default=20.0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--dump-batch", metavar="PATH", help="also write per-experiment CSV here")
    p.set_defaults(handler=_cmd_simulate)

    p = sub.add_parser("pi", help="original study + replication sizes -> prediction interval")
    _add_common(p)
    p.add_argument("--d", type=float, required=True, help="original effect size")
    p.add_argument("--n1", type=int, required=True, help="original arm 1 size")
    p.add_argument("--n2", type=int, required=True, help="original arm 2 size")
    p.add_argument("--se", type=float, help="original se (default: computed from d, n1, n2)")
    p.add_argument("--rep-n1", type=int, required=True, help="replication arm 1 size")
    p.add_argument("--rep-n2", type=int, required=True, help="replication arm 2 size")
    p.add_argument("--check", type=float, metavar="D_REP", help="report whether this d confirms")
    p.set_defaults(handler=_cmd_pi)

    p = sub.add_parser("meta", help="study CSV -> pooled effect + heterogeneity")
    _add_common(p)
    p.add_argument("path", help="study CSV file")
    p.set_defaults(handler=_cmd_meta)

    p = sub.add_parser("forest", help="study CSV -> forest plot SVG")
    _add_common(p, default_format="svg")
    p.add_argument("path", help="study CSV file")
    p.add_argument("--output", metavar="PATH", help="write SVG here instead of stdout")
    p.set_defaults(handler=_cmd_forest)

    p = sub.add_parser("funnel", help="study CSV -> funnel plot SVG")
    _add_common(p, default_format="svg")
    p.add_argument("path", help="study CSV file")
    p.add_argument("--output", metavar="PATH", help="write SVG here instead of stdout")
    p.set_defaults(handler=_cmd_funnel)

    return parser


def _config_lines(config: Mapping[str, object]) -> str:
    return "".join(f"# {key} {value}\n" for key, value in config.items())


def _kv_text(pairs: Sequence[tuple[str, str]]) -> str:
    width = max(len(k) for k, _ in pairs)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in pairs) + "\n"


def _csv_block(header: Sequence[str], row: Sequence[object]) -> str:
    buf = _stdio.StringIO()
    writer = _csv.writer(buf)
    writer.writerow(header)
    writer.writerow(row)
    return buf.getvalue()


def _emit(
    fmt: OutputFormat,
    config: Mapping[str, object],
    text: str,
    csv_text: str,
    json_payload: Mapping[str, object],
) -> int:
    """Route one command's output through the format-specific config echo."""
    if fmt is OutputFormat.TEXT:
        sys.stdout.write(_config_lines(config) + text)
    elif fmt is OutputFormat.CSV:
        sys.stderr.write(_config_lines(config))
        sys.stdout.write(csv_text)
    elif fmt is OutputFormat.JSON:
        sys.stdout.write(json.dumps({"config": dict(config), **json_payload}, indent=2) + "\n")
    else:
        raise UnsupportedFormatError("svg output is only available for plot commands")
    return 0


def _cmd_effect(args: argparse.Namespace) -> int:
    fmt = OutputFormat(args.format)
    arm1 = SampleSummary(n=args.n1, mean=args.mean1, sd=args.sd1)
    arm2 = SampleSummary(n=args.n2, mean=args.mean2, sd=args.sd2)
    effect = cohens_d(arm1, arm2, hedges=args.hedges)
    ci = confidence_interval(effect, level=args.level)
    cat = classify(effect.d)
    config = {
        "command": "effect", "seed": args.seed, "level": args.level,
        "n1": args.n1, "mean1": args.mean1, "sd1": args.sd1,
        "n2": args.n2, "mean2": args.mean2, "sd2": args.sd2,
        "hedges": args.hedges,
    }
    values = {
        "d": effect.d, "se": effect.se,
        "ci_lower": ci.lower, "ci_upper": ci.upper,
    }
    text = _kv_text(
        [(k, fmt4(v)) for k, v in values.items()] + [("category", category_label(cat))]
    )
    csv_text = _csv_block(
        list(values) + ["category"], [repr(v) for v in values.values()] + [cat.value]
    )
    return _emit(fmt, config, text, csv_text, {**values, "category": cat.value})


def _true_effect(text: str) -> float:
    key = text.strip().lower()
    if key in NAMED_EFFECTS:
        return NAMED_EFFECTS[key]
    try:
        return float(text)
    except ValueError:
        raise ParseError(f"--effect expects 'none', 'small', or a number, got {text!r}") from None


def _cmd_simulate(args: argparse.Namespace) -> int:
    fmt = OutputFormat(args.format)
    spec = None
    if args.dist == "mixed":
        spec = ContaminationSpec(epsilon=args.epsilon, scale_mult=args.scale_mult)
    config = SimulationConfig(
        runs=args.runs,
        n_per_arm=args.n_per_arm,
        mu=args.mu,
        sigma=args.sigma,
        true_effect_d=_true_effect(args.effect),
        contamination=spec,
        master_seed=args.seed,
    )
    batch = run_simulation(config, workers=args.workers)
    categories = tabulate_categories(batch)
    signs = tabulate_sign_agreement(pair_replications(batch, pairing_stream(config)))
    label = f"{args.effect}-{args.dist}"
    box = boxplot_summary({label: batch})[label]
    if args.dump_batch:
        Path(args.dump_batch).write_text(batch_to_csv(batch), encoding="utf-8")

    echo = dict(config_dict(batch))
    echo["workers"] = args.workers
    box_row = boxplot_dict(box)
    text = (
        render_table(categories, OutputFormat.TEXT)
        + "\n"
        + render_table(signs, OutputFormat.TEXT)
        + "\n"
        + _kv_text(
            [("scenario", label)]
            + [(k, fmt4(v) if isinstance(v, float) else str(v)) for k, v in box_row.items()]
        )
    )
    csv_text = (
        render_table(categories, OutputFormat.CSV)
        + "\n"
        + render_table(signs, OutputFormat.CSV)
        + "\n"
        + _csv_block(
            ["scenario"] + list(box_row),
            [label] + [repr(v) if isinstance(v, float) else v for v in box_row.values()],
        )
    )
    payload = {
        "categories": {cat.value: p for cat, p in categories.items()},
        "sign_agreement": {"mm": signs.mm, "mp": signs.mp, "pm": signs.pm, "pp": signs.pp},
        "boxplot": {label: box_row},
    }
    return _emit(fmt, echo, text, csv_text, payload)


def _cmd_pi(args: argparse.Namespace) -> int:
    fmt = OutputFormat(args.format)
    se = args.se if args.se is not None else standard_error_d(args.d, args.n1, args.n2)
    original = EffectSize(d=args.d, se=se, n1=args.n1, n2=args.n2)
    design = ReplicationDesign(
        original=original, n1_rep=args.rep_n1, n2_rep=args.rep_n2, level=args.level
    )
    interval = prediction_interval(design)
    config = {
        "command": "pi", "seed": args.seed, "level": args.level,
        "d": args.d, "se": se, "n1": args.n1, "n2": args.n2,
        "rep_n1": args.rep_n1, "rep_n2": args.rep_n2,
    }
    values: dict[str, object] = {"pi_lower": interval.lower, "pi_upper": interval.upper}
    pairs = [(k, fmt4(v)) for k, v in values.items()]
    header, row = list(values), [repr(v) for v in values.values()]
    payload = dict(values)
    if args.check is not None:
        confirmed = confirms(interval, args.check)
        values["d_rep"] = args.check
        pairs.append(("d_rep", fmt4(args.check)))
        pairs.append(("confirms", "Y" if confirmed else "N"))
        header += ["d_rep", "confirms"]
        row += [repr(args.check), "Y" if confirmed else "N"]
        payload["d_rep"] = args.check
        payload["confirms"] = confirmed
    return _emit(fmt, config, _kv_text(pairs), _csv_block(header, row), payload)


def _read_studies(path: str):
    try:
        content = Path(path).read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return parse_study_csv(content)


def _cmd_meta(args: argparse.Namespace) -> int:
    fmt = OutputFormat(args.format)
    studies = _read_studies(args.path)
    result = fixed_effect_pool(studies, level=args.level)
    config = {
        "command": "meta", "seed": args.seed, "level": args.level,
        "path": args.path, "studies": len(studies),
    }
    if fmt is OutputFormat.SVG:
        raise UnsupportedFormatError("meta renders tables; use forest or funnel for svg")
    return _emit(
        fmt,
        config,
        render_table(result, OutputFormat.TEXT),
        render_table(result, OutputFormat.CSV),
        meta_result_dict(result),
    )


def _render_plot(args: argparse.Namespace, svg_text: str, config: Mapping[str, object]) -> int:
    fmt = OutputFormat(args.format)
    if fmt is not OutputFormat.SVG:
        raise UnsupportedFormatError(f"{args.command} renders svg only; got --format {fmt.value}")
    sys.stderr.write(_config_lines(config))
    if args.output:
        Path(args.output).write_text(svg_text, encoding="utf-8")
    else:
        sys.stdout.write(svg_text)
    return 0


def _cmd_forest(args: argparse.Namespace) -> int:
    studies = _read_studies(args.path)
    pooled = fixed_effect_pool(studies, level=args.level)
    spec = forest_model(studies, pooled)
    config = {
        "command": "forest", "seed": args.seed, "level": args.level,
        "path": args.path, "studies": len(studies),
    }
    return _render_plot(args, render_forest_svg(spec), config)


def _cmd_funnel(args: argparse.Namespace) -> int:
    studies = _read_studies(args.path)
    data = funnel_data(studies)
    config = {
        "command": "funnel", "seed": args.seed, "level": args.level,
        "path": args.path, "studies": len(studies),
    }
    return _render_plot(args, render_funnel_svg(data), config)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except ReplikitError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
