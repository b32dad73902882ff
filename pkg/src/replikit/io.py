"""Study-file parsing, deterministic table rendering, and batch export.

All renders are pure functions of their inputs: no timestamps, no locale
formatting, decimal point always ``.``. Text mode prints 4 significant
digits; csv and json carry full precision.
"""

from __future__ import annotations

import csv
import io as _stdio
import json
from enum import Enum
from typing import Mapping, Sequence

from .effect_size import EffectCategory, category_label
from .errors import ParseError, UnsupportedFormatError
from .meta import MetaResult, StudySummary
from .simulation import BoxplotStats, SignAgreementTable, SimulationBatch
from .stats_core import SampleSummary


class OutputFormat(Enum):
    TEXT = "text"
    CSV = "csv"
    JSON = "json"
    SVG = "svg"


STUDY_COLUMNS = ("study_id", "label", "n1", "n2", "mean1", "mean2", "sd1", "sd2", "d", "se")

_ARM_COLUMNS = ("n1", "n2", "mean1", "mean2", "sd1", "sd2")
_MEASURE_COLUMNS = ("mean1", "mean2", "sd1", "sd2")
_DIRECT_COLUMNS = ("d", "se")


def fmt4(x: float) -> str:
    """4-significant-digit text rendering."""
    return f"{x:.4g}"


def _parse_number(raw: str, row_num: int, column: str, as_int: bool = False) -> float | int | None:
    raw = raw.strip()
    if raw == "":
        return None
    try:
        value = float(raw)
        if as_int:
            if value != int(value):
                raise ValueError
            return int(value)
        return value
    except ValueError:
        kind = "an integer" if as_int else "a number"
        raise ParseError(f"row {row_num}: column {column!r} must be {kind}, got {raw!r}") from None


def parse_study_csv(content: str | bytes) -> list[StudySummary]:
    """Parse the study CSV schema into study summaries.

    The input form of each row (raw arm summaries vs precomputed d/se) is
    auto-detected from the populated columns; row numbers are 1-based over
    data rows and reported in every error.
    """
    if isinstance(content, bytes):
        try:
            content = content.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"study file is not valid UTF-8: {exc}") from None
    reader = csv.reader(_stdio.StringIO(content))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("study file is empty (no header row)") from None
    header = [h.strip() for h in header]
    if header != list(STUDY_COLUMNS):
        missing = [c for c in STUDY_COLUMNS if c not in header]
        extra = [c for c in header if c not in STUDY_COLUMNS]
        detail = []
        if missing:
            detail.append(f"missing columns {missing}")
        if extra:
            detail.append(f"unknown columns {extra}")
        raise ParseError(
            "bad header: expected " + ",".join(STUDY_COLUMNS)
            + ("; " + "; ".join(detail) if detail else "; wrong column order")
        )

    studies: list[StudySummary] = []
    for row_num, row in enumerate(reader, start=1):
        if not row or all(cell.strip() == "" for cell in row):
            continue
        if len(row) != len(STUDY_COLUMNS):
            raise ParseError(f"row {row_num}: expected {len(STUDY_COLUMNS)} fields, got {len(row)}")
        rec = dict(zip(STUDY_COLUMNS, row))
        study_id = rec["study_id"].strip()
        label = rec["label"].strip()
        if not study_id:
            raise ParseError(f"row {row_num}: column 'study_id' must not be empty")
        values = {
            col: _parse_number(rec[col], row_num, col, as_int=col in ("n1", "n2"))
            for col in STUDY_COLUMNS[2:]
        }
        arms_present = [c for c in _ARM_COLUMNS if values[c] is not None]
        direct_present = [c for c in _DIRECT_COLUMNS if values[c] is not None]
        arms_complete = len(arms_present) == len(_ARM_COLUMNS)
        direct_complete = len(direct_present) == len(_DIRECT_COLUMNS)
        try:
            if arms_complete and direct_complete:
                raise ParseError(
                    f"row {row_num}: ambiguous form, both arm summaries and d/se are populated"
                )
            if arms_complete:
                study = StudySummary(
                    study_id=study_id,
                    label=label,
                    arm1=SampleSummary(n=values["n1"], mean=values["mean1"], sd=values["sd1"]),
                    arm2=SampleSummary(n=values["n2"], mean=values["mean2"], sd=values["sd2"]),
                )
            elif direct_complete:
                stray = [c for c in _MEASURE_COLUMNS if values[c] is not None]
                if stray:
                    raise ParseError(
                        f"row {row_num}: columns {stray} populated but the arm form is incomplete"
                    )
                study = StudySummary(
                    study_id=study_id,
                    label=label,
                    d=values["d"],
                    se=values["se"],
                    n1=values["n1"],
                    n2=values["n2"],
                )
            else:
                present = arms_present + direct_present
                raise ParseError(
                    f"row {row_num}: no complete input form (populated: {present or 'nothing'}); "
                    f"give all of {list(_ARM_COLUMNS)} or both of {list(_DIRECT_COLUMNS)}"
                )
        except ParseError:
            raise
        except Exception as exc:
            raise ParseError(f"row {row_num}: {exc}") from None
        studies.append(study)
    return studies


def _num_repr(x: float | int | None) -> str:
    return "" if x is None else repr(x)


def serialize_study_csv(studies: Sequence[StudySummary]) -> str:
    """Exact inverse of parse_study_csv on valid study sequences."""
    buf = _stdio.StringIO()
    writer = csv.writer(buf)
    writer.writerow(STUDY_COLUMNS)
    for s in studies:
        if s.arm1 is not None and s.arm2 is not None:
            row = [
                s.study_id, s.label,
                _num_repr(s.arm1.n), _num_repr(s.arm2.n),
                _num_repr(s.arm1.mean), _num_repr(s.arm2.mean),
                _num_repr(s.arm1.sd), _num_repr(s.arm2.sd),
                "", "",
            ]
        else:
            row = [
                s.study_id, s.label,
                _num_repr(s.n1), _num_repr(s.n2),
                "", "", "", "",
                _num_repr(s.d), _num_repr(s.se),
            ]
        writer.writerow(row)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Table rendering
# ---------------------------------------------------------------------------

def category_table_dict(table: Mapping[EffectCategory, float]) -> dict[str, float]:
    """Category proportions keyed by stable names, in canonical order."""
    return {cat.value: table[cat] for cat in EffectCategory}


def sign_table_dict(table: SignAgreementTable) -> dict[str, int]:
    return {"mm": table.mm, "mp": table.mp, "pm": table.pm, "pp": table.pp}


def meta_result_dict(result: MetaResult) -> dict[str, object]:
    return {
        "pooled_d": result.pooled_d,
        "pooled_se": result.pooled_se,
        "ci_lower": result.ci.lower,
        "ci_upper": result.ci.upper,
        "q": result.q_statistic,
        "i_squared": result.i_squared,
        "weights": list(result.weights),
    }


def boxplot_dict(stats: BoxplotStats) -> dict[str, float | int]:
    return {
        "n": stats.n,
        "min": stats.minimum,
        "q1": stats.q1,
        "median": stats.median,
        "q3": stats.q3,
        "max": stats.maximum,
        "whisker_low": stats.whisker_low,
        "whisker_high": stats.whisker_high,
        "n_outliers": stats.n_outliers,
    }


def _csv_row(header: Sequence[str], row: Sequence[object]) -> str:
    buf = _stdio.StringIO()
    writer = csv.writer(buf)
    writer.writerow(header)
    writer.writerow(row)
    return buf.getvalue()


def _aligned(pairs: Sequence[tuple[str, str]]) -> str:
    width = max(len(k) for k, _ in pairs)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in pairs) + "\n"


def render_table(
    table: Mapping[EffectCategory, float] | SignAgreementTable | MetaResult,
    fmt: OutputFormat,
) -> str:
    """Render a category, sign-agreement, or meta-analysis table."""
    if fmt is OutputFormat.SVG:
        raise UnsupportedFormatError("svg output is only available for plot commands")
    if isinstance(table, SignAgreementTable):
        data = sign_table_dict(table)
        if fmt is OutputFormat.JSON:
            return json.dumps(data, indent=2) + "\n"
        if fmt is OutputFormat.CSV:
            return _csv_row(list(data), list(data.values()))
        pairs = [("quadrant", "count")] + [(k, str(v)) for k, v in data.items()]
        return _aligned(pairs)
    if isinstance(table, MetaResult):
        data = meta_result_dict(table)
        if fmt is OutputFormat.JSON:
            return json.dumps(data, indent=2) + "\n"
        if fmt is OutputFormat.CSV:
            flat = dict(data)
            flat["weights"] = ";".join(repr(w) for w in table.weights)
            return _csv_row(list(flat), list(flat.values()))
        pairs = [(k, fmt4(v)) for k, v in data.items() if k != "weights"]
        pairs.append(("weights", " ".join(fmt4(w) for w in table.weights)))
        return _aligned(pairs)
    if isinstance(table, Mapping):
        named = category_table_dict(table)
        if fmt is OutputFormat.JSON:
            return json.dumps(named, indent=2) + "\n"
        if fmt is OutputFormat.CSV:
            # Percentages, full precision; the 7 data columns sum to 100.
            return _csv_row(list(named), [repr(100.0 * v) for v in named.values()])
        pairs = [("category", "proportion")] + [
            (category_label(cat), fmt4(100.0 * table[cat]) + "%") for cat in EffectCategory
        ]
        return _aligned(pairs)
    raise UnsupportedFormatError(f"cannot render object of type {type(table).__name__}")


# ---------------------------------------------------------------------------
# Batch export
# ---------------------------------------------------------------------------

def config_dict(batch: SimulationBatch) -> dict[str, object]:
    cfg = batch.config
    spec = cfg.contamination
    return {
        "runs": cfg.runs,
        "n_per_arm": cfg.n_per_arm,
        "mu": cfg.mu,
        "sigma": cfg.sigma,
        "true_effect_d": cfg.true_effect_d,
        "epsilon": None if spec is None else spec.epsilon,
        "scale_mult": None if spec is None else spec.scale_mult,
        "master_seed": cfg.master_seed,
    }


def batch_to_csv(batch: SimulationBatch) -> str:
    buf = _stdio.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["index", "d", "se", "n1", "n2"])
    for r in batch.results:
        writer.writerow([r.index, repr(r.effect.d), repr(r.effect.se), r.effect.n1, r.effect.n2])
    return buf.getvalue()


def batch_to_json(batch: SimulationBatch) -> str:
    payload = {
        "config": config_dict(batch),
        "results": [
            {"index": r.index, "d": r.effect.d, "se": r.effect.se, "n1": r.effect.n1, "n2": r.effect.n2}
            for r in batch.results
        ],
    }
    return json.dumps(payload, indent=2) + "\n"
