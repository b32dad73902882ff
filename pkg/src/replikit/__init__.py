"""Toolkit for effect sizes, replication simulation, and meta-analysis.

Core workflow: simulate two-arm experiments under normal or contaminated
sampling (`run_simulation`), summarize them as Cohen's d effect sizes with
confidence intervals, judge replications against prediction intervals
(`prediction_interval`, `confirms`), and pool studies with fixed-effects
meta-analysis (`fixed_effect_pool`) rendered as forest/funnel SVG plots.
"""

from .effect_size import (
    EffectCategory,
    EffectSize,
    Interval,
    category_label,
    classify,
    cohens_d,
    confidence_interval,
    hedges_correction,
    pooled_sd,
    standard_error_d,
)
from .errors import (
    ConvergenceError,
    DegenerateSampleError,
    DomainError,
    InconsistentIntervalError,
    InsufficientDataError,
    NoSolutionError,
    PairingError,
    ParseError,
    ReplikitError,
    UnsupportedFormatError,
)
from .io import (
    OutputFormat,
    batch_to_csv,
    batch_to_json,
    boxplot_dict,
    category_table_dict,
    config_dict,
    fmt4,
    meta_result_dict,
    parse_study_csv,
    render_table,
    serialize_study_csv,
    sign_table_dict,
)
from .meta import (
    ForestPlotSpec,
    ForestRow,
    FunnelData,
    MetaResult,
    StudySummary,
    fixed_effect_pool,
    forest_model,
    funnel_data,
    heterogeneity,
)
from .prediction import (
    ReplicationDesign,
    back_solve_n,
    confirms,
    prediction_interval,
)
from .simulation import (
    BoxplotStats,
    ExperimentResult,
    SignAgreementTable,
    SimulationBatch,
    SimulationConfig,
    boxplot_summary,
    pair_replications,
    pairing_stream,
    run_experiment,
    run_simulation,
    tabulate_categories,
    tabulate_sign_agreement,
)
from .stats_core import (
    ContaminationSpec,
    RandomStream,
    SampleSummary,
    derive_substream,
    normal_quantile,
    regularized_incomplete_beta,
    sample_contaminated,
    sample_normal,
    summarize,
    t_cdf,
    t_pdf,
    t_quantile,
)
from .svg import render_forest_svg, render_funnel_svg

__version__ = "1.0.0"

__all__ = [
    "BoxplotStats",
    "ContaminationSpec",
    "ConvergenceError",
    "DegenerateSampleError",
    "DomainError",
    "EffectCategory",
    "EffectSize",
    "ExperimentResult",
    "ForestPlotSpec",
    "ForestRow",
    "FunnelData",
    "InconsistentIntervalError",
    "InsufficientDataError",
    "Interval",
    "MetaResult",
    "NoSolutionError",
    "OutputFormat",
    "PairingError",
    "ParseError",
    "RandomStream",
    "ReplicationDesign",
    "ReplikitError",
    "SampleSummary",
    "SignAgreementTable",
    "SimulationBatch",
    "SimulationConfig",
    "StudySummary",
    "UnsupportedFormatError",
    "back_solve_n",
    "batch_to_csv",
    "batch_to_json",
    "boxplot_dict",
    "boxplot_summary",
    "category_label",
    "category_table_dict",
    "classify",
    "cohens_d",
    "confidence_interval",
    "config_dict",
    "confirms",
    "derive_substream",
    "fixed_effect_pool",
    "fmt4",
    "forest_model",
    "funnel_data",
    "hedges_correction",
    "heterogeneity",
    "meta_result_dict",
    "normal_quantile",
    "pair_replications",
    "pairing_stream",
    "parse_study_csv",
    "pooled_sd",
    "prediction_interval",
    "regularized_incomplete_beta",
    "render_forest_svg",
    "render_funnel_svg",
    "render_table",
    "run_experiment",
    "run_simulation",
    "sample_contaminated",
    "sample_normal",
    "serialize_study_csv",
    "sign_table_dict",
    "standard_error_d",
    "summarize",
    "t_cdf",
    "t_pdf",
    "t_quantile",
    "tabulate_categories",
    "tabulate_sign_agreement",
]
