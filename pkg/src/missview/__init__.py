"""missview: missing-data profiling, glyph scenes, SVG rendering, and a
small HTTP API for interactive exploration."""

from .data import (
    CATEGORICAL,
    NUMERIC,
    Dataset,
    Variable,
    categorical_variable,
    numeric_variable,
)
from .ingest import IngestConfig, ParseError, parse_table, write_table
from .scene import GlyphScene, build_scene
from .stats import (
    CmDivergence,
    HistogramPair,
    HistogramSpec,
    MissingnessSummary,
    amount_missing,
    cm_divergence,
    expected_joint_missing,
    histogram_pair,
    histogram_spec,
    joint_missing,
    randomness_report,
    summarize,
)
from .svg import RenderStyle, render
from .synth import (
    BaseRandom,
    ConditionalRemoval,
    GroundTruthManifest,
    InjectionPlan,
    Mcar,
    UniformNoise,
    apply_plan,
    quartiles,
)

__version__ = "0.1.0"

__all__ = [
    "CATEGORICAL",
    "NUMERIC",
    "Dataset",
    "Variable",
    "categorical_variable",
    "numeric_variable",
    "IngestConfig",
    "ParseError",
    "parse_table",
    "write_table",
    "GlyphScene",
    "build_scene",
    "CmDivergence",
    "HistogramPair",
    "HistogramSpec",
    "MissingnessSummary",
    "amount_missing",
    "cm_divergence",
    "expected_joint_missing",
    "histogram_pair",
    "histogram_spec",
    "joint_missing",
    "randomness_report",
    "summarize",
    "RenderStyle",
    "render",
    "BaseRandom",
    "ConditionalRemoval",
    "GroundTruthManifest",
    "InjectionPlan",
    "Mcar",
    "UniformNoise",
    "apply_plan",
    "quartiles",
    "__version__",
]
