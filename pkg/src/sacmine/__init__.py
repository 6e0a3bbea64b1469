"""sacmine: attendance credibility scoring, reliability and classification.

Pipeline: parse raw attendance event logs, clean them, aggregate to
module-term records, score each module's Student Attendance Credibility
(SAC), check the measure's internal consistency with Cronbach's alpha,
and classify modules into strength classes with an entropy-based
decision tree whose rules can be read off as IF/THEN lines.
"""

__version__ = "0.1.0"

from .credibility import (
    ModuleTermRecord,
    SacStrength,
    WeekObservation,
    ZComponents,
    attendance_average,
    sac,
    strength_bin,
    z_components,
)
from .dtree import (
    AttributeSpec,
    Dataset,
    EvalReport,
    Instance,
    Leaf,
    Rule,
    RuleSet,
    Split,
    build_tree,
    entropy,
    evaluate,
    extract_rules,
    gain_ratio,
    info_gain,
    predict,
    rank_attributes,
    split_dataset,
)
from .ingest import (
    AttendanceEvent,
    CleaningReport,
    RosterEntry,
    aggregate,
    clean_events,
    parse_events,
)
from .reliability import AlphaBreakdown, SacPanel, column_variance, cronbach_alpha
from .synthgen import GenParams, generate_events, generate_rule_labeled_dataset

__all__ = [
    "__version__",
    "ModuleTermRecord",
    "SacStrength",
    "WeekObservation",
    "ZComponents",
    "attendance_average",
    "sac",
    "strength_bin",
    "z_components",
    "AttributeSpec",
    "Dataset",
    "EvalReport",
    "Instance",
    "Leaf",
    "Rule",
    "RuleSet",
    "Split",
    "build_tree",
    "entropy",
    "evaluate",
    "extract_rules",
    "gain_ratio",
    "info_gain",
    "predict",
    "rank_attributes",
    "split_dataset",
    "AttendanceEvent",
    "CleaningReport",
    "RosterEntry",
    "aggregate",
    "clean_events",
    "parse_events",
    "AlphaBreakdown",
    "SacPanel",
    "column_variance",
    "cronbach_alpha",
    "GenParams",
    "generate_events",
    "generate_rule_labeled_dataset",
]
