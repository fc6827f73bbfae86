"""Reproducibility and replicability measures for TREC-style IR runs."""

from .effects import EffectPoint, delta_relative_improvement, effect_points, effect_ratio
from .errors import (
    DuplicateEntryError,
    InputError,
    MismatchError,
    NoEvaluableTopicsError,
    ParseError,
    ReprokitError,
    TopicMismatchError,
    UnsupportedError,
)
from .fidelity import arp_delta, rmse, rmse_curve
from .measures import (
    MeasureSpec,
    arp,
    average_precision,
    evaluate,
    evaluate_run,
    ndcg_at_k,
    parse_measure,
    precision_at_k,
)
from .ordering import CutoffCurve, kendall_tau_b, ktu, rbo, rbo_run
from .report import ReproReport, build_evaluate, build_replicate, build_reproduce
from .runs import (
    ExperimentQuadruple,
    PairingReport,
    Qrels,
    Run,
    RunEntry,
    TopicScoreMap,
    pair_topics,
    parse_qrels,
    parse_run,
    read_qrels,
    read_run,
    write_run,
)
from .stats import TestResult, paired_t_test, regularized_incomplete_beta, student_t_sf, unpaired_t_test

__version__ = "0.1.0"
