"""Effect Ratio (ER) and Delta Relative Improvement (DeltaRI).

Both compare the improvement of an advanced run over its baseline in the
original experiment with the improvement obtained by the replicated pair,
possibly on another test collection. Ideal replication gives ER = 1 and
DeltaRI = 0. DeltaRI is oriented original minus replicated, so a positive
value means the replication falls short of the original relative gain.

Undefined values (a zero denominator) are ``None``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .measures import arp
from .runs import ExperimentQuadruple, TopicScoreMap


@dataclass(frozen=True)
class EffectPoint:
    measure: str
    er: float | None
    delta_ri: float | None


def _mean_improvement(baseline: TopicScoreMap, advanced: TopicScoreMap) -> float:
    topics = baseline.topic_ids()
    return math.fsum(advanced.scores[t] - baseline.scores[t] for t in topics) / len(topics)


def effect_ratio(q: ExperimentQuadruple) -> float | None:
    """Mean per-topic improvement of the replicated pair over that of the original pair."""
    orig = _mean_improvement(q.orig_baseline, q.orig_advanced)
    if orig == 0:
        return None
    return _mean_improvement(q.rep_baseline, q.rep_advanced) / orig


def relative_improvement(baseline: TopicScoreMap, advanced: TopicScoreMap) -> float | None:
    base = arp(baseline)
    if base == 0:
        return None
    return (arp(advanced) - base) / base


def delta_relative_improvement(q: ExperimentQuadruple) -> float | None:
    ri_orig = relative_improvement(q.orig_baseline, q.orig_advanced)
    ri_rep = relative_improvement(q.rep_baseline, q.rep_advanced)
    if ri_orig is None or ri_rep is None:
        return None
    return ri_orig - ri_rep


def effect_point(q: ExperimentQuadruple) -> EffectPoint:
    return EffectPoint(q.measure, effect_ratio(q), delta_relative_improvement(q))


def effect_points(quads: Mapping[str, ExperimentQuadruple] | Iterable[ExperimentQuadruple]) -> list[EffectPoint]:
    """One point per measure, in the order given."""
    if isinstance(quads, Mapping):
        quads = quads.values()
    return [effect_point(q) for q in quads]


def build_quadruple(
    orig_baseline: Mapping[str, TopicScoreMap],
    orig_advanced: Mapping[str, TopicScoreMap],
    rep_baseline: Mapping[str, TopicScoreMap],
    rep_advanced: Mapping[str, TopicScoreMap],
    measure: str,
) -> ExperimentQuadruple:
    return ExperimentQuadruple(
        orig_baseline[measure], orig_advanced[measure], rep_baseline[measure], rep_advanced[measure]
    )
