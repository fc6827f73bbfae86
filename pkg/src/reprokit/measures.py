"""Per-topic effectiveness measures (P@k, AP, nDCG@k), trec_eval conventions.

Unjudged documents count as non-relevant. Topics without any positive
judgment are skipped rather than scored zero.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import NoEvaluableTopicsError
from .runs import Qrels, Run, TopicScoreMap

KINDS = ("precision", "average_precision", "ndcg")


class TopicSkipped(ValueError):
    """The topic has no relevant documents, so the measure is undefined."""


@dataclass(frozen=True)
class MeasureSpec:
    kind: str
    cutoff: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown measure kind {self.kind!r}")
        if self.kind == "average_precision":
            # AP ignores the cutoff; normalise so equal specs compare equal
            object.__setattr__(self, "cutoff", None)
        elif self.cutoff is None or self.cutoff < 1:
            raise ValueError(f"{self.kind} needs a cutoff >= 1")

    @property
    def name(self) -> str:
        if self.kind == "precision":
            return f"P@{self.cutoff}"
        if self.kind == "ndcg":
            return f"nDCG@{self.cutoff}"
        return "AP"

    def at(self, cutoff: int) -> MeasureSpec:
        """Same measure at another cutoff."""
        if self.kind == "average_precision":
            raise ValueError("AP has no cutoff")
        return MeasureSpec(self.kind, cutoff)

    def __str__(self) -> str:
        return self.name


DEFAULT_MEASURES = (
    MeasureSpec("precision", 10),
    MeasureSpec("average_precision"),
    MeasureSpec("ndcg", 10),
)

_PATTERNS = [
    (re.compile(r"^(?:p|precision)(?:@|_)(\d+)$"), "precision"),
    (re.compile(r"^(?:ndcg|ndcg_cut)(?:@|_)(\d+)$"), "ndcg"),
    (re.compile(r"^(?:ap|map|average_precision)$"), "average_precision"),
]


def parse_measure(text: str) -> MeasureSpec:
    """Parse ``P@10``, ``P_10``, ``AP``, ``map``, ``nDCG@10``, ``ndcg_cut_10``."""
    key = text.strip().lower()
    for pattern, kind in _PATTERNS:
        m = pattern.match(key)
        if m:
            return MeasureSpec(kind, int(m.group(1)) if m.groups() else None)
    raise ValueError(f"unrecognised measure {text!r}")


def precision_at_k(ranking: Sequence[str], judged: Mapping[str, int], k: int) -> float:
    if k < 1:
        raise ValueError("k must be >= 1")
    hits = sum(1 for d in ranking[:k] if judged.get(d, 0) > 0)
    return hits / k


def average_precision(ranking: Sequence[str], judged: Mapping[str, int]) -> float:
    num_rel = sum(1 for g in judged.values() if g > 0)
    if num_rel == 0:
        raise TopicSkipped("no relevant documents")
    hits = 0
    total = 0.0
    for i, doc in enumerate(ranking, start=1):
        if judged.get(doc, 0) > 0:
            hits += 1
            total += hits / i
    return total / num_rel


def _dcg(grades: Sequence[int]) -> float:
    return math.fsum(g / math.log2(i + 1) for i, g in enumerate(grades, start=1) if g > 0)


def ndcg_at_k(ranking: Sequence[str], judged: Mapping[str, int], k: int) -> float:
    if k < 1:
        raise ValueError("k must be >= 1")
    ideal = sorted((g for g in judged.values() if g > 0), reverse=True)[:k]
    if not ideal:
        raise TopicSkipped("no relevant documents")
    gains = [max(judged.get(d, 0), 0) for d in ranking[:k]]
    return _dcg(gains) / _dcg(ideal)


def score_topic(ranking: Sequence[str], judged: Mapping[str, int], spec: MeasureSpec) -> float:
    """Score one topic; raises ``TopicSkipped`` if it has no relevant documents."""
    if spec.kind == "average_precision":
        return average_precision(ranking, judged)
    if not any(g > 0 for g in judged.values()):
        raise TopicSkipped("no relevant documents")
    if spec.kind == "precision":
        return precision_at_k(ranking, judged, spec.cutoff)
    return ndcg_at_k(ranking, judged, spec.cutoff)


def evaluate_run(run: Run, qrels: Qrels, spec: MeasureSpec) -> TopicScoreMap:
    scores = {}
    skipped = []
    for topic in run.topic_ids():
        judged = qrels.judgments(topic)
        try:
            scores[topic] = score_topic(run.ranking(topic), judged, spec)
        except TopicSkipped:
            skipped.append(topic)
    if not scores:
        raise NoEvaluableTopicsError(
            f"run {run.tag!r} shares no judged topic with relevant documents for {spec.name}"
        )
    return TopicScoreMap(spec.name, scores, tuple(skipped))


def evaluate(run: Run, qrels: Qrels, specs: Sequence[MeasureSpec] = DEFAULT_MEASURES) -> dict[str, TopicScoreMap]:
    return {spec.name: evaluate_run(run, qrels, spec) for spec in specs}


def arp(scores: TopicScoreMap) -> float:
    """Average retrieval performance: mean over topics."""
    if not scores.scores:
        raise ValueError(f"no topic scores for {scores.measure}")
    return math.fsum(scores.scores.values()) / len(scores.scores)
