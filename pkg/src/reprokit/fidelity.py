"""Closeness of per-topic scores between an original and a reproduced run."""

from __future__ import annotations

import math
from typing import Iterable

from .errors import MismatchError, TopicMismatchError
from .measures import MeasureSpec, arp, evaluate_run
from .ordering import CutoffCurve
from .runs import Qrels, Run, TopicScoreMap, pair_topics


def _check_same_topics(orig: TopicScoreMap, rep: TopicScoreMap) -> tuple[str, ...]:
    if orig.measure != rep.measure:
        raise MismatchError(f"cannot compare {orig.measure} with {rep.measure}")
    pairing = pair_topics(orig, rep)
    if not pairing.identical:
        raise TopicMismatchError(
            f"{orig.measure}: reproduced scores must cover exactly the original topics "
            f"({len(pairing.only_a)} only in original, {len(pairing.only_b)} only in reproduction)",
            pairing.only_a,
            pairing.only_b,
        )
    if not pairing.shared:
        raise ValueError(f"{orig.measure}: no topic scores")
    return pairing.shared


def rmse(orig: TopicScoreMap, rep: TopicScoreMap, *, normalized: bool = False) -> float:
    """Root mean square error between per-topic scores.

    With ``normalized`` the error is divided by the original ARP.
    """
    topics = _check_same_topics(orig, rep)
    # hypot rescales internally, so tiny differences do not underflow to zero
    value = math.hypot(*(orig.scores[t] - rep.scores[t] for t in topics)) / math.sqrt(len(topics))
    if normalized:
        base = arp(orig)
        if base == 0:
            raise ValueError(f"{orig.measure}: original ARP is zero, cannot normalise")
        value /= base
    return value


def rmse_curve(
    orig_run: Run,
    rep_run: Run,
    qrels: Qrels,
    kind: str | MeasureSpec,
    cutoffs: Iterable[int],
) -> CutoffCurve:
    """RMSE of a cutoff-based measure (P@k or nDCG@k) at each cutoff.

    Per-topic entries hold absolute differences; the aggregate is their
    quadratic mean, i.e. the RMSE.
    """
    if isinstance(kind, MeasureSpec):
        kind = kind.kind
    if kind == "average_precision":
        raise ValueError("AP has no cutoff; use rmse() directly")
    cutoffs = tuple(cutoffs)
    per_topic: dict[str, dict[int, float]] = {}
    for k in cutoffs:
        spec = MeasureSpec(kind, k)
        a = evaluate_run(orig_run, qrels, spec)
        b = evaluate_run(rep_run, qrels, spec)
        for t in _check_same_topics(a, b):
            per_topic.setdefault(t, {})[k] = abs(a.scores[t] - b.scores[t])
    name = "RMSE(" + MeasureSpec(kind, 1).name.split("@")[0] + "@k)"
    return CutoffCurve.from_per_topic(name, per_topic, cutoffs, aggregate="rms")


def arp_delta(orig: TopicScoreMap, rep: TopicScoreMap) -> float:
    """ARP of the reproduction minus ARP of the original."""
    return arp(rep) - arp(orig)
