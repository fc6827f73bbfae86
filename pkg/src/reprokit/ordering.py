"""Document-ordering comparisons: Kendall's tau union (KTU) and RBO.

KTU compares the top-k lists of two runs over the union of their documents.
A document missing from one list gets the tied rank k+1 in that list, and the
tie-corrected tau-b is computed over the two rank vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import TopicMismatchError
from .runs import Run, TopicScoreMap, pair_topics

DEFAULT_CUTOFFS = (5, 10, 20, 30, 50, 100, 200, 500, 1000)
DEFAULT_RBO_P = 0.8


@dataclass(frozen=True)
class CutoffCurve:
    """Per-topic values at several cutoffs plus one aggregate per cutoff.

    ``aggregate`` is ``"mean"`` (arithmetic mean over the topics present at a
    cutoff) or ``"rms"`` (quadratic mean, used for RMSE curves whose per-topic
    values are absolute score differences).
    """

    measure: str
    per_topic: dict[str, dict[int, float]]
    mean_per_cutoff: dict[int, float]
    aggregate: str = "mean"
    cutoffs: tuple[int, ...] = field(default=())

    @classmethod
    def from_per_topic(cls, measure, per_topic, cutoffs, aggregate="mean"):
        means = {}
        for k in cutoffs:
            vals = [v[k] for v in per_topic.values() if k in v]
            if not vals:
                continue
            if aggregate == "mean":
                means[k] = math.fsum(vals) / len(vals)
            elif aggregate == "rms":
                means[k] = math.hypot(*vals) / math.sqrt(len(vals))
            else:
                raise ValueError(f"unknown aggregate {aggregate!r}")
        return cls(measure, per_topic, means, aggregate, tuple(cutoffs))


def resolve_cutoffs(cutoffs: Iterable[int] | None, depth: int) -> tuple[int, ...]:
    """Explicit cutoffs pass through; the default grid is clipped to ``depth``."""
    if cutoffs is not None:
        out = tuple(sorted(set(int(k) for k in cutoffs)))
        if not out or out[0] < 1:
            raise ValueError("cutoffs must be positive integers")
        return out
    clipped = tuple(k for k in DEFAULT_CUTOFFS if k <= depth)
    return clipped or (max(depth, 1),)


def _tau_from_counts(concordant: int, discordant: int, ties_a_only: int, ties_b_only: int) -> float | None:
    denom = (concordant + discordant + ties_a_only) * (concordant + discordant + ties_b_only)
    if denom == 0:
        return None
    return (concordant - discordant) / math.sqrt(denom)


def _count_inversions(values: list) -> int:
    """Strict inversions (i < j, v[i] > v[j]) by bottom-up merge sort."""
    n = len(values)
    src = list(values)
    dst = [None] * n
    inversions = 0
    width = 1
    while width < n:
        for lo in range(0, n, 2 * width):
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i, j, k = lo, mid, lo
            while i < mid and j < hi:
                if src[j] < src[i]:
                    dst[k] = src[j]
                    inversions += mid - i
                    j += 1
                else:
                    dst[k] = src[i]
                    i += 1
                k += 1
            dst[k:hi] = src[i:mid] + src[j:hi]
        src, dst = dst, src
        width *= 2
    return inversions


def _tied_pairs(values: Iterable) -> int:
    counts = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    return sum(c * (c - 1) // 2 for c in counts.values())


def kendall_tau_b(ranks_a: Sequence[float], ranks_b: Sequence[float]) -> float | None:
    """Tau-b between paired rank vectors, O(n log n).

    Returns ``None`` when undefined: fewer than two items, or one vector
    entirely tied.
    """
    n = len(ranks_a)
    if n != len(ranks_b):
        raise ValueError("rank vectors differ in length")
    if n < 2:
        return None
    pairs = sorted(zip(ranks_a, ranks_b))
    total = n * (n - 1) // 2
    ties_a = _tied_pairs(a for a, _ in pairs)
    ties_b = _tied_pairs(b for _, b in pairs)
    ties_both = _tied_pairs(pairs)
    discordant = _count_inversions([b for _, b in pairs])
    concordant = total - ties_a - ties_b + ties_both - discordant
    return _tau_from_counts(concordant, discordant, ties_a - ties_both, ties_b - ties_both)


def union_ranks(top_a: Sequence[str], top_b: Sequence[str], k: int) -> tuple[list[int], list[int]]:
    """Rank vectors over the union of two top-k lists; absentees get rank k+1."""
    pos_a = {d: i for i, d in enumerate(top_a, start=1)}
    pos_b = {d: i for i, d in enumerate(top_b, start=1)}
    union = sorted(pos_a.keys() | pos_b.keys())
    return [pos_a.get(d, k + 1) for d in union], [pos_b.get(d, k + 1) for d in union]


def ktu_topic(list_a: Sequence[str], list_b: Sequence[str], k: int) -> float | None:
    ra, rb = union_ranks(list_a[:k], list_b[:k], k)
    return kendall_tau_b(ra, rb)


def _shared_topics(orig: Run, rep: Run) -> tuple[str, ...]:
    pairing = pair_topics(orig, rep)
    if not pairing.shared:
        raise TopicMismatchError("runs share no topics", pairing.only_a, pairing.only_b)
    return pairing.shared


def ktu(orig: Run, rep: Run, cutoffs: Iterable[int]) -> CutoffCurve:
    cutoffs = tuple(cutoffs)
    per_topic = {}
    for topic in _shared_topics(orig, rep):
        a, b = orig.ranking(topic), rep.ranking(topic)
        values = {}
        for k in cutoffs:
            tau = ktu_topic(a, b, k)
            if tau is not None:
                values[k] = tau
        per_topic[topic] = values
    return CutoffCurve.from_per_topic("KTU", per_topic, cutoffs)


def rbo(list_a: Sequence[str], list_b: Sequence[str], p: float = DEFAULT_RBO_P) -> float:
    """Extrapolated rank-biased overlap of two rankings (uneven lengths allowed).

    Agreement beyond the end of the shorter list is extrapolated from the
    overlap it reached; agreement beyond the longer list from the final
    agreement level.
    """
    if not 0.0 < p < 1.0:
        raise ValueError(f"persistence p must lie in (0, 1), got {p!r}")
    if not list_a or not list_b:
        raise ValueError("rbo needs two non-empty lists")
    if len(set(list_a)) != len(list_a) or len(set(list_b)) != len(list_b):
        raise ValueError("rankings must not repeat documents")
    short, long_ = (list_a, list_b) if len(list_a) <= len(list_b) else (list_b, list_a)
    s, l = len(short), len(long_)

    seen_short, seen_long = set(), set()
    overlap = 0
    overlap_at_s = 0
    head = []
    tail = []
    for d in range(1, l + 1):
        x = long_[d - 1]
        y = short[d - 1] if d <= s else None
        if x == y:
            overlap += 1
        else:
            if x in seen_short:
                overlap += 1
            if y is not None and y in seen_long:
                overlap += 1
            seen_long.add(x)
            if y is not None:
                seen_short.add(y)
        weight = p**d
        head.append(overlap / d * weight)
        if d == s:
            overlap_at_s = overlap
        if d > s:
            tail.append(overlap_at_s * (d - s) / (s * d) * weight)
    extrapolated = ((overlap - overlap_at_s) / l + overlap_at_s / s) * p**l
    value = (1 - p) / p * (math.fsum(head) + math.fsum(tail)) + extrapolated
    # rounding can push a perfect agreement a hair above 1
    return min(max(value, 0.0), 1.0)


def rbo_run(orig: Run, rep: Run, p: float = DEFAULT_RBO_P) -> TopicScoreMap:
    """Per-topic RBO over the full canonical rankings of the shared topics."""
    scores = {t: rbo(orig.ranking(t), rep.ranking(t), p) for t in _shared_topics(orig, rep)}
    return TopicScoreMap(rbo_name(p), scores)


def rbo_name(p: float) -> str:
    return f"RBO(p={p:g})"
