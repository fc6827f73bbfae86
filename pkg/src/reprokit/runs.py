"""Runs, qrels and per-topic score maps, plus TREC format readers/writers.

Run lines have six whitespace-separated columns::

    topic  Q0  doc_id  rank  score  tag

and qrels lines four::

    topic  iteration  doc_id  relevance

Runs are stored in canonical order (score descending, doc_id descending),
the order trec_eval evaluates in. The rank column of the input is kept for
diagnostics only.
"""

from __future__ import annotations

import contextlib
import io
import math
import re
import sys
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator, Mapping, Union

from .errors import DuplicateEntryError, ParseError, TopicMismatchError

DEFAULT_DEPTH = 1000

# plain decimal notation only: no underscores, nan/inf words or non-ASCII digits
_SCORE = re.compile(r"[+-]?(?:[0-9]+\.?[0-9]*|\.[0-9]+)(?:[eE][+-]?[0-9]+)?")
_INT = re.compile(r"[+-]?[0-9]+")

Source = Union[bytes, str, IO[bytes], IO[str], Iterable[Union[bytes, str]]]


@dataclass(frozen=True)
class RunEntry:
    topic_id: str
    doc_id: str
    rank: int
    score: float
    run_tag: str
    input_rank: int | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Run:
    tag: str
    topics: dict[str, tuple[RunEntry, ...]]
    # entries beyond the evaluation depth, per topic
    dropped: dict[str, int] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not any(self.topics.values()):
            raise ValueError("a run needs at least one topic with one entry")

    def ranking(self, topic_id: str) -> list[str]:
        return [e.doc_id for e in self.topics.get(topic_id, ())]

    def topic_ids(self) -> list[str]:
        return sorted(self.topics)

    def __len__(self) -> int:
        return sum(len(v) for v in self.topics.values())


@dataclass(frozen=True)
class Qrels:
    topics: dict[str, dict[str, int]]

    def judgments(self, topic_id: str) -> dict[str, int]:
        return self.topics.get(topic_id, {})

    def num_relevant(self, topic_id: str) -> int:
        return sum(1 for g in self.judgments(topic_id).values() if g > 0)


@dataclass(frozen=True)
class TopicScoreMap:
    """Scores of one measure, keyed by topic id."""

    measure: str
    scores: dict[str, float]
    skipped: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        for topic, value in self.scores.items():
            if not math.isfinite(value):
                raise ValueError(f"non-finite score {value!r} for topic {topic!r}")

    def __len__(self) -> int:
        return len(self.scores)

    def topic_ids(self) -> list[str]:
        return sorted(self.scores)

    def values(self, topics: Iterable[str] | None = None) -> list[float]:
        topics = self.topic_ids() if topics is None else topics
        return [self.scores[t] for t in topics]


@dataclass(frozen=True)
class ExperimentQuadruple:
    orig_baseline: TopicScoreMap
    orig_advanced: TopicScoreMap
    rep_baseline: TopicScoreMap
    rep_advanced: TopicScoreMap

    def __post_init__(self):
        for label, base, adv in (
            ("original", self.orig_baseline, self.orig_advanced),
            ("replicated", self.rep_baseline, self.rep_advanced),
        ):
            pairing = pair_topics(base, adv)
            if pairing.only_a or pairing.only_b:
                raise TopicMismatchError(
                    f"{label} baseline and advanced runs cover different topics",
                    pairing.only_a,
                    pairing.only_b,
                )
            if not base.scores:
                raise ValueError(f"{label} pair has no topics")

    @property
    def measure(self) -> str:
        return self.orig_baseline.measure


@dataclass(frozen=True)
class PairingReport:
    shared: tuple[str, ...]
    only_a: tuple[str, ...]
    only_b: tuple[str, ...]
    diagnostics: dict[str, object] = field(default_factory=dict)

    @property
    def identical(self) -> bool:
        return not self.only_a and not self.only_b


def pair_topics(a: Run | TopicScoreMap, b: Run | TopicScoreMap) -> PairingReport:
    ids_a, ids_b = _topic_set(a), _topic_set(b)
    diagnostics = {}
    for name, obj in (("dropped_a", a), ("dropped_b", b)):
        dropped = getattr(obj, "dropped", None)
        if dropped:
            diagnostics[name] = dict(sorted(dropped.items()))
    return PairingReport(
        shared=tuple(sorted(ids_a & ids_b)),
        only_a=tuple(sorted(ids_a - ids_b)),
        only_b=tuple(sorted(ids_b - ids_a)),
        diagnostics=diagnostics,
    )


def _topic_set(obj) -> set[str]:
    if isinstance(obj, Run):
        return {t for t, entries in obj.topics.items() if entries}
    if isinstance(obj, TopicScoreMap):
        return set(obj.scores)
    raise TypeError(f"cannot pair topics of {type(obj).__name__}")


def _lines(source: Source) -> Iterator[tuple[int, str]]:
    if isinstance(source, (bytes, str)):
        source = source.splitlines()
    for lineno, raw in enumerate(source, start=1):
        if isinstance(raw, bytes):
            try:
                raw = raw.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise ParseError(f"invalid UTF-8 ({exc.reason})", lineno) from None
        yield lineno, raw


def canonical_order(entries: Iterable[RunEntry]) -> list[RunEntry]:
    return sorted(entries, key=lambda e: (e.score, e.doc_id), reverse=True)


def parse_run(source: Source, *, depth: int | None = DEFAULT_DEPTH, lenient: bool = False) -> Run:
    """Parse a TREC run into canonical order.

    ``depth`` caps the number of entries kept per topic (``None`` keeps all);
    the number of dropped entries is recorded in ``Run.dropped``. With
    ``lenient`` set, columns after the sixth are ignored instead of rejected.
    """
    if depth is not None and depth < 1:
        raise ValueError("depth must be >= 1")
    raw: dict[str, dict[str, RunEntry]] = {}
    tag = None
    for lineno, line in _lines(source):
        fields = line.split()
        if not fields:
            continue
        if len(fields) < 6 or (len(fields) > 6 and not lenient):
            raise ParseError(f"expected 6 fields, found {len(fields)}", lineno)
        topic, _, doc_id, rank_s, score_s, run_tag = fields[:6]
        if not _SCORE.fullmatch(score_s):
            raise ParseError(f"non-numeric score {score_s!r}", lineno)
        score = float(score_s)
        if not math.isfinite(score):
            raise ParseError(f"score {score_s!r} overflows", lineno)
        if not _INT.fullmatch(rank_s):
            raise ParseError(f"non-integer rank {rank_s!r}", lineno)
        input_rank = int(rank_s)
        docs = raw.setdefault(topic, {})
        if doc_id in docs:
            raise DuplicateEntryError(topic, doc_id, lineno)
        docs[doc_id] = RunEntry(topic, doc_id, 0, score, run_tag, input_rank)
        if tag is None:
            tag = run_tag
    if tag is None:
        raise ParseError("empty run")

    topics = {}
    dropped = {}
    for topic, docs in raw.items():
        ordered = canonical_order(docs.values())
        if depth is not None and len(ordered) > depth:
            dropped[topic] = len(ordered) - depth
            ordered = ordered[:depth]
        topics[topic] = tuple(
            RunEntry(e.topic_id, e.doc_id, i, e.score, e.run_tag, e.input_rank)
            for i, e in enumerate(ordered, start=1)
        )
    return Run(tag=tag, topics=topics, dropped=dropped)


def parse_qrels(source: Source) -> Qrels:
    topics: dict[str, dict[str, int]] = {}
    for lineno, line in _lines(source):
        fields = line.split()
        if not fields:
            continue
        if len(fields) != 4:
            raise ParseError(f"expected 4 fields, found {len(fields)}", lineno)
        topic, _, doc_id, rel_s = fields
        if not _INT.fullmatch(rel_s):
            raise ParseError(f"non-integer relevance {rel_s!r}", lineno)
        grade = int(rel_s)
        judged = topics.setdefault(topic, {})
        if doc_id in judged:
            raise DuplicateEntryError(topic, doc_id, lineno)
        judged[doc_id] = max(grade, 0)
    if not topics:
        raise ParseError("empty qrels")
    return Qrels(topics)


def _open(path: str):
    if path == "-":
        return contextlib.nullcontext(sys.stdin.buffer)
    return open(path, "rb")


def read_run(path: str, **kwargs) -> Run:
    """Read a run file; ``-`` reads standard input."""
    with _open(path) as fh:
        return parse_run(fh, **kwargs)


def read_qrels(path: str) -> Qrels:
    with _open(path) as fh:
        return parse_qrels(fh)


def write_run(run: Run, stream: IO[str]) -> None:
    """Write ``run`` in canonical order. Scores use ``repr`` so they round-trip."""
    for topic in sorted(run.topics):
        for e in run.topics[topic]:
            stream.write(f"{e.topic_id} Q0 {e.doc_id} {e.rank} {e.score!r} {e.run_tag}\n")


def format_run(run: Run) -> str:
    buf = io.StringIO()
    write_run(run, buf)
    return buf.getvalue()


def score_map(measure: str, scores: Mapping[str, float]) -> TopicScoreMap:
    return TopicScoreMap(measure, {str(k): float(v) for k, v in scores.items()})
