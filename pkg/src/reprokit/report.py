"""Assemble evaluation/reproduction/replication reports and render them.

A report is built once from parsed inputs and rendered as tab-separated
text (6 decimals), JSON (full precision) or plot-ready CSV rows. CSV rows are
derived from the JSON-shaped dict so a saved report can be re-plotted.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Sequence

from .effects import effect_point
from .errors import TopicMismatchError, UnsupportedError
from .fidelity import arp_delta, rmse, rmse_curve
from .measures import DEFAULT_MEASURES, MeasureSpec, arp, evaluate
from .ordering import DEFAULT_RBO_P, CutoffCurve, ktu, rbo_run, resolve_cutoffs
from .runs import ExperimentQuadruple, Qrels, Run, TopicScoreMap, pair_topics
from .stats import TestResult, paired_t_test, unpaired_t_test

PLOT_KINDS = ("arp-bars", "cutoff-curves", "er-dri-scatter")
DELTA_RI_ORIENTATION = "RI(original) - RI(replicated)"
UNDEF = "undef"


@dataclass
class ReproReport:
    mode: str
    measures: list[str]
    runs: dict[str, str] = field(default_factory=dict)
    arp_table: dict[str, dict[str, float]] = field(default_factory=dict)
    per_topic: dict[str, dict[str, dict[str, float]]] = field(default_factory=dict)
    summary: dict[str, dict[str, float | None]] = field(default_factory=dict)
    curves: list[CutoffCurve] = field(default_factory=list)
    effect_points: list[dict] = field(default_factory=list)
    tests: list[TestResult] = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)

    def add_scores(self, label: str, tag: str, scores: dict[str, TopicScoreMap]) -> None:
        self.runs[label] = tag
        self.arp_table[label] = {m: arp(s) for m, s in scores.items()}
        self.per_topic[label] = {m: {t: s.scores[t] for t in s.topic_ids()} for m, s in scores.items()}
        skipped = {m: list(s.skipped) for m, s in scores.items() if s.skipped}
        if skipped:
            self.diagnostics.setdefault("skipped", {})[label] = skipped

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "measures": list(self.measures),
            "runs": dict(self.runs),
            "arp_table": self.arp_table,
            "per_topic": self.per_topic,
            "summary": self.summary,
            "curves": [_curve_dict(c) for c in self.curves],
            "effect_points": self.effect_points,
            "tests": [_test_dict(t) for t in self.tests],
            "diagnostics": self.diagnostics,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        return render_text(self.to_dict())


def _curve_dict(c: CutoffCurve) -> dict:
    return {
        "measure": c.measure,
        "aggregate": c.aggregate,
        "cutoffs": list(c.cutoffs),
        "per_topic": {t: {str(k): v for k, v in c.per_topic[t].items()} for t in sorted(c.per_topic)},
        "summary": {str(k): v for k, v in c.mean_per_cutoff.items()},
    }


def _test_dict(t: TestResult) -> dict:
    return {
        "label": t.label,
        "measure": t.measure,
        "kind": t.kind,
        "statistic": t.statistic,
        "p_value": t.p_value,
        "df": t.df,
    }


def _names(specs: Sequence[MeasureSpec]) -> list[str]:
    names = [s.name for s in specs]
    if len(set(names)) != len(names):
        raise ValueError("duplicate measures requested")
    return names


def build_evaluate(run: Run, qrels: Qrels, specs: Sequence[MeasureSpec] = DEFAULT_MEASURES) -> ReproReport:
    report = ReproReport("evaluate", _names(specs))
    report.add_scores(run.tag, run.tag, evaluate(run, qrels, specs))
    if run.dropped:
        report.diagnostics["dropped"] = {run.tag: dict(sorted(run.dropped.items()))}
    return report


def _max_depth(*runs: Run) -> int:
    return max(len(entries) for r in runs for entries in r.topics.values())


def build_reproduce(
    orig: Run,
    rep: Run,
    qrels: Qrels,
    specs: Sequence[MeasureSpec] = DEFAULT_MEASURES,
    cutoffs: Sequence[int] | None = None,
    rbo_p: float = DEFAULT_RBO_P,
    normalize_rmse: bool = False,
) -> ReproReport:
    pairing = pair_topics(orig, rep)
    if not pairing.identical:
        raise TopicMismatchError(
            "original and reproduced runs must cover the same topics", pairing.only_a, pairing.only_b
        )
    report = ReproReport("reproduce", _names(specs))
    scores_o = evaluate(orig, qrels, specs)
    scores_r = evaluate(rep, qrels, specs)
    report.add_scores("orig", orig.tag, scores_o)
    report.add_scores("rep", rep.tag, scores_r)
    if pairing.diagnostics:
        report.diagnostics["dropped"] = pairing.diagnostics

    for name in report.measures:
        o, r = scores_o[name], scores_r[name]
        report.summary[name] = {
            "arp_delta": arp_delta(o, r),
            "rmse": rmse(o, r, normalized=normalize_rmse),
        }
        report.tests.append(paired_t_test(o, r, label="orig-rep"))
    if normalize_rmse:
        report.diagnostics["rmse_normalized_by"] = "original ARP"

    rbo_scores = rbo_run(orig, rep, rbo_p)
    report.per_topic["orig-rep"] = {rbo_scores.measure: {t: rbo_scores.scores[t] for t in rbo_scores.topic_ids()}}
    report.summary[rbo_scores.measure] = {"mean": arp(rbo_scores)}

    grid = resolve_cutoffs(cutoffs, _max_depth(orig, rep))
    report.curves.append(ktu(orig, rep, grid))
    for kind in dict.fromkeys(s.kind for s in specs if s.kind != "average_precision"):
        report.curves.append(rmse_curve(orig, rep, qrels, kind, grid))
    return report


def build_replicate(
    orig_baseline: Run,
    orig_advanced: Run,
    rep_pairs: Sequence[tuple[Run, Run]],
    qrels_orig: Qrels,
    qrels_rep: Qrels,
    specs: Sequence[MeasureSpec] = DEFAULT_MEASURES,
    welch: bool = False,
) -> ReproReport:
    if not rep_pairs:
        raise ValueError("at least one replicated baseline/advanced pair is required")
    report = ReproReport("replicate", _names(specs))
    ob = evaluate(orig_baseline, qrels_orig, specs)
    oa = evaluate(orig_advanced, qrels_orig, specs)
    report.add_scores("orig_baseline", orig_baseline.tag, ob)
    report.add_scores("orig_advanced", orig_advanced.tag, oa)

    for i, (base, adv) in enumerate(rep_pairs, start=1):
        pair = "rep" if i == 1 else f"rep{i}"
        rb = evaluate(base, qrels_rep, specs)
        ra = evaluate(adv, qrels_rep, specs)
        report.add_scores(f"{pair}_baseline", base.tag, rb)
        report.add_scores(f"{pair}_advanced", adv.tag, ra)
        for name in report.measures:
            point = effect_point(ExperimentQuadruple(ob[name], oa[name], rb[name], ra[name]))
            report.effect_points.append(
                {"run_pair": pair, "measure": name, "er": point.er, "delta_ri": point.delta_ri}
            )
        for name in report.measures:
            report.tests.append(unpaired_t_test(ob[name], rb[name], welch, label=f"orig_baseline-{pair}_baseline"))
            report.tests.append(unpaired_t_test(oa[name], ra[name], welch, label=f"orig_advanced-{pair}_advanced"))
    report.diagnostics["delta_ri_orientation"] = DELTA_RI_ORIENTATION
    return report


def fmt(value) -> str:
    if value is None:
        return UNDEF
    return f"{value:.6f}"


def render_text(d: dict) -> str:
    """Tab-separated rows; evaluate mode mirrors trec_eval's three columns."""
    out = []
    if d["mode"] == "evaluate":
        (label,) = d["per_topic"]
        for m in d["measures"]:
            for topic, v in d["per_topic"][label][m].items():
                out.append(f"{m}\t{topic}\t{fmt(v)}")
            out.append(f"{m}\tall\t{fmt(d['arp_table'][label][m])}")
        return "\n".join(out) + "\n"

    out.append(f"# mode {d['mode']}")
    for label, tag in d["runs"].items():
        out.append(f"# {label} = {tag}")
    if d["mode"] == "replicate":
        out.append(f"# delta_ri = {DELTA_RI_ORIENTATION}")
    out.append("# quantity\tmeasure\tscope\tvalue")
    for label, table in d["arp_table"].items():
        for m in d["measures"]:
            out.append(f"arp\t{m}\t{label}\t{fmt(table[m])}")
    for label, measures in d["per_topic"].items():
        for m, topics in measures.items():
            for topic, v in topics.items():
                out.append(f"topic_score\t{m}\t{label}/{topic}\t{fmt(v)}")
    for m, quantities in d["summary"].items():
        for q, v in quantities.items():
            out.append(f"{q}\t{m}\tall\t{fmt(v)}")
    for c in d["curves"]:
        for k in c["cutoffs"]:
            for topic, values in c["per_topic"].items():
                out.append(f"curve\t{c['measure']}\t{topic}@{k}\t{fmt(values.get(str(k)))}")
            out.append(f"curve\t{c['measure']}\t{c['aggregate']}@{k}\t{fmt(c['summary'].get(str(k)))}")
    for p in d["effect_points"]:
        out.append(f"er\t{p['measure']}\t{p['run_pair']}\t{fmt(p['er'])}")
        out.append(f"delta_ri\t{p['measure']}\t{p['run_pair']}\t{fmt(p['delta_ri'])}")
    for t in d["tests"]:
        scope = f"{t['label']}:{t['kind']}"
        out.append(f"t\t{t['measure']}\t{scope}\t{fmt(t['statistic'])}")
        out.append(f"p\t{t['measure']}\t{scope}\t{fmt(t['p_value'])}")
        out.append(f"df\t{t['measure']}\t{scope}\t{fmt(t['df'])}")
    return "\n".join(out) + "\n"


def _num(value) -> str:
    return "" if value is None else repr(float(value))


def plot_rows(d: dict, kind: str) -> list[list[str]]:
    """CSV rows (header first) for one plot kind from a report dict."""
    if kind not in PLOT_KINDS:
        raise UnsupportedError(f"unknown plot kind {kind!r}; choose from {', '.join(PLOT_KINDS)}")
    if kind == "arp-bars":
        rows = [["run", "measure", "value"]]
        for label, table in d["arp_table"].items():
            for m in d["measures"]:
                rows.append([label, m, _num(table[m])])
        return rows
    if kind == "cutoff-curves":
        if not d["curves"]:
            raise UnsupportedError(f"a {d['mode']} report has no cutoff curves")
        rows = [["measure", "topic", "cutoff", "value"]]
        for c in d["curves"]:
            for topic, values in c["per_topic"].items():
                for k in c["cutoffs"]:
                    rows.append([c["measure"], topic, str(k), _num(values.get(str(k)))])
            for k in c["cutoffs"]:
                rows.append([c["measure"], "mean", str(k), _num(c["summary"].get(str(k)))])
        return rows
    if d["mode"] != "replicate":
        raise UnsupportedError(f"er-dri-scatter needs a replicate report, got {d['mode']}")
    rows = [["run_pair", "measure", "er", "delta_ri"]]
    for p in d["effect_points"]:
        rows.append([p["run_pair"], p["measure"], _num(p["er"]), _num(p["delta_ri"])])
    return rows


def to_csv(rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()
