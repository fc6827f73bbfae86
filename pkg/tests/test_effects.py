import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from reprokit import (
    ExperimentQuadruple,
    TopicMismatchError,
    TopicScoreMap,
    delta_relative_improvement,
    effect_points,
    effect_ratio,
)
from reprokit.effects import effect_point


def sm(values, measure="AP", prefix="t"):
    return TopicScoreMap(measure, {f"{prefix}{i}": v for i, v in enumerate(values)})


def quad(ob, oa, rb, ra, measure="AP"):
    return ExperimentQuadruple(
        sm(ob, measure), sm(oa, measure), sm(rb, measure, "r"), sm(ra, measure, "r")
    )


def test_exact_replication():
    ob, oa = [0.2, 0.3, 0.4], [0.3, 0.35, 0.6]
    q = quad(ob, oa, ob, oa)
    assert effect_ratio(q) == 1.0
    assert delta_relative_improvement(q) == 0.0


def test_zero_replicated_improvement():
    q = quad([0.2, 0.3], [0.4, 0.5], [0.3, 0.3, 0.1], [0.3, 0.3, 0.1])
    assert effect_ratio(q) == 0.0


def test_er_by_hand():
    # original deltas average 0.10, replicated deltas average -0.05
    q = quad([0.25, 0.5], [0.375, 0.575], [0.5, 0.25], [0.4375, 0.2125])
    assert effect_ratio(q) == pytest.approx(-0.5, abs=1e-12)


def test_delta_ri_by_hand():
    # RI_orig = 0.6/0.5 - 1 = 0.2, RI_rep = 0.42/0.4 - 1 = 0.05
    q = quad([0.5, 0.5], [0.6, 0.6], [0.4, 0.4], [0.42, 0.42])
    assert delta_relative_improvement(q) == pytest.approx(0.15, abs=1e-12)


def test_no_improvement_anywhere():
    q = quad([0.5, 0.2], [0.5, 0.2], [0.1, 0.3], [0.1, 0.3])
    assert delta_relative_improvement(q) == 0.0
    assert effect_ratio(q) is None


def test_delta_ri_undefined_for_zero_baseline():
    q = quad([0.0, 0.0], [0.1, 0.2], [0.1, 0.2], [0.2, 0.3])
    assert delta_relative_improvement(q) is None
    assert effect_ratio(q) is not None


def test_intra_pair_mismatch():
    with pytest.raises(TopicMismatchError):
        ExperimentQuadruple(sm([0.1, 0.2]), sm([0.1]), sm([0.1]), sm([0.1]))


def test_effect_points_cardinality_and_composition():
    quads = {
        m: quad([0.2, 0.4, 0.3], [0.3, 0.5, 0.35], [0.1, 0.2], [0.15, 0.22], m)
        for m in ("P@10", "AP", "nDCG@10")
    }
    points = effect_points(quads)
    assert [p.measure for p in points] == ["P@10", "AP", "nDCG@10"]
    for p, q in zip(points, quads.values()):
        assert (p.er, p.delta_ri) == (effect_ratio(q), delta_relative_improvement(q))


def test_effect_points_exact_replication():
    quads = [quad([0.2, 0.4], [0.3, 0.7], [0.2, 0.4], [0.3, 0.7], m) for m in ("P@10", "AP")]
    assert all((p.er, p.delta_ri) == (1.0, 0.0) for p in effect_points(quads))


scores = st.floats(0.01, 1.0)
samples = st.integers(2, 12).flatmap(lambda n: st.lists(st.tuples(scores, scores), min_size=n, max_size=n))


@given(samples, samples, st.floats(-0.5, 0.5))
def test_er_invariant_to_shifting_one_collection(orig, rep, c):
    ob, oa = zip(*orig)
    rb, ra = zip(*rep)
    assume(abs(sum(oa) - sum(ob)) > 1e-6)
    q1 = quad(ob, oa, rb, ra)
    q2 = quad(ob, oa, [x + c for x in rb], [x + c for x in ra])
    assert effect_ratio(q1) == pytest.approx(effect_ratio(q2), rel=1e-6, abs=1e-9)


@given(samples, samples)
def test_er_sign_follows_replicated_improvement(orig, rep):
    ob, oa = zip(*orig)
    rb, ra = zip(*rep)
    assume(sum(oa) - sum(ob) > 1e-6)
    rep_gain = sum(a - b for a, b in zip(ra, rb))
    assume(abs(rep_gain) > 1e-9)
    er = effect_ratio(quad(ob, oa, rb, ra))
    assert (er > 0) == (rep_gain > 0)


@given(samples, samples, st.floats(0.1, 10))
def test_delta_ri_scale_free(orig, rep, scale):
    ob, oa = zip(*orig)
    rb, ra = zip(*rep)
    base = delta_relative_improvement(quad(ob, oa, rb, ra))
    scaled = delta_relative_improvement(quad(ob, oa, [x * scale for x in rb], [x * scale for x in ra]))
    assert scaled == pytest.approx(base, rel=1e-9, abs=1e-9)


def test_effect_point_measure_name():
    q = quad([0.1, 0.2], [0.2, 0.3], [0.1, 0.2], [0.2, 0.3], "nDCG@10")
    assert effect_point(q).measure == "nDCG@10"
