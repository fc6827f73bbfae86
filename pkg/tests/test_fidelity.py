import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from golden import golden
from reprokit import MismatchError, TopicMismatchError, TopicScoreMap, arp_delta, parse_run, rmse, rmse_curve
from reprokit.measures import MeasureSpec, evaluate_run


def sm(scores, measure="AP"):
    return TopicScoreMap(measure, dict(scores))


def test_rmse_examples():
    a = sm({"t1": 0.2, "t2": 0.4})
    assert rmse(a, a) == 0.0
    assert rmse(a, sm({"t1": 0.4, "t2": 0.2})) == pytest.approx(0.2, abs=1e-15)
    shifted = sm({"t1": 0.2 + 0.125, "t2": 0.4 + 0.125})
    assert rmse(a, shifted) == pytest.approx(0.125, abs=1e-15)


def test_rmse_mismatch_is_an_error():
    with pytest.raises(TopicMismatchError) as info:
        rmse(sm({"1": 0.1, "2": 0.2}), sm({"1": 0.1, "3": 0.2}))
    assert info.value.only_a == ("2",) and info.value.only_b == ("3",)
    with pytest.raises(MismatchError):
        rmse(sm({"1": 0.1}), sm({"1": 0.1}, "P@10"))
    with pytest.raises(ValueError):
        rmse(sm({}), sm({}))


def test_rmse_normalized():
    a = sm({"1": 0.2, "2": 0.6})
    b = sm({"1": 0.4, "2": 0.4})
    assert rmse(a, b, normalized=True) == pytest.approx(0.2 / 0.4)


def test_arp_delta():
    a = sm({"1": 0.2, "2": 0.6})
    assert arp_delta(a, a) == 0.0
    assert arp_delta(a, sm({"1": 0.3, "2": 0.7})) == pytest.approx(0.1, abs=1e-15)
    # topic sets may differ
    assert arp_delta(a, sm({"9": 0.5})) == pytest.approx(0.1, abs=1e-15)


def test_arp_delta_mini_collection(mini_orig, mini_rep, mini_qrels):
    spec = MeasureSpec("average_precision")
    o, r = evaluate_run(mini_orig, mini_qrels, spec), evaluate_run(mini_rep, mini_qrels, spec)
    go, gr = golden("mini_orig", "AP"), golden("mini_rep", "AP")
    by_hand = sum(gr.values()) / 5 - sum(go.values()) / 5
    assert arp_delta(o, r) == pytest.approx(by_hand, abs=1e-12)
    rms = math.sqrt(sum((go[t] - gr[t]) ** 2 for t in go) / 5)
    assert rmse(o, r) == pytest.approx(rms, abs=1e-12)


def test_equal_arp_can_hide_topic_differences():
    a = sm({"1": 0.1, "2": 0.5, "3": 0.9})
    b = sm({"1": 0.9, "2": 0.1, "3": 0.5})
    assert arp_delta(a, b) == pytest.approx(0.0, abs=1e-15)
    assert rmse(a, b) > 0.3


def test_rmse_curve_self(mini_orig, mini_qrels):
    curve = rmse_curve(mini_orig, mini_orig, mini_qrels, "ndcg", (5, 10, 20))
    assert curve.mean_per_cutoff == {5: 0.0, 10: 0.0, 20: 0.0}
    assert curve.aggregate == "rms"


@pytest.mark.parametrize("kind", ["precision", "ndcg"])
def test_rmse_curve_matches_manual_composition(kind, mini_orig, mini_rep, mini_qrels):
    cutoffs = (5, 10)
    curve = rmse_curve(mini_orig, mini_rep, mini_qrels, kind, cutoffs)
    prefix = "P" if kind == "precision" else "nDCG"
    for k in cutoffs:
        go, gr = golden("mini_orig", f"{prefix}@{k}"), golden("mini_rep", f"{prefix}@{k}")
        expected = math.sqrt(sum((go[t] - gr[t]) ** 2 for t in go) / len(go))
        assert curve.mean_per_cutoff[k] == pytest.approx(expected, abs=1e-12)
        for t in go:
            assert curve.per_topic[t][k] == pytest.approx(abs(go[t] - gr[t]), abs=1e-12)


def test_rmse_curve_single_topic_is_abs_difference(mini_qrels):
    a = parse_run("101 Q0 d01 1 3 a\n101 Q0 d02 2 2 a\n101 Q0 d05 3 1 a\n")
    b = parse_run("101 Q0 d05 1 3 b\n101 Q0 d02 2 2 b\n101 Q0 d01 3 1 b\n")
    curve = rmse_curve(a, b, mini_qrels, MeasureSpec("ndcg", 3), (1, 2, 3))
    for k in (1, 2, 3):
        assert curve.mean_per_cutoff[k] == pytest.approx(curve.per_topic["101"][k], abs=1e-15)


def test_rmse_curve_rejects_ap(mini_orig, mini_qrels):
    with pytest.raises(ValueError):
        rmse_curve(mini_orig, mini_orig, mini_qrels, "average_precision", (5,))


score_pairs = st.integers(1, 30).flatmap(
    lambda n: st.tuples(
        st.lists(st.floats(0, 1), min_size=n, max_size=n),
        st.lists(st.floats(0, 1), min_size=n, max_size=n),
    )
)


@given(score_pairs)
def test_rmse_dominates_arp_delta_and_is_symmetric(case):
    xs, ys = case
    a = sm({str(i): v for i, v in enumerate(xs)})
    b = sm({str(i): v for i, v in enumerate(ys)})
    assert rmse(a, b) >= abs(arp_delta(a, b)) - 1e-12
    assert rmse(a, b) == rmse(b, a)
    assert (rmse(a, b) == 0) == (xs == ys)


def test_rmse_subnormal_difference_is_positive():
    assert rmse(sm({"1": 0.0}), sm({"1": 2.225073858507203e-309})) > 0


def test_normalized_rmse_zero_baseline():
    with pytest.raises(ValueError):
        rmse(sm({"1": 0.0, "2": 0.0}), sm({"1": 0.1, "2": 0.0}), normalized=True)
