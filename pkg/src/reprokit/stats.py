"""Two-sided Student t-tests with p-values from the regularized incomplete beta.

Paired tests suit reproductions (same topics), unpaired tests replications
(topic sets may differ). The statistic is oriented ``x - y``.

A degenerate sample (zero variance but a nonzero mean difference) has no
finite statistic; the result then carries ``None`` for statistic and p-value.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass

from .errors import ConvergenceError, MismatchError, TopicMismatchError
from .runs import TopicScoreMap, pair_topics

_TINY = 1e-300
_REL_TOL = 1e-12
_MAX_ITER = 300
# relative spread below which a sample is treated as constant
_DEGENERATE_TOL = 1e-12


@dataclass(frozen=True)
class TestResult:
    __test__ = False  # keep pytest from collecting this class

    kind: str
    statistic: float | None
    p_value: float | None
    df: float
    measure: str = ""
    label: str = ""

    @property
    def defined(self) -> bool:
        return self.p_value is not None


def _beta_cf(x: float, a: float, b: float) -> float:
    # modified Lentz evaluation of the incomplete beta continued fraction
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _REL_TOL:
            return h
    raise ConvergenceError(f"incomplete beta did not converge for x={x}, a={a}, b={b}")


def regularized_incomplete_beta(x: float, a: float, b: float) -> float:
    """I_x(a, b) for 0 <= x <= 1 and a, b > 0."""
    if not (a > 0 and b > 0) or math.isinf(a) or math.isinf(b):
        raise ValueError(f"shape parameters must be positive and finite, got a={a}, b={b}")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    if x > (a + 1.0) / (a + b + 2.0):
        return 1.0 - regularized_incomplete_beta(1.0 - x, b, a)
    log_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b) + a * math.log(x) + b * math.log1p(-x)
    )
    value = math.exp(log_front) * _beta_cf(x, a, b) / a
    return min(max(value, 0.0), 1.0)


def student_t_sf(t: float, df: float) -> float:
    """Two-sided tail probability P(|T| >= |t|) for Student's t with ``df`` degrees of freedom."""
    if not df > 0:
        raise ValueError(f"df must be positive, got {df}")
    if math.isnan(t):
        raise ValueError("t is NaN")
    if math.isinf(t):
        return 0.0
    t2 = t * t
    return regularized_incomplete_beta(df / (df + t2), df / 2.0, 0.5)


def _spread_is_zero(values: list[float]) -> bool:
    scale = max(abs(v) for v in values)
    return max(values) - min(values) <= _DEGENERATE_TOL * scale


def _result(kind, diff, se, df, zero_var, measure, label) -> TestResult:
    if zero_var:
        if diff == 0 or abs(diff) <= _DEGENERATE_TOL:
            return TestResult(kind, 0.0, 1.0, df, measure, label)
        return TestResult(kind, None, None, df, measure, label)
    t = diff / se
    return TestResult(kind, t, student_t_sf(t, df), df, measure, label)


def paired_t_test(x: TopicScoreMap, y: TopicScoreMap, label: str = "") -> TestResult:
    """Paired t-test over identical topic sets; statistic uses x - y."""
    if x.measure != y.measure:
        raise MismatchError(f"cannot test {x.measure} against {y.measure}")
    pairing = pair_topics(x, y)
    if not pairing.identical:
        raise TopicMismatchError(
            f"{x.measure}: paired test needs identical topic sets", pairing.only_a, pairing.only_b
        )
    n = len(pairing.shared)
    if n < 2:
        raise ValueError("paired t-test needs at least two topics")
    diffs = [x.scores[t] - y.scores[t] for t in pairing.shared]
    mean = statistics.fmean(diffs)
    zero_var = _spread_is_zero(diffs)
    se = 0.0 if zero_var else statistics.stdev(diffs) / math.sqrt(n)
    # subnormal spreads can underflow to a zero standard error
    return _result("paired", mean, se, float(n - 1), zero_var or se == 0, x.measure, label)


def unpaired_t_test(
    x: TopicScoreMap, y: TopicScoreMap, welch: bool = False, label: str = ""
) -> TestResult:
    """Two-sample t-test; pooled variance unless ``welch`` is set."""
    if x.measure != y.measure:
        raise MismatchError(f"cannot test {x.measure} against {y.measure}")
    xs, ys = x.values(), y.values()
    nx, ny = len(xs), len(ys)
    if nx < 2 or ny < 2:
        raise ValueError("unpaired t-test needs at least two topics per sample")
    diff = statistics.fmean(xs) - statistics.fmean(ys)
    vx, vy = statistics.variance(xs), statistics.variance(ys)
    zero_var = _spread_is_zero(xs) and _spread_is_zero(ys)
    pooled_df = float(nx + ny - 2)
    if welch:
        kind = "unpaired-welch"
        se2 = vx / nx + vy / ny
        denom = (vx / nx) ** 2 / (nx - 1) + (vy / ny) ** 2 / (ny - 1)
        if zero_var or se2 == 0 or denom == 0:
            return _result(kind, diff, 0.0, pooled_df, True, x.measure, label)
        df = se2**2 / denom
    else:
        kind = "unpaired-pooled"
        pooled = ((nx - 1) * vx + (ny - 1) * vy) / pooled_df
        se2 = pooled * (1.0 / nx + 1.0 / ny)
        df = pooled_df
        if zero_var or se2 == 0:
            return _result(kind, diff, 0.0, df, True, x.measure, label)
    return _result(kind, diff, math.sqrt(se2), df, False, x.measure, label)
