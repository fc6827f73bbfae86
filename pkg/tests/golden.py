"""Frozen expected values for the mini collection in tests/data.

Computed once with the exact-arithmetic oracles in ``oracles.py`` (fractions
for P and AP, 40-digit mpmath for nDCG) and spot-checked by hand for topics
102 (score tie) and 104 (single relevant document).

Columns: P@5, P@10, AP, nDCG@5, nDCG@10.
"""

from fractions import Fraction as F

MEASURES = ("P@5", "P@10", "AP", "nDCG@5", "nDCG@10")

MINI = {
    "mini_orig": {
        "101": (F(3, 5), F(2, 5), F(122, 225), 0.60212605222404607, 0.65164254178899534),
        "102": (F(2, 5), F(1, 5), F(5, 9), 0.70391808903413475, 0.70391808903413475),
        "103": (F(3, 5), F(1, 2), F(1591, 2520), 0.717399924178324, 0.81932054984776665),
        "104": (F(1, 5), F(1, 10), F(1, 5), 0.38685280723454159, 0.38685280723454159),
        "105": (F(3, 5), F(3, 5), F(1571, 3696), 0.67541128356609988, 0.71235121403572488),
    },
    "mini_rep": {
        "101": (F(3, 5), F(2, 5), F(137, 225), 0.76466770129533941, 0.86370068042523795),
        "102": (F(3, 5), F(3, 10), F(34, 45), 0.88545988157148743, 0.88545988157148743),
        "103": (F(3, 5), F(1, 2), F(7807, 13104), 0.54667761653614055, 0.66902852857661924),
        "104": (F(1, 5), F(1, 10), F(1, 3), 0.5, 0.5),
        "105": (F(4, 5), F(7, 10), F(67, 126), 0.80312592221010807, 0.80164716261309471),
    },
}


def golden(run, measure):
    col = MEASURES.index(measure)
    return {t: float(v[col]) for t, v in MINI[run].items()}
