"""Pair-counting agreement (adjusted Rand index) and model compactness."""

from collections import namedtuple

import numpy as np
from sklearn.metrics.cluster import contingency_matrix

PairCounts = namedtuple("PairCounts", "tp tn fp fn")
PairCounts.__doc__ = """Unordered sample pairs classified by two partitions ``a`` and ``b``.

tp: together in both; tn: apart in both; fp: together only in ``b``;
fn: together only in ``a``.
"""


def _check_pair(a, b):
    a = np.asarray(a).reshape(-1)
    b = np.asarray(b).reshape(-1)
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"label vectors differ in length: {a.shape[0]} vs {b.shape[0]}")
    if a.shape[0] < 2:
        raise ValueError("at least two samples are needed to count pairs")
    return a, b


def _comb2(v):
    v = np.asarray(v, dtype=object)
    return int(sum(int(x) * (int(x) - 1) // 2 for x in v))


def pair_counts(a, b):
    """Classify every unordered pair of samples; exact integers."""
    a, b = _check_pair(a, b)
    C = contingency_matrix(a, b, sparse=False)
    n = a.shape[0]
    total = n * (n - 1) // 2
    tp = _comb2(C.ravel())
    same_a = _comb2(C.sum(axis=1))
    same_b = _comb2(C.sum(axis=0))
    fn = same_a - tp
    fp = same_b - tp
    return PairCounts(tp, total - tp - fn - fp, fp, fn)


def adjusted_rand(a, b):
    """Adjusted Rand index of two partitions, from pair counts.

    Numerator and denominator are exact integers; only the final ratio is
    floating point.  When the denominator vanishes (both partitions trivial)
    the result is 1.0 for identical partitions and 0.0 otherwise.
    """
    a, b = _check_pair(a, b)
    tp, tn, fp, fn = pair_counts(a, b)
    pairs = tp + tn + fp + fn
    cross = (tp + fn) * (tp + fp) + (fn + tn) * (fp + tn)
    num = pairs * (tp + tn) - cross
    den = pairs * pairs - cross
    if den == 0:
        return 1.0 if fp == 0 and fn == 0 else 0.0
    return num / den


def compactness(model):
    """``(clusters, categories)`` of a fitted DDVFA-style model; (0, 0) if empty."""
    if not hasattr(model, "weights_"):
        return 0, 0
    return int(model.n_nodes_), int(model.n_categories_)
