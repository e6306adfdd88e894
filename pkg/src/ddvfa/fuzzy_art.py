"""Fuzzy ART primitives and a standalone fuzzy ART clusterer.

The scoring functions accept a single weight vector ``w`` of shape (2d,) or
a stack of them of shape (k, 2d); in the latter case they return one value
per row.  Inputs ``x`` are complement-coded vectors.
"""

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_is_fitted

from . import _kernels
from .utils import check_art_params, check_fraction, check_unit_data, grow


def complement_code(x):
    """Complement-code ``x``: each row ``v`` becomes ``[v, 1 - v]``.

    Works on a single vector or on a sample matrix.  Every coded vector has
    L1 norm equal to the number of raw features.
    """
    x = np.asarray(x, dtype=np.float64)
    bad = np.argwhere((x < 0.0) | (x > 1.0) | np.isnan(x))
    if bad.size:
        idx = tuple(int(i) for i in bad[0])
        where = idx[0] if len(idx) == 1 else idx
        raise ValueError(f"component {where} is {x[idx]!r}, outside [0, 1]")
    return np.concatenate([x, 1.0 - x], axis=-1)


def _check_dims(w, x):
    w = np.asarray(w, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    if w.shape[-1] != x.shape[-1]:
        raise ValueError(
            f"dimension mismatch: weights have {w.shape[-1]} components, "
            f"input has {x.shape[-1]}"
        )
    return w, x


def activation(w, x, alpha=0.001, gamma=1.0):
    """Higher-order choice function ``(|x ^ w| / (alpha + |w|)) ** gamma``."""
    w, x = _check_dims(w, x)
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha!r}")
    return (np.minimum(x, w).sum(axis=-1) / (alpha + w.sum(axis=-1))) ** gamma


def match_raw(w, x, gamma=1.0):
    """Higher-order match ``(|x ^ w| / |x|) ** gamma``."""
    w, x = _check_dims(w, x)
    return (np.minimum(x, w).sum(axis=-1) / x.sum()) ** gamma


def match_normalized(w, x, alpha=0.001, gamma=1.0, gamma_star=1.0):
    """Match normalized against the reference width ``gamma_star``.

    Equals ``(|w| / |x|) ** gamma_star * activation(w, x, alpha, gamma)``;
    with ``gamma_star == 0`` it is the activation itself.  A category never
    scores exactly 1 on its own weight vector because of ``alpha``.
    """
    if gamma_star > gamma:
        raise ValueError(f"gamma_star ({gamma_star}) must not exceed gamma ({gamma})")
    w, x = _check_dims(w, x)
    t = activation(w, x, alpha, gamma)
    return (w.sum(axis=-1) / x.sum()) ** gamma_star * t


def learn(w, x, beta=1.0):
    """Fuzzy ART weight update ``(1 - beta) w + beta (x ^ w)``."""
    w, x = _check_dims(w, x)
    beta = check_fraction(beta, "beta", low_open=True)
    return (1.0 - beta) * w + beta * np.minimum(x, w)


class FuzzyART(ClusterMixin, BaseEstimator):
    """Fuzzy ART clustering with higher-order activation and match.

    Samples are presented once, in the given order.  Each sample resonates
    with the highest-activation category whose match clears ``rho``; if none
    does, a new category is committed with its weight set to the sample.

    Parameters
    ----------
    rho : float, default=0.75
        Vigilance in [0, 1].
    alpha : float, default=0.001
        Choice parameter, > 0.
    beta : float, default=1.0
        Learning rate in (0, 1]; 1 means fast learning.
    gamma : float, default=1.0
        Kernel width applied to activation and match.
    gamma_star : float, default=1.0
        Reference kernel width of the normalized match, in [0, gamma].
    match : {"normalized", "raw"}, default="normalized"
        Which match function drives the vigilance test.  ``"raw"`` with
        ``gamma=1`` is classic first-order fuzzy ART.

    Attributes
    ----------
    weights_ : ndarray of shape (n_categories, 2 * n_features)
    counts_ : ndarray of shape (n_categories,)
        Number of samples encoded by each category.
    labels_ : ndarray of shape (n_samples,)
        Category that absorbed each sample at presentation time, for every
        sample seen so far (all calls to ``fit``/``partial_fit``).
    """

    def __init__(self, rho=0.75, alpha=0.001, beta=1.0, gamma=1.0,
                 gamma_star=1.0, match="normalized"):
        self.rho = rho
        self.alpha = alpha
        self.beta = beta
        self.gamma = gamma
        self.gamma_star = gamma_star
        self.match = match

    def _checked_params(self):
        if self.match not in ("normalized", "raw"):
            raise ValueError(f"match must be 'normalized' or 'raw', got {self.match!r}")
        rho = check_fraction(self.rho, "rho")
        return (rho,) + check_art_params(self.alpha, self.beta, self.gamma,
                                         self.gamma_star)

    def fit(self, X, y=None):
        for attr in ("weights_", "counts_", "labels_"):
            self.__dict__.pop(attr, None)
        return self.partial_fit(X)

    def partial_fit(self, X, y=None):
        X = check_unit_data(X)
        rho, alpha, beta, gamma, gamma_star = self._checked_params()
        I = complement_code(X)
        if hasattr(self, "weights_"):
            if I.shape[1] != self.weights_.shape[1]:
                raise ValueError("X has a different number of features than the fitted model")
            W, counts = self.weights_, self.counts_
            prev_labels = self.labels_
        else:
            W = np.zeros((0, I.shape[1]))
            counts = np.zeros(0, dtype=np.int64)
            prev_labels = np.zeros(0, dtype=np.int64)
        n_cat = W.shape[0]
        W = grow(W.copy(), n_cat + I.shape[0])
        counts = grow(counts.copy(), n_cat + I.shape[0])
        wnorm = _kernels.row_norms(W)
        assign = np.empty(I.shape[0], dtype=np.int64)
        n_cat = _kernels.fa_fit(I, np.ones(I.shape[0], dtype=np.int64), W, wnorm,
                                counts, n_cat, rho, alpha, beta, gamma, gamma_star,
                                self.match == "raw", assign)
        self.weights_ = W[:n_cat]
        self.counts_ = counts[:n_cat]
        self.labels_ = np.concatenate([prev_labels, assign])
        return self

    def predict(self, X):
        """Resonating category of each sample without learning; -1 if none."""
        check_is_fitted(self)
        X = check_unit_data(X)
        rho, alpha, _, gamma, gamma_star = self._checked_params()
        I = complement_code(X)
        out = np.empty(I.shape[0], dtype=np.int64)
        W = np.ascontiguousarray(self.weights_)
        _kernels.fa_predict(I, W, _kernels.row_norms(W), W.shape[0], rho, alpha, gamma,
                            gamma_star, self.match == "raw", out)
        return out

    @property
    def n_categories_(self):
        check_is_fitted(self)
        return self.weights_.shape[0]
