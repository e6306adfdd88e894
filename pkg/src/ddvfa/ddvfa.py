"""Distributed dual vigilance fuzzy ART.

A global ART whose F2 nodes are local fuzzy ARTs.  Node activation and match
are HAC-style aggregates (single, complete, median, average, weighted,
centroid) of the member categories' higher-order activation and normalized
match.  The global test uses ``rho_lb`` (cluster similarity), the local test
``rho_ub`` (category size).
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_is_fitted

from . import _kernels
from .fuzzy_art import activation, complement_code, match_normalized, match_raw
from .utils import check_art_params, check_dual_vigilance, check_unit_data, grow


class LinkageMethod(str, Enum):
    SINGLE = "single"
    COMPLETE = "complete"
    MEDIAN = "median"
    AVERAGE = "average"
    WEIGHTED = "weighted"
    CENTROID = "centroid"

    @property
    def code(self):
        return _CODES[self]


_CODES = {
    LinkageMethod.SINGLE: _kernels.SINGLE,
    LinkageMethod.COMPLETE: _kernels.COMPLETE,
    LinkageMethod.MEDIAN: _kernels.MEDIAN,
    LinkageMethod.AVERAGE: _kernels.AVERAGE,
    LinkageMethod.WEIGHTED: _kernels.WEIGHTED,
    LinkageMethod.CENTROID: _kernels.CENTROID,
}


@dataclass
class LocalArt:
    """One local fuzzy ART: the categories of a single cluster."""

    weights: np.ndarray
    counts: np.ndarray

    def __post_init__(self):
        self.weights = np.atleast_2d(np.asarray(self.weights, dtype=np.float64))
        self.counts = np.asarray(self.counts, dtype=np.int64).reshape(-1)
        if self.weights.shape[0] == 0:
            raise ValueError("a local ART needs at least one category")
        if self.counts.shape[0] != self.weights.shape[0]:
            raise ValueError("one instance count per category is required")

    @property
    def n_total(self):
        return int(self.counts.sum())

    @property
    def centroid(self):
        """Componentwise minimum of the member weights."""
        return self.weights.min(axis=0)

    def __len__(self):
        return self.weights.shape[0]


def _reduce(values, counts, method):
    if method is LinkageMethod.SINGLE:
        return float(values.max())
    if method is LinkageMethod.COMPLETE:
        return float(values.min())
    if method is LinkageMethod.MEDIAN:
        return float(np.median(values))
    if method is LinkageMethod.AVERAGE:
        return float(values.mean())
    if method is LinkageMethod.WEIGHTED:
        return float(np.dot(counts / counts.sum(), values))
    raise ValueError(f"no elementwise reduction for {method}")


def global_activation(node, x, method="single", alpha=0.001, gamma=1.0):
    """Activation of a whole local ART for input ``x``."""
    method = LinkageMethod(method)
    if method is LinkageMethod.CENTROID:
        return float(activation(node.centroid, x, alpha, gamma))
    return _reduce(activation(node.weights, x, alpha, gamma), node.counts, method)


def global_match(node, x, method="single", alpha=0.001, gamma=1.0, gamma_star=1.0):
    """Match of a whole local ART for input ``x``.

    Elementwise methods aggregate the normalized category matches; the
    centroid method uses the raw higher-order match of the centroid.
    """
    method = LinkageMethod(method)
    if method is LinkageMethod.CENTROID:
        return float(match_raw(node.centroid, x, gamma))
    m = match_normalized(node.weights, x, alpha, gamma, gamma_star)
    return _reduce(m, node.counts, method)


class DDVFA(ClusterMixin, BaseEstimator):
    """Distributed dual vigilance fuzzy ART clustering.

    Each cluster is a local fuzzy ART holding one or more hyperbox
    categories.  A sample is offered to the clusters in decreasing order of
    their aggregate activation.  The first whose aggregate match reaches
    ``rho_lb`` takes it.  Inside that cluster the sample either refines the
    best category with match at least ``rho_ub`` or becomes a new category.
    A rejected cluster is not offered the same sample again.  When no cluster
    accepts the sample, it starts a new one.

    Parameters
    ----------
    rho_lb : float, default=0.7
        Global (cluster similarity) vigilance.
    rho_ub : float, default=0.85
        Local (quantization) vigilance; must be >= ``rho_lb``.
    method : str, default="single"
        One of "single", "complete", "median", "average", "weighted",
        "centroid".
    alpha : float, default=0.001
    beta : float, default=1.0
    gamma : float, default=3.0
        Kernel width of activation and match.
    gamma_star : float, default=1.0
        Reference kernel width of the normalized match.
    merge : bool, default=False
        Run Merge ART at the end of ``fit``.
    merge_rho_lb, merge_rho_ub : float or None, default=None
        Layer-2 vigilances; ``None`` reuses ``rho_lb`` / ``rho_ub``.
    max_merge_iter : int, default=10

    Attributes
    ----------
    weights_ : ndarray of shape (n_categories, 2 * n_features)
    counts_ : ndarray of shape (n_categories,)
    node_of_ : ndarray of shape (n_categories,)
        Local ART (cluster) owning each category.
    labels_ : ndarray of shape (n_samples,)
        Current cluster of every sample presented so far, following any
        Merge ART unions.
    provenance_ : ndarray of shape (n_samples, 2)
        ``(node, category)`` each sample resonated with or created, as
        recorded at presentation time.
    """

    def __init__(self, rho_lb=0.7, rho_ub=0.85, method="single", alpha=0.001,
                 beta=1.0, gamma=3.0, gamma_star=1.0, merge=False,
                 merge_rho_lb=None, merge_rho_ub=None, max_merge_iter=10):
        self.rho_lb = rho_lb
        self.rho_ub = rho_ub
        self.method = method
        self.alpha = alpha
        self.beta = beta
        self.gamma = gamma
        self.gamma_star = gamma_star
        self.merge = merge
        self.merge_rho_lb = merge_rho_lb
        self.merge_rho_ub = merge_rho_ub
        self.max_merge_iter = max_merge_iter

    def _checked_params(self):
        rho_lb, rho_ub = check_dual_vigilance(self.rho_lb, self.rho_ub)
        alpha, beta, gamma, gamma_star = check_art_params(
            self.alpha, self.beta, self.gamma, self.gamma_star)
        return rho_lb, rho_ub, alpha, beta, gamma, gamma_star, LinkageMethod(self.method)

    def fit(self, X, y=None):
        for attr in ("weights_", "counts_", "node_of_", "provenance_", "_alias",
                     "_sample_ids", "n_merge_iter_"):
            self.__dict__.pop(attr, None)
        self.partial_fit(X)
        if self.merge:
            from .merge_art import merge_in_place

            merge_in_place(self, self.merge_rho_lb, self.merge_rho_ub,
                           self.max_merge_iter)
        return self

    def partial_fit(self, X, y=None):
        """Present ``X`` once, in order, continuing from the current state."""
        X = check_unit_data(X)
        I = complement_code(X)
        return self._present(I)

    def _present(self, I):
        rho_lb, rho_ub, alpha, beta, gamma, gamma_star, method = self._checked_params()
        if hasattr(self, "weights_"):
            if I.shape[1] != self.weights_.shape[1]:
                raise ValueError("X has a different number of features than the fitted model")
            W, counts, node_of = self.weights_, self.counts_, self.node_of_
        else:
            W = np.zeros((0, I.shape[1]))
            counts = np.zeros(0, dtype=np.int64)
            node_of = np.zeros(0, dtype=np.int64)
            self._alias = np.zeros(0, dtype=np.int64)
            self._sample_ids = np.zeros(0, dtype=np.int64)
            self.provenance_ = np.zeros((0, 2), dtype=np.int64)
        n_cat = W.shape[0]
        n_nodes = int(node_of.max()) + 1 if n_cat else 0
        cap = n_cat + I.shape[0]
        W, counts, node_of = (grow(a.copy(), cap) for a in (W, counts, node_of))
        assign = np.empty(I.shape[0], dtype=np.int64)
        new_cat, _ = _kernels.ddvfa_fit(
            I, W, _kernels.row_norms(W), counts, node_of, n_cat, n_nodes, rho_lb,
            rho_ub, alpha, beta, gamma, gamma_star, method.code, assign)

        # persistent ids: existing flat slots keep their alias, new slots get
        # fresh ids appended to the alias table
        flat_to_id = np.empty(new_cat, dtype=np.int64)
        flat_to_id[self._alias] = np.arange(self._alias.size)
        fresh = np.arange(n_cat, new_cat)
        flat_to_id[fresh] = self._alias.size + np.arange(fresh.size)
        self._alias = np.concatenate([self._alias, fresh])
        self._sample_ids = np.concatenate([self._sample_ids, flat_to_id[assign]])

        self.weights_ = W[:new_cat]
        self.counts_ = counts[:new_cat]
        self.node_of_ = node_of[:new_cat]
        local = self._local_index()
        self.provenance_ = np.concatenate(
            [self.provenance_, np.column_stack([self.node_of_[assign], local[assign]])])
        return self

    def _local_index(self):
        """Position of each flat category within its node."""
        local = np.empty(self.node_of_.size, dtype=np.int64)
        seen = {}
        for j, i in enumerate(self.node_of_):
            local[j] = seen.get(i, 0)
            seen[i] = local[j] + 1
        return local

    def _set_state(self, W, counts, node_of, flat_map):
        """Install a rebuilt network; ``flat_map[old_flat] = new_flat``."""
        self.weights_ = np.ascontiguousarray(W)
        self.counts_ = np.asarray(counts, dtype=np.int64)
        self.node_of_ = np.asarray(node_of, dtype=np.int64)
        self._alias = flat_map[self._alias]

    @property
    def labels_(self):
        check_is_fitted(self, "weights_")
        return self.node_of_[self._alias[self._sample_ids]]

    @property
    def n_nodes_(self):
        check_is_fitted(self, "weights_")
        return int(self.node_of_.max()) + 1 if self.node_of_.size else 0

    @property
    def n_categories_(self):
        check_is_fitted(self, "weights_")
        return int(self.weights_.shape[0])

    @property
    def nodes_(self):
        """The local ARTs, in node order, each with categories in creation order."""
        check_is_fitted(self, "weights_")
        return [LocalArt(self.weights_[self.node_of_ == i], self.counts_[self.node_of_ == i])
                for i in range(self.n_nodes_)]

    def predict(self, X):
        """Cluster whose aggregate match passes ``rho_lb`` with the highest
        activation, without learning; -1 when every cluster rejects."""
        check_is_fitted(self, "weights_")
        rho_lb, _, alpha, _, gamma, gamma_star, method = self._checked_params()
        I = complement_code(check_unit_data(X))
        W = np.ascontiguousarray(self.weights_)
        out = np.empty(I.shape[0], dtype=np.int64)
        _kernels.ddvfa_predict(I, W, _kernels.row_norms(W), self.counts_, self.node_of_,
                               W.shape[0], self.n_nodes_, rho_lb, alpha, gamma,
                               gamma_star, method.code, out)
        return out

    def merge_nodes(self, rho_lb=None, rho_ub=None, max_iter=None):
        """Run Merge ART on the current network in place; returns ``self``."""
        from .merge_art import merge_in_place

        check_is_fitted(self, "weights_")
        merge_in_place(self, rho_lb, rho_ub,
                       self.max_merge_iter if max_iter is None else max_iter)
        return self
