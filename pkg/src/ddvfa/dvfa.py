import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_is_fitted

from . import _kernels
from .fuzzy_art import complement_code
from .utils import check_art_params, check_dual_vigilance, check_unit_data, grow


class DVFA(ClusterMixin, BaseEstimator):
    """Dual vigilance fuzzy ART.

    A single fuzzy ART whose categories map many-to-one onto clusters.  The
    winner is tested against ``rho_ub`` first; failing that, a match of at
    least ``rho_lb`` commits a new category inside the winner's cluster.
    Activation and match are the classic (first-order) fuzzy ART functions.

    Parameters
    ----------
    rho_lb, rho_ub : float
        Lower (cluster similarity) and upper (quantization) vigilances,
        ``0 <= rho_lb <= rho_ub <= 1``.
    alpha : float, default=0.001
    beta : float, default=1.0

    Attributes
    ----------
    weights_ : ndarray of shape (n_categories, 2 * n_features)
    counts_ : ndarray of shape (n_categories,)
    cluster_of_ : ndarray of shape (n_categories,)
        Cluster id of each category; ids are contiguous from 0.
    labels_ : ndarray of shape (n_samples,)
        Cluster returned at each sample's presentation.
    """

    def __init__(self, rho_lb=0.6, rho_ub=0.8, alpha=0.001, beta=1.0):
        self.rho_lb = rho_lb
        self.rho_ub = rho_ub
        self.alpha = alpha
        self.beta = beta

    def fit(self, X, y=None):
        for attr in ("weights_", "counts_", "cluster_of_", "labels_"):
            self.__dict__.pop(attr, None)
        return self.partial_fit(X)

    def partial_fit(self, X, y=None):
        X = check_unit_data(X)
        rho_lb, rho_ub = check_dual_vigilance(self.rho_lb, self.rho_ub)
        alpha, beta, _, _ = check_art_params(self.alpha, self.beta)
        I = complement_code(X)
        if hasattr(self, "weights_"):
            if I.shape[1] != self.weights_.shape[1]:
                raise ValueError("X has a different number of features than the fitted model")
            W, counts, cluster_of = self.weights_, self.counts_, self.cluster_of_
            prev = self.labels_
        else:
            W = np.zeros((0, I.shape[1]))
            counts = np.zeros(0, dtype=np.int64)
            cluster_of = np.zeros(0, dtype=np.int64)
            prev = np.zeros(0, dtype=np.int64)
        n_cat = W.shape[0]
        n_clusters = int(cluster_of.max()) + 1 if n_cat else 0
        cap = n_cat + I.shape[0]
        W, counts, cluster_of = (grow(a.copy(), cap) for a in (W, counts, cluster_of))
        assign = np.empty(I.shape[0], dtype=np.int64)
        n_cat, _ = _kernels.dvfa_fit(I, W, _kernels.row_norms(W), counts, cluster_of, n_cat,
                                     n_clusters, rho_lb, rho_ub, alpha, beta, assign)
        self.weights_ = W[:n_cat]
        self.counts_ = counts[:n_cat]
        self.cluster_of_ = cluster_of[:n_cat]
        self.labels_ = np.concatenate([prev, assign])
        return self

    def predict(self, X):
        """Cluster of the first category passing ``rho_lb``; -1 if none."""
        check_is_fitted(self)
        I = complement_code(check_unit_data(X))
        W = np.ascontiguousarray(self.weights_)
        cat = np.empty(I.shape[0], dtype=np.int64)
        _kernels.fa_predict(I, W, _kernels.row_norms(W), W.shape[0], float(self.rho_lb),
                            float(self.alpha), 1.0, 0.0, True, cat)
        return np.where(cat >= 0, self.cluster_of_[cat], -1)

    @property
    def n_clusters_(self):
        check_is_fitted(self)
        return int(self.cluster_of_.max()) + 1 if self.cluster_of_.size else 0
