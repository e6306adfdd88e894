"""VAT ordering: a Prim-style traversal of a dissimilarity matrix."""

import numpy as np
from scipy.spatial.distance import pdist, squareform


def pairwise_dissimilarity(data):
    """Euclidean distance matrix of the rows of ``data``."""
    try:
        X = np.asarray(data, dtype=np.float64)
    except ValueError:
        raise ValueError("all vectors must have the same dimension") from None
    if X.ndim == 1 and X.size == 0:
        return np.zeros((0, 0))
    if X.ndim != 2:
        raise ValueError("all vectors must have the same dimension")
    return squareform(pdist(X)) if X.shape[0] > 1 else np.zeros((X.shape[0],) * 2)


def vat_order(D):
    """Visiting order of the VAT reordering of ``D``.

    Starts from the first row holding the largest entry, then repeatedly
    appends the unvisited point closest to any visited one.  Ties go to the
    lowest index.
    """
    D = np.asarray(D, dtype=np.float64)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {D.shape}")
    n = D.shape[0]
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    order = np.empty(n, dtype=np.int64)
    order[0] = int(np.argmax(D)) // n
    visited = np.zeros(n, dtype=bool)
    visited[order[0]] = True
    # nearest distance of every point to the visited set
    near = D[order[0]].copy()
    for k in range(1, n):
        cand = np.where(visited, np.inf, near)
        j = int(np.argmin(cand))
        order[k] = j
        visited[j] = True
        np.minimum(near, D[j], out=near)
    return order


def vat_reorder(D):
    """The reordered matrix ``D[p][:, p]`` together with ``p``."""
    p = vat_order(D)
    D = np.asarray(D, dtype=np.float64)
    return D[np.ix_(p, p)], p
