"""Compiled inner loops for the fuzzy ART family.

All state lives in preallocated flat arrays: ``W`` (capacity x 2d weights),
``wnorm`` (cached L1 norms), ``counts`` (instance counts) and, for the
modular networks, ``node_of`` (owning node of each category).  Callers size
the arrays so that every presented sample can commit one new category.

Sequential search with resets is evaluated as "highest activation among the
candidates that pass vigilance".  Match values do not depend on which other
candidates were reset, so the two formulations pick the same winner; strict
``>`` over ascending indices gives the lowest index on activation ties.
"""

import numpy as np
from numba import njit

SINGLE, COMPLETE, MEDIAN, AVERAGE, WEIGHTED, CENTROID = range(6)


@njit(cache=True)
def l1(v):
    s = 0.0
    for i in range(v.shape[0]):
        s += v[i]
    return s


@njit(cache=True)
def min_l1(a, b):
    s = 0.0
    for i in range(a.shape[0]):
        s += a[i] if a[i] < b[i] else b[i]
    return s


@njit(cache=True)
def row_norms(W):
    out = np.empty(W.shape[0])
    for j in range(W.shape[0]):
        out[j] = l1(W[j])
    return out


@njit(cache=True)
def category_scores(W, wnorm, n_cat, x, xnorm, alpha, gamma, gamma_star, raw_match, T, M):
    for j in range(n_cat):
        s = min_l1(W[j], x)
        T[j] = (s / (alpha + wnorm[j])) ** gamma
        if raw_match:
            M[j] = (s / xnorm) ** gamma
        else:
            M[j] = (wnorm[j] / xnorm) ** gamma_star * T[j]


@njit(cache=True)
def _median(v, k):
    s = np.sort(v[:k])
    if k % 2 == 1:
        return s[k // 2]
    return 0.5 * (s[k // 2 - 1] + s[k // 2])


@njit(cache=True)
def node_scores(T, M, W, counts, node_of, n_cat, n_nodes, method,
                x, xnorm, alpha, gamma, nT, nM):
    """Aggregate per-category scores into one (activation, match) per node."""
    size = np.zeros(n_nodes, dtype=np.int64)
    total = np.zeros(n_nodes)
    for j in range(n_cat):
        size[node_of[j]] += 1
        total[node_of[j]] += counts[j]

    if method == SINGLE:
        nT[:n_nodes] = -np.inf
        nM[:n_nodes] = -np.inf
        for j in range(n_cat):
            i = node_of[j]
            if T[j] > nT[i]:
                nT[i] = T[j]
            if M[j] > nM[i]:
                nM[i] = M[j]
    elif method == COMPLETE:
        nT[:n_nodes] = np.inf
        nM[:n_nodes] = np.inf
        for j in range(n_cat):
            i = node_of[j]
            if T[j] < nT[i]:
                nT[i] = T[j]
            if M[j] < nM[i]:
                nM[i] = M[j]
    elif method == AVERAGE or method == WEIGHTED:
        nT[:n_nodes] = 0.0
        nM[:n_nodes] = 0.0
        for j in range(n_cat):
            i = node_of[j]
            p = 1.0 / size[i] if method == AVERAGE else counts[j] / total[i]
            nT[i] += p * T[j]
            nM[i] += p * M[j]
    elif method == MEDIAN:
        start = np.zeros(n_nodes + 1, dtype=np.int64)
        for i in range(n_nodes):
            start[i + 1] = start[i] + size[i]
        fill = start[:n_nodes].copy()
        bufT = np.empty(n_cat)
        bufM = np.empty(n_cat)
        for j in range(n_cat):
            i = node_of[j]
            bufT[fill[i]] = T[j]
            bufM[fill[i]] = M[j]
            fill[i] += 1
        for i in range(n_nodes):
            nT[i] = _median(bufT[start[i]:start[i + 1]], size[i])
            nM[i] = _median(bufM[start[i]:start[i + 1]], size[i])
    else:
        wc = np.ones((n_nodes, W.shape[1]))
        for j in range(n_cat):
            i = node_of[j]
            for l in range(W.shape[1]):
                if W[j, l] < wc[i, l]:
                    wc[i, l] = W[j, l]
        for i in range(n_nodes):
            s = min_l1(wc[i], x)
            nT[i] = (s / (alpha + l1(wc[i]))) ** gamma
            nM[i] = (s / xnorm) ** gamma


@njit(cache=True)
def _learn(W, wnorm, j, x, beta):
    for l in range(W.shape[1]):
        m = x[l] if x[l] < W[j, l] else W[j, l]
        W[j, l] = (1.0 - beta) * W[j, l] + beta * m
    wnorm[j] = l1(W[j])


@njit(cache=True)
def fa_fit(X, n_in, W, wnorm, counts, n_cat, rho, alpha, beta, gamma,
           gamma_star, raw_match, assign):
    """Present the rows of ``X`` to a fuzzy ART; ``n_in`` are their counts.

    Returns the new number of categories; ``assign`` receives the category
    that absorbed each row.
    """
    T = np.empty(W.shape[0])
    M = np.empty(W.shape[0])
    for s in range(X.shape[0]):
        x = X[s]
        xnorm = l1(x)
        category_scores(W, wnorm, n_cat, x, xnorm, alpha, gamma, gamma_star,
                        raw_match, T, M)
        J = -1
        best = -np.inf
        for j in range(n_cat):
            if M[j] >= rho and T[j] > best:
                best = T[j]
                J = j
        if J >= 0:
            _learn(W, wnorm, J, x, beta)
            counts[J] += n_in[s]
        else:
            J = n_cat
            W[J] = x
            wnorm[J] = xnorm
            counts[J] = n_in[s]
            n_cat += 1
        assign[s] = J
    return n_cat


@njit(cache=True)
def fa_predict(X, W, wnorm, n_cat, rho, alpha, gamma, gamma_star, raw_match, out):
    T = np.empty(max(n_cat, 1))
    M = np.empty(max(n_cat, 1))
    for s in range(X.shape[0]):
        x = X[s]
        category_scores(W, wnorm, n_cat, x, l1(x), alpha, gamma, gamma_star,
                        raw_match, T, M)
        J = -1
        best = -np.inf
        for j in range(n_cat):
            if M[j] >= rho and T[j] > best:
                best = T[j]
                J = j
        out[s] = J


@njit(cache=True)
def dvfa_fit(X, W, wnorm, counts, cluster_of, n_cat, n_clusters, rho_lb,
             rho_ub, alpha, beta, assign):
    """Dual vigilance fuzzy ART over the rows of ``X`` (standard Eqs., gamma=1).

    The first category in activation order with match >= rho_lb decides:
    it learns when its match also clears rho_ub, otherwise a new category
    joins its cluster.  ``assign`` receives the cluster of each sample.
    """
    T = np.empty(W.shape[0])
    M = np.empty(W.shape[0])
    for s in range(X.shape[0]):
        x = X[s]
        xnorm = l1(x)
        category_scores(W, wnorm, n_cat, x, xnorm, alpha, 1.0, 0.0, True, T, M)
        J = -1
        best = -np.inf
        for j in range(n_cat):
            if M[j] >= rho_lb and T[j] > best:
                best = T[j]
                J = j
        if J >= 0 and M[J] >= rho_ub:
            _learn(W, wnorm, J, x, beta)
            counts[J] += 1
            assign[s] = cluster_of[J]
            continue
        if J >= 0:
            c = cluster_of[J]
        else:
            c = n_clusters
            n_clusters += 1
        W[n_cat] = x
        wnorm[n_cat] = xnorm
        counts[n_cat] = 1
        cluster_of[n_cat] = c
        n_cat += 1
        assign[s] = c
    return n_cat, n_clusters


@njit(cache=True)
def ddvfa_fit(X, W, wnorm, counts, node_of, n_cat, n_nodes, rho_lb, rho_ub,
              alpha, beta, gamma, gamma_star, method, assign):
    """One pass of the distributed dual vigilance network over ``X``.

    ``assign`` receives the flat index of the category each sample touched.
    Returns ``(n_cat, n_nodes)``.
    """
    cap = W.shape[0]
    T = np.empty(cap)
    M = np.empty(cap)
    nT = np.empty(cap)
    nM = np.empty(cap)
    for s in range(X.shape[0]):
        x = X[s]
        xnorm = l1(x)
        category_scores(W, wnorm, n_cat, x, xnorm, alpha, gamma, gamma_star,
                        False, T, M)
        node_scores(T, M, W, counts, node_of, n_cat, n_nodes, method, x, xnorm,
                    alpha, gamma, nT, nM)
        I = -1
        best = -np.inf
        for i in range(n_nodes):
            if nM[i] >= rho_lb and nT[i] > best:
                best = nT[i]
                I = i
        J = -1
        if I >= 0:
            best = -np.inf
            for j in range(n_cat):
                if node_of[j] == I and M[j] >= rho_ub and T[j] > best:
                    best = T[j]
                    J = j
        if J >= 0:
            _learn(W, wnorm, J, x, beta)
            counts[J] += 1
        else:
            if I < 0:
                I = n_nodes
                n_nodes += 1
            J = n_cat
            W[J] = x
            wnorm[J] = xnorm
            counts[J] = 1
            node_of[J] = I
            n_cat += 1
        assign[s] = J
    return n_cat, n_nodes


@njit(cache=True)
def ddvfa_predict(X, W, wnorm, counts, node_of, n_cat, n_nodes, rho_lb, alpha,
                  gamma, gamma_star, method, out):
    cap = max(n_cat, 1)
    T = np.empty(cap)
    M = np.empty(cap)
    nT = np.empty(max(n_nodes, 1))
    nM = np.empty(max(n_nodes, 1))
    for s in range(X.shape[0]):
        x = X[s]
        xnorm = l1(x)
        category_scores(W, wnorm, n_cat, x, xnorm, alpha, gamma, gamma_star,
                        False, T, M)
        node_scores(T, M, W, counts, node_of, n_cat, n_nodes, method, x, xnorm,
                    alpha, gamma, nT, nM)
        I = -1
        best = -np.inf
        for i in range(n_nodes):
            if nM[i] >= rho_lb and nT[i] > best:
                best = nT[i]
                I = i
        out[s] = I


@njit(cache=True)
def block_scores(W, wnorm, counts, rows, cols, wc_row, wc_col, method, alpha,
                 gamma, gamma_star):
    """Merge activation and match between two category sets.

    ``rows`` index the categories of the receiving (layer-2) node, ``cols``
    those of the presented (layer-1) node.
    """
    if method == CENTROID:
        s = min_l1(wc_row, wc_col)
        return ((s / (alpha + l1(wc_row))) ** gamma,
                (s / l1(wc_col)) ** gamma)
    R = rows.shape[0]
    C = cols.shape[0]
    nr = 0.0
    nc = 0.0
    for a in range(R):
        nr += counts[rows[a]]
    for b in range(C):
        nc += counts[cols[b]]
    bufT = np.empty(R * C)
    bufM = np.empty(R * C)
    accT = 0.0
    accM = 0.0
    for a in range(R):
        i = rows[a]
        for b in range(C):
            j = cols[b]
            t = (min_l1(W[j], W[i]) / (alpha + wnorm[i])) ** gamma
            m = (wnorm[i] / wnorm[j]) ** gamma_star * t
            bufT[a * C + b] = t
            bufM[a * C + b] = m
            if method == WEIGHTED:
                p = (counts[i] / nr) * (counts[j] / nc)
                accT += p * t
                accM += p * m
    k = R * C
    if method == SINGLE:
        return bufT.max(), bufM.max()
    if method == COMPLETE:
        return bufT.min(), bufM.min()
    if method == AVERAGE:
        return bufT.sum() / k, bufM.sum() / k
    if method == MEDIAN:
        return _median(bufT, k), _median(bufM, k)
    return accT, accM


@njit(cache=True)
def merge_pass(W, wnorm, counts, node_of, n_cat, n_nodes, rho_lb, alpha,
               gamma, gamma_star, method):
    """Present every node, in index order, to a fresh layer-2 network.

    Returns ``(target, n_out)`` where ``target[l]`` is the layer-2 node that
    absorbed (or was created from) layer-1 node ``l``.
    """
    D = W.shape[1]
    size = np.zeros(n_nodes, dtype=np.int64)
    for j in range(n_cat):
        size[node_of[j]] += 1
    start = np.zeros(n_nodes + 1, dtype=np.int64)
    for i in range(n_nodes):
        start[i + 1] = start[i] + size[i]
    members = np.empty(n_cat, dtype=np.int64)
    fill = start[:n_nodes].copy()
    for j in range(n_cat):
        i = node_of[j]
        members[fill[i]] = j
        fill[i] += 1
    wc = np.ones((n_nodes, D))
    for j in range(n_cat):
        i = node_of[j]
        for l in range(D):
            if W[j, l] < wc[i, l]:
                wc[i, l] = W[j, l]

    # layer-2 node k holds the categories out_members[k][:out_size[k]]
    out_members = np.empty((n_nodes, n_cat), dtype=np.int64)
    out_size = np.zeros(n_nodes, dtype=np.int64)
    out_wc = np.ones((n_nodes, D))
    target = np.empty(n_nodes, dtype=np.int64)
    n_out = 0
    for l in range(n_nodes):
        cols = members[start[l]:start[l + 1]]
        K = -1
        best = -np.inf
        for k in range(n_out):
            t, m = block_scores(W, wnorm, counts, out_members[k, :out_size[k]],
                                cols, out_wc[k], wc[l], method, alpha, gamma,
                                gamma_star)
            if m >= rho_lb and t > best:
                best = t
                K = k
        if K < 0:
            K = n_out
            n_out += 1
        for b in range(cols.shape[0]):
            out_members[K, out_size[K]] = cols[b]
            out_size[K] += 1
        for d in range(D):
            if wc[l, d] < out_wc[K, d]:
                out_wc[K, d] = wc[l, d]
        target[l] = K
    return target, n_out
