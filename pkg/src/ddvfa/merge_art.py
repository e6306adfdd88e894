"""Merge ART: post-processing that unions and compresses DDVFA clusters.

Each pass presents the trained network's local ARTs, in index order, to a
fresh layer-2 network that scores whole category sets against each other.
An accepted input is concatenated onto the winning layer-2 node.  Passes
repeat until no union happens.  Each resulting node is then compressed by a
fuzzy ART that takes the category weights, with their instance counts, as
its inputs.
"""

import copy

import numpy as np

from . import _kernels
from .ddvfa import LinkageMethod, LocalArt
from .utils import check_art_params, check_dual_vigilance


def pair_matrices(node_k, input_l, alpha=0.001, gamma=1.0, gamma_star=1.0):
    """Category-to-category activation and match between two local ARTs.

    Returns ``(T, M)`` of shape (R, C): rows are the categories of the
    receiving node ``node_k``, columns those of the presented ``input_l``.
    """
    Wk = node_k.weights
    Wl = input_l.weights
    if Wk.shape[1] != Wl.shape[1]:
        raise ValueError("local ARTs have different input dimensions")
    inter = np.minimum(Wk[:, None, :], Wl[None, :, :]).sum(axis=2)
    nk = Wk.sum(axis=1)[:, None]
    nl = Wl.sum(axis=1)[None, :]
    T = (inter / (alpha + nk)) ** gamma
    M = (nk / nl) ** gamma_star * T
    return T, M


def aggregate_pairs(T, M, method, counts_k=None, counts_l=None):
    """Reduce pair matrices to one (activation, match) with an elementwise method.

    ``weighted`` treats rows and columns as independent with priors
    proportional to the instance counts.
    """
    method = LinkageMethod(method)
    T = np.asarray(T, dtype=np.float64)
    M = np.asarray(M, dtype=np.float64)
    if method is LinkageMethod.SINGLE:
        return float(T.max()), float(M.max())
    if method is LinkageMethod.COMPLETE:
        return float(T.min()), float(M.min())
    if method is LinkageMethod.MEDIAN:
        return float(np.median(T)), float(np.median(M))
    if method is LinkageMethod.AVERAGE:
        return float(T.mean()), float(M.mean())
    if method is LinkageMethod.WEIGHTED:
        pk = np.asarray(counts_k, dtype=np.float64)
        pl = np.asarray(counts_l, dtype=np.float64)
        P = np.outer(pk / pk.sum(), pl / pl.sum())
        return float((P * T).sum()), float((P * M).sum())
    raise ValueError("the centroid method scores weights, not pair matrices")


def merge_scores(node_k, input_l, method="single", alpha=0.001, gamma=1.0,
                 gamma_star=1.0):
    """Merge activation and match of ``input_l`` against ``node_k``."""
    method = LinkageMethod(method)
    if method is LinkageMethod.CENTROID:
        ck, cl = node_k.centroid, input_l.centroid
        s = np.minimum(ck, cl).sum()
        return float((s / (alpha + ck.sum())) ** gamma), float((s / cl.sum()) ** gamma)
    T, M = pair_matrices(node_k, input_l, alpha, gamma, gamma_star)
    return aggregate_pairs(T, M, method, node_k.counts, input_l.counts)


def compress_node(node, rho, alpha=0.001, beta=1.0, gamma=1.0):
    """Compress one local ART by re-learning its categories with fuzzy ART.

    Categories are presented in order as inputs, carrying their instance
    counts, to a fresh fuzzy ART with vigilance ``rho`` and reference width 1.
    Returns ``(compressed_node, remap)`` with ``remap[old] = new`` category.
    """
    W = np.ascontiguousarray(node.weights)
    k = W.shape[0]
    out_W = np.zeros_like(W)
    out_counts = np.zeros(k, dtype=np.int64)
    remap = np.empty(k, dtype=np.int64)
    n = _kernels.fa_fit(W, node.counts.astype(np.int64), out_W, np.zeros(k),
                        out_counts, 0, float(rho), float(alpha), float(beta),
                        float(gamma), 1.0, False, remap)
    return LocalArt(out_W[:n], out_counts[:n]), remap


def _regroup(W, counts, node_of, target):
    """Reorder categories after a pass: new node, then old node, then old slot."""
    new_node = target[node_of]
    order = np.lexsort((np.arange(node_of.size), node_of, new_node))
    inv = np.empty_like(order)
    inv[order] = np.arange(order.size)
    return W[order], counts[order], new_node[order], inv


def _model_params(model, rho_lb, rho_ub):
    rho_lb = model.rho_lb if rho_lb is None else rho_lb
    rho_ub = model.rho_ub if rho_ub is None else rho_ub
    rho_lb, rho_ub = check_dual_vigilance(rho_lb, rho_ub)
    alpha, beta, gamma, gamma_star = check_art_params(
        model.alpha, model.beta, model.gamma, model.gamma_star)
    return rho_lb, rho_ub, alpha, beta, gamma, gamma_star, LinkageMethod(model.method)


def merge_pass(model, rho_lb=None):
    """One layer-2 pass over a fitted DDVFA, returned as a new model.

    Returns ``(merged, changed, node_remap)`` where ``node_remap[old_node]``
    is the node that absorbed it.  Compression is not applied.
    """
    rho_lb, _, alpha, _, gamma, gamma_star, method = _model_params(model, rho_lb, None)
    out = copy.deepcopy(model)
    if not hasattr(model, "weights_") or model.weights_.shape[0] == 0:
        return out, False, np.zeros(0, dtype=np.int64)
    W = np.ascontiguousarray(model.weights_)
    target, n_out = _kernels.merge_pass(
        W, _kernels.row_norms(W), model.counts_, model.node_of_, W.shape[0],
        model.n_nodes_, rho_lb, alpha, gamma, gamma_star, method.code)
    W, counts, node_of, inv = _regroup(W, model.counts_, model.node_of_, target)
    out._set_state(W, counts, node_of, inv)
    return out, bool(n_out < model.n_nodes_), target


def merge_in_place(model, rho_lb=None, rho_ub=None, max_iter=10):
    """Run Merge ART on ``model`` and replace its network with the result.

    Sets ``model.n_merge_iter_`` (passes run) and ``model.merge_changed_``
    (whether any union or category compression happened).
    """
    rho_lb, rho_ub, alpha, beta, gamma, gamma_star, method = _model_params(
        model, rho_lb, rho_ub)
    if max_iter < 1:
        raise ValueError(f"max_iter must be positive, got {max_iter!r}")
    W = np.ascontiguousarray(model.weights_)
    counts = model.counts_.copy()
    node_of = model.node_of_.copy()
    flat_map = np.arange(W.shape[0])
    changed = False
    n_iter = 0
    while n_iter < max_iter and W.shape[0]:
        n_nodes = int(node_of.max()) + 1
        target, n_out = _kernels.merge_pass(
            W, _kernels.row_norms(W), counts, node_of, W.shape[0], n_nodes, rho_lb,
            alpha, gamma, gamma_star, method.code)
        n_iter += 1
        if n_out == n_nodes:
            break
        changed = True
        W, counts, node_of, inv = _regroup(W, counts, node_of, target)
        W = np.ascontiguousarray(W)
        flat_map = inv[flat_map]

    blocks_W, blocks_n, blocks_node = [], [], []
    new_flat = np.empty(W.shape[0], dtype=np.int64)
    offset = 0
    n_nodes = int(node_of.max()) + 1 if node_of.size else 0
    for i in range(n_nodes):
        idx = np.flatnonzero(node_of == i)
        node, remap = compress_node(LocalArt(W[idx], counts[idx]), rho_ub, alpha,
                                    beta, gamma)
        new_flat[idx] = offset + remap
        offset += len(node)
        blocks_W.append(node.weights)
        blocks_n.append(node.counts)
        blocks_node.append(np.full(len(node), i, dtype=np.int64))
    if offset != W.shape[0]:
        changed = True
    if n_nodes:
        model._set_state(np.vstack(blocks_W), np.concatenate(blocks_n),
                         np.concatenate(blocks_node), new_flat[flat_map])
    model.n_merge_iter_ = n_iter
    model.merge_changed_ = changed
    return model


def run_merge_art(model, rho_lb=None, rho_ub=None, max_iter=10):
    """Merge ART on a copy of a fitted DDVFA; the input model is untouched.

    Layer-2 vigilances default to the model's own ``rho_lb`` / ``rho_ub``.
    """
    return merge_in_place(copy.deepcopy(model), rho_lb, rho_ub, max_iter)
