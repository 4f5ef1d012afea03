"""Supervised Optimum-Path Forest on the complete graph.

Training finds prototypes at the class boundaries of the minimum spanning
tree, then runs a Dijkstra-like competition under the f_max path cost (the
largest edge weight along the path). Classification assigns a sample the
label of the training node minimizing ``max(cost(s), d(s, sample))``.

Edge weights are squared Euclidean distances. f_max only ever compares and
takes maxima, so the resulting forest, labels and predictions are the same as
with plain Euclidean weights; :attr:`OpfModel.costs` reports the Euclidean
values. Ties (MST key, queue pop, classification argmin) go to the lowest
node index.

Every kernel has a numba and a numpy implementation with the same arithmetic
order, so both backends produce bit-identical results. The active one is
chosen by ``HYPERFS_DISABLE_NUMBA`` (see :mod:`hyperfs._accel`).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _accel
from ._accel import njit


class DegenerateTrainingSet(ValueError):
    """Raised when the training set does not contain at least two classes."""


# --------------------------------------------------------------------------
# numba kernels

@njit(cache=True)
def _sqdist(X, i, Y, j):
    s = 0.0
    for k in range(X.shape[1]):
        d = X[i, k] - Y[j, k]
        s += d * d
    return s


@njit(cache=True)
def _prototypes_numba(X, y):
    n = X.shape[0]
    key = np.full(n, np.inf)
    parent = np.full(n, -1, dtype=np.int64)
    in_tree = np.zeros(n, dtype=np.bool_)
    key[0] = 0.0
    for _ in range(n):
        u = -1
        best = np.inf
        for v in range(n):
            if not in_tree[v] and (u == -1 or key[v] < best):
                best = key[v]
                u = v
        in_tree[u] = True
        for v in range(n):
            if not in_tree[v]:
                d = _sqdist(X, u, X, v)
                if d < key[v]:
                    key[v] = d
                    parent[v] = u
    proto = np.zeros(n, dtype=np.bool_)
    for v in range(1, n):
        p = parent[v]
        if y[v] != y[p]:
            proto[v] = True
            proto[p] = True
    return proto, parent


@njit(cache=True)
def _train_numba(X, y, proto):
    n = X.shape[0]
    cost = np.full(n, np.inf)
    label = y.copy()
    pred = np.full(n, -1, dtype=np.int64)
    done = np.zeros(n, dtype=np.bool_)
    order = np.empty(n, dtype=np.int64)
    for i in range(n):
        if proto[i]:
            cost[i] = 0.0
    for it in range(n):
        s = -1
        best = np.inf
        for v in range(n):
            if not done[v] and (s == -1 or cost[v] < best):
                best = cost[v]
                s = v
        done[s] = True
        order[it] = s
        cs = cost[s]
        for t in range(n):
            if not done[t] and cost[t] > cs:
                tmp = max(cs, _sqdist(X, s, X, t))
                if tmp < cost[t]:
                    cost[t] = tmp
                    label[t] = label[s]
                    pred[t] = s
    return cost, label, pred, order


@njit(cache=True)
def _classify_numba(X, cost, label, order, Q):
    n = order.shape[0]
    out = np.empty(Q.shape[0], dtype=label.dtype)
    for q in range(Q.shape[0]):
        best = np.inf
        bi = -1
        for k in range(n):
            s = order[k]
            if cost[s] > best:
                break
            tmp = max(cost[s], _sqdist(X, s, Q, q))
            if tmp < best or (tmp == best and s < bi):
                best = tmp
                bi = s
        out[q] = label[bi]
    return out


# --------------------------------------------------------------------------
# numpy kernels

def _sqdist_matrix(A, B):
    # feature-sequential accumulation matches _sqdist bit for bit
    out = np.zeros((A.shape[0], B.shape[0]))
    for k in range(A.shape[1]):
        d = A[:, k, None] - B[None, :, k]
        out += d * d
    return out


def _argmin_open(values, closed):
    masked = np.where(closed, np.inf, values)
    i = int(np.argmin(masked))
    if closed[i]:
        i = int(np.flatnonzero(~closed)[0])
    return i


def _prototypes_numpy(X, y):
    n = X.shape[0]
    W = _sqdist_matrix(X, X)
    key = np.full(n, np.inf)
    parent = np.full(n, -1, dtype=np.int64)
    in_tree = np.zeros(n, dtype=bool)
    key[0] = 0.0
    for _ in range(n):
        u = _argmin_open(key, in_tree)
        in_tree[u] = True
        better = ~in_tree & (W[u] < key)
        key[better] = W[u][better]
        parent[better] = u
    proto = np.zeros(n, dtype=bool)
    v = np.arange(1, n)
    cross = y[v] != y[parent[v]]
    proto[v[cross]] = True
    proto[parent[v[cross]]] = True
    return proto, parent


def _train_numpy(X, y, proto):
    n = X.shape[0]
    W = _sqdist_matrix(X, X)
    cost = np.where(proto, 0.0, np.inf)
    label = y.copy()
    pred = np.full(n, -1, dtype=np.int64)
    done = np.zeros(n, dtype=bool)
    order = np.empty(n, dtype=np.int64)
    for it in range(n):
        s = _argmin_open(cost, done)
        done[s] = True
        order[it] = s
        tmp = np.maximum(cost[s], W[s])
        better = ~done & (cost > cost[s]) & (tmp < cost)
        cost[better] = tmp[better]
        label[better] = label[s]
        pred[better] = s
    return cost, label, pred, order


def _classify_numpy(X, cost, label, order, Q):
    if Q.shape[0] == 0:
        return np.empty(0, dtype=label.dtype)
    # argmin over node index gives the lowest-index tie rule directly
    tmp = np.maximum(cost[None, :], _sqdist_matrix(Q, X))
    return label[np.argmin(tmp, axis=1)]


def _kernels(use_numba):
    if use_numba is None:
        use_numba = _accel.USE_NUMBA
    if use_numba:
        return _prototypes_numba, _train_numba, _classify_numba
    return _prototypes_numpy, _train_numpy, _classify_numpy


# --------------------------------------------------------------------------
# public API

@dataclass(frozen=True)
class OpfModel:
    nodes: np.ndarray
    true_labels: np.ndarray
    labels: np.ndarray
    sq_costs: np.ndarray
    predecessor: np.ndarray
    ordered_nodes: np.ndarray
    prototypes: np.ndarray
    mask: np.ndarray | None = None

    @property
    def costs(self) -> np.ndarray:
        return np.sqrt(self.sq_costs)

    @property
    def n_nodes(self) -> int:
        return self.nodes.shape[0]


def _prepare(X, y=None, mask=None):
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    if mask is not None:
        mask = np.asarray(mask, dtype=bool)
        X = X[:, mask]
    X = np.ascontiguousarray(X)
    if y is None:
        return X, mask
    y = np.ascontiguousarray(y, dtype=np.int64)
    if y.shape[0] != X.shape[0]:
        raise ValueError(f"{X.shape[0]} samples but {y.shape[0]} labels")
    return X, y, mask


def find_prototypes(X, y, mask=None, use_numba=None) -> np.ndarray:
    """Indices of MST nodes with a neighbour of another class."""
    X, y, _ = _prepare(X, y, mask)
    if np.unique(y).size < 2:
        raise DegenerateTrainingSet("training set needs at least two classes")
    proto, _ = _kernels(use_numba)[0](X, y)
    return np.flatnonzero(proto)


def train(X, y, mask=None, use_numba=None, prototypes=None) -> OpfModel:
    """Fit an OPF model; ``prototypes`` overrides the MST rule when given."""
    X, y, mask = _prepare(X, y, mask)
    find, fit, _ = _kernels(use_numba)
    if prototypes is None:
        if np.unique(y).size < 2:
            raise DegenerateTrainingSet("training set needs at least two classes")
        proto, _ = find(X, y)
    else:
        proto = np.zeros(X.shape[0], dtype=bool)
        proto[np.asarray(prototypes, dtype=np.int64)] = True
    cost, label, pred, order = fit(X, y, proto)
    return OpfModel(nodes=X, true_labels=y, labels=label, sq_costs=cost, predecessor=pred,
                    ordered_nodes=order, prototypes=np.flatnonzero(proto), mask=mask)


def classify(model: OpfModel, samples, mask=None, use_numba=None) -> np.ndarray:
    """Predict labels for a batch of samples (restricted by ``mask``)."""
    if mask is None:
        mask = model.mask
    Q, _ = _prepare(samples, mask=mask)
    if Q.shape[1] != model.nodes.shape[1]:
        raise ValueError(f"model has {model.nodes.shape[1]} features, samples have {Q.shape[1]}")
    _, _, predict = _kernels(use_numba)
    return predict(model.nodes, model.sq_costs, model.labels, model.ordered_nodes, Q)


def balanced_accuracy(y_true, y_pred) -> float:
    """OPF-literature accuracy: one minus the mean per-class error rate.

    For every class both the false-positive rate (over samples of the other
    classes) and the false-negative rate (over samples of the class) are
    accumulated and the sum is normalized by the number of terms, 2C when
    every class occurs. Terms with an empty denominator are skipped.
    """
    y_true = np.asarray(y_true)
    y_pred = np.asarray(y_pred)
    n = y_true.shape[0]
    if n == 0:
        raise ValueError("accuracy of an empty test set is undefined")
    total = 0.0
    terms = 0
    for c in np.union1d(y_true, y_pred):
        is_c = y_true == c
        count = int(is_c.sum())
        if count:
            total += np.count_nonzero(is_c & (y_pred != c)) / count
            terms += 1
        if n - count:
            total += np.count_nonzero(~is_c & (y_pred == c)) / (n - count)
            terms += 1
    return 1.0 - total / terms


def plain_accuracy(y_true, y_pred) -> float:
    y_true = np.asarray(y_true)
    if y_true.shape[0] == 0:
        raise ValueError("accuracy of an empty test set is undefined")
    return float(np.mean(y_true == np.asarray(y_pred)))


def accuracy(model: OpfModel, X, y, mask=None, balanced: bool = True, use_numba=None) -> float:
    y = np.asarray(y)
    if y.shape[0] == 0:
        raise ValueError("accuracy of an empty test set is undefined")
    pred = classify(model, X, mask, use_numba)
    return balanced_accuracy(y, pred) if balanced else plain_accuracy(y, pred)
