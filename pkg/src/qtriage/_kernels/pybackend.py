"""Pure-Python (numpy) implementations of the hot kernels.

Mirrors the compiled ``_native`` extension function-for-function; the two
backends agree to floating-point noise (summation order may differ) and are
selected in ``qtriage._kernels``.
"""

from __future__ import annotations

import numpy as np

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x00000100000001B3
_MASK64 = 0xFFFFFFFFFFFFFFFF


def fnv1a64(data: bytes) -> int:
    """FNV-1a 64-bit hash (offset 14695981039346656037, prime 1099511628211)."""
    h = FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * FNV_PRIME) & _MASK64
    return h


def hash_tokens(tokens: list[bytes]) -> np.ndarray:
    """FNV-1a 64-bit hash of each token, as a uint64 array."""
    out = np.empty(len(tokens), dtype=np.uint64)
    for i, tok in enumerate(tokens):
        out[i] = fnv1a64(tok)
    return out


def sqdist(train: np.ndarray, query: np.ndarray) -> np.ndarray:
    """Squared Euclidean distance from ``query`` to every training row."""
    diff = train - query
    return np.einsum("ij,ij->i", diff, diff)


def logreg_loss_grad(X, y, w, b, lam):
    """Mean negative log-likelihood plus ridge term, with its gradient.

    Returns (loss, grad_w, grad_b). The bias is not regularized.
    """
    n = X.shape[0]
    z = X @ w + b
    # log(1 + e^z) - y*z, computed stably
    nll = np.logaddexp(0.0, z) - y * z
    loss = nll.sum() / n + 0.5 * lam * (w @ w)
    p = 1.0 / (1.0 + np.exp(-np.abs(z)))
    p = np.where(z >= 0.0, p, 1.0 - p)
    r = p - y
    grad_w = X.T @ r / n + lam * w
    grad_b = r.sum() / n
    return loss, grad_w, grad_b


def svm_epochs(X, ys, lam, orders, w, b):
    """Per-example subgradient hinge-loss updates with step size 1/(lam*t).

    ``ys`` holds -1/+1 targets, ``orders`` one visit order per epoch.
    Mutates (a copy of) w; returns (w, b, objective-at-end-of-each-epoch).
    """
    w = w.copy()
    b = float(b)
    n_epochs = orders.shape[0]
    objectives = np.empty(n_epochs, dtype=np.float64)
    t = 0
    for e in range(n_epochs):
        for i in orders[e]:
            t += 1
            eta = 1.0 / (lam * t)
            margin = ys[i] * (X[i] @ w + b)
            w *= 1.0 - eta * lam
            if margin < 1.0:
                w += (eta * ys[i]) * X[i]
                b += eta * ys[i]
        hinge = np.maximum(0.0, 1.0 - ys * (X @ w + b))
        objectives[e] = 0.5 * lam * (w @ w) + hinge.sum() / X.shape[0]
    return w, b, objectives


def _entropy2(c1, n):
    """Binary entropy (bits) of positive-count-c1-of-n arrays; 0log0 = 0."""
    p1 = c1 / n
    p0 = 1.0 - p1
    h = np.zeros(np.shape(p1), dtype=np.float64)
    m1 = p1 > 0.0
    m0 = p0 > 0.0
    h[m1] -= p1[m1] * np.log2(p1[m1])
    h[m0] -= p0[m0] * np.log2(p0[m0])
    return h


def _entropy2_scalar(c1: float, n: float) -> float:
    p1 = c1 / n
    p0 = 1.0 - p1
    h = 0.0
    if p1 > 0.0:
        h -= p1 * np.log2(p1)
    if p0 > 0.0:
        h -= p0 * np.log2(p0)
    return h


# Gain ratios closer than this are treated as ties (and broken toward the
# lowest threshold / feature index), so the choice is stable under the
# float-noise differences between backends.
RATIO_TIE_EPS = 1e-12


def best_split_feature(values, labels, min_leaf, min_gain):
    """Best binary split of one feature, already sorted ascending by value.

    Candidate thresholds are midpoints between consecutive distinct values
    with at least ``min_leaf`` rows on each side and information gain at
    least ``min_gain``. Returns (gain_ratio, gain, threshold); ratio is -1.0
    when no candidate is legal. Among candidates within RATIO_TIE_EPS of the
    best ratio, the lowest threshold wins.
    """
    n = values.shape[0]
    total1 = int(labels.sum())
    parent_h = _entropy2_scalar(float(total1), float(n))
    cum1 = np.cumsum(labels)
    sizes = np.arange(1, n, dtype=np.float64)  # left-side size at cut i+1
    distinct = values[:-1] < values[1:]
    legal = distinct & (sizes >= min_leaf) & ((n - sizes) >= min_leaf)
    if not legal.any():
        return -1.0, 0.0, 0.0
    nl = sizes[legal]
    nr = n - nl
    l1 = cum1[:-1][legal].astype(np.float64)
    r1 = total1 - l1
    hl = _entropy2(l1, nl)
    hr = _entropy2(r1, nr)
    pl = nl / n
    pr = nr / n
    gain = parent_h - pl * hl - pr * hr
    split_info = -(pl * np.log2(pl)) - (pr * np.log2(pr))
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(split_info > 0.0, gain / split_info, 0.0)
    eligible = gain >= min_gain
    if not eligible.any():
        return -1.0, 0.0, 0.0
    ratio = np.where(eligible, ratio, -np.inf)
    best = int(np.argmax(ratio))
    pick = int(np.flatnonzero(ratio >= ratio[best] - RATIO_TIE_EPS)[0])
    cut_idx = np.flatnonzero(legal)[pick]
    thr = (values[cut_idx] + values[cut_idx + 1]) / 2.0
    return float(ratio[pick]), float(gain[pick]), float(thr)
