# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the pybackend kernels. Same signatures, same math;
serial summation order may differ from numpy by floating-point noise."""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY, exp, log1p, log2

cnp.import_array()

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x00000100000001B3

cdef cnp.uint64_t _FNV_OFFSET = 0xCBF29CE484222325ULL
cdef cnp.uint64_t _FNV_PRIME = 0x00000100000001B3ULL


cdef cnp.uint64_t _fnv1a64(const unsigned char[::1] data) nogil:
    cdef cnp.uint64_t h = _FNV_OFFSET
    cdef Py_ssize_t i
    for i in range(data.shape[0]):
        h ^= <cnp.uint64_t>data[i]
        h *= _FNV_PRIME
    return h


def fnv1a64(bytes data):
    """FNV-1a 64-bit hash (offset 14695981039346656037, prime 1099511628211)."""
    if len(data) == 0:
        return int(_FNV_OFFSET)
    return int(_fnv1a64(data))


def hash_tokens(list tokens):
    """FNV-1a 64-bit hash of each token, as a uint64 array."""
    cdef Py_ssize_t n = len(tokens)
    out = np.empty(n, dtype=np.uint64)
    cdef cnp.uint64_t[::1] view = out
    cdef Py_ssize_t i
    cdef bytes tok
    for i in range(n):
        tok = tokens[i]
        if len(tok) == 0:
            view[i] = _FNV_OFFSET
        else:
            view[i] = _fnv1a64(tok)
    return out


def sqdist(cnp.ndarray[cnp.float64_t, ndim=2] train,
           cnp.ndarray[cnp.float64_t, ndim=1] query):
    """Squared Euclidean distance from ``query`` to every training row."""
    cdef Py_ssize_t n = train.shape[0]
    cdef Py_ssize_t d = train.shape[1]
    out = np.empty(n, dtype=np.float64)
    cdef cnp.float64_t[::1] ov = out
    cdef cnp.float64_t[:, ::1] X = np.ascontiguousarray(train)
    cdef cnp.float64_t[::1] q = np.ascontiguousarray(query)
    cdef Py_ssize_t i, j
    cdef double s, diff
    with nogil:
        for i in range(n):
            s = 0.0
            for j in range(d):
                diff = X[i, j] - q[j]
                s += diff * diff
            ov[i] = s
    return out


def logreg_loss_grad(cnp.ndarray[cnp.float64_t, ndim=2] X,
                     cnp.ndarray[cnp.float64_t, ndim=1] y,
                     cnp.ndarray[cnp.float64_t, ndim=1] w,
                     double b, double lam):
    """Mean negative log-likelihood plus ridge term, with its gradient."""
    cdef Py_ssize_t n = X.shape[0]
    cdef Py_ssize_t d = X.shape[1]
    cdef cnp.float64_t[:, ::1] Xv = np.ascontiguousarray(X)
    cdef cnp.float64_t[::1] yv = np.ascontiguousarray(y)
    cdef cnp.float64_t[::1] wv = np.ascontiguousarray(w)
    gw = np.zeros(d, dtype=np.float64)
    cdef cnp.float64_t[::1] gwv = gw
    cdef double loss = 0.0, gb = 0.0
    cdef double z, p, r, nll
    cdef Py_ssize_t i, j
    with nogil:
        for i in range(n):
            z = b
            for j in range(d):
                z += Xv[i, j] * wv[j]
            if z > 0.0:
                nll = z + log1p(exp(-z)) - yv[i] * z
                p = 1.0 / (1.0 + exp(-z))
            else:
                nll = log1p(exp(z)) - yv[i] * z
                p = exp(z) / (1.0 + exp(z))
            loss += nll
            r = p - yv[i]
            gb += r
            for j in range(d):
                gwv[j] += Xv[i, j] * r
    cdef double wsq = 0.0
    for j in range(d):
        wsq += wv[j] * wv[j]
    loss = loss / n + 0.5 * lam * wsq
    for j in range(d):
        gwv[j] = gwv[j] / n + lam * wv[j]
    gb = gb / n
    return loss, gw, gb


def svm_epochs(cnp.ndarray[cnp.float64_t, ndim=2] X,
               cnp.ndarray[cnp.float64_t, ndim=1] ys,
               double lam,
               cnp.ndarray[cnp.int64_t, ndim=2] orders,
               cnp.ndarray[cnp.float64_t, ndim=1] w0,
               double b0):
    """Per-example subgradient hinge-loss updates with step size 1/(lam*t)."""
    cdef Py_ssize_t n = X.shape[0]
    cdef Py_ssize_t d = X.shape[1]
    cdef Py_ssize_t n_epochs = orders.shape[0]
    cdef cnp.float64_t[:, ::1] Xv = np.ascontiguousarray(X)
    cdef cnp.float64_t[::1] yv = np.ascontiguousarray(ys)
    cdef cnp.int64_t[:, ::1] ordv = np.ascontiguousarray(orders)
    w = w0.copy()
    objectives = np.empty(n_epochs, dtype=np.float64)
    cdef cnp.float64_t[::1] wv = w
    cdef cnp.float64_t[::1] objv = objectives
    cdef double b = b0
    cdef double eta, margin, z, hinge, shrink
    cdef Py_ssize_t t = 0, e, s, i, j
    with nogil:
        for e in range(n_epochs):
            for s in range(n):
                i = ordv[e, s]
                t += 1
                eta = 1.0 / (lam * t)
                z = b
                for j in range(d):
                    z += Xv[i, j] * wv[j]
                margin = yv[i] * z
                shrink = 1.0 - eta * lam
                for j in range(d):
                    wv[j] *= shrink
                if margin < 1.0:
                    for j in range(d):
                        wv[j] += (eta * yv[i]) * Xv[i, j]
                    b += eta * yv[i]
            hinge = 0.0
            for i in range(n):
                z = b
                for j in range(d):
                    z += Xv[i, j] * wv[j]
                if 1.0 - yv[i] * z > 0.0:
                    hinge += 1.0 - yv[i] * z
            z = 0.0
            for j in range(d):
                z += wv[j] * wv[j]
            objv[e] = 0.5 * lam * z + hinge / n
    return w, b, objectives


cdef double _entropy2(double c1, double n) nogil:
    cdef double p1 = c1 / n
    cdef double p0 = 1.0 - p1
    cdef double h = 0.0
    if p1 > 0.0:
        h -= p1 * log2(p1)
    if p0 > 0.0:
        h -= p0 * log2(p0)
    return h


# Must match pybackend.RATIO_TIE_EPS.
cdef double RATIO_TIE_EPS = 1e-12


cdef (double, double, double) _split_candidate(
        cnp.float64_t[::1] vv, cnp.int64_t[::1] lv, Py_ssize_t i,
        long c1, long total1, Py_ssize_t n, long min_leaf, double min_gain,
        double parent_h) nogil:
    """(ratio, gain, threshold) of the cut after row i, or ratio=-inf."""
    cdef double nl, nr, l1, r1, hl, hr, pl, pr, gain, split_info, ratio
    if not vv[i] < vv[i + 1]:
        return -INFINITY, 0.0, 0.0
    nl = <double>(i + 1)
    nr = <double>(n - i - 1)
    if nl < min_leaf or nr < min_leaf:
        return -INFINITY, 0.0, 0.0
    l1 = <double>c1
    r1 = <double>(total1 - c1)
    hl = _entropy2(l1, nl)
    hr = _entropy2(r1, nr)
    pl = nl / n
    pr = nr / n
    gain = parent_h - pl * hl - pr * hr
    if gain < min_gain:
        return -INFINITY, 0.0, 0.0
    split_info = -(pl * log2(pl)) - (pr * log2(pr))
    if split_info > 0.0:
        ratio = gain / split_info
    else:
        ratio = 0.0
    return ratio, gain, (vv[i] + vv[i + 1]) / 2.0


def best_split_feature(cnp.ndarray[cnp.float64_t, ndim=1] values,
                       cnp.ndarray[cnp.int64_t, ndim=1] labels,
                       long min_leaf, double min_gain):
    """Best binary split of one (ascending-sorted) feature.

    Returns (gain_ratio, gain, threshold); ratio -1.0 when nothing is legal.
    Among candidates within RATIO_TIE_EPS of the best ratio, the lowest
    threshold wins.
    """
    cdef Py_ssize_t n = values.shape[0]
    cdef cnp.float64_t[::1] vv = np.ascontiguousarray(values)
    cdef cnp.int64_t[::1] lv = np.ascontiguousarray(labels)
    cdef long total1 = 0
    cdef Py_ssize_t i
    for i in range(n):
        total1 += lv[i]
    cdef double parent_h = _entropy2(<double>total1, <double>n)
    cdef double max_ratio = -INFINITY
    cdef double ratio, gain, thr
    cdef long c1 = 0
    with nogil:
        for i in range(n - 1):
            c1 += lv[i]
            ratio, gain, thr = _split_candidate(
                vv, lv, i, c1, total1, n, min_leaf, min_gain, parent_h)
            if ratio > max_ratio:
                max_ratio = ratio
        if max_ratio != -INFINITY:
            c1 = 0
            for i in range(n - 1):
                c1 += lv[i]
                ratio, gain, thr = _split_candidate(
                    vv, lv, i, c1, total1, n, min_leaf, min_gain, parent_h)
                if ratio >= max_ratio - RATIO_TIE_EPS:
                    break
    if max_ratio == -INFINITY:
        return -1.0, 0.0, 0.0
    return ratio, gain, thr
