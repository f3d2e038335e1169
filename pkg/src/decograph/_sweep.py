"""Compiled inner loop of the greedy label-switching search.

The sufficient statistics of the least-squares objective are integer
label counts per shape over unordered node pairs: with ``N[c, l]`` the
number of pairs in shape c carrying label l and ``P[c]`` the pair count,
the (unordered) residual sum of squares is

    sum_c P[c] - sum_c (sum_l N[c, l]^2) / P[c].

Exchanging the group labels of two nodes moves their incident pairs
between shapes but never changes any ``P[c]``, so a proposal's objective
change is an exact integer update of ``N`` divided by fixed counts.  The
per-node cache ``R[i, g, l]`` (number of neighbors of i in group g whose
shared pair carries label l) makes that update O(k L) per proposal
instead of O(n).
"""

import numpy as np
from numba import njit


def neighbor_counts(A, labels, k, L):
    """R[i, g, l] = count of nodes w != i in group g with A[i, w] = l."""
    n = A.shape[0]
    rows, cols = np.nonzero(~np.eye(n, dtype=bool))
    flat = rows * (k * L) + labels[cols] * L + A[rows, cols]
    return np.bincount(flat, minlength=n * k * L).reshape(n, k, L).astype(np.int64)


@njit(cache=True)
def run_sweep(A, labels, shape_map, N, pair_counts, R, proposals, tol, rss_unordered):
    """One pass over the proposed node pairs, mutating labels, N, and R.

    A swap is accepted iff the unordered RSS decreases by more than
    ``tol``; proposals whose nodes currently share a group are skipped.
    Returns the updated unordered RSS and a log with one row
    (u, v, rss_unordered_after) per accepted swap.
    """
    n = A.shape[0]
    num_shapes, L = N.shape
    k = shape_map.shape[0]
    dN = np.zeros((num_shapes, L), dtype=np.int64)
    touched = np.empty(2 * k, dtype=np.int64)
    is_touched = np.zeros(num_shapes, dtype=np.bool_)
    log = np.empty((proposals.shape[0], 3), dtype=np.float64)
    accepted = 0
    for p in range(proposals.shape[0]):
        u = proposals[p, 0]
        v = proposals[p, 1]
        a = labels[u]
        b = labels[v]
        if a == b:
            continue
        luv = A[u, v]
        ntouched = 0
        for g in range(k):
            ca = shape_map[a, g]
            cb = shape_map[b, g]
            if ca == cb:
                continue
            for l in range(L):
                uval = R[u, g, l]
                vval = R[v, g, l]
                if l == luv:
                    if g == b:
                        uval -= 1
                    if g == a:
                        vval -= 1
                d = vval - uval
                if d != 0:
                    dN[ca, l] += d
                    dN[cb, l] -= d
            if not is_touched[ca]:
                is_touched[ca] = True
                touched[ntouched] = ca
                ntouched += 1
            if not is_touched[cb]:
                is_touched[cb] = True
                touched[ntouched] = cb
                ntouched += 1
        decrease = 0.0
        for t in range(ntouched):
            c = touched[t]
            dss = 0
            for l in range(L):
                d = dN[c, l]
                if d != 0:
                    dss += d * (2 * N[c, l] + d)
            if dss != 0:
                decrease += dss / pair_counts[c]
        if decrease > tol:
            for t in range(ntouched):
                c = touched[t]
                for l in range(L):
                    N[c, l] += dN[c, l]
            for w in range(n):
                if w == u or w == v:
                    continue
                lwu = A[w, u]
                R[w, a, lwu] -= 1
                R[w, b, lwu] += 1
                lwv = A[w, v]
                R[w, b, lwv] -= 1
                R[w, a, lwv] += 1
            R[u, b, luv] -= 1
            R[u, a, luv] += 1
            R[v, a, luv] -= 1
            R[v, b, luv] += 1
            labels[u] = b
            labels[v] = a
            rss_unordered -= decrease
            log[accepted, 0] = u
            log[accepted, 1] = v
            log[accepted, 2] = rss_unordered
            accepted += 1
        for t in range(ntouched):
            c = touched[t]
            is_touched[c] = False
            for l in range(L):
                dN[c, l] = 0
    return rss_unordered, log[:accepted]
