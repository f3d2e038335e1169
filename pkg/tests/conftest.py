"""Shared test helpers: brute-force oracles and planted-model builders.

The oracles here recompute quantities by definition (explicit pair
enumeration, exhaustive partition search) and stay independent of the
library code paths they check.
"""

import itertools
from math import comb

import numpy as np

from decograph import DecoratedGraph, DecorationSpace, binary_label_space


def random_decorated_graph(rng, n, L, zero_index=0):
    """Uniformly labelled symmetric graph with the diagonal convention."""
    space = DecorationSpace(labels=tuple(range(L)), zero_index=zero_index)
    entries = rng.integers(0, L, size=(n, n))
    entries = np.triu(entries, 1)
    entries = entries + entries.T
    np.fill_diagonal(entries, zero_index)
    return DecoratedGraph(decoration_space=space, entries=entries)


def direct_rss(X_values, node_labels, shape_map, Q):
    """Elementwise residual sum over ordered off-diagonal pairs."""
    n = X_values.shape[0]
    total = 0.0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            c = shape_map[node_labels[i], node_labels[j]]
            diff = X_values[i, j].astype(float) - Q[c]
            total += float((diff ** 2).sum())
    return total


def shape_means_by_enumeration(X_values, node_labels, shape_map, num_shapes):
    """Shape means over ordered off-diagonal pairs by explicit loops."""
    n, _, L = X_values.shape
    sums = np.zeros((num_shapes, L))
    counts = np.zeros(num_shapes, dtype=np.int64)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            c = shape_map[node_labels[i], node_labels[j]]
            sums[c] += X_values[i, j]
            counts[c] += 1
    return sums / counts[:, None], counts


def balanced_2partitions(n):
    """All labelings of [n] into two unlabeled groups of size n/2."""
    assert n % 2 == 0
    half = n // 2
    for combo in itertools.combinations(range(1, n), half - 1):
        labels = np.ones(n, dtype=np.int64)
        labels[0] = 0
        labels[list(combo)] = 0
        yield labels


def adjusted_rand(a, b):
    """Hubert-Arabie adjusted Rand index between two labelings."""
    a = np.asarray(a)
    b = np.asarray(b)
    cont = np.zeros((int(a.max()) + 1, int(b.max()) + 1), dtype=np.int64)
    for x, y in zip(a, b):
        cont[x, y] += 1
    sum_cells = sum(comb(int(c), 2) for c in cont.ravel())
    sum_rows = sum(comb(int(c), 2) for c in cont.sum(axis=1))
    sum_cols = sum(comb(int(c), 2) for c in cont.sum(axis=0))
    total = comb(len(a), 2)
    expected = sum_rows * sum_cols / total
    maximum = (sum_rows + sum_cols) / 2
    return (sum_cells - expected) / (maximum - expected)


def planted_ssm_graph(rng, n, shape_map, Q, planted_labels=None):
    """Exact shape-model data: balanced planted groups, pair labels from Q.

    The planted partition is deterministic (first half group 0), so
    recovery up to relabeling can be asserted exactly.
    """
    shape_map = np.asarray(shape_map)
    Q = np.asarray(Q, dtype=np.float64)
    k = shape_map.shape[0]
    if planted_labels is None:
        planted_labels = np.repeat(np.arange(k), n // k)
    rows, cols = np.triu_indices(n, 1)
    probs = Q[shape_map[planted_labels[rows], planted_labels[cols]]]
    u = rng.random(rows.size)
    labels = (np.cumsum(probs, axis=1) < u[:, None]).sum(axis=1)
    labels = np.minimum(labels, Q.shape[1] - 1)
    entries = np.zeros((n, n), dtype=np.int64)
    entries[rows, cols] = labels
    entries = entries + entries.T
    space = binary_label_space(2) if Q.shape[1] == 4 else DecorationSpace(
        labels=tuple(range(Q.shape[1]))
    )
    return DecoratedGraph(decoration_space=space, entries=entries), planted_labels
