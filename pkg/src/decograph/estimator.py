"""Least-squares fitting of decorated stochastic shape models.

The model places the n nodes into k balanced groups and assigns every
unordered group pair to one of s shapes; all node pairs in a shape share
one probability vector over the decoration labels.  For a fixed
assignment the optimal vectors are the shape means of the one-hot
adjacency tensor, which reduces the search to a combinatorial problem
over assignments.  The pipeline is: spectral start, greedy label
switching at full block resolution, agglomerative merging of blocks into
shapes along the exact least-squares (Ward) path, BIC selection of the
shape count, and a final greedy pass under the selected shapes.

Everything is deterministic given the configuration: spectral
initialization breaks ties by node index, sweep orders come from a
Philox generator keyed by derived seeds, and merge ties go to the
lowest shape-index pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from ._sweep import neighbor_counts, run_sweep
from .decorations import DecoratedGraph, DecorationSpace, OneHotTensor, encode_one_hot
from .graphons import OutOfDomain
from .seeds import derive_seed

_LIKELIHOOD_CLAMP = 1e-10


class EmptyShape(ValueError):
    """A shape has no off-diagonal node pair, so its mean is undefined."""


class KTooLarge(ValueError):
    """Requested more groups than nodes."""


class GridEmpty(ValueError):
    """The group-count search grid contains no admissible value."""


@dataclass(frozen=True)
class Assignment:
    """Balanced node-to-group map plus symmetric group-pair-to-shape map."""

    node_labels: np.ndarray
    shape_map: np.ndarray

    def __post_init__(self):
        labels = np.array(self.node_labels, dtype=np.int64)
        shape_map = np.array(self.shape_map, dtype=np.int64)
        k = shape_map.shape[0]
        if shape_map.shape != (k, k) or not np.array_equal(shape_map, shape_map.T):
            raise ValueError("shape_map must be a symmetric k x k matrix")
        if labels.ndim != 1:
            raise ValueError("node_labels must be a vector")
        sizes = np.bincount(labels, minlength=k)
        if labels.size and (labels.min() < 0 or labels.max() >= k):
            raise ValueError("node labels outside [0, k)")
        n = labels.size
        lo, hi = n // k, -(-n // k)
        if (sizes < lo).any() or (sizes > hi).any() or (sizes == 0).any():
            raise ValueError(f"group sizes {sizes.tolist()} are not balanced")
        s = int(shape_map.max()) + 1
        if set(np.unique(shape_map)) != set(range(s)):
            raise ValueError("shape_map must use every shape index in [0, s)")
        labels.setflags(write=False)
        shape_map.setflags(write=False)
        object.__setattr__(self, "node_labels", labels)
        object.__setattr__(self, "shape_map", shape_map)

    @property
    def n(self) -> int:
        return self.node_labels.size

    @property
    def k(self) -> int:
        return self.shape_map.shape[0]

    @property
    def s(self) -> int:
        return int(self.shape_map.max()) + 1


@dataclass(frozen=True)
class ShapeParams:
    """Per-shape probability vectors and ordered off-diagonal pair counts."""

    Q: np.ndarray
    counts: np.ndarray

    def __post_init__(self):
        Q = np.array(self.Q, dtype=np.float64)
        counts = np.array(self.counts, dtype=np.int64)
        Q.setflags(write=False)
        counts.setflags(write=False)
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "counts", counts)


@dataclass(frozen=True)
class FitConfig:
    """Tunables of the fitting pipeline.

    When ``k`` is unset it is either the smoothness rule
    ceil(n^(1/(alpha_hint+1))) or a BIC grid search; when ``s`` is unset
    it is picked by BIC along the merge path.  ``starts`` > 1 adds
    seeded random balanced restarts; 5 is a sensible choice for real
    data, the default keeps simulations cheap.
    """

    k: Optional[int] = None
    s: Optional[int] = None
    alpha_hint: Optional[float] = None
    max_sweeps: int = 100
    seed: int = 0
    starts: int = 1
    tolerance: float = 0.0

    def __post_init__(self):
        if self.max_sweeps < 1 or self.starts < 1:
            raise ValueError("max_sweeps and starts must be positive")
        if self.tolerance < 0:
            raise ValueError("tolerance must be nonnegative")
        if self.k is not None and self.k < 1:
            raise ValueError("k must be positive")
        if self.s is not None and self.s < 1:
            raise ValueError("s must be positive")
        if self.k is not None and self.s is not None:
            if self.s > self.k * (self.k + 1) // 2:
                raise ValueError("s cannot exceed k(k+1)/2")


@dataclass(frozen=True)
class PathEntry:
    """One model along the merge path: s shapes over the k x k blocks."""

    k: int
    block_shapes: np.ndarray
    rss: float
    s: int

    def __post_init__(self):
        block_shapes = np.array(self.block_shapes, dtype=np.int64)
        block_shapes.setflags(write=False)
        object.__setattr__(self, "block_shapes", block_shapes)

    @property
    def shape_map(self) -> np.ndarray:
        rows, cols = np.triu_indices(self.k)
        out = np.zeros((self.k, self.k), dtype=np.int64)
        out[rows, cols] = self.block_shapes
        out[cols, rows] = self.block_shapes
        return out


@dataclass(frozen=True)
class MergePath:
    """Agglomerative merge sequence for one fixed node labeling."""

    node_labels: np.ndarray
    entries: tuple[PathEntry, ...]

    def __post_init__(self):
        labels = np.array(self.node_labels, dtype=np.int64)
        labels.setflags(write=False)
        object.__setattr__(self, "node_labels", labels)
        object.__setattr__(self, "entries", tuple(self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, idx) -> PathEntry:
        return self.entries[idx]


@dataclass(frozen=True)
class Fit:
    """Fitted shape model with diagnostics.

    ``rss`` sums squared residuals over ordered off-diagonal pairs,
    ``log_likelihood`` is the categorical log-likelihood over unordered
    pairs (probabilities clamped at 1e-10), and ``node_order`` is the
    canonical display permutation: group index, then count of non-zero
    decorations, then node index.
    """

    assignment: Assignment
    params: ShapeParams
    rss: float
    log_likelihood: float
    bic: float
    decoration_space: "DecorationSpace"
    config: FitConfig
    node_order: np.ndarray
    trace: tuple[float, ...] = field(default=())

    def __post_init__(self):
        order = np.array(self.node_order, dtype=np.int64)
        order.setflags(write=False)
        object.__setattr__(self, "node_order", order)
        object.__setattr__(self, "trace", tuple(self.trace))

    @property
    def n(self) -> int:
        return self.assignment.n


def full_block_shape_map(k: int) -> np.ndarray:
    """Shape map giving every unordered group pair its own shape index.

    Indices enumerate the upper-triangular blocks in row-major order, so
    the map is already in first-appearance canonical form.
    """
    rows, cols = np.triu_indices(k)
    out = np.zeros((k, k), dtype=np.int64)
    ids = np.arange(rows.size, dtype=np.int64)
    out[rows, cols] = ids
    out[cols, rows] = ids
    return out


def _label_counts_sized(A, node_labels, shape_map, num_shapes, L):
    """Unordered-pair label counts N (s, L) and pair counts (s,) per shape."""
    rows, cols = np.triu_indices(A.shape[0], k=1)
    shapes = shape_map[node_labels[rows], node_labels[cols]]
    labs = A[rows, cols]
    N = np.bincount(shapes * L + labs, minlength=num_shapes * L).reshape(num_shapes, L)
    pair_counts = np.bincount(shapes, minlength=num_shapes)
    return N.astype(np.int64), pair_counts.astype(np.int64)


def _rss_unordered(N, pair_counts):
    nz = pair_counts > 0
    total = int(pair_counts.sum())
    return total - float(
        ((N[nz] ** 2).sum(axis=1) / pair_counts[nz]).sum()
    )


def _stats_for(X: OneHotTensor, assignment: Assignment):
    A = X.label_matrix()
    return _label_counts_sized(
        A, assignment.node_labels, assignment.shape_map,
        assignment.s, X.num_labels,
    )


def block_means(X: OneHotTensor, assignment: Assignment) -> ShapeParams:
    """Mean one-hot vector of every shape over its off-diagonal pairs."""
    N, pair_counts = _stats_for(X, assignment)
    if (pair_counts == 0).any():
        empty = int(np.argwhere(pair_counts == 0)[0, 0])
        raise EmptyShape(f"shape {empty} has no off-diagonal pair")
    Q = N / pair_counts[:, None]
    return ShapeParams(Q=Q, counts=2 * pair_counts)


def objective(X: OneHotTensor, assignment: Assignment) -> float:
    """Residual sum of squares over ordered off-diagonal pairs.

    Computed through the profile identity n(n-1) - sum_c n_c ||mean_c||^2,
    which is exact because every one-hot slice has unit norm.
    """
    N, pair_counts = _stats_for(X, assignment)
    if (pair_counts == 0).any():
        empty = int(np.argwhere(pair_counts == 0)[0, 0])
        raise EmptyShape(f"shape {empty} has no off-diagonal pair")
    return 2.0 * _rss_unordered(N, pair_counts)


def _balanced_sizes(n: int, k: int) -> np.ndarray:
    base, rem = divmod(n, k)
    return np.array([base + 1] * rem + [base] * (k - rem), dtype=np.int64)


def _labels_from_order(order: np.ndarray, k: int) -> np.ndarray:
    labels = np.empty(order.size, dtype=np.int64)
    start = 0
    for g, size in enumerate(_balanced_sizes(order.size, k)):
        labels[order[start:start + size]] = g
        start += size
    return labels


def spectral_init(X: OneHotTensor, k: int, seed: int = 0) -> np.ndarray:
    """Balanced starting labels from the decoration Gram matrix.

    Nodes are sorted by the eigenvector of the second-largest eigenvalue
    of sum_l X^(l) X^(l)^T (diagonal slices zeroed; the 1-norm of the
    slices is constant, so single layers carry no signal) and cut into k
    contiguous groups.  Deterministic; the seed is accepted for
    interface uniformity only.
    """
    n = X.n
    if k > n:
        raise KTooLarge(f"k={k} exceeds n={n}")
    if k < 1:
        raise ValueError("k must be positive")
    if k == 1:
        return np.zeros(n, dtype=np.int64)
    A = X.label_matrix()
    gram = np.zeros((n, n))
    off_diag = ~np.eye(n, dtype=bool)
    for l in range(X.num_labels):
        B = ((A == l) & off_diag).astype(np.float64)
        gram += B @ B.T
    _, vecs = np.linalg.eigh(gram)
    v = vecs[:, -2]
    nonzero = np.argwhere(np.abs(v) > 1e-12)
    if nonzero.size and v[nonzero[0, 0]] < 0:
        v = -v
    order = np.lexsort((np.arange(n), v))
    return _labels_from_order(order, k)


def greedy_swaps(
    X: OneHotTensor,
    node_labels: np.ndarray,
    shape_map: np.ndarray,
    config: FitConfig,
    trace: Optional[list] = None,
    swap_log: Optional[list] = None,
) -> np.ndarray:
    """Greedy label switching until a sweep accepts no swap.

    Each sweep proposes every node pair in a fresh seeded random order
    and exchanges the two nodes' group labels whenever that lowers the
    ordered RSS by more than ``config.tolerance``; balance is preserved
    because moves are exchanges.  ``trace`` collects the ordered RSS
    after the start and after each sweep; ``swap_log`` collects
    (u, v, ordered RSS) per accepted swap.
    """
    A = X.label_matrix()
    labels = np.array(node_labels, dtype=np.int64)
    shape_map = np.asarray(shape_map, dtype=np.int64)
    num_shapes = int(shape_map.max()) + 1
    N, pair_counts = _label_counts_sized(A, labels, shape_map, num_shapes, X.num_labels)
    if (pair_counts == 0).any():
        empty = int(np.argwhere(pair_counts == 0)[0, 0])
        raise EmptyShape(f"shape {empty} has no off-diagonal pair")
    rss_u = _rss_unordered(N, pair_counts)
    if trace is not None:
        trace.append(2.0 * rss_u)
    rows, cols = np.triu_indices(X.n, k=1)
    pairs = np.column_stack((rows, cols)).astype(np.int64)
    rng = np.random.Generator(np.random.Philox(key=config.seed & 0xFFFFFFFFFFFFFFFF))
    tol_u = config.tolerance / 2.0
    pair_counts_f = pair_counts.astype(np.float64)
    k = shape_map.shape[0]
    R = neighbor_counts(A, labels, k, X.num_labels)
    for _ in range(config.max_sweeps):
        proposals = pairs[rng.permutation(pairs.shape[0])]
        rss_u, log = run_sweep(
            A, labels, shape_map, N, pair_counts_f, R, proposals, tol_u, rss_u,
        )
        if trace is not None:
            trace.append(2.0 * rss_u)
        if swap_log is not None:
            for u, v, r in log:
                swap_log.append((int(u), int(v), 2.0 * r))
        if log.shape[0] == 0:
            break
    return labels


def merge_path(X: OneHotTensor, node_labels: np.ndarray) -> MergePath:
    """Agglomerative shape merging from full blocks down to one shape.

    Starting from one shape per unordered group pair, each step merges
    the two shapes whose pooled mean raises the RSS the least; that
    increase is n_a n_b / (n_a + n_b) * ||Q_a - Q_b||^2, the exact
    least-squares cost of the merge.  Exact ties go to the lowest shape
    index pair.  Every intermediate model is recorded with its shape
    indices relabeled by first appearance in the block scan.
    """
    A = X.label_matrix()
    labels = np.asarray(node_labels, dtype=np.int64)
    k = int(labels.max()) + 1
    shape_map = full_block_shape_map(k)
    num_blocks = k * (k + 1) // 2
    N, pair_counts = _label_counts_sized(A, labels, shape_map, num_blocks, X.num_labels)
    if (pair_counts == 0).any():
        empty = int(np.argwhere(pair_counts == 0)[0, 0])
        raise EmptyShape(f"block {empty} has no off-diagonal pair")

    # slots hold mergeable shapes; merging into the lower slot id keeps
    # slot order equal to first-appearance order, so row-major argmin on
    # the delta matrix realizes the lowest-index tie break.
    total_pairs = float(pair_counts.sum())
    N = N.astype(np.float64)
    counts = 2.0 * pair_counts.astype(np.float64)
    Q = N / pair_counts[:, None]
    active = np.ones(num_blocks, dtype=bool)
    block_slots = np.arange(num_blocks, dtype=np.int64)

    # upper-triangular merge-cost matrix plus a per-row minimum cache so
    # each step scans O(s) entries instead of O(s^2)
    delta = np.full((num_blocks, num_blocks), np.inf)
    for a in range(num_blocks):
        diff = Q[a + 1:] - Q[a]
        w = counts[a] * counts[a + 1:] / (counts[a] + counts[a + 1:])
        delta[a, a + 1:] = w * (diff ** 2).sum(axis=1)
    if num_blocks > 1:
        row_arg = np.argmin(delta, axis=1)
        row_val = delta[np.arange(num_blocks), row_arg]
    else:
        row_arg = np.zeros(1, dtype=np.int64)
        row_val = np.full(1, np.inf)

    def record(entries):
        slot_ids = np.flatnonzero(active)
        rank = np.full(num_blocks, -1, dtype=np.int64)
        rank[slot_ids] = np.arange(slot_ids.size)
        rss_u = total_pairs - float(
            ((N[slot_ids] ** 2).sum(axis=1) / pair_counts[slot_ids]).sum()
        )
        entries.append(PathEntry(
            k=k,
            block_shapes=rank[block_slots],
            rss=2.0 * rss_u,
            s=slot_ids.size,
        ))

    entries: list[PathEntry] = []
    record(entries)
    for _ in range(num_blocks - 1):
        # argmin of the row cache realizes the global lexicographic-first
        # minimum because both argmins return their first occurrence
        a = int(np.argmin(row_val))
        b = int(row_arg[a])
        N[a] += N[b]
        pair_counts[a] += pair_counts[b]
        counts[a] += counts[b]
        Q[a] = N[a] / pair_counts[a]
        active[b] = False
        block_slots[block_slots == b] = a
        delta[b, :] = np.inf
        delta[:, b] = np.inf
        row_val[b] = np.inf
        others = np.flatnonzero(active)
        others = others[others != a]
        if others.size:
            diff = Q[others] - Q[a]
            w = counts[a] * counts[others] / (counts[a] + counts[others])
            d = w * (diff ** 2).sum(axis=1)
            below = others < a
            lower = others[below]
            delta[lower, a] = d[below]
            delta[a, others[~below]] = d[~below]
            # rows whose cached minimum involved a or b must rescan; other
            # rows below a only compete against their new cost to a
            stale = np.flatnonzero(active & ((row_arg == a) | (row_arg == b)))
            for i in stale:
                row_arg[i] = int(np.argmin(delta[i]))
                row_val[i] = delta[i, row_arg[i]]
            fresh = d[below]
            better = fresh < row_val[lower]
            row_val[lower[better]] = fresh[better]
            row_arg[lower[better]] = a
            tie = (fresh == row_val[lower]) & (a < row_arg[lower])
            row_arg[lower[tie]] = a
        row_arg[a] = int(np.argmin(delta[a]))
        row_val[a] = delta[a, row_arg[a]]
        record(entries)
    return MergePath(node_labels=labels, entries=tuple(entries))


def _log_likelihood(N, pair_counts):
    nz = pair_counts > 0
    Q = np.clip(N[nz] / pair_counts[nz, None], _LIKELIHOOD_CLAMP, 1.0)
    return float((N[nz] * np.log(Q)).sum())


def select_s_bic(path: MergePath, X: OneHotTensor) -> int:
    """Index of the merge-path entry minimizing BIC; ties to smaller s.

    BIC is -2 * log-likelihood + s (L-1) log(n(n-1)/2) with the
    likelihood over unordered pairs and shape probabilities clamped at
    1e-10 so unobserved decorations stay finite.
    """
    if len(path) == 0:
        raise ValueError("merge path is empty")
    A = X.label_matrix()
    first = path[0]
    k = first.k
    shape_map = full_block_shape_map(k)
    num_blocks = k * (k + 1) // 2
    blockN, block_pairs = _label_counts_sized(
        A, path.node_labels, shape_map, num_blocks, X.num_labels
    )
    n = X.n
    L = X.num_labels
    penalty_unit = (L - 1) * math.log(n * (n - 1) / 2)
    best_idx, best_bic, best_s = -1, math.inf, -1
    for idx, entry in enumerate(path.entries):
        N = np.zeros((entry.s, L), dtype=np.int64)
        np.add.at(N, entry.block_shapes, blockN)
        pc = np.bincount(entry.block_shapes, weights=block_pairs, minlength=entry.s)
        bic = -2.0 * _log_likelihood(N, pc) + entry.s * penalty_unit
        if bic < best_bic or (bic == best_bic and entry.s < best_s):
            best_idx, best_bic, best_s = idx, bic, entry.s
    return best_idx


def _k_from_alpha(n: int, alpha: float) -> int:
    return math.ceil(n ** (1.0 / (alpha + 1.0)))


def select_k(X: OneHotTensor, config: FitConfig) -> int:
    """Group count: smoothness rule when alpha_hint is set, else grid BIC.

    The grid runs from ceil(n^(1/3)) to ceil(2 sqrt(n)) capped at n // 2
    (larger k forces singleton groups whose within-group blocks are
    empty); each candidate is fitted at full block resolution and scored
    by BIC with the block count as the shape count.  Ties go to the
    smaller k.
    """
    n = X.n
    if n < 4:
        raise ValueError("need at least four nodes")
    if config.alpha_hint is not None:
        return _k_from_alpha(n, config.alpha_hint)
    lo = math.ceil(n ** (1.0 / 3.0))
    hi = min(math.ceil(2 * math.sqrt(n)), n // 2)
    if lo > hi:
        raise GridEmpty(f"no admissible group count in [{lo}, {hi}]")
    L = X.num_labels
    penalty_unit = (L - 1) * math.log(n * (n - 1) / 2)
    best_k, best_bic = -1, math.inf
    for k in range(lo, hi + 1):
        labels = spectral_init(X, k, config.seed)
        shape_map = full_block_shape_map(k)
        cfg = replace(config, seed=derive_seed(config.seed, 0xB1C, k))
        labels = greedy_swaps(X, labels, shape_map, cfg)
        N, pc = _label_counts_sized(X.label_matrix(), labels, shape_map,
                                    k * (k + 1) // 2, L)
        bic = -2.0 * _log_likelihood(N, pc) + (k * (k + 1) // 2) * penalty_unit
        if bic < best_bic:
            best_k, best_bic = k, bic
    return best_k


def _random_balanced_labels(n: int, k: int, seed: int) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(key=seed & 0xFFFFFFFFFFFFFFFF))
    return _labels_from_order(rng.permutation(n).astype(np.int64), k)


def canonical_node_order(graph_entries: np.ndarray, zero_index: int,
                         node_labels: np.ndarray) -> np.ndarray:
    """Display permutation: group, then non-zero decoration count, then index."""
    n = graph_entries.shape[0]
    stat = (graph_entries != zero_index).sum(axis=1)
    return np.lexsort((np.arange(n), stat, node_labels))


def fit(graph: DecoratedGraph, config: FitConfig = FitConfig()) -> Fit:
    """Full fitting pipeline on a decorated graph.

    Runs encode -> (select k) -> spectral start -> greedy at full blocks
    -> merge path -> (select s) -> final greedy pass -> shape means, for
    each restart; the restart with the lowest RSS wins, ties to the
    earliest.  Deterministic for a fixed (graph, config).
    """
    n = graph.n
    if n < 4:
        raise ValueError("need at least four nodes")
    X = encode_one_hot(graph)
    if config.k is not None:
        if config.k > n:
            raise KTooLarge(f"k={config.k} exceeds n={n}")
        k = config.k
    else:
        k = select_k(X, config)
    if config.s is not None and config.s > k * (k + 1) // 2:
        raise ValueError("s cannot exceed k(k+1)/2 for the selected k")
    full_map = full_block_shape_map(k)

    best = None
    for r in range(config.starts):
        seed_r = derive_seed(config.seed, r)
        if r == 0:
            labels0 = spectral_init(X, k, seed_r)
        else:
            labels0 = _random_balanced_labels(n, k, seed_r)
        trace: list[float] = []
        cfg_blocks = replace(config, seed=derive_seed(seed_r, 1))
        labels1 = greedy_swaps(X, labels0, full_map, cfg_blocks, trace)
        path = merge_path(X, labels1)
        if config.s is None:
            idx = select_s_bic(path, X)
        else:
            idx = len(path) - config.s
        entry = path[idx]
        shape_map = entry.shape_map
        cfg_shapes = replace(config, seed=derive_seed(seed_r, 2))
        labels2 = greedy_swaps(X, labels1, shape_map, cfg_shapes, trace)
        assignment = Assignment(node_labels=labels2, shape_map=shape_map)
        N, pc = _stats_for(X, assignment)
        rss = 2.0 * _rss_unordered(N, pc)
        if best is None or rss < best[0]:
            best = (rss, assignment, N, pc, trace)

    rss, assignment, N, pc, trace = best
    if (pc == 0).any():
        empty = int(np.argwhere(pc == 0)[0, 0])
        raise EmptyShape(f"shape {empty} has no off-diagonal pair")
    params = ShapeParams(Q=N / pc[:, None], counts=2 * pc)
    ll = _log_likelihood(N, pc)
    L = X.num_labels
    bic = -2.0 * ll + assignment.s * (L - 1) * math.log(n * (n - 1) / 2)
    order = canonical_node_order(
        graph.entries, graph.decoration_space.zero_index, assignment.node_labels
    )
    return Fit(
        assignment=assignment,
        params=params,
        rss=rss,
        log_likelihood=ll,
        bic=bic,
        decoration_space=graph.decoration_space,
        config=config,
        node_order=order,
        trace=tuple(trace),
    )


def estimate_function(fit_result: Fit, x: float, y: float) -> np.ndarray:
    """Fitted graphon value at (x, y] coordinates in (0, 1].

    Constant on each 1/n x 1/n cell under the fit's canonical node
    order; cells on the diagonal return the one-hot vector of the zero
    label.
    """
    if not (0.0 < x <= 1.0 and 0.0 < y <= 1.0):
        raise OutOfDomain(f"({x}, {y}) outside (0,1]^2")
    n = fit_result.n
    i = fit_result.node_order[math.ceil(n * x) - 1]
    j = fit_result.node_order[math.ceil(n * y) - 1]
    if i == j:
        out = np.zeros(fit_result.params.Q.shape[1])
        out[fit_result.decoration_space.zero_index] = 1.0
        return out
    labels = fit_result.assignment.node_labels
    shape = fit_result.assignment.shape_map[labels[i], labels[j]]
    return fit_result.params.Q[shape].copy()
