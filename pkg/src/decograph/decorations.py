"""Finite decoration spaces, decorated graphs, and the codecs between them.

A decorated graph assigns every unordered node pair a label drawn from a
finite ordered label set.  One designated "zero" label stands for the
absence of an edge and sits on the diagonal by convention.  This module
holds the label-set algebra: one-hot encoding of the adjacency matrix,
the multiplex <-> decoration codecs (each layer becomes one bit of the
label), and the marginal/correlation reparameterization of distributions
on {0,1}^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np


class NonOneHotRow(ValueError):
    """A tensor slice that should be a one-hot vector is not."""


class DimensionMismatch(ValueError):
    """Input arrays do not share the required shape."""


class AsymmetricLayer(ValueError):
    """A layer adjacency matrix is not symmetric."""


class NotAPowerOfTwoSpace(ValueError):
    """Decoration space is not the binary-counting space {0,1}^T."""


class NotASimplexPoint(ValueError):
    """A probability vector is negative or does not sum to one."""


@dataclass(frozen=True)
class DecorationSpace:
    """Ordered finite label set with a designated zero element.

    The ordering is total and fixed: every array in the package indexes
    decorations by position in ``labels``.
    """

    labels: tuple
    zero_index: int = 0

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.labels) < 2:
            raise ValueError("decoration space needs at least two labels")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("decoration labels must be pairwise distinct")
        if not 0 <= self.zero_index < len(self.labels):
            raise ValueError(f"zero_index {self.zero_index} out of range")

    @property
    def size(self) -> int:
        return len(self.labels)


def binary_label_space(num_layers: int) -> DecorationSpace:
    """Label set {0,1}^T in binary-counting order, layer t as bit t.

    Index ``i`` maps to the tuple whose t-th entry is bit t of ``i``, so
    for two layers the order is (0,0), (1,0), (0,1), (1,1) and the
    all-zeros tuple (index 0) is the zero element.
    """
    if num_layers < 1:
        raise ValueError("need at least one layer")
    labels = tuple(
        tuple((i >> t) & 1 for t in range(num_layers))
        for i in range(2 ** num_layers)
    )
    return DecorationSpace(labels=labels, zero_index=0)


@dataclass(frozen=True)
class DecoratedGraph:
    """Symmetric n x n array of decoration indices.

    The diagonal carries ``zero_index`` by convention; all estimation
    sums downstream exclude it.
    """

    decoration_space: DecorationSpace
    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=np.int64)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise DimensionMismatch(f"entries must be square, got {entries.shape}")
        L = self.decoration_space.size
        if entries.size and (entries.min() < 0 or entries.max() >= L):
            raise ValueError("entries contain indices outside [0, L)")
        if not np.array_equal(entries, entries.T):
            raise AsymmetricLayer("decorated graph entries must be symmetric")
        if not np.all(np.diag(entries) == self.decoration_space.zero_index):
            raise ValueError("diagonal entries must equal zero_index")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class OneHotTensor:
    """n x n x L binary array, one-hot along the decoration axis.

    Construction only checks the shape; :func:`decode_one_hot` enforces
    the one-hot invariant entry by entry so malformed slices surface as
    :class:`NonOneHotRow`.
    """

    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values)
        if values.ndim != 3 or values.shape[0] != values.shape[1]:
            raise DimensionMismatch(f"values must be n x n x L, got {values.shape}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def num_labels(self) -> int:
        return self.values.shape[2]

    def label_matrix(self) -> np.ndarray:
        """Integer decoration indices, assuming the one-hot invariant."""
        return np.argmax(self.values, axis=2).astype(np.int64)


@dataclass(frozen=True)
class BivariateBernoulliParams:
    """Marginals and Pearson correlation of a distribution on {0,1}^2.

    ``rho`` is NaN and ``rho_defined`` False when a marginal is 0 or 1,
    so renderers can give degenerate cells a distinct color instead of
    silently plotting 0.
    """

    p1: float
    p2: float
    rho: float = field(default=math.nan)
    rho_defined: bool = True


def encode_one_hot(graph: DecoratedGraph) -> OneHotTensor:
    """Map each decoration index to the matching vertex of the simplex."""
    L = graph.decoration_space.size
    values = (graph.entries[:, :, None] == np.arange(L)).astype(np.int8)
    return OneHotTensor(values=values)


def decode_one_hot(tensor: OneHotTensor, space: DecorationSpace) -> DecoratedGraph:
    """Exact inverse of :func:`encode_one_hot`.

    Raises :class:`NonOneHotRow` if any (i, j) slice is not exactly a
    0/1 vector with a single 1.
    """
    values = tensor.values
    if values.shape[2] != space.size:
        raise DimensionMismatch(
            f"tensor has {values.shape[2]} labels, space has {space.size}"
        )
    binary = (values == 0) | (values == 1)
    sums = values.sum(axis=2)
    bad = ~(binary.all(axis=2) & (sums == 1))
    if bad.any():
        i, j = np.argwhere(bad)[0]
        raise NonOneHotRow(f"slice ({i}, {j}) = {values[i, j]} is not one-hot")
    entries = np.argmax(values, axis=2)
    return DecoratedGraph(decoration_space=space, entries=entries)


def multiplex_to_decorated(layers: Sequence[np.ndarray]) -> DecoratedGraph:
    """Fold T binary layers into one decorated graph.

    The label index of a pair is sum_t layer_t[i, j] * 2**t, so the
    decoration space is the binary-counting space of
    :func:`binary_label_space` and the all-zeros label is the zero
    element.
    """
    if len(layers) < 1:
        raise ValueError("need at least one layer")
    mats = [np.asarray(layer) for layer in layers]
    shape = mats[0].shape
    if len(shape) != 2 or shape[0] != shape[1]:
        raise DimensionMismatch(f"layers must be square, got {shape}")
    for t, mat in enumerate(mats):
        if mat.shape != shape:
            raise DimensionMismatch(
                f"layer {t} has shape {mat.shape}, expected {shape}"
            )
        if not np.array_equal(mat, mat.T):
            raise AsymmetricLayer(f"layer {t} is not symmetric")
        if not np.isin(mat, (0, 1)).all():
            raise ValueError(f"layer {t} is not binary")
        if np.diag(mat).any():
            raise ValueError(f"layer {t} has a nonzero diagonal")
    entries = np.zeros(shape, dtype=np.int64)
    for t, mat in enumerate(mats):
        entries += mat.astype(np.int64) << t
    return DecoratedGraph(
        decoration_space=binary_label_space(len(mats)), entries=entries
    )


def decorated_to_layers(graph: DecoratedGraph, num_layers: int) -> list[np.ndarray]:
    """Bit-extraction inverse of :func:`multiplex_to_decorated`."""
    expected = binary_label_space(num_layers)
    if graph.decoration_space.labels != expected.labels:
        raise NotAPowerOfTwoSpace(
            f"decoration space is not the {num_layers}-layer binary-counting space"
        )
    return [
        ((graph.entries >> t) & 1).astype(np.int64) for t in range(num_layers)
    ]


def bernoulli2_reparam(theta: Sequence[float]) -> BivariateBernoulliParams:
    """Reparameterize a distribution on {0,1}^2 by marginals and correlation.

    ``theta`` is ordered [00, 10, 01, 11].  p1 = theta[10] + theta[11],
    p2 = theta[01] + theta[11], and rho is the Pearson correlation
    (theta[11] - p1*p2) / sqrt(p1(1-p1)p2(1-p2)).  A degenerate marginal
    leaves rho undefined.
    """
    theta = np.asarray(theta, dtype=np.float64)
    if theta.shape != (4,):
        raise NotASimplexPoint(f"expected a probability 4-vector, got shape {theta.shape}")
    if (theta < 0).any():
        raise NotASimplexPoint("probabilities must be nonnegative")
    if abs(theta.sum() - 1.0) > 1e-9:
        raise NotASimplexPoint(f"probabilities sum to {theta.sum()!r}, not 1")
    p1 = min(max(float(theta[1] + theta[3]), 0.0), 1.0)
    p2 = min(max(float(theta[2] + theta[3]), 0.0), 1.0)
    if p1 <= 0.0 or p1 >= 1.0 or p2 <= 0.0 or p2 >= 1.0:
        return BivariateBernoulliParams(p1=p1, p2=p2, rho_defined=False)
    rho = (float(theta[3]) - p1 * p2) / math.sqrt(p1 * (1 - p1) * p2 * (1 - p2))
    return BivariateBernoulliParams(p1=p1, p2=p2, rho=rho, rho_defined=True)
