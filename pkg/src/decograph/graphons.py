"""Analytic decorated graphons and seeded sampling of decorated graphs.

A decorated graphon assigns every latent pair (x, y) in [0,1]^2 a
probability vector over the decoration labels.  Three built-in analytic
families (``W1``, ``W2``, ``W3``) cover a two-layer multiplex coding
with four labels; piecewise-constant truths over a k x k block grid are
available for planted-model experiments; arbitrary component formulas
can be supplied programmatically.

Sampling is bit-reproducible: latent positions and pair labels are drawn
from a Philox4x64-10 counter-based generator keyed by the seed, uniforms
use numpy's 53-bit mantissa construction, and labels come from the
inverse CDF over the fixed decoration ordering (ties to the lower index,
final interval absorbing rounding slack).  Variates are consumed in a
fixed order: n latents first, then one uniform per pair (i < j) in
lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .decorations import DecoratedGraph, DecorationSpace, binary_label_space

_SEED_MASK = 0xFFFFFFFFFFFFFFFF


class OutOfDomain(ValueError):
    """Coordinate outside the [0,1] evaluation domain."""


@dataclass(frozen=True)
class SsmParams:
    """Piecewise-constant truth: k x k blocks grouped into s shapes."""

    k: int
    shape_map: np.ndarray
    Q: np.ndarray

    def __post_init__(self):
        shape_map = np.array(self.shape_map, dtype=np.int64)
        Q = np.array(self.Q, dtype=np.float64)
        if shape_map.shape != (self.k, self.k):
            raise ValueError(f"shape_map must be {self.k} x {self.k}")
        if not np.array_equal(shape_map, shape_map.T):
            raise ValueError("shape_map must be symmetric")
        s = Q.shape[0]
        if set(np.unique(shape_map)) != set(range(s)):
            raise ValueError("shape_map must use every shape index in [0, s)")
        if (Q < 0).any() or np.abs(Q.sum(axis=1) - 1.0).max() > 1e-9:
            raise ValueError("Q rows must lie on the probability simplex")
        shape_map.setflags(write=False)
        Q.setflags(write=False)
        object.__setattr__(self, "shape_map", shape_map)
        object.__setattr__(self, "Q", Q)

    @property
    def num_shapes(self) -> int:
        return self.Q.shape[0]


@dataclass(frozen=True)
class GraphonSpec:
    """A decorated graphon: analytic component formulas or a block truth.

    ``component_formulas`` holds one numpy-vectorized symmetric function
    per label; ``normalization`` turns the raw component values into a
    probability vector ("none" trusts the formulas, "sum" divides by the
    component sum, "softmax" exponentiates with max subtraction).
    ``alpha`` is the smoothness exponent attributed to the spec; it only
    steers experiment configuration, nothing verifies it analytically.
    """

    id: str
    decoration_space: DecorationSpace
    component_formulas: tuple[Callable, ...] | None = None
    normalization: str = "none"
    alpha: float | None = None
    ssm_params: SsmParams | None = None

    def __post_init__(self):
        if self.normalization not in ("none", "sum", "softmax"):
            raise ValueError(f"unknown normalization {self.normalization!r}")
        if (self.component_formulas is None) == (self.ssm_params is None):
            raise ValueError("spec needs component formulas or ssm_params, not both")
        if self.component_formulas is not None:
            if len(self.component_formulas) != self.decoration_space.size:
                raise ValueError("one component formula per decoration label")
            object.__setattr__(
                self, "component_formulas", tuple(self.component_formulas)
            )
        else:
            if self.ssm_params.Q.shape[1] != self.decoration_space.size:
                raise ValueError("Q rows must have one entry per decoration label")

    @property
    def num_labels(self) -> int:
        return self.decoration_space.size


@dataclass(frozen=True)
class SampleResult:
    """A sampled decorated graph with its latents and conditional law."""

    graph: DecoratedGraph
    xi: np.ndarray
    theta_true: np.ndarray
    seed: int

    def __post_init__(self):
        xi = np.array(self.xi, dtype=np.float64)
        theta = np.array(self.theta_true, dtype=np.float64)
        xi.setflags(write=False)
        theta.setflags(write=False)
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "theta_true", theta)


def _w1_components():
    return (
        lambda x, y: (1 - np.minimum(x, y)) * (1 - np.abs(x - y)),
        lambda x, y: np.abs(x - y) * (1 - np.minimum(x, y)),
        lambda x, y: np.minimum(x, y) * (1 - np.abs(x - y)),
        lambda x, y: np.minimum(x, y) * np.abs(x - y),
    )


def _w2_components():
    return (
        lambda x, y: np.sqrt(np.abs(x - y)),
        lambda x, y: np.exp(-0.5 * np.abs(x - y)),
        lambda x, y: np.minimum(x, y),
        lambda x, y: np.exp(-np.minimum(x, y) ** 0.75),
    )


def _w3_components():
    # products parenthesized so evaluation is bitwise symmetric in (x, y)
    return (
        lambda x, y: 3 * (x * y),
        lambda x, y: 3 * (np.sin(2 * np.pi * x) * np.sin(2 * np.pi * y)),
        lambda x, y: np.exp(-3 * ((x - 0.5) ** 2 + (y - 0.5) ** 2)),
        lambda x, y: 2 - 3 * (x + y),
    )


def w1_spec() -> GraphonSpec:
    """Two independent layers with marginals |x-y| and min(x,y)."""
    return GraphonSpec(
        id="W1",
        decoration_space=binary_label_space(2),
        component_formulas=_w1_components(),
        normalization="none",
        alpha=1.0,
    )


def w2_spec() -> GraphonSpec:
    """Dependent two-layer family, components normalized by their sum."""
    return GraphonSpec(
        id="W2",
        decoration_space=binary_label_space(2),
        component_formulas=_w2_components(),
        normalization="sum",
        alpha=0.5,
    )


def w3_spec() -> GraphonSpec:
    """Dependent two-layer family, components passed through a softmax."""
    return GraphonSpec(
        id="W3",
        decoration_space=binary_label_space(2),
        component_formulas=_w3_components(),
        normalization="softmax",
        alpha=1.0,
    )


def ssm_spec(
    k: int,
    shape_map,
    Q,
    decoration_space: DecorationSpace | None = None,
    alpha: float | None = None,
) -> GraphonSpec:
    """Piecewise-constant truth on a k x k grid of 1/k blocks."""
    params = SsmParams(k=k, shape_map=shape_map, Q=Q)
    if decoration_space is None:
        decoration_space = DecorationSpace(
            labels=tuple(range(params.Q.shape[1])), zero_index=0
        )
    return GraphonSpec(
        id="SSM",
        decoration_space=decoration_space,
        ssm_params=params,
        alpha=alpha,
    )


def custom_spec(
    component_formulas: Sequence[Callable],
    decoration_space: DecorationSpace,
    normalization: str = "none",
    alpha: float | None = None,
) -> GraphonSpec:
    """Spec from user-supplied numpy-vectorized symmetric formulas."""
    return GraphonSpec(
        id="custom",
        decoration_space=decoration_space,
        component_formulas=tuple(component_formulas),
        normalization=normalization,
        alpha=alpha,
    )


_BUILTIN_SPECS = {"W1": w1_spec, "W2": w2_spec, "W3": w3_spec}


def _block_index(k: int, coords: np.ndarray) -> np.ndarray:
    # ceil(k * x) as a 1-based block, clamped so x = 0 lands in block 1
    idx = np.ceil(k * coords).astype(np.int64)
    return np.clip(idx, 1, k) - 1


def eval_many(spec: GraphonSpec, x, y) -> np.ndarray:
    """Evaluate the graphon on broadcastable coordinate arrays.

    Returns an array of shape ``broadcast(x, y).shape + (L,)``.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    for arr in (x, y):
        if arr.size and ((arr < 0).any() or (arr > 1).any()):
            raise OutOfDomain("coordinates must lie in [0, 1]")
    if spec.ssm_params is not None:
        params = spec.ssm_params
        bx = _block_index(params.k, x)
        by = _block_index(params.k, y)
        return params.Q[params.shape_map[bx, by]]
    x, y = np.broadcast_arrays(x, y)
    raw = np.stack(
        [np.broadcast_to(f(x, y), x.shape) for f in spec.component_formulas],
        axis=-1,
    ).astype(np.float64)
    if spec.normalization == "none":
        return raw
    if spec.normalization == "sum":
        total = raw.sum(axis=-1, keepdims=True)
        if (total < 1e-12).any():
            raise ValueError("component sum vanished; cannot normalize")
        return raw / total
    shifted = raw - raw.max(axis=-1, keepdims=True)
    expd = np.exp(shifted)
    return expd / expd.sum(axis=-1, keepdims=True)


def eval_graphon(spec: GraphonSpec, x: float, y: float) -> np.ndarray:
    """Probability vector of the graphon at a single point of [0,1]^2."""
    if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
        raise OutOfDomain(f"({x}, {y}) outside [0,1]^2")
    return eval_many(spec, np.float64(x), np.float64(y)).reshape(-1)


def theta_matrix(spec: GraphonSpec, xi) -> np.ndarray:
    """Conditional label probabilities for every node pair.

    Entry (i, j, :) is the graphon at (xi_i, xi_j); diagonal slices hold
    the one-hot vector at the zero label (bookkeeping only, excluded
    from every loss).
    """
    xi = np.asarray(xi, dtype=np.float64)
    if xi.size and ((xi < 0).any() or (xi > 1).any()):
        raise OutOfDomain("latent positions must lie in [0, 1]")
    theta = eval_many(spec, xi[:, None], xi[None, :]).copy()
    n = xi.shape[0]
    L = spec.num_labels
    diag = np.zeros(L)
    diag[spec.decoration_space.zero_index] = 1.0
    theta[np.arange(n), np.arange(n)] = diag
    return theta


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed & _SEED_MASK))


def sample_labels(theta: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Inverse-CDF draw of label indices from rows of probabilities.

    The cumulative sums follow the decoration ordering; a uniform that
    hits a boundary exactly takes the lower index, and the final label
    absorbs any rounding slack in the cumulative sum.
    """
    cum = np.cumsum(theta, axis=-1)
    labels = (cum < u[..., None]).sum(axis=-1)
    return np.minimum(labels, theta.shape[-1] - 1)


def sample_graph(spec: GraphonSpec, n: int, seed: int) -> SampleResult:
    """Draw a decorated graph of size n from the graphon.

    Latents are i.i.d. uniform; each pair's label is drawn from the
    graphon at the pair's latents and mirrored below the diagonal.
    Identical (spec, n, seed) gives bit-identical output.
    """
    if n < 2:
        raise ValueError("need at least two nodes")
    rng = _rng(seed)
    xi = rng.random(n)
    rows, cols = np.triu_indices(n, k=1)
    theta_pairs = eval_many(spec, xi[rows], xi[cols])
    u = rng.random(rows.shape[0])
    labels = sample_labels(theta_pairs, u)
    entries = np.zeros((n, n), dtype=np.int64)
    entries[rows, cols] = labels
    entries = entries + entries.T
    np.fill_diagonal(entries, spec.decoration_space.zero_index)
    graph = DecoratedGraph(decoration_space=spec.decoration_space, entries=entries)
    return SampleResult(
        graph=graph, xi=xi, theta_true=theta_matrix(spec, xi), seed=seed
    )


def _labels_to_json(space: DecorationSpace) -> list:
    return [list(lab) if isinstance(lab, tuple) else lab for lab in space.labels]


def _labels_from_json(labels: list) -> tuple:
    return tuple(tuple(lab) if isinstance(lab, list) else lab for lab in labels)


def spec_to_json_dict(spec: GraphonSpec) -> dict:
    """JSON document for a spec; custom formula specs do not serialize."""
    if spec.id in _BUILTIN_SPECS:
        return {"id": spec.id, "alpha": spec.alpha}
    if spec.id == "SSM":
        return {
            "id": "SSM",
            "alpha": spec.alpha,
            "decoration_labels": _labels_to_json(spec.decoration_space),
            "zero_index": spec.decoration_space.zero_index,
            "ssm_params": {
                "k": spec.ssm_params.k,
                "shape_map": spec.ssm_params.shape_map.tolist(),
                "Q": spec.ssm_params.Q.tolist(),
            },
        }
    raise ValueError(f"spec {spec.id!r} is only available programmatically")


def spec_from_json_dict(doc: dict) -> GraphonSpec:
    """Rebuild a spec from its JSON document; extra keys are ignored."""
    spec_id = doc["id"]
    if spec_id in _BUILTIN_SPECS:
        spec = _BUILTIN_SPECS[spec_id]()
        if doc.get("alpha") is not None:
            spec = GraphonSpec(
                id=spec.id,
                decoration_space=spec.decoration_space,
                component_formulas=spec.component_formulas,
                normalization=spec.normalization,
                alpha=float(doc["alpha"]),
            )
        return spec
    if spec_id == "SSM":
        params = doc["ssm_params"]
        space = None
        if "decoration_labels" in doc:
            space = DecorationSpace(
                labels=_labels_from_json(doc["decoration_labels"]),
                zero_index=doc.get("zero_index", 0),
            )
        return ssm_spec(
            k=params["k"],
            shape_map=params["shape_map"],
            Q=params["Q"],
            decoration_space=space,
            alpha=doc.get("alpha"),
        )
    raise ValueError(f"unknown graphon id {spec_id!r}")
