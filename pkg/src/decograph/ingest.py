"""Multiplex network ingestion from weighted edge lists.

Each layer is a TSV file ``source<TAB>target<TAB>weight`` with a
mandatory header line, read as undirected (duplicate or reversed entries
keep the maximum weight).  Layers are binarized by a per-layer weight
threshold first, node sets are then intersected across layers, and
finally nodes failing the minimum-degree requirement in any layer are
removed in passes until the filter is stable, since one removal can drag
neighbors below the bar.  Every step is logged in the provenance so the
preprocessing is auditable.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np


class ParseError(ValueError):
    """A malformed edge-list line; carries file and line number."""

    def __init__(self, path, line_number: int, reason: str):
        self.path = str(path)
        self.line_number = line_number
        super().__init__(f"{path}:{line_number}: {reason}")


class EmptyAfterFilter(ValueError):
    """Preprocessing removed every node."""


@dataclass(frozen=True)
class IngestionConfig:
    """Per-layer file paths, binarization thresholds, and degree filter."""

    layer_files: tuple[str, ...]
    binarize_thresholds: tuple[float, ...]
    min_degree: int = 2
    num_layers: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "layer_files", tuple(self.layer_files))
        object.__setattr__(
            self, "binarize_thresholds", tuple(float(t) for t in self.binarize_thresholds)
        )
        if len(self.layer_files) != len(self.binarize_thresholds):
            raise ValueError("one threshold per layer file")
        if any(t < 0 for t in self.binarize_thresholds):
            raise ValueError("thresholds must be nonnegative")
        if self.min_degree < 0:
            raise ValueError("min_degree must be nonnegative")
        if self.num_layers is not None and self.num_layers != len(self.layer_files):
            raise ValueError("num_layers does not match the layer files")


@dataclass(frozen=True)
class MultiplexDataset:
    """Binary layers on a common node set plus the preprocessing log."""

    node_ids: tuple[str, ...]
    layers: tuple[np.ndarray, ...]
    provenance: tuple[str, ...]

    def __post_init__(self):
        layers = tuple(np.array(layer, dtype=np.int64) for layer in self.layers)
        for layer in layers:
            layer.setflags(write=False)
        object.__setattr__(self, "node_ids", tuple(self.node_ids))
        object.__setattr__(self, "layers", layers)
        object.__setattr__(self, "provenance", tuple(self.provenance))

    @property
    def n(self) -> int:
        return len(self.node_ids)


def _read_edge_list(path) -> dict[tuple[str, str], float]:
    """Undirected weighted edges, duplicates resolved by maximum weight."""
    edges: dict[tuple[str, str], float] = {}
    with open(path, "r", encoding="utf-8") as handle:
        header = handle.readline()
        if header == "":
            raise ParseError(path, 1, "missing header line")
        for lineno, line in enumerate(handle, start=2):
            line = line.rstrip("\n").rstrip("\r")
            if line == "":
                continue
            fields = line.split("\t")
            if len(fields) != 3:
                raise ParseError(path, lineno, f"expected 3 tab-separated fields, got {len(fields)}")
            source, target, weight_text = fields
            if source == "" or target == "":
                raise ParseError(path, lineno, "empty node identifier")
            try:
                weight = float(weight_text)
            except ValueError:
                raise ParseError(path, lineno, f"bad weight {weight_text!r}") from None
            if source == target:
                continue
            key = (source, target) if source < target else (target, source)
            edges[key] = max(weight, edges.get(key, float("-inf")))
    return edges


def ingest_multiplex(config: IngestionConfig) -> MultiplexDataset:
    """Read, binarize, intersect, and degree-filter a multiplex dataset."""
    provenance: list[str] = []
    kept_edges: list[set[tuple[str, str]]] = []
    node_sets: list[set[str]] = []
    for path, threshold in zip(config.layer_files, config.binarize_thresholds):
        edges = _read_edge_list(path)
        kept = {pair for pair, w in edges.items() if w >= threshold}
        provenance.append(
            f"layer {Path(path).name}: {len(edges)} edges read, "
            f"{len(kept)} kept at weight >= {threshold:g}"
        )
        kept_edges.append(kept)
        node_sets.append({node for pair in kept for node in pair})

    common = set.intersection(*node_sets) if node_sets else set()
    provenance.append(f"common node set across layers: {len(common)} nodes")
    if not common:
        raise EmptyAfterFilter("no node appears in every layer")

    node_ids = sorted(common)
    index = {node: i for i, node in enumerate(node_ids)}
    n = len(node_ids)
    layers = []
    for kept in kept_edges:
        mat = np.zeros((n, n), dtype=np.int64)
        for a, b in kept:
            ia = index.get(a)
            ib = index.get(b)
            if ia is None or ib is None:
                continue
            mat[ia, ib] = 1
            mat[ib, ia] = 1
        layers.append(mat)

    alive = np.ones(n, dtype=bool)
    pass_number = 0
    while True:
        pass_number += 1
        degrees = np.stack([
            (layer[alive][:, alive]).sum(axis=1) for layer in layers
        ])
        low = (degrees < config.min_degree).any(axis=0)
        if not low.any():
            break
        removed = [node_ids[i] for i, cut in zip(np.flatnonzero(alive), low) if cut]
        provenance.append(
            f"degree filter pass {pass_number}: removed {len(removed)} nodes "
            f"({', '.join(removed)})"
        )
        alive[np.flatnonzero(alive)[low]] = False
        if not alive.any():
            raise EmptyAfterFilter(
                f"degree filter (min_degree={config.min_degree}) removed every node"
            )
    kept_idx = np.flatnonzero(alive)
    provenance.append(
        f"degree filter stable after {pass_number} pass(es): {kept_idx.size} nodes kept"
    )
    final_layers = tuple(layer[np.ix_(kept_idx, kept_idx)] for layer in layers)
    final_ids = tuple(node_ids[i] for i in kept_idx)
    return MultiplexDataset(
        node_ids=final_ids, layers=final_layers, provenance=tuple(provenance)
    )
