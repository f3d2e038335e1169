"""Experiment drivers: simulation-rate studies and real-data fits.

Every artifact (CSV, JSON, SVG) is a pure function of the experiment
configuration: per-run seeds derive from the master seed through
SplitMix64 chaining, rows are emitted in a fixed order, floats are
written with 17 significant digits, and newlines are LF.  Partial result
files are removed if a run fails midway.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .decorations import multiplex_to_decorated
from .estimator import Fit, FitConfig, fit
from .graphons import (
    GraphonSpec,
    sample_graph,
    spec_from_json_dict,
    spec_to_json_dict,
)
from .heatmap import emit_heatmap
from .ingest import IngestionConfig, ingest_multiplex
from .metrics import (
    EvaluationReport,
    correlation_surface,
    mise_oracle,
    mse,
    rate_reference,
    theta_hat_matrix,
)
from .seeds import derive_seed

MODES = ("rate-study", "fit", "sample")


@dataclass(frozen=True)
class ExperimentConfig:
    """Declarative description of one experiment run."""

    mode: str
    output_dir: str
    graphon: Optional[GraphonSpec] = None
    n_grid: tuple[int, ...] = ()
    repetitions: int = 1
    seed: int = 0
    alpha: Optional[float] = None
    k: Optional[int] = None
    s: Optional[int] = None
    starts: int = 1
    compute_mise: bool = False
    mise_grid: int = 200
    ingestion: Optional[IngestionConfig] = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        object.__setattr__(self, "n_grid", tuple(int(n) for n in self.n_grid))
        if any(b <= a for a, b in zip(self.n_grid, self.n_grid[1:])):
            raise ValueError("n_grid must be strictly increasing")
        if self.repetitions < 1:
            raise ValueError("repetitions must be at least 1")

    @classmethod
    def from_json_dict(cls, doc: dict) -> "ExperimentConfig":
        ingestion = None
        if "ingestion" in doc:
            block = doc["ingestion"]
            ingestion = IngestionConfig(
                layer_files=tuple(block["layer_files"]),
                binarize_thresholds=tuple(block["binarize_thresholds"]),
                min_degree=int(block.get("min_degree", 2)),
                num_layers=block.get("num_layers"),
            )
        graphon = None
        if "graphon" in doc:
            graphon = spec_from_json_dict(doc["graphon"])
        return cls(
            mode=doc["mode"],
            output_dir=doc.get("output_dir", "."),
            graphon=graphon,
            n_grid=tuple(doc.get("n_grid", ())),
            repetitions=int(doc.get("repetitions", 1)),
            seed=int(doc.get("seed", 0)),
            alpha=doc.get("alpha"),
            k=doc.get("k"),
            s=doc.get("s"),
            starts=int(doc.get("starts", 1)),
            compute_mise=bool(doc.get("compute_mise", False)),
            mise_grid=int(doc.get("mise_grid", 200)),
            ingestion=ingestion,
        )

    @classmethod
    def from_json_file(cls, path) -> "ExperimentConfig":
        with open(path, "r", encoding="utf-8") as handle:
            return cls.from_json_dict(json.load(handle))


def _json_token(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, (list, tuple, np.ndarray)):
        items = value.tolist() if isinstance(value, np.ndarray) else value
        return "[" + ",".join(_json_token(v) for v in items) + "]"
    if isinstance(value, dict):
        parts = (f"{json.dumps(k)}:{_json_token(v)}" for k, v in value.items())
        return "{" + ",".join(parts) + "}"
    raise TypeError(f"cannot serialize {type(value)!r}")


def _write_json(doc: dict, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(_json_token(doc))
        handle.write("\n")


def fit_to_json_dict(fit_result: Fit) -> dict:
    """Key-by-key JSON view of a fit; floats carry 17 significant digits."""
    cfg = fit_result.config
    return {
        "n": fit_result.n,
        "L": fit_result.params.Q.shape[1],
        "k": fit_result.assignment.k,
        "s": fit_result.assignment.s,
        "node_labels": fit_result.assignment.node_labels,
        "shape_map": [row for row in fit_result.assignment.shape_map],
        "Q": [row for row in fit_result.params.Q],
        "counts": fit_result.params.counts,
        "rss": fit_result.rss,
        "log_likelihood": fit_result.log_likelihood,
        "bic": fit_result.bic,
        "seed": cfg.seed,
        "node_order": fit_result.node_order,
        "config": {
            "k": cfg.k,
            "s": cfg.s,
            "alpha_hint": cfg.alpha_hint,
            "max_sweeps": cfg.max_sweeps,
            "seed": cfg.seed,
            "starts": cfg.starts,
            "tolerance": cfg.tolerance,
        },
    }


def run_rate_study(config: ExperimentConfig) -> tuple[Path, Path]:
    """Sample, fit, and score every (n, repetition) cell of the study.

    Writes one CSV row per cell plus a per-n summary (mean, standard
    error, and the ratio of the mean to the smoothness-rate yardstick).
    Returns the two file paths.
    """
    if config.graphon is None:
        raise ValueError("rate-study needs a graphon spec")
    spec = config.graphon
    alpha = config.alpha if config.alpha is not None else spec.alpha
    if alpha is None:
        raise ValueError("rate-study needs a smoothness exponent")
    if not config.n_grid:
        raise ValueError("rate-study needs a nonempty n_grid")

    reports: list[EvaluationReport] = []
    for n in config.n_grid:
        for rep in range(config.repetitions):
            seed = derive_seed(config.seed, n, rep)
            sample = sample_graph(spec, n, seed)
            k = config.k if config.k is not None else math.ceil(
                n ** (1.0 / (alpha + 1.0))
            )
            fit_cfg = FitConfig(k=k, s=config.s, seed=seed, starts=config.starts)
            fit_result = fit(sample.graph, fit_cfg)
            err = mse(theta_hat_matrix(fit_result), sample.theta_true)
            mise = None
            if config.compute_mise:
                mise = mise_oracle(fit_result, spec, sample.xi, config.mise_grid)
            reports.append(EvaluationReport(
                n=n, L=spec.num_labels, k=k, s=fit_result.assignment.s,
                alpha=alpha, seed=seed, mse=err,
                rate_reference=rate_reference(n, alpha), mise=mise,
            ))

    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    results_path = out_dir / "results.csv"
    summary_path = out_dir / "summary.csv"
    try:
        with open(results_path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(EvaluationReport.csv_header() + "\n")
            for report in reports:
                handle.write(report.csv_row() + "\n")
        with open(summary_path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write("n,mean_mse,stderr_mse,ratio_vs_rate\n")
            for n in config.n_grid:
                errs = np.array([r.mse for r in reports if r.n == n])
                mean = float(errs.mean())
                stderr = float(errs.std(ddof=1) / math.sqrt(errs.size)) if errs.size > 1 else 0.0
                ratio = mean / rate_reference(n, alpha)
                handle.write(",".join([
                    str(n), format(mean, ".17g"), format(stderr, ".17g"),
                    format(ratio, ".17g"),
                ]) + "\n")
    except BaseException:
        for path in (results_path, summary_path):
            if path.exists():
                os.unlink(path)
        raise
    return results_path, summary_path


def _label_slug(label) -> str:
    if isinstance(label, tuple):
        return "".join(str(bit) for bit in label)
    return str(label)


def fit_dataset(config: ExperimentConfig) -> dict[str, Path]:
    """Ingest a multiplex dataset, fit it, and emit all artifacts.

    Writes the fit JSON, one probability heatmap per decoration, the
    marginal and correlation heatmaps for two-layer data, and a CSV
    mapping each node to its group and the group's shape indices.
    """
    if config.ingestion is None:
        raise ValueError("fit mode needs an ingestion block")
    dataset = ingest_multiplex(config.ingestion)
    graph = multiplex_to_decorated(dataset.layers)
    fit_cfg = FitConfig(
        k=config.k, s=config.s, seed=config.seed, starts=config.starts
    )
    fit_result = fit(graph, fit_cfg)

    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: dict[str, Path] = {}

    fit_path = out_dir / "fit.json"
    doc = fit_to_json_dict(fit_result)
    doc["provenance"] = list(dataset.provenance)
    _write_json(doc, fit_path)
    written["fit"] = fit_path

    order = fit_result.node_order
    labels = fit_result.assignment.node_labels[order]
    shape_grid = fit_result.assignment.shape_map[labels[:, None], labels[None, :]]
    theta_grid = fit_result.params.Q[shape_grid]
    for l, label in enumerate(graph.decoration_space.labels):
        path = out_dir / f"theta_{_label_slug(label)}.svg"
        emit_heatmap(theta_grid[:, :, l], path)
        written[f"theta_{_label_slug(label)}"] = path

    if len(dataset.layers) == 2:
        surface = correlation_surface(fit_result)
        for name, matrix in (
            ("marginal_layer1", surface.p1_matrix),
            ("marginal_layer2", surface.p2_matrix),
            ("correlation", (surface.rho_matrix + 1.0) / 2.0),
        ):
            path = out_dir / f"{name}.svg"
            emit_heatmap(matrix, path)
            written[name] = path

    membership_path = out_dir / "membership.csv"
    with open(membership_path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("node_id,group,shapes\n")
        shape_map = fit_result.assignment.shape_map
        for node in order:
            group = int(fit_result.assignment.node_labels[node])
            shapes = sorted(set(int(c) for c in shape_map[group]))
            handle.write(
                f"{dataset.node_ids[node]},{group},"
                f"{';'.join(str(c) for c in shapes)}\n"
            )
    written["membership"] = membership_path
    return written


def write_sample(spec: GraphonSpec, n: int, seed: int, path) -> Path:
    """Sample a graph and write it as a JSON document."""
    result = sample_graph(spec, n, seed)
    doc = {
        "graphon": spec_to_json_dict(spec),
        "n": n,
        "seed": seed,
        "zero_index": spec.decoration_space.zero_index,
        "labels": [
            list(lab) if isinstance(lab, tuple) else lab
            for lab in spec.decoration_space.labels
        ],
        "entries": result.graph.entries,
        "xi": result.xi,
    }
    path = Path(path)
    if path.parent != Path(""):
        path.parent.mkdir(parents=True, exist_ok=True)
    _write_json(doc, path)
    return path
