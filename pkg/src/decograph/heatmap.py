"""Deterministic SVG heatmaps for matrices of probabilities.

Values map linearly to grayscale (0 is white, 1 is black); NaN cells are
rendered in a fixed accent color so undefined quantities are visibly
distinct from any probability.  One rect per cell, fixed 800 x 800
viewport, rows top to bottom in the order given by the caller.
"""

from __future__ import annotations

import numpy as np

UNDEFINED_FILL = "#d95f02"
VIEWPORT = 800


def _fill(value: float) -> str:
    if np.isnan(value):
        return UNDEFINED_FILL
    level = int(round(255 * (1.0 - value)))
    return f"#{level:02x}{level:02x}{level:02x}"


def emit_heatmap(matrix: np.ndarray, path) -> None:
    """Write a grayscale heatmap of values in [0, 1] (NaN = undefined)."""
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {matrix.shape}")
    finite = matrix[~np.isnan(matrix)]
    if finite.size and (finite.min() < 0 or finite.max() > 1):
        raise ValueError("matrix values must lie in [0, 1] or be NaN")
    rows, cols = matrix.shape
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{VIEWPORT}" '
        f'height="{VIEWPORT}" viewBox="0 0 {cols} {rows}" '
        'shape-rendering="crispEdges">',
    ]
    for i in range(rows):
        for j in range(cols):
            lines.append(
                f'<rect x="{j}" y="{i}" width="1" height="1" '
                f'fill="{_fill(matrix[i, j])}"/>'
            )
    lines.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(lines))
        handle.write("\n")
