"""Iso-level contour polylines on a regular grid (marching squares)."""

from __future__ import annotations

import numpy as np
from contourpy import contour_generator


def iso_contours(
    x: np.ndarray, y: np.ndarray, z: np.ndarray, level: float
) -> list[np.ndarray]:
    """Polylines (each an (n, 2) array of (x, y) vertices) where z crosses level.

    NaN cells are masked out; an empty list means the level is never crossed.
    """
    zm = np.ma.masked_invalid(np.asarray(z, dtype=float))
    gen = contour_generator(x=np.asarray(x), y=np.asarray(y), z=zm,
                            name="serial", line_type="Separate")
    return [np.asarray(line) for line in gen.lines(level)]
