"""Static figure scripts for sweep artifacts: CSV/JSON in, image files out.

This package never recomputes physics: heatmap values, histograms, and
reference curves all arrive as files produced by the sweep harness; the only
numerics here are contour extraction and bar placement.
"""

from .figures import RECIPES, render

__version__ = "0.1.0"

__all__ = ["RECIPES", "render"]
