"""Render figure analogs from steadytherm sweep CSVs.

A pure CSV-to-image transform: nothing here recomputes physics, so any
numeric disagreement with expectations is a property of the CSV.
"""

from .csvdata import RenderError, SweepData
from .render import RENDERERS, render

__version__ = "0.1.0"

__all__ = ["RENDERERS", "RenderError", "SweepData", "render"]
