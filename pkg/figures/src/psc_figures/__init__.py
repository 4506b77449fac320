"""Figures for psc-lab CSV outputs: bound curves and FER curves."""

from .curves import CurveSpec, bounds_spec, fer_spec
from .plots import plot_bounds, plot_fer

__version__ = "0.1.0"
