"""Exact certification engine for the constant-mean-curvature argument on
biharmonic hypersurfaces with constant scalar curvature."""

__version__ = "0.1.0"
