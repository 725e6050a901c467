"""Surfaces of positive extrinsic curvature in H2xR and S2xR."""

__version__ = "0.1.0"
