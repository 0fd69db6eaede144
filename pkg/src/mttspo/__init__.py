"""Bounded-suboptimal solver for the moving-target TSP with obstacles in 3D."""

__version__ = "0.1.0"
