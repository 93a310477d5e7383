"""1-planar RAC drawings with at most one bend per edge."""

__version__ = "0.1.0"

from .model import (OnePlaneGraph, FaceWalk, Kite, build_one_plane_graph,
                    trace_faces, is_triangulated, empty_kite_check)

__all__ = [
    "OnePlaneGraph", "FaceWalk", "Kite", "build_one_plane_graph",
    "trace_faces", "is_triangulated", "empty_kite_check",
]
