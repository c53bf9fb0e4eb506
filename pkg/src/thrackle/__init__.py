"""Combinatorial tools for thrackle drawings that contain a standard musquash."""

from thrackle.core_map import (
    DrawingError,
    FaceLabeling,
    LabelingError,
    NonPlanarError,
    PlanarDrawing,
    ThrackleReport,
    build_drawing,
    face_labels,
    signed_crossing_sums,
    trace_faces,
    verify_thrackle,
)
from thrackle.musquash import (
    crossing_order,
    realize,
    standard_musquash,
    verify_musquash,
)

__version__ = "0.1.0"

__all__ = [
    "DrawingError",
    "FaceLabeling",
    "LabelingError",
    "NonPlanarError",
    "PlanarDrawing",
    "ThrackleReport",
    "build_drawing",
    "crossing_order",
    "face_labels",
    "realize",
    "signed_crossing_sums",
    "standard_musquash",
    "trace_faces",
    "verify_musquash",
    "verify_thrackle",
]
