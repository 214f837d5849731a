from geofix.spaces.base import Space
from geofix.spaces.euclidean import EuclideanSpace
from geofix.spaces.halfplane import HalfPlane, halfplane_combine, halfplane_distance
from geofix.spaces.tree import (
    RealTree,
    TreePoint,
    tree_four_point_exact,
    tree_segment_glue_check,
)

__all__ = [
    "EuclideanSpace",
    "HalfPlane",
    "RealTree",
    "Space",
    "TreePoint",
    "halfplane_combine",
    "halfplane_distance",
    "tree_four_point_exact",
    "tree_segment_glue_check",
]
