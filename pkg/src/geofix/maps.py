"""
Named nonexpansive maps with a known fixed point on each space that supports them.

    negate            x ↦ −x on ℝⁿ; reflection (u, v) ↦ (−u, v) of the half-plane
    halve             x ↦ W(x, origin, ½) on every space
    rotate:<angle>    rotation by <angle> radians, about 0 in ℝⁿ (n ≥ 2) or i in the half-plane
    tree-fold:<v>     nearest-point projection of a tree onto the geodesic [origin, v]
"""

from logging import Logger, getLogger
from typing import Callable

import numpy as np

from geofix.fixed_point import NonexpansiveMap
from geofix.spaces.base import Space
from geofix.spaces.euclidean import EuclideanSpace
from geofix.spaces.halfplane import HalfPlane, halfplane_rotate
from geofix.spaces.tree import RealTree, TreePoint
from geofix.types import Point, ratio
from geofix.utilities.exception import UnknownMap

logger: Logger = getLogger(__name__)

MapFactory = Callable[[Space, str], tuple[NonexpansiveMap, Point]]


def _negate(space: Space, argument: str) -> tuple[NonexpansiveMap, Point]:
    if isinstance(space, EuclideanSpace):
        return NonexpansiveMap(lambda x: -np.asarray(x, dtype=float), "negate"), space.origin()
    if isinstance(space, HalfPlane):
        return NonexpansiveMap(lambda p: (-p[0], p[1]), "negate"), space.origin()
    raise UnknownMap(f"negate is not defined on {space.label}")


def _halve(space: Space, argument: str) -> tuple[NonexpansiveMap, Point]:
    origin = space.origin()
    half = ratio(1, 2, space.exact)
    return NonexpansiveMap(lambda x: space.combine(x, origin, half), "halve"), origin


def _rotate(space: Space, argument: str) -> tuple[NonexpansiveMap, Point]:
    try:
        angle = float(argument)
    except ValueError:
        raise UnknownMap(f"rotate needs an angle in radians, got {argument!r}") from None
    label = f"rotate:{argument}"

    if isinstance(space, EuclideanSpace) and space.dim >= 2:
        c, s = np.cos(angle), np.sin(angle)

        def rotate(x: Point) -> Point:
            y = np.array(x, dtype=float)
            y[0], y[1] = c * x[0] - s * x[1], s * x[0] + c * x[1]
            return y

        return NonexpansiveMap(rotate, label), space.origin()
    if isinstance(space, HalfPlane):
        return NonexpansiveMap(lambda p: halfplane_rotate(p, angle), label), space.origin()
    raise UnknownMap(f"rotate is not defined on {space.label}")


def _tree_fold(space: Space, argument: str) -> tuple[NonexpansiveMap, Point]:
    if not isinstance(space, RealTree):
        raise UnknownMap(f"tree-fold is only defined on trees, not {space.label}")
    if argument not in space.vertices:
        raise UnknownMap(f"tree-fold target {argument!r} is not a vertex of {space.label}")

    tree = space
    origin, target = tree.origin(), TreePoint.at_vertex(argument)
    span = tree.distance(origin, target)

    def fold(x: TreePoint) -> TreePoint:
        if span == 0:
            return origin
        # the branch point of x off [origin, target] sits at distance (x·target)_origin
        reach = (tree.distance(x, origin) + span - tree.distance(x, target)) / 2
        reach = min(max(reach, 0 * span), span)
        return tree.combine(origin, target, reach / span)

    return NonexpansiveMap(fold, f"tree-fold:{argument}"), target


MAPS: dict[str, MapFactory] = {
    "negate": _negate,
    "halve": _halve,
    "rotate": _rotate,
    "tree-fold": _tree_fold,
}


def resolve_map(name: str, space: Space) -> tuple[NonexpansiveMap, Point]:
    """The map called `name` on `space` and one of its fixed points."""
    kind, _, argument = name.partition(":")
    if kind not in MAPS:
        raise UnknownMap(f"Unknown map {name!r}; choose one of {', '.join(sorted(MAPS))}")
    T, fixed = MAPS[kind](space, argument)
    logger.debug("Resolved map %s on %s with fixed point %s", name, space.label, fixed)
    return T, fixed
