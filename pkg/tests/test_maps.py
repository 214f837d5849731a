import math

import numpy as np
import pytest

from geofix.fixed_point import check_nonexpansive
from geofix.maps import MAPS, resolve_map
from geofix.spaces import EuclideanSpace, HalfPlane, RealTree
from geofix.utilities.exception import UnknownMap
from geofix.utilities.sampling import TupleSampler


def test_registry():
    assert sorted(MAPS) == ["halve", "negate", "rotate", "tree-fold"]


@pytest.mark.parametrize("name", ["negate", "halve", "rotate:0.3", "rotate:3.14"])
def test_euclidean_maps_fix_the_origin(plane: EuclideanSpace, name: str):
    T, fixed = resolve_map(name, plane)
    assert plane.distance(T(fixed), fixed) == pytest.approx(0, abs=1e-12)
    assert check_nonexpansive(plane, T, TupleSampler(plane, seed=4), 300) <= 1e-9


@pytest.mark.parametrize("name", ["negate", "halve", "rotate:0.3", "rotate:2.0"])
def test_halfplane_maps_fix_the_origin(halfplane: HalfPlane, name: str):
    T, fixed = resolve_map(name, halfplane)
    assert halfplane.distance(T(fixed), fixed) == pytest.approx(0, abs=1e-9)
    assert check_nonexpansive(halfplane, T, TupleSampler(halfplane, seed=5), 300) <= 1e-7


@pytest.mark.parametrize("name", ["halve", "tree-fold:a", "tree-fold:b", "tree-fold:c"])
def test_tree_maps(tripod: RealTree, name: str):
    T, fixed = resolve_map(name, tripod)
    assert tripod.distance(T(fixed), fixed) == 0
    assert check_nonexpansive(tripod, T, TupleSampler(tripod, seed=6), 300, tol=0) <= 0


def test_negate():
    line = EuclideanSpace(1)
    T, _ = resolve_map("negate", line)
    assert T(np.array([2.5])).tolist() == [-2.5]

    T, _ = resolve_map("negate", HalfPlane())
    assert T((1.0, 2.0)) == (-1.0, 2.0)


def test_rotate_euclidean(plane: EuclideanSpace):
    T, _ = resolve_map(f"rotate:{math.pi / 2}", plane)
    assert T(np.array([1.0, 0.0])) == pytest.approx([0.0, 1.0])


def test_rotate_keeps_distance_to_centre(halfplane: HalfPlane):
    T, centre = resolve_map("rotate:1.0", halfplane)
    p = (0.7, 0.4)
    assert halfplane.distance(T(p), centre) == pytest.approx(halfplane.distance(p, centre))
    assert halfplane.distance(T(p), p) > 0


def test_tree_fold(tripod: RealTree):
    T, fixed = resolve_map("tree-fold:a", tripod)
    assert fixed == tripod.parse_point("v:a")
    # off the segment [c, a] everything lands on the branch point c
    assert tripod.distance(T(tripod.parse_point("e:c-b:1/2")), tripod.parse_point("v:c")) == 0
    assert tripod.distance(T(tripod.parse_point("v:d")), tripod.parse_point("v:c")) == 0
    on_segment = tripod.parse_point("e:c-a:1/3")
    assert tripod.distance(T(on_segment), on_segment) == 0


@pytest.mark.parametrize(
    "space, name",
    [
        (EuclideanSpace(2), "reflect"),
        (EuclideanSpace(2), "rotate:quarter"),
        (EuclideanSpace(1), "rotate:0.5"),
        (EuclideanSpace(2), "tree-fold:a"),
        (HalfPlane(), "tree-fold:a"),
    ],
)
def test_unknown(space, name: str):
    with pytest.raises(UnknownMap):
        resolve_map(name, space)


def test_unknown_on_trees(tripod: RealTree):
    with pytest.raises(UnknownMap):
        resolve_map("negate", tripod)
    with pytest.raises(UnknownMap):
        resolve_map("rotate:1", tripod)
    with pytest.raises(UnknownMap):
        resolve_map("tree-fold:z", tripod)
