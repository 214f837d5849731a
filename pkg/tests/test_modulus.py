import math
from pathlib import Path
from typing import Any, Callable

import numpy as np
import pytest

from geofix.convexity import ConvexStructure
from geofix.modulus import (
    DiscreteModulus,
    Modulus,
    bridge_to_discrete,
    cat0_modulus,
    check_monotone,
    default_grid,
    discrete_uc_check,
    load_table_modulus,
    table_modulus,
    uc_implication_check,
)
from geofix.spaces import EuclideanSpace, HalfPlane, RealTree
from geofix.utilities.exception import DomainError, ModulusRangeError
from geofix.utilities.sampling import BallSampler, DiscreteUCTuple, UCTuple

SAMPLES = 10_000


def near_diameter_pair() -> DiscreteUCTuple:
    # x and y on the circle of radius 0.999 about a = 0, 0.3996 apart
    s = 0.2
    c = math.sqrt(1 - s * s)
    x = np.array([0.999 * c, 0.999 * s])
    y = np.array([0.999 * c, -0.999 * s])
    return DiscreteUCTuple(a=np.zeros(2), x=x, y=y, r=1.0, k=2)


class TestModulus:
    def test_cat0_at_full_ratio(self):
        assert cat0_modulus()(123.0, 2.0) == 0.5

    def test_cat0_is_monotone(self):
        m = cat0_modulus()
        assert m.monotone_in_r
        assert check_monotone(m)

    @pytest.mark.parametrize("r, eps", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0), (1.0, 2.5)])
    def test_arguments_outside_domain(self, r: float, eps: float):
        with pytest.raises(DomainError):
            cat0_modulus()(r, eps)

    @pytest.mark.parametrize("value", [0.0, 1.5, -0.2])
    def test_values_outside_unit_interval(self, value: float):
        with pytest.raises(ModulusRangeError):
            Modulus(eta=lambda r, eps: value, monotone_in_r=True)(1.0, 1.0)


class TestCheckMonotone:
    def test_equal_radii(self):
        m = Modulus(eta=lambda r, eps: min(1.0, eps * r), monotone_in_r=False)
        assert check_monotone(m, [(1.0, 1.0, 0.5)])

    def test_increasing_in_r(self):
        m = Modulus(eta=lambda r, eps: min(1.0, eps * r), monotone_in_r=False)
        assert not check_monotone(m, [(1.0, 2.0, 0.5)])

    def test_r_independent(self):
        assert check_monotone(cat0_modulus(), [(0.1, 50.0, e) for e in (0.01, 0.3, 2.0)])

    def test_default_grid_is_ordered(self):
        grid = default_grid()
        assert grid
        assert all(r1 <= r2 for r1, r2, _ in grid)

    @pytest.mark.parametrize(
        "grid", [[], [(2.0, 1.0, 0.5)], [(0.0, 1.0, 0.5)], [(1.0, 2.0, 3.0)]]
    )
    def test_invalid_grid(self, grid: list[tuple[float, float, float]]):
        with pytest.raises(DomainError):
            check_monotone(cat0_modulus(), grid)


class TestBridge:
    def test_constant_half(self):
        dm = bridge_to_discrete(Modulus(eta=lambda r, eps: 0.5, monotone_in_r=True))
        assert {dm(r, k) for r in (0.1, 1.0, 9.0) for k in range(6)} == {2}

    def test_cat0_at_k_two(self):
        assert bridge_to_discrete(cat0_modulus())(1.0, 2) == 8

    def test_identically_one(self):
        dm = bridge_to_discrete(Modulus(eta=lambda r, eps: 1.0, monotone_in_r=True))
        assert dm(3.0, 4) == 1

    @pytest.mark.parametrize("r", [0.01, 1.0, 100.0])
    def test_strictly_below_modulus(self, r: float):
        m = cat0_modulus()
        dm = bridge_to_discrete(m)
        for k in range(12):
            assert 2.0 ** -dm(r, k) < m(r, 2.0**-k)

    def test_nondecreasing_in_k(self):
        # η is nondecreasing in ε, so shrinking ε = 2^-k asks for more precision
        dm = bridge_to_discrete(cat0_modulus())
        for r in (0.5, 2.0):
            values = [dm(r, k) for k in range(12)]
            assert values == sorted(values)

    def test_discrete_modulus_range(self):
        with pytest.raises(ModulusRangeError):
            DiscreteModulus(eta_d=lambda r, k: 0)(1.0, 1)


class TestUniformConvexity:
    def test_premise_failing_tuple_is_skipped(self, plane: EuclideanSpace):
        tuple_ = UCTuple(a=np.zeros(2), x=np.zeros(2), y=np.zeros(2), r=1.0, eps=0.5)
        assert uc_implication_check(ConvexStructure(plane), cat0_modulus(), [tuple_], 1) == []

    def test_antipodal_points_on_the_line(self):
        line = EuclideanSpace(1)
        tuple_ = UCTuple(a=np.zeros(1), x=np.array([1.0]), y=np.array([-1.0]), r=1.0, eps=2.0)
        strongest = Modulus(eta=lambda r, eps: 1.0, monotone_in_r=True)
        assert uc_implication_check(ConvexStructure(line), strongest, [tuple_], 1) == []

    @pytest.mark.parametrize(
        "space",
        [EuclideanSpace(2), HalfPlane()],
        ids=["euclidean", "halfplane"],
    )
    def test_cat0_holds(self, space):
        cs = ConvexStructure(space)
        assert uc_implication_check(cs, cat0_modulus(), BallSampler(space, seed=1), SAMPLES) == []

    def test_cat0_holds_on_trees(self, tree: RealTree):
        cs = ConvexStructure(tree)
        assert uc_implication_check(cs, cat0_modulus(), BallSampler(tree, seed=2), 2000) == []

    def test_inflated_modulus_fails(self, plane: EuclideanSpace):
        inflated = Modulus(eta=lambda r, eps: min(1.0, 4 * eps), monotone_in_r=True, name="inflated")
        violations = uc_implication_check(ConvexStructure(plane), inflated, BallSampler(plane, seed=3), 2000)
        assert violations
        assert all(v.d_mid > v.bound for v in violations)

    def test_needs_a_sample(self, plane: EuclideanSpace):
        with pytest.raises(DomainError):
            uc_implication_check(ConvexStructure(plane), cat0_modulus(), BallSampler(plane, seed=0), 0)


class TestDiscreteUniformConvexity:
    def test_premise_failing_tuple_is_skipped(self, plane: EuclideanSpace):
        outside = DiscreteUCTuple(a=np.zeros(2), x=np.array([2.0, 0.0]), y=np.zeros(2), r=1.0, k=1)
        dm = bridge_to_discrete(cat0_modulus())
        assert discrete_uc_check(ConvexStructure(plane), dm, [outside], 1) == []

    @pytest.mark.parametrize(
        "space",
        [EuclideanSpace(2), HalfPlane()],
        ids=["euclidean", "halfplane"],
    )
    def test_bridged_cat0_holds(self, space):
        dm = bridge_to_discrete(cat0_modulus())
        cs = ConvexStructure(space)
        assert discrete_uc_check(cs, dm, BallSampler(space, seed=4), SAMPLES) == []

    def test_bridged_cat0_holds_on_trees(self, tree: RealTree):
        dm = bridge_to_discrete(cat0_modulus())
        assert discrete_uc_check(ConvexStructure(tree), dm, BallSampler(tree, seed=5), 2000) == []

    def test_crafted_pair_respects_bridged_modulus(self, plane: EuclideanSpace):
        dm = bridge_to_discrete(cat0_modulus())
        assert dm(1.0, 2) == 8
        assert discrete_uc_check(ConvexStructure(plane), dm, [near_diameter_pair()], 1) == []

    def test_weakened_modulus_fails_on_crafted_pair(self, plane: EuclideanSpace):
        bridged = bridge_to_discrete(cat0_modulus())
        weakened = DiscreteModulus(eta_d=lambda r, k: max(1, bridged(r, k) - 3), name="weakened")
        violations = discrete_uc_check(ConvexStructure(plane), weakened, [near_diameter_pair()], 1)
        assert len(violations) == 1
        assert violations[0].k == 2
        assert violations[0].d_xy == pytest.approx(0.3996)

    def test_same_stream_as_continuous_check(self, plane: EuclideanSpace):
        # a modulus that passes the continuous check passes the dyadic one on the same tuples
        m = cat0_modulus()
        cs = ConvexStructure(plane)
        assert uc_implication_check(cs, m, BallSampler(plane, seed=6), 3000) == []
        assert discrete_uc_check(cs, bridge_to_discrete(m), BallSampler(plane, seed=6), 3000) == []


class TestTableModulus:
    def test_interpolates_and_extends(self):
        m = table_modulus([1.0, 2.0], [0.5, 1.0], [[0.2, 0.4], [0.1, 0.3]])
        assert m(1.0, 0.5) == pytest.approx(0.2)
        assert m(1.5, 0.75) == pytest.approx(0.25)
        assert m(0.1, 0.1) == pytest.approx(0.2)
        assert m(10.0, 2.0) == pytest.approx(0.3)
        assert m.monotone_in_r

    def test_increasing_rows_are_not_monotone(self):
        m = table_modulus([1.0, 2.0], [1.0], [[0.1], [0.2]])
        assert not m.monotone_in_r
        assert not check_monotone(m, [(1.0, 2.0, 1.0)])

    @pytest.mark.parametrize(
        "radii, eps, eta, error",
        [
            ([1.0, 2.0], [1.0], [[0.5]], DomainError),
            ([2.0, 1.0], [1.0], [[0.5], [0.5]], DomainError),
            ([1.0], [1.0], [[1.5]], ModulusRangeError),
            ([1.0], [1.0], [[0.0]], ModulusRangeError),
        ],
    )
    def test_invalid_tables(self, radii: list[float], eps: list[float], eta: list[list[float]], error: type[Exception]):
        with pytest.raises(error):
            table_modulus(radii, eps, eta)

    def test_load_from_file(self, write_json: Callable[[str, Any], Path]):
        path = write_json("eta.json", {"r": [1.0, 10.0], "eps": [0.1, 2.0], "eta": [[0.01, 0.5], [0.01, 0.5]]})
        m = load_table_modulus(path)
        assert m.name == "eta"
        assert m(5.0, 2.0) == pytest.approx(0.5)
