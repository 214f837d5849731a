from typing import Any, Protocol

import numpy as np

from geofix.types import Point, Scalar


class Space(Protocol):
    """
    A W-hyperbolic space: a metric together with a convex combination operator.

    Points are opaque to everything outside the space that produced them.
    """

    label: str
    exact: bool

    def distance(self, p: Point, q: Point) -> Scalar: ...

    def combine(self, p: Point, q: Point, lam: Scalar) -> Point: ...

    def origin(self) -> Point: ...

    def random_point(self, rng: np.random.Generator) -> Point: ...

    def parse_point(self, raw: Any) -> Point: ...

    def ray(self, p: Point, q: Point, t: float) -> Point:
        """
        The point at distance t from p on a geodesic from p through q, continued past q
        as far as the space allows.
        """
        ...

    def dump_point(self, p: Point) -> Any: ...

