import math
from typing import Any

import numpy as np
from numpy.typing import NDArray

from geofix.convexity import check_lambda
from geofix.types import Scalar
from geofix.utilities.exception import DomainError

Vector = NDArray[np.float64]


class EuclideanSpace:
    """ℝⁿ with the Euclidean norm and affine convex combinations."""

    exact = False

    def __init__(self, dim: int, scale: float = 1.0) -> None:
        if dim < 1:
            raise DomainError(f"Dimension must be positive, got {dim}")
        self.dim = dim
        self.scale = scale
        self.label = f"euclidean-{dim}"

    def _coerce(self, p: Any) -> Vector:
        vector = np.asarray(p, dtype=np.float64)
        if vector.shape != (self.dim,):
            raise DomainError(
                f"Expected a point with {self.dim} coordinates, got shape {vector.shape}"
            )
        return vector

    def distance(self, p: Vector, q: Vector) -> float:
        return float(np.linalg.norm(self._coerce(p) - self._coerce(q)))

    def combine(self, p: Vector, q: Vector, lam: Scalar) -> Vector:
        check_lambda(lam)
        lam = float(lam)
        return (1 - lam) * self._coerce(p) + lam * self._coerce(q)

    def ray(self, p: Vector, q: Vector, t: float) -> Vector:
        start, step = self._coerce(p), self._coerce(q) - self._coerce(p)
        norm = float(np.linalg.norm(step))
        if norm == 0:
            return start
        return start + (t / norm) * step

    def origin(self) -> Vector:
        return np.zeros(self.dim)

    def random_point(self, rng: np.random.Generator) -> Vector:
        return rng.uniform(-self.scale, self.scale, size=self.dim)

    def parse_point(self, raw: Any) -> Vector:
        if isinstance(raw, (int, float)) and self.dim == 1:
            raw = [raw]
        vector = self._coerce(raw)
        if not all(math.isfinite(x) for x in vector):
            raise DomainError(f"Point {raw!r} has non-finite coordinates")
        return vector

    def dump_point(self, p: Vector) -> list[float]:
        return [float(x) for x in self._coerce(p)]
