"""
Seeded tuple streams for the property checks.

Every stream is driven by one `numpy.random.Generator`, so a seed fully determines
the tuples a check sees.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterator

import numpy as np

from geofix.types import Point, Scalar, ratio

if TYPE_CHECKING:
    from geofix.spaces.base import Space

SPECIAL_LAMBDAS = ((0, 1), (1, 2), (1, 1))


class TupleSampler:
    """
    Points and combination parameters of one space.

    `tuples` starts with a fixed degenerate set (coincident points, λ ∈ {0, ½, 1})
    and continues with pseudorandom tuples.
    """

    def __init__(self, space: "Space", seed: int | None = None) -> None:
        self.space = space
        self.seed = seed
        self.rng = np.random.default_rng(seed)

    def point(self) -> Point:
        return self.space.random_point(self.rng)

    def lam(self) -> Scalar:
        if self.space.exact:
            return Fraction(int(self.rng.integers(0, 257)), 256)
        return float(self.rng.random())

    def _special(self, numerator: int, denominator: int) -> Scalar:
        return ratio(numerator, denominator, self.space.exact)

    def adversarial(self, points: int, lambdas: int) -> list[tuple[list[Point], list[Scalar]]]:
        p, q = self.point(), self.point()
        cases: list[tuple[list[Point], list[Scalar]]] = []
        for numerator, denominator in SPECIAL_LAMBDAS:
            lam = self._special(numerator, denominator)
            cases.append(([p] * points, [lam] * lambdas))
            cases.append(([p if i % 2 == 0 else q for i in range(points)], [lam] * lambdas))
            cases.append(([p] + [q] * (points - 1), [lam] * lambdas))
        if lambdas >= 2:
            zero, one = self._special(0, 1), self._special(1, 1)
            cases.append(([p, q] + [p] * (points - 2), [zero, one] + [zero] * (lambdas - 2)))
        return cases

    def tuples(
        self, n: int, points: int, lambdas: int
    ) -> Iterator[tuple[list[Point], list[Scalar]]]:
        fixed = self.adversarial(points, lambdas)
        for i in range(n):
            if i < len(fixed):
                yield fixed[i]
            else:
                yield (
                    [self.point() for _ in range(points)],
                    [self.lam() for _ in range(lambdas)],
                )


@dataclass(frozen=True)
class UCTuple:
    a: Point
    x: Point
    y: Point
    r: float
    eps: float


@dataclass(frozen=True)
class DiscreteUCTuple:
    a: Point
    x: Point
    y: Point
    r: float
    k: int


class BallSampler:
    """
    Tuples around a centre a for the uniform convexity checks.

    Radii are log-uniform on [1e-2, 1e2]. x and y are placed at distance exactly u·r
    from a, u ∈ [ε/2, 1], along geodesics through random points, so the premise
    d(x, y) ≥ εr is met as often at large radii as at small ones. Trees
    cut a geodesic short where they end.
    """

    def __init__(
        self,
        space: "Space",
        seed: int | None = None,
        radii: tuple[float, float] = (1e-2, 1e2),
        max_k: int = 6,
    ) -> None:
        self.space = space
        self.seed = seed
        self.rng = np.random.default_rng(seed)
        self.radii = radii
        self.max_k = max_k

    def radius(self) -> float:
        low, high = self.radii
        return math.exp(self.rng.uniform(math.log(low), math.log(high)))

    def place(self, a: Point, reach: float) -> Point:
        return self.space.ray(a, self.space.random_point(self.rng), reach)

    def __iter__(self) -> Iterator[UCTuple]:
        while True:
            a = self.space.random_point(self.rng)
            r = self.radius()
            eps = 2.0 - float(self.rng.uniform(0.0, 2.0))
            x = self.place(a, self.rng.uniform(eps / 2, 1.0) * r)
            y = self.place(a, self.rng.uniform(eps / 2, 1.0) * r)
            yield UCTuple(a, x, y, r, eps)

    def discrete(self) -> Iterator[DiscreteUCTuple]:
        """Tuples with x, y close together near the sphere, where the premise bites."""
        while True:
            a = self.space.random_point(self.rng)
            r = self.radius()
            k = int(self.rng.integers(0, self.max_k + 1))
            x = self.place(a, self.rng.uniform(0.9, 0.999) * r)
            far = self.place(a, self.rng.uniform(0.9, 0.999) * r)
            lam: Scalar = float(self.rng.uniform(0.0, 0.3))
            if self.space.exact:
                lam = Fraction(lam).limit_denominator(1 << 20)
            yield DiscreteUCTuple(a, x, self.space.combine(x, far, lam), r, k)
