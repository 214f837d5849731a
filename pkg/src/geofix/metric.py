"""
Finite metric samples, Gromov products and brute-force hyperbolicity constants.

Every scan enumerates quadruples or triples in lexicographic index order and keeps
the first maximiser, so reports are reproducible and independent of parallelism.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from logging import Logger, getLogger
from pathlib import Path
from typing import TYPE_CHECKING, Any, Hashable, Sequence

from geofix.schemas.reports import BasepointDoublingReport, HyperbolicityReport
from geofix.settings import settings
from geofix.types import Point, Scalar
from geofix.utilities.exception import InvalidSample, PointIndexError, SampleTooLarge

if TYPE_CHECKING:
    from geofix.spaces.base import Space

logger: Logger = getLogger(__name__)

Quadruple = tuple[int, int, int, int]


def _check_size(n: int) -> None:
    if n > settings.max_sample_points:
        raise SampleTooLarge(n, settings.max_sample_points)


@dataclass(frozen=True)
class FiniteSample:
    """
    Labelled points with their pairwise distances.

    Zero off-diagonal distances are allowed (pseudo-metric samples). Samples larger
    than `settings.max_sample_points` are refused before anything else is checked.
    """

    points: tuple[Hashable, ...]
    dist: tuple[tuple[Scalar, ...], ...]
    tol: float = field(default=1e-9, compare=False)
    exact: bool = field(default=False, init=False, compare=False)

    def __post_init__(self) -> None:
        n = len(self.points)
        _check_size(n)
        if len(self.dist) != n or any(len(row) != n for row in self.dist):
            raise InvalidSample(f"Distance matrix must be {n}x{n}")
        exact = all(
            isinstance(value, (int, Fraction)) and not isinstance(value, bool)
            for row in self.dist
            for value in row
        )
        convert = Fraction if exact else float
        object.__setattr__(
            self, "dist", tuple(tuple(convert(value) for value in row) for row in self.dist)
        )
        object.__setattr__(self, "exact", exact)
        for i in range(n):
            if self.dist[i][i] != 0:
                raise InvalidSample(f"d({i},{i}) = {self.dist[i][i]} is not zero")
            for j in range(i + 1, n):
                if self.dist[i][j] < 0:
                    raise InvalidSample(f"d({i},{j}) is negative")
                if self.dist[i][j] != self.dist[j][i]:
                    raise InvalidSample(f"d({i},{j}) != d({j},{i})")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.dist[i][k] > self.dist[i][j] + self.dist[j][k] + self.tol:
                        raise InvalidSample(
                            f"Triangle inequality fails for points {i}, {j}, {k}"
                        )

    def __len__(self) -> int:
        return len(self.points)

    @classmethod
    def from_matrix(
        cls,
        dist: Sequence[Sequence[Scalar]],
        points: Sequence[Hashable] | None = None,
        tol: float | None = None,
    ) -> "FiniteSample":
        labels = tuple(points) if points is not None else tuple(range(len(dist)))
        return cls(
            points=labels,
            dist=tuple(tuple(row) for row in dist),
            tol=settings.tol if tol is None else tol,
        )

    @classmethod
    def from_space(
        cls,
        space: "Space",
        points: Sequence[Point],
        labels: Sequence[Hashable] | None = None,
        tol: float | None = None,
    ) -> "FiniteSample":
        n = len(points)
        _check_size(n)
        dist: list[list[Scalar]] = [[0] * n for _ in range(n)]
        for i, j in combinations(range(n), 2):
            dist[i][j] = dist[j][i] = space.distance(points[i], points[j])
        if space.exact:
            dist = [[Fraction(value) for value in row] for row in dist]
        else:
            dist = [[float(value) for value in row] for row in dist]
        if labels is None:
            labels = [space.dump_point(p) for p in points]
            labels = [str(label) if isinstance(label, list) else label for label in labels]
        return cls.from_matrix(dist, labels, tol)

    def check_index(self, *indices: int) -> None:
        for index in indices:
            if not 0 <= index < len(self.points):
                raise PointIndexError(index, len(self.points))


def load_distance_matrix(path: Path, tol: float | None = None) -> FiniteSample:
    from geofix.schemas.config import DistanceMatrixDocument

    document = DistanceMatrixDocument.model_validate_json(path.read_text())
    return FiniteSample.from_matrix(document.dist, document.points, tol)


def gromov_product(sample: FiniteSample, x: int, y: int, w: int) -> Scalar:
    """(x·y)_w = ½(d(x,w) + d(y,w) − d(x,y))."""
    sample.check_index(x, y, w)
    d = sample.dist
    return (d[x][w] + d[y][w] - d[x][y]) / 2


def gromov_product_matrix(sample: FiniteSample, w: int) -> list[list[Scalar]]:
    sample.check_index(w)
    d = sample.dist
    n = len(sample)
    return [[(d[x][w] + d[y][w] - d[x][y]) / 2 for y in range(n)] for x in range(n)]


def four_point_defect(sample: FiniteSample, quadruple: Quadruple) -> Scalar:
    """Largest minus second-largest of the three pairing sums of a quadruple."""
    d = sample.dist
    i, j, k, l = quadruple
    sums = sorted((d[i][j] + d[k][l], d[i][k] + d[j][l], d[i][l] + d[j][k]))
    return sums[2] - sums[1]


def four_point_delta(sample: FiniteSample) -> tuple[Scalar, Quadruple | tuple[()]]:
    """
    Least δ ≥ 0 satisfying the 4-point condition on every quadruple of the sample,
    together with the lexicographically first quadruple attaining it.
    """
    _check_size(len(sample))
    zero: Scalar = Fraction(0) if sample.exact else 0.0
    if len(sample) < 4:
        return zero, ()

    best = zero
    witness: Quadruple = (0, 1, 2, 3)
    for quadruple in combinations(range(len(sample)), 4):
        defect = four_point_defect(sample, quadruple)
        if defect > best:
            best, witness = defect, quadruple

    logger.debug("Scanned quadruples of %d points; max defect %s", len(sample), best)
    return best / 2, witness


def basepoint_delta(sample: FiniteSample, w: int) -> Scalar:
    """
    Least δ ≥ 0 with (x·y)_w ≥ min{(x·z)_w, (y·z)_w} − δ for every triple x, y, z.
    """
    _check_size(len(sample))
    products = gromov_product_matrix(sample, w)
    n = len(sample)
    best: Scalar = Fraction(0) if sample.exact else 0.0
    for x in range(n):
        row_x = products[x]
        for y in range(x, n):
            xy = row_x[y]
            row_y = products[y]
            for z in range(n):
                gap = min(row_x[z], row_y[z]) - xy
                if gap > best:
                    best = gap
    return best


def check_basepoint_doubling(sample: FiniteSample) -> BasepointDoublingReport:
    """
    Compute δ_w for every base point and check max_w δ_w ≤ 2·min_w δ_w.
    """
    if len(sample) == 0:
        raise InvalidSample("Base-point doubling needs a nonempty sample")

    deltas = {w: basepoint_delta(sample, w) for w in range(len(sample))}
    largest, smallest = max(deltas.values()), min(deltas.values())
    passed = largest <= 2 * smallest + sample.tol
    if not passed:
        logger.warning(
            "Base-point doubling fails: max %s > 2 * min %s", largest, smallest
        )
    return BasepointDoublingReport(
        per_basepoint_delta={w: float(delta) for w, delta in deltas.items()},
        max_delta=float(largest),
        min_delta=float(smallest),
        passed=passed,
    )


def hyperbolicity_report(sample: FiniteSample) -> HyperbolicityReport:
    delta, witness = four_point_delta(sample)
    doubling = check_basepoint_doubling(sample)
    if abs(doubling.max_delta - float(delta)) > sample.tol:
        # the base-point inequality at w is the 4-point condition on quadruples containing w
        logger.warning(
            "Base-point scan %s disagrees with four-point scan %s",
            doubling.max_delta,
            delta,
        )
    return HyperbolicityReport(
        points=[_label(p) for p in sample.points],
        delta=float(delta),
        delta_exact=str(delta) if isinstance(delta, Fraction) else None,
        witness=list(witness),
        per_basepoint=doubling.per_basepoint_delta,
        doubling=doubling.passed,
    )


def sample_diameter(sample: FiniteSample) -> Scalar:
    return max((value for row in sample.dist for value in row), default=0)


def _label(point: Any) -> str:
    return point if isinstance(point, str) else str(point)
