"""
The convex combination operator W and residual checks for the axioms (W1)–(W4).

Checks return the largest residual seen instead of a verdict; callers compare it
against their own threshold.
"""

from dataclasses import dataclass
from fractions import Fraction
from logging import Logger, getLogger
from typing import TYPE_CHECKING, Callable

from geofix.metric import FiniteSample, four_point_delta
from geofix.schemas.reports import AxiomReport
from geofix.settings import settings
from geofix.types import AXIOMS, Point, Scalar, ratio
from geofix.utilities.exception import DomainError, ExactModeError, PreconditionError

if TYPE_CHECKING:
    from geofix.spaces.base import Space
    from geofix.utilities.sampling import TupleSampler

logger: Logger = getLogger(__name__)

CombineFn = Callable[[Point, Point, Scalar], Point]


def check_lambda(lam: Scalar, exact: bool = False) -> None:
    if exact and isinstance(lam, float):
        raise ExactModeError(f"Floating parameter {lam!r} used with an exact space")
    if not 0 <= lam <= 1:
        raise DomainError(f"Combination parameter must lie in [0, 1], got {lam}")


@dataclass(frozen=True)
class ConvexStructure:
    """
    A space together with the operator W(x, y, λ) = (1−λ)x ⊕ λy.

    `combine_fn` replaces the space's own operator, e.g. to study a broken one.
    """

    space: "Space"
    combine_fn: CombineFn | None = None

    @property
    def exact(self) -> bool:
        return self.space.exact

    def distance(self, x: Point, y: Point) -> Scalar:
        return self.space.distance(x, y)

    def combine(self, x: Point, y: Point, lam: Scalar) -> Point:
        check_lambda(lam, self.exact)
        if self.combine_fn is not None:
            return self.combine_fn(x, y, lam)
        return self.space.combine(x, y, lam)

    def zero(self) -> Scalar:
        return Fraction(0) if self.exact else 0.0


def combine(cs: ConvexStructure, x: Point, y: Point, lam: Scalar) -> Point:
    return cs.combine(x, y, lam)


def _note(axiom: str, residual: Scalar, tol: float) -> None:
    if residual > tol:
        logger.warning("%s residual %s exceeds tolerance %s", axiom, residual, tol)
    else:
        logger.debug("%s residual %s", axiom, residual)


def check_axiom_W1(
    cs: ConvexStructure, sampler: "TupleSampler", n: int, tol: float | None = None
) -> Scalar:
    """max of d(z, W(x,y,λ)) − [(1−λ)d(z,x) + λd(z,y)], clamped at 0."""
    worst = cs.zero()
    for (x, y, z), (lam,) in sampler.tuples(n, points=3, lambdas=1):
        lhs = cs.distance(z, cs.combine(x, y, lam))
        rhs = (1 - lam) * cs.distance(z, x) + lam * cs.distance(z, y)
        worst = max(worst, lhs - rhs)
    _note("W1", worst, settings.tol if tol is None else tol)
    return worst


def check_axiom_W2(
    cs: ConvexStructure, sampler: "TupleSampler", n: int, tol: float | None = None
) -> Scalar:
    """max of |d(W(x,y,λ₁), W(x,y,λ₂)) − |λ₁−λ₂|·d(x,y)|."""
    worst = cs.zero()
    for (x, y), (lam1, lam2) in sampler.tuples(n, points=2, lambdas=2):
        lhs = cs.distance(cs.combine(x, y, lam1), cs.combine(x, y, lam2))
        rhs = abs(lam1 - lam2) * cs.distance(x, y)
        worst = max(worst, abs(lhs - rhs))
    _note("W2", worst, settings.tol if tol is None else tol)
    return worst


def check_axiom_W3(
    cs: ConvexStructure, sampler: "TupleSampler", n: int, tol: float | None = None
) -> Scalar:
    """max of d(W(x,y,λ), W(y,x,1−λ))."""
    worst = cs.zero()
    for (x, y), (lam,) in sampler.tuples(n, points=2, lambdas=1):
        worst = max(worst, cs.distance(cs.combine(x, y, lam), cs.combine(y, x, 1 - lam)))
    _note("W3", worst, settings.tol if tol is None else tol)
    return worst


def check_axiom_W4(
    cs: ConvexStructure, sampler: "TupleSampler", n: int, tol: float | None = None
) -> Scalar:
    """max of d(W(x,z,λ), W(y,w,λ)) − [(1−λ)d(x,y) + λd(z,w)], clamped at 0."""
    worst = cs.zero()
    for (x, y, z, w), (lam,) in sampler.tuples(n, points=4, lambdas=1):
        lhs = cs.distance(cs.combine(x, z, lam), cs.combine(y, w, lam))
        rhs = (1 - lam) * cs.distance(x, y) + lam * cs.distance(z, w)
        worst = max(worst, lhs - rhs)
    _note("W4", worst, settings.tol if tol is None else tol)
    return worst


AXIOM_CHECKS = {
    "W1": check_axiom_W1,
    "W2": check_axiom_W2,
    "W3": check_axiom_W3,
    "W4": check_axiom_W4,
}


def check_axioms(
    cs: ConvexStructure,
    sampler: "TupleSampler",
    n: int,
    tol: float | None = None,
    threshold: float | None = None,
) -> AxiomReport:
    residuals = {axiom: AXIOM_CHECKS[axiom](cs, sampler, n, tol) for axiom in AXIOMS}
    return AxiomReport(
        space=cs.space.label,
        residuals={axiom: float(value) for axiom, value in residuals.items()},
        samples=n,
        seed=sampler.seed,
        threshold=settings.axiom_threshold if threshold is None else threshold,
        exact=cs.exact,
    )


def check_geodesic_speed(cs: ConvexStructure, sampler: "TupleSampler", n: int) -> Scalar:
    """max of |d(x, W(x,y,λ)) − λ·d(x,y)|."""
    worst = cs.zero()
    for (x, y), (lam,) in sampler.tuples(n, points=2, lambdas=1):
        worst = max(worst, abs(cs.distance(x, cs.combine(x, y, lam)) - lam * cs.distance(x, y)))
    return worst


def segment_points(cs: ConvexStructure, x: Point, y: Point, k: int) -> list[Point]:
    """The k+1 points W(x, y, i/k) for i = 0..k."""
    if k < 1:
        raise DomainError(f"A segment needs at least one step, got k={k}")
    return [cs.combine(x, y, ratio(i, k, cs.exact)) for i in range(k + 1)]


def convexity_check(
    cs: ConvexStructure,
    member: Callable[[Point], bool],
    x: Point,
    y: Point,
    k: int,
) -> bool:
    """Whether the sampled segment [x, y] stays inside the set described by `member`."""
    if not member(x) or not member(y):
        raise PreconditionError("Both endpoints must belong to the set")
    return all(member(p) for p in segment_points(cs, x, y, k))


def is_real_tree_sample(
    cs: ConvexStructure,
    sampler: "TupleSampler",
    n: int,
    tol: float | None = None,
    points: int = 8,
) -> bool:
    """
    W-hyperbolic characterization of ℝ-trees, checked empirically: the axioms hold
    and sampled points satisfy the 4-point condition with δ = 0.
    """
    tol = settings.tol if tol is None else tol
    report = check_axioms(cs, sampler, n, tol, threshold=tol)
    sample = FiniteSample.from_space(cs.space, [sampler.point() for _ in range(points)])
    delta, witness = four_point_delta(sample)
    logger.debug("Sampled four-point delta %s at %s", delta, witness)
    return report.passed and delta <= tol
