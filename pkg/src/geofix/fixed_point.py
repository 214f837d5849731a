"""
Nonexpansive maps, the Krasnoselski-Mann iteration and its explicit rate of
asymptotic regularity.

For a nonexpansive T with an approximate fixed point within b of x₀, the residuals
d(xₙ, Txₙ) of the iteration xₙ₊₁ = (1−λₙ)xₙ ⊕ λₙTxₙ fall below ε from
n = Φ(ε, θ, b, η) on, where

    Φ = θ(⌈(b+1) / (ε·η(b+1, ε/(b+1)))⌉)  if ε < 2b, else 0.

Φ depends on nothing but (ε, θ, b, η): not on T, x₀ or the space.
"""

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from logging import Logger, getLogger
from typing import TYPE_CHECKING, Callable, Sequence

from geofix.convexity import ConvexStructure
from geofix.modulus import Modulus, check_monotone
from geofix.schemas.objects import LambdaSchedule
from geofix.settings import settings
from geofix.types import Point, Scalar, as_scalar
from geofix.utilities.exception import (
    DomainError,
    NoThetaWitness,
    PreconditionError,
    TraceTooShort,
)

if TYPE_CHECKING:
    from geofix.spaces.base import Space
    from geofix.utilities.sampling import TupleSampler

logger: Logger = getLogger(__name__)


@dataclass(frozen=True)
class NonexpansiveMap:
    map: Callable[[Point], Point]
    label: str = "T"

    def __call__(self, x: Point) -> Point:
        return self.map(x)


@dataclass(frozen=True)
class ThetaWitness:
    """θ: ℕ → ℕ with Σ_{i≤θ(n)} λᵢ(1−λᵢ) ≥ n for every n."""

    theta: Callable[[int], int]
    label: str = "theta"

    def __call__(self, n: int) -> int:
        if n < 0:
            raise DomainError(f"θ is defined on natural numbers, got {n}")
        return self.theta(n)

    @classmethod
    def linear(cls, slope: int) -> "ThetaWitness":
        if slope < 0:
            raise DomainError(f"Slope of a linear witness must be nonnegative, got {slope}")
        return cls(theta=lambda n: slope * n, label=f"{slope}n")


def _weight(lam: float) -> Fraction:
    value = as_scalar(lam, exact=True)
    return value * (1 - value)


def weight_sum(sched: LambdaSchedule, m: int) -> Fraction:
    """Σ_{i=0}^{m} λᵢ(1−λᵢ), exactly."""
    listed = sched.values[: m + 1]
    total = sum((_weight(lam) for lam in listed), Fraction(0))
    if m + 1 > len(sched.values):
        total += (m + 1 - len(sched.values)) * _weight(sched.at(m))
    return total


def make_theta(sched: LambdaSchedule) -> ThetaWitness:
    """
    The least witness: θ(n) = min{m : Σ_{i=0}^{m} λᵢ(1−λᵢ) ≥ n}.

    Prefix sums over the listed values, then a closed form over the constant tail.
    """
    if sched.tail is None:
        raise NoThetaWitness("A finite schedule has a finite weight sum; give it a tail")
    tail = _weight(sched.tail)
    if tail == 0:
        raise NoThetaWitness(
            f"Tail value {sched.tail} has λ(1−λ) = 0, so Σ λᵢ(1−λᵢ) stays bounded"
        )

    prefix: list[Fraction] = []
    total = Fraction(0)
    for lam in sched.values:
        total += _weight(lam)
        prefix.append(total)

    def theta(n: int) -> int:
        if n <= 0:
            return 0
        for m, partial in enumerate(prefix):
            if partial >= n:
                return m
        return len(prefix) - 1 + math.ceil((n - total) / tail)

    return ThetaWitness(theta=theta, label=f"least witness for {sched.describe()}")


def check_theta_witness(theta: ThetaWitness, sched: LambdaSchedule, n_max: int) -> bool:
    for n in range(n_max + 1):
        if weight_sum(sched, theta(n)) < n:
            logger.debug("Witness %s fails at n=%d", theta.label, n)
            return False
    return True


def check_nonexpansive(
    space: "Space",
    T: NonexpansiveMap,
    sampler: "TupleSampler",
    n: int,
    tol: float | None = None,
) -> Scalar:
    """Largest d(Tx, Ty) − d(x, y) over sampled pairs; T is nonexpansive when it is ≤ tol."""
    if n < 1:
        raise DomainError(f"Need at least one sample, got n={n}")
    tol = settings.tol if tol is None else tol
    worst: Scalar | None = None
    for (x, y), _ in sampler.tuples(n, points=2, lambdas=0):
        stretch = space.distance(T(x), T(y)) - space.distance(x, y)
        worst = stretch if worst is None else max(worst, stretch)
    assert worst is not None
    if worst > tol:
        logger.warning("%s stretches distances by %s", T.label, worst)
    return worst


@dataclass(frozen=True)
class IterationTrace:
    """
    One Krasnoselski-Mann run. `residuals[n]` is d(xₙ, Txₙ) for n = 0..N.

    `iterates` is empty when the run was made with `keep_iterates=False`; `late`
    always holds the last few iterates.
    """

    residuals: tuple[Scalar, ...]
    final: Point
    schedule: LambdaSchedule
    space: str
    iterates: tuple[Point, ...] = ()
    late: tuple[Point, ...] = field(default=(), repr=False)

    def __len__(self) -> int:
        return len(self.residuals)


def km_iterate(
    space: "Space",
    cs: ConvexStructure,
    T: NonexpansiveMap,
    x0: Point,
    sched: LambdaSchedule,
    N: int,
    keep_iterates: bool = True,
    keep_last: int | None = None,
) -> IterationTrace:
    """Run x_{n+1} = W(xₙ, Txₙ, λₙ) for N steps, recording every residual."""
    if N < 0:
        raise DomainError(f"Number of steps must be nonnegative, got N={N}")

    keep_last = settings.certify_candidates if keep_last is None else keep_last
    iterates: list[Point] = []
    late: deque[Point] = deque(maxlen=max(keep_last, 1))
    residuals: list[Scalar] = []
    x = x0
    logger.debug("Running %d Krasnoselski-Mann steps of %s on %s", N, T.label, space.label)
    for n in range(N + 1):
        tx = T(x)
        residuals.append(space.distance(x, tx))
        if keep_iterates:
            iterates.append(x)
        late.append(x)
        if n < N:
            x = cs.combine(x, tx, as_scalar(sched.at(n), cs.exact))

    return IterationTrace(
        residuals=tuple(residuals),
        final=x,
        schedule=sched,
        space=space.label,
        iterates=tuple(iterates),
        late=tuple(late),
    )


def residual_monotone(trace: IterationTrace, tol: float | None = None) -> bool:
    if not trace.residuals:
        raise PreconditionError("Trace has no residuals")
    tol = settings.tol if tol is None else tol
    for n, (current, following) in enumerate(zip(trace.residuals, trace.residuals[1:])):
        if following > current + tol:
            logger.warning("Residual grows at step %d: %s -> %s", n, current, following)
            return False
    return True


def _ceil_upward(q: float) -> int:
    if q.is_integer():
        return int(q)
    return math.ceil(math.nextafter(q, math.inf))


def rate_bound(eps: float, theta: ThetaWitness, b: float, m: Modulus) -> int:
    """Φ(ε, θ, b, η); raises PreconditionError when η fails Mon(η, r) on the default grid."""
    if not eps > 0:
        raise DomainError(f"Error bound must be positive, got eps={eps}")
    if not b > 0:
        raise DomainError(f"Distance bound must be positive, got b={b}")
    if eps >= 2 * b:
        return 0
    if not check_monotone(m):
        raise PreconditionError(f"Modulus {m.name} is not nonincreasing in r")

    eta = m(b + 1, eps / (b + 1))
    inner = _ceil_upward((b + 1) / (eps * eta))
    phi = theta(inner)
    logger.debug("eta=%s inner=%d phi=%d for eps=%s b=%s", eta, inner, phi, eps, b)
    return phi


def rate_bound_dyadic(k: int, theta: ThetaWitness, b: float, m: Modulus) -> int:
    """Φ at ε = 2^-k."""
    if k < 0:
        raise DomainError(f"Dyadic index must be a natural number, got k={k}")
    return rate_bound(2.0**-k, theta, b, m)


def rate_bound_bounded(eps: float, theta: ThetaWitness, diameter: float, m: Modulus) -> int:
    """
    Φ for a bounded convex set, valid from every starting point: every fixed point
    lies within the diameter of every x₀.
    """
    if diameter < 0:
        raise DomainError(f"Diameter must be nonnegative, got {diameter}")
    if diameter == 0:
        return 0
    return rate_bound(eps, theta, diameter, m)


def check_rate(
    trace: IterationTrace, phi: int, eps: float, tol: float | None = None
) -> bool:
    """Whether d(xₙ, Txₙ) ≤ ε for every recorded n ≥ Φ."""
    if len(trace.residuals) < phi + 1:
        raise TraceTooShort(len(trace.residuals), phi + 1)
    tol = settings.tol if tol is None else tol
    return all(residual <= eps + tol for residual in trace.residuals[phi:])


def approx_fixed_point_gap(
    space: "Space",
    T: NonexpansiveMap,
    x: Point,
    b: float,
    candidates: Sequence[Point],
) -> float:
    """
    min d(y, Ty) over candidates y with d(x, y) ≤ b: the smallest δ for which the
    candidates show Fix_δ(T, x, b) nonempty. Infinite when no candidate is within b.
    """
    if not candidates:
        raise PreconditionError("Need at least one candidate point")
    gaps = [
        float(space.distance(y, T(y)))
        for y in candidates
        if space.distance(x, y) <= b
    ]
    if not gaps:
        logger.warning("No candidate lies within b=%s of the starting point", b)
        return math.inf
    return min(gaps)
