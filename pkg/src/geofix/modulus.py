"""
Moduli of uniform convexity and empirical checks of both of their formulations.
"""

import math
from dataclasses import dataclass
from itertools import islice
from logging import Logger, getLogger
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from geofix.convexity import ConvexStructure
from geofix.schemas.reports import UCViolation
from geofix.settings import settings
from geofix.types import ratio
from geofix.utilities.exception import DomainError, ModulusRangeError
from geofix.utilities.sampling import BallSampler, DiscreteUCTuple, UCTuple

logger: Logger = getLogger(__name__)

GridEntry = tuple[float, float, float]


def _check_arguments(r: float, eps: float) -> None:
    if not r > 0:
        raise DomainError(f"Radius must be positive, got r={r}")
    if not 0 < eps <= 2:
        raise DomainError(f"Distance ratio must lie in (0, 2], got eps={eps}")


@dataclass(frozen=True)
class Modulus:
    """
    η(r, ε) ∈ (0, 1]: in a ball of radius r, midpoints of points at least εr apart
    lie within (1 − η(r, ε))·r of the centre.

    `monotone_in_r` is a claim; `check_monotone` tests it.
    """

    eta: Callable[[float, float], float]
    monotone_in_r: bool
    name: str = "custom"

    def __call__(self, r: float, eps: float) -> float:
        _check_arguments(r, eps)
        value = float(self.eta(r, eps))
        if not 0 < value <= 1:
            raise ModulusRangeError(
                f"Modulus {self.name} gives {value} at r={r}, eps={eps}; expected a value in (0, 1]"
            )
        return value


@dataclass(frozen=True)
class DiscreteModulus:
    """η(r, k) ∈ ℕ, the dyadic form: 2^-η(r,k) plays the role of η(r, 2^-k)."""

    eta_d: Callable[[float, int], int]
    name: str = "custom"

    def __call__(self, r: float, k: int) -> int:
        if not r > 0:
            raise DomainError(f"Radius must be positive, got r={r}")
        if k < 0:
            raise DomainError(f"Dyadic index must be a natural number, got k={k}")
        value = self.eta_d(r, k)
        if value < 1:
            raise ModulusRangeError(
                f"Discrete modulus {self.name} gives {value} at r={r}, k={k}; expected at least 1"
            )
        return value


def default_grid() -> list[GridEntry]:
    radii = sorted(settings.monotone_grid_radii)
    return [
        (r1, r2, eps)
        for i, r1 in enumerate(radii)
        for r2 in radii[i:]
        for eps in settings.monotone_grid_eps
    ]


def check_monotone(m: Modulus, grid: Sequence[GridEntry] | None = None) -> bool:
    """Mon(η, r): r₁ ≤ r₂ implies η(r₁, ε) ≥ η(r₂, ε) on every grid entry."""
    grid = default_grid() if grid is None else grid
    if not grid:
        raise DomainError("Monotonicity grid is empty")

    for r1, r2, eps in grid:
        if r1 > r2:
            raise DomainError(f"Grid entry ({r1}, {r2}, {eps}) has r1 > r2")
        _check_arguments(r1, eps)
        _check_arguments(r2, eps)

    for r1, r2, eps in grid:
        if m(r1, eps) < m(r2, eps):
            logger.debug(
                "Modulus %s increases from r=%s to r=%s at eps=%s", m.name, r1, r2, eps
            )
            return False
    return True


def uc_implication_check(
    cs: ConvexStructure,
    m: Modulus,
    sampler: Iterable[UCTuple],
    n: int,
    tol: float | None = None,
) -> list[UCViolation]:
    """
    d(x,a) ≤ r, d(y,a) ≤ r and d(x,y) ≥ εr imply d(W(x,y,½), a) ≤ (1 − η(r,ε))·r.

    Tuples failing the premise are skipped; the violating ones are returned.
    """
    if n < 1:
        raise DomainError(f"Need at least one sample, got n={n}")
    tol = settings.tol if tol is None else tol
    half = ratio(1, 2, cs.exact)
    violations: list[UCViolation] = []
    checked = 0
    for t in islice(sampler, n):
        d_xa = float(cs.distance(t.x, t.a))
        d_ya = float(cs.distance(t.y, t.a))
        d_xy = float(cs.distance(t.x, t.y))
        if d_xa > t.r or d_ya > t.r or d_xy < t.eps * t.r:
            continue
        checked += 1
        d_mid = float(cs.distance(cs.combine(t.x, t.y, half), t.a))
        bound = (1 - m(t.r, t.eps)) * t.r
        if d_mid > bound + tol:
            violations.append(
                UCViolation(
                    r=t.r, eps=t.eps, d_xa=d_xa, d_ya=d_ya, d_xy=d_xy, d_mid=d_mid, bound=bound
                )
            )
    logger.debug(
        "%s: %d of %d tuples met the premise, %d violations",
        m.name,
        checked,
        n,
        len(violations),
    )
    return violations


def discrete_uc_check(
    cs: ConvexStructure,
    dm: DiscreteModulus,
    sampler: BallSampler | Iterable[DiscreteUCTuple],
    n: int,
    tol: float | None = None,
) -> list[UCViolation]:
    """
    d(x,a) < r, d(y,a) < r and d(W(x,y,½), a) > (1 − 2^-η(r,k))·r imply d(x,y) ≤ 2^-k·r.
    """
    if n < 1:
        raise DomainError(f"Need at least one sample, got n={n}")
    tol = settings.tol if tol is None else tol
    half = ratio(1, 2, cs.exact)
    tuples = sampler.discrete() if isinstance(sampler, BallSampler) else sampler
    violations: list[UCViolation] = []
    checked = 0
    for t in islice(tuples, n):
        d_xa = float(cs.distance(t.x, t.a))
        d_ya = float(cs.distance(t.y, t.a))
        if d_xa >= t.r or d_ya >= t.r:
            continue
        d_mid = float(cs.distance(cs.combine(t.x, t.y, half), t.a))
        if d_mid <= (1 - 2.0 ** -dm(t.r, t.k)) * t.r:
            continue
        checked += 1
        d_xy = float(cs.distance(t.x, t.y))
        bound = 2.0**-t.k * t.r
        if d_xy > bound + tol:
            violations.append(
                UCViolation(
                    r=t.r, k=t.k, d_xa=d_xa, d_ya=d_ya, d_xy=d_xy, d_mid=d_mid, bound=bound
                )
            )
    logger.debug(
        "%s: %d of %d tuples met the premise, %d violations",
        dm.name,
        checked,
        n,
        len(violations),
    )
    return violations


def bridge_to_discrete(m: Modulus) -> DiscreteModulus:
    """
    η_d(r, k) = max(1, ⌈−log₂ η(r, 2^-k)⌉ + 1), so that 2^-η_d(r,k) < η(r, 2^-k).
    """

    def eta_d(r: float, k: int) -> int:
        return max(1, math.ceil(-math.log2(m(r, 2.0**-k))) + 1)

    return DiscreteModulus(eta_d=eta_d, name=f"{m.name}-dyadic")


def cat0_modulus() -> Modulus:
    """η(r, ε) = ε²/8, valid in every CAT(0) space."""
    return Modulus(eta=lambda r, eps: eps * eps / 8, monotone_in_r=True, name="cat0")


def table_modulus(
    radii: Sequence[float],
    eps: Sequence[float],
    eta: Sequence[Sequence[float]],
    name: str = "table",
) -> Modulus:
    """
    Bilinear interpolation of η over an (r, ε) grid, extended as a constant outside it.

    The monotonicity claim is read off the table: each ε column must be
    nonincreasing in r.
    """
    r_grid = np.asarray(radii, dtype=float)
    e_grid = np.asarray(eps, dtype=float)
    values = np.asarray(eta, dtype=float)
    if r_grid.ndim != 1 or e_grid.ndim != 1 or len(r_grid) == 0 or len(e_grid) == 0:
        raise DomainError("Modulus table needs nonempty r and eps axes")
    if np.any(np.diff(r_grid) <= 0) or np.any(np.diff(e_grid) <= 0):
        raise DomainError("Modulus table axes must be strictly increasing")
    if values.shape != (len(r_grid), len(e_grid)):
        raise DomainError(
            f"Modulus table has shape {values.shape}, expected {(len(r_grid), len(e_grid))}"
        )
    if np.any(values <= 0) or np.any(values > 1):
        raise ModulusRangeError("Modulus table entries must lie in (0, 1]")

    def interpolate(r: float, e: float) -> float:
        by_radius = np.array([np.interp(e, e_grid, row) for row in values])
        return float(np.interp(r, r_grid, by_radius))

    monotone = bool(np.all(np.diff(values, axis=0) <= 0))
    return Modulus(eta=interpolate, monotone_in_r=monotone, name=name)


def load_table_modulus(path: Path, name: str | None = None) -> Modulus:
    from geofix.schemas.config import ModulusTableDocument

    document = ModulusTableDocument.model_validate_json(path.read_text())
    return table_modulus(document.r, document.eps, document.eta, name or path.stem)
