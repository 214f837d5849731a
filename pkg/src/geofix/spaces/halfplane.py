"""
The hyperbolic upper half-plane {(u, v) : v > 0}.

Points are `(u, v)` tuples of floats. Geodesics are vertical lines and semicircles
centred on the real axis; `ray` and `combine` move the geodesic onto the imaginary
axis with an isometry, step along it in arclength there and map back.
"""

import cmath
import math
from typing import Any

import numpy as np

from geofix.convexity import check_lambda
from geofix.types import Scalar
from geofix.utilities.exception import DomainError

HalfPlanePoint = tuple[float, float]


def _as_complex(p: Any) -> complex:
    try:
        u, v = (float(c) for c in p)
    except (TypeError, ValueError):
        raise DomainError(f"Half-plane points are (u, v) pairs, got {p!r}") from None
    if not v > 0 or not math.isfinite(u) or not math.isfinite(v):
        raise DomainError(f"Half-plane points need a finite positive v, got {p!r}")
    return complex(u, v)


def halfplane_distance(p: HalfPlanePoint, q: HalfPlanePoint) -> float:
    z, w = _as_complex(p), _as_complex(q)
    # 2 asinh form keeps precision for nearby points
    return 2.0 * math.asinh(abs(z - w) / (2.0 * math.sqrt(z.imag * w.imag)))


def halfplane_ray(p: HalfPlanePoint, q: HalfPlanePoint, t: float) -> HalfPlanePoint:
    """The point at distance `t` from p on the geodesic ray from p through q."""
    z, w = _as_complex(p), _as_complex(q)
    if z == w or t == 0:
        return (z.real, z.imag)

    # translate and scale z to i, then turn about i by phi so the ray runs up the
    # imaginary axis, where the point at distance t is i·e^t
    shifted = (w - z.real) / z.imag
    phi = cmath.phase((shifted - 1j) / (shifted + 1j)) / 2.0
    c, s = math.cos(phi), math.sin(phi)
    f = math.exp(-t)
    scale = c * c * f * f + s * s
    u, v = s * c * (f * f - 1.0) / scale, f / scale
    return (z.real + z.imag * u, z.imag * v)


def halfplane_combine(p: HalfPlanePoint, q: HalfPlanePoint, lam: Scalar) -> HalfPlanePoint:
    check_lambda(lam)
    z, w = _as_complex(p), _as_complex(q)
    if lam == 0:
        return (z.real, z.imag)
    if lam == 1:
        return (w.real, w.imag)
    return halfplane_ray(p, q, float(lam) * halfplane_distance(p, q))


def halfplane_rotate(p: HalfPlanePoint, angle: float, center: HalfPlanePoint = (0.0, 1.0)) -> HalfPlanePoint:
    """Elliptic isometry turning the plane by `angle` around `center`."""
    z, c = _as_complex(p), _as_complex(center)
    zeta = (z - c) / (z - c.conjugate()) * cmath.exp(1j * angle)
    r = (c - c.conjugate() * zeta) / (1 - zeta)
    return (r.real, abs(r.imag))


class HalfPlane:
    """Upper half-plane model of the hyperbolic plane."""

    exact = False
    label = "halfplane"

    def __init__(self, spread: float = 1.5) -> None:
        self.spread = spread

    def distance(self, p: HalfPlanePoint, q: HalfPlanePoint) -> float:
        return halfplane_distance(p, q)

    def combine(self, p: HalfPlanePoint, q: HalfPlanePoint, lam: Scalar) -> HalfPlanePoint:
        return halfplane_combine(p, q, lam)

    def ray(self, p: HalfPlanePoint, q: HalfPlanePoint, t: float) -> HalfPlanePoint:
        return halfplane_ray(p, q, t)

    def origin(self) -> HalfPlanePoint:
        return (0.0, 1.0)

    def random_point(self, rng: np.random.Generator) -> HalfPlanePoint:
        v = math.exp(rng.uniform(-self.spread, self.spread))
        u = rng.uniform(-self.spread, self.spread)
        return (float(u), float(v))

    def parse_point(self, raw: Any) -> HalfPlanePoint:
        z = _as_complex(raw)
        return (z.real, z.imag)

    def dump_point(self, p: HalfPlanePoint) -> list[float]:
        return [float(p[0]), float(p[1])]
