"""Isometric spheres, stored by their boundary circles in the complex plane."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .moebius import ZERO_TOL, MoebiusMap, apply_boundary

TANGENT_TOL = 1e-9


class FixesInfinity(ValueError):
    """The element fixes infinity and so has no isometric sphere."""


class ImageIsLine(ValueError):
    pass


@dataclass(frozen=True)
class IsometricSphere:
    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not self.radius > 0:
            raise ValueError(f"radius must be positive, got {self.radius}")

    def translate(self, t) -> "IsometricSphere":
        return IsometricSphere(self.center + t, self.radius)

    def isclose(self, other: "IsometricSphere", tol: float = 1e-9) -> bool:
        return abs(self.center - other.center) <= tol and abs(self.radius - other.radius) <= tol


def isometric_sphere(m: MoebiusMap, tol: float = ZERO_TOL) -> IsometricSphere:
    """Center ``-d/c`` and radius ``1/|c|``."""
    if abs(m.c) <= tol:
        raise FixesInfinity(f"c = {m.c} vanishes; the element fixes infinity")
    return IsometricSphere(-m.d / m.c, 1.0 / abs(m.c))


def image_under(m: MoebiusMap, s: IsometricSphere, tol: float = 1e-12) -> IsometricSphere:
    """The Moebius image of the boundary circle of ``s``.

    Uses the standard formula for the image of a circle: the pole ``-d/c``
    is inverted through the circle to find the preimage of the new center.
    """
    z0, r = s.center, s.radius
    if abs(m.c) <= ZERO_TOL:
        # affine map z -> (a z + b) / d
        k = m.a / m.d
        return IsometricSphere(k * z0 + m.b / m.d, abs(k) * r)
    pole = -m.d / m.c
    w = pole - z0
    gap = abs(w) ** 2 - r * r
    # gap is the power of the pole w.r.t. the circle; zero means the image is a line
    if abs(gap) <= tol * max(1.0, r * r):
        raise ImageIsLine("circle passes through the pole of the map")
    # image center = image of the reflection of the pole in the circle
    if abs(w) <= 1e-14 * r:
        center = m.a / m.c
    else:
        center = apply_boundary(m, z0 + r * r / w.conjugate())
    radius = r / (abs(m.c) ** 2 * abs(gap))
    return IsometricSphere(center, radius)


class Relation(str, Enum):
    DISJOINT = "disjoint"
    TANGENT = "tangent"
    OVERLAPPING = "overlapping"


@dataclass(frozen=True)
class Separation:
    relation: Relation
    margin: float

    @property
    def depth(self) -> float:
        return -self.margin


def margin(s1: IsometricSphere, s2: IsometricSphere) -> float:
    return abs(s1.center - s2.center) - (s1.radius + s2.radius)


def disjoint(s1: IsometricSphere, s2: IsometricSphere, tol: float = TANGENT_TOL) -> Separation:
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    mg = margin(s1, s2)
    if mg > tol:
        return Separation(Relation.DISJOINT, mg)
    if abs(mg) <= tol:
        return Separation(Relation.TANGENT, mg)
    return Separation(Relation.OVERLAPPING, mg)
