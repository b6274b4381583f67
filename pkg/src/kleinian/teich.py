"""Cusp shapes as points of the Teichmueller space of the torus.

A marked flat torus ``C / (Z u + Z v)`` has modulus ``tau = v / u`` (swapped
when needed so that ``Im tau > 0``).  The Teichmueller space is the upper half
plane with its hyperbolic metric; no reduction to the modular fundamental
domain is done.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import kernels
from .comprbody import (
    DegenerateLattice,
    build_rep,
    check_lattice,
    lattice_area,
    suggest_scale,
    verify_structure,
)


class NotPrimitive(ValueError):
    pass


@dataclass(frozen=True)
class TorusShape:
    tau: complex
    lattice: tuple[complex, complex] | None = None

    def __post_init__(self):
        object.__setattr__(self, "tau", complex(self.tau))
        if not self.tau.imag > 0:
            raise ValueError(f"modulus must lie in the upper half plane, got {self.tau}")

    def to_json(self) -> dict:
        return {"tau": [self.tau.real, self.tau.imag]}


@dataclass(frozen=True)
class FlatTorus:
    u: complex
    v: complex

    def __post_init__(self):
        object.__setattr__(self, "u", complex(self.u))
        object.__setattr__(self, "v", complex(self.v))
        if lattice_area(self.u, self.v) <= 0:
            raise DegenerateLattice(f"u={self.u} and v={self.v} are dependent")

    @property
    def area(self) -> float:
        return lattice_area(self.u, self.v)

    def shape(self) -> TorusShape:
        return cusp_shape(self.u, self.v)


def cusp_shape(a: complex, b: complex) -> TorusShape:
    a, b = complex(a), complex(b)
    check_lattice(a, b)
    tau = b / a
    if tau.imag < 0:
        tau = a / b
    return TorusShape(tau, (a, b))


def teich_distance(t1: TorusShape, t2: TorusShape) -> float:
    # 2 asinh(|z-w| / (2 sqrt(Im z Im w))) == arccosh(1 + |z-w|^2 / (2 Im z Im w)),
    # but keeps full precision for nearby points
    z, w = t1.tau, t2.tau
    return 2.0 * math.asinh(abs(z - w) / (2.0 * math.sqrt(z.imag * w.imag)))


def slope_length(t: FlatTorus, slope: tuple[int, int]) -> float:
    p, q = (int(x) for x in slope)
    if (p, q) == (0, 0) or math.gcd(p, q) != 1:
        raise NotPrimitive(f"slope {slope} is not primitive")
    return abs(p * t.u + q * t.v)


def census_window(t: FlatTorus, L: float) -> tuple[int, int]:
    """Bounds on ``|p|`` and ``|q|`` for ``|p u + q v| <= L``.

    The component of ``p u + q v`` orthogonal to ``u`` has length
    ``|q| area / |u|``, which bounds ``|q|``; symmetrically for ``p``.
    """
    area = t.area
    slack = 1e-9  # keep boundary slopes; the kernel filters by true length
    return int(math.floor(L * abs(t.v) / area + slack)), int(math.floor(L * abs(t.u) / area + slack))


def short_slopes(t: FlatTorus, L: float) -> list[tuple[tuple[int, int], float]]:
    """Every primitive slope of length at most ``L``, shortest first.

    Slopes are taken up to sign, represented with ``q > 0`` or as ``(1, 0)``;
    ties in length are broken lexicographically on ``(p, q)``.
    """
    if not L > 0:
        return []
    pmax, qmax = census_window(t, L)
    ps, qs, ls = kernels.slope_census(t.u, t.v, float(L), pmax, qmax)
    rows = sorted(zip(ls.tolist(), ps.tolist(), qs.tolist()))
    return [((p, q), length) for length, p, q in rows]


def params_for_shape(target: TorusShape, n: int, tol: float = 1e-9, max_doublings: int = 64):
    """Cusp translations ``(s, s tau)`` realising ``target`` on a verified structure."""
    s = suggest_scale(n)
    for _ in range(max_doublings):
        a, b = complex(s), s * target.tau
        if verify_structure(build_rep(n, a, b), tol).verified:
            return a, b
        s *= 2.0
    raise RuntimeError("scale search did not terminate")  # unreachable for Im tau > 0
