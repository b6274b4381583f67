"""Explicit representations of pi_1 of the (1; n+1)-compression body.

``alpha`` and ``beta`` act as translations by ``a`` and ``b``; ``gamma_1`` is
``[[2, -1], [1, 0]]`` and ``gamma_{i+1} = A gamma_i A^-1`` with ``A`` the
translation by 5.  ``verify_structure`` checks the hypotheses under which the
isometric spheres of the ``gamma_j^{+-1}`` together with a vertical
fundamental domain for the cusp group cut out a fundamental region.
"""

from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .isosphere import TANGENT_TOL, IsometricSphere, isometric_sphere
from .moebius import PARABOLIC_TOL, MoebiusMap, classify, Kind

GAMMA1 = MoebiusMap(2, -1, 1, 0)
HANDLE_SHIFT = 5.0
LATTICE_TOL = 1e-9


class DegenerateLattice(ValueError):
    """``a`` and ``b`` are linearly dependent over the reals."""


def lattice_area(a: complex, b: complex) -> float:
    return abs((complex(a).conjugate() * complex(b)).imag)


def check_lattice(a: complex, b: complex) -> None:
    a, b = complex(a), complex(b)
    if a == 0 or abs((b / a).imag) <= LATTICE_TOL:
        raise DegenerateLattice(f"a={a} and b={b} do not span a lattice")


def lattice_window(a: complex, b: complex, radius: float) -> list[tuple[int, int]]:
    """All ``(p, q) != (0, 0)`` with ``|p a + q b| <= radius``."""
    area = lattice_area(a, b)
    pmax = int(math.floor(radius * abs(b) / area))
    qmax = int(math.floor(radius * abs(a) / area))
    out = []
    for p in range(-pmax, pmax + 1):
        for q in range(-qmax, qmax + 1):
            if (p or q) and abs(p * a + q * b) <= radius:
                out.append((p, q))
    return out


@dataclass(frozen=True)
class VerticalFundamentalDomain:
    """The parallelogram ``{basepoint + s a + t b : 0 <= s, t < 1}``."""

    basepoint: complex
    a: complex
    b: complex

    def __post_init__(self):
        if lattice_area(self.a, self.b) <= 0:
            raise DegenerateLattice("domain has zero area")

    def corners(self) -> list[complex]:
        z = self.basepoint
        return [z, z + self.a, z + self.a + self.b, z + self.b]

    def coords(self, z: complex) -> tuple[float, float]:
        """Coefficients ``(s, t)`` with ``z = basepoint + s a + t b``."""
        w = complex(z) - self.basepoint
        a, b = complex(self.a), complex(self.b)
        det = (a.conjugate() * b).imag
        s = (w.conjugate() * b).imag / det
        t = (a.conjugate() * w).imag / det
        return s, t

    def contains(self, z: complex, closed: bool = False) -> bool:
        s, t = self.coords(z)
        if closed:
            return 0 <= s <= 1 and 0 <= t <= 1
        return 0 <= s < 1 and 0 <= t < 1

    def inset(self, z: complex) -> float:
        """Signed Euclidean distance from ``z`` to the boundary, positive inside."""
        s, t = self.coords(z)
        area = lattice_area(self.a, self.b)
        ha = area / abs(self.a)  # distance between the two edges parallel to a
        hb = area / abs(self.b)
        return min(t * ha, (1 - t) * ha, s * hb, (1 - s) * hb)

    def to_json(self) -> dict:
        return {"basepoint": _cpair(self.basepoint), "a": _cpair(self.a), "b": _cpair(self.b)}


@dataclass(frozen=True)
class CompressionBodyRep:
    n: int
    a: complex
    b: complex
    alpha: MoebiusMap
    beta: MoebiusMap
    gammas: tuple[MoebiusMap, ...]

    @classmethod
    def from_generators(cls, n: int, a, b, gamma1: MoebiusMap = GAMMA1, shift=HANDLE_SHIFT):
        """Build without requiring the gammas to be parabolic (used by the pinch search)."""
        if int(n) != n or n < 1:
            raise ValueError(f"n must be a positive integer, got {n}")
        a, b = complex(a), complex(b)
        check_lattice(a, b)
        A = MoebiusMap.translation(shift)
        Ainv = A.inverse()
        gammas = [gamma1]
        for _ in range(int(n) - 1):
            gammas.append(A @ gammas[-1] @ Ainv)
        return cls(int(n), a, b, MoebiusMap.translation(a), MoebiusMap.translation(b), tuple(gammas))

    def generators(self) -> dict[str, MoebiusMap]:
        gens = {"a": self.alpha, "A": self.alpha.inverse(), "b": self.beta, "B": self.beta.inverse()}
        for j, g in enumerate(self.gammas, start=1):
            gens[f"g{j}"] = g
            gens[f"G{j}"] = g.inverse()
        return gens

    def spheres(self) -> list[tuple[str, IsometricSphere]]:
        """``I(gamma_j)`` labelled ``gj`` and ``I(gamma_j^-1)`` labelled ``Gj``."""
        out = []
        for j, g in enumerate(self.gammas, start=1):
            out.append((f"g{j}", isometric_sphere(g)))
            out.append((f"G{j}", isometric_sphere(g.inverse())))
        return out

    def default_domain(self) -> VerticalFundamentalDomain:
        centers = [s.center for _, s in self.spheres()]
        com = sum(centers) / len(centers)
        return VerticalFundamentalDomain(com - (self.a + self.b) / 2, self.a, self.b)


def build_rep(n: int, a, b) -> CompressionBodyRep:
    rep = CompressionBodyRep.from_generators(n, a, b)
    for j, g in enumerate(rep.gammas, start=1):
        if classify(g, PARABOLIC_TOL) is not Kind.PARABOLIC:
            raise ArithmeticError(f"gamma_{j} lost parabolicity: trace {g.trace}")
    return rep


# ---------------------------------------------------------------------------
# certificate


@dataclass(frozen=True)
class MarginEntry:
    pair: tuple[str, str]
    margin: float
    kind: str  # "paired", "disjoint", "translate" or "contained"


@dataclass
class StructureCertificate:
    verified: bool
    reason: str | None
    n: int
    a: complex
    b: complex
    tol: float
    margins: list[MarginEntry] = field(default_factory=list)
    domain: VerticalFundamentalDomain | None = None

    @property
    def verdict(self) -> str:
        return "verified" if self.verified else "rejected"

    def min_margin(self, kind: str | None = None) -> float:
        vals = [m.margin for m in self.margins if kind is None or m.kind == kind]
        return min(vals) if vals else math.inf

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "reason": self.reason,
            "n": self.n,
            "a": _cpair(self.a),
            "b": _cpair(self.b),
            "tol": self.tol,
            "margins": [
                {"pair": list(m.pair), "kind": m.kind, "margin": _num(m.margin)} for m in self.margins
            ],
            "domain": self.domain.to_json() if self.domain else None,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False)


def _cpair(z) -> list[float]:
    z = complex(z)
    return [_num(z.real), _num(z.imag)]


def _num(x: float) -> float:
    # stable JSON: 12 significant digits, no negative zero
    x = float(f"{x:.12g}")
    return 0.0 if x == 0 else x


def verify_structure(rep: CompressionBodyRep, tol: float = TANGENT_TOL) -> StructureCertificate:
    """Check the disjointness and containment hypotheses for ``rep``.

    1. the spheres ``I(gamma_j^{+-1})`` are pairwise disjoint; the two spheres of
       one ``gamma_j`` are paired by it and may touch but not overlap;
    2. every sphere lies in the open default vertical fundamental domain;
    3. no sphere meets a lattice translate of any sphere.
    """
    labelled = rep.spheres()
    labels = [lab for lab, _ in labelled]
    centers = np.array([s.center for _, s in labelled], dtype=np.complex128)
    radii = np.array([s.radius for _, s in labelled], dtype=np.float64)
    k = len(labels)
    domain = rep.default_domain()
    entries: list[tuple[tuple, MarginEntry]] = []
    failures: list[str] = []

    intra = kernels.pairwise_margins(centers, radii, centers, radii)
    for i in range(k):
        for j in range(i + 1, k):
            mg = float(intra[i, j])
            paired = labels[i][1:] == labels[j][1:]
            kind = "paired" if paired else "disjoint"
            entries.append(((0, i, j, 0, 0), MarginEntry((labels[i], labels[j]), mg, kind)))
            ok = mg >= -tol if paired else mg > tol
            if not ok:
                failures.append(f"{labels[i]} and {labels[j]} overlap (margin {mg:.6g})")

    for i in range(k):
        mg = domain.inset(centers[i]) - radii[i]
        entries.append(((2, i, 0, 0, 0), MarginEntry((labels[i], "domain"), mg, "contained")))
        if not mg > tol:
            failures.append(f"{labels[i]} is not inside the vertical fundamental domain (margin {mg:.6g})")

    diam = float(np.max(np.abs(centers[:, None] - centers[None, :]))) if k > 1 else 0.0
    rmax = float(radii.max())
    # every translate that could touch lies in the window; the 8 nearest
    # neighbours are always listed so the certificate shows the clearance
    ring = [(p, q) for p in (-1, 0, 1) for q in (-1, 0, 1) if p or q]
    window = sorted(set(lattice_window(rep.a, rep.b, diam + 4 * rmax)) | set(ring))
    shifts = np.array([p * rep.a + q * rep.b for p, q in window], dtype=np.complex128)
    moved = (centers[None, :] + shifts[:, None]).ravel()
    moved_r = np.tile(radii, len(window))
    across = kernels.pairwise_margins(centers, radii, moved, moved_r)
    for w, (p, q) in enumerate(window):
        for i in range(k):
            for j in range(k):
                key = (i, j, p, q)
                if (j, i, -p, -q) < key:
                    continue
                mg = float(across[i, w * k + j])
                pair = (labels[i], f"{labels[j]}@({p},{q})")
                entries.append(((1,) + key, MarginEntry(pair, mg, "translate")))
                if not mg > tol:
                    failures.append(f"{pair[0]} meets translate {pair[1]} (margin {mg:.6g})")

    entries.sort(key=lambda e: e[0])
    return StructureCertificate(
        verified=not failures,
        reason="; ".join(failures) if failures else None,
        n=rep.n,
        a=rep.a,
        b=rep.b,
        tol=tol,
        margins=[e for _, e in entries],
        domain=domain,
    )


# ---------------------------------------------------------------------------
# scale search

_SEARCH_ANGLES = [math.radians(15 * k) for k in range(12)]
_SEARCH_OPENINGS = [math.radians(d) for d in (30, 60, 90, 120, 150)]
_SEARCH_STRETCH = (1.0, 1.5, 2.0)
_SEARCH_STEP = 0.25


def _passes_family(n: int, L: float, tol: float) -> bool:
    for phi in _SEARCH_ANGLES:
        for theta in _SEARCH_OPENINGS:
            for ra in _SEARCH_STRETCH:
                for rb in _SEARCH_STRETCH:
                    a = ra * L * complex(math.cos(phi), math.sin(phi))
                    b = rb * L * complex(math.cos(phi + theta), math.sin(phi + theta))
                    if not verify_structure(CompressionBodyRep.from_generators(n, a, b), tol).verified:
                        return False
    return True


@functools.lru_cache(maxsize=None)
def suggest_scale(n: int, tol: float = TANGENT_TOL) -> float:
    """Smallest lattice size (on a 0.25 grid) that the verifier accepts.

    The verifier is run over a family of test lattices: 12 directions for
    ``a``, opening angles between 30 and 150 degrees (so ``|sin| >= 1/2``)
    and lengths ``L``, ``1.5 L`` and ``2 L`` for each generator.
    """
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    spheres = CompressionBodyRep.from_generators(n, 1e3, 1e3j).spheres()
    centers = [s.center for _, s in spheres]
    diam = max(abs(z - w) for z in centers for w in centers)
    # a horizontal generator must at least clear the sphere row
    L = _SEARCH_STEP * math.floor((diam + 2) / _SEARCH_STEP)
    while not _passes_family(int(n), L, tol):
        L += _SEARCH_STEP
    return L
