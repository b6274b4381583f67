"""Elements of PSL(2, C) acting on the boundary of upper half-space."""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from enum import Enum

import numpy as np

DET_TOL = 1e-12
PARABOLIC_TOL = 1e-9
ZERO_TOL = 1e-12


class SingularMatrix(ValueError):
    pass


class Infinity:
    """The point at infinity of the Riemann sphere (a singleton)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()


def is_inf(z) -> bool:
    return z is INF


class Kind(str, Enum):
    IDENTITY = "identity"
    PARABOLIC = "parabolic"
    ELLIPTIC = "elliptic"
    LOXODROMIC = "loxodromic"


def _flip(x: complex) -> bool:
    # True when x must be negated so its argument lands in (-pi/2, pi/2].
    eps = ZERO_TOL * abs(x)
    if x.real < -eps:
        return True
    return abs(x.real) <= eps and x.imag < 0


def _canonical(a, b, c, d):
    for x in (a, b, c, d):
        if abs(x) > ZERO_TOL:
            if _flip(x):
                return -a, -b, -c, -d
            break
    return a, b, c, d


@dataclass(frozen=True, eq=False)
class MoebiusMap:
    """A determinant-one matrix ``[[a, b], [c, d]]`` up to sign.

    The constructor rescales by a square root of the determinant and picks the
    sign making the first nonzero entry have argument in (-pi/2, pi/2].
    """

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        a, b, c, d = (complex(x) for x in (self.a, self.b, self.c, self.d))
        det = a * d - b * c
        if abs(det) <= DET_TOL:
            raise SingularMatrix(f"determinant {det} is too close to zero")
        if abs(det - 1) > DET_TOL:
            s = cmath.sqrt(det)
            a, b, c, d = a / s, b / s, c / s, d / s
        a, b, c, d = _canonical(a, b, c, d)
        for name, val in zip("abcd", (a, b, c, d)):
            object.__setattr__(self, name, val)

    @classmethod
    def from_matrix(cls, m) -> "MoebiusMap":
        m = np.asarray(m, dtype=np.complex128)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @classmethod
    def identity(cls) -> "MoebiusMap":
        return cls(1, 0, 0, 1)

    @classmethod
    def translation(cls, t) -> "MoebiusMap":
        return cls(1, t, 0, 1)

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=np.complex128)

    @property
    def trace(self) -> complex:
        return self.a + self.d

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        return compose(self, other)

    def __call__(self, z):
        return apply_boundary(self, z)

    def allclose(self, other: "MoebiusMap", tol: float = 1e-12) -> bool:
        """Entrywise comparison of the two lifts, allowing for a global sign."""
        x = self.matrix()
        y = other.matrix()
        return bool(np.max(np.abs(x - y)) <= tol or np.max(np.abs(x + y)) <= tol)

    def __eq__(self, other):
        if not isinstance(other, MoebiusMap):
            return NotImplemented
        return self.allclose(other)

    def __repr__(self):
        return f"MoebiusMap([[{self.a}, {self.b}], [{self.c}, {self.d}]])"


def normalize(m) -> MoebiusMap:
    """Normalize a 2x2 array (or an existing map) to a canonical ``MoebiusMap``."""
    if isinstance(m, MoebiusMap):
        return MoebiusMap(m.a, m.b, m.c, m.d)
    return MoebiusMap.from_matrix(m)


def compose(m1: MoebiusMap, m2: MoebiusMap) -> MoebiusMap:
    return MoebiusMap(
        m1.a * m2.a + m1.b * m2.c,
        m1.a * m2.b + m1.b * m2.d,
        m1.c * m2.a + m1.d * m2.c,
        m1.c * m2.b + m1.d * m2.d,
    )


def inverse(m: MoebiusMap) -> MoebiusMap:
    return m.inverse()


def apply_boundary(m: MoebiusMap, z):
    """Image of ``z`` (a complex number or ``INF``) under ``m``."""
    if is_inf(z):
        if abs(m.c) <= ZERO_TOL:
            return INF
        return m.a / m.c
    z = complex(z)
    den = m.c * z + m.d
    if den == 0:
        return INF
    return (m.a * z + m.b) / den


def fixes_infinity(m: MoebiusMap, tol: float = ZERO_TOL) -> bool:
    return abs(m.c) <= tol


def is_identity(m: MoebiusMap, tol: float = PARABOLIC_TOL) -> bool:
    x = m.matrix()
    eye = np.eye(2)
    return bool(np.max(np.abs(x - eye)) <= tol or np.max(np.abs(x + eye)) <= tol)


def classify(m: MoebiusMap, tol: float = PARABOLIC_TOL) -> Kind:
    if is_identity(m, tol):
        return Kind.IDENTITY
    tr2 = m.trace**2
    if abs(tr2 - 4) <= tol:
        return Kind.PARABOLIC
    if abs(tr2.imag) <= tol and -tol <= tr2.real < 4:
        return Kind.ELLIPTIC
    return Kind.LOXODROMIC
