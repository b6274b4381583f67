"""Rectangle bookkeeping for belted sums of augmented chain links.

A chain-link cusp is modelled by a Euclidean rectangle.  Its ``width`` runs
along the longitude, where the cutting 3-punctured sphere meets the cusp in
meridian curves at ``cut_positions``; its ``height`` is the meridian length.
A belted sum cuts both cusps in half along those curves and glues one half of
each, so widths average and heights must agree.  All arithmetic is exact for
``int``/``Fraction`` inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .teich import TorusShape, cusp_shape

SPACING_TOL = 1e-9


class IncompatibleCut(ValueError):
    pass


@dataclass(frozen=True)
class RectCusp:
    width: float
    height: float
    cut_positions: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "cut_positions", tuple(sorted(self.cut_positions)))
        if not (self.width > 0 and self.height > 0):
            raise ValueError("width and height must be positive")
        cuts = self.cut_positions
        if any(not 0 <= c < self.width for c in cuts):
            raise ValueError(f"cut positions {cuts} must lie in [0, {self.width})")
        if len(cuts) > 1:
            gaps = [b - a for a, b in zip(cuts, cuts[1:])] + [self.width - cuts[-1] + cuts[0]]
            if max(gaps) - min(gaps) > SPACING_TOL:
                raise ValueError(f"cuts {cuts} are not equidistant")

    @property
    def ratio(self):
        """Width over height, the similarity invariant of the rectangle."""
        return self.width / self.height

    def shape(self) -> TorusShape:
        """Modulus with the meridian as first generator."""
        return cusp_shape(complex(self.height), complex(0, self.width))


def _half(x):
    return x / 2 if isinstance(x, float) else Fraction(x) / 2


def belt_sum_chain(c1: RectCusp, c2: RectCusp) -> RectCusp:
    for c in (c1, c2):
        if len(c.cut_positions) != 2:
            raise IncompatibleCut(f"expected 2 cuts, got {len(c.cut_positions)}")
    if abs(c1.height - c2.height) > SPACING_TOL:
        raise IncompatibleCut(f"heights {c1.height} and {c2.height} differ")
    width = _half(c1.width) + _half(c2.width)
    return RectCusp(width, c1.height, (0 * width, _half(width)))


def chain_model_l3() -> RectCusp:
    """Maximal cusp of a chain component of the augmented 3-chain link: 2 x 4."""
    return RectCusp(4, 2, (0, 2))


def chain_model_l2() -> RectCusp:
    """Maximal cusp of a chain component of the augmented 2-chain link: 2 x 4."""
    return RectCusp(4, 2, (0, 2))


def chain_cusp(n: int) -> RectCusp:
    """Chain-component cusp of the augmented (2n+1)-chain link."""
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    cusp = chain_model_l3()
    for _ in range(int(n) - 1):
        cusp = belt_sum_chain(cusp, chain_model_l2())
    return cusp


def chain_cusp_shape(n: int) -> TorusShape:
    return chain_cusp(n).shape()


def augmentation_meridian(n: int, m3, m2):
    """Meridian of the augmentation cusp: one L3 cusp stacked on n-1 L2 cusps."""
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    if not (m3 > 0 and m2 > 0):
        raise ValueError("meridian lengths must be positive")
    return m3 + (int(n) - 1) * m2
