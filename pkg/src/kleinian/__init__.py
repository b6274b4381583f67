"""Explicit hyperbolic structures on (1;n+1)-compression bodies.

Moebius arithmetic, isometric spheres, certified representations, cusp-shape
geometry, pinched-word search, limit-set figures and chain-link bookkeeping.
"""

from .kernels import BACKEND
from .moebius import INF, Kind, MoebiusMap, apply_boundary, classify, compose, inverse, normalize
from .isosphere import IsometricSphere, Relation, disjoint, image_under, isometric_sphere
from .comprbody import (
    CompressionBodyRep,
    DegenerateLattice,
    StructureCertificate,
    VerticalFundamentalDomain,
    build_rep,
    suggest_scale,
    verify_structure,
)
from .teich import FlatTorus, TorusShape, cusp_shape, params_for_shape, short_slopes, slope_length, teich_distance
from .pinch import (
    GroupWord,
    PinchReport,
    enumerate_pinched,
    max_pinched_example,
    pinch_report,
    pinch_search,
    word_matrix,
)
from .limitset import Circle, CirclePacking, Line, dual_circle, figure_packing, orbit_spheres, render_svg
from .beltsum import RectCusp, augmentation_meridian, belt_sum_chain, chain_cusp, chain_cusp_shape

__version__ = "0.1.0"
