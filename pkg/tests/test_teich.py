import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kleinian.comprbody import DegenerateLattice, build_rep, suggest_scale, verify_structure
from kleinian.teich import (
    FlatTorus,
    NotPrimitive,
    TorusShape,
    cusp_shape,
    params_for_shape,
    short_slopes,
    slope_length,
    teich_distance,
)

HEX = complex(-0.25, math.sqrt(3) / 4)


def brute_slopes(u, v, L):
    """Double loop with a bound from the angle between u and v."""
    sin = abs((u.conjugate() * v).imag) / (abs(u) * abs(v))
    N = math.ceil(L / (sin * min(abs(u), abs(v)))) + 1
    out = set()
    for p in range(-N, N + 1):
        for q in range(0, N + 1):
            if q == 0 and p != 1:
                continue
            if math.gcd(p, q) != 1:
                continue
            if abs(p * u + q * v) <= L:
                out.add((p, q))
    return out


def test_example_shape():
    t = cusp_shape(4, -1 + 1j * math.sqrt(3))
    assert abs(t.tau - HEX) <= 1e-12


def test_shape_square_and_swap():
    assert cusp_shape(5, 5j).tau == 1j
    assert cusp_shape(5j, 5).tau == 1j


def test_shape_degenerate():
    with pytest.raises(DegenerateLattice):
        cusp_shape(1, 2)


def test_lower_half_plane_rejected():
    with pytest.raises(ValueError):
        TorusShape(-1j)


def test_distance_values():
    assert teich_distance(TorusShape(1j), TorusShape(1j)) == 0
    d = teich_distance(TorusShape(1j), TorusShape(2j))
    assert abs(d - math.log(2)) <= 1e-12
    # cosh d = 1 + |z-w|^2 / (2 Im z Im w)
    assert abs(math.cosh(d) - (1 + 1 / 4)) <= 1e-12


def test_distance_close_points_keep_precision():
    z = TorusShape(1j)
    w = TorusShape(1j + 1e-9)
    assert abs(teich_distance(z, w) - 1e-9) <= 1e-18


def test_triangle_inequality(rng):
    def pt():
        return TorusShape(complex(rng.uniform(-5, 5), math.exp(rng.uniform(-4, 4))))

    for _ in range(2000):
        x, y, z = pt(), pt(), pt()
        assert teich_distance(x, z) <= teich_distance(x, y) + teich_distance(y, z) + 1e-9


def test_similarity_invariance(rng):
    for _ in range(1000):
        a = cmath.rect(rng.uniform(0.1, 10), rng.uniform(0, 2 * math.pi))
        b = a * cmath.rect(rng.uniform(0.2, 5), rng.uniform(0.1, math.pi - 0.1))
        lam = cmath.rect(rng.uniform(0.01, 100), rng.uniform(0, 2 * math.pi))
        t1, t2 = cusp_shape(a, b).tau, cusp_shape(lam * a, lam * b).tau
        assert abs(t1 - t2) <= 1e-9 * max(1.0, abs(t1))


@pytest.mark.parametrize("R", [7.5, 10, 100])
def test_long_rectangles_have_one_short_slope(R):
    census = short_slopes(FlatTorus(1, R * 1j), 6)
    assert [s for s, _ in census] == [(1, 0)]


def test_slope_counts():
    assert len(short_slopes(FlatTorus(1, 2j), 6)) == 16
    census = short_slopes(FlatTorus(1, 1j), 1)
    assert [s for s, _ in census] == [(0, 1), (1, 0)]
    assert short_slopes(FlatTorus(1, 2j), 0) == []


def test_slope_length():
    assert slope_length(FlatTorus(1, 1j), (3, 4)) == 5
    with pytest.raises(NotPrimitive):
        slope_length(FlatTorus(1, 1j), (2, 4))
    with pytest.raises(NotPrimitive):
        slope_length(FlatTorus(1, 1j), (0, 0))


def test_census_matches_brute_force(rng):
    for _ in range(100):
        u = cmath.rect(rng.uniform(0.5, 3), rng.uniform(0, 2 * math.pi))
        v = u * cmath.rect(rng.uniform(0.3, 3), rng.uniform(0.5, math.pi - 0.5))
        L = rng.uniform(0.5, 8)
        got = short_slopes(FlatTorus(u, v), L)
        assert {s for s, _ in got} == brute_slopes(u, v, L)
        lengths = [x for _, x in got]
        assert lengths == sorted(lengths)


@settings(max_examples=100, deadline=None)
@given(
    st.floats(0.5, 3), st.floats(0.6, 2.5), st.floats(0.5, 3),
    st.floats(0, 2 * math.pi), st.floats(0.5, 4),
)
def test_census_rotation_and_scaling(r, ang, ratio, rot, scale):
    u = complex(r, 0)
    v = cmath.rect(r * ratio, ang)
    L = 5.0
    base = sorted(x for _, x in short_slopes(FlatTorus(u, v), L))
    w = cmath.exp(1j * rot)
    rotated = sorted(x for _, x in short_slopes(FlatTorus(w * u, w * v), L))
    assert len(rotated) == len(base)
    assert all(abs(x - y) <= 1e-9 for x, y in zip(base, rotated))
    scaled = sorted(x for _, x in short_slopes(FlatTorus(scale * u, scale * v), L * scale))
    assert len(scaled) == len(base)
    assert all(abs(x * scale - y) <= 1e-9 * scale for x, y in zip(base, scaled))


@pytest.mark.parametrize("tau, n", [(1j, 1), (HEX, 1), (1j, 3), (0.3 + 0.5j, 2)])
def test_params_for_shape(tau, n):
    a, b = params_for_shape(TorusShape(tau), n)
    assert abs(cusp_shape(a, b).tau - tau) <= 1e-12
    assert abs(a) >= suggest_scale(n)
    assert verify_structure(build_rep(n, a, b)).verified


def test_params_for_example_shape_scale():
    a, b = params_for_shape(TorusShape(HEX), 1)
    assert a == suggest_scale(1)
    assert abs(b - a * HEX) <= 1e-12
