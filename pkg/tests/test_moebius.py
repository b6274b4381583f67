import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kleinian.moebius import (
    INF,
    Kind,
    MoebiusMap,
    SingularMatrix,
    apply_boundary,
    classify,
    compose,
    inverse,
    is_inf,
    normalize,
)

from conftest import rand_complex, rand_map

GAMMA1 = MoebiusMap(2, -1, 1, 0)
ALPHA = MoebiusMap(1, 4, 0, 1)


def entries(m):
    return (m.a, m.b, m.c, m.d)


def close(m, target, tol=1e-12):
    return all(abs(x - y) <= tol for x, y in zip(entries(m), target))


def test_normalized_determinant_and_sign():
    m = MoebiusMap(-2, 0, 0, -2)
    assert abs(m.a * m.d - m.b * m.c - 1) <= 1e-12
    assert close(m, (1, 0, 0, 1))
    assert close(MoebiusMap(-2, 1, -1, 0), (2, -1, 1, 0))


def test_sign_rule_edge_of_half_plane():
    # argument pi/2 is kept, -pi/2 is flipped
    assert close(MoebiusMap(1j, 0, 0, -1j), (1j, 0, 0, -1j))
    assert close(MoebiusMap(-1j, 0, 0, 1j), (1j, 0, 0, -1j))
    assert close(MoebiusMap(0, 1, -1, 0), (0, 1, -1, 0))


def test_singular_rejected():
    with pytest.raises(SingularMatrix):
        MoebiusMap(1, 2, 2, 4)


def test_compose_identity():
    assert compose(MoebiusMap.identity(), GAMMA1) == GAMMA1


def test_compose_translation_with_gamma():
    # [[1,4],[0,1]] [[2,-1],[1,0]] = [[2+4, -1], [1, 0]]
    assert close(compose(ALPHA, GAMMA1), (6, -1, 1, 0))


def test_compose_inverse_is_identity():
    m = MoebiusMap(3 + 1j, 2, 1, (1 + 2) / (3 + 1j))
    assert compose(m, inverse(m)) == MoebiusMap.identity()


def test_apply_boundary_examples():
    assert apply_boundary(GAMMA1, INF) == 2
    assert apply_boundary(MoebiusMap(0, 1, -1, 2), INF) == 0
    assert apply_boundary(MoebiusMap.identity(), 1j) == 1j
    assert is_inf(apply_boundary(GAMMA1, 0))
    assert is_inf(apply_boundary(ALPHA, INF))


@pytest.mark.parametrize(
    "m, kind",
    [
        (ALPHA, Kind.PARABOLIC),
        (GAMMA1, Kind.PARABOLIC),
        (MoebiusMap(2, 0, 0, 0.5), Kind.LOXODROMIC),
        (MoebiusMap(-1, 0, 0, -1), Kind.IDENTITY),
        (MoebiusMap(cmath.exp(0.3j), 0, 0, cmath.exp(-0.3j)), Kind.ELLIPTIC),
        (MoebiusMap(1, 1, -1, 0), Kind.ELLIPTIC),
    ],
)
def test_classify(m, kind):
    assert classify(m) is kind


def test_normalize_idempotent_and_multiplicative(rng):
    for _ in range(200):
        x, y = rand_map(rng), rand_map(rng)
        assert close(normalize(normalize(x)), entries(normalize(x)))
        prod = x.matrix() @ y.matrix()
        assert close(compose(normalize(x), normalize(y)), entries(normalize(prod)), tol=1e-9)


def test_classify_conjugation_invariant(rng):
    samples = [
        ALPHA, GAMMA1, MoebiusMap(2, 0, 0, 0.5), MoebiusMap(1, 1, -1, 0),
        MoebiusMap(cmath.exp(0.7j), 0, 0, cmath.exp(-0.7j)), MoebiusMap(1j, 1, 0, -1j),
    ]
    for k in range(1000):
        m = samples[k % len(samples)]
        g = rand_map(rng, 10.0)
        if abs(g.a * g.d - g.b * g.c) > 1e6:
            continue
        conj = g @ m @ g.inverse()
        assert classify(conj, tol=1e-6) is classify(m), (m, g)


def test_action_is_compatible_with_composition(rng):
    for _ in range(1000):
        m1, m2 = rand_map(rng), rand_map(rng)
        z = rand_complex(rng, 5.0)
        inner = apply_boundary(m2, z)
        if is_inf(inner) or abs(m2.c * z + m2.d) < 1e-3:
            continue
        outer = apply_boundary(m1, inner)
        if is_inf(outer) or abs(m1.c * inner + m1.d) < 1e-3:
            continue
        direct = apply_boundary(compose(m1, m2), z)
        assert abs(direct - outer) <= 1e-9 * max(1.0, abs(outer))


finite = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


@settings(max_examples=200, deadline=None)
@given(finite, finite, finite)
def test_canonical_representative_is_unique(a, b, c):
    if abs(a) < 1e-3:
        return
    d = (1 + b * c) / a
    m = MoebiusMap(a, b, c, d)
    minus = MoebiusMap(-a, -b, -c, -d)
    assert close(m, entries(minus), tol=0)
    first = next(x for x in entries(m) if abs(x) > 1e-12)
    # real parts within ZERO_TOL relative are treated as zero
    assert -math.pi / 2 < cmath.phase(first) <= math.pi / 2 + 1e-12
