"""
β、H、T 距离与可比性
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hilbert_cone.compute.core_metric import (
    beta,
    comparable,
    hilbert_distance,
    hilbert_from_log_densities,
    log_beta,
    normalize,
    pairwise_hilbert,
    t_distance,
    theta_seminorm,
)
from hilbert_cone.core.errors import (
    DimensionError,
    DomainError,
    NegativeEntryError,
    RatioOverflowError,
    ValidationError,
)
from hilbert_cone.models.cones import ExtendedDistance, LogDensityVector, PositiveVector, SimplexPoint
from tests.strategies import (
    positive_vectors,
    random_simplex,
    scales,
    sparse_vector_pairs,
    vector_pairs,
    vector_triples,
)


def bisect_beta(x: np.ndarray, y: np.ndarray) -> float:
    """对谓词 r·x − y ≥ 0 二分求最小 r"""
    lo, hi = 0.0, 1.0
    while not np.all(hi * x - y >= 0):
        hi *= 2.0
    for _ in range(200):
        mid = (lo + hi) / 2.0
        if np.all(mid * x - y >= 0):
            hi = mid
        else:
            lo = mid
    return hi


class TestBeta:
    def test_identical_vectors(self):
        assert beta(PositiveVector([1, 1]), PositiveVector([1, 1])) == 1.0

    def test_max_ratio(self):
        assert beta(PositiveVector([1, 1]), PositiveVector([2, 1])).value == pytest.approx(2.0, rel=1e-15)

    def test_support_not_contained_is_infinite(self):
        assert beta(PositiveVector([1, 0]), PositiveVector([1, 1])).is_infinite

    def test_zero_on_larger_support(self):
        assert beta(PositiveVector([1, 1]), PositiveVector([0, 3])).value == pytest.approx(3.0)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            beta(PositiveVector([1, 1]), PositiveVector([1, 1, 1]))

    def test_agrees_with_bisection(self, rng):
        for _ in range(200):
            n = int(rng.integers(2, 7))
            x = np.exp(rng.uniform(-3, 3, n))
            y = np.exp(rng.uniform(-3, 3, n))
            value = beta(PositiveVector(x), PositiveVector(y))
            assert value.value == pytest.approx(bisect_beta(x, y), rel=1e-9)

    def test_log_beta_matches_beta(self):
        x, y = PositiveVector([1, 4, 2]), PositiveVector([3, 1, 2])
        assert log_beta(x, y) == pytest.approx(math.log(3.0), rel=1e-15)
        assert log_beta(PositiveVector([1, 0]), PositiveVector([1, 1])) == math.inf

    def test_overflow_points_to_log_beta(self):
        x = PositiveVector([math.exp(-700), 1.0])
        y = PositiveVector([math.exp(700), 1.0])
        with pytest.raises(RatioOverflowError, match="log_beta"):
            beta(x, y)
        assert log_beta(x, y) == pytest.approx(1400.0, rel=1e-12)
        assert hilbert_distance(x, y).value == pytest.approx(1400.0, rel=1e-12)

    def test_overflow_is_a_domain_error(self):
        with pytest.raises(DomainError):
            beta(PositiveVector([math.exp(-400), 1.0]), PositiveVector([math.exp(400), 1.0]))

    def test_large_but_representable_ratio(self):
        value = beta(PositiveVector([math.exp(-300), 1.0]), PositiveVector([math.exp(300), 1.0]))
        assert math.log(value.value) == pytest.approx(600.0, rel=1e-12)

    @given(vector_pairs())
    def test_duality(self, pair):
        x, y = pair
        product = beta(x, y).value * beta(y, x).value
        assert product >= 1.0 - 1e-12


class TestHilbertDistance:
    def test_collinear_rays(self):
        h = hilbert_distance(PositiveVector([1, 2, 3]), PositiveVector([2, 4, 6]))
        assert h.value == pytest.approx(0.0, abs=1e-15)

    def test_powers_of_two_are_exactly_collinear(self):
        assert hilbert_distance(PositiveVector([1, 2]), PositiveVector([2, 4])).value == 0.0

    def test_log_two(self):
        h = hilbert_distance(PositiveVector([1, 1]), PositiveVector([2, 1]))
        assert h.value == pytest.approx(math.log(2), rel=1e-12)

    def test_different_supports(self):
        h = hilbert_distance(PositiveVector([1, 0, 1]), PositiveVector([1, 1, 1]))
        assert h.is_infinite
        assert h.to_json() == "inf"

    def test_shared_restricted_support(self):
        h = hilbert_distance(PositiveVector([0, 1, 2]), PositiveVector([0, 2, 2]))
        assert h.value == pytest.approx(math.log(2), rel=1e-12)

    @given(vector_pairs())
    def test_symmetry_is_exact(self, pair):
        x, y = pair
        assert hilbert_distance(x, y) == hilbert_distance(y, x)
        assert t_distance(x, y) == t_distance(y, x)

    @given(vector_triples())
    def test_triangle_inequality(self, triple):
        x, y, z = triple
        assert hilbert_distance(x, z).value <= hilbert_distance(x, y).value + hilbert_distance(y, z).value + 1e-10
        assert t_distance(x, z) <= t_distance(x, y) + t_distance(y, z) + 1e-10

    @given(vector_pairs(), scales, scales)
    def test_projective_invariance(self, pair, a, b):
        x, y = pair
        scaled = hilbert_distance(PositiveVector(a * x.weights), PositiveVector(b * y.weights))
        assert scaled.value == pytest.approx(hilbert_distance(x, y).value, rel=1e-12, abs=1e-11)

    def test_simplex_identity_of_indiscernibles(self, rng):
        for _ in range(50):
            mu = random_simplex(rng, 4)
            assert hilbert_distance(mu, SimplexPoint(mu.weights.copy())).value == 0.0
            nu = random_simplex(rng, 4)
            assert hilbert_distance(mu, nu).value > 0.0


class TestTDistance:
    def test_collinear(self):
        assert t_distance(PositiveVector([1, 2]), PositiveVector([3, 6])) == pytest.approx(0.0, abs=1e-15)

    def test_log_nine(self):
        # tanh(log 9 / 4) = (3 - 1) / (3 + 1)
        assert t_distance(PositiveVector([1, 1]), PositiveVector([9, 1])) == pytest.approx(0.5, rel=1e-12)

    def test_infinite_distance_maps_to_one(self):
        assert t_distance(PositiveVector([1, 0]), PositiveVector([1, 1])) == 1.0


class TestComparable:
    @pytest.mark.parametrize(
        "x, y, expected",
        [
            ([1, 2], [3, 4], True),
            ([1, 0], [1, 1], False),
            ([0, 1, 2], [0, 5, 1], True),
        ],
    )
    def test_examples(self, x, y, expected):
        assert comparable(PositiveVector(x), PositiveVector(y)) is expected

    @given(sparse_vector_pairs())
    def test_matches_finite_distance(self, pair):
        x, y = pair
        finite = hilbert_distance(x, y).is_finite
        assert comparable(x, y) == finite
        assert finite == (x.support == y.support)
        assert finite == (math.isfinite(log_beta(x, y)) and math.isfinite(log_beta(y, x)))


class TestNormalize:
    @pytest.mark.parametrize(
        "x, expected",
        [([2, 2], [0.5, 0.5]), ([1, 3], [0.25, 0.75]), ([0, 5], [0.0, 1.0])],
    )
    def test_examples(self, x, expected):
        assert normalize(PositiveVector(x)).weights == pytest.approx(expected, abs=1e-15)

    @given(positive_vectors())
    def test_same_ray(self, x):
        assert hilbert_distance(x, normalize(x)).value == pytest.approx(0.0, abs=1e-12)

    def test_large_magnitudes(self):
        mu = normalize(PositiveVector([math.exp(700), math.exp(699)]))
        assert mu.weights.sum() == pytest.approx(1.0, abs=1e-12)


class TestLogDensities:
    def test_constant_class(self):
        assert theta_seminorm(LogDensityVector([0, 0, 0])) == 0.0

    def test_range(self):
        assert theta_seminorm(LogDensityVector([1, -1, 0])) == 2.0

    def test_matches_hilbert_distance(self):
        mu = SimplexPoint([2 / 3, 1 / 3])
        nu = SimplexPoint([1 / 3, 2 / 3])
        f = LogDensityVector.of(mu) - LogDensityVector.of(nu)
        assert theta_seminorm(f) == pytest.approx(2 * math.log(2), rel=1e-12)
        assert theta_seminorm(f) == pytest.approx(hilbert_distance(mu, nu).value, rel=1e-12)

    def test_constant_shift(self):
        g = LogDensityVector([0.3, -1.2, 2.0])
        f = LogDensityVector(g.entries + 5.0)
        assert hilbert_from_log_densities(f, g) == pytest.approx(0.0, abs=1e-14)

    def test_log_two(self):
        value = hilbert_from_log_densities(LogDensityVector([0, math.log(2)]), LogDensityVector([0, 0]))
        assert value == pytest.approx(hilbert_distance(PositiveVector([1, 1]), PositiveVector([1, 2])).value)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            hilbert_from_log_densities(LogDensityVector([0, 1]), LogDensityVector([0, 1, 2]))

    @given(vector_pairs())
    def test_agrees_with_hilbert_distance(self, pair):
        x, y = pair
        value = hilbert_from_log_densities(LogDensityVector.of(x), LogDensityVector.of(y))
        assert value == pytest.approx(hilbert_distance(x, y).value, rel=1e-12, abs=1e-13)

    def test_boundary_vector_has_no_log_density(self):
        with pytest.raises(ValidationError):
            LogDensityVector.of(PositiveVector([1, 0]))


class TestTypes:
    def test_negative_entry_names_index(self):
        with pytest.raises(NegativeEntryError, match="index 1"):
            PositiveVector([1, -2])

    def test_zero_vector_rejected(self):
        with pytest.raises(ValidationError):
            PositiveVector([0, 0])

    def test_simplex_sum(self):
        with pytest.raises(ValidationError):
            SimplexPoint([0.5, 0.6])

    def test_weights_are_read_only(self):
        x = PositiveVector([1, 2])
        with pytest.raises(ValueError):
            x.weights[0] = 5.0

    def test_extended_distance_ordering(self):
        inf = ExtendedDistance.infinite()
        assert ExtendedDistance(1.0) < inf
        assert ExtendedDistance(1.0) + 2.0 == 3.0
        assert (inf + 1.0).is_infinite
        assert float(inf) == math.inf
        with pytest.raises(ValueError):
            inf.value

    def test_extended_distance_rejects_negative(self):
        with pytest.raises(ValidationError):
            ExtendedDistance(-1.0)


def test_pairwise_hilbert(rng):
    points = [random_simplex(rng, 3) for _ in range(5)] + [SimplexPoint([0.5, 0.5, 0.0])]
    matrix = pairwise_hilbert(points)
    assert np.array_equal(matrix, matrix.T)
    assert np.all(np.diag(matrix) == 0.0)
    assert np.all(np.isinf(matrix[-1, :-1]))
    assert matrix[0, 1] == hilbert_distance(points[0], points[1]).value


@settings(max_examples=50)
@given(st.integers(min_value=2, max_value=6))
def test_uniform_points_are_at_distance_zero(dim):
    assert hilbert_distance(SimplexPoint.uniform(dim), PositiveVector(np.ones(dim))).value == 0.0
