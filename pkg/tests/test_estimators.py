import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from seqminimax import (
    AsymptoticMinimaxFilter,
    Ball,
    DiagonalWeights,
    InvalidConfigError,
    MinimaxFilter,
    NoiseProfile,
    PinskerConfig,
    PinskerFilter,
    TruncationInsufficientError,
    apply_weights,
    asymptotic_weights,
    minimax_weights,
    pinsker_mu,
    pinsker_weights,
    quadratic_penalty,
    worst_case_signal,
)
from seqminimax.estimators import _pinsker_lhs
from seqminimax.search import golden_section_min

BALL = Ball.power(1.0, 1.0)
UNIT = NoiseProfile.constant(1.0)


class TestMinimaxWeights:
    def test_hand_values(self):
        w = minimax_weights(BALL, UNIT, epsilon=1.0, n=2)
        assert w.values[0] == pytest.approx(3.0 / 7.0)
        assert w.values[1] == pytest.approx(5.0 / 41.0)
        assert w.family == "minimax"
        assert w.warning is None

    def test_noiseless_limit_is_identity(self):
        w = minimax_weights(BALL, UNIT, epsilon=1e-9, n=16)
        np.testing.assert_allclose(w.values, 1.0, atol=1e-8)

    def test_tiny_radius_kills_weights(self):
        w = minimax_weights(Ball.power(1.0, 1e-14), UNIT, epsilon=1.0, n=8)
        np.testing.assert_allclose(w.values, 0.0, atol=1e-12)

    def test_monotone_in_epsilon(self):
        lam_small = minimax_weights(BALL, UNIT, epsilon=0.5, n=32).values
        lam_big = minimax_weights(BALL, UNIT, epsilon=1.5, n=32).values
        assert np.all(lam_big < lam_small)

    def test_gap_condition_failure_warns_not_raises(self):
        sigma = NoiseProfile.from_table([1.0, 0.1, 1.0, 1.0])
        with pytest.warns(UserWarning):
            w = minimax_weights(BALL, sigma, epsilon=1.0, n=4)
        assert w.warning is not None
        assert np.all((0 <= w.values) & (w.values <= 1))

    def test_invalid_epsilon(self):
        with pytest.raises(InvalidConfigError):
            minimax_weights(BALL, UNIT, epsilon=0.0, n=4)


class TestAsymptoticWeights:
    def test_hand_values(self):
        w = asymptotic_weights(1.0, 1.0, UNIT, epsilon=1.0, n=2)
        assert w.values[0] == pytest.approx(2.0 / 3.0)
        assert w.values[1] == pytest.approx(0.2)

    def test_noiseless_limit(self):
        w = asymptotic_weights(1.0, 1.0, UNIT, epsilon=1e-9, n=8)
        np.testing.assert_allclose(w.values, 1.0, atol=1e-8)

    def test_strictly_decreasing_under_power_ratio_condition(self):
        w = asymptotic_weights(1.0, 1.0, UNIT, epsilon=0.05, n=10_000)
        assert np.all(np.diff(w.values) < 0)

    def test_invalid_alpha(self):
        with pytest.raises(InvalidConfigError):
            asymptotic_weights(-1.0, 1.0, UNIT, epsilon=1.0, n=4)


class TestPinskerMu:
    def test_hand_solution(self):
        for n in (2, 8, 64):
            mu = pinsker_mu(PinskerConfig(beta=1.0, radius=1.0, epsilon=1.0, n=n))
            assert mu == pytest.approx(0.5, abs=1e-9)

    def test_residual_within_tolerance(self):
        cfg = PinskerConfig(beta=2.0, radius=3.0, epsilon=0.3, n=128)
        mu = pinsker_mu(cfg)
        b = np.arange(1, cfg.n + 1, dtype=float) ** cfg.beta
        assert abs(_pinsker_lhs(mu, b, cfg.epsilon) - cfg.radius) <= 1e-10 * max(cfg.radius, 1.0)

    def test_vanishing_radius_pushes_mu_to_one(self):
        mu = pinsker_mu(PinskerConfig(beta=1.0, radius=1e-12, epsilon=1.0, n=16))
        assert mu < 1.0
        assert mu == pytest.approx(1.0, abs=1e-10)

    def test_truncation_insufficient(self):
        # at mu = 1/b_n the capacity is 1 < 2: active set would pass n = 2
        with pytest.raises(TruncationInsufficientError):
            pinsker_mu(PinskerConfig(beta=1.0, radius=2.0, epsilon=1.0, n=2))

    def test_capacity_strictly_decreasing_in_mu(self):
        b = np.arange(1, 33, dtype=float) ** 1.5
        values = [_pinsker_lhs(mu, b, 0.7) for mu in np.geomspace(1.0 / b[-1], 1.0 / b[0], 40)]
        assert all(a > b_ for a, b_ in zip(values, values[1:]))


class TestPinskerWeights:
    def test_hand_values(self):
        w = pinsker_weights(1.0, 0.5, 4)
        np.testing.assert_allclose(w.values, [0.5, 0.0, 0.0, 0.0])
        assert w.mu == 0.5 and w.beta == 1.0

    def test_zero_mu_is_identity(self):
        np.testing.assert_array_equal(pinsker_weights(1.0, 0.0, 3).values, np.ones(3))

    def test_mu_at_least_one_is_zero_filter(self):
        np.testing.assert_array_equal(pinsker_weights(1.0, 1.0, 3).values, np.zeros(3))
        np.testing.assert_array_equal(pinsker_weights(1.0, 7.0, 3).values, np.zeros(3))


class TestApplyWeights:
    def test_identity_and_zero(self):
        y = np.array([1.0, -2.0, 3.0])
        np.testing.assert_array_equal(apply_weights(np.ones(3), y), y)
        np.testing.assert_array_equal(apply_weights(np.zeros(3), y), np.zeros(3))

    def test_half(self):
        np.testing.assert_allclose(apply_weights(np.array([0.5]), np.array([2.0])), [1.0])

    def test_padding(self):
        out = apply_weights(np.array([1.0, 1.0]), np.array([3.0]))
        np.testing.assert_array_equal(out, [3.0, 0.0])
        out = apply_weights(np.array([1.0]), np.array([3.0, 5.0]))
        np.testing.assert_array_equal(out, [3.0, 0.0])


class TestWeightFamiliesInvariant:
    def test_named_families_in_unit_interval(self):
        for w in (
            minimax_weights(BALL, UNIT, 0.7, 64),
            asymptotic_weights(2.0, 0.5, UNIT, 0.7, 64),
            pinsker_weights(1.5, 0.3, 64),
        ):
            assert np.all(w.values >= 0.0) and np.all(w.values <= 1.0)

    def test_named_family_rejects_out_of_range(self):
        with pytest.raises(InvalidConfigError):
            DiagonalWeights(values=np.array([1.5]), family="minimax")
        # custom weights are unconstrained
        DiagonalWeights(values=np.array([-3.0, 7.0]), family="custom")


class TestQuadraticPenalty:
    def test_worst_case_telescopes_to_n(self):
        for n in (1, 5, 40):
            theta = worst_case_signal(BALL, n)
            assert quadratic_penalty(theta, BALL, UNIT, variant="gap") == pytest.approx(n)

    def test_zero_signal(self):
        assert quadratic_penalty(np.zeros(4), BALL, UNIT, variant="gap") == 0.0

    def test_power_variant_hand_value(self):
        # (2 a p0)^-1 * sum j^{1+2a} s^2 x^2 with a=1, x=(1,1): (1 + 8)/2
        val = quadratic_penalty(np.ones(2), BALL, UNIT, variant="power", alpha=1.0)
        assert val == pytest.approx(4.5)

    def test_unknown_variant(self):
        with pytest.raises(InvalidConfigError):
            quadratic_penalty(np.ones(2), BALL, UNIT, variant="nope")

    def test_penalized_fit_matches_filter_hand_case(self):
        # argmin over t of (1 - t)^2 + gap_1^{-1} t^2 is 3/7 = lambda_1 * y_1
        gap1 = 0.75

        def objective(t):
            return (1.0 - t) ** 2 + t * t / gap1

        x, _ = golden_section_min(objective, -2.0, 2.0)
        assert x == pytest.approx(3.0 / 7.0, abs=1e-8)
        w = minimax_weights(BALL, UNIT, 1.0, 1)
        assert x == pytest.approx(w.values[0], abs=1e-8)

    def test_penalized_fit_matches_filter_random_cases(self):
        # coordinatewise, unit noise scale: the penalized least-squares
        # minimizer argmin (y - t)^2/eps^2 + gap_j^{-1} t^2 / p0 is lambda_j y
        rng = np.random.default_rng(17)
        eps = 0.8
        ball = Ball.power(1.5, 2.0)
        n = 30
        w = minimax_weights(ball, UNIT, eps, n)
        gaps = ball.a.gaps(n)
        for _ in range(40):
            j = int(rng.integers(0, n))
            y = float(rng.normal(scale=3.0))

            def objective(t):
                return (y - t) ** 2 / eps**2 + t * t / (gaps[j] * ball.p0)

            lo, hi = -2.0 * abs(y) - 1.0, 2.0 * abs(y) + 1.0
            t_star, _ = golden_section_min(objective, lo, hi, tol=1e-12)
            assert t_star == pytest.approx(w.values[j] * y, abs=1e-8)


class TestSklearnFacade:
    def test_get_params_roundtrip_and_clone(self):
        est = MinimaxFilter(alpha=2.0, p0=0.5, sigma=1.0, epsilon=0.2, n=64)
        params = est.get_params()
        assert params["alpha"] == 2.0 and params["n"] == 64
        cloned = clone(est)
        assert cloned.get_params() == params

    def test_not_fitted_error(self):
        with pytest.raises(NotFittedError):
            MinimaxFilter().transform(np.ones(4))

    def test_fit_transform_1d(self):
        est = MinimaxFilter(alpha=1.0, p0=1.0, sigma=1.0, epsilon=1.0, n=2).fit()
        np.testing.assert_allclose(
            est.transform(np.array([1.0, 1.0])), [3.0 / 7.0, 5.0 / 41.0]
        )
        np.testing.assert_allclose(est.predict(np.array([1.0, 1.0])), est.transform([1.0, 1.0]))

    def test_fit_transform_batch(self):
        est = AsymptoticMinimaxFilter(alpha=1.0, p0=1.0, sigma=1.0, epsilon=1.0, n=2).fit()
        batch = np.ones((3, 2))
        out = est.transform(batch)
        assert out.shape == (3, 2)
        np.testing.assert_allclose(out, np.tile([2.0 / 3.0, 0.2], (3, 1)))

    def test_fit_transform_api(self):
        est = PinskerFilter(beta=1.0, radius=1.0, epsilon=1.0, n=8)
        out = est.fit_transform(np.ones(8))
        assert est.mu_ == pytest.approx(0.5, abs=1e-9)
        np.testing.assert_allclose(out[:2], [0.5, 0.0], atol=1e-9)

    def test_noise_profile_param(self):
        est = MinimaxFilter(sigma=NoiseProfile.power(1.0, 1.0), epsilon=0.5, n=8).fit()
        assert est.weights_.values.shape == (8,)

    def test_composes_in_pipeline(self):
        from sklearn.pipeline import Pipeline

        pipe = Pipeline([("denoise", MinimaxFilter(alpha=1.0, p0=1.0, epsilon=1.0, n=2))])
        out = pipe.fit_transform(np.ones((4, 2)))
        np.testing.assert_allclose(out, np.tile([3.0 / 7.0, 5.0 / 41.0], (4, 1)))
