import numpy as np
import pytest
from scipy.optimize import linprog

from seqminimax import InvalidConfigError, chain_lp_maximize, dense_simplex_maximize


def nested_caps_matrix(m):
    """Row k encodes sum_{j>=k} v_j."""
    a = np.zeros((m, m))
    for k in range(m):
        a[k, k:] = 1.0
    return a


def random_instance(rng, m):
    caps = np.sort(rng.uniform(0.05, 3.0, size=m))[::-1]
    caps = caps + np.linspace(1e-3 * m, 0.0, m)  # force strictly decreasing
    kind = rng.integers(0, 4)
    if kind == 0:
        coeffs = rng.uniform(0.0, 2.0, size=m)
    elif kind == 1:
        coeffs = np.sort(rng.uniform(0.0, 1.5, size=m))
    elif kind == 2:
        coeffs = np.zeros(m)
        coeffs[rng.integers(0, m)] = 1.0
    else:
        coeffs = rng.uniform(-1.0, 3.0, size=m) ** 2
    return coeffs, caps


class TestChainSweep:
    def test_matches_scipy_on_random_instances(self):
        rng = np.random.default_rng(1)
        for _ in range(120):
            m = int(rng.integers(1, 16))
            coeffs, caps = random_instance(rng, m)
            value, v, tails = chain_lp_maximize(coeffs, caps)
            res = linprog(
                c=-coeffs, A_ub=nested_caps_matrix(m), b_ub=caps, bounds=(0, None),
                method="highs",
            )
            assert res.status == 0
            assert value == pytest.approx(-res.fun, rel=1e-9, abs=1e-12)
            # recovered point is feasible
            running = np.cumsum(v[::-1])[::-1]
            assert np.all(running <= caps * (1 + 1e-12) + 1e-15)
            assert np.all(v >= 0)

    def test_nondecreasing_coefficients_bind_every_constraint(self):
        # flat or rising coefficients: optimum is the telescoping point
        caps = 2.0 / np.arange(1, 10) ** 2
        coeffs = np.concatenate([np.sort(np.random.default_rng(2).uniform(0, 1, 8)), [1.0]])
        _, v, tails = chain_lp_maximize(coeffs, caps)
        np.testing.assert_allclose(tails, caps, rtol=0, atol=0)
        np.testing.assert_allclose(v[:-1], caps[:-1] - caps[1:], rtol=1e-15)

    def test_ties_resolved_toward_largest_tails(self):
        # all coefficients equal: any split is optimal; the telescoping
        # point must be returned
        caps = np.array([1.0, 0.25, 1.0 / 9.0])
        value, v, tails = chain_lp_maximize(np.ones(3), caps)
        assert value == pytest.approx(1.0)
        np.testing.assert_allclose(tails, caps)

    def test_negative_coefficients_gets_cut(self):
        value, v, _ = chain_lp_maximize([4.0, -1.0], [1.0, 0.25])
        # putting everything at coordinate 1 beats spilling into coordinate 2
        assert value == pytest.approx(4.0)
        np.testing.assert_allclose(v, [1.0, 0.0])

    def test_validates_caps(self):
        with pytest.raises(InvalidConfigError):
            chain_lp_maximize([1.0, 1.0], [1.0, 1.0])
        with pytest.raises(InvalidConfigError):
            chain_lp_maximize([1.0], [-1.0])
        with pytest.raises(InvalidConfigError):
            chain_lp_maximize([1.0, 2.0], [1.0])

    def test_empty(self):
        value, v, tails = chain_lp_maximize([], [])
        assert value == 0.0 and v.size == 0


class TestDenseSimplex:
    def test_matches_scipy_on_general_lps(self):
        rng = np.random.default_rng(3)
        for _ in range(60):
            m = int(rng.integers(1, 8))
            n = int(rng.integers(1, 8))
            a = rng.uniform(-1.0, 2.0, size=(m, n))
            b = rng.uniform(0.1, 3.0, size=m)
            c = rng.uniform(-1.0, 2.0, size=n)
            res = linprog(c=-c, A_ub=a, b_ub=b, bounds=(0, None), method="highs")
            if res.status == 3:
                with pytest.raises(InvalidConfigError):
                    dense_simplex_maximize(c, a, b)
                continue
            assert res.status == 0
            value, v = dense_simplex_maximize(c, a, b)
            assert value == pytest.approx(-res.fun, rel=1e-9, abs=1e-9)
            assert np.all(a @ v <= b + 1e-9)

    def test_matches_chain_sweep_on_nested_instances(self):
        rng = np.random.default_rng(4)
        for _ in range(40):
            m = int(rng.integers(1, 24))
            coeffs, caps = random_instance(rng, m)
            sweep_value, _, _ = chain_lp_maximize(coeffs, caps)
            simplex_value, _ = dense_simplex_maximize(coeffs, nested_caps_matrix(m), caps)
            assert simplex_value == pytest.approx(sweep_value, rel=1e-9, abs=1e-12)

    def test_rejects_negative_rhs(self):
        with pytest.raises(InvalidConfigError):
            dense_simplex_maximize([1.0], [[1.0]], [-1.0])

    def test_unbounded_detected(self):
        with pytest.raises(InvalidConfigError):
            dense_simplex_maximize([1.0], [[-1.0]], [1.0])
