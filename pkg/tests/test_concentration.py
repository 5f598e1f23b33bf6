import math

import numpy as np
import pytest
from scipy import stats

from seqminimax import (
    DiagonalQuadraticForm,
    InvalidConfigError,
    mc_tail_check,
    quad_form_tail_threshold,
)


class TestThreshold:
    def test_identity_two_dims(self):
        form = DiagonalQuadraticForm.identity(2)
        assert quad_form_tail_threshold(form, 1.0) == pytest.approx(2.0 + 2.0 * math.sqrt(2.0) + 2.0)

    def test_t_zero_is_trace(self):
        form = DiagonalQuadraticForm(diag=np.array([0.5, 1.5, 2.0]))
        assert quad_form_tail_threshold(form, 0.0) == pytest.approx(4.0)

    def test_rank_one(self):
        form = DiagonalQuadraticForm(diag=np.array([1.0, 0.0]))
        for t in (0.25, 1.0, 4.0):
            assert quad_form_tail_threshold(form, t) == pytest.approx(1.0 + 2.0 * math.sqrt(t) + 2.0 * t)

    def test_monotone_in_t_and_entries(self):
        form = DiagonalQuadraticForm(diag=np.array([1.0, 2.0]))
        bigger = DiagonalQuadraticForm(diag=np.array([1.5, 2.0]))
        assert quad_form_tail_threshold(form, 2.0) > quad_form_tail_threshold(form, 1.0)
        assert quad_form_tail_threshold(bigger, 1.0) > quad_form_tail_threshold(form, 1.0)

    def test_negative_t_rejected(self):
        with pytest.raises(InvalidConfigError):
            quad_form_tail_threshold(DiagonalQuadraticForm.identity(2), -0.5)

    def test_diag_validation(self):
        with pytest.raises(InvalidConfigError):
            DiagonalQuadraticForm(diag=np.array([-1.0, 1.0]))
        with pytest.raises(InvalidConfigError):
            DiagonalQuadraticForm(diag=np.zeros(3))


class TestMcTailCheck:
    def test_identity_dim8_matches_chi_square_oracle(self):
        form = DiagonalQuadraticForm.identity(8)
        threshold = quad_form_tail_threshold(form, 1.0)
        assert threshold == pytest.approx(15.657, abs=1e-3)
        result = mc_tail_check(form, 1.0, reps=100_000, seed=0)
        expected = stats.chi2.sf(threshold, df=8)
        # binomial three-sigma agreement with the analytic tail
        sigma = math.sqrt(expected * (1 - expected) / result.reps)
        assert abs(result.empirical_prob - expected) <= 3.0 * sigma
        assert result.passed
        assert result.bound == pytest.approx(math.exp(-1.0))

    def test_t_zero_always_passes(self):
        result = mc_tail_check(DiagonalQuadraticForm.identity(4), 0.0, reps=10_000, seed=0)
        assert result.bound == 1.0
        assert result.passed

    def test_determinism(self):
        form = DiagonalQuadraticForm(diag=np.array([1.0, 0.5, 0.25]))
        a = mc_tail_check(form, 1.0, reps=10_000, seed=9)
        b = mc_tail_check(form, 1.0, reps=10_000, seed=9)
        assert a.empirical_prob == b.empirical_prob

    def test_chunking_invariance(self, monkeypatch):
        # the verdict must not depend on the internal batch size
        import seqminimax.concentration as conc

        form = DiagonalQuadraticForm.identity(8)
        full = mc_tail_check(form, 0.5, reps=10_000, seed=3)
        monkeypatch.setattr(conc, "_CHUNK_ROWS", 999)
        chunked = mc_tail_check(form, 0.5, reps=10_000, seed=3)
        assert full.empirical_prob == chunked.empirical_prob

    def test_reps_floor(self):
        with pytest.raises(InvalidConfigError):
            mc_tail_check(DiagonalQuadraticForm.identity(2), 1.0, reps=100, seed=0)

    @pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
    @pytest.mark.parametrize("dim", [8, 64])
    def test_bound_holds_across_grid(self, t, dim):
        result = mc_tail_check(DiagonalQuadraticForm.identity(dim), t, reps=20_000, seed=1)
        assert result.passed
