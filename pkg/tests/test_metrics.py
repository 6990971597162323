import numpy as np
import numpy.testing as npt
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gale.metrics import l1_norm, mre, rse

from conftest import random_complex


class TestMre:
    def test_exact_match(self):
        assert mre(np.array([1.0, 2.0]), np.array([1.0, 2.0])) == 0.0

    def test_single_entry(self):
        npt.assert_allclose(mre(np.array([1.0]), np.array([0.9])), 0.1)

    def test_hand_example(self):
        npt.assert_allclose(mre(np.array([1.0, 2.0]), np.array([1.1, 1.8])), 0.1)

    def test_rejects_zero_reference(self):
        with pytest.raises(ValueError, match=r"index \(0, 1\)"):
            mre(np.array([[1.0, 0.0]]), np.array([[1.0, 1.0]]))

    def test_skip_zeros(self):
        val = mre(np.array([1.0, 0.0]), np.array([0.9, 5.0]), skip_zeros=True)
        npt.assert_allclose(val, 0.1)

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            mre(np.zeros(3), np.zeros(4))


class TestRse:
    def test_exact_match(self):
        assert rse(np.array([1.0 + 1j]), np.array([1.0 + 1j])) == 0.0

    def test_zero_estimate(self):
        assert rse(np.array([3.0, 4.0]), np.zeros(2)) == 1.0

    def test_hand_example(self):
        npt.assert_allclose(rse(np.array([3.0, 4.0]), np.array([3.0, 0.0])), 16 / 25)

    def test_rejects_zero_norm(self):
        with pytest.raises(ValueError):
            rse(np.zeros(3), np.ones(3))


class TestL1Norm:
    def test_zero(self):
        assert l1_norm(np.zeros((3, 3))) == 0.0

    def test_delta(self):
        x = np.zeros((4, 4))
        x[0, 0] = 1.0
        assert l1_norm(x) == 1.0

    def test_complex_modulus(self):
        assert l1_norm(np.array([3.0 + 4.0j])) == 5.0


@given(st.floats(-np.pi, np.pi))
@settings(max_examples=50, deadline=None)
def test_global_phase_invariance(phase):
    rng = np.random.default_rng(5)
    y = random_complex(rng, 12)
    yhat = random_complex(rng, 12)
    rot = np.exp(1j * phase)
    npt.assert_allclose(mre(y * rot, yhat * rot), mre(y, yhat), rtol=1e-10)
    npt.assert_allclose(rse(y * rot, yhat * rot), rse(y, yhat), rtol=1e-10)
