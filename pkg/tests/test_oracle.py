import numpy as np
import numpy.testing as npt
import pytest

from gale import fftcore
from gale.domains import classic_domain_points, make_galfd_spec
from gale.oracle import DirectTransform, dtft_adjoint_direct, dtft_direct

from conftest import random_complex


class TestDtftDirect:
    def test_delta_is_one_everywhere(self, rng):
        x = np.zeros((4, 5), complex)
        x[0, 0] = 1.0
        pts = rng.uniform(-np.pi, np.pi, (30, 2))
        npt.assert_allclose(dtft_direct(x, pts), np.ones(30), rtol=1e-14)

    def test_single_pixel_image(self):
        x = np.array([[1.0 + 0j]])
        npt.assert_allclose(dtft_direct(x, [[0.3, -1.2]]), [1.0], rtol=1e-15)

    def test_zero_frequency_is_total_sum(self, rng):
        x = random_complex(rng, (6, 7))
        npt.assert_allclose(dtft_direct(x, [[0.0, 0.0]]), [x.sum()], rtol=1e-13)

    def test_periodicity(self, rng):
        x = random_complex(rng, (5, 5))
        base = rng.uniform(-np.pi, np.pi, (20, 2))
        shifted = base + np.array([2 * np.pi, 0.0])
        npt.assert_allclose(dtft_direct(x, shifted), dtft_direct(x, base),
                            rtol=1e-12)

    def test_matches_2d_dft_on_cfd(self, rng):
        m = n = 8
        x = random_complex(rng, (m, n))
        pts = classic_domain_points("cfd", m, n)
        vals = dtft_direct(x, pts).reshape(m, n)   # I-major: rows I, cols J
        # xi couples the column index j, upsilon couples the row index i
        along_j = fftcore.fft_padded(x, n, axis=1)          # index I
        full = fftcore.fft_padded(along_j, m, axis=0)       # index J
        # reorder: point (I, J) has xi=2*pi*I/m (I in -m/2..), ups=2*pi*J/n
        rolled = np.roll(np.roll(full, m // 2, axis=1), n // 2, axis=0)
        npt.assert_allclose(vals, rolled.T, rtol=1e-12, atol=1e-12)

    def test_threads_bit_identical(self, rng):
        x = random_complex(rng, (16, 16))
        pts = rng.uniform(-np.pi, np.pi, (5000, 2))
        a = dtft_direct(x, pts, threads=1)
        b = dtft_direct(x, pts, threads=8)
        npt.assert_array_equal(a, b)

    def test_rejects_bad_points(self):
        with pytest.raises(ValueError):
            dtft_direct(np.zeros((2, 2), complex), np.zeros((3, 3)))


class TestDtftAdjointDirect:
    def test_zero_values(self):
        out = dtft_adjoint_direct(np.zeros(4, complex), np.zeros((4, 2)), 3, 3)
        npt.assert_array_equal(out, np.zeros((3, 3)))

    def test_single_zero_frequency(self):
        out = dtft_adjoint_direct(np.array([1.0 + 0j]), [[0.0, 0.0]], 3, 4)
        npt.assert_allclose(out, np.ones((3, 4)), rtol=1e-15)

    def test_adjoint_identity(self, rng):
        x = random_complex(rng, (5, 6))
        pts = rng.uniform(-np.pi, np.pi, (40, 2))
        vals = random_complex(rng, 40)
        lhs = np.vdot(vals, dtft_direct(x, pts))
        rhs = np.vdot(dtft_adjoint_direct(vals, pts, 5, 6), x)
        assert abs(lhs - rhs) <= 1e-13 * (np.linalg.norm(vals) * np.linalg.norm(x))

    def test_rejects_length_mismatch(self):
        with pytest.raises(ValueError):
            dtft_adjoint_direct(np.zeros(3, complex), np.zeros((4, 2)), 2, 2)


class TestDirectTransform:
    def test_layout_matches_points(self, rng):
        spec = make_galfd_spec(6, 4)
        op = DirectTransform(spec, 6, 6)
        x = random_complex(rng, (6, 6))
        Y = op.forward(x)
        flat = dtft_direct(x, op.points())
        npt.assert_array_equal(Y, flat.reshape(4, 6).T)

    def test_adjoint_identity(self, rng):
        spec = make_galfd_spec(8, 5)
        op = DirectTransform(spec, 8, 8)
        x = random_complex(rng, (8, 8))
        Y = random_complex(rng, (8, 5))
        lhs = np.vdot(Y, op.forward(x))
        rhs = np.vdot(op.adjoint(Y), x)
        assert abs(lhs - rhs) <= 1e-13 * (np.linalg.norm(Y) * np.linalg.norm(x))
