"""Eigen-solve contract, sign convention, norms, and trace forms."""

import numpy as np
import pytest

from mvgehd.linalg import l21_norm, smallest_eigenpairs, trace_form


def random_symmetric(rng, n):
    m = rng.normal(size=(n, n))
    return (m + m.T) / 2


class TestSmallestEigenpairs:
    def test_diagonal_matrix(self):
        got = smallest_eigenpairs(np.diag([3.0, 1.0, 2.0]), 2)
        np.testing.assert_allclose(got.eigenvalues, [1.0, 2.0], atol=1e-12)
        np.testing.assert_allclose(np.abs(got.eigenvectors),
                                   [[0, 0], [1, 0], [0, 1]], atol=1e-12)
        # sign convention: largest-magnitude entry positive
        assert got.eigenvectors[1, 0] > 0 and got.eigenvectors[2, 1] > 0

    def test_known_two_by_two_spectrum(self):
        got = smallest_eigenpairs(np.array([[0.0, 1.0], [1.0, 0.0]]), 2)
        np.testing.assert_allclose(got.eigenvalues, [-1.0, 1.0], atol=1e-12)

    def test_residuals_and_charpoly_oracle(self):
        rng = np.random.default_rng(0)
        m = random_symmetric(rng, 10)
        got = smallest_eigenpairs(m, 4)
        scale = max(1.0, np.linalg.norm(m))
        for i in range(4):
            res = np.linalg.norm(m @ got.eigenvectors[:, i]
                                 - got.eigenvalues[i] * got.eigenvectors[:, i])
            assert res <= 1e-8 * scale
        # characteristic-polynomial roots as an independent spectral oracle
        roots = np.sort(np.roots(np.poly(m)).real)
        np.testing.assert_allclose(got.eigenvalues, roots[:4], atol=1e-6)

    def test_full_spectrum_oracle_random(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            n = int(rng.integers(2, 51))
            count = int(rng.integers(1, n + 1))
            m = random_symmetric(rng, n)
            got = smallest_eigenpairs(m, count)
            want = np.sort(np.linalg.eigvalsh(m))[:count]
            np.testing.assert_allclose(got.eigenvalues, want, atol=1e-9)
            # ascending, orthonormal, small residuals
            assert np.all(np.diff(got.eigenvalues) >= -1e-12)
            gram = got.eigenvectors.T @ got.eigenvectors
            np.testing.assert_allclose(gram, np.eye(count), atol=1e-8)
            scale = max(1.0, np.linalg.norm(m))
            res = m @ got.eigenvectors - got.eigenvectors * got.eigenvalues
            assert np.max(np.linalg.norm(res, axis=0)) <= 1e-8 * scale

    def test_deterministic_across_calls(self):
        rng = np.random.default_rng(9)
        m = random_symmetric(rng, 12)
        a = smallest_eigenpairs(m, 5)
        b = smallest_eigenpairs(m.copy(), 5)
        assert np.array_equal(a.eigenvectors, b.eigenvectors)
        assert np.array_equal(a.eigenvalues, b.eigenvalues)

    def test_sign_convention(self):
        rng = np.random.default_rng(17)
        for _ in range(20):
            m = random_symmetric(rng, 8)
            vecs = smallest_eigenpairs(m, 8).eigenvectors
            for i in range(8):
                col = vecs[:, i]
                assert col[np.argmax(np.abs(col))] > 0

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError, match="asymmetric"):
            smallest_eigenpairs(np.array([[0.0, 1.0], [2.0, 0.0]]), 1)
        with pytest.raises(ValueError, match="non-finite"):
            smallest_eigenpairs(np.array([[np.nan, 0.0], [0.0, 0.0]]), 1)
        with pytest.raises(ValueError, match="count"):
            smallest_eigenpairs(np.eye(3), 4)


class TestL21Norm:
    def test_three_four_five(self):
        assert l21_norm([[3.0, 4.0], [0.0, 0.0]]) == 5.0

    def test_zero_matrix(self):
        assert l21_norm(np.zeros((3, 2))) == 0.0

    def test_identity(self):
        assert l21_norm(np.eye(2)) == 2.0

    def test_dominates_frobenius(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            m = rng.normal(size=(int(rng.integers(1, 10)), int(rng.integers(1, 6))))
            assert l21_norm(m) >= np.linalg.norm(m) - 1e-12


class TestTraceForm:
    def test_identity_basis(self):
        assert trace_form(np.eye(2), np.diag([2.0, 5.0])) == pytest.approx(7.0)

    def test_zero_basis(self):
        assert trace_form(np.zeros((4, 2)), np.eye(4)) == 0.0

    def test_columnwise_oracle(self):
        rng = np.random.default_rng(2)
        f = rng.normal(size=(4, 2))
        l = rng.normal(size=(4, 4))
        want = sum(f[:, j] @ l @ f[:, j] for j in range(2))
        assert trace_form(f, l) == pytest.approx(want, rel=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            trace_form(np.zeros((3, 2)), np.zeros((4, 4)))
