"""Numerical kernel: eigendecomposition, rank/range, PSD powers, subspaces."""

import numpy as np
import pytest

from framedual import InvalidParameterError, Subspace, hermitian_eig, psd_power, rank_and_range
from framedual.linalg import (
    dft_matrix,
    random_complex_vector,
    random_unitary,
    subspace_equal,
    subspace_perp,
    substream,
)


def random_hermitian(rng, n):
    a = random_complex_vector(rng, n * n).reshape(n, n)
    return (a + a.conj().T) / 2


def test_eig_identity():
    w, v = hermitian_eig(np.eye(3))
    np.testing.assert_allclose(w, [1.0, 1.0, 1.0])
    np.testing.assert_allclose(v.conj().T @ v, np.eye(3), atol=1e-12)


def test_eig_diagonal_sorted():
    w, _ = hermitian_eig(np.diag([2.0, 0.0, 1.0]))
    np.testing.assert_allclose(w, [0.0, 1.0, 2.0])


def test_eig_reconstruction_random():
    a = random_hermitian(substream(42, 0), 8)
    w, v = hermitian_eig(a)
    np.testing.assert_allclose(v @ np.diag(w) @ v.conj().T, a, atol=1e-10)
    np.testing.assert_allclose(v.conj().T @ v, np.eye(8), atol=1e-10)


def test_eig_rejects_non_hermitian():
    with pytest.raises(InvalidParameterError):
        hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_eig_extremes_are_rayleigh_extrema():
    # every Rayleigh quotient lies between the extreme eigenvalues, and the
    # extreme eigenvectors attain them
    rng = substream(7, 1)
    a = random_hermitian(rng, 6)
    w, v = hermitian_eig(a)
    quotients = []
    for _ in range(1000):
        x = random_complex_vector(rng, 6)
        quotients.append((np.vdot(x, a @ x) / np.vdot(x, x)).real)
    assert min(quotients) >= w[0] - 1e-9
    assert max(quotients) <= w[-1] + 1e-9
    for col, lam in ((v[:, 0], w[0]), (v[:, -1], w[-1])):
        assert np.vdot(col, a @ col).real == pytest.approx(lam, abs=1e-10)


def test_rank_zero_matrix():
    rank, rng_sub = rank_and_range(np.zeros((4, 3)))
    assert rank == 0 and rng_sub.dim == 0


def test_rank_one_outer_product():
    rng = substream(3, 0)
    u = random_complex_vector(rng, 5)
    v = random_complex_vector(rng, 4)
    rank, rng_sub = rank_and_range(np.outer(u, v.conj()))
    assert rank == 1
    assert subspace_equal(rng_sub, Subspace.from_columns(u[:, None]))


def test_rank_agrees_with_gram_rank():
    # two-route check: rank of a tall matrix equals the rank of its Gram
    rng = substream(11, 0)
    cols = random_complex_vector(rng, 6 * 3).reshape(6, 3)
    cols = np.concatenate([cols, cols[:, :1] + cols[:, 1:2]], axis=1)  # dependent col
    rank, _ = rank_and_range(cols)
    gram_evals, _ = hermitian_eig(cols.conj().T @ cols)
    gram_rank = int((gram_evals > 1e-9 * gram_evals[-1]).sum())
    assert rank == gram_rank == 3


def test_rank_invariant_under_unitary():
    rng = substream(12, 0)
    a = random_complex_vector(rng, 30).reshape(6, 5)
    rank1, range1 = rank_and_range(a)
    rank2, range2 = rank_and_range(a @ random_unitary(rng, 5))
    assert rank1 == rank2
    assert subspace_equal(range1, range2)


def test_psd_power_identity_inverse_sqrt():
    np.testing.assert_allclose(psd_power(np.eye(4), -0.5), np.eye(4), atol=1e-12)


def test_psd_power_pseudo_inverse_on_support():
    out = psd_power(np.diag([4.0, 0.0]), -0.5)
    np.testing.assert_allclose(out, np.diag([0.5, 0.0]), atol=1e-12)


def test_psd_power_sqrt_squares_back():
    rng = substream(5, 0)
    b = random_complex_vector(rng, 36).reshape(6, 6)
    a = b @ b.conj().T
    root = psd_power(a, 0.5)
    np.testing.assert_allclose(root @ root, a, atol=1e-9)
    np.testing.assert_allclose(psd_power(a, 1.0), a, atol=1e-9)


def test_psd_power_rejects_negative():
    with pytest.raises(InvalidParameterError):
        psd_power(np.diag([1.0, -1.0]), 0.5)


def test_subspace_equal_order_invariant():
    e = np.eye(3, dtype=complex)
    s1 = Subspace(3, e[:, [0, 1]])
    s2 = Subspace(3, e[:, [1, 0]])
    assert subspace_equal(s1, s2)


def test_subspace_perp_and_neither():
    e = np.eye(2, dtype=complex)
    span0 = Subspace(2, e[:, [0]])
    span1 = Subspace(2, e[:, [1]])
    mixed = Subspace.from_columns((e[:, 0] + e[:, 1])[:, None])
    assert subspace_perp(span0, span1) and not subspace_equal(span0, span1)
    assert not subspace_perp(mixed, span0) and not subspace_equal(mixed, span0)


def test_subspace_ambient_mismatch():
    with pytest.raises(InvalidParameterError):
        subspace_equal(Subspace(2, np.eye(2)), Subspace(3, np.eye(3)))


def test_subspace_complement():
    e = np.eye(4, dtype=complex)
    s = Subspace(4, e[:, :1])
    comp = s.complement()
    assert comp.dim == 3
    assert subspace_perp(s, comp, tol=1e-12)


def test_substream_reproducible_and_order_free():
    a = random_complex_vector(substream(123, 5), 4)
    b = random_complex_vector(substream(123, 5), 4)
    np.testing.assert_array_equal(a, b)
    c = random_complex_vector(substream(123, 6), 4)
    assert np.abs(a - c).max() > 1e-3


def test_dft_matrix_unitary():
    f = dft_matrix(7)
    np.testing.assert_allclose(f.conj().T @ f, np.eye(7), atol=1e-12)
