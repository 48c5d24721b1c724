"""Finite Gabor systems: operators, lattice representations, adjoint, Zak."""

import numpy as np
import pytest

from framedual import (
    GaborLattice,
    InvalidParameterError,
    adjoint_lattice,
    classify,
    frame_operator,
    gabor_rep,
    heisenberg_multiplier,
    modulation,
    translation,
    verify_rep,
    zak_transform,
)
from framedual.linalg import random_complex_vector, substream


def test_translation_modulation_n2():
    np.testing.assert_allclose(translation(2), [[0, 1], [1, 0]])
    np.testing.assert_allclose(modulation(2), np.diag([1.0, -1.0]), atol=1e-15)


def test_commutation_relation():
    for n in (3, 4, 6):
        m, t = modulation(n), translation(n)
        np.testing.assert_allclose(m @ t, np.exp(2j * np.pi / n) * (t @ m), atol=1e-12)


def test_periodicity():
    for n in (2, 5):
        m, t = modulation(n), translation(n)
        np.testing.assert_allclose(np.linalg.matrix_power(t, n), np.eye(n), atol=1e-12)
        np.testing.assert_allclose(np.linalg.matrix_power(m, n), np.eye(n), atol=1e-12)


def test_operators_unitary():
    for op in (translation(5), modulation(5)):
        np.testing.assert_allclose(op.conj().T @ op, np.eye(5), atol=1e-12)


def test_gabor_rep_full_lattice_multiplier():
    rep = gabor_rep(GaborLattice(4, 1, 1))
    assert rep.group.order == 16 and rep.dim == 4
    assert verify_rep(rep).passed
    np.testing.assert_allclose(rep.multiplier.table, heisenberg_multiplier(4).table,
                               atol=1e-12)


def test_gabor_rep_trivial_lattice():
    rep = gabor_rep(GaborLattice(4, 4, 4))
    assert rep.group.order == 1
    np.testing.assert_allclose(rep.matrices[0], np.eye(4), atol=1e-15)


def test_gabor_rep_structure():
    rep = gabor_rep(GaborLattice(6, 2, 3))
    qm, qt = 3, 2
    for m in range(qm):
        mat = rep.matrices[m * qt]  # (m, 0): pure modulation, diagonal
        np.testing.assert_allclose(mat, np.diag(np.diagonal(mat)), atol=1e-14)
    for k in range(qt):
        mat = rep.matrices[k]  # (0, k): pure translation, a permutation
        np.testing.assert_allclose(np.abs(mat) @ np.ones(6), np.ones(6), atol=1e-14)
        assert set(np.round(np.abs(mat).reshape(-1), 12)) <= {0.0, 1.0}


def test_adjoint_lattice_values():
    assert adjoint_lattice(GaborLattice(12, 3, 2)) == GaborLattice(12, 6, 4)
    assert adjoint_lattice(GaborLattice(8, 1, 1)) == GaborLattice(8, 8, 8)


def test_adjoint_lattice_involution():
    for lat in (GaborLattice(12, 3, 2), GaborLattice(6, 2, 3), GaborLattice(4, 1, 2)):
        assert adjoint_lattice(adjoint_lattice(lat)) == lat


def test_lattice_validation():
    with pytest.raises(InvalidParameterError):
        GaborLattice(6, 4, 1)  # 4 does not divide 6
    with pytest.raises(InvalidParameterError):
        GaborLattice(6, 0, 1)


def test_zak_delta():
    out = zak_transform([1, 0, 0, 0], 2)
    np.testing.assert_allclose(out[0], [1 / np.sqrt(2), 1 / np.sqrt(2)], atol=1e-14)
    np.testing.assert_allclose(out[1], [0, 0], atol=1e-14)


def test_zak_preserves_norm():
    rng = substream(31, 0)
    for _ in range(100):
        f = random_complex_vector(rng, 12)
        z = zak_transform(f, 3)
        assert z.shape == (3, 4)
        assert np.linalg.norm(z) == pytest.approx(np.linalg.norm(f), abs=1e-12)


def test_zak_full_split_is_identity():
    f = random_complex_vector(substream(31, 1), 5)
    z = zak_transform(f, 5)
    assert z.shape == (5, 1)
    np.testing.assert_allclose(z[:, 0], f, atol=1e-12)


def test_zak_rejects_non_divisor():
    with pytest.raises(InvalidParameterError):
        zak_transform([1, 0, 0], 2)


def test_full_lattice_tightness():
    # orbit of any nonzero window under the full lattice is tight: S = n |g|^2 I
    for n in (4, 8):
        rep = gabor_rep(GaborLattice(n, 1, 1))
        rng = substream(37, n)
        for _ in range(5):
            g = random_complex_vector(rng, n)
            s = frame_operator(rep, g)
            target = n * np.linalg.norm(g) ** 2 * np.eye(n)
            assert np.abs(s - target).max() < 1e-9


@pytest.mark.parametrize("a,b", [(1, 1), (1, 2), (2, 1), (2, 3), (3, 2), (6, 6)])
def test_density_dichotomy(a, b):
    # a frame needs group order >= dim; a Riesz sequence needs group order <= dim
    n = 6
    rep = gabor_rep(GaborLattice(n, a, b))
    order = rep.group.order
    rng = substream(41, a * 10 + b)
    for draw in range(50):
        g = random_complex_vector(rng, n)
        cls = classify(rep, g)
        if cls.is_complete_frame:
            assert order >= n
        if cls.is_riesz_sequence:
            assert order <= n
