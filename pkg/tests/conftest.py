"""Shared fixtures: small groups, multipliers, and representations."""

import numpy as np
import pytest

from framedual import (
    cyclic_group,
    direct_product,
    heisenberg_multiplier,
    left_regular,
    right_regular,
    trivial_multiplier,
)


@pytest.fixture(scope="session")
def z4():
    return cyclic_group(4)


@pytest.fixture(scope="session")
def z6():
    return cyclic_group(6)


@pytest.fixture(scope="session")
def z2xz4():
    return direct_product(cyclic_group(2), cyclic_group(4))


@pytest.fixture(scope="session")
def heis2():
    return heisenberg_multiplier(2)


@pytest.fixture(scope="session")
def lam_z4(z4):
    return left_regular(z4, trivial_multiplier(z4))


@pytest.fixture(scope="session")
def lam_z6(z6):
    return left_regular(z6, trivial_multiplier(z6))


@pytest.fixture(scope="session")
def rho_z6(z6):
    return right_regular(z6, trivial_multiplier(z6))


@pytest.fixture(scope="session")
def lam_heis2(heis2):
    return left_regular(heis2.group, heis2)


def dihedral_cayley(n: int) -> np.ndarray:
    """Cayley table of the dihedral group of order 2n.

    Element i + n*j stands for r^i s^j with the relations r^n = s^2 = e and
    s r = r^{-1} s, so (r^a s^b)(r^c s^d) = r^{a + c(-1)^b} s^{b + d}.
    """
    size = 2 * n
    table = np.zeros((size, size), dtype=int)
    for a in range(n):
        for b in range(2):
            for c in range(n):
                for d in range(2):
                    rot = (a + (c if b == 0 else -c)) % n
                    table[a + n * b, c + n * d] = rot + n * ((b + d) % 2)
    return table
