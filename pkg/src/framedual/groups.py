"""Finite groups as dense integer Cayley tables, and unit-circle 2-cocycles.

Group elements are the indices ``0 .. order-1``; multiplication, identity and
inversion are all table lookups, so there is no hashing or symbolic element
type anywhere.  A cocycle ("multiplier") is an order x order table of
unit-modulus complex numbers twisting operator compositions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError

UNIT_TOL = 1e-12  # constructed tables are analytic; only fp error is allowed


@dataclass(frozen=True, eq=False, repr=False)
class FiniteGroup:
    """A finite group given by its Cayley table.

    ``cayley[a, b]`` is the index of the product a*b, ``identity`` the index
    of the unit, and ``inverse[a]`` the index of a^{-1}.  Instances are
    immutable and safe to share.
    """

    cayley: np.ndarray
    identity: int
    inverse: np.ndarray
    label: str = "G"

    def __post_init__(self):
        cay = np.ascontiguousarray(self.cayley, dtype=np.int64)
        inv = np.ascontiguousarray(self.inverse, dtype=np.int64)
        cay.setflags(write=False)
        inv.setflags(write=False)
        object.__setattr__(self, "cayley", cay)
        object.__setattr__(self, "inverse", inv)

    @property
    def order(self) -> int:
        return self.cayley.shape[0]

    @property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.cayley, self.cayley.T))

    def op(self, a: int, b: int) -> int:
        return int(self.cayley[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return np.array_equal(self.cayley, other.cayley)

    def __repr__(self):
        return f"FiniteGroup({self.label!r}, order={self.order})"


def from_cayley_table(table, label: str = "G") -> FiniteGroup:
    """Build and fully validate a group from a raw Cayley table.

    Checks closure, associativity, a two-sided identity, and two-sided
    inverses; any violation raises InvalidParameterError naming the first
    offending entry.
    """
    cay = np.asarray(table, dtype=np.int64)
    if cay.ndim != 2 or cay.shape[0] != cay.shape[1]:
        raise InvalidParameterError("Cayley table must be square")
    n = cay.shape[0]
    if n == 0:
        raise InvalidParameterError("a group needs at least one element")
    if cay.min() < 0 or cay.max() >= n:
        raise InvalidParameterError("Cayley entries must be element indices 0..n-1")

    identity = None
    for e in range(n):
        if np.array_equal(cay[e], np.arange(n)) and np.array_equal(cay[:, e], np.arange(n)):
            identity = e
            break
    if identity is None:
        raise InvalidParameterError("no two-sided identity element found")

    inverse = np.full(n, -1, dtype=np.int64)
    for a in range(n):
        hits = np.flatnonzero(cay[a] == identity)
        for b in hits:
            if cay[b, a] == identity:
                inverse[a] = b
                break
        if inverse[a] < 0:
            raise InvalidParameterError(f"element {a} has no two-sided inverse")

    # associativity, row by row to bound memory at n^2 per step
    for a in range(n):
        left = cay[cay[a], :]          # (a*b)*c
        right = cay[a][cay]            # a*(b*c)
        if not np.array_equal(left, right):
            b, c = np.unravel_index(int(np.argmax(left != right)), left.shape)
            raise InvalidParameterError(
                f"associativity fails at ({a},{b},{c}): "
                f"({a}*{b})*{c}={left[b, c]} but {a}*({b}*{c})={right[b, c]}"
            )

    return FiniteGroup(cay, int(identity), inverse, label)


def cyclic_group(n: int) -> FiniteGroup:
    """The cyclic group Z_n with addition mod n."""
    if n < 1:
        raise InvalidParameterError("cyclic group order must be >= 1")
    a = np.arange(n)
    cay = (a[:, None] + a[None, :]) % n
    return FiniteGroup(cay, 0, (-a) % n, label=f"Z{n}")


def direct_product(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    """Componentwise product on index pairs, flattened as i1 * |G2| + i2."""
    n1, n2 = g1.order, g2.order
    c1 = g1.cayley[:, None, :, None] * n2      # (n1, 1, n1, 1) scaled blocks
    c2 = g2.cayley[None, :, None, :]
    cay = (c1 + c2).reshape(n1 * n2, n1 * n2)
    identity = g1.identity * n2 + g2.identity
    inverse = (g1.inverse[:, None] * n2 + g2.inverse[None, :]).reshape(-1)
    return FiniteGroup(cay, identity, inverse, label=f"{g1.label}x{g2.label}")


@dataclass(frozen=True, eq=False, repr=False)
class Multiplier:
    """A 2-cocycle on a finite group: a unit-modulus table mu[g, h]."""

    group: FiniteGroup
    table: np.ndarray

    def __post_init__(self):
        t = np.ascontiguousarray(self.table, dtype=complex)
        if t.shape != (self.group.order, self.group.order):
            raise InvalidParameterError(
                f"multiplier table shape {t.shape} does not match group order "
                f"{self.group.order}"
            )
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    def __eq__(self, other):
        if not isinstance(other, Multiplier):
            return NotImplemented
        return self.group == other.group and np.array_equal(self.table, other.table)

    def __repr__(self):
        return f"Multiplier(group={self.group.label!r}, order={self.group.order})"


@dataclass(frozen=True)
class MultiplierValidation:
    """Outcome of validate_multiplier: overall verdict plus the first
    counterexample, reported as (check name, offending indices)."""

    passed: bool
    unit_modulus_ok: bool
    normalization_ok: bool
    cocycle_ok: bool
    inverse_symmetry_ok: bool
    max_residual: float
    counterexample: tuple[str, tuple[int, ...]] | None
    tolerance: float


def validate_multiplier(mu: Multiplier, tol: float = UNIT_TOL) -> MultiplierValidation:
    """Check unit modulus, identity normalization, the cocycle identity over
    all triples, and the derived symmetry mu(g, g^-1) = mu(g^-1, g)."""
    group, t = mu.group, mu.table
    n = group.order
    cay = group.cayley
    worst = 0.0
    counterexample = None

    def note(kind, idx, residual):
        nonlocal worst, counterexample
        if residual > worst:
            worst = residual
        if residual > tol and counterexample is None:
            counterexample = (kind, idx)

    mod_resid = np.abs(np.abs(t) - 1.0)
    unit_ok = bool(mod_resid.max(initial=0.0) <= tol)
    if not unit_ok:
        g, h = np.unravel_index(int(mod_resid.argmax()), t.shape)
        note("unit_modulus", (int(g), int(h)), float(mod_resid.max()))
    else:
        worst = max(worst, float(mod_resid.max(initial=0.0)))

    e = group.identity
    norm_resid = max(np.abs(t[:, e] - 1.0).max(), np.abs(t[e, :] - 1.0).max())
    norm_ok = bool(norm_resid <= tol)
    if not norm_ok:
        g = int(np.abs(t[:, e] - 1.0).argmax())
        note("normalization", (g,), float(norm_resid))
    else:
        worst = max(worst, float(norm_resid))

    cocycle_ok = True
    for g1 in range(n):
        lhs = t[g1][cay] * t                   # mu(g1, g2 g3) mu(g2, g3)
        rhs = t[cay[g1]] * t[g1][:, None]      # mu(g1 g2, g3) mu(g1, g2)
        resid = np.abs(lhs - rhs)
        m = float(resid.max())
        if m > tol and cocycle_ok:
            g2, g3 = np.unravel_index(int(resid.argmax()), resid.shape)
            note("cocycle", (g1, int(g2), int(g3)), m)
            cocycle_ok = False
        worst = max(worst, m)

    inv = group.inverse
    sym_resid = np.abs(t[np.arange(n), inv] - t[inv, np.arange(n)])
    sym_ok = bool(sym_resid.max(initial=0.0) <= tol)
    if not sym_ok:
        g = int(sym_resid.argmax())
        note("inverse_symmetry", (g,), float(sym_resid.max()))
    else:
        worst = max(worst, float(sym_resid.max(initial=0.0)))

    passed = unit_ok and norm_ok and cocycle_ok and sym_ok
    return MultiplierValidation(passed, unit_ok, norm_ok, cocycle_ok, sym_ok,
                                worst, counterexample, tol)


def trivial_multiplier(group: FiniteGroup) -> Multiplier:
    """The constant-one cocycle (ordinary representations)."""
    n = group.order
    return Multiplier(group, np.ones((n, n), dtype=complex))


def heisenberg_multiplier(n: int) -> Multiplier:
    """Time-frequency cocycle on Z_n x Z_n.

    With elements indexed (m, k) -> m*n + k, the table is
    exp(-2 pi i * k * m' / n), the scalar picked up when a translation power
    moves past a modulation power on C^n.
    """
    if n < 1:
        raise InvalidParameterError("need n >= 1")
    group = direct_product(cyclic_group(n), cyclic_group(n))
    idx = np.arange(n * n)
    m, k = idx // n, idx % n
    table = np.exp(-2j * np.pi * np.outer(k, m) / n)
    return Multiplier(group, table)


def conjugate_multiplier(mu: Multiplier) -> Multiplier:
    """Entrywise complex conjugate; again a valid cocycle."""
    return Multiplier(mu.group, mu.table.conj())
