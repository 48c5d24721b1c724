"""Projective unitary representations of finite groups on C^dim.

A representation is stored densely as a stack of unitaries, one per group
element, together with the cocycle mu that twists compositions:
pi(g) pi(h) = mu(g, h) pi(gh).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError, NotInvariantError, NotProjectiveError
from .groups import FiniteGroup, Multiplier, cyclic_group, trivial_multiplier, validate_multiplier
from .linalg import hermitian_eig

REP_TOL = 1e-10  # default residual gate for unitarity and twisted composition


@dataclass(frozen=True, eq=False, repr=False)
class ProjectiveRep:
    """Stack of unitaries pi(g), g running over a finite group."""

    group: FiniteGroup
    multiplier: Multiplier
    matrices: np.ndarray  # shape (order, dim, dim)
    label: str = "pi"

    def __post_init__(self):
        m = np.ascontiguousarray(self.matrices, dtype=complex)
        if m.ndim != 3 or m.shape[0] != self.group.order or m.shape[1] != m.shape[2]:
            raise InvalidParameterError(
                f"matrix stack shape {m.shape} does not fit group of order "
                f"{self.group.order}"
            )
        if m.shape[1] < 1:
            raise InvalidParameterError("representation dimension must be >= 1")
        m.setflags(write=False)
        object.__setattr__(self, "matrices", m)

    @property
    def dim(self) -> int:
        return self.matrices.shape[1]

    def matrix(self, g: int) -> np.ndarray:
        return self.matrices[g]

    def __repr__(self):
        return (f"ProjectiveRep({self.label!r}, group={self.group.label!r}, "
                f"dim={self.dim})")


@dataclass(frozen=True)
class RepVerification:
    """Residuals of the unitarity / identity / twisted-composition checks,
    with the worst composition pair for debugging."""

    passed: bool
    unitarity_residual: float
    identity_residual: float
    composition_residual: float
    worst_pair: tuple[int, int] | None
    tolerance: float


def verify_rep(rep: ProjectiveRep, tol: float = REP_TOL) -> RepVerification:
    """Check that every matrix is unitary, pi(e) = I, and that
    pi(g) pi(h) = mu(g, h) pi(gh) holds for all pairs."""
    mats = rep.matrices
    n, d = mats.shape[0], rep.dim
    eye = np.eye(d)

    gram = np.einsum("gji,gjk->gik", mats.conj(), mats)
    unit_resid = float(np.abs(gram - eye[None]).max())

    id_resid = float(np.abs(mats[rep.group.identity] - eye).max())

    cay = rep.group.cayley
    table = rep.multiplier.table
    comp_resid = 0.0
    worst_pair = None
    for g in range(n):
        prods = mats[g] @ mats                       # (n, d, d)
        targets = table[g][:, None, None] * mats[cay[g]]
        resid = np.abs(prods - targets).max(axis=(1, 2))
        h = int(resid.argmax())
        if resid[h] > comp_resid:
            comp_resid = float(resid[h])
            worst_pair = (g, h)
    passed = unit_resid <= tol and id_resid <= tol and comp_resid <= tol
    return RepVerification(passed, unit_resid, id_resid, comp_resid, worst_pair, tol)


def _require_valid(group: FiniteGroup, mu: Multiplier) -> None:
    if not (mu.group == group):
        raise InvalidParameterError("multiplier is defined on a different group")
    report = validate_multiplier(mu)
    if not report.passed:
        raise InvalidParameterError(
            f"invalid multiplier: first counterexample {report.counterexample}"
        )


def left_regular(group: FiniteGroup, mu: Multiplier) -> ProjectiveRep:
    """Left regular projective representation on C^|G|:
    column h of L(g) is mu(g, h) at row g*h."""
    _require_valid(group, mu)
    n = group.order
    cay = group.cayley
    cols = np.arange(n)
    mats = np.zeros((n, n, n), dtype=complex)
    for g in range(n):
        mats[g, cay[g, cols], cols] = mu.table[g, cols]
    return ProjectiveRep(group, mu, mats, label=f"lambda[{group.label}]")


def right_regular(group: FiniteGroup, mu: Multiplier) -> ProjectiveRep:
    """Right regular projective representation on C^|G|:
    column h of R(g) is mu(h, g^-1) at row h*g^-1.

    Its cocycle is nu(g, h) = mu(h^-1, g^-1).  This coincides with the
    entrywise conjugate of mu exactly when mu(g, g^-1) = 1 for all g (in
    particular for ordinary representations); in general the two differ by
    the coboundary of g -> mu(g, g^-1).
    """
    _require_valid(group, mu)
    n = group.order
    cay, inv = group.cayley, group.inverse
    cols = np.arange(n)
    mats = np.zeros((n, n, n), dtype=complex)
    for g in range(n):
        mats[g, cay[cols, inv[g]], cols] = mu.table[cols, inv[g]]
    nu = Multiplier(group, mu.table[np.ix_(inv, inv)].T)
    return ProjectiveRep(group, nu, mats, label=f"rho[{group.label}]")


def derive_multiplier(matrices, group: FiniteGroup, tol: float = 1e-8) -> Multiplier:
    """Recover the cocycle from operator compositions.

    For every pair, pi(g) pi(h) must be a scalar multiple of pi(gh); the
    scalar is read off as tr(pi(gh)* pi(g) pi(h)) / dim and renormalized to
    unit modulus.  A modulus off 1 by more than 1e-6, or a proportionality
    residual above tol, means the family is not projective.
    """
    mats = np.ascontiguousarray(matrices, dtype=complex)
    n = group.order
    if mats.ndim != 3 or mats.shape[0] != n or mats.shape[1] != mats.shape[2]:
        raise InvalidParameterError("matrix stack does not fit the group")
    d = mats.shape[1]
    cay = group.cayley
    table = np.zeros((n, n), dtype=complex)
    for g in range(n):
        prods = mats[g] @ mats                     # (n, d, d)
        targets = mats[cay[g]]
        scalars = np.einsum("hji,hji->h", targets.conj(), prods) / d
        moduli = np.abs(scalars)
        if np.any(np.abs(moduli - 1.0) > 1e-6):
            h = int(np.abs(moduli - 1.0).argmax())
            raise NotProjectiveError(
                f"composition at pair ({g},{h}) is proportional with |scalar|="
                f"{moduli[h]:.6f}, not unit modulus"
            )
        scalars = scalars / moduli
        resid = np.abs(prods - scalars[:, None, None] * targets).max(axis=(1, 2))
        if resid.max() > tol:
            h = int(resid.argmax())
            raise NotProjectiveError(
                f"pi({g}) pi({h}) is not a scalar multiple of pi({g}*{h}): "
                f"residual {resid[h]:.3e}"
            )
        table[g] = scalars
    mu = Multiplier(group, table)
    report = validate_multiplier(mu, tol=max(tol, 1e-10))
    if not report.passed:
        raise NotProjectiveError(
            f"recovered table is not a cocycle: counterexample {report.counterexample}"
        )
    return mu


def subrepresentation(rep: ProjectiveRep, projection, tol: float = REP_TOL) -> ProjectiveRep:
    """Restrict a representation to the range of a commuting orthogonal
    projection, expressed in the eigenbasis of the projection.

    The basis is the eigenvalue-1 eigenvectors of the projection in eigh
    order, so restricted matrices are reproducible across runs.
    """
    p = np.asarray(projection, dtype=complex)
    d = rep.dim
    if p.shape != (d, d):
        raise InvalidParameterError(f"projection shape {p.shape} does not match dim {d}")
    if np.abs(p - p.conj().T).max() > tol or np.abs(p @ p - p).max() > tol:
        raise InvalidParameterError("matrix is not an orthogonal projection")
    comm = np.abs(p[None] @ rep.matrices - rep.matrices @ p[None]).max()
    if comm > tol:
        raise NotInvariantError(
            f"projection does not commute with the representation: residual {comm:.3e}"
        )
    w, v = hermitian_eig(p)
    basis = v[:, w > 0.5]
    if basis.shape[1] == 0:
        raise InvalidParameterError("projection is zero; no subrepresentation")
    restricted = np.einsum("ji,gjk,kl->gil", basis.conj(), rep.matrices, basis)
    return ProjectiveRep(rep.group, rep.multiplier, restricted,
                         label=f"{rep.label}|P(rank {basis.shape[1]})")


def character_subrep(n: int, freqs) -> ProjectiveRep:
    """Diagonal character representation of Z_n on the chosen frequency set:
    pi(g) = diag(exp(2 pi i g k / n), k in freqs).

    Unitarily equivalent to the restriction of the left regular
    representation of Z_n to the span of the DFT vectors with those
    frequencies.
    """
    ks = sorted({int(k) % n for k in freqs})
    if not ks:
        raise InvalidParameterError("frequency set must be nonempty")
    group = cyclic_group(n)
    g = np.arange(n)[:, None]
    phases = np.exp(2j * np.pi * g * np.asarray(ks)[None, :] / n)  # (n, |E|)
    mats = np.zeros((n, len(ks), len(ks)), dtype=complex)
    idx = np.arange(len(ks))
    mats[:, idx, idx] = phases
    return ProjectiveRep(group, trivial_multiplier(group), mats,
                         label=f"char[Z{n}|{ks}]")
