"""JSON wire formats for every object the package exchanges with files and
the command line.

Complex scalars travel as [re, im] pairs.  A matrix is
{"rows": r, "cols": c, "entries": [[re, im], ...]} with entries row-major; a
vector is a flat list whose items may be numbers or [re, im] pairs.  Groups
travel as {"order", "cayley", "label"} and are fully re-validated on ingest.
"""

from __future__ import annotations

from dataclasses import asdict

import numpy as np

from .duality import (
    CommutingPairCheck,
    DualityVerdict,
    DualPairReport,
    SweepReport,
    make_gabor_pair,
    make_regular_pair,
    make_regular_subpair,
)
from .errors import InvalidParameterError
from .frames import DilationResult, FrameClassification
from .gabor import GaborLattice, adjoint_lattice, gabor_rep
from .groups import (
    FiniteGroup,
    Multiplier,
    MultiplierValidation,
    cyclic_group,
    direct_product,
    from_cayley_table,
    heisenberg_multiplier,
    trivial_multiplier,
)
from .reps import ProjectiveRep, RepVerification, character_subrep, left_regular, right_regular
from .vonneumann import OperatorSubspace


def complex_to_pair(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def pair_to_complex(item) -> complex:
    if isinstance(item, (int, float)):
        return complex(item)
    if isinstance(item, (list, tuple)) and len(item) == 2:
        return complex(float(item[0]), float(item[1]))
    raise InvalidParameterError(f"cannot read complex value from {item!r}")


def vector_to_json(v) -> list[list[float]]:
    return [complex_to_pair(z) for z in np.asarray(v, dtype=complex).reshape(-1)]


def vector_from_json(items) -> np.ndarray:
    return np.array([pair_to_complex(x) for x in items], dtype=complex)


def matrix_to_json(m) -> dict:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise InvalidParameterError("matrix_to_json expects a 2-d array")
    return {
        "rows": a.shape[0],
        "cols": a.shape[1],
        "entries": [complex_to_pair(z) for z in a.reshape(-1)],
    }


def matrix_from_json(doc) -> np.ndarray:
    rows, cols = int(doc["rows"]), int(doc["cols"])
    entries = [pair_to_complex(x) for x in doc["entries"]]
    if len(entries) != rows * cols:
        raise InvalidParameterError("entry count does not match matrix shape")
    return np.array(entries, dtype=complex).reshape(rows, cols)


def group_to_json(group: FiniteGroup) -> dict:
    return {
        "order": group.order,
        "cayley": group.cayley.tolist(),
        "label": group.label,
    }


def group_from_json(doc) -> FiniteGroup:
    return from_cayley_table(doc["cayley"], label=str(doc.get("label", "G")))


def multiplier_to_json(mu: Multiplier) -> dict:
    n = mu.group.order
    return {
        "order": n,
        "table": [[complex_to_pair(mu.table[g, h]) for h in range(n)] for g in range(n)],
    }


def multiplier_from_json(group: FiniteGroup, doc) -> Multiplier:
    table = np.array(
        [[pair_to_complex(x) for x in row] for row in doc["table"]], dtype=complex
    )
    return Multiplier(group, table)


def rep_to_json(rep: ProjectiveRep) -> dict:
    return {
        "group": group_to_json(rep.group),
        "multiplier": multiplier_to_json(rep.multiplier),
        "dim": rep.dim,
        "label": rep.label,
        "matrices": [matrix_to_json(m) for m in rep.matrices],
    }


def rep_from_json(doc) -> ProjectiveRep:
    group = group_from_json(doc["group"])
    mu = multiplier_from_json(group, doc["multiplier"])
    mats = np.stack([matrix_from_json(m) for m in doc["matrices"]])
    return ProjectiveRep(group, mu, mats, label=str(doc.get("label", "pi")))


def operator_subspace_to_json(space: OperatorSubspace, generators: str | None = None,
                              tolerance: float | None = None) -> dict:
    return {
        "ambient_dim": space.ambient_dim,
        "dimension": space.dim,
        "generators": generators,
        "tolerance": tolerance,
        "basis": [matrix_to_json(b) for b in space.basis],
    }


def classification_to_json(c: FrameClassification) -> dict:
    return asdict(c)


def multiplier_validation_to_json(r: MultiplierValidation) -> dict:
    doc = asdict(r)
    if r.counterexample is not None:
        doc["counterexample"] = [r.counterexample[0], list(r.counterexample[1])]
    return doc


def rep_verification_to_json(r: RepVerification) -> dict:
    doc = asdict(r)
    if r.worst_pair is not None:
        doc["worst_pair"] = list(r.worst_pair)
    return doc


def commuting_check_to_json(c: CommutingPairCheck) -> dict:
    return asdict(c)


def dual_pair_report_to_json(r: DualPairReport) -> dict:
    return {
        "commuting": commuting_check_to_json(r.commuting),
        "frame_vector": None if r.frame_vector is None else vector_to_json(r.frame_vector),
        "frame_vector_sigma_bessel": r.frame_vector_sigma_bessel,
        "parseval_frame_vector": (None if r.parseval_frame_vector is None
                                  else vector_to_json(r.parseval_frame_vector)),
        "riesz_vector": None if r.riesz_vector is None else vector_to_json(r.riesz_vector),
        "feasible": r.feasible,
        "infeasibility": r.infeasibility,
        "notes": r.notes,
        "seed": r.seed,
        "n_samples": r.n_samples,
    }


def verdict_to_json(v: DualityVerdict) -> dict:
    return {
        "vector": vector_to_json(v.vector),
        "pi": classification_to_json(v.pi_classification),
        "sigma": classification_to_json(v.sigma_classification),
        "clauses": dict(v.clause_results),
        "theorem_consistent": v.theorem_consistent,
    }


def sweep_report_to_json(r: SweepReport) -> dict:
    return {
        "pair": r.label,
        "seed": r.seed,
        "clauses": list(r.clauses),
        "n_random": r.n_random,
        "n_adversarial": r.n_adversarial,
        "n_skipped": r.n_skipped,
        "n_consistent": r.n_consistent,
        "n_inconsistent": r.n_inconsistent,
        "feasible": r.feasible,
        "commuting_residual": r.commuting_residual,
        "parseval_gram_defect": r.parseval_gram_defect,
        "rank_tolerance": r.rank_tolerance,
        "flag_tolerance": r.flag_tolerance,
        "counterexamples": [
            {
                "source": ce.source,
                "vector": vector_to_json(ce.vector),
                "verdict": verdict_to_json(ce.verdict),
            }
            for ce in r.counterexamples
        ],
    }


def dilation_to_json(d: DilationResult) -> dict:
    return {
        "h": vector_to_json(d.h),
        "vector": vector_to_json(d.vector),
        "mode": d.mode,
        "tries": d.tries,
    }


def sweep_report_to_csv_rows(r: SweepReport) -> list[list]:
    """One-line summary table (pair, n, failures, worst_residual)."""
    worst = max(r.commuting_residual, r.parseval_gram_defect)
    header = ["pair", "n", "failures", "worst_residual"]
    row = [r.label, r.n_random + r.n_adversarial - r.n_skipped,
           r.n_inconsistent, repr(worst)]
    return [header, row]


def parse_group_spec(spec) -> FiniteGroup:
    """Accept "Z12", products like "Z2xZ4", or a Cayley-table document."""
    if isinstance(spec, FiniteGroup):
        return spec
    if isinstance(spec, dict):
        return group_from_json(spec)
    text = str(spec).strip()
    factors = []
    for part in text.split("x"):
        part = part.strip()
        if not part.upper().startswith("Z") or not part[1:].isdigit():
            raise InvalidParameterError(
                f"cannot parse group spec {spec!r}; expected e.g. Z12 or Z2xZ4"
            )
        factors.append(cyclic_group(int(part[1:])))
    if not factors:
        raise InvalidParameterError(f"empty group spec {spec!r}")
    group = factors[0]
    for extra in factors[1:]:
        group = direct_product(group, extra)
    return group


def parse_multiplier_spec(group: FiniteGroup, spec) -> Multiplier:
    """Accept "trivial", "heisenberg" (square product groups only), or a
    multiplier table document."""
    if isinstance(spec, Multiplier):
        return spec
    if isinstance(spec, dict):
        return multiplier_from_json(group, spec)
    text = str(spec).strip().lower()
    if text == "trivial":
        return trivial_multiplier(group)
    if text == "heisenberg":
        root = int(round(np.sqrt(group.order)))
        if root * root != group.order:
            raise InvalidParameterError(
                "heisenberg multiplier needs a group of square order ZnxZn"
            )
        mu = heisenberg_multiplier(root)
        if not (mu.group == group):
            raise InvalidParameterError(
                f"heisenberg multiplier lives on Z{root}xZ{root}, "
                f"which differs from {group.label}"
            )
        return mu
    raise InvalidParameterError(f"cannot parse multiplier spec {spec!r}")


def parse_lattice_spec(spec) -> GaborLattice:
    """Accept "N,a,b" strings or [N, a, b] sequences."""
    if isinstance(spec, GaborLattice):
        return spec
    if isinstance(spec, str):
        parts = [p.strip() for p in spec.split(",")]
    else:
        parts = list(spec)
    if len(parts) != 3:
        raise InvalidParameterError(f"lattice spec needs three values, got {spec!r}")
    n, a, b = (int(p) for p in parts)
    return GaborLattice(n, a, b)


def resolve_rep_spec(doc: dict) -> ProjectiveRep:
    """Build a representation from {"kind": ...} documents.

    kinds: "regular" (left regular; fields group, multiplier, side),
    "gabor" (field lattice), "character" (fields n, freqs), "custom"
    (field rep holding a full representation bundle).
    """
    kind = str(doc.get("kind", "regular")).lower()
    if kind == "regular":
        group = parse_group_spec(doc.get("group", "Z4"))
        mu = parse_multiplier_spec(group, doc.get("multiplier", "trivial"))
        side = str(doc.get("side", "left")).lower()
        if side == "left":
            return left_regular(group, mu)
        if side == "right":
            return right_regular(group, mu)
        raise InvalidParameterError(f"unknown side {side!r}")
    if kind == "gabor":
        return gabor_rep(parse_lattice_spec(doc["lattice"]))
    if kind == "character":
        return character_subrep(int(doc["n"]), doc["freqs"])
    if kind == "custom":
        return rep_from_json(doc["rep"])
    raise InvalidParameterError(f"unknown representation kind {kind!r}")


def resolve_pair_spec(doc: dict):
    """Build (pi, sigma, label) from {"kind": "regular"|"gabor"|"custom"}.

    Regular pairs are (left, right) over one group and multiplier, gabor
    pairs use the adjoint lattice, custom pairs carry two full bundles.
    """
    kind = str(doc.get("kind", "regular")).lower()
    if kind == "regular":
        group = parse_group_spec(doc.get("group", "Z4"))
        mu = parse_multiplier_spec(group, doc.get("multiplier", "trivial"))
        mu_name = doc.get("multiplier", "trivial")
        mu_label = mu_name if isinstance(mu_name, str) else "custom"
        if doc.get("projection") is not None:
            projection = matrix_from_json(doc["projection"])
            pi, sigma = make_regular_subpair(group, mu, projection)
            return pi, sigma, f"regular[{group.label},{mu_label}]|P"
        pi, sigma = make_regular_pair(group, mu)
        return pi, sigma, f"regular[{group.label},{mu_label}]"
    if kind == "gabor":
        lattice = parse_lattice_spec(doc["lattice"])
        pi, sigma = make_gabor_pair(lattice)
        adj = adjoint_lattice(lattice)
        return pi, sigma, (f"gabor[{lattice.n};{lattice.a},{lattice.b}]"
                           f"/adjoint[{adj.n};{adj.a},{adj.b}]")
    if kind == "custom":
        pi = rep_from_json(doc["pi"])
        sigma = rep_from_json(doc["sigma"])
        return pi, sigma, f"custom[{pi.label}/{sigma.label}]"
    raise InvalidParameterError(f"unknown pair kind {kind!r}")
