"""Quantum Sobolev norms, the weighted-transform isometry, and the duality side.

A weight is a strictly positive table on the N^2-point dual; the Sobolev norm
of an operator is the weighted L^q norm of its phase-space transform, with
Bessel-style weight ``(1 + gamma^2)^(s/2)`` in the inhomogeneous case and
``gamma^s`` in the homogeneous one (``q`` conjugate to the space exponent
``p in (1, 2)``).  The negative-order side is generated by a test family of
operators built by inverse-transforming weighted generators; the weight-sign
of that construction is a mandatory explicit parameter because both natural
choices are useful, and the default ``-1`` keeps the duality chain sharp.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .groups import (
    FiniteAbelianGroup,
    HaarConvention,
    PhaseFunction,
    Point,
    l_q_norm,
    lq_table_norm,
)
from .linalg import schatten_norm, trace_pairing
from .qft import (
    conjugate_exponent,
    qft_forward,
    qft_inverse,
    random_operator,
    random_phase_function,
    trial_rng,
)
from .weyl import WeylSystem

WEIGHT_PROVENANCES = ("euclidean-representative", "constant", "custom-table")


@dataclass(frozen=True, eq=False)
class Weight:
    """Strictly positive weight table gamma on a dual group."""

    group: FiniteAbelianGroup
    values: np.ndarray
    provenance: str = "custom-table"

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.shape != (self.group.total_order,):
            raise ValueError(
                f"weight table has shape {vals.shape}, expected ({self.group.total_order},)"
            )
        if not np.all(np.isfinite(vals)) or np.any(vals <= 0.0):
            raise ValueError("weight values must be finite and strictly positive")
        if self.provenance not in WEIGHT_PROVENANCES:
            raise ValueError(f"provenance must be one of {WEIGHT_PROVENANCES}")
        object.__setattr__(self, "values", vals)

    def value_at(self, point: Point) -> float:
        return float(self.values[self.group.index(point)])


def symmetric_representative(residue: int, order: int) -> int:
    """Representative of ``residue`` in the window (-order/2, order/2]."""
    r = residue % order
    return r if 2 * r <= order else r - order


def make_weight_euclidean(dual: FiniteAbelianGroup) -> Weight:
    """gamma(a, b) = sqrt(a_sym^2 + b_sym^2 + 1) with symmetric representatives.

    The +1 floor keeps gamma strictly positive at the origin, which the
    homogeneous norm needs for definiteness.
    """
    if len(dual.orders) != 2:
        raise ValueError("euclidean weight expects a two-factor dual group")
    vals = np.array(
        [
            math.sqrt(
                symmetric_representative(a, dual.orders[0]) ** 2
                + symmetric_representative(b, dual.orders[1]) ** 2
                + 1.0
            )
            for a, b in dual.points()
        ]
    )
    return Weight(dual, vals, "euclidean-representative")


def make_weight_constant(dual: FiniteAbelianGroup, value: float = 1.0) -> Weight:
    if not value > 0.0:
        raise ValueError("constant weight must be positive")
    return Weight(dual, np.full(dual.total_order, float(value)), "constant")


def export_weight_csv(weight: Weight, path) -> None:
    """Write rows (a, b, gamma) with 17 significant digits (lossless for doubles)."""
    if len(weight.group.orders) != 2:
        raise ValueError("CSV weight format expects a two-factor dual group")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["a", "b", "gamma"])
        for point, value in zip(weight.group.points(), weight.values):
            writer.writerow([point[0], point[1], format(value, ".17g")])


def import_weight_csv(dual: FiniteAbelianGroup, path) -> Weight:
    vals = np.full(dual.total_order, np.nan)
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if [h.strip() for h in header] != ["a", "b", "gamma"]:
            raise ValueError(f"unexpected weight CSV header {header!r}")
        for row in reader:
            point = (int(row[0]), int(row[1]))
            vals[dual.index(point)] = float(row[2])
    if np.any(np.isnan(vals)):
        raise ValueError("weight CSV does not cover every dual point")
    return Weight(dual, vals, "custom-table")


@dataclass(frozen=True, eq=False)
class SobolevSpec:
    """Parameters (s, p, gamma, homogeneity) of one quantum Sobolev norm.

    ``p`` must lie strictly inside (1, 2); the Fourier-side exponent is the
    conjugate ``q = p / (p - 1)``.  ``s = 0`` is tolerated so degenerate-weight
    diagnostics can run, but every space-level statement assumes ``s > 0``.
    """

    s: float
    p: float
    weight: Weight
    homogeneous: bool = False

    def __post_init__(self):
        if not 1.0 < self.p < 2.0:
            raise ValueError(f"space exponent p must lie in (1, 2), got {self.p}")
        if not self.s >= 0.0:
            raise ValueError(f"smoothness s must be nonnegative, got {self.s}")

    @property
    def q(self) -> float:
        return self.p / (self.p - 1.0)


def sobolev_weight_values(spec: SobolevSpec) -> np.ndarray:
    """The Fourier-side multiplier table: (1 + gamma^2)^(s/2), or gamma^s if homogeneous."""
    g = spec.weight.values
    vals = g**spec.s if spec.homogeneous else (1.0 + g**2) ** (spec.s / 2.0)
    if not np.all(np.isfinite(vals)):
        raise ValueError("Sobolev weight multiplier overflowed; reduce s or the weight")
    return vals


def phi_map(system: WeylSystem, T, spec: SobolevSpec) -> PhaseFunction:
    """The weighted transform Phi(T): the Sobolev norm is its plain L^q norm."""
    if spec.weight.group != system.group:
        raise ValueError("weight lives on a different dual group than the system")
    f = qft_forward(system, T)
    return f.with_values(sobolev_weight_values(spec) * f.values)


def sobolev_norm(system: WeylSystem, T, spec: SobolevSpec) -> float:
    """Weighted L^q norm of the phase-space transform of ``T``; zero iff T = 0."""
    return l_q_norm(phi_map(system, T, spec), spec.q)


def phi_isometry_check(system: WeylSystem, spec: SobolevSpec, trials: int, seed: int) -> float:
    """Worst |  ||Phi(T)||_Lq - sobolev_norm(T) | over random operators.

    The two sides evaluate the same defining formula through the public map
    and the norm entry point, so the deviation is pure arithmetic noise and
    must stay below 1e-12.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    worst = 0.0
    for k in range(trials):
        T = random_operator(trial_rng(seed, k), system.N)
        via_map = l_q_norm(phi_map(system, T, spec), spec.q)
        worst = max(worst, abs(via_map - sobolev_norm(system, T, spec)))
    return worst


@dataclass(frozen=True, eq=False)
class TestFamilyElement:
    """Negative-order test operator W_phi with its generator and defining norm."""

    phi: PhaseFunction
    operator: np.ndarray
    negative_norm: float
    sign: int


def make_test_element(
    system: WeylSystem, spec: SobolevSpec, phi: PhaseFunction, sign: int = -1
) -> TestFamilyElement:
    """Build W_phi = F^-1((1 + gamma^2)^(sign * s / 2) phi) for the negative-order space.

    ``spec`` carries the dual-space exponent pair: its ``p`` plays the role of
    p' in (1, 2) and the defining norm of the element is ``||phi||_{L^q'}``
    with ``q' = spec.q``.  The weight sign is an explicit caller choice (+1 or
    -1); -1 is the default used by the duality harnesses.
    """
    if sign not in (-1, 1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if phi.group != system.group:
        raise ValueError("generator lives on a different dual group than the system")
    if spec.weight.group != system.group:
        raise ValueError("weight lives on a different dual group than the system")
    multiplier = (1.0 + spec.weight.values**2) ** (sign * spec.s / 2.0)
    weighted = phi.with_values(multiplier * phi.values)
    return TestFamilyElement(
        phi=phi,
        operator=qft_inverse(system, weighted),
        negative_norm=l_q_norm(phi, spec.q),
        sign=sign,
    )


def recover_generator(
    system: WeylSystem, spec: SobolevSpec, element: TestFamilyElement
) -> PhaseFunction:
    """Invert the test-family construction (injectivity round-trip for phi -> W_phi)."""
    f = qft_forward(system, element.operator)
    multiplier = (1.0 + spec.weight.values**2) ** (element.sign * spec.s / 2.0)
    return f.with_values(f.values / multiplier)


@dataclass(frozen=True)
class NormAxiomReport:
    """Measured norm-axiom deviations for one Sobolev parameter set."""

    N: int
    s: float
    p: float
    homogeneous: bool
    trials: int
    seed: int
    worst_homogeneity_rel: float
    worst_triangle_excess: float
    triangle_violations: int
    worst_isometry_abs: float
    s_monotonicity_violations: int
    worst_s_monotonicity_excess: float
    hom_dominance_violations: int
    worst_hom_dominance_excess: float
    definiteness_violations: int

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "s": self.s,
            "p": self.p,
            "homogeneous": self.homogeneous,
            "trials": self.trials,
            "seed": self.seed,
            "worst_homogeneity_rel": self.worst_homogeneity_rel,
            "worst_triangle_excess": self.worst_triangle_excess,
            "triangle_violations": self.triangle_violations,
            "worst_isometry_abs": self.worst_isometry_abs,
            "s_monotonicity_violations": self.s_monotonicity_violations,
            "worst_s_monotonicity_excess": self.worst_s_monotonicity_excess,
            "hom_dominance_violations": self.hom_dominance_violations,
            "worst_hom_dominance_excess": self.worst_hom_dominance_excess,
            "definiteness_violations": self.definiteness_violations,
        }


def verify_norm_axioms(
    system: WeylSystem,
    spec: SobolevSpec,
    trials: int,
    seed: int,
    triangle_tol: float = 1e-10,
    monotone_tol: float = 1e-12,
) -> NormAxiomReport:
    """Measure the norm axioms and order relations on seeded random operator pairs.

    Per trial: absolute homogeneity of the norm under a random complex scalar,
    the triangle inequality on a random pair, agreement of the weighted-map
    norm with ``sobolev_norm`` (the isometry identity), monotonicity of the
    inhomogeneous norm in the smoothness parameter (the Bessel multiplier is
    >= 1 and increases with s), pointwise dominance of the homogeneous norm by
    the inhomogeneous one, and definiteness (no vanishing norm on a nonzero
    operator).  Violation counts use relative excess beyond the given slacks.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    base = SobolevSpec(s=spec.s, p=spec.p, weight=spec.weight, homogeneous=False)
    stronger = SobolevSpec(s=2.0 * spec.s, p=spec.p, weight=spec.weight, homogeneous=False)
    hom = SobolevSpec(s=spec.s, p=spec.p, weight=spec.weight, homogeneous=True)

    worst_hom_rel = 0.0
    worst_tri = -math.inf
    tri_viol = 0
    worst_iso = 0.0
    mono_viol = 0
    worst_mono = -math.inf
    dom_viol = 0
    worst_dom = -math.inf
    definite_viol = 0
    for k in range(trials):
        rng = trial_rng(seed, k)
        T = random_operator(rng, system.N)
        S = random_operator(rng, system.N)
        c = complex(rng.standard_normal(), rng.standard_normal())
        nT = sobolev_norm(system, T, spec)
        nS = sobolev_norm(system, S, spec)
        if nT == 0.0 and np.any(T != 0.0):
            definite_viol += 1
        if nT > 0.0:
            scaled = sobolev_norm(system, c * T, spec)
            worst_hom_rel = max(worst_hom_rel, abs(scaled - abs(c) * nT) / (abs(c) * nT))
        if nT + nS > 0.0:
            excess = (sobolev_norm(system, T + S, spec) - (nT + nS)) / (nT + nS)
            worst_tri = max(worst_tri, excess)
            if excess > triangle_tol:
                tri_viol += 1
        worst_iso = max(worst_iso, abs(l_q_norm(phi_map(system, T, spec), spec.q) - nT))
        n_base = sobolev_norm(system, T, base)
        n_stronger = sobolev_norm(system, T, stronger)
        if n_base > 0.0:
            excess = (n_base - n_stronger) / n_base
            worst_mono = max(worst_mono, excess)
            if excess > monotone_tol:
                mono_viol += 1
        n_hom = sobolev_norm(system, T, hom)
        if n_base > 0.0:
            excess = (n_hom - n_base) / n_base
            worst_dom = max(worst_dom, excess)
            if excess > monotone_tol:
                dom_viol += 1
    return NormAxiomReport(
        N=system.N,
        s=spec.s,
        p=spec.p,
        homogeneous=spec.homogeneous,
        trials=trials,
        seed=seed,
        worst_homogeneity_rel=worst_hom_rel,
        worst_triangle_excess=worst_tri,
        triangle_violations=tri_viol,
        worst_isometry_abs=worst_iso,
        s_monotonicity_violations=mono_viol,
        worst_s_monotonicity_excess=worst_mono,
        hom_dominance_violations=dom_viol,
        worst_hom_dominance_excess=worst_dom,
        definiteness_violations=definite_viol,
    )


@dataclass(frozen=True)
class PairingBoundReport:
    """Measured pairing ratios against the chained analytic constant."""

    N: int
    p: float
    p_prime: float
    q_prime: float
    s: float
    sign: int
    trials: int
    seed: int
    skipped: int
    max_ratio: float
    analytic_bound: float
    satisfied: bool

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "p": self.p,
            "p_prime": self.p_prime,
            "q_prime": self.q_prime,
            "s": self.s,
            "sign": self.sign,
            "trials": self.trials,
            "seed": self.seed,
            "skipped": self.skipped,
            "max_ratio": self.max_ratio,
            "analytic_bound": self.analytic_bound,
            "satisfied": self.satisfied,
        }


def pairing_analytic_bound(
    system: WeylSystem, p: float, s: float, weight: Weight, sign: int
) -> float:
    """Provable constant bounding |tr(T W_phi^*)| / (||T||_Sp * ||phi||_q').

    Chained from exact finite-model inequalities: the Schatten Hoelder pairing
    bound, the power-mean comparison of the p'-norm with the Hilbert-Schmidt
    norm of N singular values, Plancherel for the inverse transform, and an
    L^2 Hoelder split of the weighted generator:

        bound = N^(1/p' - 1/2) * || (1 + gamma^2)^(sign*s/2) ||_{L^r},
        1/r = 1/2 - 1/q'.
    """
    p_prime = conjugate_exponent(p)
    q_prime = conjugate_exponent(p_prime)
    r = 2.0 * q_prime / (q_prime - 2.0)
    multiplier = (1.0 + weight.values**2) ** (sign * s / 2.0)
    mult_norm = lq_table_norm(multiplier, r, system.haar.mass_per_point_dual)
    return system.N ** (1.0 / p_prime - 0.5) * mult_norm


def pairing_bound_estimate(
    system: WeylSystem,
    p: float,
    s: float,
    weight: Weight,
    sign: int = -1,
    trials: int = 100,
    seed: int = 0,
    tolerance: float = 1e-10,
) -> PairingBoundReport:
    """Sample |tr(T W_phi^*)| / (||T||_Sp * ||phi||_q') against the analytic bound.

    Requires ``p > 2`` so the test elements live on the conjugate side
    (p' < 2, q' = p).  Trials with a vanishing denominator are skipped and
    counted.
    """
    if not p > 2.0:
        raise ValueError(f"pairing estimate needs p > 2, got {p}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if weight.group != system.group:
        raise ValueError("weight lives on a different dual group than the system")
    p_prime = conjugate_exponent(p)
    q_prime = conjugate_exponent(p_prime)
    dual_spec = SobolevSpec(s=s, p=p_prime, weight=weight)
    bound = pairing_analytic_bound(system, p, s, weight, sign)
    worst = 0.0
    skipped = 0
    for k in range(trials):
        rng = trial_rng(seed, k)
        T = random_operator(rng, system.N)
        phi = random_phase_function(rng, system)
        element = make_test_element(system, dual_spec, phi, sign)
        denom = schatten_norm(T, p) * element.negative_norm
        if denom == 0.0:
            skipped += 1
            continue
        worst = max(worst, abs(trace_pairing(T, element.operator)) / denom)
    return PairingBoundReport(
        N=system.N,
        p=p,
        p_prime=p_prime,
        q_prime=q_prime,
        s=s,
        sign=sign,
        trials=trials,
        seed=seed,
        skipped=skipped,
        max_ratio=worst,
        analytic_bound=bound,
        satisfied=worst <= bound * (1.0 + tolerance),
    )


@dataclass(frozen=True)
class NondegeneracyReport:
    """Rank of the Gram matrix of the delta-generated test family."""

    N: int
    sign: int
    dimension: int
    rank: int
    full_rank: bool
    deficiency: int
    min_eigenvalue: float

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "sign": self.sign,
            "dimension": self.dimension,
            "rank": self.rank,
            "full_rank": self.full_rank,
            "deficiency": self.deficiency,
            "min_eigenvalue": self.min_eigenvalue,
        }


def nondegeneracy_check(
    system: WeylSystem, spec: SobolevSpec, sign: int = -1, rank_tol: float = 1e-10
) -> NondegeneracyReport:
    """Verify the trace pairing separates points via the delta-generated family.

    Builds W_phi for every dual delta generator and checks that their Gram
    matrix has full rank N^2: then the only operator orthogonal to the whole
    family is zero.  Limited to ``N <= 8`` (the Gram matrix has N^4 entries).
    """
    if system.N > 8:
        raise ValueError(f"nondegeneracy check is limited to N <= 8, got {system.N}")
    K = system.group.total_order
    rows = []
    for xi in system.group.points():
        phi = PhaseFunction.delta(system.group, xi, system.haar)
        rows.append(make_test_element(system, spec, phi, sign).operator.ravel())
    V = np.stack(rows)
    gram = V.conj() @ V.T
    eigs = np.linalg.eigvalsh(gram)
    top = float(eigs[-1])
    rank = int(np.sum(eigs > rank_tol * max(top, 1.0)))
    return NondegeneracyReport(
        N=system.N,
        sign=sign,
        dimension=K,
        rank=rank,
        full_rank=rank == K,
        deficiency=K - rank,
        min_eigenvalue=float(eigs[0]),
    )
