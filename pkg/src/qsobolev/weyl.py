"""Finite Weyl-Heisenberg systems: phase-space translations of C^N and their multiplier.

The phase-space group is ``Z_N x Z_N`` acting on ``H = C^N`` by cyclic shifts
and modulations.  Two unitarily equivalent conventions are provided:

* ``standard``:  ``(pi(a,b) psi)(t) = omega^(b t) psi(t + a mod N)`` with
  ``omega = exp(2 pi i / N)``;
* ``symmetric``: ``pi(a,b) = tau^(-a b) pi_standard(a,b)`` with
  ``tau = exp(i pi / N)`` and ``a, b`` the representatives in ``[0, N)``.

The multiplier ``m(x, y)`` linking ``pi(x) pi(y)`` to ``pi(x + y)`` is
extracted empirically from operator composition, which makes the composition
identity hold by construction in either convention and sidesteps the even-N
wraparound subtleties of the symmetric phase.  ``check_axioms`` measures all
the defining identities exhaustively and reports deviations instead of
asserting any contested variant.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .groups import FiniteAbelianGroup, HaarConvention, Point, group_neg, group_sum, make_group

CONVENTIONS = ("standard", "symmetric")

#: Modulus-1 scalar extraction is rejected beyond this deviation.
MULTIPLIER_MODULUS_GUARD = 1e-8


class RepresentationError(RuntimeError):
    """Operator composition did not reduce to a unimodular multiple of a Weyl operator."""


def phase_space_convention(N: int) -> HaarConvention:
    """Counting mass on the group, mass 1/N per dual point: Plancherel constant 1."""
    return HaarConvention(1.0, 1.0 / N)


@dataclass(frozen=True, eq=False)
class WeylSystem:
    """Projective phase-space representation of Z_N x Z_N on C^N."""

    N: int
    convention: str = "standard"
    group: FiniteAbelianGroup = field(init=False)
    haar: HaarConvention = field(init=False)
    _cache: dict = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise ValueError(f"Hilbert dimension must be a positive integer, got {self.N}")
        if self.convention not in CONVENTIONS:
            raise ValueError(f"convention must be one of {CONVENTIONS}, got {self.convention!r}")
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "group", make_group([self.N, self.N]))
        object.__setattr__(self, "haar", phase_space_convention(self.N))


def make_weyl_system(N: int, convention: str = "standard") -> WeylSystem:
    return WeylSystem(N, convention)


def weyl_operator(system: WeylSystem, point: Point) -> np.ndarray:
    """The unitary pi(a, b) as an N x N matrix (cached, read-only).

    Cache population is idempotent (the same read-only matrix is rebuilt
    identically), so concurrent first calls from several threads are safe.
    """
    system.group.require_point(point)
    key = tuple(point)
    cached = system._cache.get(key)
    if cached is not None:
        return cached
    N = system.N
    a, b = key
    t = np.arange(N)
    M = np.zeros((N, N), dtype=np.complex128)
    # Reduce integer phases mod N before exponentiating for one-ulp accuracy.
    M[t, (t + a) % N] = np.exp(2j * np.pi * ((b * t) % N) / N)
    if system.convention == "symmetric":
        M *= np.exp(-1j * np.pi * ((a * b) % (2 * N)) / N)
    M.setflags(write=False)
    system._cache[key] = M
    return M


def matrix_coefficient_table(system: WeylSystem, psi: np.ndarray | None = None) -> np.ndarray:
    """Table of <pi(x) psi, psi> over all phase-space points x (integrability smoke data)."""
    if psi is None:
        psi = np.zeros(system.N, dtype=np.complex128)
        psi[0] = 1.0
    psi = np.asarray(psi, dtype=np.complex128)
    if psi.shape != (system.N,):
        raise ValueError(f"vector must have length {system.N}")
    table = np.array(
        [np.vdot(psi, weyl_operator(system, x) @ psi) for x in system.group.points()]
    )
    return table


def extract_multiplier(system: WeylSystem, x: Point, y: Point) -> complex:
    """The unimodular scalar c with pi(x) pi(y) = c pi(x + y), from traces.

    Computed as ``tr(pi(x+y)^* pi(x) pi(y)) / N``; deviations of the modulus
    from 1 beyond a guard threshold raise :class:`RepresentationError`.
    """
    P = weyl_operator(system, x) @ weyl_operator(system, y)
    Q = weyl_operator(system, group_sum(system.group, x, y))
    c = complex(np.vdot(Q, P)) / system.N
    if abs(abs(c) - 1.0) > MULTIPLIER_MODULUS_GUARD:
        raise RepresentationError(
            f"composition scalar at x={x}, y={y} has modulus {abs(c)!r}, expected 1"
        )
    return c


@dataclass(frozen=True, eq=False)
class MultiplierTable:
    """Multiplier values m(x, y) on all phase-space pairs, indexed lexicographically."""

    group: FiniteAbelianGroup
    values: np.ndarray

    def value(self, x: Point, y: Point) -> complex:
        return complex(self.values[self.group.index(x), self.group.index(y)])


def multiplier_table(system: WeylSystem) -> MultiplierTable:
    """Extract the full multiplier table by operator composition (K^2 pairs, K = N^2)."""
    pts = list(system.group.points())
    K = len(pts)
    ops = [weyl_operator(system, p) for p in pts]
    sum_idx = _sum_index_table(system.group, pts)
    vals = np.empty((K, K), dtype=np.complex128)
    for i in range(K):
        Pi = ops[i]
        for j in range(K):
            vals[i, j] = np.vdot(ops[sum_idx[i, j]], Pi @ ops[j]) / system.N
    return MultiplierTable(system.group, vals)


def _sum_index_table(group: FiniteAbelianGroup, pts: Sequence[Point]) -> np.ndarray:
    K = len(pts)
    idx = np.empty((K, K), dtype=np.intp)
    for i, x in enumerate(pts):
        for j, y in enumerate(pts):
            idx[i, j] = group.index(group_sum(group, x, y))
    return idx


@dataclass(frozen=True)
class AxiomCheck:
    """Outcome of one measured identity: worst deviation and where it happened."""

    axiom: str
    passed: bool
    worst_deviation: float
    witness: dict
    informational: bool = False

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "passed": self.passed,
            "worst_deviation": self.worst_deviation,
            "witness": self.witness,
            "informational": self.informational,
        }


@dataclass(frozen=True)
class AxiomReport:
    """Per-axiom deviations for one Weyl system; JSON-serializable."""

    N: int
    convention: str
    checks: tuple[AxiomCheck, ...]

    def check(self, axiom: str) -> AxiomCheck:
        for c in self.checks:
            if c.axiom == axiom:
                return c
        raise KeyError(axiom)

    @property
    def core_passed(self) -> bool:
        """All non-informational identities passed (axiom-3 variants are reported only)."""
        return all(c.passed for c in self.checks if not c.informational)

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "convention": self.convention,
            "core_passed": self.core_passed,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def _worst(values: np.ndarray) -> tuple[float, tuple[int, ...]]:
    flat = int(np.argmax(values))
    return float(values.flat[flat]), np.unravel_index(flat, values.shape)


def check_axioms(
    system: WeylSystem,
    *,
    composition_tol: float = 1e-11,
    modulus_tol: float = 1e-12,
    unitarity_tol: float = 1e-12,
    orthogonality_tol: float = 1e-11,
    cocycle_tol: float = 1e-11,
) -> AxiomReport:
    """Measure the defining identities of the projective representation exhaustively.

    Checks, over every phase-space pair (and every triple for the cocycle
    identity, K^3 with K = N^2):

    * ``composition``:       worst Frobenius residual of pi(x) pi(y) = m(x,y) pi(x+y);
    * ``unimodular``:        worst | |m(x,y)| - 1 |;
    * ``inverse_conjugation``          m(x,y) = conj(m(-x,-y))  (reported only);
    * ``inverse_conjugation_swapped``  m(x,y) = conj(m(-y,-x))  (reported only);
    * ``cocycle``:           m(x,y) m(x+y,z) = m(y,z) m(x,y+z);
    * ``unitarity``:         worst Frobenius residual of pi(x)^* pi(x) = I;
    * ``trace_orthogonality``: worst deviation of tr(pi(x)^* pi(y)) from N delta_xy.

    The two inverse-conjugation variants are informational: which one a Weyl
    convention satisfies depends on N and on the convention, so no experiment
    downstream assumes either.  Requires ``N <= 16``.
    """
    if system.N > 16:
        raise ValueError(f"exhaustive axiom check is limited to N <= 16, got {system.N}")
    group = system.group
    pts = list(group.points())
    K = len(pts)
    N = system.N
    ops = [weyl_operator(system, p) for p in pts]
    sum_idx = _sum_index_table(group, pts)
    neg_idx = np.array([group.index(group_neg(group, p)) for p in pts], dtype=np.intp)

    m = np.empty((K, K), dtype=np.complex128)
    comp_res = np.empty((K, K))
    for i in range(K):
        Pi = ops[i]
        for j in range(K):
            prod = Pi @ ops[j]
            target = ops[sum_idx[i, j]]
            c = np.vdot(target, prod) / N
            m[i, j] = c
            comp_res[i, j] = np.linalg.norm(prod - c * target)

    worst_comp, comp_at = _worst(comp_res)
    worst_mod, mod_at = _worst(np.abs(np.abs(m) - 1.0))

    inv_dev = np.abs(m - np.conj(m[np.ix_(neg_idx, neg_idx)]))
    worst_inv, inv_at = _worst(inv_dev)
    inv_swap_dev = np.abs(m - np.conj(m[np.ix_(neg_idx, neg_idx)].T))
    worst_swap, swap_at = _worst(inv_swap_dev)

    worst_cocycle = 0.0
    cocycle_at = (0, 0, 0)
    for i in range(K):
        lhs = m[i, :][:, None] * m[sum_idx[i, :], :]
        rhs = m * m[i, sum_idx]
        dev = np.abs(lhs - rhs)
        w, at = _worst(dev)
        if w > worst_cocycle:
            worst_cocycle = w
            cocycle_at = (i, at[0], at[1])

    unit_dev = np.array([np.linalg.norm(op.conj().T @ op - np.eye(N)) for op in ops])
    worst_unit = float(np.max(unit_dev))
    unit_at = (int(np.argmax(unit_dev)),)

    V = np.stack([op.ravel() for op in ops])
    gram = V.conj() @ V.T
    ortho_dev = np.abs(gram - N * np.eye(K))
    worst_ortho, ortho_at = _worst(ortho_dev)

    def pair_witness(i: int, j: int) -> dict:
        return {"x": list(pts[i]), "y": list(pts[j])}

    checks = (
        AxiomCheck("composition", worst_comp <= composition_tol, worst_comp, pair_witness(*comp_at)),
        AxiomCheck("unimodular", worst_mod <= modulus_tol, worst_mod, pair_witness(*mod_at)),
        AxiomCheck(
            "inverse_conjugation",
            worst_inv <= composition_tol,
            worst_inv,
            pair_witness(*inv_at),
            informational=True,
        ),
        AxiomCheck(
            "inverse_conjugation_swapped",
            worst_swap <= composition_tol,
            worst_swap,
            pair_witness(*swap_at),
            informational=True,
        ),
        AxiomCheck(
            "cocycle",
            worst_cocycle <= cocycle_tol,
            worst_cocycle,
            {
                "x": list(pts[cocycle_at[0]]),
                "y": list(pts[cocycle_at[1]]),
                "z": list(pts[cocycle_at[2]]),
            },
        ),
        AxiomCheck(
            "unitarity", worst_unit <= unitarity_tol, worst_unit, {"x": list(pts[unit_at[0]])}
        ),
        AxiomCheck(
            "trace_orthogonality",
            worst_ortho <= orthogonality_tol,
            worst_ortho,
            pair_witness(*ortho_at),
        ),
    )
    return AxiomReport(N=N, convention=system.convention, checks=checks)
