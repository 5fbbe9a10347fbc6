"""Exponent arithmetic, the weighted Hoelder + norm-inequality chain, and scaling runs.

The embedding machinery has two halves.  ``verify_embedding_chain`` measures
the two links of the Schatten-embedding argument separately on random
operators: the weighted Hoelder step (exact for finite sums) and the inverse
norm inequality at the intermediate exponent ``sigma``, then the composite
ratio against the multiplier constant.  Two candidate values of the final
Schatten exponent ``beta`` are carried side by side: ``beta_corrected``,
forced by the Hoelder identity ``1/sigma = 1/alpha + 1/q``, and
``beta_alternate = alpha q / (alpha (q - 1) - s)``, the closed form obtained
by substituting ``sigma = alpha q / (alpha + s)`` instead; assertions gate
only the corrected choice while both ratio distributions are recorded.

``counterexample_run`` builds normalized indicator generators on shrinking
dual sets and tracks the growth of the conjugate Schatten norm of their
inverse transforms; the predicted log-log slope is ``1/rho - 1/q``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .groups import FiniteAbelianGroup, HaarConvention, PhaseFunction, Point, l_q_norm, lq_table_norm
from .linalg import schatten_norm
from .qft import conjugate_exponent, qft_forward, qft_inverse, random_operator, trial_rng
from .sobolev import SobolevSpec, Weight, sobolev_norm, symmetric_representative
from .weyl import WeylSystem


class PreconditionError(ValueError):
    """A stated hypothesis of the embedding chain fails for the requested exponents."""


@dataclass(frozen=True)
class ExponentReport:
    """The exponent bookkeeping (sigma, both beta candidates, validity flags)."""

    alpha: float
    q: float
    s: float
    sigma: float
    beta_corrected: float | None
    beta_alternate: float | None
    sigma_in_range: bool
    beta_alternate_defined: bool

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "q": self.q,
            "s": self.s,
            "sigma": self.sigma,
            "beta_corrected": self.beta_corrected,
            "beta_alternate": self.beta_alternate,
            "sigma_in_range": self.sigma_in_range,
            "beta_alternate_defined": self.beta_alternate_defined,
        }


def compute_exponents(alpha: float, q: float, s: float) -> ExponentReport:
    """sigma = alpha q/(alpha + q) and both beta candidates, with validity flags.

    ``beta_alternate`` is reported as undefined (not an error) when its
    denominator ``alpha (q - 1) - s`` is nonpositive: that is a hypothesis
    boundary of that formula.  The upper boundary of the range check
    ``1 < sigma <= 2`` carries a few ulps of slack because exponents usually
    arrive through conjugate-pair arithmetic (q = p/(p-1)) that does not hit
    integer endpoints exactly.
    """
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if not q > 1:
        raise ValueError(f"q must exceed 1, got {q}")
    if not s > 0:
        raise ValueError(f"s must be positive, got {s}")
    sigma = alpha * q / (alpha + q)
    beta_corrected = sigma / (sigma - 1.0) if sigma > 1.0 else None
    alternate_denominator = alpha * (q - 1.0) - s
    beta_alternate_defined = alternate_denominator > 0.0
    beta_alternate = alpha * q / alternate_denominator if beta_alternate_defined else None
    return ExponentReport(
        alpha=alpha,
        q=q,
        s=s,
        sigma=sigma,
        beta_corrected=beta_corrected,
        beta_alternate=beta_alternate,
        sigma_in_range=1.0 < sigma <= 2.0 * (1.0 + 1e-12),
        beta_alternate_defined=beta_alternate_defined,
    )


def multiplier_norm(
    weight: Weight,
    s: float,
    alpha: float,
    homogeneous: bool,
    convention: HaarConvention,
) -> float:
    """L^alpha norm of the reciprocal Sobolev multiplier (the chain constant C1).

    The multiplier is ``(1 + gamma^2)^(-s/2)`` (inhomogeneous hypothesis) or
    ``gamma^(-s)`` (homogeneous hypothesis); on a finite dual the norm is
    always finite and is simply measured.
    """
    g = weight.values
    m = g ** (-s) if homogeneous else (1.0 + g**2) ** (-s / 2.0)
    return lq_table_norm(m, alpha, convention.mass_per_point_dual)


@dataclass(frozen=True)
class EmbeddingRunReport:
    """Measured link and composite ratios for one embedding-chain configuration."""

    N: int
    s: float
    p: float
    q: float
    alpha: float
    homogeneous: bool
    sigma: float
    beta_choice: str
    beta_used: float
    beta_corrected: float
    beta_alternate: float | None
    multiplier_norm: float
    trials: int
    seed: int
    skipped: int
    violations: int
    link1_violations: int
    link2_violations: int
    max_ratio: float
    max_link1_ratio: float
    max_link2_ratio: float
    ratios_corrected: tuple[float, ...] = field(repr=False)
    ratios_alternate: tuple[float, ...] | None = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "s": self.s,
            "p": self.p,
            "q": self.q,
            "alpha": self.alpha,
            "homogeneous": self.homogeneous,
            "sigma": self.sigma,
            "beta_choice": self.beta_choice,
            "beta_used": self.beta_used,
            "beta_corrected": self.beta_corrected,
            "beta_alternate": self.beta_alternate,
            "multiplier_norm": self.multiplier_norm,
            "trials": self.trials,
            "seed": self.seed,
            "skipped": self.skipped,
            "violations": self.violations,
            "link1_violations": self.link1_violations,
            "link2_violations": self.link2_violations,
            "max_ratio": self.max_ratio,
            "max_link1_ratio": self.max_link1_ratio,
            "max_link2_ratio": self.max_link2_ratio,
            "ratios_corrected": list(self.ratios_corrected),
            "ratios_alternate": None if self.ratios_alternate is None else list(self.ratios_alternate),
        }


def verify_embedding_chain(
    system: WeylSystem,
    spec: SobolevSpec,
    alpha: float,
    beta_choice: str = "corrected",
    trials: int = 100,
    seed: int = 0,
    link1_tol: float = 1e-12,
    link2_tol: float = 1e-10,
    composite_tol: float = 1e-10,
) -> EmbeddingRunReport:
    """Check both links of the embedding chain separately on random operators.

    Link 1 (exact weighted Hoelder):   ||F(T)||_sigma <= ||m||_alpha * sobolev_norm(T);
    link 2 (norm inequality, sigma in (1,2]):  ||T||_{S_sigma'} <= ||F(T)||_sigma.
    The composite ratio ||T||_{S_beta} / sobolev_norm(T) is recorded against
    ||m||_alpha for the requested ``beta_choice``; the distribution for the
    other candidate is recorded alongside whenever it is defined.
    """
    if beta_choice not in ("corrected", "alternate"):
        raise ValueError(f"beta_choice must be 'corrected' or 'alternate', got {beta_choice!r}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    exponents = compute_exponents(alpha, spec.q, spec.s)
    if not exponents.sigma_in_range:
        raise PreconditionError(
            f"hypothesis 1 < sigma <= 2 fails: sigma = {exponents.sigma} "
            f"for alpha={alpha}, q={spec.q}"
        )
    sigma = exponents.sigma
    beta_corrected = exponents.beta_corrected
    if beta_choice == "alternate":
        if not exponents.beta_alternate_defined:
            raise PreconditionError(
                f"hypothesis alpha (q - 1) > s fails: alpha={alpha}, q={spec.q}, s={spec.s}"
            )
        beta_used = exponents.beta_alternate
    else:
        beta_used = beta_corrected
    m_norm = multiplier_norm(spec.weight, spec.s, alpha, spec.homogeneous, system.haar)

    skipped = 0
    link1_violations = 0
    link2_violations = 0
    violations = 0
    max_link1 = 0.0
    max_link2 = 0.0
    max_ratio = 0.0
    ratios_corrected: list[float] = []
    ratios_alternate: list[float] | None = [] if exponents.beta_alternate_defined else None
    for k in range(trials):
        T = random_operator(trial_rng(seed, k), system.N)
        snorm = sobolev_norm(system, T, spec)
        if snorm == 0.0:
            skipped += 1
            continue
        f_sigma = l_q_norm(qft_forward(system, T), sigma)
        link1 = f_sigma / (m_norm * snorm)
        max_link1 = max(max_link1, link1)
        if link1 > 1.0 + link1_tol:
            link1_violations += 1
        s_sigma_prime = schatten_norm(T, beta_corrected)
        if f_sigma > 0.0:
            link2 = s_sigma_prime / f_sigma
            max_link2 = max(max_link2, link2)
            if link2 > 1.0 + link2_tol:
                link2_violations += 1
        ratio_corrected = s_sigma_prime / snorm
        ratios_corrected.append(ratio_corrected)
        if ratios_alternate is not None:
            ratios_alternate.append(schatten_norm(T, exponents.beta_alternate) / snorm)
        ratio_used = ratio_corrected if beta_choice == "corrected" else ratios_alternate[-1]
        max_ratio = max(max_ratio, ratio_used)
        if ratio_used > m_norm * (1.0 + composite_tol):
            violations += 1
    return EmbeddingRunReport(
        N=system.N,
        s=spec.s,
        p=spec.p,
        q=spec.q,
        alpha=alpha,
        homogeneous=spec.homogeneous,
        sigma=sigma,
        beta_choice=beta_choice,
        beta_used=beta_used,
        beta_corrected=beta_corrected,
        beta_alternate=exponents.beta_alternate,
        multiplier_norm=m_norm,
        trials=trials,
        seed=seed,
        skipped=skipped,
        violations=violations,
        link1_violations=link1_violations,
        link2_violations=link2_violations,
        max_ratio=max_ratio,
        max_link1_ratio=max_link1,
        max_link2_ratio=max_link2,
        ratios_corrected=tuple(ratios_corrected),
        ratios_alternate=None if ratios_alternate is None else tuple(ratios_alternate),
    )


def lex_first_points(group: FiniteAbelianGroup, k: int) -> list[Point]:
    """The k lexicographically first dual points."""
    if not 1 <= k <= group.total_order:
        raise ValueError(f"set size {k} out of range for dual of order {group.total_order}")
    out = []
    for point in group.points():
        out.append(point)
        if len(out) == k:
            break
    return out


def ball_points(group: FiniteAbelianGroup, k: int) -> list[Point]:
    """The k dual points nearest the origin in symmetric representatives."""
    if not 1 <= k <= group.total_order:
        raise ValueError(f"set size {k} out of range for dual of order {group.total_order}")
    def radius(point: Point) -> tuple:
        r2 = sum(
            symmetric_representative(r, n) ** 2 for r, n in zip(point, group.orders)
        )
        return (r2, point)
    return sorted(group.points(), key=radius)[:k]


def subgroup_points(group: FiniteAbelianGroup, k: int) -> list[Point]:
    """The order-k subgroup {0} x H_k of the dual (requires k to divide the last order).

    Inverse transforms of these indicators have flat singular spectra, so the
    predicted scaling law holds exactly at every finite size; they are the
    shape of choice when measuring the law itself rather than shape effects.
    """
    n_last = group.orders[-1]
    if not 1 <= k <= n_last or n_last % k != 0:
        raise ValueError(f"subgroup selector needs k dividing {n_last}, got {k}")
    step = n_last // k
    zeros = (0,) * (len(group.orders) - 1)
    return [zeros + (j * step,) for j in range(k)]


SET_SELECTORS: dict[str, Callable[[FiniteAbelianGroup, int], list[Point]]] = {
    "lex": lex_first_points,
    "ball": ball_points,
    "subgroup": subgroup_points,
}


@dataclass(frozen=True)
class CounterexamplePoint:
    """One sweep point: a normalized indicator generator and its transform's norm."""

    N: int
    set_size: int
    epsilon: float
    sobolev_norm: float
    schatten_beta_norm: float

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "set_size": self.set_size,
            "epsilon": self.epsilon,
            "sobolev_norm": self.sobolev_norm,
            "schatten_beta_norm": self.schatten_beta_norm,
        }


@dataclass(frozen=True)
class CounterexampleReport:
    """Scaling sweep of the conjugate Schatten norm against shrinking support."""

    q: float
    rho: float
    selector: str
    points: tuple[CounterexamplePoint, ...]
    fitted_slope: float
    predicted_slope: float
    decades_spanned: float

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "rho": self.rho,
            "selector": self.selector,
            "points": [p.to_dict() for p in self.points],
            "fitted_slope": self.fitted_slope,
            "predicted_slope": self.predicted_slope,
            "decades_spanned": self.decades_spanned,
        }


def counterexample_run(
    systems: Sequence[WeylSystem],
    q: float,
    rho: float,
    set_selector: str | Callable[[FiniteAbelianGroup, int], list[Point]] = "lex",
    set_sizes: Sequence[int] | None = None,
) -> CounterexampleReport:
    """Sweep generators a = eps^(-1/q) 1_E over shrinking sets E and fit the growth law.

    For each system (paired with a set size) the generator is L^q-normalized
    by construction (``|E| = eps``), the operator is its inverse transform,
    and the conjugate Schatten norm ``||T||_{S_rho'}`` is recorded.  Points
    are reported sorted by decreasing ``eps`` and an ordinary least-squares
    fit of ``log ||T||`` against ``log eps`` is compared with the predicted
    slope ``1/rho - 1/q`` (negative: the norms diverge as eps -> 0).
    """
    if not rho > q:
        raise ValueError(f"divergence exponent rho must exceed q, got rho={rho}, q={q}")
    if not q >= 1.0:
        raise ValueError(f"normalization exponent q must be >= 1, got {q}")
    if len(systems) == 0:
        raise ValueError("need at least one system")
    if set_sizes is None:
        set_sizes = [1] * len(systems)
    if len(set_sizes) != len(systems):
        raise ValueError("set_sizes must align with systems")
    selector_name = set_selector if isinstance(set_selector, str) else getattr(
        set_selector, "__name__", "custom"
    )
    selector = SET_SELECTORS[set_selector] if isinstance(set_selector, str) else set_selector
    rho_prime = conjugate_exponent(rho)

    points = []
    for system, k in zip(systems, set_sizes):
        support = selector(system.group, k)
        mass = system.haar.mass_per_point_dual
        eps = len(support) * mass
        total_mass = system.group.total_order * mass
        if not 0.0 < eps <= total_mass:
            raise ValueError(f"selector produced measure {eps} outside (0, {total_mass}]")
        vals = np.zeros(system.group.total_order, dtype=np.complex128)
        for point in support:
            vals[system.group.index(point)] = eps ** (-1.0 / q)
        a = PhaseFunction(system.group, vals, system.haar)
        T = qft_inverse(system, a)
        points.append(
            CounterexamplePoint(
                N=system.N,
                set_size=len(support),
                epsilon=eps,
                sobolev_norm=l_q_norm(a, q),
                schatten_beta_norm=schatten_norm(T, rho_prime),
            )
        )
    points.sort(key=lambda pt: -pt.epsilon)
    eps_values = np.array([pt.epsilon for pt in points])
    norms = np.array([pt.schatten_beta_norm for pt in points])
    if len(set(eps_values.tolist())) < 2:
        raise ValueError("sweep needs at least two distinct measures to fit a slope")
    slope = float(np.polyfit(np.log(eps_values), np.log(norms), 1)[0])
    return CounterexampleReport(
        q=q,
        rho=rho,
        selector=selector_name,
        points=tuple(points),
        fitted_slope=slope,
        predicted_slope=1.0 / rho - 1.0 / q,
        decades_spanned=float(math.log10(eps_values.max() / eps_values.min())),
    )
