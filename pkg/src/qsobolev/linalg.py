"""Dense complex matrix kernel: adjoints, traces, Schatten norms, Jacobi SVD.

Singular values are computed by a self-contained one-sided Jacobi iteration
(complex Givens rotations applied to column pairs until the implicit Gram
matrix is numerically diagonal), which keeps high relative accuracy at the
small dimensions this package targets (N <= 64).
"""

from __future__ import annotations

import math

import numpy as np

#: Jacobi sweep budget and stopping/cleanup thresholds (see ``singular_values``).
JACOBI_MAX_SWEEPS = 30
JACOBI_OFFDIAG_TOL = 1e-14
SINGULAR_VALUE_CLAMP = 1e-13


class JacobiConvergenceError(RuntimeError):
    """One-sided Jacobi failed to reach the off-diagonal threshold in the sweep budget."""


def as_operator(T) -> np.ndarray:
    """Validate a square complex matrix with finite entries and return it as complex128."""
    A = np.asarray(T, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise ValueError(f"operator must be a nonempty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("operator entries must be finite")
    return A


def adjoint(T) -> np.ndarray:
    return as_operator(T).conj().T.copy()


def matmul(A, B) -> np.ndarray:
    A = as_operator(A)
    B = as_operator(B)
    if A.shape != B.shape:
        raise ValueError(f"dimension mismatch: {A.shape} vs {B.shape}")
    return A @ B


def scale(c: complex, T) -> np.ndarray:
    return complex(c) * as_operator(T)


def add(A, B) -> np.ndarray:
    A = as_operator(A)
    B = as_operator(B)
    if A.shape != B.shape:
        raise ValueError(f"dimension mismatch: {A.shape} vs {B.shape}")
    return A + B


def trace_pairing(T, W) -> complex:
    """Trace pairing tr(T W^*) = sum_jk T_jk conj(W_jk); conjugate-linear in W."""
    T = as_operator(T)
    W = as_operator(W)
    if T.shape != W.shape:
        raise ValueError(f"dimension mismatch: {T.shape} vs {W.shape}")
    return complex(np.vdot(W, T))


def singular_values(
    T,
    *,
    tol: float = JACOBI_OFFDIAG_TOL,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
    clamp_ratio: float = SINGULAR_VALUE_CLAMP,
) -> np.ndarray:
    """Singular values of ``T``, nonincreasing, via one-sided Jacobi on columns.

    Each sweep orthogonalizes every column pair with a complex rotation; the
    iteration stops once the off-diagonal Frobenius mass of the column Gram
    matrix drops below ``tol * ||T||_F^2`` (the scale-invariant form of the
    stopping rule).  Exceeding ``max_sweeps`` raises
    :class:`JacobiConvergenceError`.  Values below ``clamp_ratio`` times the
    largest singular value are clamped to exact zero so rounding noise cannot
    leak into small-exponent Schatten norms.
    """
    A = as_operator(T).copy()
    n = A.shape[0]
    fro2 = float(np.vdot(A, A).real)
    if fro2 == 0.0:
        return np.zeros(n)
    threshold2 = (tol * fro2) ** 2

    converged = False
    for sweep in range(max_sweeps + 1):
        G = A.conj().T @ A
        np.fill_diagonal(G, 0.0)
        off2 = float(np.vdot(G, G).real)
        if off2 <= threshold2:
            converged = True
            break
        if sweep == max_sweeps:
            break
        for i in range(n - 1):
            for j in range(i + 1, n):
                P = A[:, (i, j)]
                H = P.conj().T @ P
                a = H[0, 0].real
                b = H[1, 1].real
                c = H[0, 1]
                ac = abs(c)
                if ac == 0.0 or ac * ac <= 1e-32 * a * b:
                    continue
                # Unitary 2x2 rotation diagonalizing [[a, c], [conj(c), b]]:
                # factor out the phase of c, then a real Jacobi rotation.
                phase = c / ac
                zeta = (b - a) / (2.0 * ac)
                t = math.copysign(1.0, zeta) / (abs(zeta) + math.hypot(1.0, zeta))
                cs = 1.0 / math.hypot(1.0, t)
                sn = t * cs
                rot = np.array(
                    [[cs, sn], [-sn * phase.conjugate(), cs * phase.conjugate()]],
                    dtype=np.complex128,
                )
                A[:, (i, j)] = P @ rot
    if not converged:
        raise JacobiConvergenceError(
            f"off-diagonal Gram mass {math.sqrt(off2):.3e} above threshold "
            f"{tol * fro2:.3e} after {max_sweeps} sweeps (dim {n})"
        )

    s = np.sort(np.linalg.norm(A, axis=0))[::-1]
    if s[0] > 0.0:
        s[s < clamp_ratio * s[0]] = 0.0
    return s


def schatten_norm(T, p: float, **jacobi_options) -> float:
    """Schatten (quasi-)norm (sum_n s_n(T)^p)^(1/p); the operator norm for p = inf.

    Defined for every ``p > 0``; only ``p >= 1`` values are genuine norms.
    """
    if math.isnan(p) or p <= 0:
        raise ValueError(f"Schatten exponent must be positive or inf, got {p}")
    s = singular_values(T, **jacobi_options)
    top = float(s[0])
    if math.isinf(p) or top == 0.0:
        return top
    return top * float(np.sum((s / top) ** p)) ** (1.0 / p)
