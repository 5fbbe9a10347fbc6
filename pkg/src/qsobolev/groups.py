"""Finite abelian groups, their duals, characters, and Haar-weighted L^q norms.

A product of cyclic groups ``Z_{n1} x ... x Z_{nk}`` is self-dual: the dual
group has the same cyclic orders and the pairing is the explicit character
formula ``chi_xi(x) = exp(2*pi*i * sum_j xi_j x_j / n_j)``.  Every integral
over the group or its dual is a finite sum weighted by an explicit per-point
Haar mass, so norms and inner products reduce to weighted vector arithmetic.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

Point = tuple[int, ...]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Product of cyclic groups with a fixed lexicographic point enumeration."""

    orders: tuple[int, ...]

    def __post_init__(self):
        if len(self.orders) == 0:
            raise ValueError("group needs at least one cyclic factor")
        if any(int(n) != n or n < 1 for n in self.orders):
            raise ValueError(f"cyclic orders must be positive integers, got {self.orders}")
        object.__setattr__(self, "orders", tuple(int(n) for n in self.orders))

    @property
    def total_order(self) -> int:
        return math.prod(self.orders)

    def points(self) -> Iterator[Point]:
        """All points in lexicographic order (last coordinate fastest)."""
        idx = [0] * len(self.orders)
        for _ in range(self.total_order):
            yield tuple(idx)
            for j in reversed(range(len(idx))):
                idx[j] += 1
                if idx[j] < self.orders[j]:
                    break
                idx[j] = 0

    def index(self, point: Point) -> int:
        """Position of ``point`` in the lexicographic enumeration."""
        self.require_point(point)
        i = 0
        for r, n in zip(point, self.orders):
            i = i * n + r
        return i

    def point_at(self, index: int) -> Point:
        if not 0 <= index < self.total_order:
            raise ValueError(f"point index {index} out of range")
        out = []
        for n in reversed(self.orders):
            out.append(index % n)
            index //= n
        return tuple(reversed(out))

    def contains(self, point: Point) -> bool:
        return len(point) == len(self.orders) and all(
            0 <= int(r) < n and int(r) == r for r, n in zip(point, self.orders)
        )

    def require_point(self, point: Point) -> None:
        if not self.contains(point):
            raise ValueError(f"{point!r} is not a point of the group with orders {self.orders}")

    def reduce(self, raw: Sequence[int]) -> Point:
        """Componentwise reduction mod the cyclic orders."""
        if len(raw) != len(self.orders):
            raise ValueError(f"{raw!r} has wrong arity for orders {self.orders}")
        return tuple(int(r) % n for r, n in zip(raw, self.orders))

    @property
    def identity(self) -> Point:
        return (0,) * len(self.orders)


def make_group(orders: Sequence[int]) -> FiniteAbelianGroup:
    """Build ``Z_{n1} x ... x Z_{nk}`` from a list of positive cyclic orders."""
    return FiniteAbelianGroup(tuple(orders))


def group_sum(group: FiniteAbelianGroup, x: Point, y: Point) -> Point:
    group.require_point(x)
    group.require_point(y)
    return tuple((a + b) % n for a, b, n in zip(x, y, group.orders))


def group_neg(group: FiniteAbelianGroup, x: Point) -> Point:
    group.require_point(x)
    return tuple((-a) % n for a, n in zip(x, group.orders))


def character(group: FiniteAbelianGroup, xi: Point, x: Point) -> complex:
    """Dual pairing chi_xi(x) = exp(2*pi*i * sum_j xi_j x_j / n_j), a unit complex number.

    ``xi`` lives on the dual copy of ``group`` and ``x`` on the group itself;
    both are validated against the cyclic orders.
    """
    group.require_point(xi)
    group.require_point(x)
    # Reduce the integer phase exactly before taking exp: keeps |result| = 1
    # to one ulp even when xi_j * x_j is large.
    num = 0
    den = 1
    for xj, rj, n in zip(xi, x, group.orders):
        num = num * n + xj * rj * den
        den *= n
    return cmath.exp(2j * cmath.pi * (num % den) / den)


@dataclass(frozen=True)
class HaarConvention:
    """Explicit per-point Haar masses for a group and its dual."""

    mass_per_point_group: float
    mass_per_point_dual: float

    def __post_init__(self):
        if not (self.mass_per_point_group > 0 and self.mass_per_point_dual > 0):
            raise ValueError("Haar masses must be strictly positive")

    @staticmethod
    def counting() -> "HaarConvention":
        return HaarConvention(1.0, 1.0)


@dataclass(frozen=True, eq=False)
class PhaseFunction:
    """Complex-valued function on a (dual) group, stored as a lexicographic table."""

    group: FiniteAbelianGroup
    values: np.ndarray
    convention: HaarConvention

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.complex128)
        if vals.shape != (self.group.total_order,):
            raise ValueError(
                f"value table has shape {vals.shape}, expected ({self.group.total_order},)"
            )
        if not np.all(np.isfinite(vals)):
            raise ValueError("phase function values must be finite")
        object.__setattr__(self, "values", vals)

    def value_at(self, point: Point) -> complex:
        return complex(self.values[self.group.index(point)])

    def with_values(self, values: np.ndarray) -> "PhaseFunction":
        return PhaseFunction(self.group, values, self.convention)

    @staticmethod
    def zero(group: FiniteAbelianGroup, convention: HaarConvention) -> "PhaseFunction":
        return PhaseFunction(group, np.zeros(group.total_order, dtype=np.complex128), convention)

    @staticmethod
    def delta(
        group: FiniteAbelianGroup, point: Point, convention: HaarConvention, amplitude: complex = 1.0
    ) -> "PhaseFunction":
        vals = np.zeros(group.total_order, dtype=np.complex128)
        vals[group.index(point)] = amplitude
        return PhaseFunction(group, vals, convention)


def lq_table_norm(values: np.ndarray, q: float, mass_per_point: float) -> float:
    """Weighted l^q norm (sum |v|^q * mass)^(1/q) of a raw value table.

    ``q = inf`` returns the max modulus.  Uses numpy's pairwise summation and
    rescales by the max modulus so large exponents neither overflow nor lose
    accuracy.
    """
    if math.isnan(q) or q <= 0:
        raise ValueError(f"exponent q must be positive or inf, got {q}")
    mods = np.abs(np.asarray(values))
    if mods.size == 0:
        return 0.0
    top = float(np.max(mods))
    if math.isinf(q) or top == 0.0:
        return top
    return top * float(np.sum((mods / top) ** q) * mass_per_point) ** (1.0 / q)


def l_q_norm(f: PhaseFunction, q: float, convention: HaarConvention | None = None) -> float:
    """L^q(dual) norm of a phase function under its (or an overriding) Haar convention."""
    conv = f.convention if convention is None else convention
    return lq_table_norm(f.values, q, conv.mass_per_point_dual)
