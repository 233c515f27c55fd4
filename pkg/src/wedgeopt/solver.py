"""Optimal unit directions for a linear objective on a constraint null space.

The solve pipeline wedges the constraint rows into one m-form, dualizes it
against the objective 1-form, and dualizes once more.  With this module's
sign convention the unnormalized result equals the Gram determinant of the
rows times the component of the objective orthogonal to the row span, so
the objective dotted with it is a sum of squares and never negative.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import DomainError, RankDeficientError
from .forms import KForm, _check_dimension, _combos, from_vector, hodge, wedge

__all__ = [
    "DEGENERACY_TOLERANCE",
    "ConstraintSystem",
    "Objective",
    "Solution",
    "SolveStatus",
    "constraint_form",
    "degenerate_direction",
    "dual_form",
    "objective_value",
    "optimal_direction",
    "triple_product_direction",
]

# Coefficient c in the classification rule ||raw|| <= c * ||A_form||^2 * ||b||,
# equivalent to ||b_perp|| <= c * ||b|| and therefore invariant under row and
# objective rescaling.
DEGENERACY_TOLERANCE = 1e-12


class SolveStatus(str, Enum):
    """Outcome classification of a solve."""

    OPTIMAL = "optimal"
    DEGENERATE = "degenerate"
    UNCONSTRAINED = "unconstrained"


@dataclass(frozen=True, eq=False)
class ConstraintSystem:
    """An m x n matrix of constraint rows, with 0 <= m < n."""

    rows: np.ndarray

    def __post_init__(self) -> None:
        rows = np.array(self.rows, dtype=float)
        if rows.ndim != 2:
            raise DomainError("constraint rows must form a 2-d matrix")
        m, n = rows.shape
        _check_dimension(n)
        if m >= n:
            raise DomainError(f"the row count must satisfy m < n, got m={m}, n={n}")
        if not np.all(np.isfinite(rows)):
            raise DomainError("constraint rows must have finite entries")
        if m and np.any(np.linalg.norm(rows, axis=1) == 0.0):
            raise DomainError("constraint rows must be nonzero")
        rows.flags.writeable = False
        object.__setattr__(self, "rows", rows)

    @classmethod
    def unconstrained(cls, n: int) -> "ConstraintSystem":
        """A system with no rows over R^n."""
        return cls(np.zeros((0, int(n))))

    @property
    def m(self) -> int:
        return self.rows.shape[0]

    @property
    def n(self) -> int:
        return self.rows.shape[1]


@dataclass(frozen=True, eq=False)
class Objective:
    """Objective vector plus the sense of optimization along it."""

    b: np.ndarray
    mode: str = "max"

    def __post_init__(self) -> None:
        b = np.array(self.b, dtype=float)
        if b.ndim != 1 or b.shape[0] < 1:
            raise DomainError("objective must be a non-empty 1-d real vector")
        if not np.all(np.isfinite(b)):
            raise DomainError("objective entries must be finite")
        if np.linalg.norm(b) == 0.0:
            raise DomainError("objective vector must have positive norm")
        if self.mode not in ("max", "min"):
            raise DomainError(f"mode must be 'max' or 'min', got {self.mode!r}")
        b.flags.writeable = False
        object.__setattr__(self, "b", b)


@dataclass(frozen=True, eq=False)
class Solution:
    """Unit direction, unnormalized ray at unit scale, objective value, status."""

    direction: np.ndarray
    raw: np.ndarray
    objective: float
    status: SolveStatus

    def __post_init__(self) -> None:
        direction = np.array(self.direction, dtype=float)
        raw = np.array(self.raw, dtype=float)
        direction.flags.writeable = False
        raw.flags.writeable = False
        object.__setattr__(self, "direction", direction)
        object.__setattr__(self, "raw", raw)
        object.__setattr__(self, "objective", float(self.objective))
        object.__setattr__(self, "status", SolveStatus(self.status))


def _check_pair(system: ConstraintSystem, objective: Objective) -> None:
    if objective.b.shape[0] != system.n:
        raise DomainError(
            f"objective has {objective.b.shape[0]} components "
            f"but the system is {system.n}-dimensional"
        )


def constraint_form(system: ConstraintSystem) -> KForm:
    """Wedge of all constraint rows.

    The coefficient on a sorted multi-index I equals the m x m minor of the
    row matrix on columns I, so the minors are evaluated directly as a batch
    of determinants; agreement with the fold of pairwise wedge products is
    covered by the test suite.
    """
    m, n = system.m, system.n
    if m == 0:
        raise DomainError("an unconstrained system has no constraint form")
    if m == 1:
        return KForm(n, 1, system.rows[0])
    submatrices = np.transpose(system.rows[:, _combos(n, m)], (1, 0, 2))
    return KForm(n, m, np.linalg.det(submatrices))


def dual_form(objective: Objective, constraint: KForm) -> KForm:
    """Hodge dual of (objective 1-form ^ constraint form).

    Zero exactly when the objective vector lies in the constraint row span.
    """
    if objective.b.shape[0] != constraint.n:
        raise DomainError(
            f"objective has {objective.b.shape[0]} components "
            f"but the form lives over R^{constraint.n}"
        )
    return hodge(wedge(from_vector(objective.b), constraint))


def _solution_ray(system: ConstraintSystem, objective: Objective) -> tuple[KForm, np.ndarray]:
    """Constraint form and unnormalized optimal ray, after a rank check."""
    from .oracle import orthonormalize  # deferred: oracle imports this module's types

    basis = orthonormalize(system.rows)
    if basis.rank < system.m:
        raise RankDeficientError(
            "constraint rows are linearly dependent; drop dependent rows "
            "(for the CLI: --reduce-rows) and retry"
        )
    constraint = constraint_form(system)
    raw_form = hodge(wedge(constraint, dual_form(objective, constraint)))
    parity = 1.0 if system.n % 2 else -1.0  # fixes b . raw = ||b ^ rows||^2 >= 0
    return constraint, parity * raw_form.coeffs


def optimal_direction(
    system: ConstraintSystem,
    objective: Objective,
    tolerance: float | None = None,
) -> Solution:
    """Best feasible unit direction for the objective.

    With no constraint rows the normalized objective itself is returned.
    Otherwise the wedge/Hodge ray is normalized; its sign is chosen so the
    objective is non-negative for mode "max" and non-positive for "min".
    When the ray vanishes (objective inside the row span) the returned
    direction is an arbitrary but deterministic feasible unit vector and
    the objective value is zero.

    `tolerance` overrides the relative degeneracy coefficient
    (default DEGENERACY_TOLERANCE).
    """
    _check_pair(system, objective)
    b = objective.b
    sigma = 1.0 if objective.mode == "max" else -1.0
    if system.m == 0:
        direction = sigma * b / np.linalg.norm(b)
        return Solution(direction, b, float(b @ direction), SolveStatus.UNCONSTRAINED)
    constraint, raw = _solution_ray(system, objective)
    coeff = DEGENERACY_TOLERANCE if tolerance is None else float(tolerance)
    raw_norm = float(np.linalg.norm(raw))
    if raw_norm <= coeff * constraint.norm() ** 2 * float(np.linalg.norm(b)):
        return Solution(degenerate_direction(system), raw, 0.0, SolveStatus.DEGENERATE)
    if float(b @ raw) < 0.0:
        sigma = -sigma
    direction = sigma * raw / raw_norm
    return Solution(direction, raw, float(b @ direction), SolveStatus.OPTIMAL)


def objective_value(system: ConstraintSystem, objective: Objective, t_star: float) -> float:
    """Objective contracted with the unnormalized ray scaled by t_star.

    Non-negative for mode "max"; the matching minimum is the negative.
    For a single 3-d constraint row this equals
    t_star * (||a||^2 ||b||^2 - (a . b)^2).
    """
    if not t_star > 0:
        raise DomainError(f"t_star must be positive, got {t_star}")
    if system.m == 0:
        raise DomainError("objective_value needs at least one constraint row")
    _check_pair(system, objective)
    _, raw = _solution_ray(system, objective)
    value = float(t_star) * float(objective.b @ raw)
    return value if objective.mode == "max" else -value


def triple_product_direction(a: Sequence[float], b: Sequence[float]) -> np.ndarray:
    """Classical 3-d route a x (b x a); the zero vector iff a and b are parallel."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != (3,) or b.shape != (3,):
        raise DomainError("both vectors must be 3-dimensional")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise DomainError("inputs must have finite entries")
    if np.linalg.norm(a) == 0.0 or np.linalg.norm(b) == 0.0:
        raise DomainError("inputs must be nonzero vectors")
    return np.cross(a, np.cross(b, a))


def degenerate_direction(system: ConstraintSystem) -> np.ndarray:
    """Deterministic unit vector in the null space of the constraint rows.

    Takes the first coordinate axis with a non-negligible null-space
    component, orthogonalizes it against the rows and normalizes.
    """
    n = system.n
    if system.m == 0:
        axis = np.zeros(n)
        axis[0] = 1.0
        return axis
    from .oracle import orthonormalize  # deferred: oracle imports this module's types

    basis = orthonormalize(system.rows)
    if basis.rank < system.m:
        raise RankDeficientError("constraint rows are linearly dependent")
    for j in range(n):
        v = np.zeros(n)
        v[j] = 1.0
        v -= basis.vectors.T @ (basis.vectors @ v)
        v -= basis.vectors.T @ (basis.vectors @ v)
        length = float(np.linalg.norm(v))
        if length > 1e-4:
            return v / length
    raise AssertionError("unreachable: a full-rank system with m < n leaves a free axis")
