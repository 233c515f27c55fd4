"""Complex constraint systems reduced to real problems of doubled size.

A complex m x n system with a real objective (Re or Im of b . x, with the
unconjugated bilinear product) becomes a real 2m x 2n system in the
coordinates (Re x_1 .. Re x_n, Im x_1 .. Im x_n).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .forms import _check_dimension
from .solver import ConstraintSystem, Objective, SolveStatus, optimal_direction

__all__ = ["ComplexProblem", "ComplexSolution", "realify", "solve_complex"]


@dataclass(frozen=True, eq=False)
class ComplexProblem:
    """Complex constraints plus the choice of Re or Im of b . x to optimize."""

    rows: np.ndarray
    b: np.ndarray
    part: str = "re"
    mode: str = "max"

    def __post_init__(self) -> None:
        rows = np.array(self.rows, dtype=complex)
        b = np.array(self.b, dtype=complex)
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
        if b.ndim != 1 or b.shape[0] != n:
            raise DomainError(f"objective must be a complex vector of length {n}")
        if not np.all(np.isfinite(b)):
            raise DomainError("objective entries must be finite")
        if np.linalg.norm(b) == 0.0:
            raise DomainError("objective vector must have positive norm")
        if self.part not in ("re", "im"):
            raise DomainError(f"part must be 're' or 'im', got {self.part!r}")
        if self.mode not in ("max", "min"):
            raise DomainError(f"mode must be 'max' or 'min', got {self.mode!r}")
        rows.flags.writeable = False
        b.flags.writeable = False
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "b", b)

    @property
    def m(self) -> int:
        return self.rows.shape[0]

    @property
    def n(self) -> int:
        return self.rows.shape[1]


@dataclass(frozen=True, eq=False)
class ComplexSolution:
    """Complex unit direction, unnormalized complex ray, objective, status."""

    direction: np.ndarray
    raw: np.ndarray
    objective: float
    status: SolveStatus

    def __post_init__(self) -> None:
        direction = np.array(self.direction, dtype=complex)
        raw = np.array(self.raw, dtype=complex)
        direction.flags.writeable = False
        raw.flags.writeable = False
        object.__setattr__(self, "direction", direction)
        object.__setattr__(self, "raw", raw)
        object.__setattr__(self, "objective", float(self.objective))
        object.__setattr__(self, "status", SolveStatus(self.status))


def realify(problem: ComplexProblem) -> tuple[ConstraintSystem, Objective]:
    """Real 2m x 2n system and matching objective in (Re x, Im x) coordinates.

    Each complex row a contributes the pair (Re a, -Im a) for the real part
    of the constraint and (Im a, Re a) for the imaginary part, interleaved
    in that order.  The objective vector is (Re b, -Im b) for part "re" and
    (Im b, Re b) for part "im", matching the bilinear product b . x.
    """
    m, n = problem.m, problem.n
    rows = np.zeros((2 * m, 2 * n))
    rows[0::2, :n] = problem.rows.real
    rows[0::2, n:] = -problem.rows.imag
    rows[1::2, :n] = problem.rows.imag
    rows[1::2, n:] = problem.rows.real
    if problem.part == "re":
        b = np.concatenate([problem.b.real, -problem.b.imag])
    else:
        b = np.concatenate([problem.b.imag, problem.b.real])
    return ConstraintSystem(rows), Objective(b, problem.mode)


def solve_complex(problem: ComplexProblem, tolerance: float | None = None) -> ComplexSolution:
    """Solve the realified problem and fold the answer back to complex form.

    The folded direction has unit complex norm exactly when the real
    direction has unit norm, and it satisfies every complex constraint in
    both real and imaginary parts.
    """
    system, objective = realify(problem)
    solution = optimal_direction(system, objective, tolerance)
    n = problem.n
    direction = solution.direction[:n] + 1j * solution.direction[n:]
    raw = solution.raw[:n] + 1j * solution.raw[n:]
    return ComplexSolution(direction, raw, solution.objective, solution.status)
