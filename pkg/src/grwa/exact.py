"""Dense exact diagonalization with truncation-convergence control."""

from dataclasses import dataclass, field

import numpy as np

from .approximations import LabeledLevel
from .model import MINUS, PLUS, ModelParams, build_hamiltonian

__all__ = [
    "ConvergenceError",
    "ConvergencePolicy",
    "ConvergenceReport",
    "symmetric_eigh",
    "symmetric_eigenvalues",
    "eigen_residuals",
    "rank_label",
    "exact_levels",
]


class ConvergenceError(RuntimeError):
    """Raised when the eigensolver or the truncation schedule fails to converge.

    ``report`` holds the ConvergenceReport when the failure comes from the
    truncation schedule.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class ConvergencePolicy:
    schedule: tuple = (100, 200, 400)
    tol: float = 1e-8  # in units of omega0

    def __post_init__(self):
        sched = tuple(int(n) for n in self.schedule)
        if len(sched) < 2 or any(b <= a for a, b in zip(sched, sched[1:])) or sched[0] < 2:
            raise ValueError(f"schedule must be strictly increasing with >= 2 entries >= 2, got {self.schedule!r}")
        if not self.tol > 0:
            raise ValueError(f"tol must be > 0, got {self.tol!r}")
        object.__setattr__(self, "schedule", sched)

    @classmethod
    def doubling(cls, nmax, steps=3, tol=1e-8):
        """Schedule nmax, 2 nmax, 4 nmax, ..."""
        return cls(tuple(nmax * 2**k for k in range(steps)), tol)


@dataclass
class ConvergenceReport:
    nmax_sequence: list = field(default_factory=list)
    per_level_drift: list = field(default_factory=list)
    converged: bool = False
    final_nmax: int = 0

    def to_dict(self):
        return {
            "nmax_sequence": list(self.nmax_sequence),
            "per_level_drift": [float(d) for d in self.per_level_drift],
            "converged": self.converged,
            "final_nmax": self.final_nmax,
        }


def _check_symmetric(matrix):
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    scale = np.max(np.abs(m)) if m.size else 0.0
    asym = np.max(np.abs(m - m.T)) if m.size else 0.0
    if asym > 1e-12 * scale:
        raise ValueError(f"matrix is not symmetric (max asymmetry {asym:.3e}, scale {scale:.3e})")
    return m


def symmetric_eigh(matrix):
    """Full eigendecomposition (ascending eigenvalues, column eigenvectors)."""
    m = _check_symmetric(matrix)
    try:
        return np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"symmetric eigensolver did not converge: {exc}") from exc


def symmetric_eigenvalues(matrix, count=None):
    """The ``count`` algebraically smallest eigenvalues, ascending."""
    m = _check_symmetric(matrix)
    dim = m.shape[0]
    if count is None:
        count = dim
    if not 1 <= count <= dim:
        raise ValueError(f"count must lie in [1, {dim}], got {count}")
    try:
        values = np.linalg.eigvalsh(m)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"symmetric eigensolver did not converge: {exc}") from exc
    return values[:count]


def eigen_residuals(matrix, values, vectors):
    """Relative residuals ||H v - E v|| / (||H|| ||v||) per eigenpair (2-norm of H)."""
    m = np.asarray(matrix, dtype=float)
    resid = np.linalg.norm(m @ vectors - vectors * values, axis=0)
    return resid / (np.linalg.norm(m, 2) * np.linalg.norm(vectors, axis=0))


def rank_label(rank):
    """Synthetic label: rank 0 -> (minus, 0); ranks 2k-1, 2k -> (minus, k), (plus, k)."""
    if rank == 0:
        return MINUS, 0
    k = (rank + 1) // 2
    return (MINUS if rank % 2 else PLUS), k


def exact_levels(params: ModelParams, count: int, policy: ConvergencePolicy = None):
    """Lowest ``count`` eigenvalues of the truncated Hamiltonian.

    Solves at each truncation of ``policy.schedule`` in turn and stops as soon
    as every requested level moved by less than ``policy.tol * omega0`` since
    the previous truncation. Returns ``(levels, report)``; raises
    ConvergenceError carrying the report if the schedule is exhausted.
    """
    if policy is None:
        policy = ConvergencePolicy()
    if int(count) != count or count < 1:
        raise ValueError(f"count must be a positive integer, got {count!r}")
    if 2 * policy.schedule[0] < count:
        raise ValueError(f"smallest truncation {policy.schedule[0]} holds fewer than {count} levels")
    report = ConvergenceReport()
    previous = None
    for nmax in policy.schedule:
        values = symmetric_eigenvalues(build_hamiltonian(params, nmax), count)
        report.nmax_sequence.append(nmax)
        report.final_nmax = nmax
        if previous is not None:
            drift = np.abs(values - previous)
            report.per_level_drift = [float(d) for d in drift]
            if np.all(drift < policy.tol * params.omega0):
                report.converged = True
                break
        previous = values
    if not report.converged:
        raise ConvergenceError(
            f"levels not converged to {policy.tol:g} omega0 at nmax={report.final_nmax} "
            f"(max drift {max(report.per_level_drift):.3e})",
            report,
        )
    levels = [LabeledLevel(*rank_label(r), float(e)) for r, e in enumerate(values)]
    return levels, report
