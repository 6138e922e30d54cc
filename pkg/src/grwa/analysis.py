"""Coupling sweeps and rank-aligned error metrics across methods."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .approximations import ApproxMethod, adiabatic_levels, grwa_levels, rwa_levels
from .exact import ConvergenceError, ConvergencePolicy, exact_levels
from .model import ModelParams

__all__ = [
    "SpectrumResult",
    "SweepSpec",
    "SweepRow",
    "SweepTable",
    "ErrorRow",
    "ErrorSummary",
    "spectrum",
    "run_sweep",
    "error_summary",
]

_APPROX = {
    ApproxMethod.RWA: rwa_levels,
    ApproxMethod.ADIABATIC: adiabatic_levels,
    ApproxMethod.GRWA: grwa_levels,
}
_ORDER = {m: i for i, m in enumerate(ApproxMethod)}


@dataclass
class SpectrumResult:
    method: ApproxMethod
    params: ModelParams
    levels: list
    report: object = None  # ConvergenceReport for the exact method


def spectrum(params: ModelParams, method, count: int, policy: ConvergencePolicy = None) -> SpectrumResult:
    """Lowest ``count`` levels of one method at one parameter point."""
    method = ApproxMethod(method)
    if method is ApproxMethod.EXACT:
        levels, report = exact_levels(params, count, policy)
        return SpectrumResult(method, params, levels, report)
    return SpectrumResult(method, params, _APPROX[method](params, count))


@dataclass(frozen=True)
class SweepSpec:
    omega0: float
    Omega: float
    g_min: float
    g_max: float
    steps: int
    methods: tuple
    levels: int
    policy: ConvergencePolicy = field(default_factory=ConvergencePolicy)

    def __post_init__(self):
        methods = tuple(sorted({ApproxMethod(m) for m in self.methods}, key=_ORDER.get))
        if not methods:
            raise ValueError("at least one method is required")
        object.__setattr__(self, "methods", methods)
        if self.g_min < 0 or not self.g_min <= self.g_max:
            raise ValueError(f"need 0 <= g_min <= g_max, got [{self.g_min}, {self.g_max}]")
        if self.steps < 2:
            raise ValueError(f"steps must be >= 2, got {self.steps}")
        if self.levels < 1:
            raise ValueError(f"levels must be >= 1, got {self.levels}")
        # validates omega0 and Omega
        ModelParams(self.omega0, self.Omega, 0.0)

    def grid(self):
        """Uniform grid including both endpoints; a degenerate range is one point."""
        if self.g_min == self.g_max:
            return np.array([float(self.g_min)])
        return np.linspace(self.g_min, self.g_max, self.steps)

    def to_dict(self):
        return {
            "omega0": self.omega0,
            "Omega": self.Omega,
            "g_min": self.g_min,
            "g_max": self.g_max,
            "steps": self.steps,
            "methods": [m.value for m in self.methods],
            "levels": self.levels,
            "nmax_schedule": list(self.policy.schedule),
            "tol": self.policy.tol,
        }


@dataclass(frozen=True)
class SweepRow:
    g: float
    method: ApproxMethod
    rank: int
    branch: str
    N: int
    energy_over_omega0: float


@dataclass
class SweepTable:
    spec: SweepSpec
    rows: list

    def energies(self, method):
        """(g values, array[len(g), levels]) for one method."""
        method = ApproxMethod(method)
        by_g = {}
        for row in self.rows:
            if row.method is method:
                by_g.setdefault(row.g, []).append(row.energy_over_omega0)
        gs = sorted(by_g)
        return np.array(gs), np.array([by_g[g] for g in gs])


def _point_rows(spec, g):
    g = float(g)
    params = ModelParams(spec.omega0, spec.Omega, g * spec.omega0)
    rows = []
    for method in spec.methods:
        try:
            result = spectrum(params, method, spec.levels, spec.policy)
        except ConvergenceError as exc:
            raise ConvergenceError(f"g={g!r}: {exc}", exc.report) from exc
        for rank, lv in enumerate(result.levels):
            rows.append(SweepRow(g, method, rank, lv.branch, lv.N, lv.energy / spec.omega0))
    return rows


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepTable:
    """Evaluate every method on the coupling grid.

    Rows are ordered by (g, method declaration order, rank) whatever the
    value of ``workers``.
    """
    grid = spec.grid()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(lambda g: _point_rows(spec, g), grid))
    else:
        chunks = [_point_rows(spec, g) for g in grid]
    rows = [row for chunk in chunks for row in chunk]
    rows.sort(key=lambda r: (r.g, _ORDER[r.method], r.rank))
    return SweepTable(spec, rows)


@dataclass(frozen=True)
class ErrorRow:
    method: ApproxMethod
    rank: int
    max_abs_error_over_omega0: float
    argmax_g: float


@dataclass
class ErrorSummary:
    reference: ApproxMethod
    rows: list

    def get(self, method, rank):
        method = ApproxMethod(method)
        for row in self.rows:
            if row.method is method and row.rank == rank:
                return row
        raise KeyError((method.value, rank))

    def max_error(self, method, rank):
        return self.get(method, rank).max_abs_error_over_omega0


def error_summary(table: SweepTable, reference=ApproxMethod.EXACT, g_min=None, g_max=None) -> ErrorSummary:
    """Max over g of |E_method - E_reference| / omega0 for every (method, rank).

    ``g_min``/``g_max`` optionally restrict the grid (inclusive). The argmax is
    the smallest g attaining the maximum.
    """
    reference = ApproxMethod(reference)
    ref = {(r.g, r.rank): r.energy_over_omega0 for r in table.rows if r.method is reference}
    if not ref:
        raise ValueError(f"table has no rows for reference method {reference.value!r}")
    best = {}
    for row in table.rows:
        if g_min is not None and row.g < g_min:
            continue
        if g_max is not None and row.g > g_max:
            continue
        try:
            e_ref = ref[(row.g, row.rank)]
        except KeyError:
            raise ValueError(f"missing reference row at g={row.g}, rank={row.rank}") from None
        err = abs(float(row.energy_over_omega0) - e_ref)
        key = (row.method, row.rank)
        if key not in best or err > best[key][0]:
            best[key] = (err, row.g)
    rows = [
        ErrorRow(method, rank, float(err), float(g))
        for (method, rank), (err, g) in sorted(best.items(), key=lambda kv: (_ORDER[kv[0][0]], kv[0][1]))
    ]
    return ErrorSummary(reference, rows)
