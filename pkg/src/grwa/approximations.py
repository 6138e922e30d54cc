"""RWA, adiabatic and generalized-RWA energy levels.

Every method returns the lowest ``count`` levels as ``LabeledLevel`` objects in
ascending energy. Labels are method-internal: for RWA and GRWA the pair from
block N carries ``minus``/``plus`` for its lower/upper eigenvalue, for the
adiabatic approximation the label is the sign in E_{+-,N}.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .model import MINUS, PLUS, ModelParams
from .special import displaced_overlap, laguerre

__all__ = [
    "ApproxMethod",
    "LabeledLevel",
    "pair_eigenvalues",
    "rwa_block",
    "rwa_levels",
    "adiabatic_energy",
    "adiabatic_levels",
    "grwa_block",
    "grwa_pair",
    "grwa_levels",
]


class ApproxMethod(str, Enum):
    # declaration order is the row order of sweep tables
    RWA = "rwa"
    ADIABATIC = "adiabatic"
    GRWA = "grwa"
    EXACT = "exact"


@dataclass(frozen=True)
class LabeledLevel:
    branch: str
    N: int
    energy: float

    def __post_init__(self):
        if not math.isfinite(self.energy):
            raise ValueError(f"non-finite energy for ({self.branch}, {self.N})")


def _check_count(count):
    if int(count) != count or count < 1:
        raise ValueError(f"count must be a positive integer, got {count!r}")
    return int(count)


def pair_eigenvalues(block):
    """Eigenvalues (lower, upper) of a real symmetric 2x2 matrix."""
    a, b, d = float(block[0][0]), float(block[0][1]), float(block[1][1])
    mean = 0.5 * (a + d)
    radius = math.hypot(0.5 * (d - a), b)
    return mean - radius, mean + radius


def _collect(count, levels, level_pairs, lower_bound, start=1, settle_from=0):
    """Extend ``levels`` with pairs from blocks start, start+1, ... until the
    ``count`` lowest energies are fixed, then return those in ascending order.

    ``level_pairs(N)`` yields the two LabeledLevels of block N and
    ``lower_bound(N)`` bounds every level of blocks >= N from below once
    N >= ``settle_from``.
    """
    levels = list(levels)
    N = start
    while True:
        levels.extend(level_pairs(N))
        N += 1
        if len(levels) >= count and N >= settle_from:
            threshold = sorted(lv.energy for lv in levels)[count - 1]
            if lower_bound(N) > threshold:
                break
    levels.sort(key=lambda lv: lv.energy)
    return levels[:count]


# --- RWA -------------------------------------------------------------------


def rwa_block(params: ModelParams, N: int) -> np.ndarray:
    """Block over {|+x,N-1>, |-x,N>} left after dropping counter-rotating terms."""
    if N < 1:
        raise ValueError(f"RWA block index must be >= 1, got {N}")
    w, W, lam = params.omega0, params.Omega, params.lam
    off = math.sqrt(N) * lam
    return np.array([[(N - 1) * w + 0.5 * W, off], [off, N * w - 0.5 * W]])


def rwa_levels(params: ModelParams, count: int) -> list:
    count = _check_count(count)
    w, W, lam = params.omega0, params.Omega, params.lam

    def pairs(N):
        lo, hi = pair_eigenvalues(rwa_block(params, N))
        return [LabeledLevel(MINUS, N, lo), LabeledLevel(PLUS, N, hi)]

    def bound(N):
        return (N - 0.5) * w - 0.5 * abs(w - W) - math.sqrt(N) * lam

    # the bound increases once sqrt(N) > lam / (2 omega0)
    settle = int(math.ceil((lam / (2.0 * w)) ** 2)) + 1
    return _collect(count, [LabeledLevel(MINUS, 0, -0.5 * W)], pairs, bound, settle_from=settle)


# --- adiabatic -------------------------------------------------------------


def adiabatic_energy(params: ModelParams, branch: str, N: int) -> float:
    """E_{+-,N} = +-(Omega/2) <N_-|N_+> + omega0 (N - g^2)."""
    g = params.g
    sign = 1.0 if branch == PLUS else -1.0
    overlap = displaced_overlap(N, N, g)
    return sign * 0.5 * params.Omega * overlap + params.omega0 * (N - g * g)


def adiabatic_levels(params: ModelParams, count: int) -> list:
    count = _check_count(count)
    w, W, g = params.omega0, params.Omega, params.g

    def level(branch, N):
        return LabeledLevel(branch, N, adiabatic_energy(params, branch, N))

    def pairs(N):
        return [level(MINUS, N), level(PLUS, N)]

    def bound(N):
        return w * (N - g * g) - 0.5 * W

    # N = 0 is a full pair here; there is no unpaired ground level
    return _collect(count, [], pairs, bound, start=0)


# --- GRWA ------------------------------------------------------------------


def grwa_block(params: ModelParams, N: int) -> np.ndarray:
    """Block over {|Psi_{+,N-1}>, |Psi_{-,N}>}, off-diagonal (Omega/2) <N-1_-|N_+>."""
    if N < 1:
        raise ValueError(f"GRWA block index must be >= 1 (the ground level is unpaired), got {N}")
    off = 0.5 * params.Omega * displaced_overlap(N - 1, N, params.g)
    return np.array(
        [
            [adiabatic_energy(params, PLUS, N - 1), off],
            [off, adiabatic_energy(params, MINUS, N)],
        ]
    )


def grwa_pair(params: ModelParams, N: int):
    """Closed-form (lower, upper) energies of GRWA block N >= 1.

    Written with n = N - 1 and x = 4 g^2:

        (n + 1/2) w - lam^2/w + (W/4) e^{-x/2} [L_n(x) - L_{n+1}(x)]
          -+ sqrt({w/2 - (W/4) e^{-x/2} [L_n(x) + L_{n+1}(x)]}^2
                  + lam^2 W^2 / (w^2 (n+1)) e^{-x} [L_n^1(x)]^2)
    """
    if N < 1:
        raise ValueError(f"GRWA block index must be >= 1, got {N}")
    w, W, lam = params.omega0, params.Omega, params.lam
    n = N - 1
    g = params.g
    x = 4.0 * g * g
    damp = math.exp(-2.0 * g * g)
    ln, ln1 = laguerre(n, 0, x), laguerre(n + 1, 0, x)
    mean = (n + 0.5) * w - lam * lam / w + 0.25 * W * damp * (ln - ln1)
    half_gap = 0.5 * w - 0.25 * W * damp * (ln + ln1)
    coupling = g * W * damp * laguerre(n, 1, x) / math.sqrt(n + 1)
    radius = math.hypot(half_gap, coupling)
    return mean - radius, mean + radius


def grwa_levels(params: ModelParams, count: int) -> list:
    count = _check_count(count)
    w, W, g = params.omega0, params.Omega, params.g

    def pairs(N):
        lo, hi = grwa_pair(params, N)
        return [LabeledLevel(MINUS, N, lo), LabeledLevel(PLUS, N, hi)]

    def bound(N):
        # diagonals >= (N-1) w - lam^2/w - W/2 and |off-diagonal| <= W/2
        return w * (N - 1 - g * g) - W

    ground = LabeledLevel(MINUS, 0, adiabatic_energy(params, MINUS, 0))
    return _collect(count, [ground], pairs, bound)
