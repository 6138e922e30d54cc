"""Parameters and truncated-basis operators for the single-mode spin-boson model.

    H = omega0 a^dag a + (Omega/2) sigma_x + lam sigma_z (a^dag + a)

The product basis is ordered |-x,0>, |+x,0>, |-x,1>, |+x,1>, ... i.e. the
index of |s x, N> is ``2*N + (s == '+')``. Spin operators are therefore written
in the sigma_x eigenbasis, where sigma_x = diag(-1, 1) and sigma_z swaps the
two states. Operators are plain dense ``numpy`` arrays.
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

__all__ = [
    "ModelParams",
    "Truncation",
    "BasisLabel",
    "basis_index",
    "basis_label",
    "destroy",
    "create",
    "number",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "SIGMA_PLUS",
    "SIGMA_MINUS",
    "spin_op",
    "build_hamiltonian",
    "displacement_matrix",
    "adiabatic_basis",
    "transformed_hamiltonian",
]

MINUS = "minus"
PLUS = "plus"


@dataclass(frozen=True)
class ModelParams:
    """Oscillator frequency, spin splitting and coupling (hbar = 1)."""

    omega0: float
    Omega: float
    lam: float

    def __post_init__(self):
        for name in ("omega0", "Omega", "lam"):
            value = float(getattr(self, name))
            object.__setattr__(self, name, value)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if self.omega0 <= 0:
            raise ValueError(f"omega0 must be > 0, got {self.omega0}")
        if self.Omega < 0:
            raise ValueError(f"Omega must be >= 0, got {self.Omega}")
        if self.lam < 0:
            raise ValueError(f"lam must be >= 0, got {self.lam}")

    @property
    def g(self) -> float:
        """Dimensionless coupling lam/omega0."""
        return self.lam / self.omega0


@dataclass(frozen=True)
class Truncation:
    """Number of Fock levels kept; the product space has dimension 2*nmax."""

    nmax: int

    def __post_init__(self):
        if int(self.nmax) != self.nmax or self.nmax < 2:
            raise ValueError(f"nmax must be an integer >= 2, got {self.nmax!r}")

    @property
    def dim(self) -> int:
        return 2 * self.nmax


@dataclass(frozen=True)
class BasisLabel:
    branch: str
    N: int

    def __post_init__(self):
        if self.branch not in (MINUS, PLUS):
            raise ValueError(f"branch must be {MINUS!r} or {PLUS!r}, got {self.branch!r}")
        if self.N < 0:
            raise ValueError(f"N must be >= 0, got {self.N}")


def basis_index(label: BasisLabel) -> int:
    return 2 * label.N + (1 if label.branch == PLUS else 0)


def basis_label(index: int) -> BasisLabel:
    N, s = divmod(index, 2)
    return BasisLabel(PLUS if s else MINUS, N)


def destroy(nmax):
    return np.diag(np.sqrt(np.arange(1, nmax, dtype=float)), 1)


def create(nmax):
    return destroy(nmax).T.copy()


def number(nmax):
    return np.diag(np.arange(nmax, dtype=float))


# Pauli matrices in the (|-x>, |+x>) basis, with |+-x> = (|+z> +- |-z>)/sqrt(2).
# sigma_y is imaginary; it is kept for completeness but never enters H.
SIGMA_X = np.array([[-1.0, 0.0], [0.0, 1.0]])
SIGMA_Z = np.array([[0.0, 1.0], [1.0, 0.0]])
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
# raising/lowering along x: sigma_+ |-x> = |+x>
SIGMA_PLUS = 0.5 * (SIGMA_Z - 1j * SIGMA_Y)
SIGMA_MINUS = 0.5 * (SIGMA_Z + 1j * SIGMA_Y)


def spin_op(spin, oscillator):
    """Embed a (spin, oscillator) operator pair in the interleaved product basis."""
    return np.kron(oscillator, spin)


def _coerce_trunc(trunc):
    return trunc if isinstance(trunc, Truncation) else Truncation(int(trunc))


def build_hamiltonian(params: ModelParams, trunc) -> np.ndarray:
    """Dense Hamiltonian on the truncated product basis.

    Parameters
    ----------
    params : ModelParams
    trunc : Truncation or int
        Number of Fock levels kept.

    Returns
    -------
    ndarray, shape (2*nmax, 2*nmax)
        Exactly symmetric real matrix; row/column ``2N`` is |-x,N> and
        ``2N+1`` is |+x,N>.
    """
    nmax = _coerce_trunc(trunc).nmax
    eye_f = np.eye(nmax)
    a = destroy(nmax)
    H = params.omega0 * spin_op(np.eye(2), number(nmax))
    H += 0.5 * params.Omega * spin_op(SIGMA_X, eye_f)
    H += params.lam * spin_op(SIGMA_Z, a + a.T)
    return 0.5 * (H + H.T)


def displacement_matrix(g: float, sign: int, trunc) -> np.ndarray:
    """exp(-sign * g * (a^dag - a)) on the truncated Fock space.

    Column N is the displaced Fock state |N_+> (sign=+1) or |N_-> (sign=-1)
    in the bare Fock basis. The generator is real antisymmetric, so the result
    is orthogonal apart from leakage at the truncation edge.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    g = float(g)
    if not math.isfinite(g) or g < 0:
        raise ValueError(f"g must be finite and >= 0, got {g!r}")
    nmax = _coerce_trunc(trunc).nmax
    a = destroy(nmax)
    return scipy.linalg.expm(-sign * g * (a.T - a))


def adiabatic_basis(params: ModelParams, trunc) -> np.ndarray:
    """Columns are |Psi_{-,0}>, |Psi_{+,0}>, |Psi_{-,1}>, ... in the product basis.

    |Psi_{+-,N}> = (|+z, N_+> +- |-z, N_->) / sqrt(2), displacement g = lam/omega0.
    """
    nmax = _coerce_trunc(trunc).nmax
    d_plus = displacement_matrix(params.g, 1, nmax)
    d_minus = displacement_matrix(params.g, -1, nmax)
    # |+z> and |-z> in the (|-x>, |+x>) basis
    up = np.array([1.0, 1.0]) / math.sqrt(2.0)
    down = np.array([-1.0, 1.0]) / math.sqrt(2.0)
    up_part = np.kron(d_plus, up[:, None])  # columns |+z, N_+>
    down_part = np.kron(d_minus, down[:, None])  # columns |-z, N_->
    B = np.empty((2 * nmax, 2 * nmax))
    B[:, 0::2] = (up_part - down_part) / math.sqrt(2.0)
    B[:, 1::2] = (up_part + down_part) / math.sqrt(2.0)
    return B


def transformed_hamiltonian(params: ModelParams, trunc) -> np.ndarray:
    """B^T H B with B the adiabatic basis; rows/columns ordered as in ``adiabatic_basis``."""
    H = build_hamiltonian(params, trunc)
    B = adiabatic_basis(params, trunc)
    Ht = B.T @ H @ B
    return 0.5 * (Ht + Ht.T)
