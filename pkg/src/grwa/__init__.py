"""Energy spectrum of the single-mode spin-boson (quantum Rabi) model.

Four routes to the levels of H = omega0 a^dag a + (Omega/2) sigma_x + lam sigma_z (a^dag + a):
truncated exact diagonalization, the rotating-wave approximation, the
adiabatic (displaced-oscillator) approximation and the generalized RWA, which
applies the rotating-wave argument in the adiabatic eigenbasis.
"""

from .analysis import ErrorSummary, SpectrumResult, SweepSpec, SweepTable, error_summary, run_sweep, spectrum
from .approximations import (
    ApproxMethod,
    LabeledLevel,
    adiabatic_levels,
    grwa_block,
    grwa_levels,
    grwa_pair,
    rwa_levels,
)
from .exact import ConvergenceError, ConvergencePolicy, ConvergenceReport, exact_levels, symmetric_eigenvalues
from .model import (
    ModelParams,
    Truncation,
    adiabatic_basis,
    build_hamiltonian,
    displacement_matrix,
    transformed_hamiltonian,
)
from .special import displaced_overlap, laguerre

__version__ = "0.1.0"
