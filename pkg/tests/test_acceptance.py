"""Exit criteria for the package; each test carries its criterion number.

Run with ``pytest tests/test_acceptance.py``; a per-criterion PASS/FAIL table is
printed at the end of the session.
"""

import math
import subprocess
import sys
import time

import numpy as np
import pytest

from grwa.analysis import SweepSpec, error_summary, run_sweep
from grwa.approximations import adiabatic_energy, adiabatic_levels, grwa_block, grwa_levels, grwa_pair, rwa_levels
from grwa.exact import ConvergencePolicy, eigen_residuals, exact_levels, symmetric_eigenvalues, symmetric_eigh
from grwa.model import MINUS, PLUS, ModelParams, build_hamiltonian, displacement_matrix, transformed_hamiltonian
from grwa.special import displaced_overlap, laguerre
from oracles import laguerre_series, relative_error

criterion = pytest.mark.criterion


@pytest.fixture(scope="module")
def resonant_table():
    spec = SweepSpec(1.0, 1.0, 0.0, 2.0, 201, ("rwa", "adiabatic", "grwa", "exact"), 6)
    return run_sweep(spec)


@pytest.fixture(scope="module")
def detuned_run():
    # omega0 = 0.75 Omega, energies in units of omega0
    spec = SweepSpec(1.0, 4.0 / 3.0, 0.0, 2.0, 201, ("grwa", "exact"), 6)
    start = time.perf_counter()
    table = run_sweep(spec)
    return table, time.perf_counter() - start


@criterion(1)
def test_closed_form_equals_block_eigenvalues():
    """GRWA closed form = eigenvalues of the 2x2 blocks, rel 1e-12, under 1 s"""
    start = time.perf_counter()
    worst = 0.0
    for g in [k / 10 for k in range(31)]:
        for ratio in (0.0, 0.5, 0.75, 1.0, 1.5):
            p = ModelParams(1.0, ratio, g)
            for N in range(1, 11):
                ref = np.linalg.eigvalsh(grwa_block(p, N))
                for got, want in zip(grwa_pair(p, N), ref):
                    assert math.isclose(got, want, rel_tol=1e-12), (g, ratio, N, got, want)
                    if want != 0:
                        worst = max(worst, abs(got - want) / abs(want))
    elapsed = time.perf_counter() - start
    print(f"worst relative deviation {worst:.2e}, {elapsed:.3f} s")
    assert elapsed < 1.0


# zero entries of the displayed 5x5 corner (Psi_{-,0}, Psi_{+,0}, Psi_{-,1}, Psi_{+,1}, Psi_{-,2})
STRUCTURAL_ZEROS = [(0, 1), (0, 2), (1, 0), (1, 3), (1, 4), (2, 0), (2, 3), (2, 4), (3, 1), (3, 2), (4, 1), (4, 2)]
# displayed non-zero off-diagonal entries: (row, col, M, N) with magnitude (Omega/2)|<M_-|N_+>|
DISPLAYED_COUPLINGS = [(0, 3, 0, 1), (0, 4, 0, 2), (1, 2, 0, 1), (3, 4, 1, 2)]


@criterion(2)
@pytest.mark.parametrize("g", [0.25, 0.5, 1.0])
def test_transformed_hamiltonian_structure(g):
    """Numerically transformed H has the analytic diagonal, couplings and zeros (1e-9)"""
    p = ModelParams(1.0, 1.0, g)
    Ht = transformed_hamiltonian(p, 200)
    tol = 1e-9 * p.omega0
    for N in range(0, 20):
        for s, branch in enumerate((MINUS, PLUS)):
            assert abs(Ht[2 * N + s, 2 * N + s] - adiabatic_energy(p, branch, N)) < tol
    for N in range(1, 20):
        want = 0.5 * p.Omega * abs(displaced_overlap(N - 1, N, g))
        # Psi_{+,N-1} <-> Psi_{-,N} and Psi_{-,N-1} <-> Psi_{+,N}
        assert abs(abs(Ht[2 * N - 1, 2 * N]) - want) < tol
        assert abs(abs(Ht[2 * N - 2, 2 * N + 1]) - want) < tol
    for i, j, M, N in DISPLAYED_COUPLINGS:
        assert abs(abs(Ht[i, j]) - 0.5 * p.Omega * abs(displaced_overlap(M, N, g))) < tol
    for i, j in STRUCTURAL_ZEROS:
        assert abs(Ht[i, j]) < 1e-9 * p.Omega


@criterion(3)
def test_off_resonance_ground_state_error(detuned_run):
    """omega0 = 0.75 Omega: GRWA ground error < 0.2 omega0, ranks 2 and 4 smaller"""
    table, elapsed = detuned_run
    summary = error_summary(table)
    e0, e2, e4 = (summary.max_error("grwa", r) for r in (0, 2, 4))
    print(f"max |E_grwa - E_exact|/omega0: rank0 {e0:.4f} rank2 {e2:.4f} rank4 {e4:.4f}; sweep {elapsed:.1f} s")
    assert e0 < 0.2
    assert e2 < e0
    assert e4 < e0
    assert elapsed < 60.0


@criterion(4)
@pytest.mark.parametrize("ratio", [0.75, 1.0, 1.3])
def test_zero_coupling_limit(ratio):
    """lam = 0: exact = RWA = GRWA (10 levels); Omega = 0: exact = adiabatic = GRWA, paired"""
    p = ModelParams(1.0, ratio, 0.0)
    exact = np.array([lv.energy for lv in exact_levels(p, 10)[0]])
    for fn in (rwa_levels, grwa_levels):
        assert np.max(np.abs([lv.energy for lv in fn(p, 10)] - exact)) < 1e-9


@criterion(4)
@pytest.mark.parametrize("g", [0.25, 0.5, 1.0, 2.0])
def test_zero_splitting_limit(g):
    """lam = 0: exact = RWA = GRWA (10 levels); Omega = 0: exact = adiabatic = GRWA, paired"""
    p = ModelParams(1.0, 0.0, g)
    exact = np.array([lv.energy for lv in exact_levels(p, 10)[0]])
    for fn in (adiabatic_levels, grwa_levels):
        assert np.max(np.abs([lv.energy for lv in fn(p, 10)] - exact)) < 1e-9
    assert np.max(np.abs(exact[0::2] - exact[1::2])) < 1e-9


@criterion(5)
def test_resonant_comparison(resonant_table):
    """omega0 = Omega, ranks 1-4: GRWA beats RWA on [1, 2] and adiabatic on (0, 0.3]"""
    strong = error_summary(resonant_table, g_min=1.0, g_max=2.0)
    weak = error_summary(resonant_table, g_min=0.005, g_max=0.3)
    for rank in range(1, 5):
        g_, r_ = strong.max_error("grwa", rank), strong.max_error("rwa", rank)
        gw, aw = weak.max_error("grwa", rank), weak.max_error("adiabatic", rank)
        print(f"rank {rank}: [1,2] grwa {g_:.4f} rwa {r_:.4f} | (0,0.3] grwa {gw:.4f} adiabatic {aw:.4f}")
        assert g_ <= r_
        assert gw <= aw


@criterion(6)
def test_exact_convergence_on_figure_grids():
    """Exact solver: drift < 1e-8 omega0, residuals < 1e-9, conjugation invariance 1e-9"""
    for ratio in (1.0, 4.0 / 3.0):
        for g in np.linspace(0.0, 2.0, 21):
            _, report = exact_levels(ModelParams(1.0, ratio, g), 10)
            assert report.converged
            assert max(report.per_level_drift) < 1e-8


@criterion(6)
@pytest.mark.parametrize("g", [0.0, 0.5, 1.0, 2.0])
def test_exact_residuals(g):
    """Exact solver: drift < 1e-8 omega0, residuals < 1e-9, conjugation invariance 1e-9"""
    H = build_hamiltonian(ModelParams(1.0, 1.0, g), 200)
    values, vectors = symmetric_eigh(H)
    assert np.max(eigen_residuals(H, values, vectors)) < 1e-9


@criterion(6)
@pytest.mark.parametrize("g", [0.25, 1.0, 2.0])
def test_exact_conjugation_invariance(g):
    """Exact solver: drift < 1e-8 omega0, residuals < 1e-9, conjugation invariance 1e-9"""
    p = ModelParams(1.0, 1.0, g)
    nmax = 100
    quarter = nmax // 2  # a quarter of the 2*nmax levels
    a = symmetric_eigenvalues(build_hamiltonian(p, nmax), quarter)
    b = symmetric_eigenvalues(transformed_hamiltonian(p, nmax), quarter)
    assert np.max(np.abs(a - b)) < 1e-9


@criterion(7)
def test_laguerre_against_series():
    """Laguerre recurrence vs exact series (rel 1e-10); |overlap| vs displacement matrix (1e-8)"""
    xs = [float(x) for x in np.linspace(0.0, 64.0, 33)] + [0.37, 2.5, 6.25, 7.3, 13.7, 33.3, 63.9]
    worst = 0.0
    for n in range(31):
        for alpha in range(31):
            for x in xs:
                err = relative_error(laguerre(n, alpha, x), laguerre_series(n, alpha, x))
                worst = max(worst, err)
    print(f"worst relative error {worst:.2e}")
    assert worst <= 1e-10


@criterion(7)
@pytest.mark.parametrize("g", [0.25, 0.5, 1.0, 1.5])
def test_overlap_against_displacement_matrix(g):
    """Laguerre recurrence vs exact series (rel 1e-10); |overlap| vs displacement matrix (1e-8)"""
    numeric = displacement_matrix(g, -1, 200).T @ displacement_matrix(g, 1, 200)
    for M in range(21):
        for N in range(21):
            assert abs(abs(displaced_overlap(M, N, g)) - abs(numeric[M, N])) < 1e-8


@criterion(8)
def test_sweep_csv_deterministic(tmp_path):
    """Repeated sweep invocations give byte-identical CSV"""
    flags = ["sweep", "--omega0", "1", "--Omega", "1", "--gmin", "0", "--gmax", "2", "--steps", "201",
             "--methods", "exact,rwa,adiabatic,grwa", "--levels", "6"]
    outputs = []
    for name in ("a.csv", "b.csv"):
        path = tmp_path / name
        proc = subprocess.run([sys.executable, "-m", "grwa", *flags, "--out", str(path)], capture_output=True)
        assert proc.returncode == 0, proc.stderr
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1]
    assert outputs[0].count(b"\n") == 1 + 201 * 4 * 6
