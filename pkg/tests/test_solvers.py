import numpy as np
import pytest
from scipy.linalg import expm

from conftest import random_params
from qdsim.model import ModelParams, ValidationError, assemble_generator, from_real, rhs_real, to_real
from qdsim.solvers import (DegenerateSteadyStateError, InstabilityError, NonConvergenceError,
                           SolverSettings, gauss_solve, integrate, residual_norm, rk4_step,
                           rk4_step_matrix, steady_state_direct, steady_state_relax)

GROUND = np.diag([1.0, 0, 0]).astype(complex)


def two_level_limit(omega, gamma1=1.0):
    """Closed form at T_e = 0, delta1 = 0, Gamma10 = Gamma12 = Gamma20.

    rho01 = -i omega / (2 gamma1) (rho11 - rho00) from the rho01 equation;
    substituting into the population equations gives
    rho11 = rho22 = S / (1 + 3 S), S = omega^2 / (2 gamma1).
    """
    S = omega ** 2 / (2 * gamma1)
    r11 = S / (1 + 3 * S)
    r00 = 1 - 2 * r11
    im_rho10 = omega / (2 * gamma1) * (r11 - r00)
    return r00, r11, r11, im_rho10


# -- linear algebra -------------------------------------------------------------

def test_gauss_solve_matches_numpy(rng):
    for _ in range(50):
        A = rng.normal(size=(9, 9))
        b = rng.normal(size=9)
        assert np.allclose(gauss_solve(A, b), np.linalg.solve(A, b), rtol=1e-10, atol=1e-12)


def test_gauss_solve_needs_pivoting():
    A = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert gauss_solve(A, [2.0, 3.0]).tolist() == [3.0, 2.0]


def test_gauss_solve_leaves_inputs_alone():
    A = np.array([[2.0, 1.0], [1.0, 3.0]])
    b = np.array([1.0, 2.0])
    gauss_solve(A, b)
    assert A.tolist() == [[2.0, 1.0], [1.0, 3.0]] and b.tolist() == [1.0, 2.0]


def test_gauss_solve_singular():
    with pytest.raises(DegenerateSteadyStateError):
        gauss_solve(np.ones((3, 3)), np.ones(3))


# -- direct steady state ----------------------------------------------------------

@pytest.mark.parametrize("t_e", [0.0, 0.5, 6.0])
def test_no_drive_relaxes_to_ground(t_e):
    rho = steady_state_direct(ModelParams(omega_rabi=0.0, t_e=t_e))
    assert np.max(np.abs(rho - GROUND)) < 1e-15


def test_two_level_closed_form():
    rho = steady_state_direct(ModelParams(omega_rabi=0.1, t_e=0.0, delta1=0.0))
    r00, r11, r22, im10 = two_level_limit(0.1)
    assert rho[1, 1].real == pytest.approx(0.005 / 1.015, abs=1e-12)
    assert rho[1, 1].real == pytest.approx(r11, abs=1e-10)
    assert rho[2, 2].real == pytest.approx(r22, abs=1e-10)
    assert np.conj(rho[0, 1]).imag == pytest.approx(im10, abs=1e-10)
    assert im10 == pytest.approx(-0.04926, abs=1e-5)
    assert rho[2, 2].real == pytest.approx(0.004926, abs=1e-6)


def test_direct_residual_and_trace(rng):
    for _ in range(50):
        p = random_params(rng)
        rho = steady_state_direct(p)
        assert residual_norm(rho, p) <= 1e-10
        assert abs(np.trace(rho).real - 1) < 1e-12


def test_degenerate_steady_state_names_parameters():
    # no drive and no population decay: every diagonal state is stationary
    p = ModelParams(omega_rabi=0.0, big_gamma10=0.0, big_gamma12=0.0, big_gamma20=0.0)
    with pytest.raises(DegenerateSteadyStateError, match="omega_rabi=0.0"):
        steady_state_direct(p)


def test_fig2_operating_point_direct_vs_relax():
    p = ModelParams(omega_rabi=0.5, t_e=6.0, delta1=0.0)
    assert np.max(np.abs(steady_state_direct(p) - steady_state_relax(p))) <= 1e-8


def test_physicality_at_figure_parameters():
    for t_e in (0.5, 1, 2, 6, 10):
        for d in np.linspace(-10, 10, 41):
            rho = steady_state_direct(ModelParams(t_e=t_e, delta1=d))
            pops = np.diag(rho).real
            assert np.all(pops >= -1e-9) and np.all(pops <= 1 + 1e-9)
            for i in range(3):
                for j in range(3):
                    assert abs(rho[i, j]) ** 2 <= pops[i] * pops[j] + 1e-8


# -- relaxation ------------------------------------------------------------------

def test_relax_without_drive_is_immediate():
    rho = steady_state_relax(ModelParams(omega_rabi=0.0), SolverSettings(t_max=1e-2, dt=1e-3))
    assert np.array_equal(rho, GROUND)


def test_relax_matches_direct_defaults():
    p = ModelParams(t_e=0.5)
    assert np.max(np.abs(steady_state_direct(p) - steady_state_relax(p))) <= 1e-8


def test_relax_cross_oracle_randomized(rng):
    for k in range(100):
        p = random_params(rng, mode=("corrected", "verbatim")[k % 2])
        assert np.max(np.abs(steady_state_direct(p) - steady_state_relax(p))) <= 1e-8


def test_relax_nonconvergence_reports_residual():
    with pytest.raises(NonConvergenceError) as info:
        steady_state_relax(ModelParams(), SolverSettings(t_max=2.0))
    assert info.value.residual > 1e-10
    assert "residual" in str(info.value)


# -- integration -----------------------------------------------------------------

def test_rk4_step_is_fourth_order_taylor():
    # for x' = a x one RK4 step is the exponential series truncated after (a dt)^4
    a, dt = -0.7, 0.1
    x1 = rk4_step(lambda x: a * x, 1.0, dt)
    taylor = sum((a * dt) ** k / np.prod(range(1, k + 1)) for k in range(5))
    assert x1 == pytest.approx(taylor, abs=1e-16)


def test_step_matrix_is_rk4(rng):
    p = random_params(rng)
    L = assemble_generator(p)
    x = rng.normal(size=9)
    assert np.allclose(rk4_step_matrix(p, 0.01) @ x, rk4_step(lambda y: L @ y, x, 0.01),
                       rtol=0, atol=1e-15)


def test_ground_state_constant_without_drive():
    traj = integrate(GROUND, ModelParams(omega_rabi=0.0), SolverSettings(t_max=5.0, sample_stride=100))
    assert np.all(traj.states == to_real(GROUND))


def test_excited_population_decay():
    p = ModelParams(omega_rabi=0.0, t_e=0.0)
    traj = integrate(np.diag([0, 1.0, 0]), p, SolverSettings(t_max=1.0, dt=1e-3, sample_stride=1))
    assert traj.times[-1] == pytest.approx(1.0)
    expected = np.exp(-(p.big_gamma10 + p.big_gamma12) * traj.times)
    assert np.max(np.abs(traj.states[:, 1] - expected)) < 1e-8


def test_sampling_keeps_final_step():
    traj = integrate(GROUND, ModelParams(), SolverSettings(t_max=1.05, dt=0.01, sample_stride=10))
    assert len(traj) == 12
    assert traj.times[-1] == pytest.approx(1.05)
    assert np.all(np.diff(traj.times) > 0)


def test_long_horizon_reaches_steady_state(rng):
    for _ in range(5):
        p = random_params(rng)
        start = np.diag(rng.dirichlet(np.ones(3))).astype(complex)
        traj = integrate(start, p, SolverSettings(t_max=2000.0, dt=1e-2, sample_stride=10000))
        assert np.max(np.abs(traj.final - steady_state_direct(p))) <= 1e-6


def test_trace_conserved_along_trajectory():
    traj = integrate(GROUND, ModelParams(t_e=2.0), SolverSettings(t_max=20.0, sample_stride=50))
    assert np.max(np.abs(traj.states[:, :3].sum(axis=1) - 1)) <= 1e-9


def test_rk4_fourth_order():
    """Halving dt cuts the error at fixed t by ~16 against the exact propagator."""
    p = ModelParams(t_e=2.0, delta1=0.5)
    x0 = to_real(GROUND)
    t = 5.0
    exact = expm(assemble_generator(p) * t) @ x0

    def error(dt):
        traj = integrate(GROUND, p, SolverSettings(t_max=t, dt=dt, sample_stride=10 ** 6))
        return np.max(np.abs(traj.states[-1] - exact))

    ratio = error(0.1) / error(0.05)
    assert 8 <= ratio <= 32


def test_instability_detected():
    with pytest.raises(InstabilityError, match="dt"):
        integrate(GROUND, ModelParams(omega_rabi=5.0, t_e=10.0, delta1=10.0),
                  SolverSettings(dt=1.0, t_max=200.0, sample_stride=1))


def test_integrate_requires_unit_trace():
    with pytest.raises(ValidationError):
        integrate(np.diag([0.5, 0, 0]), ModelParams(), SolverSettings(t_max=1.0))


@pytest.mark.parametrize("kwargs", [
    {"dt": 0.0}, {"dt": -1e-3}, {"t_max": 1e-4}, {"relax_tol": 0.0}, {"sample_stride": 0},
    {"sample_stride": 1.5},
])
def test_invalid_settings(kwargs):
    with pytest.raises(ValidationError):
        SolverSettings(**kwargs)


# -- residual ------------------------------------------------------------------

def test_residual_of_ground_state_under_drive():
    # dominant entry: Im of d(rho01)/dt = -(omega/2)(rho11 - rho00) = omega/2
    assert residual_norm(GROUND, ModelParams(omega_rabi=0.5)) == pytest.approx(0.25, abs=1e-15)


def test_residual_of_steady_state():
    p = ModelParams(t_e=6.0)
    assert residual_norm(steady_state_direct(p), p) <= 1e-10


def test_residual_scales_with_coherences():
    p = ModelParams(omega_rabi=0.0, t_e=0.0, delta1=0.7)
    x = np.array([1.0, 0, 0, 0.1, -0.05, 0.02, 0.03, -0.01, 0.04])
    y = x.copy()
    y[3:] *= 2
    assert np.allclose(rhs_real(y, p)[3:], 2 * rhs_real(x, p)[3:], rtol=0, atol=1e-15)
    assert residual_norm(from_real(y), p) == pytest.approx(2 * residual_norm(from_real(x), p))
