import numpy as np
import pytest

from qdsim.model import EquationMode, ModelParams


def random_params(rng, mode=None, lo=0.05, hi=2.0, detuning=10.0):
    """Parameter draw used by the randomized cross-checks."""
    r = lambda: rng.uniform(lo, hi)
    if mode is None:
        mode = rng.choice([m.value for m in EquationMode])
    return ModelParams(
        omega_rabi=r(), t_e=r(), gamma1=r(), gamma2=r(), gamma3=r(),
        big_gamma10=r(), big_gamma12=r(), big_gamma20=r(),
        delta1=rng.uniform(-detuning, detuning), omega12=rng.uniform(-detuning, detuning),
        mode=mode)


def random_hermitian(rng, unit_trace=True):
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    rho = a @ a.conj().T
    if unit_trace:
        rho /= np.trace(rho).real
    return rho


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# -- acceptance summary ---------------------------------------------------------

_ACCEPTANCE = []
ANNOTATIONS = []


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
    if ANNOTATIONS:
        terminalreporter.section("acceptance measurements")
        for line in ANNOTATIONS:
            terminalreporter.write_line(line)
