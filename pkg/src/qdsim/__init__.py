"""Density-matrix simulator for a three-level asymmetric double quantum dot."""

from .model import (EquationMode, ModelParams, ValidationError, assemble_generator,
                    derive_delta2, from_real, rhs, to_real)
from .solvers import (SolverSettings, Trajectory, integrate, residual_norm,
                      steady_state_direct, steady_state_relax)
from .observables import (SweepSpec, SweepResult, coherence_rho10, dispersion_slope_at_resonance,
                          find_local_extrema, run_sweep, transparency_metrics)

__version__ = "0.1.0"
