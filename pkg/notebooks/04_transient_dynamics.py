# %% [markdown]
# # Switching on the laser
#
# Fixed-step RK4 from the empty dot ``diag(1, 0, 0)``. The trajectory
# oscillates at the dressed frequencies and settles into the steady state
# found by the direct solver; the trace stays at one to round-off.

# %%
import numpy as np

from qdsim import ModelParams, SolverSettings, integrate, steady_state_direct

p = ModelParams(omega_rabi=2.0, t_e=1.0)
traj = integrate(np.diag([1.0, 0, 0]), p, SolverSettings(dt=1e-3, t_max=40.0, sample_stride=2000))

for t, x in zip(traj.times, traj.states):
    print(f"t = {t:5.1f}   rho00 = {x[0]:.5f}   rho11 = {x[1]:.5f}   rho22 = {x[2]:.5f}")

# %%
final = traj.final
steady = steady_state_direct(p)
print("max |rho(t=40) - rho_ss| =", np.max(np.abs(final - steady)))
print("max |trace - 1| =", np.max(np.abs(traj.states[:, :3].sum(axis=1) - 1)))
