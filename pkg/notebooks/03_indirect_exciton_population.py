# %% [markdown]
# # Population of the indirect exciton
#
# ``rho22`` is the quantity a photocurrent measurement would probe. Here it
# is swept against the tunneling coupling at fixed drive, and against the
# drive at fixed tunneling, on resonance (``delta1 = 0``).

# %%
import numpy as np

from qdsim import ModelParams, SweepSpec, run_sweep

print("rho22 versus t_e")
for omega in (0.1, 0.3, 0.5, 0.7):
    res = run_sweep(SweepSpec("t_e", 0.0, 2.0, 401, base=ModelParams(omega_rabi=omega)))
    r22 = res.column("rho22")
    k = int(np.argmax(r22))
    print(f"  Omega = {omega:.1f}: rho22(t_e=0) = {r22[0]:.4e}, peak {r22[k]:.4e} "
          f"at t_e = {res.values[k]:.3f}, rho22(t_e=2) = {r22[-1]:.4e}")

# %%
print("rho22 versus Omega")
for t_e in (0.2, 0.4, 0.6, 0.8):
    res = run_sweep(SweepSpec("omega_rabi", 0.0, 2.0, 401, base=ModelParams(t_e=t_e)))
    r22 = res.column("rho22")
    print(f"  t_e = {t_e:.1f}: rho22(0) = {r22[0] + 0.0:.1e}, rho22(1) = {r22[200]:.4f}, "
          f"rho22(2) = {r22[-1]:.4f}")

# %% [markdown]
# Limits: strong tunneling drains |2> back into |1>, where it decays, and a
# very strong drive saturates all three levels towards one third each.

# %%
from qdsim import steady_state_direct

print("t_e = 50, Omega = 0.1:", steady_state_direct(ModelParams(omega_rabi=0.1, t_e=50.0))[2, 2].real)
for omega in (10.0, 50.0, 100.0):
    rho = steady_state_direct(ModelParams(omega_rabi=omega, t_e=0.8))
    print(f"Omega = {omega:5.1f}: populations {np.round(np.diag(rho).real, 5)}")
