# %% [markdown]
# # The two-level limit
#
# With no tunneling (``t_e = 0``) the indirect exciton |2> is fed only by
# the incoherent decay |1> -> |2>, and the optical coherence obeys a plain
# two-level equation. At resonance the steady state has a closed form:
#
#     S = Omega^2 / (2 gamma1),   rho11 = rho22 = S / (1 + 3 S)
#
# (valid for Gamma10 = Gamma12 = Gamma20). Both solvers should reproduce it.

# %%
import numpy as np

from qdsim import ModelParams, steady_state_direct, steady_state_relax
from qdsim.observables import coherence_rho10

p = ModelParams(omega_rabi=0.1, t_e=0.0, delta1=0.0)
S = p.omega_rabi ** 2 / (2 * p.gamma1)
closed = S / (1 + 3 * S)

direct = steady_state_direct(p)
relax = steady_state_relax(p)

print(f"closed form     rho11 = rho22 = {closed:.12f}")
print(f"direct solve    rho11 = {direct[1, 1].real:.12f}  rho22 = {direct[2, 2].real:.12f}")
print(f"RK4 relaxation  rho11 = {relax[1, 1].real:.12f}  rho22 = {relax[2, 2].real:.12f}")
print(f"Im rho10 = {coherence_rho10(direct).imag:.6f}  (negative: gain convention)")
print(f"max |direct - relax| = {np.max(np.abs(direct - relax)):.2e}")

# %% [markdown]
# Away from resonance the absorption line is a Lorentzian of half-width
# ``gamma1`` (weakly power broadened), and the dispersion ``Re rho10`` has a
# negative slope at resonance.

# %%
for d in (-2.0, -1.0, 0.0, 1.0, 2.0):
    r10 = coherence_rho10(steady_state_direct(p.with_(delta1=d)))
    print(f"delta1 = {d:+.1f}   Re rho10 = {r10.real:+.5f}   Im rho10 = {r10.imag:+.5f}")
