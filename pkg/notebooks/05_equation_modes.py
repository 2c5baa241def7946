# %% [markdown]
# # Corrected and verbatim tunneling terms
#
# The equation for ``rho02`` can carry its tunneling term either as
# ``+i T_e rho01`` (``mode="corrected"``, Hamiltonian-consistent) or as the
# printed ``+i T_e rho02`` (``mode="verbatim"``), which only shifts the
# |0>-|2> detuning.
#
# In verbatim mode with ``Gamma12 == Gamma20`` the steady state has
# ``rho02 = rho12 = 0``: the optical line is the bare two-level Lorentzian,
# independent of ``t_e`` and symmetric in ``delta1``. Unequal decay rates
# are needed before the verbatim spectrum becomes asymmetric.

# %%
import numpy as np

from qdsim import ModelParams, SweepSpec, run_sweep


def asymmetry(base):
    res = run_sweep(SweepSpec("delta1", -10.0, 10.0, 401, base=base))
    im = res.column("im_rho10")
    return np.max(np.abs(im - im[::-1]))


for mode in ("corrected", "verbatim"):
    for g12 in (0.5, 0.3):
        a = asymmetry(ModelParams(t_e=6.0, mode=mode, big_gamma12=g12))
        print(f"{mode:9}  Gamma12 = {g12}:  max |Im rho10(d) - Im rho10(-d)| = {a:.2e}")
