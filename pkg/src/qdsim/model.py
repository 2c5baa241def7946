"""
Parameters, state representation and equations of motion for the
three-level asymmetric double quantum dot.

Levels: |0> no excitation, |1> direct exciton (electron and hole in the
first dot), |2> indirect exciton (hole in the first dot, electron in the
second). The laser drives |0> <-> |1> with Rabi frequency ``omega_rabi``;
electron tunneling ``t_e`` couples |1> <-> |2>.

Every rate and detuning is expressed in units of a reference rate gamma, so
gamma itself never appears as a number.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, fields, replace

import numpy as np

__all__ = [
    "EquationMode",
    "ModelParams",
    "ValidationError",
    "HERMITIAN_TOL",
    "TRACE_TOL",
    "derive_delta2",
    "check_density_matrix",
    "to_real",
    "from_real",
    "rhs",
    "rhs_real",
    "assemble_generator",
]

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-12

# Index of each real coordinate in the 9-vector.
P00, P11, P22, RE01, IM01, RE02, IM02, RE12, IM12 = range(9)


class ValidationError(ValueError):
    """Raised for parameters or states that violate their invariants."""


class EquationMode(str, enum.Enum):
    """Choice of the tunneling term in the rho_02 equation.

    ``CORRECTED`` couples rho_02 to rho_01 through ``+i T_e rho_01``.
    ``VERBATIM`` uses the printed ``+i T_e rho_02`` term, which only shifts
    the |0>-|2> detuning by ``T_e``.
    """

    CORRECTED = "corrected"
    VERBATIM = "verbatim"


_RATE_FIELDS = ("gamma1", "gamma2", "gamma3",
                "big_gamma10", "big_gamma12", "big_gamma20")


@dataclass(frozen=True)
class ModelParams:
    """Rates and detunings of the model, all in units of gamma.

    Defaults are the absorption-spectrum parameter set: gamma1 = gamma2 = 1,
    gamma3 = 0.25, Gamma10 = Gamma12 = Gamma20 = Omega = 0.5, omega12 = 0.
    """

    omega_rabi: float = 0.5
    delta1: float = 0.0
    omega12: float = 0.0
    t_e: float = 0.5
    gamma1: float = 1.0
    gamma2: float = 1.0
    gamma3: float = 0.25
    big_gamma10: float = 0.5
    big_gamma12: float = 0.5
    big_gamma20: float = 0.5
    mode: EquationMode = EquationMode.CORRECTED

    def __post_init__(self):
        try:
            mode = EquationMode(self.mode)
        except ValueError:
            valid = ", ".join(m.value for m in EquationMode)
            raise ValidationError(
                f"mode must be one of {{{valid}}}, got {self.mode!r}") from None
        object.__setattr__(self, "mode", mode)
        for f in fields(self):
            if f.name == "mode":
                continue
            value = getattr(self, f.name)
            if isinstance(value, bool) or not isinstance(value, (int, float, np.floating, np.integer)):
                raise ValidationError(f"{f.name} must be a real number, got {value!r}")
            value = float(value)
            if not math.isfinite(value):
                raise ValidationError(f"{f.name} must be finite, got {value}")
            if f.name in _RATE_FIELDS and value < 0:
                raise ValidationError(f"{f.name} must be >= 0, got {value}")
            object.__setattr__(self, f.name, value)

    @property
    def delta2(self) -> float:
        return derive_delta2(self)

    def with_(self, **changes) -> "ModelParams":
        """Copy with some fields replaced (re-validated)."""
        return replace(self, **changes)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["mode"] = self.mode.value
        return d


def derive_delta2(p: ModelParams) -> float:
    """Detuning of the |0>-|2> transition, ``delta1 - omega12``."""
    return p.delta1 - p.omega12


def check_density_matrix(rho, physical: bool = False) -> np.ndarray:
    """Validate a 3x3 density matrix and return it as a complex array.

    Hermiticity is checked to ``HERMITIAN_TOL``. With ``physical=True`` the
    trace must also equal one to ``TRACE_TOL``.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (3, 3):
        raise ValidationError(f"density matrix must be 3x3, got shape {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise ValidationError("density matrix has non-finite entries")
    dev = np.max(np.abs(rho - rho.conj().T))
    if dev > HERMITIAN_TOL:
        raise ValidationError(f"density matrix is not Hermitian (deviation {dev:.3e})")
    if physical:
        tr = np.trace(rho).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValidationError(f"density matrix trace is {tr!r}, expected 1")
    return rho


def to_real(rho) -> np.ndarray:
    """Map a Hermitian 3x3 matrix onto its 9 real coordinates.

    Order: (rho00, rho11, rho22, Re rho01, Im rho01, Re rho02, Im rho02,
    Re rho12, Im rho12). Only the diagonal and upper triangle are read.
    """
    rho = np.asarray(rho, dtype=complex)
    return np.array([
        rho[0, 0].real, rho[1, 1].real, rho[2, 2].real,
        rho[0, 1].real, rho[0, 1].imag,
        rho[0, 2].real, rho[0, 2].imag,
        rho[1, 2].real, rho[1, 2].imag,
    ])


def from_real(x) -> np.ndarray:
    """Inverse of :func:`to_real`; the result is Hermitian by construction."""
    x = np.asarray(x, dtype=float)
    if x.shape != (9,):
        raise ValidationError(f"real state vector must have 9 entries, got shape {x.shape}")
    rho = np.zeros((3, 3), dtype=complex)
    rho[0, 0] = x[P00]
    rho[1, 1] = x[P11]
    rho[2, 2] = x[P22]
    rho[0, 1] = complex(x[RE01], x[IM01])
    rho[0, 2] = complex(x[RE02], x[IM02])
    rho[1, 2] = complex(x[RE12], x[IM12])
    rho[1, 0] = rho[0, 1].conjugate()
    rho[2, 0] = rho[0, 2].conjugate()
    rho[2, 1] = rho[1, 2].conjugate()
    return rho


def rhs(rho, p: ModelParams) -> np.ndarray:
    """Time derivative of the density matrix.

    Parameters
    ----------
    rho : (3, 3) array_like
        Hermitian density matrix. The trace is not required to be one.
    p : ModelParams

    Returns
    -------
    (3, 3) complex ndarray
        Hermitian and trace-free. The rho_22 equation follows from trace
        conservation: d(rho22)/dt = -d(rho00)/dt - d(rho11)/dt.
    """
    rho = check_density_matrix(rho)
    r00, r11, r22 = rho[0, 0].real, rho[1, 1].real, rho[2, 2].real
    r01, r02, r12 = rho[0, 1], rho[0, 2], rho[1, 2]
    r10, r21 = r01.conjugate(), r12.conjugate()

    half_omega = 0.5 * p.omega_rabi
    d1, d2, te = p.delta1, derive_delta2(p), p.t_e

    d01 = 1j * (d1 + 1j * p.gamma1) * r01 - 1j * half_omega * (r11 - r00) + 1j * te * r02
    d12 = (-1j * (d1 - d2 - 1j * p.gamma2) * r12 - 1j * half_omega * r02
           - 1j * te * (r22 - r11))
    tunnel = r01 if p.mode is EquationMode.CORRECTED else r02
    d02 = 1j * (d2 + 1j * p.gamma3) * r02 - 1j * half_omega * r12 + 1j * te * tunnel

    d00 = p.big_gamma20 * r22 + p.big_gamma10 * r11 - 1j * half_omega * (r10 - r01)
    d11 = (-(p.big_gamma10 + p.big_gamma12) * r11 + 1j * half_omega * (r10 - r01)
           - 1j * te * (r21 - r12))
    # the imaginary parts of d00, d11 vanish analytically
    d00, d11 = d00.real, d11.real
    d22 = -d00 - d11

    out = np.empty((3, 3), dtype=complex)
    out[0, 0], out[1, 1], out[2, 2] = d00, d11, d22
    out[0, 1], out[0, 2], out[1, 2] = d01, d02, d12
    out[1, 0], out[2, 0], out[2, 1] = d01.conjugate(), d02.conjugate(), d12.conjugate()
    return out


def rhs_real(x, p: ModelParams) -> np.ndarray:
    """:func:`rhs` expressed in the real 9-coordinate chart."""
    return to_real(rhs(from_real(x), p))


def assemble_generator(p: ModelParams) -> np.ndarray:
    """Real 9x9 matrix ``L`` with ``L @ to_real(rho) == to_real(rhs(rho, p))``.

    Entries are written out from the real and imaginary parts of each
    equation, independently of :func:`rhs`.
    """
    L = np.zeros((9, 9))
    h = 0.5 * p.omega_rabi
    d1, d2, te = p.delta1, derive_delta2(p), p.t_e
    w = d1 - d2
    g1, g2, g3 = p.gamma1, p.gamma2, p.gamma3
    G10, G12, G20 = p.big_gamma10, p.big_gamma12, p.big_gamma20

    # populations
    L[P00, P11] = G10
    L[P00, P22] = G20
    L[P00, IM01] = -2 * h
    L[P11, P11] = -(G10 + G12)
    L[P11, IM01] = 2 * h
    L[P11, IM12] = -2 * te
    L[P22, P11] = G12
    L[P22, P22] = -G20
    L[P22, IM12] = 2 * te

    # rho01
    L[RE01, RE01] = -g1
    L[RE01, IM01] = -d1
    L[RE01, IM02] = -te
    L[IM01, RE01] = d1
    L[IM01, IM01] = -g1
    L[IM01, P00] = h
    L[IM01, P11] = -h
    L[IM01, RE02] = te

    # rho02
    L[RE02, RE02] = -g3
    L[RE02, IM02] = -d2
    L[RE02, IM12] = h
    L[IM02, RE02] = d2
    L[IM02, IM02] = -g3
    L[IM02, RE12] = -h
    if p.mode is EquationMode.CORRECTED:
        L[RE02, IM01] = -te
        L[IM02, RE01] = te
    else:
        L[RE02, IM02] -= te
        L[IM02, RE02] += te

    # rho12
    L[RE12, RE12] = -g2
    L[RE12, IM12] = w
    L[RE12, IM02] = h
    L[IM12, RE12] = -w
    L[IM12, IM12] = -g2
    L[IM12, RE02] = -h
    L[IM12, P11] = te
    L[IM12, P22] = -te
    return L
