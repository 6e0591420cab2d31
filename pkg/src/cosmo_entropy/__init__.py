"""Particle creation, entanglement entropy and quantum thermodynamics of scalar
modes in asymptotically flat (1+1)-dimensional expanding universes."""

__version__ = "0.1.0"

from .bogoliubov import BogoliubovResult, analytic_coeffs, exp_model_coeffs, tanh_model_coeffs
from .cosmology import Exponential, ModeParams, Tanh, omega_in, omega_out, scale_factor_sq
from .mode_oracle import ModeState, OracleConfig, extract_bogoliubov, integrate_mode, oracle_coeffs
from .thermo import (
    ThermoReport,
    creation_entropy,
    density_matrix_spectrum,
    entanglement_entropy,
    entanglement_entropy_from_n,
    entanglement_work,
    full_report,
    temperature,
    works,
)

__all__ = [
    "BogoliubovResult",
    "analytic_coeffs",
    "exp_model_coeffs",
    "tanh_model_coeffs",
    "Exponential",
    "ModeParams",
    "Tanh",
    "omega_in",
    "omega_out",
    "scale_factor_sq",
    "ModeState",
    "OracleConfig",
    "extract_bogoliubov",
    "integrate_mode",
    "oracle_coeffs",
    "ThermoReport",
    "creation_entropy",
    "density_matrix_spectrum",
    "entanglement_entropy",
    "entanglement_entropy_from_n",
    "entanglement_work",
    "full_report",
    "temperature",
    "works",
]
