"""Entropies, effective temperature and work for one (k, -k) mode pair.

All logarithms are natural (nats). Every quantity is pinned to 0 at
``n = 0`` / ``gamma = 0``, where the closed forms are ``0 log 0`` limits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import NamedTuple

from .bogoliubov import BogoliubovResult
from .cosmology import CosmologyModel, ModeParams, omega_in, omega_out
from .errors import DomainError

__all__ = [
    "ThermoReport",
    "Works",
    "entanglement_entropy",
    "entanglement_entropy_from_n",
    "creation_entropy",
    "temperature",
    "bose_einstein",
    "works",
    "entanglement_work",
    "density_matrix_spectrum",
    "spectrum_entropy",
    "full_report",
    "REPORT_FIELDS",
    "ENTROPY_FIELDS",
]


def _check_gamma(gamma: float) -> float:
    gamma = float(gamma)
    if not 0.0 <= gamma < 1.0:
        raise DomainError(f"gamma must lie in [0, 1), got {gamma!r}")
    return gamma


def _check_n(n: float) -> float:
    n = float(n)
    if not (n >= 0.0 and math.isfinite(n)):
        raise DomainError(f"occupation number must be finite and >= 0, got {n!r}")
    return n


def entanglement_entropy(gamma: float) -> float:
    """Von Neumann entropy ``log(gamma^{gamma/(gamma-1)} / (1-gamma))`` of the reduced state."""
    gamma = _check_gamma(gamma)
    if gamma == 0.0:
        return 0.0
    return gamma / (gamma - 1.0) * math.log(gamma) - math.log1p(-gamma)


def entanglement_entropy_from_n(n: float) -> float:
    """Same entropy written through the mean occupation: ``log((1+n)^{n+1} / n^n)``."""
    n = _check_n(n)
    if n == 0.0:
        return 0.0
    return (1.0 + n) * math.log1p(n) - n * math.log(n)


def creation_entropy(n: float) -> float:
    """Particle-creation entropy ``n log((1+n)/n)``; tends to 1 nat as ``n -> inf``."""
    n = _check_n(n)
    if n == 0.0:
        return 0.0
    return n * math.log1p(1.0 / n)


def temperature(omega_out: float, gamma: float) -> float:
    """Effective temperature ``omega_out / log(1/gamma)`` of the thermal reduced state.

    Defined as 0 for ``gamma = 0`` (nothing created).
    """
    gamma = _check_gamma(gamma)
    if not omega_out > 0.0:
        raise DomainError(f"omega_out must be positive, got {omega_out!r}")
    if gamma == 0.0:
        return 0.0
    return omega_out / -math.log(gamma)


def bose_einstein(omega: float, temp: float) -> float:
    """Planck occupation ``1 / (e^{omega/T} - 1)``; 0 at ``T = 0``."""
    if temp == 0.0:
        return 0.0
    return 1.0 / math.expm1(omega / temp)


class Works(NamedTuple):
    w_total: float
    w_adiabatic: float
    w_friction: float


def works(omega_in: float, omega_out: float, n: float) -> Works:
    """Average work by the expansion, split into adiabatic and inner-friction parts."""
    if not (omega_in > 0.0 and omega_out > 0.0):
        raise DomainError(f"frequencies must be positive, got {omega_in!r}, {omega_out!r}")
    n = _check_n(n)
    w_adiabatic = omega_out - omega_in
    w_friction = omega_out * n
    return Works(w_friction + w_adiabatic, w_adiabatic, w_friction)


def entanglement_work(omega_out: float, n: float) -> float:
    """``omega_out [n - log(1+n) / log(n/(1+n))]``, the work that pairs with ``S_en``.

    Equals ``T * S_en``; the ``n -> 0`` limit is 0.
    """
    n = _check_n(n)
    if not omega_out > 0.0:
        raise DomainError(f"omega_out must be positive, got {omega_out!r}")
    if n == 0.0:
        return 0.0
    # log(n/(1+n)) = -log1p(1/n)
    return omega_out * (n - math.log1p(n) / -math.log1p(1.0 / n))


def density_matrix_spectrum(gamma: float, n_max: int) -> list[float]:
    """Eigenvalues ``(1-gamma) gamma^n`` of the reduced density matrix, ``n = 0..n_max``.

    The truncated list sums to ``1 - gamma^(n_max+1)``.
    """
    gamma = _check_gamma(gamma)
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    head = 1.0 - gamma
    return [head * gamma**n for n in range(n_max + 1)]


def spectrum_entropy(eigenvalues) -> float:
    """Shannon entropy ``-sum lam log lam`` of a (possibly truncated) spectrum."""
    return -math.fsum(lam * math.log(lam) for lam in eigenvalues if lam > 0.0)


@dataclass(frozen=True)
class ThermoReport:
    n_cr: float
    gamma: float
    s_en: float
    s_cr: float
    d: float
    temperature: float
    z_squeeze: float
    w_total: float
    w_adiabatic: float
    w_friction: float
    w_en: float

    def as_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


REPORT_FIELDS = tuple(f.name for f in fields(ThermoReport))
ENTROPY_FIELDS = ("s_en", "s_cr", "d")


def full_report(model: CosmologyModel, mode: ModeParams, coeffs: BogoliubovResult) -> ThermoReport:
    """All thermodynamic quantities for one mode.

    ``n_cr = beta_sq`` and ``gamma = beta_sq / alpha_sq``. The entropies and
    works are built from ``n_cr`` so ``s_en = s_cr + d`` holds to round-off;
    temperature and squeezing use ``gamma``. For oracle coefficients the two
    agree only up to the measured ``normalization_defect``.
    """
    w_in = omega_in(model, mode)
    w_out = omega_out(model, mode)
    n = coeffs.beta_sq
    gamma = coeffs.beta_sq / coeffs.alpha_sq
    s_cr = creation_entropy(n)
    d = math.log1p(n)
    if w_in > 0.0:
        w = works(w_in, w_out, n)
    else:
        # k = m = 0 only reaches here through the vacuum short-circuit
        w = Works(0.0, 0.0, 0.0)
    return ThermoReport(
        n_cr=n,
        gamma=gamma,
        s_en=entanglement_entropy_from_n(n),
        s_cr=s_cr,
        d=d,
        temperature=temperature(w_out, gamma) if w_out > 0.0 else 0.0,
        z_squeeze=math.atanh(math.sqrt(gamma)),
        w_total=w.w_total,
        w_adiabatic=w.w_adiabatic,
        w_friction=w.w_friction,
        w_en=entanglement_work(w_out, n) if w_out > 0.0 else 0.0,
    )
