"""Closed-form Bogoliubov coefficients for the two expansion models."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

from .cosmology import CosmologyModel, Exponential, ModeParams, Tanh, omega_in, omega_out
from .errors import DegenerateInputError, NumericalError
from .specfun import bessel_j, bessel_j_prime, loggamma_complex

__all__ = ["BogoliubovResult", "exp_model_coeffs", "tanh_model_coeffs", "analytic_coeffs"]

# closed forms that dip below |alpha|^2 = 1 by less than this are treated as round-off
_CLAMP = 1e-12


@dataclass(frozen=True)
class BogoliubovResult:
    """Squared moduli of the Bogoliubov coefficients for one mode.

    ``alpha``/``beta`` hold the complex coefficients when the producing
    route knows them. ``normalization_defect`` is ``| |alpha|^2 - |beta|^2 - 1 |``
    as measured by that route (not imposed).
    """

    alpha_sq: float
    beta_sq: float
    alpha: Optional[complex] = None
    beta: Optional[complex] = None
    normalization_defect: float = 0.0

    @property
    def n_cr(self) -> float:
        return self.beta_sq

    @property
    def gamma(self) -> float:
        return self.beta_sq / self.alpha_sq


_VACUUM = BogoliubovResult(alpha_sq=1.0, beta_sq=0.0, alpha=1 + 0j, beta=0j, normalization_defect=0.0)


def exp_model_coeffs(model: Exponential, mode: ModeParams) -> BogoliubovResult:
    """Coefficients for ``Omega^2 = c e^{-a|eta|} + b^2``.

    With ``nu = -2i omega / a`` and ``mu = 2 m sqrt(c) / a``::

        alpha = pi mu (mu/2)^{-2 nu} csc(pi nu) Gamma(1+nu)/Gamma(1-nu) J'_nu J_nu
        beta  = 1 - pi mu csc(pi nu) J'_nu J_{-nu}
        |alpha|^2 = pi^2 mu^2 csch^2(pi |nu|) |J'_nu(mu) J_{-nu}(mu)|^2

    ``beta_sq`` is ``|beta|^2`` and ``alpha_sq = 1 + beta_sq``;
    ``normalization_defect`` is the gap between that and the modulus form. Massless modes and a static universe (``c = 0``)
    return the vacuum result without evaluating any Bessel function.
    """
    if mode.m == 0.0 or model.c == 0.0:
        return _VACUUM
    w = omega_in(model, mode)
    nu = complex(0.0, -2.0 * w / model.a)
    mu = 2.0 * mode.m * math.sqrt(model.c) / model.a

    jp = bessel_j_prime(nu, mu)
    j_minus = bessel_j(-nu, mu)
    j_plus = bessel_j(nu, mu)
    csc = 1.0 / cmath.sin(math.pi * nu)
    gamma_ratio = cmath.exp(loggamma_complex(1.0 + nu) - loggamma_complex(1.0 - nu))
    alpha = math.pi * mu * cmath.exp(-2.0 * nu * math.log(0.5 * mu)) * csc * gamma_ratio * jp * j_plus
    beta = 1.0 - math.pi * mu * csc * jp * j_minus

    # |csc(pi nu)| = csch(pi |nu|) for imaginary nu
    modulus_sq = (math.pi * mu * abs(jp * j_minus) / math.sinh(math.pi * abs(nu))) ** 2
    if modulus_sq - 1.0 < -_CLAMP:
        raise NumericalError(f"|alpha|^2 = {modulus_sq!r} < 1 for k={mode.k}, m={mode.m}, {model}")
    # |alpha|^2 - 1 cancels catastrophically once beta is small (high k, small m);
    # the direct |beta|^2 does not, so it carries the value and the modulus form
    # is kept as the cross-check.
    beta_sq = abs(beta) ** 2
    alpha_sq = 1.0 + beta_sq
    defect = abs(modulus_sq - alpha_sq)
    return BogoliubovResult(alpha_sq, beta_sq, alpha, beta, defect)


def tanh_model_coeffs(model: Tanh, mode: ModeParams) -> BogoliubovResult:
    """Coefficients for ``Omega^2 = 1 + epsilon (1 + tanh(rho eta))`` from Gamma ratios.

    ``omega_pm = (omega_out +- omega_in) / 2``; every ratio is evaluated
    through log-Gamma so large ``omega / rho`` does not underflow.
    """
    w_in = omega_in(model, mode)
    w_out = omega_out(model, mode)
    if w_in == 0.0:
        raise DegenerateInputError("tanh model needs k != 0 or m > 0 (zero frequency)")
    rho = model.rho
    w_plus = 0.5 * (w_out + w_in)
    w_minus = 0.5 * (w_out - w_in)
    if w_minus == 0.0:
        # in and out bases coincide; the beta formula sits on a Gamma pole
        return _VACUUM

    lg = loggamma_complex
    pref = 0.5 * math.log(w_out / w_in)
    common = lg(1.0 - 1j * w_in / rho)
    log_alpha = pref + common + lg(-1j * w_out / rho) - lg(-1j * w_plus / rho) - lg(1.0 - 1j * w_plus / rho)
    log_beta = pref + common + lg(1j * w_out / rho) - lg(1j * w_minus / rho) - lg(1.0 + 1j * w_minus / rho)
    alpha = cmath.exp(log_alpha)
    beta = cmath.exp(log_beta)
    alpha_sq = math.exp(2.0 * log_alpha.real)
    beta_sq = math.exp(2.0 * log_beta.real)
    return BogoliubovResult(alpha_sq, beta_sq, alpha, beta, abs(alpha_sq - beta_sq - 1.0))


def analytic_coeffs(model: CosmologyModel, mode: ModeParams) -> BogoliubovResult:
    """Dispatch to the closed form matching ``model``."""
    if isinstance(model, Exponential):
        return exp_model_coeffs(model, mode)
    if isinstance(model, Tanh):
        return tanh_model_coeffs(model, mode)
    raise TypeError(f"unsupported model {model!r}")
