"""Brute-force Bogoliubov coefficients from the mode equation.

Integrates ``chi'' + (k^2 + m^2 Omega^2(eta)) chi = 0`` from ``-L`` to ``+L``
starting from the in-vacuum plane wave, then projects the final state onto
out-region plane waves. Shares nothing with :mod:`cosmo_entropy.bogoliubov`
except the scale-factor definitions, so agreement between the two is a
genuine check of the closed forms.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.integrate import DOP853

from .bogoliubov import BogoliubovResult
from .cosmology import CosmologyModel, ModeParams, decay_rate, omega_in, omega_out, scale_factor_sq
from .errors import DegenerateInputError, SingularSystem, StepLimitExceeded, StiffnessError

__all__ = [
    "ModeState",
    "OracleConfig",
    "default_span",
    "integrate_mode",
    "extract_bogoliubov",
    "oracle_coeffs",
    "write_trajectory",
]

# multiples of the asymptotic decay length 1/rate used as the default half-span
SPAN_DECAY_LENGTHS = 40.0


@dataclass(frozen=True)
class ModeState:
    """Mode function and its conformal-time derivative at ``eta``.

    ``max_wronskian_defect`` is the largest ``|chi conj(chi') - conj(chi) chi' - i|``
    seen over all accepted steps that led here.
    """

    chi: complex
    dchi: complex
    eta: float
    max_wronskian_defect: float = 0.0
    steps: int = 0

    @property
    def wronskian(self) -> complex:
        return wronskian(self.chi, self.dchi)


@dataclass(frozen=True)
class OracleConfig:
    eta_span: Optional[float] = None  # None -> default_span(model)
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_steps: int = 10_000_000

    def span_for(self, model: CosmologyModel) -> float:
        return self.eta_span if self.eta_span is not None else default_span(model)


def default_span(model: CosmologyModel) -> float:
    """Half-span ``L`` with ``Omega^2`` within ``~e^{-40}`` of its asymptotes."""
    return SPAN_DECAY_LENGTHS / decay_rate(model)


def wronskian(chi: complex, dchi: complex) -> complex:
    return chi * dchi.conjugate() - chi.conjugate() * dchi


@dataclass
class _Trajectory:
    rows: list = field(default_factory=list)

    def __call__(self, eta, chi, dchi, defect):
        self.rows.append((eta, chi.real, chi.imag, dchi.real, dchi.imag, defect))


def integrate_mode(
    model: CosmologyModel,
    mode: ModeParams,
    cfg: OracleConfig = OracleConfig(),
    on_step: Optional[Callable[[float, complex, complex, float], None]] = None,
) -> ModeState:
    """Evolve the in-vacuum mode ``(2w)^{-1/2} e^{-i w eta}`` across the expansion.

    The interval is split at ``eta = 0`` so the kink of the exponential
    scale factor falls on a step boundary. ``on_step(eta, chi, dchi, defect)``
    is called for the initial point and every accepted step.
    """
    w = omega_in(model, mode)
    if w == 0.0:
        raise DegenerateInputError("mode has zero frequency (k = m = 0)")
    L = cfg.span_for(model)
    k2, m2 = mode.k * mode.k, mode.m * mode.m

    def rhs(eta, y):
        return np.array([y[1], -(k2 + m2 * scale_factor_sq(model, eta)) * y[0]])

    chi0 = (2.0 * w) ** -0.5 * complex(math.cos(w * L), math.sin(w * L))
    y = np.array([chi0, -1j * w * chi0], dtype=complex)
    max_defect = abs(wronskian(y[0], y[1]) - 1j)
    if on_step is not None:
        on_step(-L, complex(y[0]), complex(y[1]), max_defect)

    steps = 0
    eta = -L
    for t_end in (0.0, L):
        solver = DOP853(rhs, eta, y, t_end, rtol=cfg.rel_tol, atol=cfg.abs_tol)
        while solver.status == "running":
            msg = solver.step()
            if solver.status == "failed":
                raise StiffnessError(f"integration failed at eta={solver.t:.6g}: {msg}")
            steps += 1
            if steps > cfg.max_steps:
                raise StepLimitExceeded(f"more than {cfg.max_steps} steps before eta={t_end}")
            chi, dchi = complex(solver.y[0]), complex(solver.y[1])
            defect = abs(wronskian(chi, dchi) - 1j)
            if defect > max_defect:
                max_defect = defect
            if on_step is not None:
                on_step(solver.t, chi, dchi, defect)
        eta, y = solver.t, solver.y
    return ModeState(complex(y[0]), complex(y[1]), float(eta), max_defect, steps)


def extract_bogoliubov(state: ModeState, omega_out: float) -> BogoliubovResult:
    """Project ``(chi, chi')`` onto ``(2w)^{-1/2} (alpha e^{-i w eta} + beta e^{+i w eta})``."""
    w = float(omega_out)
    if not w > 0.0:
        raise SingularSystem(f"out frequency must be positive, got {w}")
    scale = math.sqrt(2.0 * w) / 2.0
    phase = complex(math.cos(w * state.eta), math.sin(w * state.eta))  # e^{i w eta}
    alpha = scale * (state.chi + 1j * state.dchi / w) * phase
    beta = scale * (state.chi - 1j * state.dchi / w) * phase.conjugate()
    alpha_sq = abs(alpha) ** 2
    beta_sq = abs(beta) ** 2
    return BogoliubovResult(alpha_sq, beta_sq, alpha, beta, abs(alpha_sq - beta_sq - 1.0))


def oracle_coeffs(
    model: CosmologyModel, mode: ModeParams, cfg: OracleConfig = OracleConfig()
) -> BogoliubovResult:
    """Integrate then extract; no normalization is imposed on the result."""
    state = integrate_mode(model, mode, cfg)
    return extract_bogoliubov(state, omega_out(model, mode))


def write_trajectory(
    path, model: CosmologyModel, mode: ModeParams, cfg: OracleConfig = OracleConfig()
) -> ModeState:
    """Integrate and dump every accepted step as CSV (debugging aid)."""
    traj = _Trajectory()
    state = integrate_mode(model, mode, cfg, on_step=traj)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["eta", "re_chi", "im_chi", "re_dchi", "im_dchi", "wronskian_defect"])
        for row in traj.rows:
            writer.writerow([f"{v:.17g}" for v in row])
    return state
