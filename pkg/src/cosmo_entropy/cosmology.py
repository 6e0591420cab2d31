"""Asymptotically flat (1+1)-dimensional Robertson-Walker expansions.

Two conformal scale factors are supported:

* ``Exponential(a, b, c)``: ``Omega^2(eta) = c * exp(-a |eta|) + b^2``
* ``Tanh(epsilon, rho)``:   ``Omega^2(eta) = 1 + epsilon * (1 + tanh(rho * eta))``

Both become constant as ``eta -> +-inf`` so in/out particle states exist.
Natural units throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import DomainError

__all__ = [
    "ModeParams",
    "Exponential",
    "Tanh",
    "CosmologyModel",
    "scale_factor_sq",
    "omega_in",
    "omega_out",
    "decay_rate",
    "model_params",
    "make_model",
]


def _finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class ModeParams:
    """One field mode: comoving momentum ``k`` and mass ``m >= 0``."""

    k: float
    m: float

    def __post_init__(self):
        object.__setattr__(self, "k", _finite("k", self.k))
        object.__setattr__(self, "m", _finite("m", self.m))
        if self.m < 0:
            raise DomainError(f"mass must be non-negative, got {self.m}")


@dataclass(frozen=True)
class Exponential:
    """``c e^{-a|eta|} + b^2``; ``a`` is the inflation rate."""

    a: float = 1.0
    b: float = 1.0
    c: float = 1.0

    name = "exp"

    def __post_init__(self):
        for f in ("a", "b", "c"):
            object.__setattr__(self, f, _finite(f, getattr(self, f)))
        if self.a <= 0 or self.b <= 0:
            raise DomainError(f"Exponential model needs a > 0 and b > 0, got a={self.a}, b={self.b}")
        if self.c < 0:
            raise DomainError(f"Exponential model needs c >= 0, got c={self.c}")


@dataclass(frozen=True)
class Tanh:
    """``1 + epsilon (1 + tanh(rho eta))``: total volume ``epsilon``, rapidity ``rho``."""

    epsilon: float = 1.0
    rho: float = 1.0

    name = "tanh"

    def __post_init__(self):
        for f in ("epsilon", "rho"):
            object.__setattr__(self, f, _finite(f, getattr(self, f)))
        if self.epsilon < 0 or self.rho <= 0:
            raise DomainError(
                f"Tanh model needs epsilon >= 0 and rho > 0, got epsilon={self.epsilon}, rho={self.rho}"
            )


CosmologyModel = Union[Exponential, Tanh]

_MODELS = {"exp": Exponential, "tanh": Tanh}


def make_model(name: str, **params) -> CosmologyModel:
    """Build a model from its CLI name (``exp`` or ``tanh``), ignoring foreign keys."""
    try:
        cls = _MODELS[name]
    except KeyError:
        raise DomainError(f"unknown model {name!r}; expected one of {sorted(_MODELS)}") from None
    fields = cls.__dataclass_fields__
    return cls(**{k: v for k, v in params.items() if k in fields and v is not None})


def model_params(model: CosmologyModel) -> dict[str, float]:
    """Ordered parameter mapping, e.g. ``{'a': 1.0, 'b': 1.0, 'c': 1.0}``."""
    return {f: getattr(model, f) for f in model.__dataclass_fields__}


def scale_factor_sq(model: CosmologyModel, eta: float) -> float:
    """Conformal factor squared, ``Omega^2(eta)``."""
    if isinstance(model, Exponential):
        return model.c * math.exp(-model.a * abs(eta)) + model.b * model.b
    if isinstance(model, Tanh):
        return 1.0 + model.epsilon * (1.0 + math.tanh(model.rho * eta))
    raise TypeError(f"unsupported model {model!r}")


def omega_in(model: CosmologyModel, mode: ModeParams) -> float:
    """Positive frequency of the mode in the far past."""
    if isinstance(model, Exponential):
        return math.sqrt(mode.k**2 + (mode.m * model.b) ** 2)
    if isinstance(model, Tanh):
        return math.sqrt(mode.k**2 + mode.m**2)
    raise TypeError(f"unsupported model {model!r}")


def omega_out(model: CosmologyModel, mode: ModeParams) -> float:
    """Positive frequency of the mode in the far future."""
    if isinstance(model, Exponential):
        return omega_in(model, mode)
    if isinstance(model, Tanh):
        return math.sqrt(mode.k**2 + mode.m**2 * (1.0 + 2.0 * model.epsilon))
    raise TypeError(f"unsupported model {model!r}")


def decay_rate(model: CosmologyModel) -> float:
    """Rate at which ``Omega^2`` approaches its asymptotes (``a`` or ``2 rho``)."""
    if isinstance(model, Exponential):
        return model.a
    if isinstance(model, Tanh):
        return 2.0 * model.rho
    raise TypeError(f"unsupported model {model!r}")
