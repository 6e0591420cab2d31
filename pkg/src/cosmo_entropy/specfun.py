"""Complex Gamma function and Bessel functions of the first kind.

Only what the Bogoliubov coefficients need: Gamma for complex argument
(Lanczos approximation, reflected for ``Re z < 1/2``) and ``J_nu(x)`` for
complex order at positive real argument via the ascending series.

Accuracy envelope
-----------------
* ``gamma_complex``: relative error below 1e-12 for ``|z| <= 50``.
* ``bessel_j``: relative error below 1e-10 for ``|nu| <= 100`` wherever the
  series does not cancel by more than ``MAX_CANCELLATION`` (roughly
  ``x <= 10`` for imaginary order). Beyond that the call raises
  ``ConvergenceError`` instead of returning a degraded value; this includes
  the immediate neighbourhood of zeros of real-order ``J``. No
  large-argument asymptotic branch is provided.

Every routine is a pure function of its inputs.
"""
from __future__ import annotations

import cmath
import math

from .errors import ConvergenceError, DomainError, GammaOverflowError, PoleError

__all__ = [
    "loggamma_complex",
    "gamma_complex",
    "rgamma_complex",
    "bessel_j",
    "bessel_j_prime",
    "MAX_SERIES_TERMS",
    "TERM_RATIO_CUTOFF",
    "NU_ENVELOPE",
    "MAX_CANCELLATION",
]

MAX_SERIES_TERMS = 300
TERM_RATIO_CUTOFF = 1e-17
# largest term / |sum| tolerated before the 1e-10 relative bound is lost
MAX_CANCELLATION = 1e5
NU_ENVELOPE = 100.0

# Lanczos g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS_P = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)
# log of the largest finite double
_LOG_DBL_MAX = math.log(1.7976931348623157e308)


def _as_complex(z) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite argument {z!r}")
    return z


def _is_pole(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def _log_sin_pi(z: complex) -> complex:
    """log(sin(pi z)) without overflowing for large |Im z|."""
    y = z.imag
    if abs(y) < 20.0:
        return cmath.log(cmath.sin(math.pi * z))
    # sin(pi z) = (e^{-i pi z} - e^{i pi z}) / (2i); keep the dominant exponential factored out
    if y > 0:
        dom = -1j * math.pi * z  # e^{dom} is the large term
        rest = cmath.exp(2j * math.pi * z) - 1.0
    else:
        dom = 1j * math.pi * z
        rest = 1.0 - cmath.exp(-2j * math.pi * z)
    return dom + cmath.log(rest) - cmath.log(2j)


def _loggamma_right(z: complex) -> complex:
    # Re z >= 0.5
    z = z - 1.0
    acc = _LANCZOS_P[0]
    for i in range(1, len(_LANCZOS_P)):
        acc += _LANCZOS_P[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(acc)


def loggamma_complex(z) -> complex:
    """Logarithm of Gamma (branch unspecified in the imaginary part).

    Only ``exp`` of the result is meaningful; use it for ratios of
    Gamma values that would individually under- or overflow.
    """
    z = _as_complex(z)
    if _is_pole(z):
        raise PoleError(f"Gamma has a pole at {z.real:g}")
    if z.real < 0.5:
        return _LOG_PI - _log_sin_pi(z) - _loggamma_right(1.0 - z)
    return _loggamma_right(z)


def gamma_complex(z) -> complex:
    """Gamma function for complex argument.

    Raises
    ------
    PoleError
        ``z`` is 0, -1, -2, ...
    GammaOverflowError
        ``|Gamma(z)|`` is not representable as a double.
    """
    lg = loggamma_complex(z)
    if lg.real > _LOG_DBL_MAX:
        raise GammaOverflowError(f"|Gamma({complex(z)})| overflows")
    return cmath.exp(lg)


def rgamma_complex(z) -> complex:
    """Reciprocal Gamma, ``1/Gamma(z)``; exactly zero at the poles."""
    z = _as_complex(z)
    if _is_pole(z):
        return 0j
    lg = loggamma_complex(z)
    if -lg.real > _LOG_DBL_MAX:
        raise GammaOverflowError(f"|1/Gamma({z})| overflows")
    return cmath.exp(-lg)


def _check_args(nu, x) -> tuple[complex, float]:
    nu = _as_complex(nu)
    x = float(x)
    if not x > 0.0 or not math.isfinite(x):
        raise DomainError(f"bessel_j requires x > 0, got {x!r}")
    if abs(nu) > NU_ENVELOPE:
        raise DomainError(f"|nu| = {abs(nu):g} outside the supported envelope |nu| <= {NU_ENVELOPE:g}")
    return nu, x


def _series(nu: complex, x: float) -> complex:
    half = 0.5 * x
    q = half * half
    term = rgamma_complex(nu + 1.0)
    total = term
    biggest = abs(term)
    for j in range(1, MAX_SERIES_TERMS + 1):
        # multiply before dividing: nu + j can be subnormal next to a pole
        term = term * (-q / j) / (nu + j)
        total += term
        biggest = max(biggest, abs(term))
        # only stop once the terms have started shrinking
        if q < j * abs(nu + j) and abs(term) <= TERM_RATIO_CUTOFF * abs(total):
            break
    else:
        raise ConvergenceError(
            f"J_nu series for nu={nu}, x={x} did not converge in {MAX_SERIES_TERMS} terms"
        )
    if biggest > MAX_CANCELLATION * abs(total):
        raise ConvergenceError(
            f"J_nu series for nu={nu}, x={x} cancels by a factor "
            f"{biggest / abs(total) if total else math.inf:.3g}, beyond the accuracy envelope"
        )
    # principal branch; log(x/2) is real because x > 0
    out = cmath.exp(nu * math.log(half)) * total
    if not (math.isfinite(out.real) and math.isfinite(out.imag)):
        raise GammaOverflowError(f"J_nu({x}) overflows for nu={nu}")
    return out


def bessel_j(nu, x: float) -> complex:
    """Bessel function of the first kind ``J_nu(x)`` for complex order, real ``x > 0``.

    Evaluated from the ascending series
    ``(x/2)^nu * sum_j (-1)^j (x/2)^(2j) / (j! Gamma(nu + j + 1))``,
    truncated once a term drops below ``1e-17`` of the running sum.
    """
    nu, x = _check_args(nu, x)
    return _bessel_j(nu, x)


def _bessel_j(nu: complex, x: float) -> complex:
    if _is_pole(nu) and nu.real != 0.0:
        # negative integer order: J_{-n} = (-1)^n J_n
        n = int(-nu.real)
        val = _series(complex(n, 0.0), x)
        return -val if n % 2 else val
    return _series(nu, x)


def bessel_j_prime(nu, x: float) -> complex:
    """Derivative ``dJ_nu/dx`` from ``(J_{nu-1} - J_{nu+1}) / 2``."""
    nu, x = _check_args(nu, x)
    return 0.5 * (_bessel_j(nu - 1.0, x) - _bessel_j(nu + 1.0, x))
