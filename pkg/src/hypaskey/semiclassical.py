"""Closed-form saddle data and asymptotic predictors for the two integrals.

For the first integral (parameters zeta real, 0 < Im omega < 1/2) the phase
and prefactor on the strip -1/2 < Im t < 0 are

    f(t) = -[Li2(-e^{2 pi zeta}) + Li2(-e^{2 pi (t - zeta)}) - Li2(-e^{2 pi (t + i/2)})]/(2 pi i)
           + i pi zeta^2 + 2 i pi t omega + pi t + i pi/6,
    g(t) = exp(pi t - ln(1 - e^{2 pi t})/2),

with the saddle, curvature and simplified amplitude

    t0    = ln(e^{pi zeta} cosh(pi omega)/sinh(pi (zeta + omega)))/(2 pi),
    f''(t0) = 4 i pi cosh(pi omega) sinh(pi (zeta + omega))/cosh(pi zeta),
    amp   = sqrt((coth(pi (zeta + omega)) + 1)/2).

For the second integral (sigma, mu real with e^{2 pi mu} > sinh^2(2 pi sigma),
strip -1/2 < Im t < -1/4):

    f(t) = -[Li2(-e^{2 pi mu}) + Li2(-e^{2 pi (t - sigma)}) + Li2(-e^{2 pi (t + sigma)})]/(2 pi i)
           + 2 i pi mu t + pi (t - mu) + 5 i pi/12,
    g(t) = e^{pi (t - mu)},
    t0   = ln(-cosh(2 pi sigma) - i sqrt(e^{2 pi mu} - sinh^2(2 pi sigma)))/(2 pi),
    amp  = e^{i pi/4} / (sqrt(2) (e^{2 pi mu} - sinh^2(2 pi sigma))^{1/4}).

All branches are principal.  Saddles are closed forms; a one-step Newton
refinement is available purely as a diagnostic.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import CutError, DomainError, RegimeError
from .special_functions import dilog, principal_log, principal_sqrt

__all__ = [
    "SaddleData",
    "AsymptoticPrediction",
    "f_M_phase", "g_M", "df_M_phase", "d2f_M_phase",
    "saddle_M", "f_M_closed", "df_M_dzeta", "df_M_domega", "asym_M",
    "f_Q_phase", "g_Q", "df_Q_phase", "d2f_Q_phase",
    "saddle_Q", "f_Q_closed", "asym_Q",
    "newton_step_M", "newton_step_Q", "q_regime_gap",
]

_PI = math.pi
_2PI = 2.0 * math.pi
_I = 1j

#: reject second-integral parameters closer than this to the regime boundary
REGIME_MARGIN = 1e-8


@dataclass(frozen=True)
class SaddleData:
    t0: complex
    f_at_t0: complex
    fpp_at_t0: complex
    alpha0: float
    prefactor: complex


@dataclass(frozen=True)
class AsymptoticPrediction:
    log_scale: complex      # f / b^2
    mantissa: complex       # b-independent amplitude
    error_order: int = 1    # the remainder is O(b)


def _check_m_regime(zeta, omega) -> tuple[float, complex]:
    zeta = complex(zeta)
    if abs(zeta.imag) > 1e-12:
        raise DomainError("zeta must be real in the one-saddle regime")
    omega = complex(omega)
    if not 0.0 < omega.imag < 0.5:
        raise DomainError("need 0 < Im omega < 1/2")
    return zeta.real, omega


# ---------------------------------------------------------------------------
# first integral: phase, saddle, closed forms
# ---------------------------------------------------------------------------

def f_M_phase(t: complex, zeta: float, omega: complex) -> complex:
    t = complex(t)
    if not -0.5 < t.imag < 0.0:
        raise DomainError("f_M_phase needs Im t in (-1/2, 0)")
    li = (
        dilog(-cmath.exp(_2PI * zeta))
        + dilog(-cmath.exp(_2PI * (t - zeta)))
        - dilog(-cmath.exp(_2PI * (t + 0.5j)))
    )
    return (
        -li / (_2PI * _I)
        + _I * _PI * zeta * zeta
        + 2 * _I * _PI * t * omega
        + _PI * t
        + _I * _PI / 6.0
    )


def g_M(t: complex) -> complex:
    t = complex(t)
    if not -0.5 < t.imag < 0.0:
        raise DomainError("g_M needs Im t in (-1/2, 0)")
    return cmath.exp(_PI * t - 0.5 * principal_log(1.0 - cmath.exp(_2PI * t)))


def df_M_phase(t: complex, zeta: float, omega: complex) -> complex:
    """f'(t) = -i ln(1 + e^{2 pi (t-zeta)}) + i ln(1 - e^{2 pi t}) + 2 i pi omega + pi."""
    t = complex(t)
    return (
        -_I * principal_log(1.0 + cmath.exp(_2PI * (t - zeta)))
        + _I * principal_log(1.0 - cmath.exp(_2PI * t))
        + 2 * _I * _PI * omega
        + _PI
    )


def d2f_M_phase(t: complex, zeta: float) -> complex:
    """f''(t) = pi i cosh(pi zeta) / (sinh(pi t) cosh(pi (t - zeta)))."""
    t = complex(t)
    return _I * _PI * cmath.cosh(_PI * zeta) / (
        cmath.sinh(_PI * t) * cmath.cosh(_PI * (t - zeta))
    )


def saddle_M(zeta: float, omega: complex) -> SaddleData:
    zeta, omega = _check_m_regime(zeta, omega)
    ratio = cmath.exp(_PI * zeta) * cmath.cosh(_PI * omega) / cmath.sinh(_PI * (zeta + omega))
    t0 = principal_log(ratio) / _2PI
    fpp = 4 * _I * _PI * cmath.cosh(_PI * omega) * cmath.sinh(_PI * (zeta + omega)) \
        / cmath.cosh(_PI * zeta)
    alpha0 = -0.5 * cmath.phase(-fpp)
    coth = cmath.cosh(_PI * (zeta + omega)) / cmath.sinh(_PI * (zeta + omega))
    pref = principal_sqrt(0.5 * (coth + 1.0))
    return SaddleData(
        t0=t0,
        f_at_t0=f_M_phase(t0, zeta, omega),
        fpp_at_t0=fpp,
        alpha0=alpha0,
        prefactor=pref,
    )


def f_M_closed(zeta, omega) -> complex:
    """Saddle value of the phase as an explicit closed form.

    Accepts mildly complex zeta (the Painleve change of variables and
    finite differences need it); branch arguments landing on a cut raise
    CutError rather than silently picking a side.
    """
    zeta = complex(zeta)
    omega = complex(omega)
    X = cmath.exp(_PI * zeta) * cmath.cosh(_PI * omega) / cmath.sinh(_PI * (zeta + omega))
    li = (
        dilog(-cmath.exp(_2PI * zeta))
        + dilog(-cmath.exp(-_PI * zeta) * cmath.cosh(_PI * omega)
                / cmath.sinh(_PI * (zeta + omega)))
        - dilog(X)
    )
    return (
        -li / (_2PI * _I)
        + _I * _PI * zeta * zeta
        + _I * (omega - 0.5j) * principal_log(X)
        + _I * _PI / 6.0
    )


def df_M_dzeta(zeta, omega) -> complex:
    """Analytic d f / d zeta = 2 i pi (zeta + omega) + pi - i ln(1 - e^{2 pi (zeta + omega)})."""
    zeta, omega = complex(zeta), complex(omega)
    return 2 * _I * _PI * (zeta + omega) + _PI \
        - _I * principal_log(1.0 - cmath.exp(_2PI * (zeta + omega)))


def df_M_domega(zeta, omega) -> complex:
    """Analytic d f / d omega = pi + 2 i pi zeta - i ln((1 - e^{2 pi (zeta+omega)})/(1 + e^{2 pi omega}))."""
    zeta, omega = complex(zeta), complex(omega)
    return _PI + 2 * _I * _PI * zeta - _I * principal_log(
        (1.0 - cmath.exp(_2PI * (zeta + omega))) / (1.0 + cmath.exp(_2PI * omega))
    )


def asym_M(b: float, zeta: float, omega: complex) -> AsymptoticPrediction:
    """Leading asymptotics: amplitude * exp(f/b^2), remainder a factor (1 + O(b))."""
    if b <= 0:
        raise DomainError("b must be positive")
    sd = saddle_M(zeta, omega)
    return AsymptoticPrediction(
        log_scale=f_M_closed(zeta, omega) / (b * b),
        mantissa=sd.prefactor,
    )


def newton_step_M(zeta: float, omega: complex) -> float:
    """|one Newton step| from the closed-form saddle; diagnostic only."""
    sd = saddle_M(zeta, omega)
    return abs(df_M_phase(sd.t0, zeta, omega) / d2f_M_phase(sd.t0, zeta))


# ---------------------------------------------------------------------------
# second integral
# ---------------------------------------------------------------------------

def q_regime_gap(sigma_s: float, mu: float) -> float:
    """e^{2 pi mu} - sinh^2(2 pi sigma_s); must be strictly positive."""
    return math.exp(_2PI * mu) - math.sinh(_2PI * sigma_s) ** 2


def _check_q_regime(sigma_s: float, mu: float) -> float:
    if abs(complex(sigma_s).imag) > 0 or abs(complex(mu).imag) > 0:
        raise DomainError("sigma_s and mu must be real")
    gap = q_regime_gap(float(sigma_s), float(mu))
    if gap <= REGIME_MARGIN * (1.0 + math.exp(_2PI * float(mu))):
        raise RegimeError(
            f"e^(2 pi mu) - sinh^2(2 pi sigma_s) = {gap:.3e} is not safely positive"
        )
    return gap


def f_Q_phase(t: complex, sigma_s: float, mu: float) -> complex:
    t = complex(t)
    if not -0.5 < t.imag < 0.0:
        raise DomainError("f_Q_phase needs Im t in (-1/2, 0)")
    li = (
        dilog(-math.exp(_2PI * mu))
        + dilog(-cmath.exp(_2PI * (t - sigma_s)))
        + dilog(-cmath.exp(_2PI * (t + sigma_s)))
    )
    return (
        -li / (_2PI * _I)
        + 2 * _I * _PI * mu * t
        + _PI * (t - mu)
        + 5 * _I * _PI / 12.0
    )


def g_Q(t: complex, mu: float) -> complex:
    return cmath.exp(_PI * (complex(t) - mu))


def df_Q_phase(t: complex, sigma_s: float, mu: float) -> complex:
    t = complex(t)
    return (
        -_I * principal_log(cmath.exp(_2PI * (t - sigma_s)) + 1.0)
        - _I * principal_log(cmath.exp(_2PI * (t + sigma_s)) + 1.0)
        + 2 * _I * _PI * mu
        + _PI
    )


def d2f_Q_phase(t: complex, sigma_s: float) -> complex:
    t = complex(t)
    return -2 * _I * _PI * (
        cmath.sinh(_2PI * t) / (math.cosh(_2PI * sigma_s) + cmath.cosh(_2PI * t)) + 1.0
    )


def saddle_Q(sigma_s: float, mu: float) -> SaddleData:
    gap = _check_q_regime(sigma_s, mu)
    root = math.sqrt(gap)
    z_minus = -math.cosh(_2PI * sigma_s) - 1j * root
    t0 = principal_log(z_minus) / _2PI
    e2mu = math.exp(-_2PI * mu)
    fpp = (
        -4 * _PI * e2mu * math.cosh(_2PI * sigma_s) * root
        + 4j * _PI * (e2mu * math.sinh(_2PI * sigma_s) ** 2 - 1.0)
    )
    alpha0 = -0.5 * cmath.phase(-fpp)
    pref = cmath.exp(0.25j * _PI) / (math.sqrt(2.0) * gap ** 0.25)
    return SaddleData(
        t0=t0,
        f_at_t0=f_Q_phase(t0, sigma_s, mu),
        fpp_at_t0=fpp,
        alpha0=alpha0,
        prefactor=pref,
    )


def f_Q_closed(sigma_s: float, mu: float) -> complex:
    gap = _check_q_regime(sigma_s, mu)
    root = math.sqrt(gap)
    plus = math.cosh(_2PI * sigma_s) + 1j * root        # = -z_-
    li = (
        dilog(-math.exp(_2PI * mu))
        + dilog(math.exp(-_2PI * sigma_s) * plus)
        + dilog(math.exp(_2PI * sigma_s) * plus)
    )
    return (
        -li / (_2PI * _I)
        + (0.5 + 1j * mu) * principal_log(-plus)
        - _PI * mu
        + 5 * _I * _PI / 12.0
    )


def asym_Q(b: float, sigma_s: float, mu: float) -> AsymptoticPrediction:
    if b <= 0:
        raise DomainError("b must be positive")
    sd = saddle_Q(sigma_s, mu)
    return AsymptoticPrediction(
        log_scale=f_Q_closed(sigma_s, mu) / (b * b),
        mantissa=sd.prefactor,
    )


def newton_step_Q(sigma_s: float, mu: float) -> float:
    sd = saddle_Q(sigma_s, mu)
    return abs(df_Q_phase(sd.t0, sigma_s, mu) / d2f_Q_phase(sd.t0, sigma_s))
