"""Painleve I and III_3 generating functions tied to the saddle exponents.

The Painleve I generating function is characterized by

    dY/dzeta  = ln(1 - e^{2 i pi (zeta + omega)}),
    dY/domega = ln((1 - e^{2 i pi (zeta + omega)}) / (1 - e^{2 i pi omega})),

and is realized here, up to the additive constant fixed below, as

    Y(zeta, omega) = f_M(i zeta + i/2, i omega - i/2) + 2 i pi zeta omega
                     + i pi zeta (zeta - 1).

Only the derivatives of Y are contract-bearing; the constant is whatever the
composition above produces.

The Painleve III_3 generating function W(sigma, nu) is defined through
8 pi^2 W = Li2(-e^{2 i pi (sigma + eta - i nu/2)}) + Li2(-e^{-2 i pi (sigma + eta + i nu/2)})
- (2 pi eta)^2 + (pi nu)^2 with eta = arcsin(e^{pi nu} sin(2 pi sigma))/(2 pi),
principal branches in the reference regime 0 < eta < sigma < 1/4, nu < 0.
At the rotated point (i sigma_s, -mu - i/2) relevant to the second integral
it collapses, for e^{2 pi mu} > sinh^2(2 pi sigma_s), to the closed form

    W = [Li2(1/(s z + 1)) + Li2(1/(z/s + 1))]/(8 pi^2) + mu^2/8 + i mu/8
        - 1/32 + ln^2(i e^{-pi mu} (z + s))/(8 pi^2),

with z = -cosh(2 pi sigma_s) - i sqrt(e^{2 pi mu} - sinh^2(2 pi sigma_s)) and
s = e^{2 pi sigma_s}.  W elsewhere would require analytic continuation along
a chosen path and is out of scope; `homotopy_branch_track` replays the one
continuation used to derive the closed form and checks that no branch cut is
crossed along it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError
from .reports import VerificationReport
from .semiclassical import f_Q_closed, f_M_closed, _check_q_regime
from .special_functions import arcsin_principal, dilog, principal_log

__all__ = [
    "PIPoint", "PIII3Point",
    "Y_value", "Y", "eta", "W_rotated",
    "check_PI_generating", "fw_identity_residual", "homotopy_branch_track",
]

_PI = math.pi
_2PI = 2.0 * math.pi

#: finite-difference default; Richardson check runs at h/2
FD_STEP = 1e-4


@dataclass(frozen=True)
class PIPoint:
    """Point with zeta on -1/2 + iR and Re omega in (1/2, 1)."""

    zeta: complex
    omega: complex

    def __post_init__(self):
        if abs(self.zeta.real + 0.5) > 1e-9:
            raise DomainError("zeta must lie on the line Re zeta = -1/2")
        if not 0.5 < self.omega.real < 1.0:
            raise DomainError("need Re omega in (1/2, 1)")


@dataclass(frozen=True)
class PIII3Point:
    sigma_s: float
    mu: float

    def __post_init__(self):
        _check_q_regime(self.sigma_s, self.mu)


def Y_value(zeta: complex, omega: complex) -> complex:
    """The composite generating function, lenient in its arguments.

    Finite-difference probes step slightly off the line Re zeta = -1/2;
    the closed form continues analytically there.
    """
    zeta, omega = complex(zeta), complex(omega)
    mapped = f_M_closed(1j * zeta + 0.5j, 1j * omega - 0.5j)
    return mapped + 2j * _PI * zeta * omega + 1j * _PI * zeta * (zeta - 1.0)


def Y(p: PIPoint) -> complex:
    return Y_value(p.zeta, p.omega)


def eta(sigma: complex, nu: complex) -> complex:
    """eta(sigma, nu) = arcsin(e^{pi nu} sin(2 pi sigma)) / (2 pi), principal branch."""
    return arcsin_principal(cmath.exp(_PI * nu) * cmath.sin(_2PI * sigma)) / _2PI


def W_rotated(sigma_s: float, mu: float) -> complex:
    """W(i sigma_s, -mu - i/2) by the one-saddle-regime closed form."""
    gap = _check_q_regime(sigma_s, mu)
    root = math.sqrt(gap)
    s = math.exp(_2PI * sigma_s)
    z = -math.cosh(_2PI * sigma_s) - 1j * root
    eight_pi2 = 8.0 * _PI * _PI
    return (
        (dilog(1.0 / (s * z + 1.0)) + dilog(1.0 / (z / s + 1.0))) / eight_pi2
        + mu * mu / 8.0
        + 1j * mu / 8.0
        - 1.0 / 32.0
        + principal_log(1j * math.exp(-_PI * mu) * (z + s)) ** 2 / eight_pi2
    )


def fw_identity_residual(sigma_s: float, mu: float) -> float:
    """|f_Q - (4 i pi W_rot - Li2(-e^{2 pi mu})/(2 pi i) - 2 i pi sigma_s^2 + i pi/4)|."""
    rhs = (
        4j * _PI * W_rotated(sigma_s, mu)
        - dilog(-math.exp(_2PI * mu)) / (_2PI * 1j)
        - 2j * _PI * sigma_s ** 2
        + 0.25j * _PI
    )
    return abs(f_Q_closed(sigma_s, mu) - rhs)


# ---------------------------------------------------------------------------
# generating-function ODE residuals
# ---------------------------------------------------------------------------

def _pi_ode_residuals(zeta: complex, omega: complex, h: float, y_fn) -> tuple[float, float]:
    dz = (y_fn(zeta + h, omega) - y_fn(zeta - h, omega)) / (2.0 * h)
    dw = (y_fn(zeta, omega + h) - y_fn(zeta, omega - h)) / (2.0 * h)
    e_zw = cmath.exp(2j * _PI * (zeta + omega))
    e_w = cmath.exp(2j * _PI * omega)
    rz = abs(dz - principal_log(1.0 - e_zw))
    rw = abs(dw - principal_log((1.0 - e_zw) / (1.0 - e_w)))
    return rz, rw


def check_PI_generating(p: PIPoint, h: float = FD_STEP, y_fn=None) -> VerificationReport:
    """Central-difference residuals of the two defining ODEs at p.

    The report's residual is the worse of the zeta and omega equations; the
    tolerance is the O(h^2) budget 10 h^2.  `y_fn` may replace Y_value (used
    to demonstrate that an injected defect is detected).
    """
    if y_fn is None:
        y_fn = Y_value
    rz, rw = _pi_ode_residuals(p.zeta, p.omega, h, y_fn)
    return VerificationReport(
        name="pi_generating_odes",
        parameters={"zeta": p.zeta, "omega": p.omega, "h": h,
                    "residual_zeta": rz, "residual_omega": rw},
        residual=max(rz, rw),
        tolerance=10.0 * h * h,
    )


# ---------------------------------------------------------------------------
# branch-tracking diagnostic for the continuation behind W_rotated
# ---------------------------------------------------------------------------

def _eta_alpha_beta(alpha: float, beta: float, sigma: float, nu: float) -> complex:
    arg = cmath.exp(_PI * (nu - 0.5j * beta)) * cmath.sin(_2PI * cmath.exp(0.5j * _PI * alpha) * sigma)
    return arcsin_principal(arg) / _2PI


def _w_alpha_beta(alpha: float, beta: float, sigma: float, nu: float) -> complex:
    sig = cmath.exp(0.5j * _PI * alpha) * sigma
    nub = nu - 0.5j * beta
    et = _eta_alpha_beta(alpha, beta, sigma, nu)
    a1 = -cmath.exp(2j * _PI * (sig + et - 0.5j * nub))
    a2 = -cmath.exp(-2j * _PI * (sig + et + 0.5j * nub))
    val = dilog(a1) + dilog(a2) - (_2PI * et) ** 2 + (_PI * nub) ** 2
    return val / (8.0 * _PI * _PI)


def homotopy_branch_track(sigma: float = 0.2, nu: float = -1.0,
                          steps: int = 200) -> VerificationReport:
    """Track the rotation (alpha 0->1) then the shift (beta 0->1) at (sigma, nu).

    Checks, along the whole path, that the arcsin argument and both
    dilogarithm arguments stay inside the open unit disk (hence never cross
    a branch cut), and that the endpoint reproduces W_rotated(sigma, -nu).
    The residual reported is the endpoint mismatch; the unit-disk margin is
    carried in the parameters.
    """
    path = [(a / steps, 0.0) for a in range(steps + 1)]
    path += [(1.0, b / steps) for b in range(1, steps + 1)]
    min_margin = math.inf
    prev_eta = None
    max_jump = 0.0
    for alpha, beta in path:
        sig = cmath.exp(0.5j * _PI * alpha) * sigma
        nub = nu - 0.5j * beta
        et = _eta_alpha_beta(alpha, beta, sigma, nu)
        arcsin_arg = cmath.exp(_PI * nub) * cmath.sin(_2PI * sig)
        a1 = -cmath.exp(2j * _PI * (sig + et - 0.5j * nub))
        a2 = -cmath.exp(-2j * _PI * (sig + et + 0.5j * nub))
        min_margin = min(min_margin,
                         1.0 - abs(arcsin_arg), 1.0 - abs(a1), 1.0 - abs(a2))
        if prev_eta is not None:
            max_jump = max(max_jump, abs(et - prev_eta))
        prev_eta = et
    endpoint = _w_alpha_beta(1.0, 1.0, sigma, nu)
    mismatch = abs(endpoint - W_rotated(sigma, -nu))
    ok = min_margin > 0.0 and max_jump < 0.05
    return VerificationReport(
        name="w_homotopy_branch_track",
        parameters={"sigma": sigma, "nu": nu, "steps": steps,
                    "min_unit_disk_margin": min_margin, "max_eta_jump": max_jump,
                    "path_ok": ok},
        residual=mismatch if ok else math.inf,
        tolerance=1e-10,
    )
