"""Contour quadrature for the two q-Askey integrals in scaled variables.

With x = t/b the first integral reads

    M(b, zeta/b, omega/b) = int_{Im t = h} exp(L(t)) dt,
    L(t) = ln s_b(zeta/b) + i pi (t/b)(zeta/b - iQ/2 + 2 omega/b)
           + ln s_b((t - zeta)/b) - ln s_b((t + i(1+b^2)/2)/b) - ln b,

where every log comes straight from the defining integral of s_b, so L is
single valued along the contour.  Valid heights separate the two pole
sequences of the integrand:

    Im zeta - (1 + b^2)/2  <  h  <  0.

The second integral is handled the same way with

    L(t) = ln P + [-i pi t^2 + 2 i pi t mu]/b^2 + pi t Q/b
           + ln s_b((t + sigma_s)/b) + ln s_b((t - sigma_s)/b) - ln b,
    ln P = i pi (1/6 + 7 Q^2/24 - mu^2/(2 b^2) + i mu Q / b - sigma_s^2/b^2)
           + ln s_b(mu/b),

on heights -(1+b^2)/2 < h < -(1+b^2)/4.

Both evaluators return (log_scale, mantissa) with value = mantissa *
exp(log_scale); the default log_scale is the saddle exponent f/b^2 whenever
the closed form applies, otherwise the maximum of Re L seen on the contour.

The truncation window grows until Re L drops tail_tol decades below its
on-contour maximum; nodes are composite Gauss-Legendre panels (or
Clenshaw-Curtis, kept as an independent second family for cross-checks),
halved until two refinements agree to quad_tol/4.  Node evaluation is a
data-parallel map with a fixed summation order, so a fixed config gives
bit-identical results.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError, StripError, ToleranceError
from .hyperbolic_gamma import HypGammaParams, ln_sb_scaled
from .special_functions import dilog
from . import semiclassical as sc

__all__ = [
    "ContourSpec", "EvalConfig",
    "m_log_integrand", "q_log_integrand",
    "eval_M", "eval_Q",
    "correction_E", "correction_H",
    "default_contour_M", "default_contour_Q",
]

_PI = math.pi
_2PI = 2.0 * math.pi
_LN10 = math.log(10.0)


@dataclass(frozen=True)
class ContourSpec:
    """Horizontal line Im t = height with truncation window and node budget."""

    height: float
    window: tuple | None = None      # (t_min, t_max) on the real axis; None = auto
    nodes: int = 16                  # Gauss-Legendre degree per panel
    tail_tol: float = 12.0           # decades below the contour max at truncation


@dataclass(frozen=True)
class EvalConfig:
    quad_tol: float = 1e-8
    strip_margin: float = 1e-3       # keep heights this far from strip edges
    normalization: complex | None = None   # log_scale; None = automatic
    node_rule: str = "legendre"      # "legendre" | "clenshaw_curtis"

    @property
    def ln_tol(self) -> float:
        # absolute tolerance for each ln s_b factor feeding the integrand
        return float(np.clip(0.01 * self.quad_tol, 1e-13, 1e-9))


def default_contour_M(b: float, zeta=0.0) -> ContourSpec:
    """Mid-strip height between the pole sequences (reduces to -1/4 as b -> 0)."""
    half = 0.5 * (1.0 + b * b)
    return ContourSpec(height=0.5 * (complex(zeta).imag - half))


def default_contour_Q(b: float) -> ContourSpec:
    return ContourSpec(height=-0.375 * (1.0 + b * b))


# ---------------------------------------------------------------------------
# log-integrands
# ---------------------------------------------------------------------------

def m_log_integrand(b: float, t, zeta: complex, omega: complex,
                    tol: float = 1e-10):
    """log of the integrand of the scaled first integral (dt measure, 1/b included).

    Scaled variables throughout: the physical arguments are zeta/b, omega/b,
    t/b.  Accepts arrays of t.  Every s_b log comes from the defining
    integral, never from re-extracting an exponential's argument, so there
    are no 2 pi i jumps along a contour.
    """
    if b <= 0:
        raise DomainError("b must be positive")
    params = HypGammaParams(b)
    zeta, omega = complex(zeta), complex(omega)
    half = 0.5 * (1.0 + b * b)
    if not abs(zeta.imag) < half:
        raise StripError("zeta outside the prefactor strip")
    if not (zeta + omega).imag > 0.0:
        raise DomainError("need Im(zeta + omega) > 0")
    if not omega.imag < half:
        raise DomainError("need Im omega < (1 + b^2)/2 in scaled variables")
    tarr = np.asarray(t, dtype=complex)
    Q = params.Q
    ln_pref = ln_sb_scaled(params, zeta, tol)
    phase = (1j * _PI * tarr / b) * (zeta / b - 0.5j * Q + 2.0 * omega / b)
    out = (
        ln_pref
        + phase
        + ln_sb_scaled(params, tarr - zeta, tol)
        - ln_sb_scaled(params, tarr + 1j * half, tol)
        - math.log(b)
    )
    return complex(out) if np.ndim(t) == 0 else out


def q_log_integrand(b: float, t, sigma_s: float, mu: float,
                    tol: float = 1e-10):
    """log of the integrand of the scaled second integral, prefactor included."""
    if b <= 0:
        raise DomainError("b must be positive")
    if abs(complex(sigma_s).imag) > 0 or abs(complex(mu).imag) > 0:
        raise DomainError("sigma_s and mu must be real")
    sigma_s, mu = float(sigma_s), float(mu)
    params = HypGammaParams(b)
    Q = params.Q
    tarr = np.asarray(t, dtype=complex)
    ln_pref = (
        1j * _PI * (1.0 / 6.0 + 7.0 * Q * Q / 24.0 - mu * mu / (2 * b * b)
                    + 1j * mu * Q / b - sigma_s ** 2 / (b * b))
        + ln_sb_scaled(params, mu, tol)
    )
    core = (
        -1j * _PI * tarr ** 2 / (b * b)
        + (2j * _PI * tarr / b) * (mu / b - 0.5j * Q)
        + ln_sb_scaled(params, tarr + sigma_s, tol)
        + ln_sb_scaled(params, tarr - sigma_s, tol)
        - math.log(b)
    )
    out = ln_pref + core
    return complex(out) if np.ndim(t) == 0 else out


# ---------------------------------------------------------------------------
# quadrature engine
# ---------------------------------------------------------------------------

def _clenshaw_curtis(n: int):
    """Nodes/weights on [-1, 1], n even (Trefethen's clencurt)."""
    if n % 2:
        n += 1
    theta = _PI * np.arange(n + 1) / n
    x = np.cos(theta)
    w = np.zeros(n + 1)
    v = np.ones(n - 1)
    for k in range(1, n // 2):
        v -= 2.0 * np.cos(2.0 * k * theta[1:-1]) / (4.0 * k * k - 1.0)
    v -= np.cos(n * theta[1:-1]) / (n * n - 1.0)
    w[0] = w[-1] = 1.0 / (n * n - 1.0)
    w[1:-1] = 2.0 * v / n
    return x, w


_RULE_CACHE: dict = {}


def _panel_rule(rule: str, n: int):
    key = (rule, n)
    if key not in _RULE_CACHE:
        if rule == "legendre":
            _RULE_CACHE[key] = np.polynomial.legendre.leggauss(n)
        elif rule == "clenshaw_curtis":
            _RULE_CACHE[key] = _clenshaw_curtis(n)
        else:
            raise ValueError(f"unknown node rule {rule!r}")
    return _RULE_CACHE[key]


def _scan_window(lnI, center: float, height: float, tail_drop: float,
                 step: float, hard_limit: float = 160.0):
    """Expand a coarse scan from the center until Re lnI drops tail_drop under its max."""
    xs = list(np.arange(center - 8 * step, center + 8 * step + step / 2, step))
    vals = list(lnI(np.asarray(xs) + 1j * height))
    res = [v.real for v in vals]

    def edge_done(side):
        m = max(res)
        k = 3  # require the drop on a few consecutive edge samples
        seg = res[:k] if side == "lo" else res[-k:]
        return all(v <= m - tail_drop for v in seg)

    guard = 0
    while not (edge_done("lo") and edge_done("hi")):
        guard += 1
        if guard > 200 or xs[-1] - xs[0] > 2 * hard_limit:
            raise ToleranceError(
                "contour window exceeded the hard limit; integrand decays too slowly"
            )
        if not edge_done("lo"):
            new = list(np.arange(xs[0] - 8 * step, xs[0], step))
            vs = list(lnI(np.asarray(new) + 1j * height))
            xs = new + xs
            vals = vs + vals
            res = [v.real for v in vals]
        if not edge_done("hi"):
            new = list(np.arange(xs[-1] + step, xs[-1] + 8 * step + step / 2, step))
            vs = list(lnI(np.asarray(new) + 1j * height))
            xs = xs + new
            vals = vals + vs
            res = [v.real for v in vals]

    m = max(res)
    lo = next(x for x, v in zip(xs, res) if v > m - tail_drop)
    hi = next(x for x, v in zip(reversed(xs), reversed(res)) if v > m - tail_drop)
    slopes = [abs(v2 - v1) / step for v1, v2 in zip(vals, vals[1:])]
    return (lo - 2 * step, hi + 2 * step), m, max(slopes) if slopes else 1.0


def _integrate_on_contour(lnI, contour: ContourSpec, cfg: EvalConfig,
                          b: float, center: float):
    """Integrate exp(lnI(t)) dt over Im t = height; returns (log_scale, mantissa, info)."""
    height = contour.height
    tail_drop = contour.tail_tol * _LN10
    scan_step = min(0.25, max(b / 3.0, 0.02))
    if contour.window is None:
        window, scan_max, slope = _scan_window(lnI, center, height, tail_drop, scan_step)
    else:
        window = tuple(contour.window)
        xs = np.linspace(window[0], window[1], 129)
        vals = lnI(xs + 1j * height)
        scan_max = float(np.max(vals.real))
        slope = float(np.max(np.abs(np.diff(vals)))) / ((window[1] - window[0]) / 128)

    if cfg.normalization is not None:
        log_scale = complex(cfg.normalization)
    else:
        log_scale = complex(scan_max)

    lo, hi = window
    width = hi - lo
    base_w = min(0.6, b / 2.0, 40.0 / (1.0 + slope), width / 8.0)
    deg = max(8, int(contour.nodes))
    mantissa = None
    info = {"height": height, "window": window, "rule": cfg.node_rule,
            "tail_tol": contour.tail_tol, "quad_tol": cfg.quad_tol}
    for halving in range(6):
        w = base_w / 2 ** halving
        n_panels = int(math.ceil(width / w))
        if n_panels * deg > 600_000:
            raise ToleranceError("node budget exceeded on the contour")
        xg, wg = _panel_rule(cfg.node_rule, deg)
        edges = np.linspace(lo, hi, n_panels + 1)
        half = 0.5 * (edges[1:] - edges[:-1])[:, None]
        mids = 0.5 * (edges[1:] + edges[:-1])[:, None]
        ts = (mids + half * xg[None, :]).ravel() + 1j * height
        ws = (half * wg[None, :]).ravel()
        lv = lnI(ts)
        shifted = lv - log_scale
        mre = float(np.max(shifted.real))
        if mre > 700.0:
            raise OverflowError(
                f"mantissa overflows: max Re(lnI - log_scale) = {mre:.1f}"
            )
        vals = np.exp(shifted)
        new = complex(ws @ vals)
        jumps = np.abs(np.diff(lv.imag))
        info["max_imag_jump"] = float(np.max(jumps)) if jumps.size else 0.0
        info["n_nodes"] = ts.size
        if mantissa is not None and abs(new - mantissa) <= 0.25 * cfg.quad_tol * abs(new):
            mantissa = new
            break
        mantissa = new
    else:
        raise ToleranceError(
            f"contour quadrature did not converge to quad_tol={cfg.quad_tol:g}"
        )
    return log_scale, mantissa, info


# ---------------------------------------------------------------------------
# evaluators
# ---------------------------------------------------------------------------

def eval_M(b: float, zeta, omega, contour: ContourSpec | None = None,
           cfg: EvalConfig | None = None, return_info: bool = False):
    """M(b, zeta/b, omega/b) = mantissa * exp(log_scale) by contour quadrature.

    Scaled variables: zeta may be mildly complex (|Im zeta| below the strip
    half-width (1+b^2)/2); the admissible heights are then
    Im zeta - (1+b^2)/2 < h < 0.  Convergence needs Im(zeta+omega) > 0 and
    Im omega < (1+b^2)/2.
    """
    cfg = cfg or EvalConfig()
    zeta, omega = complex(zeta), complex(omega)
    contour = contour or default_contour_M(b, zeta)
    half = 0.5 * (1.0 + b * b)
    h = contour.height
    lo_h = zeta.imag - half
    if not lo_h + cfg.strip_margin <= h <= -cfg.strip_margin:
        raise DomainError(
            f"contour height {h:.4g} outside the legal strip "
            f"({lo_h:.4g}, 0) for Im zeta = {zeta.imag:.4g}"
        )

    def lnI(ts):
        return m_log_integrand(b, ts, zeta, omega, tol=cfg.ln_tol)

    norm_cfg = cfg
    if cfg.normalization is None:
        try:
            norm = sc.f_M_closed(zeta, omega) / (b * b) if (
                abs(zeta.imag) <= 1e-12 and 0.0 < omega.imag < 0.5
            ) else None
        except Exception:
            norm = None
        if norm is not None:
            norm_cfg = replace(cfg, normalization=norm)

    center = 0.0
    try:
        if abs(zeta.imag) <= 1e-12 and 0.0 < omega.imag < 0.5:
            center = sc.saddle_M(zeta.real, omega).t0.real
    except Exception:
        center = 0.0

    log_scale, mantissa, info = _integrate_on_contour(lnI, contour, norm_cfg, b, center)
    if return_info:
        return log_scale, mantissa, info
    return log_scale, mantissa


def eval_Q(b: float, sigma_s: float, mu: float, contour: ContourSpec | None = None,
           cfg: EvalConfig | None = None, return_info: bool = False):
    """Q(b, sigma_s/b, mu/b) = mantissa * exp(log_scale); sigma_s, mu real."""
    cfg = cfg or EvalConfig()
    contour = contour or default_contour_Q(b)
    half = 0.5 * (1.0 + b * b)
    h = contour.height
    if not -half + cfg.strip_margin <= h <= -0.5 * half - cfg.strip_margin:
        raise DomainError(
            f"contour height {h:.4g} outside ({-half:.4g}, {-0.5 * half:.4g})"
        )

    def lnI(ts):
        return q_log_integrand(b, ts, sigma_s, mu, tol=cfg.ln_tol)

    norm_cfg = cfg
    center = 0.0
    if cfg.normalization is None:
        try:
            norm_cfg = replace(
                cfg, normalization=sc.f_Q_closed(sigma_s, mu) / (b * b))
            center = sc.saddle_Q(sigma_s, mu).t0.real
        except Exception:
            pass

    log_scale, mantissa, info = _integrate_on_contour(lnI, contour, norm_cfg, b, center)
    if return_info:
        return log_scale, mantissa, info
    return log_scale, mantissa


# ---------------------------------------------------------------------------
# explicit correction terms of the integrand expansions
# ---------------------------------------------------------------------------

def correction_E(tau: float, t: complex, zeta: float) -> complex:
    """Subleading correction E(tau, t) of the first integrand's expansion.

    E(tau,t) = i [Li2(e^{2 pi t}) - Li2(e^{i pi tau + 2 pi t})]/(2 pi tau)
               + ln(1 - e^{2 pi t})/2
               + (i pi tau/12) [ e^{2 pi t + i pi tau}/(e^{2 pi t + i pi tau} - 1)
                                 - e^{2 pi zeta}/(e^{2 pi zeta} + 1)
                                 - e^{2 pi t}/(e^{2 pi zeta} + e^{2 pi t}) + 2 ].

    Continuous at tau = 0 with value 0.
    """
    t = complex(t)
    if not -0.5 < t.imag < 0.0:
        raise StripError("correction_E needs Im t in (-1/2, 0)")
    if not 0.0 <= tau < 1.0:
        raise DomainError("tau must lie in [0, 1)")
    if tau == 0.0:
        return 0j
    zeta = float(zeta)
    e2t = cmath.exp(_2PI * t)
    etau = cmath.exp(1j * _PI * tau + _2PI * t)
    e2z = math.exp(_2PI * zeta)
    term1 = 1j * (dilog(e2t) - dilog(etau)) / (_2PI * tau)
    term2 = 0.5 * cmath.log(1.0 - e2t)
    bracket = etau / (etau - 1.0) - e2z / (e2z + 1.0) - e2t / (e2z + e2t) + 2.0
    return term1 + term2 + (1j * _PI * tau / 12.0) * bracket


def correction_H(t: complex, sigma_s: float, mu: float) -> complex:
    """Bounded correction H(t) of the second integrand's expansion."""
    t = complex(t)
    s, m = float(sigma_s), float(mu)
    E = lambda w: cmath.exp(_2PI * w)
    numer = (
        4.0 * E(m + s) + 5.0 * E(s) + 2.0 * E(m + s + 2 * t)
        + 3.0 * E(m + 2 * s + t) + 3.0 * E(m + t)
        + 3.0 * E(s + 2 * t) + 4.0 * E(2 * s + t) + 4.0 * E(t)
    )
    denom = (E(m) + 1.0) * (E(s) + E(t)) * (E(s + t) + 1.0)
    return 1j * _PI / 12.0 * numer / denom
