"""Ruijsenaars' hyperbolic gamma function s_b inside its strip.

The function is defined for |Im z| < Q/2, Q = b + 1/b, by

    ln s_b(z) = i * int_0^inf [ sin(2 y z) / (2 sinh(b y) sinh(y/b)) - z/y ] dy/y.

Everything here evaluates a slightly more general two-period integral

    L(a, c; z) = i * int_0^inf [ sin(2 y z) / (2 sinh(a y) sinh(c y)) - z/(a c y) ] dy/y

with ln s_b(z) = L(b, 1/b; z) and, after the substitution y -> b y,
ln s_b(z/b) = L(1, b^2; z).  The scaled form is the one used on contours:
its integrand oscillates at frequency 2|z| rather than 2|z|/b, so it stays
usable for small b.

Numerical scheme (per the fixed defaults printed by the CLI):

* the integrand of L has a removable singularity at y = 0; we integrate on
  [y0, Y] with y0 = 1e-3 (shrunk if |z| is huge) and add the Taylor
  correction of the integrand through cubic order on [0, y0],
* the y > Y tail of the -z/(acy^2) counterterm is added exactly (= -z/(acY)),
  while the sinh part is truncated where its envelope 2 e^{-rho y}/y with
  rho = a + c - 2|Im z| falls below tol/100,
* composite Gauss-Legendre panels on [y0, Y], panel width capped by the
  oscillation scale; panels are halved until two refinements agree to tol/4.

Cancellation control: for (a+c) y <= 0.9 the bracket is assembled from the
exact split

    bracket = z (a c y^2 - SS) / (a c y SS) + (sin(2yz) - 2yz) / (2 SS),

with SS = sinh(ay) sinh(cy) and the small factors evaluated by series; for
large (a+c) y the 1/SS factor is evaluated in exponential form so nothing
overflows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import StripError, ToleranceError
from .special_functions import BernoulliTable, dilog, polylog_nonpos

__all__ = [
    "HypGammaParams",
    "LatticePoint",
    "ln_sb",
    "ln_sb_scaled",
    "semiclassical_ln_sb",
    "lattice",
]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class HypGammaParams:
    """Deformation parameter b > 0 with the derived strip data."""

    b: float

    def __post_init__(self):
        if not self.b > 0:
            raise ValueError("b must be positive")

    @property
    def Q(self) -> float:
        return self.b + 1.0 / self.b

    @property
    def strip_half_width(self) -> float:
        return 0.5 * self.Q


@dataclass(frozen=True)
class LatticePoint:
    m: int
    l: int
    kind: str                 # "zero" | "pole"
    location: complex
    multiplicity: int


# ---------------------------------------------------------------------------
# core quadrature
# ---------------------------------------------------------------------------

_LEG_CACHE: dict[int, tuple] = {}


def _leggauss(n: int):
    if n not in _LEG_CACHE:
        _LEG_CACHE[n] = np.polynomial.legendre.leggauss(n)
    return _LEG_CACHE[n]


# (a c y^2 - SS)/y^4 series coefficients: -(P^{2k} - M^{2k}) y^{2k-4}/(2 (2k)!)
_NUM_KMAX = 11


def _ss_and_num(ys, a: float, c: float):
    """sinh(ay) sinh(cy) and (a c y^2 - that), stably, per y node."""
    P, M, ac = a + c, abs(a - c), a * c
    ss = np.empty_like(ys)
    num = np.empty_like(ys)
    small = P * ys <= 0.9
    if np.any(small):
        y2 = ys[small] ** 2
        acc = np.zeros_like(y2)
        p2k, m2k = P * P, M * M
        for k in range(2, _NUM_KMAX):
            p2k *= P * P
            m2k *= M * M
            acc += (p2k - m2k) * y2 ** k / (2.0 * math.factorial(2 * k))
        num[small] = -acc
        ss[small] = ac * y2 - num[small]
    big = ~small
    if np.any(big):
        yb = ys[big]
        ssb = 0.5 * (np.cosh(np.minimum(P * yb, 700.0)) - np.cosh(M * yb))
        ss[big] = ssb
        num[big] = ac * yb ** 2 - ssb
    return ss, num


def _sin_minus_lin(w):
    """sin(w) - w, using the odd series where |w| is small."""
    out = np.sin(w) - w
    small = np.abs(w) <= 0.8
    if np.any(small):
        ws = w[small]
        w2 = ws * ws
        acc = np.zeros_like(ws)
        term = -ws * w2 / 6.0
        k = 1
        while True:
            acc = acc + term
            if np.all(np.abs(term) < 1e-19 * (1.0 + np.abs(acc))) or k > 12:
                break
            k += 1
            term = term * (-w2) / ((2 * k) * (2 * k + 1))
        out[small] = acc
    return out


def _bracket_matrix(ys, zs, a: float, c: float):
    """Integrand of L (dy measure) as a (len(ys), len(zs)) matrix."""
    P, ac = a + c, a * c
    y = ys[:, None]
    z = zs[None, :]
    out = np.empty((ys.size, zs.size), dtype=complex)

    expzone = P * ys > 45.0
    mid = ~expzone
    if np.any(mid):
        ym = ys[mid][:, None]
        ss, num = _ss_and_num(ys[mid], a, c)
        ss = ss[:, None]
        num = num[:, None]
        w = 2.0 * ym * z
        s = _sin_minus_lin(w)
        out[mid, :] = (z * num / (ac * ym * ss) + s / (2.0 * ss)) / ym
    if np.any(expzone):
        M = abs(a - c)
        ye = ys[expzone][:, None]
        # SS e^{-Py} without overflow
        ss_exp = 0.25 * (1.0 + np.exp(-2.0 * P * ye)) \
            - 0.25 * (np.exp(-(P - M) * ye) + np.exp(-(P + M) * ye))
        ep = np.exp(2j * ye * z - P * ye)
        em = np.exp(-2j * ye * z - P * ye)
        sin_term = (ep - em) / (4j * ss_exp * ye)
        out[expzone, :] = (sin_term - z / (ac * ye)) / ye
    return out


def _ln_double_gamma(a: float, c: float, zs, tol: float):
    """L(a, c; z) for an array of z sharing one quadrature grid."""
    zarr = np.atleast_1d(np.asarray(zs, dtype=complex))
    flat = zarr.ravel()
    im_max = float(np.max(np.abs(flat.imag))) if flat.size else 0.0
    re_max = float(np.max(np.abs(flat.real))) if flat.size else 0.0
    zbig = float(np.max(np.abs(flat))) if flat.size else 0.0
    P, M, ac = a + c, abs(a - c), a * c

    rho = P - 2.0 * im_max
    if rho <= 1e-12:
        raise StripError(
            f"max |Im z| = {im_max:.6g} reaches the strip bound {P / 2:.6g}"
        )

    # truncation point: envelope 2 e^{-rho y}/y below tol/100, and far enough
    # out that cosh(My) <= cosh(Py)/2 so the envelope bound applies
    tail = max(tol, 1e-15) / 100.0
    Y = math.log(2.0 / tail) / rho
    for _ in range(3):
        Y = math.log(2.0 / (tail * rho * Y)) / rho
    if M < P:  # always true; guard y_c for nearly equal periods
        Y = max(Y, 1.05 * math.log(4.0) / (P - M))
    y0 = min(1e-3, 0.1 / (1.0 + zbig))

    # Taylor correction of the integrand on [0, y0] through cubic order
    v2 = (a * a + c * c) / 6.0
    v4 = (a ** 4 + c ** 4) / 120.0 + (a * c) ** 2 / 36.0
    z2 = flat * flat
    c1 = -(flat / ac) * (v2 + (2.0 / 3.0) * z2)
    c3 = (flat / ac) * ((2.0 / 15.0) * z2 * z2 + (2.0 / 3.0) * z2 * v2 + v2 * v2 - v4)
    head = c1 * y0 + c3 * y0 ** 3 / 3.0

    base_w = min(1.5, 60.0 / (1.0 + 2.0 * re_max))
    deg = 24
    prev = None
    for halving in range(5):
        w = base_w / (2 ** halving)
        n_panels = int(math.ceil((Y - y0) / w))
        xg, wg = _leggauss(deg)
        edges = np.linspace(y0, Y, n_panels + 1)
        half = 0.5 * (edges[1:] - edges[:-1])
        mids = 0.5 * (edges[1:] + edges[:-1])
        ys = (mids[:, None] + half[:, None] * xg[None, :]).ravel()
        ws = (half[:, None] * wg[None, :]).ravel()
        integral = np.zeros(flat.size, dtype=complex)
        chunk = max(1, int(4e6 // max(ys.size, 1)))
        for i in range(0, flat.size, chunk):
            fm = _bracket_matrix(ys, flat[i:i + chunk], a, c)
            integral[i:i + chunk] = ws @ fm
        if prev is not None and float(np.max(np.abs(integral - prev))) <= 0.25 * tol:
            prev = integral
            break
        prev = integral
    else:
        raise ToleranceError(
            f"s_b quadrature did not reach tol={tol:g} after panel refinement"
        )

    result = 1j * (prev + head - flat / (ac * Y))
    result = result.reshape(zarr.shape)
    if np.ndim(zs) == 0:
        return complex(result[()])
    return result


# ---------------------------------------------------------------------------
# public evaluators
# ---------------------------------------------------------------------------

def ln_sb(params: HypGammaParams, z, tol: float = 1e-10):
    """ln s_b(z) from the defining integral, |Im z| < Q/2.

    The log is obtained by integrating, never by re-extracting the argument
    of an exponential, so it is single valued and continuous on the strip.
    Absolute error <= tol.  Accepts a scalar or an ndarray of z.
    """
    zarr = np.asarray(z, dtype=complex)
    margin = 1e-6 * params.Q
    if np.any(np.abs(zarr.imag) >= params.strip_half_width - margin):
        raise StripError(
            f"|Im z| must stay below Q/2 = {params.strip_half_width:.6g} "
            f"(margin {margin:.2g})"
        )
    return _ln_double_gamma(params.b, 1.0 / params.b, z, tol)


def ln_sb_scaled(params: HypGammaParams, z, tol: float = 1e-10):
    """ln s_b(z/b) via the substituted integral

        i * int_0^inf [ sin(2 u z) / (2 sinh(u) sinh(b^2 u)) - z/(b^2 u) ] du/u,

    valid for |Im z| < (1 + b^2)/2 and numerically stable down to small b
    where the unsubstituted integrand oscillates at frequency 2|z|/b.
    """
    zarr = np.asarray(z, dtype=complex)
    half = 0.5 * (1.0 + params.b ** 2)
    margin = 2e-6 * half
    if np.any(np.abs(zarr.imag) >= half - margin):
        raise StripError(
            f"|Im z| must stay below (1+b^2)/2 = {half:.6g} for the scaled form"
        )
    return _ln_double_gamma(1.0, params.b ** 2, z, tol)


def semiclassical_ln_sb(params: HypGammaParams, z, N: int = 1):
    """Partial sum through n = N of the small-b expansion of ln s_b(z/b):

        pi i/2 (z/b)^2 + pi i/24 (b^2 + 1/b^2)
          - sum_{n=0}^{N} (1 - 2^{2n-1}) B_{2n}/(2n)! Li_{2-2n}(-e^{2 pi z}) (pi i b^2)^{2n-1}

    The n = 0 term uses the dilogarithm, the rest the rational polylogarithms
    of non-positive order.  The remainder is O(b^{4N+2}) uniformly on
    |Im z| <= 1/2 - delta.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    z = complex(z)
    if abs(z.imag) >= 0.5:
        raise StripError("semiclassical expansion needs |Im z| < 1/2")
    b = params.b
    table = BernoulliTable(N)
    arg = -np.exp(_TWO_PI * z)
    total = 0.5j * math.pi * (z / b) ** 2 + 1j * math.pi / 24.0 * (b ** 2 + b ** -2)
    pib2 = 1j * math.pi * b * b
    for n in range(N + 1):
        coeff = (1.0 - 2.0 ** (2 * n - 1)) * float(table.b2n(n)) / math.factorial(2 * n)
        li = dilog(arg) if n == 0 else polylog_nonpos(2 * n - 2, arg)
        total -= coeff * li * pib2 ** (2 * n - 1)
    return complex(total)


# ---------------------------------------------------------------------------
# zero/pole lattice
# ---------------------------------------------------------------------------

_LATTICE_BOUND = 64


def lattice(params: HypGammaParams, m: int, l: int) -> tuple[LatticePoint, LatticePoint]:
    """Zero/pole pair z_{m,l} = iQ/2 + i(mb + l/b) and its negative.

    Multiplicity counts the coincidences m'b + l'/b = mb + l/b over indices
    m', l' up to max(64, m, l); coincidences outside that box are missed,
    which is a documented limitation.
    """
    if m < 0 or l < 0:
        raise ValueError("lattice indices must be nonnegative")
    b = params.b
    value = m * b + l / b
    bound = max(_LATTICE_BOUND, m, l)
    tol = 1e-9 * (1.0 + value)
    mult = 0
    for mp in range(bound + 1):
        rest = value - mp * b
        if rest < -tol:
            break
        lp = round(rest * b)
        if 0 <= lp <= bound and abs(mp * b + lp / b - value) <= tol:
            mult += 1
    loc = 1j * (params.strip_half_width + value)
    zero = LatticePoint(m, l, "zero", loc, mult)
    pole = LatticePoint(m, l, "pole", -loc, mult)
    return zero, pole
