"""Principal-branch elementary and polylogarithmic functions.

Branch conventions used throughout the package:

* logarithm: Im ln z in (-pi, pi].  The cut sits on the negative real axis
  and the value ON the cut is the limit from above (arg = +pi).  Complex
  powers are z**a = exp(a ln z) with this log.
* dilogarithm Li2: analytic on C minus [1, +inf); real z >= 1 is rejected.
* arcsin: cuts (-inf, -1] and [1, +inf); computed as -i ln(sqrt(1-z^2) + iz).

The dilogarithm is evaluated by mapping every point into a region where one
of two rapidly convergent series applies.  Mapping table (applied in order):

    |z| <= 0.5                    power series  sum z^k / k^2
    |z| >  1.5                    inversion     Li2(z) = -Li2(1/z) - pi^2/6 - ln^2(-z)/2
    Re z > 0.5 (0.5 < |z| <= 1.5) reflection    Li2(z) = pi^2/6 - ln z ln(1-z) - Li2(1-z)
    otherwise                     log series    Li2(z) = sum B_n u^{n+1}/(n+1)!,  u = -ln(1-z)

The log series (|u| < 2 pi) is needed because inversion and reflection alone
cannot reach the series disk from points near |z| = |1-z| = 1; the anharmonic
orbit of e^{i pi/3} never leaves the unit circle.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from dataclasses import dataclass, field

from .errors import CutError, PoleError, StripError

__all__ = [
    "principal_log",
    "principal_sqrt",
    "dilog",
    "polylog_nonpos",
    "arcsin_principal",
    "sinh_kernel_integral",
    "bernoulli_numbers",
    "BernoulliTable",
]

_PI = math.pi
_PI2_6 = _PI * _PI / 6.0


def principal_log(z: complex) -> complex:
    """Principal log with Im in (-pi, pi]; the cut value is taken from above."""
    z = complex(z)
    if z == 0:
        raise PoleError("log of zero")
    if z.real < 0.0 and z.imag == 0.0:
        # collapse -0.0j onto the +pi side of the cut
        return complex(math.log(-z.real), _PI)
    return cmath.log(z)


def principal_sqrt(z: complex) -> complex:
    """Principal square root, consistent with :func:`principal_log`."""
    return cmath.exp(0.5 * principal_log(z)) if z != 0 else 0j


# ---------------------------------------------------------------------------
# Bernoulli numbers
# ---------------------------------------------------------------------------

def bernoulli_numbers(n_max: int) -> list[Fraction]:
    """Exact Bernoulli numbers B_0..B_{n_max} from the x/(e^x - 1) recursion.

    Convention B_1 = -1/2:  sum_{j=0}^{n} C(n+1, j) B_j = 0 for n >= 1.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    bs = [Fraction(1)]
    for n in range(1, n_max + 1):
        acc = Fraction(0)
        for j in range(n):
            acc += math.comb(n + 1, j) * bs[j]
        bs.append(-acc / (n + 1))
    return bs


@dataclass(frozen=True)
class BernoulliTable:
    """Exact table B_0..B_{2N} used by the semiclassical expansion."""

    n_pairs: int
    values: list[Fraction] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "values", bernoulli_numbers(2 * self.n_pairs))

    def b2n(self, n: int) -> Fraction:
        return self.values[2 * n]


# float coefficients B_n / (n+1)! for the dilogarithm log series
_LN_SERIES_TERMS = 130
_LN_SERIES_COEFFS = [
    float(b) / math.factorial(n + 1)
    for n, b in enumerate(bernoulli_numbers(_LN_SERIES_TERMS))
]


# ---------------------------------------------------------------------------
# Dilogarithm
# ---------------------------------------------------------------------------

def _dilog_power_series(z: complex) -> complex:
    total = 0j
    term = z
    k = 1
    while True:
        total += term / (k * k)
        k += 1
        term *= z
        if abs(term) < 1e-18 * (1.0 + abs(total)):
            return total
        if k > 300:  # unreachable for |z| <= 0.5
            return total


def _dilog_log_series(z: complex) -> complex:
    u = -principal_log(1.0 - z)
    total = 0j
    upow = u
    for c in _LN_SERIES_COEFFS:
        if c != 0.0:
            term = c * upow
            total += term
            if abs(term) < 1e-18 * (1.0 + abs(total)):
                break
        upow *= u
    return total


def _dilog(z: complex) -> complex:
    a = abs(z)
    if a <= 0.5:
        return _dilog_power_series(z)
    if a > 1.5:
        lnmz = principal_log(-z)
        return -_dilog(1.0 / z) - _PI2_6 - 0.5 * lnmz * lnmz
    if z.real > 0.5:
        w = 1.0 - z
        return _PI2_6 - principal_log(z) * principal_log(w) - _dilog(w)
    return _dilog_log_series(z)


def dilog(z: complex) -> complex:
    """Principal-branch Li2(z) for z not on the cut [1, +inf).

    Relative accuracy is ~1e-14 and stays below 1e-13 for |z| up to 1e6.
    Raises CutError for real z >= 1 (the boundary value is not defined here).
    """
    z = complex(z)
    if z.imag == 0.0 and z.real >= 1.0:
        raise CutError(f"dilog argument {z.real} lies on the cut [1, +inf)")
    if z == 0:
        return 0j
    return _dilog(z)


# ---------------------------------------------------------------------------
# Polylogarithms of non-positive integer order
# ---------------------------------------------------------------------------

def _eulerian_numerators(k_max: int) -> list[list[int]]:
    """Numerator polynomials P_k with Li_{-k}(z) = P_k(z)/(1-z)^{k+1}.

    P_0 = z and P_{k+1}(z) = z [ (1-z) P_k'(z) + (k+1) P_k(z) ].
    Coefficients are exact integers (ascending powers of z).
    """
    polys = [[0, 1]]
    for k in range(k_max):
        p = polys[-1]
        dp = [i * c for i, c in enumerate(p)][1:] or [0]
        work = [0] * (len(p) + 1)
        for i, c in enumerate(dp):          # (1-z) P'
            work[i] += c
            work[i + 1] -= c
        for i, c in enumerate(p):           # + (k+1) P
            work[i] += (k + 1) * c
        shifted = [0] + work                # * z
        while len(shifted) > 1 and shifted[-1] == 0:
            shifted.pop()
        polys.append(shifted)
    return polys


_POLYLOG_POLYS = _eulerian_numerators(12)


def polylog_nonpos(k: int, z: complex) -> complex:
    """Li_{-k}(z) for integer k >= 0, via the rational closed form.

    Li_0(z) = z/(1-z) and each further order applies z d/dz once.
    Raises PoleError at z = 1.
    """
    if k < 0 or int(k) != k:
        raise ValueError("k must be a nonnegative integer")
    z = complex(z)
    if z == 1:
        raise PoleError("polylog_nonpos has a pole at z = 1")
    k = int(k)
    if k >= len(_POLYLOG_POLYS):
        _POLYLOG_POLYS.extend(
            _eulerian_numerators(k)[len(_POLYLOG_POLYS):]
        )
    num = 0j
    for c in reversed(_POLYLOG_POLYS[k]):
        num = num * z + c
    return num / (1.0 - z) ** (k + 1)


# ---------------------------------------------------------------------------
# arcsin
# ---------------------------------------------------------------------------

def arcsin_principal(z: complex) -> complex:
    """Principal arcsin via -i ln(sqrt(1-z^2) + iz).

    Odd in z, equal to the real arcsin on [-1, 1].  Raises CutError on the
    cuts (-inf, -1) and (1, +inf); the endpoints +-1 are allowed.
    """
    z = complex(z)
    if z.imag == 0.0 and abs(z.real) > 1.0:
        raise CutError(f"arcsin argument {z.real} lies on a cut")
    w = principal_sqrt(1.0 - z * z) + 1j * z
    return -1j * principal_log(w)


# ---------------------------------------------------------------------------
# Indented sinh-kernel integral
# ---------------------------------------------------------------------------

_GL_CACHE: dict[int, tuple] = {}


def _gauss_legendre(n: int):
    if n not in _GL_CACHE:
        import numpy as np

        x, w = np.polynomial.legendre.leggauss(n)
        _GL_CACHE[n] = (x, w)
    return _GL_CACHE[n]


def sinh_kernel_integral(n: int, z: complex, indent_radius: float = 1.0) -> complex:
    """Integral of e^{-2ixz} x^{2n-2} / sinh(x) over R + i0.

    The contour runs along (-inf, -r], over a radius-r semicircle above the
    origin, then along [r, +inf), with r = indent_radius in (0, pi/2).
    Requires |Im z| < 1/2 for convergence (StripError otherwise).

    Equals 2 Li_{2-2n}(-e^{2 pi z}) (pi i)^{2n-1} for integer n >= 0.
    """
    import numpy as np

    if n < 0 or int(n) != n:
        raise ValueError("n must be a nonnegative integer")
    z = complex(z)
    if abs(z.imag) >= 0.5:
        raise StripError(f"|Im z| = {abs(z.imag)} is not < 1/2")
    if not 0.0 < indent_radius < 0.5 * _PI:
        raise ValueError("indent_radius must lie in (0, pi/2)")
    r = indent_radius
    p = 2 * int(n) - 2

    def f(x):
        return np.exp(-2j * x * z) * x ** p / np.sinh(x)

    # truncation where the integrand envelope drops below 1e-18 of its peak
    rho = 1.0 - 2.0 * abs(z.imag)
    cutoff = 18.0 * math.log(10.0) + math.log(4.0)
    big = cutoff / rho
    for _ in range(3):
        big = (cutoff + max(p, 0) * math.log(max(big, 2.0))) / rho
    big = max(big, r + _PI)

    nodes, weights = _gauss_legendre(40)
    total = 0j
    # straight parts, panels of width pi
    n_panels = int(math.ceil((big - r) / _PI))
    for sgn in (-1.0, 1.0):
        for j in range(n_panels):
            lo = r + j * _PI
            hi = min(lo + _PI, big)
            mid, half = 0.5 * (hi + lo), 0.5 * (hi - lo)
            xs = sgn * (mid + half * nodes)
            total += half * np.sum(weights * f(xs))
    # clockwise semicircle above the origin: x = r e^{i theta}, theta pi -> 0
    theta = 0.5 * _PI * (nodes + 1.0)         # (0, pi)
    xs = r * np.exp(1j * theta)
    vals = f(xs) * 1j * xs                    # f(x) dx = f(x) i x dtheta
    total += -0.5 * _PI * np.sum(weights * vals)
    return complex(total)
