"""Self-contained special functions and Gauss-Legendre quadrature.

Scalar double-precision implementations with no dependency beyond numpy:
the sine and cosine integrals Si/Ci, the Clausen function Cl2, the log
gamma function, harmonic numbers, and Gauss-Legendre rules on arbitrary
finite intervals.  Everything here is a pure function; quadrature rules
are immutable once built.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "EULER_GAMMA",
    "PI",
    "DomainError",
    "QuadratureRule",
    "sin_integral",
    "cos_integral",
    "clausen2",
    "log_gamma",
    "harmonic",
    "gauss_legendre",
]

# Euler-Mascheroni constant, 16 significant digits.
EULER_GAMMA = 0.5772156649015329
PI = math.pi

# Taylor / asymptotic crossover for Si and Ci.
_SICI_SPLIT = 8.0


class DomainError(ValueError):
    """Argument outside the domain a special function is defined on."""


# ---------------------------------------------------------------------------
# Sine and cosine integrals
# ---------------------------------------------------------------------------

def _si_taylor(x: float) -> float:
    # Si(x) = sum_k (-1)^k x^(2k+1) / ((2k+1)(2k+1)!), |x| <= 8
    x2 = x * x
    term = x            # x^(2k+1)/(2k+1)! at k = 0
    total = x
    for k in range(1, 80):
        term *= -x2 / ((2 * k) * (2 * k + 1))
        d = term / (2 * k + 1)
        total += d
        if abs(d) < 1e-18:
            break
    return total


def _cin_taylor(x: float) -> float:
    # Cin(x) = sum_{k>=1} (-1)^(k+1) x^(2k) / ((2k)(2k)!);  Ci = gamma + log x - Cin
    x2 = x * x
    term = x2 / 2.0     # x^(2k)/(2k)! at k = 1
    total = term / 2.0
    for k in range(2, 80):
        term *= -x2 / ((2 * k - 1) * (2 * k))
        d = term / (2 * k)
        total += d
        if abs(d) < 1e-18:
            break
    return total


def _e1_of_ix(x: float) -> complex:
    """E1(i x) for x > 0 by modified Lentz continued fraction.

    Gives Ci(x) = -Re E1(ix) and Si(x) = pi/2 + Im E1(ix); the fraction
    converges quickly for x above the Taylor crossover.
    """
    z = 1j * x
    tiny = 1e-300
    b = z + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for k in range(1, 500):
        a = -float(k * k)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return h * np.exp(-z)


def sin_integral(x: float) -> float:
    """Si(x), the integral of sin(t)/t from 0 to x (odd in x)."""
    if not math.isfinite(x):
        raise DomainError(f"sin_integral requires finite x, got {x!r}")
    if x < 0.0:
        return -sin_integral(-x)
    if x == 0.0:
        return 0.0
    if x <= _SICI_SPLIT:
        return _si_taylor(x)
    return 0.5 * PI + _e1_of_ix(x).imag


def cos_integral(x: float) -> float:
    """Ci(x) = gamma + log x + integral of (cos t - 1)/t from 0 to x."""
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"cos_integral requires finite x > 0, got {x!r}")
    if x <= _SICI_SPLIT:
        return EULER_GAMMA + math.log(x) - _cin_taylor(x)
    return -_e1_of_ix(x).real


# ---------------------------------------------------------------------------
# Clausen function
# ---------------------------------------------------------------------------

# zeta at even integers, used by the log-endpoint-extracted Clausen series.
def _zeta_even_table(n_terms: int = 40) -> np.ndarray:
    z = np.empty(n_terms + 1)
    exact = {1: PI**2 / 6, 2: PI**4 / 90, 3: PI**6 / 945, 4: PI**8 / 9450,
             5: PI**10 / 93555}
    k = np.arange(1.0, 260.0)
    for n in range(1, n_terms + 1):
        z[n] = exact[n] if n in exact else float(np.sum(k ** (-2.0 * n)))
    return z


_ZETA_EVEN = _zeta_even_table()


def clausen2(theta: float) -> float:
    """Cl2(theta) = -integral of log|2 sin(t/2)| from 0 to theta.

    Odd and 2*pi periodic; the argument is reduced to [0, pi] and the
    series with the log endpoint singularity extracted is summed there
    (the raw Fourier series converges far too slowly near 0).
    """
    if not math.isfinite(theta):
        raise DomainError(f"clausen2 requires finite theta, got {theta!r}")
    th = math.fmod(theta, 2.0 * PI)
    if th < 0.0:
        th += 2.0 * PI
    sign = 1.0
    if th > PI:
        th = 2.0 * PI - th
        sign = -1.0
    if th == 0.0:
        return 0.0
    total = th - th * math.log(th)
    r = (th / (2.0 * PI)) ** 2
    p = r
    for n in range(1, len(_ZETA_EVEN)):
        d = _ZETA_EVEN[n] * th * p / (n * (2 * n + 1))
        total += d
        if abs(d) < 1e-18:
            break
        p *= r
    return sign * total


# ---------------------------------------------------------------------------
# Log gamma and harmonic numbers
# ---------------------------------------------------------------------------

_LANCZOS_G = 7.0
_LANCZOS_C = (
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


def log_gamma(x: float) -> float:
    """log Gamma(x) for x > 0 (Lanczos approximation, g = 7, n = 9)."""
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"log_gamma requires finite x > 0, got {x!r}")
    xx = x - 1.0
    a = _LANCZOS_C[0]
    t = xx + _LANCZOS_G + 0.5
    for i in range(1, len(_LANCZOS_C)):
        a += _LANCZOS_C[i] / (xx + i)
    return 0.5 * math.log(2.0 * PI) + (xx + 0.5) * math.log(t) - t + math.log(a)


def harmonic(k: int) -> float:
    """k-th harmonic number H_k = sum_{j<=k} 1/j, with H_0 = 0."""
    if k < 0 or k != int(k):
        raise DomainError(f"harmonic requires an integer k >= 0, got {k!r}")
    return math.fsum(1.0 / j for j in range(1, int(k) + 1))


# ---------------------------------------------------------------------------
# Gauss-Legendre quadrature
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Gauss-Legendre nodes and weights on an open interval (a, b)."""

    nodes: np.ndarray
    weights: np.ndarray
    order: int
    interval: tuple[float, float]

    def __post_init__(self):
        a, b = self.interval
        if len(self.nodes) != self.order or len(self.weights) != self.order:
            raise ValueError("rule arrays must match the stated order")
        if not (np.all(self.weights > 0.0)
                and np.all(np.diff(self.nodes) > 0.0)
                and self.nodes[0] > a and self.nodes[-1] < b):
            raise ValueError("nodes must be increasing inside (a, b) with positive weights")
        if abs(float(np.sum(self.weights)) - (b - a)) > 1e-13 * (b - a):
            raise ValueError("weights must sum to the interval length")

    def integrate(self, f) -> float:
        return float(np.sum(self.weights * f(self.nodes)))


def _legendre_and_derivative(n: int, x: np.ndarray):
    # three-term recurrence for P_n and its derivative at the points x
    p0 = np.ones_like(x)
    p1 = x.copy()
    if n == 1:
        return p1, p0
    for j in range(2, n + 1):
        p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
    dp = n * (x * p1 - p0) / (x * x - 1.0)
    return p1, dp


@lru_cache(maxsize=256)
def _reference_rule(order: int):
    # nodes of P_n on (-1, 1) by Newton iteration from the Chebyshev-like guess
    k = np.arange(1, order + 1)
    x = np.cos(PI * (k - 0.25) / (order + 0.5))
    for _ in range(100):
        p, dp = _legendre_and_derivative(order, x)
        if order == 1:
            dp = np.ones_like(x)
        dx = p / dp
        x -= dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    p, dp = _legendre_and_derivative(order, x)
    if order == 1:
        x = np.zeros(1)
        return x, np.array([2.0])
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    idx = np.argsort(x)
    return x[idx], w[idx]


def gauss_legendre(order: int, a: float, b: float) -> QuadratureRule:
    """Gauss-Legendre rule of the given order on (a, b).

    Exact for polynomials of degree <= 2*order - 1.
    """
    if order < 1 or order != int(order):
        raise ValueError(f"order must be a positive integer, got {order!r}")
    if not (math.isfinite(a) and math.isfinite(b) and a < b):
        raise ValueError(f"invalid interval ({a!r}, {b!r})")
    x, w = _reference_rule(int(order))
    nodes = 0.5 * (b - a) * x + 0.5 * (a + b)
    weights = 0.5 * (b - a) * w
    return QuadratureRule(nodes=nodes, weights=weights, order=int(order),
                          interval=(float(a), float(b)))
