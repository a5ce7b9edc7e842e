"""Sine-kernel Fredholm determinants and counting probabilities.

The integral operator with kernel sin(pi(x-y))/(pi(x-y)) (and its even/odd
reflection-symmetrized variants) is discretized on Gauss-Legendre nodes with
symmetrized weights.  The determinant det(I - z K) is then a finite matrix
determinant, entire in z, and the counting probabilities

    E(l; s) = (-1)^l / l! * d^l/dz^l det(I - z K) |_{z=1}

are extracted by trapezoidal quadrature on a circle around z = 1.

Two determinant engines are provided.  The "lu" engine computes an LU
factorization per contour point; the "eig" engine diagonalizes the real
symmetric Nystrom matrix once per kernel and evaluates det(I - z K) as the
product over eigenvalues, which makes whole-contour sampling essentially
free.  Both evaluate the same matrix determinant and are cross-checked in
the verification suite.

The orthogonal and symplectic cases are assembled from the even/odd kernel
determinants through the classical alternating-superposition and decimation
relations; the assembly is gated by normalization, mean-count, and closed
form number-variance checks downstream.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .specfun import QuadratureRule, gauss_legendre

__all__ = [
    "BETAS",
    "KERNEL_VARIANTS",
    "FredholmError",
    "ResolutionError",
    "ContourError",
    "KernelSpec",
    "ResolutionPolicy",
    "DeterminantGrid",
    "CountingProbabilities",
    "kernel_matrix",
    "nystrom_determinant",
    "symmetrized_eigenvalues",
    "determinant_samples",
    "contour_points",
    "contour_derivatives",
    "counting_probabilities",
    "ordered_map",
]

BETAS = (1, 2, 4)
KERNEL_VARIANTS = ("full_sine", "even_sine", "odd_sine")

# Acceptable leakage of probability mass outside the extracted l range.
DEFECT_TOLERANCE = 1e-8
# Probabilities may stray this far outside [0, 1] (roundoff only).
BAND_TOLERANCE = 1e-10
# Largest imaginary part tolerated in an extracted (real) coefficient.
IMAG_RESIDUE_TOLERANCE = 1e-11


class FredholmError(RuntimeError):
    """Numerical failure while evaluating a discretized determinant."""


class ResolutionError(FredholmError):
    """Requested accuracy not reached; raise lmax, order, or contour points."""


class ContourError(FredholmError):
    """Contour sampling too coarse or inconsistent for derivative extraction."""


def check_beta(beta: int) -> int:
    if beta not in BETAS:
        raise ValueError(f"beta must be one of {BETAS}, got {beta!r}")
    return beta


@dataclass(frozen=True)
class KernelSpec:
    """A sine-family kernel restricted to (0, interval_length).

    full_sine(x, y) = sin(pi(x-y))/(pi(x-y)) with diagonal limit 1;
    even_sine/odd_sine add/subtract the reflected argument x+y.
    """

    variant: str
    interval_length: float

    def __post_init__(self):
        if self.variant not in KERNEL_VARIANTS:
            raise ValueError(f"unknown kernel variant {self.variant!r}")
        if not (math.isfinite(self.interval_length) and self.interval_length > 0):
            raise ValueError("interval_length must be positive and finite")


@dataclass(frozen=True)
class ResolutionPolicy:
    """Discretization parameters with automatic defaults.

    quad_order=None selects max(48, ceil(6 * interval_length)) nodes;
    contour_points=None selects max(128, next power of two >= 8 * lmax).
    """

    quad_order: int | None = None
    contour_radius: float = 1.0
    contour_points: int | None = None
    panel_order: int = 12
    engine: str = "eig"
    workers: int = 1

    def __post_init__(self):
        if not (0.0 < self.contour_radius <= 2.0):
            raise ValueError("contour_radius must lie in (0, 2]")
        if self.engine not in ("eig", "lu"):
            raise ValueError(f"unknown determinant engine {self.engine!r}")
        if self.quad_order is not None and self.quad_order < 1:
            raise ValueError("quad_order must be positive")
        if self.panel_order < 2:
            raise ValueError("panel_order must be at least 2")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")

    def order_for(self, interval_length: float) -> int:
        if self.quad_order is not None:
            return self.quad_order
        return max(48, int(math.ceil(6.0 * interval_length)))

    def points_for(self, lmax: int) -> int:
        if self.contour_points is not None:
            return self.contour_points
        n = max(128, 8 * max(lmax, 1))
        return 1 << (n - 1).bit_length()

    @staticmethod
    def lmax_for(s: float) -> int:
        """Count cutoff keeping the neglected tail mass far below tolerance."""
        return int(math.ceil(s + 10.0 + 5.0 * math.sqrt(math.log(2.0 + s))))

    def fingerprint(self) -> str:
        quad = "auto6" if self.quad_order is None else str(self.quad_order)
        pts = "auto8" if self.contour_points is None else str(self.contour_points)
        return (f"quad={quad};rho={self.contour_radius:.17g};nz={pts};"
                f"panel={self.panel_order};engine={self.engine}")


@dataclass(frozen=True, eq=False)
class DeterminantGrid:
    """det(I - z K) sampled on a circle |z - 1| = radius."""

    kernel: KernelSpec
    rule: QuadratureRule
    z: np.ndarray
    values: np.ndarray

    @property
    def radius(self) -> float:
        return float(abs(self.z[0] - 1.0))


@dataclass(frozen=True, eq=False)
class CountingProbabilities:
    """E(l; s) for l = 0..lmax at a single interval length s."""

    beta: int
    s: float
    values: np.ndarray
    truncation_defect: float
    imag_residue: float

    @property
    def lmax(self) -> int:
        return len(self.values) - 1

    def mean_count(self) -> float:
        return float(np.arange(self.lmax + 1) @ self.values)

    def variance(self) -> float:
        ell = np.arange(self.lmax + 1)
        return float(((ell - self.s) ** 2) @ self.values)


# ---------------------------------------------------------------------------
# Nystrom discretization
# ---------------------------------------------------------------------------

def _sinc_pi(u: np.ndarray) -> np.ndarray:
    out = np.ones_like(u)
    nz = u != 0.0
    out[nz] = np.sin(np.pi * u[nz]) / (np.pi * u[nz])
    return out


def kernel_matrix(kernel: KernelSpec, x: np.ndarray) -> np.ndarray:
    """Kernel values on a node grid, diagonal limits included."""
    diff = x[:, None] - x[None, :]
    K = _sinc_pi(diff)
    if kernel.variant == "even_sine":
        K = K + _sinc_pi(x[:, None] + x[None, :])
    elif kernel.variant == "odd_sine":
        K = K - _sinc_pi(x[:, None] + x[None, :])
    return K


def _symmetrized_matrix(kernel: KernelSpec, rule: QuadratureRule) -> np.ndarray:
    sw = np.sqrt(rule.weights)
    return sw[:, None] * kernel_matrix(kernel, rule.nodes) * sw[None, :]


def nystrom_determinant(kernel: KernelSpec, z: complex, rule: QuadratureRule) -> complex:
    """det(I - z W^{1/2} K W^{1/2}) by LU factorization."""
    B = _symmetrized_matrix(kernel, rule)
    if not np.all(np.isfinite(B)):
        raise FredholmError("non-finite kernel matrix entries")
    A = np.eye(rule.order, dtype=complex) - complex(z) * B
    sign, logdet = np.linalg.slogdet(A)
    if sign == 0 or not np.isfinite(logdet):
        raise FredholmError(f"singular LU pivot at z={z!r}")
    return complex(sign * np.exp(logdet))


def symmetrized_eigenvalues(kernel: KernelSpec, rule: QuadratureRule) -> np.ndarray:
    """Eigenvalues of the symmetrized Nystrom matrix (all in [0, 1] up to roundoff)."""
    return np.linalg.eigvalsh(_symmetrized_matrix(kernel, rule))


def determinant_samples(kernel: KernelSpec, rule: QuadratureRule, z: np.ndarray,
                        engine: str = "eig") -> np.ndarray:
    """det(I - z K) at many z, via eigenvalue products or per-point LU."""
    if engine == "lu":
        return np.array([nystrom_determinant(kernel, zz, rule) for zz in z])
    mu = symmetrized_eigenvalues(kernel, rule)
    # det = prod_j (1 - z mu_j); sum of logs avoids spurious over/underflow
    logs = np.log(1.0 - np.asarray(z, dtype=complex)[:, None] * mu[None, :])
    return np.exp(np.sum(logs, axis=1))


# ---------------------------------------------------------------------------
# Contour differentiation at z = 1
# ---------------------------------------------------------------------------

def contour_points(n: int, radius: float = 1.0) -> np.ndarray:
    """n equally spaced samples of the circle |z - 1| = radius."""
    theta = 2.0 * np.pi * np.arange(n) / n
    return 1.0 + radius * np.exp(1j * theta)


def _extract_coefficients(values: np.ndarray, radius: float, lmax: int):
    # f(z) = sum_l c_l (z-1)^l sampled at z_j = 1 + rho e^{2 pi i j / N};
    # trapezoidal quadrature of the Cauchy integral is the DFT of the samples.
    n = len(values)
    coeff = np.fft.fft(values)[: lmax + 1] / n
    ell = np.arange(lmax + 1)
    coeff = coeff / radius ** ell
    signed = (-1.0) ** ell * coeff
    return np.real(signed), float(np.max(np.abs(np.imag(signed))))


def contour_derivatives(grid: DeterminantGrid, lmax: int) -> np.ndarray:
    """(-1)^l / l! times the l-th derivative of the sampled function at z = 1.

    Requires at least max(64, 4*lmax) equally spaced samples; the imaginary
    residue of each coefficient is checked against the contour tolerance and
    then discarded.
    """
    n = len(grid.values)
    if n < max(64, 4 * lmax):
        raise ContourError(f"{n} contour points < required {max(64, 4 * lmax)}")
    expected = contour_points(n, grid.radius)
    if not np.allclose(grid.z, expected, rtol=0, atol=1e-9 * (1 + grid.radius)):
        raise ContourError("contour samples are not equally spaced around z = 1")
    values, residue = _extract_coefficients(grid.values, grid.radius, lmax)
    if residue > IMAG_RESIDUE_TOLERANCE:
        raise ContourError(f"imaginary residue {residue:.3e} exceeds "
                           f"{IMAG_RESIDUE_TOLERANCE:.0e}; refine the contour")
    return values


def _kernel_coefficients(kernel: KernelSpec, lmax: int, policy: ResolutionPolicy):
    """Counting coefficients of one kernel determinant plus the imag residue."""
    rule = gauss_legendre(policy.order_for(kernel.interval_length), 0.0,
                          kernel.interval_length)
    z = contour_points(policy.points_for(lmax), policy.contour_radius)
    values = determinant_samples(kernel, rule, z, engine=policy.engine)
    if not np.all(np.isfinite(values)):
        raise FredholmError("non-finite determinant sample on the contour")
    coeffs, residue = _extract_coefficients(values, policy.contour_radius, lmax)
    if residue > IMAG_RESIDUE_TOLERANCE:
        raise ContourError(f"imaginary residue {residue:.3e} exceeds "
                           f"{IMAG_RESIDUE_TOLERANCE:.0e} at s={kernel.interval_length}")
    return coeffs, residue


# ---------------------------------------------------------------------------
# Counting probabilities per symmetry class
# ---------------------------------------------------------------------------

def counting_probabilities(beta: int, s: float, lmax: int,
                           policy: ResolutionPolicy = ResolutionPolicy()
                           ) -> CountingProbabilities:
    """Probabilities that an interval of length s holds exactly l levels.

    The unitary class reads from the full sine-kernel determinant on (0, s).
    The symplectic class averages the even/odd kernel counts on (0, s); the
    orthogonal class interleaves the cumulative even/odd counts on (0, s/2).
    """
    check_beta(beta)
    if s < 0 or not math.isfinite(s):
        raise ValueError(f"s must be finite and >= 0, got {s!r}")
    if lmax < 0:
        raise ValueError("lmax must be >= 0")
    if s == 0.0:
        values = np.zeros(lmax + 1)
        values[0] = 1.0
        return CountingProbabilities(beta, 0.0, values, 0.0, 0.0)

    if beta == 2:
        values, residue = _kernel_coefficients(
            KernelSpec("full_sine", s), lmax, policy)
    elif beta == 4:
        even, r1 = _kernel_coefficients(KernelSpec("even_sine", s), lmax, policy)
        odd, r2 = _kernel_coefficients(KernelSpec("odd_sine", s), lmax, policy)
        values = 0.5 * (even + odd)
        residue = max(r1, r2)
    else:
        # Cumulative interleaving: P[N <= 2n] and P[N <= 2n+1] equal the
        # even/odd kernel count CDFs at n on the half interval.
        kmax = lmax // 2 + 2
        even, r1 = _kernel_coefficients(KernelSpec("even_sine", s / 2), kmax, policy)
        odd, r2 = _kernel_coefficients(KernelSpec("odd_sine", s / 2), kmax, policy)
        U = np.cumsum(even)
        V = np.cumsum(odd)
        values = np.empty(lmax + 1)
        for l in range(lmax + 1):
            n = l // 2
            if l % 2 == 0:
                values[l] = U[n] - (V[n - 1] if n >= 1 else 0.0)
            else:
                values[l] = V[n] - U[n]
        residue = max(r1, r2)

    defect = abs(1.0 - float(np.sum(values)))
    if defect > DEFECT_TOLERANCE:
        raise ResolutionError(
            f"truncation defect {defect:.3e} > {DEFECT_TOLERANCE:.0e} at "
            f"beta={beta}, s={s}; raise lmax, quad_order, or contour points")
    # an under-resolved kernel pushes discrete eigenvalues outside [0, 1],
    # which leaks through here even though the total mass stays exactly 1
    escape = max(float(-np.min(values)), float(np.max(values) - 1.0))
    if escape > BAND_TOLERANCE:
        raise ResolutionError(
            f"probabilities escape [0, 1] by {escape:.3e} at beta={beta}, "
            f"s={s}; raise quad_order")
    return CountingProbabilities(beta, float(s), values, defect, residue)


# ---------------------------------------------------------------------------
# Deterministic parallel map
# ---------------------------------------------------------------------------

def ordered_map(fn, items, workers: int = 1) -> list:
    """Map fn over items, optionally in worker threads, preserving order."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
