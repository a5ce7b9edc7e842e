"""Tables of counting probabilities and quantities integrated from them.

A CountingTable holds E(l; s) columns over an s grid for one symmetry class,
with a plain-text cache format (self-describing header plus l,s,E rows in
17-significant-digit decimal, so a reload is bit identical).  Gap integrals
I_l = integral of E(l; .) over (0, infinity) are evaluated by panel-wise
Gauss-Legendre quadrature with superexponential tail truncation, and the
nearest-neighbor machinery (spacing densities, two-point consistency) is
driven by finite differences on the table grid.
"""

from __future__ import annotations

import hashlib
import math
import os
from dataclasses import dataclass

import numpy as np

from .fredholm import (
    ResolutionPolicy,
    check_beta,
    counting_probabilities,
    ordered_map,
)
from .specfun import gauss_legendre

__all__ = [
    "TableBuildError",
    "TableLookupError",
    "TruncationError",
    "CountingTable",
    "GapIntegrals",
    "gap_interval_cutoff",
    "build_table",
    "number_variance_empirical",
    "gap_integrals",
    "spacing_density",
    "two_point_consistency",
    "sine_kernel_two_point",
]

MEAN_TOLERANCE = 1e-8
TAIL_TOLERANCE = 1e-9
CACHE_VERSION = 1


class TableBuildError(RuntimeError):
    """A grid column failed its accuracy gates during table construction."""


class TableLookupError(KeyError):
    """Requested s is not a grid point (no interpolation is performed)."""


class TruncationError(RuntimeError):
    """Gap-integral tail estimate above tolerance."""


@dataclass(frozen=True, eq=False)
class CountingTable:
    """E(l; s) on an s grid: values[l, j] = E(l; s_grid[j])."""

    beta: int
    s_grid: np.ndarray
    lmax: int
    values: np.ndarray
    fingerprint: str
    defect: float
    policy_text: str = ""

    def column_index(self, s: float) -> int:
        j = int(np.argmin(np.abs(self.s_grid - s)))
        if abs(self.s_grid[j] - s) > 1e-12 * max(1.0, abs(s)):
            raise TableLookupError(f"s={s!r} is not on the table grid")
        return j

    def column(self, s: float) -> np.ndarray:
        return self.values[:, self.column_index(s)]

    def save(self, path: str) -> None:
        lines = [
            "# snb counting table",
            f"# version: {CACHE_VERSION}",
            f"# beta: {self.beta}",
            f"# lmax: {self.lmax}",
            f"# columns: {len(self.s_grid)}",
            f"# defect: {self.defect:.17g}",
            f"# policy: {self.policy_text}",
            f"# fingerprint: {self.fingerprint}",
            "# rows: l,s,E",
        ]
        for j, s in enumerate(self.s_grid):
            for l in range(self.lmax + 1):
                lines.append(f"{l},{s:.17g},{self.values[l, j]:.17g}")
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            fh.write("\n".join(lines) + "\n")
        os.replace(tmp, path)

    @classmethod
    def load(cls, path: str) -> "CountingTable":
        header: dict[str, str] = {}
        ls, ss, es = [], [], []
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                if line.startswith("#"):
                    if ":" in line:
                        key, _, val = line[1:].partition(":")
                        header[key.strip()] = val.strip()
                    continue
                a, b, c = line.split(",")
                ls.append(int(a))
                ss.append(float(b))
                es.append(float(c))
        beta = int(header["beta"])
        lmax = int(header["lmax"])
        ncol = int(header["columns"])
        # C-contiguous layout so downstream reductions run in the same
        # order as on a freshly built table (bit-identical warm runs)
        values = np.ascontiguousarray(np.array(es).reshape(ncol, lmax + 1).T)
        s_grid = np.array(ss).reshape(ncol, lmax + 1)[:, 0]
        return cls(beta=beta, s_grid=s_grid, lmax=lmax, values=values,
                   fingerprint=header["fingerprint"],
                   defect=float(header["defect"]),
                   policy_text=header.get("policy", ""))


@dataclass(frozen=True, eq=False)
class GapIntegrals:
    """I[l] = integral of E(l; s) ds over (0, infinity), with tail estimates."""

    beta: int
    I: np.ndarray
    tail_bound: np.ndarray

    @property
    def lmax(self) -> int:
        return len(self.I) - 1

    def truncated(self, lmax: int) -> "GapIntegrals":
        if lmax > self.lmax:
            raise ValueError(f"lmax={lmax} exceeds available {self.lmax}")
        return GapIntegrals(self.beta, self.I[: lmax + 1],
                            self.tail_bound[: lmax + 1])


# ---------------------------------------------------------------------------
# Table construction and persistence
# ---------------------------------------------------------------------------

def _table_fingerprint(beta, s_grid, lmax, policy) -> str:
    text = (f"v{CACHE_VERSION}|beta={beta}|lmax={lmax}|{policy.fingerprint()}|"
            + ",".join(f"{s:.17g}" for s in s_grid))
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _cache_path(cache_dir: str, beta: int, fingerprint: str) -> str:
    return os.path.join(cache_dir, f"E{beta}-{fingerprint}.csv")


def build_table(beta: int, s_grid, lmax: int,
                policy: ResolutionPolicy = ResolutionPolicy(),
                cache_dir: str | None = None) -> CountingTable:
    """Compute (or reload from cache) E(l; s) columns over a sorted grid."""
    check_beta(beta)
    s_grid = np.asarray(s_grid, dtype=float)
    if s_grid.ndim != 1 or len(s_grid) == 0:
        raise ValueError("s_grid must be a non-empty 1-d sequence")
    if np.any(s_grid < 0) or np.any(np.diff(s_grid) <= 0):
        raise ValueError("s_grid must be non-negative and strictly increasing")

    fingerprint = _table_fingerprint(beta, s_grid, lmax, policy)
    if cache_dir is not None:
        path = _cache_path(cache_dir, beta, fingerprint)
        if os.path.exists(path):
            table = CountingTable.load(path)
            if table.fingerprint == fingerprint:
                return table

    def one_column(s: float) -> np.ndarray:
        try:
            col = counting_probabilities(beta, float(s), lmax, policy)
        except Exception as exc:
            raise TableBuildError(f"column s={s} failed: {exc}") from exc
        if s > 0 and abs(col.mean_count() - s) > MEAN_TOLERANCE:
            raise TableBuildError(
                f"column s={s} violates the mean-count identity by "
                f"{abs(col.mean_count() - s):.3e}")
        return col.values

    columns = ordered_map(one_column, s_grid, workers=policy.workers)
    values = np.column_stack(columns)
    defect = float(np.max(np.abs(1.0 - values.sum(axis=0))))
    table = CountingTable(beta=beta, s_grid=s_grid, lmax=lmax, values=values,
                          fingerprint=fingerprint, defect=defect,
                          policy_text=policy.fingerprint())
    if cache_dir is not None:
        os.makedirs(cache_dir, exist_ok=True)
        table.save(_cache_path(cache_dir, beta, fingerprint))
    return table


def number_variance_empirical(table: CountingTable, s: float) -> float:
    """Var of the level count in an interval of length s, from the table."""
    if s == 0.0:
        return 0.0
    col = table.column(s)
    ell = np.arange(table.lmax + 1)
    return float(((ell - s) ** 2) @ col)


# ---------------------------------------------------------------------------
# Gap integrals
# ---------------------------------------------------------------------------

def gap_interval_cutoff(l: int) -> float:
    """Upper integration limit for E(l; .); the tail beyond it decays
    superexponentially."""
    return l + 12.0 + 6.0 * math.sqrt(math.log(2.0 + l))


def gap_integrals(beta: int, lmax: int,
                  policy: ResolutionPolicy = ResolutionPolicy(),
                  cache_dir: str | None = None) -> GapIntegrals:
    """I[l] for l = 0..lmax by unit-panel Gauss-Legendre integration.

    All columns come from one counting table on the union of panel nodes
    (cache-friendly); each I[l] sums the panels covering [0, cutoff(l)] and
    its tail bound is ten times the magnitude of the last included panel.
    """
    check_beta(beta)
    if lmax < 0:
        raise ValueError("lmax must be >= 0")
    n_panels = int(math.ceil(gap_interval_cutoff(lmax)))
    ref = gauss_legendre(policy.panel_order, 0.0, 1.0)
    s_grid = (np.arange(n_panels)[:, None] + ref.nodes[None, :]).ravel()

    table_lmax = max(lmax, ResolutionPolicy.lmax_for(float(n_panels)))
    table = build_table(beta, s_grid, table_lmax, policy, cache_dir=cache_dir)

    # panel_sums[l, p] = integral of E(l; .) over (p, p+1)
    cols = table.values[: lmax + 1].reshape(lmax + 1, n_panels, policy.panel_order)
    panel_sums = cols @ ref.weights

    I = np.zeros(lmax + 1)
    tail = np.zeros(lmax + 1)
    for l in range(lmax + 1):
        last = min(n_panels, int(math.ceil(gap_interval_cutoff(l))))
        I[l] = float(np.sum(panel_sums[l, :last]))
        tail[l] = 10.0 * abs(float(panel_sums[l, last - 1]))
    if np.any(tail > TAIL_TOLERANCE):
        bad = int(np.argmax(tail))
        raise TruncationError(
            f"tail bound {tail[bad]:.3e} > {TAIL_TOLERANCE:.0e} at l={bad}")
    if np.any(I <= 0):
        raise TruncationError("gap integrals must be positive")
    return GapIntegrals(beta=beta, I=I, tail_bound=tail)


# ---------------------------------------------------------------------------
# Spacing densities and the two-point consistency check
# ---------------------------------------------------------------------------

def spacing_density(beta: int, k: int, s: float, table: CountingTable) -> float:
    """Density of the k-th neighbor spacing at separation s.

    Second s-derivative of sum_{l<k} (k - l) E(l; s), by Richardson-refined
    central differences on the table grid.  The weighted sum (rather than the
    bare cumulative sum) is what makes the k-th moment come out equal to k.
    """
    check_beta(beta)
    if table.beta != beta:
        raise ValueError("table symmetry class does not match beta")
    if k < 1:
        raise ValueError("k must be >= 1")
    j = table.column_index(s)
    if j < 2 or j > len(table.s_grid) - 3:
        raise TableLookupError(f"s={s} lacks the two grid neighbors needed for "
                               "differencing")
    steps = np.diff(table.s_grid[j - 2: j + 3])
    h = float(steps[0])
    if np.max(np.abs(steps - h)) > 1e-9 * h:
        raise TableLookupError("differencing needs a locally uniform grid")
    weights = np.arange(k, 0, -1, dtype=float)           # k - l for l < k
    f = weights @ table.values[:k, j - 2: j + 3]
    d1 = (f[3] - 2.0 * f[2] + f[1]) / h**2
    d2 = (f[4] - 2.0 * f[2] + f[0]) / (2.0 * h) ** 2
    return float((4.0 * d1 - d2) / 3.0)


def sine_kernel_two_point(s: float) -> float:
    """R2(s) = 1 - (sin(pi s)/(pi s))^2, the unitary-class two-point function."""
    if s == 0.0:
        return 0.0
    u = math.sin(math.pi * s) / (math.pi * s)
    return 1.0 - u * u


def two_point_consistency(table: CountingTable, s: float,
                          kmax: int | None = None) -> float:
    """|sum_k spacing_density(k, s) - R2(s)| for the unitary class.

    Summing the neighbor-spacing densities over the order index restores the
    permutation-invariant two-point function; the residual is dominated by
    the finite-difference noise of the densities.
    """
    if table.beta != 2:
        raise ValueError("two-point consistency check requires beta = 2")
    if kmax is None:
        kmax = min(table.lmax, int(math.ceil(s + 8 + 5 * math.sqrt(math.log(2 + s)))))
    total = sum(spacing_density(2, k, s, table) for k in range(1, kmax + 1))
    return abs(total - sine_kernel_two_point(s))
