"""Empirical cumulative densities, power-law exponent fits, and gap counters.

Fits act on the cumulative function (the gap statistics of interest are
cumulative proportions, not densities) over an explicit window: windows are
never auto-selected, because the small-value end is sample-starved and silent
auto-selection would hide that.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import CoverageError, DomainError
from .zerotable import ZeroTable

FIT_GRID_POINTS = 20
MIN_WINDOW_SAMPLES = 30


@dataclass(frozen=True)
class EmpiricalCDF:
    """Sorted sample with an evaluator nu -> fraction <= nu."""

    values: np.ndarray
    count: int

    def __call__(self, nu: float) -> float:
        return float(np.searchsorted(self.values, nu, side="right") / self.count)


@dataclass(frozen=True)
class PowerLawFit:
    kappa: float
    alpha: float
    nu_lo: float
    nu_hi: float
    rms_residual: float       # in log-log coordinates
    window_samples: int

    def to_json(self) -> str:
        return json.dumps({
            "kappa": self.kappa, "alpha": self.alpha,
            "nu_lo": self.nu_lo, "nu_hi": self.nu_hi,
            "rms_residual": self.rms_residual,
            "window_samples": self.window_samples,
        }, sort_keys=True)


@dataclass(frozen=True)
class HypothesisCount:
    nu: float
    height: float             # T
    count: int                # #{0 < gamma' < T : (beta'-1/2) log gamma' <= nu}
    implied_c: float          # -log(count / (T log T)), inf when count == 0


def empirical_cdf(values) -> EmpiricalCDF:
    arr = np.sort(np.asarray(values, dtype=float))
    if arr.size == 0:
        raise DomainError("empty sample")
    return EmpiricalCDF(values=arr, count=arr.size)


def fit_exponent(cdf: EmpiricalCDF, nu_lo: float, nu_hi: float) -> PowerLawFit:
    """Least-squares line through (log nu, log F(nu)) on a geometric grid.

    The slope estimates the exponent of F ~ kappa * nu^alpha near zero; the
    intercept exponentiates to kappa.  Refuses sparse windows (fewer than 30
    samples inside, or an empty CDF at the window start).
    """
    if nu_lo <= 0 or nu_hi <= nu_lo:
        raise DomainError("need 0 < nu_lo < nu_hi")
    inside = int(np.searchsorted(cdf.values, nu_hi, side="right")
                 - np.searchsorted(cdf.values, nu_lo, side="left"))
    if inside < MIN_WINDOW_SAMPLES:
        raise DomainError(
            f"only {inside} samples inside [{nu_lo}, {nu_hi}]; "
            f"need {MIN_WINDOW_SAMPLES} (total sample {cdf.count})")
    grid = np.geomspace(nu_lo, nu_hi, FIT_GRID_POINTS)
    frac = np.array([cdf(nu) for nu in grid])
    if frac[0] == 0.0:
        raise DomainError(f"empty CDF at window start nu={nu_lo}")
    x = np.log(grid)
    y = np.log(frac)
    design = np.stack([x, np.ones_like(x)], axis=1)
    (alpha, intercept), *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - (alpha * x + intercept)
    return PowerLawFit(kappa=float(math.exp(intercept)), alpha=float(alpha),
                       nu_lo=nu_lo, nu_hi=nu_hi,
                       rms_residual=float(np.sqrt(np.mean(resid ** 2))),
                       window_samples=inside)


def kappa_prime_relation(kappa: float, beta: float) -> float:
    """2 pi (kappa / beta) (2 / pi)^beta: the derivative-side amplitude implied
    by a gap-side cumulative law kappa * nu^beta."""
    if beta <= 0:
        raise DomainError("beta must be positive")
    return 2.0 * math.pi * (kappa / beta) * (2.0 / math.pi) ** beta


def hypothesis_count(records, nu: float, height: float) -> HypothesisCount:
    """Count derivative zeros below T with rescaled line distance at most nu."""
    count = sum(1 for r in records
                if 0.0 < r.gamma_prime < height and r.lambda_prime <= nu)
    if count == 0:
        implied = math.inf
    else:
        implied = -math.log(count / (height * math.log(height)))
    return HypothesisCount(nu=nu, height=height, count=count, implied_c=implied)


def small_gap_count(table: ZeroTable, nu: float, height: float) -> tuple[int, float]:
    """(count, normalized) of gaps below nu among ordinates up to T.

    count = #{gamma_n <= T : (gamma_{n+1} - gamma_n) log gamma_n <= nu};
    normalized divides by T log T / log log T.
    """
    if height > table.height:
        raise CoverageError(f"T={height} beyond table end {table.height}",
                            needed=(table.height, height))
    g = table.ordinates
    n_top = int(np.searchsorted(g, height, side="right"))
    n_top = min(n_top, g.size - 1)  # each counted gap needs a right neighbor
    lam = np.diff(g[:n_top + 1]) * np.log(g[:n_top])
    count = int(np.count_nonzero(lam <= nu))
    normalized = count / (height * math.log(height) / math.log(math.log(height)))
    return count, normalized
