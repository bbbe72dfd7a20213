"""Haar-unitary (CUE) eigenangle sampling and ensemble gap experiments.

Sampling follows the standard Ginibre + QR construction: fill an N x N matrix
with independent standard complex Gaussians, take the QR factorization, and
fix the gauge by multiplying each column of Q with the phase of the matching
diagonal entry of R.  Eigenangles of the resulting unitary are Haar
distributed.  All randomness comes from :mod:`zplab.rng`, so a sample is a
pure function of (dimension, seed).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import rng
from .errors import DomainError
from .polyzeros import (TWO_PI, UnitPolynomial, ZeroConfiguration,
                        config_critical_points, poly_from_config,
                        poly_radial_lambdas)

MAX_DIMENSION = 256


@dataclass(frozen=True)
class CueSample:
    """Sorted eigenangles of one Haar-random unitary."""

    dimension: int
    angles: np.ndarray
    seed: int

    def __post_init__(self):
        if self.angles.size != self.dimension:
            raise DomainError("angle count must equal the dimension")


@dataclass(frozen=True)
class EnsembleResult:
    """Pooled normalized gaps and radial distances over an ensemble of samples."""

    dimension: int
    sample_count: int
    gap_lambdas: np.ndarray      # sample_count * N values (periodic gaps)
    radial_lambdas: np.ndarray   # sample_count * (N - 1) values
    seeds: tuple[int, ...]


def haar_unitary(n: int, seed: int) -> np.ndarray:
    gen = rng.uniform_generator(seed)
    g = rng.standard_complex_normals(gen, (n, n))
    q, r = np.linalg.qr(g)
    diag = np.diagonal(r)
    phases = diag / np.abs(diag)
    return q * phases[None, :]


def sample_cue_angles(n: int, seed: int) -> CueSample:
    """Eigenangles of a Haar-random N x N unitary, sorted into [0, 2*pi)."""
    if n < 1:
        raise DomainError("dimension must be >= 1")
    if n > MAX_DIMENSION:
        raise DomainError(f"dimension capped at {MAX_DIMENSION}")
    eig = np.linalg.eigvals(haar_unitary(n, seed))
    angles = np.sort(np.mod(np.angle(eig), TWO_PI))
    angles[angles >= TWO_PI] = 0.0
    return CueSample(dimension=n, angles=np.sort(angles), seed=seed)


def periodic_gap_lambdas(sample: CueSample) -> np.ndarray:
    """Normalized gaps N * gap including the wrap-around gap; they sum to 2*pi*N."""
    a = sample.angles
    gaps = np.empty(a.size)
    gaps[:-1] = np.diff(a)
    gaps[-1] = TWO_PI - (a[-1] - a[0])
    return sample.dimension * gaps


def sample_polynomial(sample: CueSample) -> UnitPolynomial:
    config = ZeroConfiguration(angles=sample.angles, degree=sample.dimension,
                               label=f"cue-{sample.dimension}-{sample.seed}", periodic=True)
    return poly_from_config(config)


def ensemble_statistics(n: int, sample_count: int, base_seed: int) -> EnsembleResult:
    """Pool gap and radial statistics over seeds base_seed .. base_seed + count - 1.

    Each sample contributes its N periodic normalized gaps and the N-1 values
    N*(1-r) over the roots of the derivative of its characteristic polynomial.
    """
    if n < 2:
        raise DomainError("ensembles need dimension >= 2")
    if sample_count < 0:
        raise DomainError("sample_count must be >= 0")
    seeds = tuple(base_seed + k for k in range(sample_count))
    gap_pool: list[np.ndarray] = []
    rad_pool: list[np.ndarray] = []
    for seed in seeds:
        sample = sample_cue_angles(n, seed)
        config = ZeroConfiguration(angles=sample.angles, degree=n, periodic=True)
        poly = poly_from_config(config)  # carries the type invariants; roots drive the statistics
        assert poly.degree == n
        gap_pool.append(periodic_gap_lambdas(sample))
        rad_pool.append(poly_radial_lambdas(config_critical_points(config), n))
    empty = np.empty(0)
    return EnsembleResult(
        dimension=n,
        sample_count=sample_count,
        gap_lambdas=np.concatenate(gap_pool) if gap_pool else empty,
        radial_lambdas=np.concatenate(rad_pool) if rad_pool else empty,
        seeds=seeds,
    )


def irregular_sum(angles: np.ndarray, center_index: int, inner: float, outer: float,
                  scale: float = 1.0) -> float:
    """Signed reciprocal sum over rescaled angles within an annular window.

    Sums 1/(u_j - u_n) over n != j with inner < |u_j - u_n| < outer, where
    u = scale * angle; both cutoffs are strict.
    """
    if not (inner >= 0.0 < outer):
        raise DomainError("need inner >= 0 and outer > 0")
    u = scale * np.asarray(angles, dtype=float)
    if not 0 <= center_index < u.size:
        raise DomainError("center_index out of range")
    d = u[center_index] - np.delete(u, center_index)
    mask = (np.abs(d) > inner) & (np.abs(d) < outer)
    return float(np.sum(1.0 / d[mask]))
