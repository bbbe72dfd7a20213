"""Direct evaluation of zeta and related sums at moderate height.

The workhorse is Euler-Maclaurin summation with Bernoulli tail corrections,
accurate to ~1e-10 relative over the public evaluation box
0.4 <= Re s <= 3, 0 <= Im s <= 5000 (cost grows linearly with the height, so
the box is capped there).  An independent oracle based on the accelerated
alternating series for the eta function cross-checks it.  First and second
derivatives come from 64-node circle quadrature of radius 1/8, which is
spectrally accurate for an entire function.

Internally a slightly wider strip (-0.5 <= Re s <= 3.5) is evaluated for the
contour-counting oracle in :mod:`zplab.derivzeros`; the public ``zeta``
enforces the documented box.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import bernoulli, gammaln, loggamma

from .errors import CoverageError, DomainError, NearZeroDenominator, PoleError
from .zerotable import ZeroTable, truncation_window

BOX_RE = (0.4, 3.0)
BOX_IM = (0.0, 5000.0)
_WIDE_RE = (-0.5, 6.5)
_WIDE_IM_MAX = 10100.0  # internal only; the public box stops at 5000 and Re 3


@dataclass(frozen=True)
class EvalConfig:
    """Tuning knobs for the Euler-Maclaurin evaluator and circle quadrature."""

    em_cutoff_factor: float = 1.0  # main-sum terms M = ceil(factor * (|t| + 10))
    bernoulli_terms: int = 12
    deriv_radius: float = 0.125
    deriv_nodes: int = 64

    def __post_init__(self):
        if self.em_cutoff_factor <= 0:
            raise DomainError("em_cutoff_factor must be positive")
        if not 1 <= self.bernoulli_terms <= 12:
            raise DomainError("bernoulli_terms must be in 1..12")

    def digest(self) -> str:
        text = (f"{self.em_cutoff_factor!r}|{self.bernoulli_terms}|"
                f"{self.deriv_radius!r}|{self.deriv_nodes}")
        return hashlib.sha256(text.encode()).hexdigest()[:16]


DEFAULT_CONFIG = EvalConfig()

_S_CHUNK = 2048
_N_CHUNK = 2048


def _bernoulli_weights(k_terms: int) -> np.ndarray:
    b = bernoulli(2 * k_terms)
    out = np.empty(k_terms)
    for k in range(1, k_terms + 1):
        out[k - 1] = b[2 * k] / math.factorial(2 * k)
    return out


def _zeta_em_raw(s: np.ndarray, cfg: EvalConfig) -> np.ndarray:
    """Euler-Maclaurin zeta on the wide internal strip, vectorized.

    zeta(s) = sum_{n<M} n^-s + M^(1-s)/(s-1) + M^-s/2
              + sum_k B_2k/(2k)! * s(s+1)...(s+2k-2) * M^(-s-2k+1).
    A common M (from the largest |Im s| in the batch) keeps the main sum a
    single matrix product per chunk.
    """
    s = np.asarray(s, dtype=complex)
    flat = s.ravel()
    out = np.empty(flat.shape, dtype=complex)
    neg = flat.imag < 0
    work = np.where(neg, np.conj(flat), flat)
    tmax = float(np.max(work.imag)) if work.size else 0.0
    m_terms = int(math.ceil(cfg.em_cutoff_factor * (tmax + 10.0)))
    weights = _bernoulli_weights(cfg.bernoulli_terms)
    log_n = np.log(np.arange(1, m_terms))
    log_m = math.log(m_terms)
    for lo in range(0, work.size, _S_CHUNK):
        sw = work[lo:lo + _S_CHUNK]
        acc = np.zeros(sw.size, dtype=complex)
        for nlo in range(0, log_n.size, _N_CHUNK):
            block = log_n[nlo:nlo + _N_CHUNK]
            acc += np.exp(-sw[:, None] * block[None, :]).sum(axis=1)
        acc += np.exp((1.0 - sw) * log_m) / (sw - 1.0)
        acc += 0.5 * np.exp(-sw * log_m)
        poch = sw.copy()
        mpow = np.exp((-sw - 1.0) * log_m)
        m2 = 1.0 / (m_terms * m_terms)
        for k in range(1, cfg.bernoulli_terms + 1):
            if k > 1:
                poch = poch * (sw + (2 * k - 3)) * (sw + (2 * k - 2))
                mpow = mpow * m2
            acc += weights[k - 1] * poch * mpow
        out[lo:lo + sw.size] = acc
    out = np.where(neg, np.conj(out), out)
    return out.reshape(s.shape)


def _check_wide(sv: np.ndarray):
    if (np.any(sv.real < _WIDE_RE[0]) or np.any(sv.real > _WIDE_RE[1])
            or np.any(np.abs(sv.imag) > _WIDE_IM_MAX)):
        raise DomainError("point outside the internal evaluation strip")
    if np.any(np.abs(sv - 1.0) < 1e-12):
        raise PoleError("zeta has a pole at s = 1")


def zeta_many(s: np.ndarray, cfg: EvalConfig = DEFAULT_CONFIG) -> np.ndarray:
    """Vectorized zeta on the internal strip (used by quadrature and contours)."""
    sv = np.asarray(s, dtype=complex)
    _check_wide(sv)
    return _zeta_em_raw(sv, cfg)


def zeta(s: complex, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """zeta(s) on the public box 0.4 <= Re s <= 3, 0 <= Im s <= 5000."""
    s = complex(s)
    if not (BOX_RE[0] <= s.real <= BOX_RE[1] and BOX_IM[0] <= s.imag <= BOX_IM[1]):
        raise DomainError(f"s={s} outside the evaluation box")
    if abs(s - 1.0) < 1e-12:
        raise PoleError("zeta has a pole at s = 1")
    return complex(_zeta_em_raw(np.array([s]), cfg)[0])


_eta_ratio_cache: dict[int, np.ndarray] = {}


def _eta_ratios(n: int) -> np.ndarray:
    """Borwein weights 1 - d_k/d_n computed in log space (d_n overflows floats)."""
    if n in _eta_ratio_cache:
        return _eta_ratio_cache[n]
    i = np.arange(0, n + 1)
    log_t = (math.log(n) + gammaln(n + i) - gammaln(n - i + 1)
             - gammaln(2 * i + 1) + i * math.log(4.0))
    log_d = np.logaddexp.accumulate(log_t)
    ratios = 1.0 - np.exp(log_d[:-1] - log_d[-1])  # k = 0..n-1
    _eta_ratio_cache[n] = ratios
    return ratios


def zeta_via_eta(s: complex, terms: int | None = None) -> complex:
    """Independent zeta oracle: accelerated alternating series for eta.

    eta(s) = sum (-1)^k (k+1)^-s converges for Re s > 0; Chebyshev-weighted
    acceleration makes the truncation error decay like (3+sqrt(8))^-n with an
    e^(pi |t| / 2) prefactor, so the term count grows linearly in the height.
    zeta = eta / (1 - 2^(1-s)); the conversion factor vanishes on the line
    Re s = 1 at t = 2 pi k / log 2, so oracle grids avoid Re s == 1.
    """
    s = complex(s)
    if s.imag < 0:
        return complex(np.conj(zeta_via_eta(np.conj(s), terms)))
    t = s.imag
    if terms is None:
        raw = int(math.ceil(0.8913 * t + 0.6 * math.log(2.0 + t) + 40.0))
        terms = 64 * ((raw // 64) + 1)
    ratios = _eta_ratios(terms)
    k = np.arange(0, terms)
    signs = 1.0 - 2.0 * (k % 2)
    eta = np.sum(signs * ratios * np.exp(-s * np.log(k + 1.0)))
    conv = 1.0 - 2.0 ** (1.0 - s)
    if abs(conv) < 1e-9:
        raise DomainError("oracle undefined where 1 - 2^(1-s) vanishes")
    return complex(eta / conv)


def derivs_batch(points: np.ndarray, cfg: EvalConfig = DEFAULT_CONFIG
                 ) -> tuple[np.ndarray, np.ndarray]:
    """First and second derivatives of zeta at each point via circle quadrature."""
    pts = np.asarray(points, dtype=complex).ravel()
    if np.any(np.abs(pts - 1.0) < 0.25 + cfg.deriv_radius):
        raise DomainError("quadrature circle too close to the pole at s = 1")
    m = cfg.deriv_nodes
    r = cfg.deriv_radius
    w = np.exp(2j * np.pi * np.arange(m) / m)
    grid = pts[:, None] + r * w[None, :]
    vals = zeta_many(grid, cfg)
    d1 = (vals * np.conj(w)).sum(axis=1) / (m * r)
    d2 = 2.0 * (vals * np.conj(w) ** 2).sum(axis=1) / (m * r * r)
    return d1, d2


def zeta_derivs(s: complex, order: int, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """zeta'(s) or zeta''(s); the quadrature circle must stay inside the box.

    Points with |Im s| < radius are fine: the strip below the real axis is
    reached through conjugation symmetry.
    """
    if order not in (1, 2):
        raise DomainError("order must be 1 or 2")
    s = complex(s)
    r = cfg.deriv_radius
    if not (BOX_RE[0] <= s.real - r and s.real + r <= BOX_RE[1]
            and abs(s.imag) + r <= BOX_IM[1]):
        raise DomainError("quadrature circle leaves the evaluation box")
    d1, d2 = derivs_batch(np.array([s]), cfg)
    return complex(d1[0]) if order == 1 else complex(d2[0])


def log_deriv(s: complex, cfg: EvalConfig = DEFAULT_CONFIG) -> complex:
    """zeta'(s)/zeta(s); refuses when |zeta(s)| is numerically zero."""
    s = complex(s)
    z = complex(zeta_many(np.array([s]), cfg)[0])
    if abs(z) <= 1e-12:
        raise NearZeroDenominator(f"|zeta(s)| = {abs(z):.2e} at s = {s}", abs(z))
    d1, _ = derivs_batch(np.array([s]), cfg)
    return complex(d1[0] / z)


def functional_equation_gap(t: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """|zeta(1/2+it) - chi(1/2+it) * conj(zeta(1/2+it))| from the reflection identity.

    chi(s) = pi^(s-1/2) Gamma((1-s)/2) / Gamma(s/2) and
    zeta(1/2 - it) = conj(zeta(1/2 + it)), so the gap measures the evaluator
    against standard gamma routines.
    """
    s = 0.5 + 1j * t
    z = complex(zeta_many(np.array([s]), cfg)[0])
    chi = np.exp((s - 0.5) * math.log(math.pi)
                 + loggamma((1.0 - s) / 2.0) - loggamma(s / 2.0))
    return abs(z - chi * np.conj(z))


def _sum_over_window(s: complex, table: ZeroTable, t: float, window: float) -> complex:
    g = table.ordinates
    if t + window + 1.0 > table.height:
        raise CoverageError(
            f"window [{t - window:.3f}, {t + window:.3f}] needs table coverage past "
            f"{t + window + 1.0:.3f}", needed=(table.height, t + window + 1.0))
    lo = np.searchsorted(g, t - window, side="left")
    hi = np.searchsorted(g, t + window, side="right")
    block = g[lo:hi]
    sel = block[np.abs(block - t) <= window]
    return complex(np.sum(1.0 / (s - (0.5 + 1j * sel))))


def zpz_zero_expansion(s: complex, table: ZeroTable, window: float) -> complex:
    """Short zero-sum sum 1/(s - rho) over ordinates within ``window`` of Im s.

    Tables are complete prefixes of the ordinate list, so low-end coverage is
    implicit; the high end must extend one unit past the window.
    """
    s = complex(s)
    if not 0.5 < s.real <= 1.0:
        raise DomainError("need 1/2 < Re s <= 1")
    if window < 0:
        raise DomainError("window must be nonnegative")
    if window == 0.0:
        return 0.0 + 0.0j
    return _sum_over_window(s, table, s.imag, window)


def short_sum(s: complex, table: ZeroTable, c_star: float) -> complex:
    """Zero-sum over the shrinking window C* log log t / log t around Im s."""
    s = complex(s)
    if not 0.5 < s.real <= 1.0:
        raise DomainError("need 1/2 < Re s <= 1")
    t = s.imag
    if t <= math.e:
        raise DomainError("height too small for the truncation window")
    return _sum_over_window(s, table, t, truncation_window(t, c_star))


def short_sum_residual(table: ZeroTable, gamma_c: float, c_star: float,
                       cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """|zeta'/zeta(s) - short_sum(s)| / log(gamma_c) at s = 1/2 + 1/log(gamma_c) + i gamma_c.

    This is the statistic whose boundedness defines membership in the
    well-spaced candidate set's third condition; callers intersect a frozen
    threshold with the spacing filter.
    """
    lg = math.log(gamma_c)
    s = 0.5 + 1.0 / lg + 1j * gamma_c
    return abs(log_deriv(s, cfg) - short_sum(s, table, c_star)) / lg


_sieve_limit = 0
_sieve_lambda = np.empty(0)
_sieve_isprime = np.empty(0, dtype=bool)


def _ensure_sieve(limit: int):
    """Grow the cached von Mangoldt table to at least ``limit``."""
    global _sieve_limit, _sieve_lambda, _sieve_isprime
    if limit <= _sieve_limit:
        return
    limit = max(limit, 2 * _sieve_limit, 1 << 10)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, int(limit ** 0.5) + 1):
        if is_prime[p]:
            is_prime[p * p::p] = False
    lam = np.zeros(limit + 1)
    for p in np.nonzero(is_prime)[0]:
        pk = int(p)
        logp = math.log(p)
        while pk <= limit:
            lam[pk] = logp
            pk *= int(p)
    _sieve_limit, _sieve_lambda, _sieve_isprime = limit, lam, is_prime


def von_mangoldt(n: int) -> float:
    """Lambda(n): log p when n is a prime power p^k, else 0."""
    if n < 1:
        raise DomainError("n must be >= 1")
    _ensure_sieve(n)
    return float(_sieve_lambda[n])


def primes_up_to(x: float) -> np.ndarray:
    _ensure_sieve(int(x) + 1)
    return np.nonzero(_sieve_isprime[:int(x) + 1])[0]


@dataclass(frozen=True)
class DirichletConfig:
    """Prime-sum truncation: weights taper linearly to zero at x^2."""

    x: float
    k: int = 1

    def __post_init__(self):
        if self.x < 2.0:
            raise DomainError("x must be at least 2")
        if self.k < 1:
            raise DomainError("k must be a positive integer")

    @classmethod
    def from_height(cls, height: float, k: int = 1) -> "DirichletConfig":
        """x = T^(1/(100k)); only meaningful when T >= 2^(100k)."""
        return cls(x=height ** (1.0 / (100.0 * k)), k=k)


def lambda_x(n: int, x: float) -> float:
    """Tapered von Mangoldt weight: Lambda(n) up to x, then scaled by log(x^2/n)/log x.

    Values at or beyond x^2 are zero by convention (outside every sum).
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    if x < 2.0:
        raise DomainError("x must be at least 2")
    if n >= x * x:
        return 0.0
    lam = von_mangoldt(n)
    if lam == 0.0 or n <= x:
        return lam
    return lam * math.log(x * x / n) / math.log(x)


def dirichlet_sum(s: complex, cfg: DirichletConfig, primes_only: bool = False) -> complex:
    """-sum_{n < x^2} Lambda_x(n) / n^s, optionally dropping prime powers."""
    s = complex(s)
    limit = int(math.ceil(cfg.x * cfg.x)) + 1
    _ensure_sieve(limit)
    top = cfg.x * cfg.x
    n = np.nonzero(_sieve_lambda[:limit] > 0.0)[0]
    n = n[n < top]
    if primes_only:
        n = n[_sieve_isprime[n]]
    w = _sieve_lambda[n] * np.where(n <= cfg.x, 1.0,
                                    np.log(top / n) / math.log(cfg.x))
    return complex(-np.sum(w * np.exp(-s * np.log(n))))


def sound_moment_check(a, k: int, height: float, x: float, step: float
                       ) -> tuple[float, float, float]:
    """Compare the 2k-th moment of a prime sum on [T, 2T] with its k! bound.

    lhs: trapezoid quadrature of |sum_{p<=x} a(p) p^(-1/2-it)|^(2k) dt over
    [T, 2T]; rhs: k! * T * (sum |a(p)|^2 / p)^k.  Returns (lhs, rhs, ratio).
    ``a`` maps a prime to its complex coefficient.
    """
    if k < 1:
        raise DomainError("k must be a positive integer")
    if x < 2.0:
        raise DomainError("x must be at least 2")
    if x ** k > height / math.log(height):
        raise DomainError("need x^k <= T / log T")
    if step > 0.01 * 2.0 * math.pi / math.log(x):
        raise DomainError("step too coarse for the fastest oscillation")
    primes = primes_up_to(x)
    coeffs = np.array([complex(a(int(p))) for p in primes])
    count = int(math.ceil(height / step))
    t = np.linspace(height, 2.0 * height, count + 1)
    amp = coeffs / np.sqrt(primes)
    logp = np.log(primes.astype(float))
    power = np.zeros(t.size)
    for lo in range(0, t.size, 1 << 16):
        tt = t[lo:lo + (1 << 16)]
        f = (amp[None, :] * np.exp(-1j * tt[:, None] * logp[None, :])).sum(axis=1)
        power[lo:lo + tt.size] = np.abs(f) ** (2 * k)
    lhs = float(np.trapezoid(power, t))
    rhs = float(math.factorial(k) * height * np.sum(np.abs(coeffs) ** 2 / primes) ** k)
    ratio = lhs / rhs if rhs != 0.0 else 0.0
    return lhs, rhs, ratio
