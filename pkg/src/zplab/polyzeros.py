"""Unit-circle zero configurations and zeros of their polynomials' derivatives.

A configuration is a finite set of angles on the unit circle; its monic
polynomial has exactly those points as roots.  The module provides the
polynomial expansion, differentiation, two root finders, the unrolled-disk
coordinate map, and the normalized gap / radial-distance statistics used by
the ensemble experiments.

Numerical note: coefficients of polynomials whose roots cluster on an arc grow
like binomial coefficients, so coefficient-space evaluation loses all accuracy
near the circle once the degree passes a few dozen.  ``critical_points`` works
directly from the root set (log-derivative sums) and stays stable up to the
degree cap of 1024; ``find_roots`` is the generic coefficient-space routine.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, RootFindingError

MAX_DEGREE = 1024
CLUSTER_TOL = 1e-7
TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class ZeroConfiguration:
    """Strictly ascending angles in [0, 2*pi), one per polynomial root."""

    angles: np.ndarray
    degree: int
    label: str = ""
    periodic: bool = False  # full-circle spacing: the wrap-around gap counts

    def __post_init__(self):
        angles = np.asarray(self.angles, dtype=float)
        object.__setattr__(self, "angles", angles)
        if self.degree != angles.size:
            raise DomainError(f"degree {self.degree} != number of angles {angles.size}")
        if self.degree < 1 or self.degree > MAX_DEGREE:
            raise DomainError(f"degree must be in [1, {MAX_DEGREE}]")
        if np.any(angles < 0.0) or np.any(angles >= TWO_PI):
            raise DomainError("angles must lie in [0, 2*pi)")
        if angles.size > 1 and np.any(np.diff(angles) <= 0.0):
            raise DomainError("angles must be strictly ascending")

    def roots(self) -> np.ndarray:
        """Points e^{i theta} on the unit circle."""
        return np.exp(1j * self.angles)


@dataclass(frozen=True)
class UnitPolynomial:
    """Monic polynomial with all roots on the unit circle.

    ``coefficients`` are ascending by power, c_0 .. c_N, with c_N == 1 exactly.
    The constant term of a configuration-built polynomial has unit modulus up
    to rounding; evaluation residuals at the configured roots are bounded
    relative to the largest coefficient (coefficients reach binomial scale for
    clustered configurations, so an absolute bound is meaningless there).
    """

    coefficients: np.ndarray
    degree: int

    def __post_init__(self):
        coeffs = np.asarray(self.coefficients, dtype=complex)
        object.__setattr__(self, "coefficients", coeffs)
        if coeffs.size != self.degree + 1:
            raise DomainError("coefficient count must be degree + 1")
        if coeffs[-1] != 1.0:
            raise DomainError("polynomial must be monic (leading coefficient exactly 1)")

    def __call__(self, z: complex | np.ndarray) -> complex | np.ndarray:
        return horner(self.coefficients, z)


@dataclass(frozen=True)
class Polynomial:
    """General dense polynomial, ascending coefficients."""

    coefficients: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coefficients", np.asarray(self.coefficients, dtype=complex))

    @property
    def degree(self) -> int:
        return self.coefficients.size - 1

    @property
    def degenerate(self) -> bool:
        """True for the zero polynomial (the derivative of a constant)."""
        return bool(np.all(self.coefficients == 0.0))

    def __call__(self, z: complex | np.ndarray) -> complex | np.ndarray:
        return horner(self.coefficients, z)


@dataclass(frozen=True)
class UnrolledPoint:
    """Disk point in unrolled coordinates: argument vs rescaled distance to the circle."""

    theta: float
    radius: float
    normalized_radial: float  # N * (1 - radius)
    display_height: float     # 2 * pi * N * (1 - radius)


@dataclass(frozen=True)
class RootCluster:
    """A root (or tight cluster reported as one) with its multiplicity."""

    center: complex
    multiplicity: int
    residual: float = 0.0


def horner(coefficients: np.ndarray, z: complex | np.ndarray) -> complex | np.ndarray:
    """Evaluate an ascending-coefficient polynomial."""
    acc = np.zeros_like(np.asarray(z, dtype=complex))
    for c in np.asarray(coefficients, dtype=complex)[::-1]:
        acc = acc * z + c
    return acc if isinstance(z, np.ndarray) else complex(acc)


def build_arc_config(degree: int, arc_start: float, arc_end: float,
                     endpoint_mode: str = "both-inclusive", label: str = "") -> ZeroConfiguration:
    """Equally spaced angles on the arc [arc_start, arc_end].

    ``both-inclusive`` places points at both arc ends with spacing
    (arc_end - arc_start)/(degree - 1); ``periodic`` uses spacing
    (arc_end - arc_start)/degree and omits the far end, which tiles the full
    circle when the arc spans 2*pi.
    """
    if degree < 1:
        raise DomainError("degree must be >= 1")
    if not arc_start < arc_end <= arc_start + TWO_PI:
        raise DomainError("need arc_start < arc_end <= arc_start + 2*pi")
    if endpoint_mode == "both-inclusive":
        if degree == 1:
            raw = np.array([arc_start])
        else:
            # k/(degree-1) reaches 1.0 exactly, so both endpoints are hit
            k = np.arange(degree) / (degree - 1)
            raw = arc_start + k * (arc_end - arc_start)
        periodic = False
    elif endpoint_mode == "periodic":
        k = np.arange(degree)
        raw = arc_start + k * (arc_end - arc_start) / degree
        periodic = abs((arc_end - arc_start) - TWO_PI) < 1e-15
    else:
        raise DomainError(f"unknown endpoint_mode {endpoint_mode!r}")
    reduced = np.sort(np.mod(raw, TWO_PI))
    # mod can return 2*pi for inputs epsilon below a multiple of 2*pi
    reduced[reduced >= TWO_PI] = 0.0
    reduced = np.sort(reduced)
    return ZeroConfiguration(angles=reduced, degree=degree, label=label, periodic=periodic)


def poly_from_config(config: ZeroConfiguration) -> UnitPolynomial:
    """Expand prod (z - e^{i theta_k}) by incremental multiplication."""
    coeffs = np.array([1.0 + 0.0j])
    for r in config.roots():
        nxt = np.zeros(coeffs.size + 1, dtype=complex)
        nxt[1:] = coeffs
        nxt[:-1] -= r * coeffs
        coeffs = nxt
    coeffs[-1] = 1.0  # exact monicity; the product keeps it at 1 anyway
    return UnitPolynomial(coefficients=coeffs, degree=config.degree)


def differentiate(p: UnitPolynomial | Polynomial | np.ndarray) -> Polynomial:
    """Coefficient k of the result is (k+1) * c_{k+1}; constants give the degenerate zero polynomial."""
    coeffs = p.coefficients if hasattr(p, "coefficients") else np.asarray(p, dtype=complex)
    if coeffs.size <= 1:
        return Polynomial(coefficients=np.zeros(1, dtype=complex))
    k = np.arange(1, coeffs.size)
    return Polynomial(coefficients=coeffs[1:] * k)


def _merge_clusters(points: np.ndarray, residuals: np.ndarray, cluster_tol: float) -> list[RootCluster]:
    """Group points closer than cluster_tol (transitively) and average each group."""
    order = np.lexsort((points.imag, points.real))
    pts = points[order]
    res = residuals[order]
    used = np.zeros(pts.size, dtype=bool)
    clusters: list[RootCluster] = []
    for i in range(pts.size):
        if used[i]:
            continue
        group = [i]
        used[i] = True
        frontier = [i]
        while frontier:
            a = frontier.pop()
            near = np.nonzero(~used & (np.abs(pts - pts[a]) < cluster_tol))[0]
            for b in near:
                used[b] = True
                group.append(b)
                frontier.append(b)
        members = np.array(group)
        clusters.append(RootCluster(center=complex(np.mean(pts[members])),
                                    multiplicity=members.size,
                                    residual=float(np.max(res[members]))))
    clusters.sort(key=lambda c: (c.center.real, c.center.imag))
    return clusters


def find_roots(p: UnitPolynomial | Polynomial | np.ndarray, tol: float = 1e-9,
               cluster_tol: float = CLUSTER_TOL) -> list[RootCluster]:
    """All roots of a dense polynomial by simultaneous (Aberth-Ehrlich) iteration.

    Exact zero roots are deflated first, the rest start on a circle of radius
    0.9 and iterate with a budget of 200 sweeps (200 * degree single-root
    updates).  Roots closer than ``cluster_tol`` are merged and reported with
    multiplicity.  Every reported root satisfies
    |p(z)| <= tol * max|coeff| * (degree + 1).
    """
    coeffs = p.coefficients if hasattr(p, "coefficients") else np.asarray(p, dtype=complex)
    if coeffs.size < 2:
        raise DomainError("find_roots requires degree >= 1")
    if coeffs[-1] == 0.0:
        raise DomainError("leading coefficient must be nonzero")
    if tol <= 0.0:
        raise DomainError("tol must be positive")
    degree = coeffs.size - 1
    scale = float(np.max(np.abs(coeffs)))
    residual_bound = tol * scale * (degree + 1)

    clusters: list[RootCluster] = []
    nz = np.nonzero(coeffs != 0.0)[0]
    k0 = int(nz[0])
    if k0 > 0:
        clusters.append(RootCluster(center=0.0 + 0.0j, multiplicity=k0, residual=0.0))
        coeffs = coeffs[k0:]
    n = coeffs.size - 1
    if n == 0:
        return clusters
    work = coeffs / coeffs[-1]
    if n == 1:
        z = np.array([-work[0]])
    else:
        z = 0.9 * np.exp(1j * (TWO_PI * np.arange(n) / n + 0.35))
        dwork = np.arange(1, n + 1) * work[1:]
        budget = 200
        for _ in range(budget):
            pv = horner(work, z)
            dpv = horner(dwork, z)
            dpv = np.where(dpv == 0.0, 1e-300, dpv)
            w = pv / dpv
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            s = np.sum(1.0 / diff, axis=1)
            denom = 1.0 - w * s
            denom = np.where(denom == 0.0, 1e-300, denom)
            corr = w / denom
            z = z - corr
            if np.max(np.abs(corr)) <= 1e-14 * (1.0 + np.max(np.abs(z))):
                break
        # polish isolated roots with plain Newton
        for _ in range(2):
            pv = horner(work, z)
            dpv = horner(dwork, z)
            safe = np.abs(dpv) > 0.0
            z = np.where(safe, z - pv / np.where(safe, dpv, 1.0), z)

    resid = np.abs(horner(coeffs, z))
    merged = _merge_clusters(z, resid, cluster_tol)
    out = clusters + merged
    total = sum(c.multiplicity for c in out)
    if total != degree:
        raise RootFindingError(
            f"root count {total} != degree {degree}", float(np.max(resid)), 200)
    worst = 0.0
    full = p.coefficients if hasattr(p, "coefficients") else np.asarray(p, dtype=complex)
    for c in out:
        r = abs(complex(horner(full, c.center)))
        worst = max(worst, r)
        if r > residual_bound:
            raise RootFindingError(
                f"residual {r:.3e} exceeds bound {residual_bound:.3e} at root {c.center}",
                worst, 200)
    out.sort(key=lambda c: (c.center.real, c.center.imag))
    return out


def expand_clusters(clusters: list[RootCluster]) -> np.ndarray:
    """Flatten clusters to a root array repeated by multiplicity."""
    return np.array([c.center for c in clusters for _ in range(c.multiplicity)], dtype=complex)


def critical_points(roots: np.ndarray, cluster_tol: float = CLUSTER_TOL,
                    sweeps: int = 400) -> list[RootCluster]:
    """Zeros of the derivative of the monic polynomial with the given roots.

    Works entirely in the root representation: with S1(x) = sum 1/(x - r_j)
    and S2(x) = sum 1/(x - r_j)^2, the ratio p'/p'' equals S1/(S1^2 - S2), so
    an Aberth-Ehrlich sweep for the degree-(N-1) derivative never touches the
    (possibly astronomically large) expanded coefficients.  Residuals are
    reported as |S1| = |p'/p| at the accepted points.
    """
    roots = np.asarray(roots, dtype=complex)
    big_n = roots.size
    if big_n < 2:
        raise DomainError("critical_points requires at least two roots")
    n = big_n - 1
    # Seed at midpoints of consecutive roots (sorted by argument), nudged
    # toward the interior: critical points interlace the root arcs, and this
    # start converges where a uniform circle of seeds stalls for clustered
    # configurations.
    order = np.argsort(np.angle(roots))
    ring = roots[order]
    x = 0.999 * 0.5 * (ring[:-1] + ring[1:])
    close = np.abs(x) < 1e-9
    if np.any(close):
        x = np.where(close, x + 1e-6, x)
    for _ in range(sweeps):
        d = x[:, None] - roots[None, :]
        # keep iterates off the exact roots of p
        tiny = np.abs(d) < 1e-14
        if np.any(tiny):
            d = np.where(tiny, 1e-14, d)
        inv = 1.0 / d
        s1 = inv.sum(axis=1)
        s2 = (inv * inv).sum(axis=1)
        denom2 = s1 * s1 - s2
        denom2 = np.where(denom2 == 0.0, 1e-300, denom2)
        u = s1 / denom2  # p'/p'' at x
        diff = x[:, None] - x[None, :]
        np.fill_diagonal(diff, np.inf)
        a = np.sum(1.0 / diff, axis=1)
        denom = 1.0 - u * a
        denom = np.where(denom == 0.0, 1e-300, denom)
        corr = u / denom
        mag = np.abs(corr)
        corr = corr * np.where(mag > 0.5, 0.5 / np.maximum(mag, 1e-300), 1.0)
        x = x - corr
        if np.max(np.abs(corr)) <= 1e-14 * (1.0 + np.max(np.abs(x))):
            break
    d = x[:, None] - roots[None, :]
    d = np.where(np.abs(d) < 1e-300, 1e-300, d)
    resid = np.abs((1.0 / d).sum(axis=1))
    return _merge_clusters(x, resid, cluster_tol)


def config_critical_points(config: ZeroConfiguration, cluster_tol: float = CLUSTER_TOL) -> np.ndarray:
    """Derivative zeros of a configuration's polynomial, flattened with multiplicity."""
    return expand_clusters(critical_points(config.roots(), cluster_tol=cluster_tol))


def unroll(points: np.ndarray, degree: int) -> list[UnrolledPoint]:
    """Map r e^{i theta} to (theta, 2*pi*N*(1-r)) coordinates, preserving order."""
    if degree < 1:
        raise DomainError("degree must be >= 1")
    out = []
    for z in np.asarray(points, dtype=complex):
        r = abs(z)
        theta = float(np.mod(np.angle(z), TWO_PI))
        nr = degree * (1.0 - r)
        out.append(UnrolledPoint(theta=theta, radius=r,
                                 normalized_radial=nr,
                                 display_height=TWO_PI * nr))
    return out


def poly_gap_lambdas(config: ZeroConfiguration) -> np.ndarray:
    """Normalized angle gaps N * (theta_{j+1} - theta_j); periodic configs include the wrap gap."""
    if config.degree < 2:
        raise DomainError("gap statistics need degree >= 2")
    gaps = np.diff(config.angles)
    if config.periodic:
        wrap = TWO_PI - (config.angles[-1] - config.angles[0])
        gaps = np.append(gaps, wrap)
    return config.degree * gaps


def poly_radial_lambdas(deriv_roots: np.ndarray, degree: int, sort: bool = False) -> np.ndarray:
    """Rescaled radial distances N * (1 - |z|) of derivative zeros."""
    if degree < 2:
        raise DomainError("radial statistics need degree >= 2")
    vals = degree * (1.0 - np.abs(np.asarray(deriv_roots, dtype=complex)))
    return np.sort(vals) if sort else vals
