"""Locating zeros of the zeta derivative and their attached statistics.

Newton iteration z <- z - zeta'(z)/zeta''(z) runs from seeds at
1/2 + 1/log(t) + i*(midpoint of each consecutive ordinate pair).  Converged,
deduplicated roots inside the search box are certified complete against an
argument-principle count of zeta' around the box; when the first seeding round
misses a zero (Newton basins need not cover the strip), denser deterministic
seed rounds run until the counts agree.

The search box spans 1/4 <= Re s <= 3: the low zeros of the derivative reach
Re s ~ 2.46, and empirically none exist to the right of 3 at desk heights
(checked by contour once over (3, 6) x (10, 500)).

Each accepted root is paired with the nearest zero ordinate and carries the
rescaled distance to the half-line, the case tag, the truncated
reciprocal-gap sum at its pair, and the residual comparing that sum against
the logarithmic derivative.
"""

from __future__ import annotations

import hashlib
import math
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import CoverageError, DomainError, NumericalError
from .zerotable import (CaseLabel, FilterConfig, ZeroTable, classify_case,
                        nearest_zero, reciprocal_sum_near)
from .zeta import DEFAULT_CONFIG, EvalConfig, derivs_batch, log_deriv

SEARCH_RE = (0.25, 3.0)
NEWTON_STEPS = 60
DEDUP_TOL = 1e-6
RESIDUAL_ACCEPT = 1e-10  # newton acceptance; records must satisfy 1e-8


@dataclass(frozen=True)
class DerivZeroRecord:
    beta_prime: float
    gamma_prime: float
    lambda_prime: float       # (beta' - 1/2) * log(gamma')
    paired_index: int         # 1-based index of the nearest ordinate
    gamma_c: float
    case_tag: CaseLabel
    m_trunc: float            # reciprocal-gap sum at gamma_c evaluated at gamma'
    moment_residual: float
    newton_residual: float    # |zeta'(rho')|


def _newton_batch(seeds: np.ndarray, t_min: float, t_max: float,
                  cfg: EvalConfig) -> np.ndarray:
    """Run damped Newton on zeta' from every seed; return converged points."""
    z = seeds.astype(complex).copy()
    alive = np.ones(z.size, dtype=bool)
    for _ in range(NEWTON_STEPS):
        if not np.any(alive):
            break
        d1, d2 = derivs_batch(z[alive], cfg)
        bad = np.abs(d2) < 1e-300
        step = np.where(bad, 0.0, d1 / np.where(bad, 1.0, d2))
        mag = np.abs(step)
        step = step * np.where(mag > 0.25, 0.25 / np.maximum(mag, 1e-300), 1.0)
        znew = z[alive] - step
        # abandon iterates that leave the strip (the quadrature circle must
        # stay inside the internal evaluation box)
        out = ((znew.real < SEARCH_RE[0] - 0.1) | (znew.real > SEARCH_RE[1] + 0.1)
               | (znew.imag < t_min - 2.5) | (znew.imag > t_max + 2.5))
        znew = np.where(out, z[alive], znew)
        done = (np.abs(step) < 1e-13 * (1.0 + np.abs(znew))) | out
        z[alive] = znew
        keep = alive.copy()
        keep[alive] = ~done
        alive = keep
    return z


def _dedup(points: np.ndarray) -> np.ndarray:
    out: list[complex] = []
    for p in points:
        if all(abs(p - q) > DEDUP_TOL for q in out):
            out.append(complex(p))
    return np.array(sorted(out, key=lambda w: w.imag), dtype=complex)


def _seed_rounds(table: ZeroTable, t_min: float, t_max: float):
    g = table.ordinates
    lo = np.searchsorted(g, t_min - 1.5)
    hi = np.searchsorted(g, t_max + 1.5)
    pairs = [(g[i], g[i + 1]) for i in range(max(lo - 1, 0), min(hi, g.size - 1))]
    mids = np.array([0.5 * (a + b) for a, b in pairs])
    base = 0.5 + 1.0 / np.log(mids) + 1j * mids
    yield base
    # denser deterministic fallbacks: more horizontal offsets, then gap thirds
    sigmas = np.array([0.75, 1.25, 1.75, 2.25, 2.75])
    yield (sigmas[None, :] + 1j * mids[:, None]).ravel()
    thirds = np.concatenate([[a + (b - a) / 3.0, a + 2.0 * (b - a) / 3.0] for a, b in pairs])
    yield (np.array([0.6, 1.0, 1.5, 2.0, 2.5])[None, :] + 1j * thirds[:, None]).ravel()


def count_zeros_contour(t_min: float, t_max: float, cfg: EvalConfig = DEFAULT_CONFIG,
                        re_min: float = SEARCH_RE[0], re_max: float = SEARCH_RE[1]) -> int:
    """Number of zeros of zeta' inside the rectangle, by winding of zeta'.

    Adaptive phase tracking: every segment with a principal phase jump above
    one radian is split until resolved; a contour point with |zeta'| below
    1e-9 aborts (nudge the rectangle in that unlikely event).
    """
    corners = [complex(re_min, t_min), complex(re_max, t_min),
               complex(re_max, t_max), complex(re_min, t_max),
               complex(re_min, t_min)]
    pts: list[complex] = []
    for a, b in zip(corners[:-1], corners[1:]):
        length = abs(b - a)
        n = max(12, int(math.ceil(length / 0.05)))
        pts.extend(a + (b - a) * k / n for k in range(n))
    pts.append(corners[0])
    z = np.array(pts, dtype=complex)
    f, _ = derivs_batch(z, cfg)
    if np.min(np.abs(f)) < 1e-9:
        raise NumericalError("contour passes too near a zero of zeta'")

    total = 0.0
    stack = list(zip(z[:-1], z[1:], f[:-1], f[1:]))
    max_rounds = 30
    for _ in range(max_rounds):
        diffs = np.angle(np.array([fb / fa for _, _, fa, fb in stack]))
        coarse = np.abs(diffs) > 1.0
        if not np.any(coarse):
            total = float(np.sum(diffs))
            break
        fine_idx = np.nonzero(coarse)[0]
        mids = np.array([0.5 * (stack[i][0] + stack[i][1]) for i in fine_idx])
        fm, _ = derivs_batch(mids, cfg)
        if np.min(np.abs(fm)) < 1e-9:
            raise NumericalError("contour refinement hit a zero of zeta'")
        new_stack = []
        fine_pos = {int(i): k for k, i in enumerate(fine_idx)}
        for i, seg in enumerate(stack):
            if i in fine_pos:
                a, b, fa, fb = seg
                m, fmid = mids[fine_pos[i]], fm[fine_pos[i]]
                new_stack.append((a, m, fa, fmid))
                new_stack.append((m, b, fmid, fb))
            else:
                new_stack.append(seg)
        stack = new_stack
    else:
        raise NumericalError("contour winding did not resolve")
    winding = total / (2.0 * math.pi)
    count = int(round(winding))
    if abs(winding - count) > 1e-3:
        raise NumericalError(f"winding {winding} is not close to an integer")
    return count


def moment_residual_value(m_trunc: float, logderiv: complex, height: float) -> float:
    """|m_trunc / i + logderiv| / log(height); the pure combination formula."""
    return abs(-1j * m_trunc + logderiv) / math.log(height)


def moment_residual(record: DerivZeroRecord, table: ZeroTable, filter_cfg: FilterConfig,
                    cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """|m_trunc / i + zeta'/zeta(1/2 + 1/log T + i gamma')| / log T.

    The reciprocal-gap sum at the paired ordinate should cancel the imaginary
    part of the logarithmic derivative up to a bounded multiple of log T when
    the pair sits in the well-spaced set; the normalized modulus is the
    reported residual.
    """
    t_height = filter_cfg.height
    s = 0.5 + 1.0 / math.log(t_height) + 1j * record.gamma_prime
    return moment_residual_value(record.m_trunc, log_deriv(s, cfg), t_height)


def _build_record(root: complex, resid: float, table: ZeroTable,
                  filter_cfg: FilterConfig, cfg: EvalConfig) -> DerivZeroRecord:
    beta_p = float(root.real)
    gamma_p = float(root.imag)
    idx, gamma_c = nearest_zero(table, gamma_p)
    lam = (beta_p - 0.5) * math.log(gamma_p)
    tag = classify_case(beta_p, gamma_p, gamma_c, filter_cfg)
    m_tr = reciprocal_sum_near(table, idx, gamma_p, filter_cfg.c_star)
    partial = DerivZeroRecord(
        beta_prime=beta_p, gamma_prime=gamma_p, lambda_prime=lam,
        paired_index=idx, gamma_c=gamma_c, case_tag=tag, m_trunc=m_tr,
        moment_residual=math.nan, newton_residual=resid)
    res = moment_residual(partial, table, filter_cfg, cfg)
    return DerivZeroRecord(
        beta_prime=beta_p, gamma_prime=gamma_p, lambda_prime=lam,
        paired_index=idx, gamma_c=gamma_c, case_tag=tag, m_trunc=m_tr,
        moment_residual=res, newton_residual=resid)


def find_deriv_zeros(table: ZeroTable, t_min: float, t_max: float,
                     cfg: EvalConfig = DEFAULT_CONFIG,
                     filter_cfg: FilterConfig | None = None) -> list[DerivZeroRecord]:
    """All zeros of zeta' with t_min < Im < t_max inside the search strip.

    Completeness is certified by the argument-principle count; seed rounds
    densify until the Newton set matches it.
    """
    if not (10.0 <= t_min <= t_max <= 5000.0):
        raise DomainError("need 10 <= t_min <= t_max <= 5000")
    if t_min == t_max:
        return []
    if table.height < t_max + 2.0:
        raise CoverageError(f"table must cover t_max + 2 = {t_max + 2}",
                            needed=(table.height, t_max + 2.0))
    if filter_cfg is None:
        filter_cfg = FilterConfig(height=t_max)
    expected = count_zeros_contour(t_min, t_max, cfg)
    found: np.ndarray = np.empty(0, dtype=complex)
    for seeds in _seed_rounds(table, t_min, t_max):
        roots = _newton_batch(seeds, t_min, t_max, cfg)
        d1, _ = derivs_batch(roots, cfg)
        ok = (np.abs(d1) < RESIDUAL_ACCEPT)
        ok &= (roots.real > SEARCH_RE[0]) & (roots.real < SEARCH_RE[1])
        ok &= (roots.imag > t_min) & (roots.imag < t_max)
        found = _dedup(np.concatenate([found, roots[ok]]))
        if found.size == expected:
            break
    if found.size != expected:
        raise NumericalError(
            f"newton search found {found.size} zeros, contour counts {expected}")
    d1, _ = derivs_batch(found, cfg)
    return [_build_record(complex(z), float(abs(r)), table, filter_cfg, cfg)
            for z, r in zip(found, d1)]


CACHE_HEADER = ("gamma_prime,beta_prime,lambda_prime,gamma_c,case,"
                "M_trunc,moment_residual,newton_residual")


def cache_key(table_digest: str, t_min: float, t_max: float, cfg: EvalConfig,
              filter_cfg: FilterConfig) -> str:
    text = (f"{table_digest}|{t_min!r}|{t_max!r}|{cfg.digest()}|"
            f"{filter_cfg.eps!r}|{filter_cfg.c_star!r}|{filter_cfg.c!r}|"
            f"{filter_cfg.a!r}|{filter_cfg.height!r}")
    return hashlib.sha256(text.encode()).hexdigest()[:20]


def records_to_csv(records: list[DerivZeroRecord]) -> str:
    lines = [CACHE_HEADER]
    for r in sorted(records, key=lambda r: r.gamma_prime):
        lines.append(",".join([
            f"{r.gamma_prime:.12g}", f"{r.beta_prime:.12g}", f"{r.lambda_prime:.12g}",
            f"{r.gamma_c:.12g}", str(r.case_tag), f"{r.m_trunc:.12g}",
            f"{r.moment_residual:.12g}", f"{r.newton_residual:.12g}"]))
    return "\n".join(lines) + "\n"


def records_from_csv(text: str, table: ZeroTable) -> list[DerivZeroRecord]:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or lines[0] != CACHE_HEADER:
        raise DomainError("unrecognized record CSV header")
    out = []
    for ln in lines[1:]:
        (gp, bp, lam, gc, case, mt, mr, nr) = ln.split(",")
        idx, gamma_c = nearest_zero(table, float(gp))
        out.append(DerivZeroRecord(
            beta_prime=float(bp), gamma_prime=float(gp), lambda_prime=float(lam),
            paired_index=idx, gamma_c=float(gc), case_tag=CaseLabel(int(case)),
            m_trunc=float(mt), moment_residual=float(mr), newton_residual=float(nr)))
    return out


def write_atomic(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cached_deriv_zeros(table: ZeroTable, t_min: float, t_max: float, cache_dir: Path,
                       cfg: EvalConfig = DEFAULT_CONFIG,
                       filter_cfg: FilterConfig | None = None
                       ) -> tuple[list[DerivZeroRecord], bool]:
    """Cache-through variant; returns (records, served_from_cache)."""
    if filter_cfg is None:
        filter_cfg = FilterConfig(height=t_max)
    key = cache_key(table.content_digest, t_min, t_max, cfg, filter_cfg)
    path = Path(cache_dir) / f"dzeros-{key}.csv"
    if path.exists():
        return records_from_csv(path.read_text(), table), True
    records = find_deriv_zeros(table, t_min, t_max, cfg, filter_cfg)
    write_atomic(path, records_to_csv(records))
    return records, False
