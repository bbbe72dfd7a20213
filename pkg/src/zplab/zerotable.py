"""Zeta-zero ordinate tables and their combinatorial statistics.

Tables are plain text files, one positive decimal ordinate per line in
ascending order; ``#`` lines are comments.  Ordinates are indexed the way the
zeros are everywhere in the literature: 1-based, gamma_1 = 14.13...

The statistics here are purely combinatorial scans of the table: normalized
gaps, signed reciprocal-distance sums over windows centered at a zero, zero
counts and their discrepancy against the local average, a neighbor-spacing
filter, nearest-zero pairing, and the case classification of a derivative
zero against its paired ordinate.
"""

from __future__ import annotations

import enum
import hashlib
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import CoverageError, DomainError, TableParseError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ZeroTable:
    """Strictly ascending ordinates with provenance digest."""

    ordinates: np.ndarray
    count: int
    source_path: str
    content_digest: str

    def gamma(self, j: int) -> float:
        """1-based ordinate access: gamma(1) is the first zero."""
        if not 1 <= j <= self.count:
            raise DomainError(f"index {j} outside 1..{self.count}")
        return float(self.ordinates[j - 1])

    @property
    def height(self) -> float:
        return float(self.ordinates[-1])


@dataclass(frozen=True)
class GapRecord:
    index: int        # j of the left endpoint, 1-based
    gamma: float      # gamma_j
    lam: float        # (gamma_{j+1} - gamma_j) * log(gamma_j)


@dataclass(frozen=True)
class DiscrepancyRecord:
    n: int
    l1: int
    l2: int
    value: float


@dataclass(frozen=True)
class FilterConfig:
    """Constants for the well-spacing filter and case classification.

    K is derived on access as 4 * C_star * floor(log log T); delta is the
    near-pairing scale 8 / eps^2.
    """

    eps: float = 0.3
    c_star: float = 2.0
    c: float = 2.0
    a: float = 2.0
    height: float = 200.0  # T

    def __post_init__(self):
        if self.eps <= 0 or self.c <= 0 or self.a <= 0 or self.height <= math.e:
            raise DomainError("filter constants must be positive (and T > e)")
        if self.c_star <= 1:
            raise DomainError("C* must exceed 1")

    @property
    def k_neighbors(self) -> int:
        return int(4 * self.c_star * math.floor(math.log(math.log(self.height))))

    @property
    def delta(self) -> float:
        return 8.0 / (self.eps * self.eps)

    @property
    def offset_limit(self) -> int:
        """Largest |l| for the count-discrepancy condition."""
        return int(math.log(self.height) / (self.c_star * math.log(math.log(self.height))))


class CaseLabel(enum.Enum):
    CASE1 = 1  # horizontal distance to the half line exceeds the pairing distance
    CASE2 = 2  # paired ordinate is far on the local scale
    CASE3 = 3  # paired ordinate is near and dominates

    def __str__(self) -> str:  # CSV cell
        return str(self.value)


def load_zero_table(path: str | Path) -> ZeroTable:
    """Parse and validate an ordinate table file."""
    path = Path(path)
    raw = path.read_bytes()
    digest = hashlib.sha256(raw).hexdigest()
    values: list[float] = []
    for line_no, line in enumerate(raw.decode("utf-8").splitlines(), start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        try:
            v = float(text)
        except ValueError:
            raise TableParseError(f"line {line_no}: not a number: {text!r}", line_no)
        if not math.isfinite(v) or v <= 0:
            raise TableParseError(f"line {line_no}: ordinates must be positive", line_no)
        if values and v <= values[-1]:
            raise TableParseError(
                f"line {line_no}: ordinate {v} not above previous {values[-1]}", line_no)
        values.append(v)
    if not values:
        raise TableParseError(f"{path}: no ordinates found")
    if values[0] <= 1.0:
        raise TableParseError("first ordinate must exceed 1 (log must be positive)")
    return ZeroTable(ordinates=np.array(values), count=len(values),
                     source_path=str(path), content_digest=digest)


def gap_lambdas(table: ZeroTable) -> list[GapRecord]:
    """Normalized gaps (gamma_{j+1} - gamma_j) * log(gamma_j), j = 1..count-1."""
    if table.count < 2:
        raise DomainError("need at least two ordinates")
    lam = gap_lambda_values(table)
    g = table.ordinates
    return [GapRecord(index=j + 1, gamma=float(g[j]), lam=float(lam[j]))
            for j in range(table.count - 1)]


def gap_lambda_values(table: ZeroTable) -> np.ndarray:
    """Vectorized form of :func:`gap_lambdas`."""
    if table.count < 2:
        raise DomainError("need at least two ordinates")
    g = table.ordinates
    return np.diff(g) * np.log(g[:-1])


def m_hat(values: np.ndarray, nu: float) -> float:
    """Empirical cumulative fraction: (1/J) * #{values <= nu}."""
    values = np.asarray(values)
    if values.size == 0:
        raise DomainError("empty sample")
    return float(np.count_nonzero(values <= nu) / values.size)


def m_window_sum(table: ZeroTable, j: int, inner: float, outer: float) -> float:
    """Signed reciprocal sum over inner < |gamma_j - gamma_n| < outer, both strict."""
    if not 0 <= inner < outer:
        raise DomainError("need 0 <= inner < outer")
    gj = table.gamma(j)
    g = table.ordinates
    lo = np.searchsorted(g, gj - outer, side="left")
    hi = np.searchsorted(g, gj + outer, side="right")
    d = gj - g[lo:hi]
    mask = (np.abs(d) > inner) & (np.abs(d) < outer)
    return float(np.sum(1.0 / d[mask]))


def truncation_window(gamma_c: float, c_star: float) -> float:
    """Window half-width C* * log log(gamma) / log(gamma)."""
    return c_star * math.log(math.log(gamma_c)) / math.log(gamma_c)


def reciprocal_sum_near(table: ZeroTable, center_index: int, eval_point: float,
                        c_star: float) -> float:
    """Sum of 1/(gamma - eval_point) over 0 < |gamma - gamma_c| <= window.

    The window is the local truncation scale of gamma_c; the outer bound is
    inclusive.  ``eval_point`` is gamma_c itself for the pure-zero statistic
    and the ordinate of a derivative zero for its attached statistic.
    """
    gc = table.gamma(center_index)
    if gc <= math.e:
        raise DomainError("center too low: log log is undefined or negative")
    x = truncation_window(gc, c_star)
    if x >= 1.0:
        raise DomainError(f"window {x:.3f} >= 1: height too small for this C*")
    g = table.ordinates
    lo = np.searchsorted(g, gc - x, side="left")
    hi = np.searchsorted(g, gc + x, side="right")
    block = g[lo:hi]
    sel = block[(np.abs(block - gc) > 0.0) & (np.abs(block - gc) <= x)]
    d = sel - eval_point
    if np.any(d == 0.0):
        raise DomainError("evaluation point coincides with a zero in the window")
    return float(np.sum(1.0 / d))


def m_truncated(table: ZeroTable, center_index: int, c_star: float) -> float:
    """Pure-zero truncated reciprocal sum (evaluation point = the center zero)."""
    return reciprocal_sum_near(table, center_index, table.gamma(center_index), c_star)


def count_N(table: ZeroTable, t: float) -> int:
    """#{gamma_n <= t}; errors above table coverage."""
    if t > table.height:
        raise CoverageError(f"t={t} beyond table end {table.height}",
                            needed=(table.height, t))
    return int(np.searchsorted(table.ordinates, t, side="right"))


def discrepancy(table: ZeroTable, n: int, l1: int, l2: int, c_star: float) -> DiscrepancyRecord:
    """Zero-count discrepancy over the offset window [l1, l2] at gamma_n.

    Counts between gamma_n + l1 * X and gamma_n + l2 * X (X the truncation
    window) minus the average (l2 - l1) * C* * log log(gamma_n) / (2 pi).
    """
    if l1 >= l2:
        raise DomainError("need l1 < l2")
    gn = table.gamma(n)
    x = truncation_window(gn, c_star)
    t1, t2 = gn + l1 * x, gn + l2 * x
    if t1 < 0 or t2 > table.height:
        raise CoverageError(f"offsets [{t1:.3f}, {t2:.3f}] not covered", needed=(t1, t2))
    value = (count_N(table, t2) - count_N(table, t1)
             - (l2 - l1) * c_star * math.log(math.log(gn)) / TWO_PI)
    return DiscrepancyRecord(n=n, l1=l1, l2=l2, value=float(value))


def wellspaced_filter(table: ZeroTable, cfg: FilterConfig) -> np.ndarray:
    """1-based indices n with gamma_n <= T passing the two spacing conditions.

    Condition one: every gap among the K neighbors on each side is at least
    eps / (2 log gamma_n) (indices below the table start are skipped, indices
    above its end raise a coverage error).  Condition two: the count
    discrepancy stays below C * log log T for every offset pair within the
    admissible range.  The residual condition on the short zero-sum lives in
    the evaluation layer; callers intersect it separately.
    """
    t_cap = cfg.height
    if table.height < t_cap + 1.0:
        raise CoverageError(f"table must cover T + 1 = {t_cap + 1}",
                            needed=(table.height, t_cap + 1.0))
    g = table.ordinates
    n_cand = int(np.searchsorted(g, t_cap, side="right"))
    if n_cand == 0:
        return np.empty(0, dtype=int)
    k = cfg.k_neighbors
    if n_cand + k - 1 > g.size - 1:
        raise CoverageError(
            f"need {k} neighbors above T: table ends too soon",
            needed=(table.height, float(t_cap)))
    gaps = np.diff(g)
    # the K neighbor gaps on each side of gamma_n form the contiguous block
    # gaps[n-1-K .. n-2+K] (0-based); pad left with inf so low-index
    # candidates only see the gaps that exist
    thresh = cfg.eps / (2.0 * np.log(g[:n_cand]))
    padded = np.concatenate([np.full(k, np.inf), gaps])
    windows = np.lib.stride_tricks.sliding_window_view(padded, 2 * k)
    ok1 = windows[:n_cand].min(axis=1) >= thresh
    idx1 = np.nonzero(ok1)[0] + 1

    bound = cfg.c * math.log(math.log(t_cap))
    limit = cfg.offset_limit
    pairs = [(a, b) for a in range(-limit, limit + 1)
             for b in range(-limit, limit + 1) if a < b]
    keep = []
    for n in idx1:
        good = True
        for (a, b) in pairs:
            rec = discrepancy(table, int(n), a, b, cfg.c_star)
            if rec.value > bound:
                good = False
                break
        if good:
            keep.append(int(n))
    return np.array(keep, dtype=int)


def nearest_zero(table: ZeroTable, gamma_prime: float) -> tuple[int, float]:
    """Index and ordinate of the zero closest to gamma_prime; ties go to the smaller ordinate."""
    g = table.ordinates
    if not g[0] - 1.0 <= gamma_prime <= g[-1]:
        raise CoverageError(f"gamma'={gamma_prime} outside covered band",
                            needed=(float(g[0]), float(g[-1])))
    pos = int(np.searchsorted(g, gamma_prime, side="left"))
    best, best_d = None, math.inf
    # candidates in ascending ordinate order; strict improvement means an
    # exact tie keeps the earlier (smaller) ordinate
    for cand in (pos - 1, pos):
        if 0 <= cand < g.size:
            d = abs(g[cand] - gamma_prime)
            if d < best_d:
                best, best_d = cand, d
    return best + 1, float(g[best])


def classify_case(beta_prime: float, gamma_prime: float, gamma_c: float,
                  cfg: FilterConfig) -> CaseLabel:
    """Mutually exclusive location classes of a derivative zero near its pair."""
    if beta_prime < 0.5:
        raise DomainError("beta' must be at least 1/2")
    if gamma_prime <= 10.0:
        raise DomainError("gamma' must exceed 10")
    horiz = beta_prime - 0.5
    vert = abs(gamma_prime - gamma_c)
    if horiz > vert:
        return CaseLabel.CASE1
    if vert > cfg.delta / math.log(gamma_prime):
        return CaseLabel.CASE2
    return CaseLabel.CASE3


def twosided_ratio(beta_prime: float, gamma_prime: float, gamma_c: float) -> float:
    """(beta' - 1/2) / ((gamma' - gamma_c)^2 * log gamma')."""
    if gamma_prime == gamma_c:
        raise DomainError("ratio undefined at gamma' == gamma_c")
    return (beta_prime - 0.5) / ((gamma_prime - gamma_c) ** 2 * math.log(gamma_prime))
