"""Shared test utilities."""

from __future__ import annotations

import numpy as np


def set_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Symmetric Hausdorff distance between two finite complex point sets.

    Conjugation/rotation invariance tests must compare sets, not sorted
    arrays: members of a conjugate pair can have real parts that differ at
    machine precision, which breaks lexicographic pairing.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    d = np.abs(a[:, None] - b[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))
