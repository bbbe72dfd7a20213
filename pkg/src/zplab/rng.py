"""Seeded random number generation for reproducible ensembles.

All randomness flows through a Philox 4x64 counter-based generator keyed by a
single 64-bit integer seed, so every sample is a pure function of its seed.
Gaussian variates are produced by the Box-Muller transform on uniform pairs
(rather than whatever rejection method the host library defaults to), which
pins the exact output stream given the uniform stream.
"""

from __future__ import annotations

import numpy as np


def uniform_generator(seed: int) -> np.random.Generator:
    """Philox-backed generator keyed by ``seed``."""
    return np.random.Generator(np.random.Philox(key=np.uint64(seed)))


def standard_normals(seed_or_gen: int | np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
    """Standard real Gaussians via Box-Muller.

    Draws uniform pairs (u1, u2) and returns sqrt(-2 ln(1-u1)) * cos(2 pi u2);
    the companion sine variate is discarded to keep the layout independent of
    the requested shape. 1-u1 lies in (0, 1], so the log never sees zero.
    """
    gen = seed_or_gen if isinstance(seed_or_gen, np.random.Generator) else uniform_generator(seed_or_gen)
    u = gen.random((2,) + tuple(shape))
    return np.sqrt(-2.0 * np.log1p(-u[0])) * np.cos(2.0 * np.pi * u[1])


def standard_complex_normals(seed_or_gen: int | np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
    """Standard complex Gaussians (E|z|^2 = 1) via one Box-Muller pair each.

    Uses both the cosine and sine branches of a single uniform pair, so each
    complex variate consumes exactly two uniforms.
    """
    gen = seed_or_gen if isinstance(seed_or_gen, np.random.Generator) else uniform_generator(seed_or_gen)
    u = gen.random((2,) + tuple(shape))
    r = np.sqrt(-np.log1p(-u[0]))  # modulus for E|z|^2 = 1
    phase = 2.0 * np.pi * u[1]
    return r * (np.cos(phase) + 1j * np.sin(phase))
