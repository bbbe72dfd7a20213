"""Numerical laboratory for zeta-zero spacing statistics and unit-circle polynomials.

Subpackages by topic:

- ``polyzeros``: unit-circle zero configurations, their monic polynomials,
  derivative zeros, and the unrolled-disk coordinates.
- ``cue``: Haar-unitary (CUE) eigenangle sampling and ensemble statistics.
- ``zerotable``: zeta-zero ordinate tables and their combinatorial statistics
  (normalized gaps, reciprocal-gap window sums, count discrepancies,
  well-spacing filters).
- ``zeta``: direct evaluation of zeta and its first two derivatives at
  moderate height, short zero-sums, and tapered prime Dirichlet sums.
- ``derivzeros``: locating zeros of the zeta derivative and the residual
  statistics attached to them.
- ``gapstats``: empirical CDFs, power-law exponent fits, and small-gap
  counters.
- ``cli``: command-line front end emitting CSV/JSON/SVG artifacts.
"""

__version__ = "0.1.0"
