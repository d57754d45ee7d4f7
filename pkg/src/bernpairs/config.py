"""Tunable limits.

Module-level singleton so library calls stay simple; tests monkeypatch fields.
Environment overrides are read once at import:

  BERNPAIRS_MAX_EXACT_N   largest index served by the exact Bernoulli path
  BERNPAIRS_PURE_PYTHON   "1" forces the pure-Python kernels (see _kernels)
"""

from __future__ import annotations

import os
from dataclasses import dataclass


@dataclass
class Limits:
    # Exact rational Bernoulli numbers: indices above this raise ResourceLimit.
    max_exact_n: int = 20000
    # Exact path is preferred below this index when nothing is cached yet;
    # above it the power-sum route is usually cheaper for modular queries.
    exact_cutoff: int = 4096
    # Power-sum extraction: cap on the number of summation terms (p^m).
    power_sum_terms: int = 1 << 31
    # Digit-lifting feasibility: order 2 allowed for p below this bound,
    # order 3 below the next, nothing beyond lift_max_order.
    lift_order2_max_p: int = 1000
    lift_order3_max_p: int = 50
    lift_max_order: int = 3
    # minimal_composite may sieve primes on demand up to this cap.
    sieve_cap: int = 20000


def _from_env() -> Limits:
    lim = Limits()
    raw = os.environ.get("BERNPAIRS_MAX_EXACT_N")
    if raw is not None:
        try:
            lim.max_exact_n = int(raw)
        except ValueError:
            raise ValueError(f"BERNPAIRS_MAX_EXACT_N must be an integer, got {raw!r}")
    return lim


LIMITS = _from_env()
