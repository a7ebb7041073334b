"""Exact brute-force ground truth for small instances."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .config import SolverConfig
from .dataio import CityTable
from .evaluator import Tour, rogue_check
from .temporal import Instant

#: Enumeration guard: 9! = 362,880 permutations is the most we ever walk.
MAX_DESTINATIONS = 9


@dataclass(frozen=True)
class OracleResult:
    best_tour: Tour
    best_objective: float
    enumerated: int


def brute_force(
    table: CityTable,
    start: Instant,
    v_default: float,
    config: SolverConfig,
) -> OracleResult:
    """Evaluate every destination permutation and return the global minimiser.

    Each permutation passes through the same rogue (direction) check the
    colony applies, so oracle objectives are directly comparable.  Ties are
    broken by the lexicographically smallest permutation, making golden
    files reproducible.
    """
    n = table.n
    if n > MAX_DESTINATIONS:
        raise ValueError(
            f"brute force refuses {n} destinations (bound: {MAX_DESTINATIONS}); "
            "the factorial search space would be unreasonable"
        )
    best_tour: Tour | None = None
    best_objective = float("inf")
    enumerated = 0
    for perm in itertools.permutations(range(1, n + 1)):
        tour = (0, *perm, 0)
        kept, ev = rogue_check(tour, table, start, v_default, config)
        enumerated += 1
        if ev.objective < best_objective:
            best_objective = ev.objective
            best_tour = kept
    assert best_tour is not None
    return OracleResult(best_tour=best_tour, best_objective=best_objective, enumerated=enumerated)
