"""Tour feasibility and objective evaluation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from . import physics
from .config import SolverConfig
from .dataio import CityTable
from .temporal import Instant, is_dark

#: A closed tour: city indices starting and ending at the depot (0), visiting
#: every destination exactly once in between.
Tour = tuple[int, ...]


def validate_tour(tour: Sequence[int], n: int) -> Tour:
    """Check the closed-tour shape and return it as a tuple."""
    t = tuple(int(i) for i in tour)
    if len(t) != n + 2 or t[0] != 0 or t[-1] != 0:
        raise ValueError(f"tour must be (0, ..., 0) over {n} destinations, got length {len(t)}")
    if sorted(t[1:-1]) != list(range(1, n + 1)):
        raise ValueError("tour must visit each destination exactly once")
    return t


@dataclass(frozen=True)
class LegRecord:
    """One flown leg.  Times are absolute minutes, speed m/s, work joules."""

    from_city: int
    to_city: int
    depart: Instant
    arrive: Instant
    speed: float
    distance: float
    area: float
    work: float
    daylight: bool


@dataclass(frozen=True)
class TourEvaluation:
    """Full accounting of one tour under fixed start time and default speed."""

    tour: Tour
    legs: tuple[LegRecord, ...]
    total_work: float
    total_distance: float
    daylight_count: int
    objective: float
    duration_hours: float
    #: Cumulative fraction of total population served after each leg.
    population_served_by_leg: tuple[float, ...]


def evaluate(
    tour: Sequence[int],
    table: CityTable,
    start: Instant,
    v_default: float,
    config: SolverConfig,
) -> TourEvaluation:
    """Fly the tour leg by leg and price it.

    Each leg's drag uses the cross-section before its delivery; arrivals
    deliver instantly and the next leg departs immediately.  A leg with no
    dark arrival flies at the default speed and counts as a daylight
    violation.  The objective is total work plus the daylight penalty per
    violation.
    """
    t = validate_tour(tour, table.n)
    if not math.isfinite(start):
        raise ValueError("start instant must be finite")
    bounds = config.speed_bounds
    v_def = bounds.clamp(v_default)
    total = table.total_population
    delivered = 0.0
    clock = start
    legs: list[LegRecord] = []
    served: list[float] = []
    total_work = 0.0
    total_distance = 0.0
    daylight_count = 0
    for k in range(len(t) - 1):
        i, j = t[k], t[k + 1]
        d = float(table.distance_cache[i, j])
        area = physics.payload_area(delivered, total)
        window = table.window_of(j)
        v = physics.select_speed(d, clock, window, v_default, bounds)
        if v is None:
            v = v_def
            daylight = True
        else:
            daylight = False if window is None else not is_dark(window, clock + d / v / 60.0)
        arrive = clock + d / v / 60.0
        work = physics.aero_work(d, v, area)
        total_work += work
        total_distance += d
        daylight_count += int(daylight)
        legs.append(LegRecord(i, j, clock, arrive, v, d, area, work, daylight))
        delivered += table.populations[j]
        served.append(delivered / total)
        clock = arrive
    return TourEvaluation(
        tour=t,
        legs=tuple(legs),
        total_work=total_work,
        total_distance=total_distance,
        daylight_count=daylight_count,
        objective=total_work + daylight_count * config.daylight_penalty,
        duration_hours=(clock - start) / 60.0,
        population_served_by_leg=tuple(served),
    )


def reverse_tour(tour: Sequence[int]) -> Tour:
    """The same cycle walked in the opposite direction (depot stays first)."""
    t = tuple(tour)
    return (t[0],) + tuple(reversed(t[1:-1])) + (t[-1],)


def rogue_check(
    tour: Sequence[int],
    table: CityTable,
    start: Instant,
    v_default: float,
    config: SolverConfig,
) -> tuple[Tour, TourEvaluation]:
    """Evaluate a tour and its reversal from the same departure; keep the better.

    Ties keep the forward direction.
    """
    forward = evaluate(tour, table, start, v_default, config)
    reversed_t = reverse_tour(forward.tour)
    backward = evaluate(reversed_t, table, start, v_default, config)
    if backward.objective < forward.objective:
        return reversed_t, backward
    return forward.tour, forward
