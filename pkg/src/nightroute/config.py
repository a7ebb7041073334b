"""Solver configuration shared by the evaluator and the colony loop."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .physics import DEFAULT_SPEED_BOUNDS, SpeedBounds, kmh_to_mps

#: Heuristic modes: full aerodynamic-work guidance, or plain distance guidance.
MODE_FULL = "full"
MODE_DISTANCE_ONLY = "distance_only"

#: Penalty per daylight-arrival leg, joules.  Large enough that one violation
#: dominates any achievable drag total.
DEFAULT_DAYLIGHT_PENALTY_J = 2.1e100


@dataclass(frozen=True)
class SolverConfig:
    """All tunables for one solver run.

    Speeds are m/s and times are absolute minutes; the CLI converts from
    km/h and ISO timestamps at the boundary.
    """

    iterations: int = 5000
    ants: int = 75
    alpha: float = 3.0
    beta: float = 2.0
    deposit_factor: float = 1.0
    evaporation_rate: float = 0.10
    tau_min: float = 0.1
    tau_max: float = 10.0
    epsilon_start: float = 0.40
    epsilon_min: float = 0.05
    v_default_init: float = kmh_to_mps(7650.0)
    speed_bounds: SpeedBounds = field(default=DEFAULT_SPEED_BOUNDS)
    daylight_penalty: float = DEFAULT_DAYLIGHT_PENALTY_J
    elitist_weight: float = 2.0
    heuristic_penalty_factor: float = 1e-12
    mode: str = MODE_FULL
    rng_seed: int = 0
    start_instant: float = 0.0
    #: 0 = vectorised batch over ants, 1 = serial per ant, >1 = thread pool.
    #: All three produce identical results.
    ant_workers: int = 0

    def __post_init__(self) -> None:
        if self.iterations <= 0:
            raise ValueError("iterations must be positive")
        if self.ants <= 0:
            raise ValueError("ants must be positive")
        if self.alpha < 0.0 or self.beta < 0.0:
            raise ValueError("alpha and beta must be non-negative")
        if not 0.0 < self.evaporation_rate < 1.0:
            raise ValueError("evaporation_rate must lie in (0, 1)")
        if not 0.0 < self.tau_min < self.tau_max:
            raise ValueError("need 0 < tau_min < tau_max")
        if not 0.0 < self.epsilon_min <= self.epsilon_start <= 1.0:
            raise ValueError("need 0 < epsilon_min <= epsilon_start <= 1")
        if self.v_default_init <= 0.0:
            raise ValueError("v_default_init must be positive")
        if self.deposit_factor <= 0.0:
            raise ValueError("deposit_factor must be positive")
        if self.daylight_penalty < 0.0:
            raise ValueError("daylight_penalty must be non-negative")
        if self.elitist_weight < 0.0:
            raise ValueError("elitist_weight must be non-negative")
        if not 0.0 < self.heuristic_penalty_factor <= 1.0:
            raise ValueError("heuristic_penalty_factor must lie in (0, 1]")
        if self.mode not in (MODE_FULL, MODE_DISTANCE_ONLY):
            raise ValueError(f"unknown mode {self.mode!r}")
        if not math.isfinite(self.start_instant):
            raise ValueError("start_instant must be finite")
        if self.ant_workers < 0:
            raise ValueError("ant_workers must be >= 0")
