"""The ant-colony engine: construction, pheromone updates, and the solve loop."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from . import physics
from .config import MODE_DISTANCE_ONLY, SolverConfig
from .dataio import CityTable
from .evaluator import Tour, TourEvaluation, evaluate, rogue_check

logger = logging.getLogger(__name__)

#: Floors keeping the 1/distance and 1/work heuristics finite on degenerate edges.
MIN_EDGE_DISTANCE_M = 1e-3
MIN_EDGE_WORK_J = 1e-6


@dataclass
class PheromoneMatrix:
    """Directed trail intensities over (N+1) x (N+1) city pairs; diagonal unused."""

    values: np.ndarray
    tau_min: float
    tau_max: float

    @classmethod
    def initial(cls, n_destinations: int, tau_min: float, tau_max: float) -> "PheromoneMatrix":
        """Uniform unit trails, clamped into the configured bounds."""
        size = n_destinations + 1
        values = np.full((size, size), 1.0)
        np.clip(values, tau_min, tau_max, out=values)
        return cls(values, tau_min, tau_max)

    def clamp(self) -> None:
        np.clip(self.values, self.tau_min, self.tau_max, out=self.values)

    def in_bounds(self) -> bool:
        off_diagonal = ~np.eye(len(self.values), dtype=bool)
        v = self.values[off_diagonal]
        return bool(np.all(v >= self.tau_min) and np.all(v <= self.tau_max))


@dataclass(frozen=True)
class ConvergenceRecord:
    """Best-so-far state at the end of one iteration."""

    iteration: int
    best_objective: float
    best_distance: float
    daylight_count: int
    epsilon: float
    v_default: float


ProgressSink = Callable[[ConvergenceRecord], None]


def epsilon_at(iteration: int, config: SolverConfig) -> float:
    """Exploration rate after ``iteration`` decay steps, floored at epsilon_min.

    The decay factor is tuned so the schedule meets epsilon_min exactly at the
    final iteration.
    """
    decay = (config.epsilon_min / config.epsilon_start) ** (1.0 / config.iterations)
    return max(config.epsilon_min, config.epsilon_start * decay**iteration)


def _candidate_scores(
    cur: np.ndarray,
    clock: np.ndarray,
    delivered: np.ndarray,
    visited: np.ndarray,
    tau_pow: np.ndarray,
    table: CityTable,
    config: SolverConfig,
    v_default: float,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """tau^alpha * eta^beta for every ant x destination; zero where visited.

    Returns (scores, speeds, feasible) shaped (ants, n); column c is city c+1.
    In full mode eta is the inverse of the estimated drag work at the speed
    the leg would actually fly, with infeasible edges scaled down by the
    heuristic penalty.  Distance-only mode is the traditional baseline: a
    static 1/d eta, construction blind to windows (every candidate counts as
    feasible and flies the default speed); violations surface only when the
    finished tour is priced.
    """
    d = table.distance_cache[cur, 1:]
    if config.mode == MODE_DISTANCE_ONLY:
        speeds = np.full(d.shape, config.speed_bounds.clamp(v_default))
        feasible = np.ones(d.shape, dtype=bool)
        eta = 1.0 / np.maximum(d, MIN_EDGE_DISTANCE_M)
    else:
        speeds, feasible = physics.select_speeds(
            d, clock[:, None], table.dusk_utc[1:], table.dawn_utc[1:], v_default, config.speed_bounds
        )
        area = physics.payload_area(delivered[:, None], table.total_population)
        work = physics.aero_work(d, speeds, area)
        eta = 1.0 / np.maximum(work, MIN_EDGE_WORK_J)
        eta = np.where(feasible, eta, eta * config.heuristic_penalty_factor)
    scores = tau_pow[cur, 1:] * eta**config.beta
    return np.where(visited[:, 1:], 0.0, scores), speeds, feasible


def _walk(
    draws: np.ndarray,
    tau_pow: np.ndarray,
    table: CityTable,
    config: SolverConfig,
    epsilon: float,
    v_default: float,
) -> np.ndarray:
    """March a batch of ants through all construction steps in lockstep.

    ``draws`` holds two uniforms per ant per step: a branch pick and a
    candidate pick (drawn either way, so every execution path consumes the
    same stream).  Returns closed tours shaped (ants, n + 2).
    """
    m, n = draws.shape[0], table.n
    visited = np.zeros((m, n + 1), dtype=bool)
    visited[:, 0] = True
    cur = np.zeros(m, dtype=np.int64)
    clock = np.full(m, float(config.start_instant))
    delivered = np.zeros(m)
    tours = np.zeros((m, n + 2), dtype=np.int64)
    rows = np.arange(m)
    for step in range(n):
        scores, speeds, _feasible = _candidate_scores(
            cur, clock, delivered, visited, tau_pow, table, config, v_default
        )
        unvisited = ~visited[:, 1:]
        open_feasible = _feasible & unvisited
        # explore pool: feasible candidates, else any unvisited
        pool = np.where(open_feasible.any(axis=1)[:, None], open_feasible, unvisited)
        pool_count = pool.sum(axis=1)
        pick = np.minimum((draws[:, 2 * step + 1] * pool_count).astype(np.int64), pool_count - 1)
        explore_col = np.argmax(np.cumsum(pool, axis=1) == (pick + 1)[:, None], axis=1)
        exploit_col = np.argmax(scores, axis=1)
        dead = scores[rows, exploit_col] <= 0.0
        if dead.any():
            # all-zero score rows fall back to the lowest unvisited index
            exploit_col = np.where(dead, np.argmax(unvisited, axis=1), exploit_col)
        explore = draws[:, 2 * step] < epsilon
        col = np.where(explore, explore_col, exploit_col)
        nxt = col + 1
        clock = clock + table.distance_cache[cur, nxt] / speeds[rows, col] / 60.0
        delivered = delivered + table.populations[nxt]
        visited[rows, nxt] = True
        tours[:, step + 1] = nxt
        cur = nxt
    return tours


def construct_tour(
    rng,
    pheromone: PheromoneMatrix,
    config: SolverConfig,
    table: CityTable,
    *,
    epsilon: float | None = None,
    v_default: float | None = None,
) -> Tour:
    """Build one closed tour by the epsilon-greedy pheromone walk.

    ``rng`` is a numpy Generator or seed.  ``epsilon``/``v_default`` default
    to their configured initial values.
    """
    rng = np.random.default_rng(rng)
    if epsilon is None:
        epsilon = config.epsilon_start
    if v_default is None:
        v_default = config.v_default_init
    draws = rng.random(2 * table.n)[None, :]
    tau_pow = pheromone.values**config.alpha
    tours = _walk(draws, tau_pow, table, config, epsilon, v_default)
    return tuple(int(i) for i in tours[0])


def transition_probabilities(
    at: int,
    unvisited: Sequence[int],
    pheromone: PheromoneMatrix,
    config: SolverConfig,
    table: CityTable,
    *,
    clock: float | None = None,
    delivered: float = 0.0,
    v_default: float | None = None,
) -> np.ndarray:
    """Normalised next-city probabilities over ``unvisited``, in its order.

    Falls back to a uniform distribution when every score underflows to zero.
    """
    cand = [int(c) for c in unvisited]
    if not cand:
        raise ValueError("unvisited must be non-empty")
    if len(set(cand)) != len(cand) or any(not 1 <= c <= table.n for c in cand):
        raise ValueError("unvisited must be distinct destination indices")
    if clock is None:
        clock = float(config.start_instant)
    if v_default is None:
        v_default = config.v_default_init
    visited = np.ones((1, table.n + 1), dtype=bool)
    visited[0, cand] = False
    tau_pow = pheromone.values**config.alpha
    scores, _, _ = _candidate_scores(
        np.array([at], dtype=np.int64),
        np.array([float(clock)]),
        np.array([float(delivered)]),
        visited,
        tau_pow,
        table,
        config,
        v_default,
    )
    weights = scores[0, np.asarray(cand) - 1]
    total = weights.sum()
    if total <= 0.0:
        return np.full(len(cand), 1.0 / len(cand))
    return weights / total


def update_pheromone(
    pheromone: PheromoneMatrix,
    ant_results: Iterable[tuple[Sequence[int], float]],
    best_tour: Sequence[int],
    best_score: float,
    config: SolverConfig,
) -> None:
    """Evaporate, deposit on each kept tour, reinforce the best, then clamp.

    Each ant deposits deposit_factor * (best score / its score) on its
    directed edges, so the best tour deposits exactly deposit_factor and
    worse tours proportionally less.  Scores are whatever the mode optimises:
    penalised objectives in full mode (a violating tour deposits ~0), plain
    tour lengths in the distance-only baseline.
    """
    tau = pheromone.values
    tau *= 1.0 - config.evaporation_rate
    for tour, score in ant_results:
        idx = np.asarray(tour, dtype=np.int64)
        tau[idx[:-1], idx[1:]] += config.deposit_factor * (best_score / score)
    best = np.asarray(best_tour, dtype=np.int64)
    tau[best[:-1], best[1:]] += config.elitist_weight * config.deposit_factor
    pheromone.clamp()


def refine_default_speed(
    best_tour: Sequence[int],
    v_default: float,
    table: CityTable,
    config: SolverConfig,
) -> tuple[float, TourEvaluation | None]:
    """Nudge the default speed toward the best tour's mean leg speed.

    The candidate 0.1 * v_avg + 0.9 * v_default is adopted only if the best
    tour re-evaluated under it stays free of daylight arrivals; returns the
    (possibly unchanged) default and the trial evaluation when adopted.
    """
    current = evaluate(best_tour, table, config.start_instant, v_default, config)
    v_avg = sum(leg.speed for leg in current.legs) / len(current.legs)
    candidate = 0.1 * v_avg + 0.9 * v_default
    trial = evaluate(best_tour, table, config.start_instant, candidate, config)
    if trial.daylight_count == 0:
        if candidate > v_default:
            # windows can force individual legs faster than the default,
            # dragging the mean above it; adoption is allowed but unusual
            logger.warning(
                "default speed rose on refinement: %.3f -> %.3f m/s", v_default, candidate
            )
        return candidate, trial
    return v_default, None


@dataclass
class _IterationResult:
    tours: np.ndarray
    objectives: np.ndarray
    distances: np.ndarray
    daylight_counts: np.ndarray


def _evaluate_batch(
    tours: np.ndarray,
    table: CityTable,
    start: float,
    v_default: float,
    config: SolverConfig,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Objective/distance/daylight for many tours, mirroring evaluator.evaluate.

    Shares the same elementwise operations in the same order, so results are
    bit-identical to the scalar evaluator.
    """
    m, width = tours.shape
    bounds = config.speed_bounds
    total = table.total_population
    clock = np.full(m, float(start))
    delivered = np.zeros(m)
    total_work = np.zeros(m)
    total_distance = np.zeros(m)
    daylight = np.zeros(m, dtype=np.int64)
    for k in range(width - 1):
        i = tours[:, k]
        j = tours[:, k + 1]
        d = table.distance_cache[i, j]
        area = physics.payload_area(delivered, total)
        speeds, feasible = physics.select_speeds(
            d, clock, table.dusk_utc[j], table.dawn_utc[j], v_default, bounds
        )
        work = physics.aero_work(d, speeds, area)
        total_work = total_work + work
        total_distance = total_distance + d
        daylight = daylight + ~feasible
        clock = clock + d / speeds / 60.0
        delivered = delivered + table.populations[j]
    objective = total_work + daylight * config.daylight_penalty
    return objective, total_distance, daylight


def _run_iteration_batched(
    iteration: int,
    pheromone: PheromoneMatrix,
    table: CityTable,
    config: SolverConfig,
    epsilon: float,
    v_default: float,
) -> _IterationResult:
    n = table.n
    draws = np.empty((config.ants, 2 * n))
    for a in range(config.ants):
        rng = np.random.default_rng(config.rng_seed + iteration * config.ants + a)
        draws[a] = rng.random(2 * n)
    tau_pow = pheromone.values**config.alpha
    tours = _walk(draws, tau_pow, table, config, epsilon, v_default)
    start = config.start_instant
    fwd_obj, fwd_dist, fwd_day = _evaluate_batch(tours, table, start, v_default, config)
    if config.mode == MODE_DISTANCE_ONLY:
        # reversal cannot shorten a cycle, so the baseline has no rogue ants
        return _IterationResult(tours, fwd_obj, fwd_dist, fwd_day)
    reversed_tours = tours[:, ::-1]
    rev_obj, rev_dist, rev_day = _evaluate_batch(reversed_tours, table, start, v_default, config)
    keep_rev = rev_obj < fwd_obj
    return _IterationResult(
        tours=np.where(keep_rev[:, None], reversed_tours, tours),
        objectives=np.where(keep_rev, rev_obj, fwd_obj),
        distances=np.where(keep_rev, rev_dist, fwd_dist),
        daylight_counts=np.where(keep_rev, rev_day, fwd_day),
    )


def _run_iteration_per_ant(
    iteration: int,
    pheromone: PheromoneMatrix,
    table: CityTable,
    config: SolverConfig,
    epsilon: float,
    v_default: float,
) -> _IterationResult:
    def run_ant(a: int) -> tuple[Tour, float, float, int]:
        rng = np.random.default_rng(config.rng_seed + iteration * config.ants + a)
        tour = construct_tour(rng, pheromone, config, table, epsilon=epsilon, v_default=v_default)
        if config.mode == MODE_DISTANCE_ONLY:
            ev = evaluate(tour, table, config.start_instant, v_default, config)
            return tour, ev.objective, ev.total_distance, ev.daylight_count
        kept, ev = rogue_check(tour, table, config.start_instant, v_default, config)
        return kept, ev.objective, ev.total_distance, ev.daylight_count

    if config.ant_workers > 1:
        with ThreadPoolExecutor(max_workers=config.ant_workers) as pool:
            results = list(pool.map(run_ant, range(config.ants)))
    else:
        results = [run_ant(a) for a in range(config.ants)]
    return _IterationResult(
        tours=np.array([r[0] for r in results], dtype=np.int64),
        objectives=np.array([r[1] for r in results]),
        distances=np.array([r[2] for r in results]),
        daylight_counts=np.array([r[3] for r in results], dtype=np.int64),
    )


def solve(
    config: SolverConfig,
    table: CityTable,
    progress: ProgressSink | None = None,
) -> tuple[Tour, TourEvaluation, list[ConvergenceRecord]]:
    """Run the full colony loop and return the best tour found.

    Per full-mode iteration: construct all ant tours (epsilon-greedy), keep
    the better direction of each (rogue check), update the best-so-far by
    penalised objective, deposit pheromone, emit a ConvergenceRecord, and
    periodically refine the default speed.  The distance-only baseline runs
    the same loop but optimises plain tour length: no rogue reversal, no
    speed refinement, best-so-far and deposits by distance, while records
    still report the best tour's joule pricing.  Bit-reproducible from
    rng_seed for any ant_workers setting.
    """
    baseline = config.mode == MODE_DISTANCE_ONLY
    pheromone = PheromoneMatrix.initial(table.n, config.tau_min, config.tau_max)
    refine_every = max(1, config.iterations // 100)
    best_tour: Tour | None = None
    best_guide = np.inf
    best_objective = np.inf
    best_distance = 0.0
    best_daylight = 0
    v_default = config.speed_bounds.clamp(config.v_default_init)
    records: list[ConvergenceRecord] = []
    for r in range(config.iterations):
        eps = epsilon_at(r, config)
        if config.ant_workers == 0:
            result = _run_iteration_batched(r, pheromone, table, config, eps, v_default)
        else:
            result = _run_iteration_per_ant(r, pheromone, table, config, eps, v_default)
        guide = result.distances if baseline else result.objectives
        for a in range(config.ants):
            if guide[a] < best_guide:
                best_guide = float(guide[a])
                best_objective = float(result.objectives[a])
                best_tour = tuple(int(x) for x in result.tours[a])
                best_distance = float(result.distances[a])
                best_daylight = int(result.daylight_counts[a])
        ant_results = [(result.tours[a], float(guide[a])) for a in range(config.ants)]
        update_pheromone(pheromone, ant_results, best_tour, best_guide, config)
        assert pheromone.in_bounds()
        record = ConvergenceRecord(
            iteration=r,
            best_objective=float(best_objective),
            best_distance=best_distance,
            daylight_count=best_daylight,
            epsilon=eps,
            v_default=v_default,
        )
        records.append(record)
        if progress is not None:
            progress(record)
        if not baseline and r % refine_every == 0:
            v_default, trial = refine_default_speed(best_tour, v_default, table, config)
            if trial is not None and trial.objective <= best_objective:
                best_objective = trial.objective
                best_guide = best_objective
                best_distance = trial.total_distance
                best_daylight = trial.daylight_count
    best_eval = evaluate(best_tour, table, config.start_instant, v_default, config)
    return best_tour, best_eval, records
