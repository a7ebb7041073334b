"""End-to-end acceptance gate.

Runs the solver at full desk scale (N = 40, 5000 iterations, three seeds),
sweeps the two-mode comparison, benchmarks small instances against the exact
oracle, and re-asserts the cross-cutting invariants. Each check prints one
``[acceptance] <label>: PASS/FAIL`` line with the measured numbers.

Three checks are known to fail on the bundled dataset and are kept as
written rather than weakened; their docstrings and failure messages carry
the measured shortfall:

- ``test_convergence_energy_drop`` (guided first iteration is already within
  ~7x of the converged energy),
- ``test_distance_only_blunders_into_daylight`` (the length-optimal cycle
  over these capitals happens to be night-feasible walked westward, and the
  baseline converges to exactly that cycle and direction),
- ``test_some_early_leg_flies_slow`` (the opening slow-to-dusk leg runs at
  ~2,340 km/h, above the 2,000 km/h line; sub-2,000 legs appear mid-tour).
"""

from __future__ import annotations

import csv
import statistics
import time
from collections import Counter

import numpy as np
import pytest

from nightroute import cli, colony, dataio
from nightroute import oracle as oracle_mod
from nightroute.config import MODE_DISTANCE_ONLY, SolverConfig
from nightroute.evaluator import evaluate, reverse_tour, rogue_check
from nightroute.physics import aero_work, mps_to_kmh, payload_area
from nightroute.temporal import is_dark

pytestmark = pytest.mark.acceptance

HEADLINE_SEEDS = (0, 1, 2)
RUN_BUDGET_SECONDS = 600.0
COMPARE_SEEDS = "0,1,2,3,4"
COMPARE_ITERATIONS = "1500"


def report(label: str, ok: bool, detail: str) -> None:
    print(f"[acceptance] {label}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"{label}: {detail}"


@pytest.fixture(scope="session")
def table40() -> dataio.CityTable:
    return dataio.load_cities(cli.bundled_dataset_path(), limit=40, buffer_min=15.0)


@pytest.fixture(scope="session")
def headline_runs(table40):
    """Three full-mode solves at CLI defaults: N=40, R=5000, m=75."""
    start = cli.default_start_instant(table40)
    runs = []
    for seed in HEADLINE_SEEDS:
        config = SolverConfig(rng_seed=seed, start_instant=start)
        t0 = time.perf_counter()
        tour, evaluation, records = colony.solve(config, table40)
        runs.append(
            {
                "seed": seed,
                "tour": tour,
                "eval": evaluation,
                "records": records,
                "runtime": time.perf_counter() - t0,
            }
        )
    return runs


@pytest.fixture(scope="session")
def comparison_rows(tmp_path_factory):
    """Both modes over N in {15, 30} x 5 seeds, via the compare subcommand."""
    out = tmp_path_factory.mktemp("acceptance-compare")
    code = cli.main(
        [
            "compare",
            "--n-values", "15,30",
            "--seeds", COMPARE_SEEDS,
            "--iterations", COMPARE_ITERATIONS,
            "--out", str(out),
        ]
    )
    assert code == 0
    with open(out / "compare.csv", newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


def test_every_final_tour_lands_in_darkness(headline_runs):
    counts = [r["eval"].daylight_count for r in headline_runs]
    runtimes = [r["runtime"] for r in headline_runs]
    ok = all(c == 0 for c in counts) and all(t <= RUN_BUDGET_SECONDS for t in runtimes)
    report(
        "zero daylight violations",
        ok,
        f"daylight counts {counts}, runtimes "
        + "/".join(f"{t:.0f}s" for t in runtimes)
        + f" (budget {RUN_BUDGET_SECONDS:.0f}s per run)",
    )


def test_final_energy_magnitude(headline_runs):
    objectives = [r["eval"].objective for r in headline_runs]
    ok = all(4e12 <= obj <= 1e14 for obj in objectives)
    report(
        "final energy magnitude",
        ok,
        "objectives " + ", ".join(f"{o:.3e}" for o in objectives) + " J within [4e12, 1e14]",
    )


def test_convergence_energy_drop(headline_runs):
    """Initial-iteration best must exceed the final objective by >= 10x.

    Known shortfall: iteration 0 is already guided (work-based eta at
    uniform pheromone, plus tour reversal), so the measured drop is ~6.5-7.1x
    on the bundled dataset. A 10x drop would need a near-random first best.
    """
    ratios = [r["records"][0].best_objective / r["eval"].objective for r in headline_runs]
    ok = all(ratio >= 10.0 for ratio in ratios)
    report(
        "convergence energy drop",
        ok,
        "initial/final ratios " + ", ".join(f"{x:.2f}" for x in ratios) + " against >= 10x",
    )


def _median_objective(rows, n: str, mode: str) -> float:
    values = [float(r["objective_J"]) for r in rows if r["n"] == n and r["mode"] == mode]
    assert len(values) == 5
    return statistics.median(values)


def test_mode_comparison_medians(comparison_rows):
    details = []
    ok = True
    for n in ("15", "30"):
        full = _median_objective(comparison_rows, n, "full")
        base = _median_objective(comparison_rows, n, "distance-only")
        ok = ok and full <= base
        details.append(f"N={n}: full {full:.3e} <= distance-only {base:.3e}")
    report("mode comparison medians", ok, "; ".join(details))


def test_distance_only_blunders_into_daylight(comparison_rows):
    """The baseline should hit daylight on a majority of seeds.

    Known shortfall: on these capitals the length-optimal cycle is
    night-feasible when walked westward (the crawl-to-dusk floor of
    10 km/h lets legs stretch), and a length-guided baseline converges to
    exactly that cycle and direction on every seed, so violating seeds are
    0/5 at both sizes. Reversing the same cycle prices 9+ violations; the
    direction preference is structural, not a sampling accident.
    """
    details = []
    ok = True
    for n in ("15", "30"):
        violating = sum(
            1
            for r in comparison_rows
            if r["n"] == n and r["mode"] == "distance-only" and int(r["daylight_count"]) > 0
        )
        ok = ok and violating >= 3
        details.append(f"N={n}: {violating}/5 seeds with violations")
    report("baseline daylight violations on most seeds", ok, "; ".join(details))


def test_full_mode_clean_in_comparison(comparison_rows):
    bad = [
        (r["n"], r["seed"])
        for r in comparison_rows
        if r["mode"] == "full" and int(r["daylight_count"]) != 0
    ]
    report(
        "full mode clean across comparison",
        not bad,
        f"{len(bad)} of 10 full-mode runs with violations" + (f": {bad}" if bad else ""),
    )


def test_heaviest_cities_served_early(headline_runs):
    half_legs = []
    for run in headline_runs:
        served = run["eval"].population_served_by_leg
        half_legs.append(next(i + 1 for i, f in enumerate(served) if f >= 0.5))
    ok = all(leg <= 20 for leg in half_legs)
    report(
        "heaviest-first delivery",
        ok,
        f"50% of population served by legs {half_legs} (bound 20 of 41)",
    )


def test_small_instances_match_brute_force():
    """Colony vs exact enumeration on five sampled 7-city instances.

    The gap is measured under one pricing: the colony tunes its default
    cruise speed during the run, so the reference optimum is enumerated at
    the colony's final default.
    """
    full_table = dataio.load_cities(cli.bundled_dataset_path(), limit=None, buffer_min=15.0)
    gaps, oracle_times = [], []
    for seed in range(5):
        table = cli._sampled_table(full_table, 7, seed)
        start = cli.default_start_instant(table)
        config = SolverConfig(iterations=2000, rng_seed=seed, start_instant=start)
        _tour, evaluation, records = colony.solve(config, table)
        t0 = time.perf_counter()
        reference = oracle_mod.brute_force(table, start, records[-1].v_default, config)
        oracle_times.append(time.perf_counter() - t0)
        gap = (evaluation.objective - reference.best_objective) / reference.best_objective
        assert gap >= -1e-12  # the enumerated optimum is a lower bound
        gaps.append(gap)
    within = sum(1 for g in gaps if g <= 0.02)
    exact = sum(1 for g in gaps if abs(g) <= 1e-9)
    ok = within >= 4 and exact >= 1 and all(t < 30.0 for t in oracle_times)
    report(
        "small-instance optimality",
        ok,
        f"gaps {['%.2e' % g for g in gaps]}, {within}/5 within 2%, {exact}/5 exact, "
        f"oracle {max(oracle_times):.1f}s worst case",
    )


def test_invariant_properties(table40, headline_runs):
    """Cross-cutting invariants re-asserted at acceptance scale."""
    failures = []

    def check(name: str, ok: bool) -> None:
        if not ok:
            failures.append(name)

    distances = table40.distance_cache
    check("distance symmetry", np.array_equal(distances, distances.T))
    check("zero self-distance", bool(np.all(np.diag(distances) == 0.0)))
    lhs = distances[:, None, :]
    rhs = distances[:, :, None] + distances[None, :, :]
    check("triangle inequality", bool(np.all(lhs <= rhs + 1e-6)))

    window_ok = True
    for city in table40.cities[1:]:
        w = city.window
        window_ok = window_ok and is_dark(w, w.dusk_utc) and is_dark(w, w.dawn_utc)
        window_ok = window_ok and not is_dark(w, w.dusk_utc - 1.0)
        window_ok = window_ok and not is_dark(w, w.dawn_utc + 1.0)
    check("window boundaries inclusive", window_ok)

    areas = [payload_area(f * 1000.0, 1000.0) for f in np.linspace(0.0, 1.0, 21)]
    check("cross-section bounds", all(0.01 <= a <= 1.0 for a in areas))
    check("cross-section monotone", all(a >= b for a, b in zip(areas, areas[1:])))
    check(
        "work scaling",
        aero_work(2e6, 500.0, 0.5) == pytest.approx(4.0 * aero_work(2e6, 250.0, 0.5), rel=1e-12)
        and aero_work(2e6, 500.0, 0.5) == pytest.approx(2.0 * aero_work(1e6, 500.0, 0.5), rel=1e-12)
        and aero_work(2e6, 500.0, 0.5) == pytest.approx(0.5 * aero_work(2e6, 500.0, 1.0), rel=1e-12),
    )

    # pheromone bounds are asserted inside the iteration loop; a completed
    # run in each mode means they held on every iteration
    small = dataio.load_cities(cli.bundled_dataset_path(), limit=12, buffer_min=15.0)
    small_start = cli.default_start_instant(small)
    for mode_name, mode in (("full", "full"), ("baseline", MODE_DISTANCE_ONLY)):
        cfg = SolverConfig(iterations=60, ants=8, mode=mode, rng_seed=5, start_instant=small_start)
        _t, _e, recs = colony.solve(cfg, small)
        check(f"pheromone bounds each iteration ({mode_name})", len(recs) == 60)
        if mode == MODE_DISTANCE_ONLY:
            dists = [r.best_distance for r in recs]
            check("baseline distance monotone", all(a >= b for a, b in zip(dists, dists[1:])))

    for run in headline_runs:
        objectives = [r.best_objective for r in run["records"]]
        check(
            f"best-so-far monotone (seed {run['seed']})",
            all(a >= b for a, b in zip(objectives, objectives[1:])),
        )

    rng = np.random.default_rng(42)
    config = SolverConfig(rng_seed=0, start_instant=cli.default_start_instant(table40))
    rogue_ok = True
    for _ in range(5):
        tour = (0, *(int(i) for i in rng.permutation(np.arange(1, 41))), 0)
        kept, kept_eval = rogue_check(tour, table40, config.start_instant, config.v_default_init, config)
        fwd = evaluate(tour, table40, config.start_instant, config.v_default_init, config)
        rev = evaluate(reverse_tour(tour), table40, config.start_instant, config.v_default_init, config)
        rogue_ok = rogue_ok and kept in (tuple(tour), reverse_tour(tour))
        rogue_ok = rogue_ok and kept_eval.objective == min(fwd.objective, rev.objective)
    check("reversal check keeps the cheaper direction", rogue_ok)

    fifteen = dataio.load_cities(cli.bundled_dataset_path(), limit=15, buffer_min=15.0)
    repro_cfg = dict(iterations=300, ants=16, rng_seed=7, start_instant=cli.default_start_instant(fifteen))
    outcomes = [
        colony.solve(SolverConfig(ant_workers=w, **repro_cfg), fifteen) for w in (0, 1, 3)
    ]
    tours = {o[0] for o in outcomes}
    objs = {o[1].objective for o in outcomes}
    recs = [o[2] for o in outcomes]
    check(
        "bit-identical serial vs parallel run",
        len(tours) == 1 and len(objs) == 1 and recs[0] == recs[1] == recs[2],
    )

    report(
        "invariant properties",
        not failures,
        "15 property groups green" if not failures else f"failed: {', '.join(failures)}",
    )


def test_some_early_leg_flies_slow(headline_runs):
    """At least one of the first ten legs should run below 2,000 km/h.

    Known shortfall: every run opens with a slow-to-dusk leg into Beijing at
    ~2,337 km/h — window-limited, but above the line. Sub-2,000 legs exist
    in every tour (min ~1,520 km/h) yet first appear at legs 15/27/15.
    """
    first_slow = []
    for run in headline_runs:
        speeds = [mps_to_kmh(leg.speed) for leg in run["eval"].legs]
        idx = next((i + 1 for i, s in enumerate(speeds) if s < 2000.0), None)
        first_slow.append(idx)
    ok = all(idx is not None and idx <= 10 for idx in first_slow)
    report(
        "slow early leg",
        ok,
        f"first sub-2,000 km/h leg at positions {first_slow} (need <= 10)",
    )


def test_cruise_speed_profile(headline_runs):
    details = []
    ok = True
    for run in headline_runs:
        speeds = [mps_to_kmh(leg.speed) for leg in run["eval"].legs]
        # modal speed: most frequent exact value, ties to the lower speed
        modal = min(Counter(speeds).items(), key=lambda kv: (-kv[1], kv[0]))[0]
        in_band = 2000.0 <= modal <= 7650.0
        in_bounds = all(10.0 - 1e-9 <= s <= 15000.0 + 1e-9 for s in speeds)
        ok = ok and in_band and in_bounds
        details.append(f"seed {run['seed']}: modal {modal:.0f} km/h, range {min(speeds):.0f}-{max(speeds):.0f}")
    report("cruise speed profile", ok, "; ".join(details))
