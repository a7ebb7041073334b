"""City-table ingestion and artifact writers (CSV / GeoJSON)."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Iterable, Sequence

import numpy as np

from . import geo
from .geo import GeoPoint
from .temporal import (
    DEFAULT_BUFFER_MIN,
    DarknessWindow,
    instant_to_iso,
    window_from_local,
)

if TYPE_CHECKING:  # pragma: no cover - import only for annotations
    from .colony import ConvergenceRecord
    from .evaluator import TourEvaluation

#: Exact header required of a city CSV, in any column order.
CSV_FIELDS = (
    "name",
    "lat_deg",
    "lon_deg",
    "population",
    "utc_offset_hours",
    "dusk_local_hhmm",
    "dawn_local_hhmm",
)

#: Maximum spacing of GeoJSON route samples along a leg, meters.
ROUTE_SAMPLE_SPACING_M = 100_000.0

CONVERGENCE_HEADER = (
    "iteration",
    "best_objective_J",
    "best_distance_m",
    "daylight_count",
    "epsilon",
    "v_default_mps",
)

GANTT_HEADER = ("stop_index", "city", "window_start_utc", "window_end_utc", "arrival_utc")


@dataclass(frozen=True)
class City:
    """One destination; the depot is the windowless city with index 0."""

    index: int
    name: str
    point: GeoPoint
    population: int
    utc_offset_hours: float
    window: DarknessWindow | None


#: The launch/return point.  Exempt from darkness checks.
NORTH_POLE = City(0, "North Pole", GeoPoint(90.0, 0.0), 0, 0.0, None)


@dataclass
class CityTable:
    """Depot plus destination cities, with a precomputed distance matrix.

    ``cities[0]`` is always the depot.  Derived arrays encode the depot's
    missing window as an always-dark (-inf, +inf) interval so vectorised
    feasibility checks need no special case.
    """

    cities: list[City]
    distance_cache: np.ndarray = field(init=False, repr=False)
    dusk_utc: np.ndarray = field(init=False, repr=False)
    dawn_utc: np.ndarray = field(init=False, repr=False)
    populations: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not self.cities or self.cities[0].window is not None:
            raise ValueError("cities[0] must be the windowless depot")
        for k, city in enumerate(self.cities):
            if city.index != k:
                raise ValueError(f"city {city.name!r} has index {city.index}, expected {k}")
            if k > 0 and city.window is None:
                raise ValueError(f"destination {city.name!r} lacks a darkness window")
        lat = np.array([c.point.lat_deg for c in self.cities])
        lon = np.array([c.point.lon_deg for c in self.cities])
        self.distance_cache = geo.pairwise_distances(lat, lon)
        self.dusk_utc = np.array(
            [c.window.dusk_utc if c.window else -np.inf for c in self.cities]
        )
        self.dawn_utc = np.array(
            [c.window.dawn_utc if c.window else np.inf for c in self.cities]
        )
        self.populations = np.array([float(c.population) for c in self.cities])

    @classmethod
    def from_destinations(cls, destinations: Iterable[City]) -> "CityTable":
        """Assemble a table from destination cities, prepending the depot."""
        cities = [NORTH_POLE]
        for city in destinations:
            cities.append(replace(city, index=len(cities)))
        return cls(cities)

    @property
    def n(self) -> int:
        """Number of destinations (excluding the depot)."""
        return len(self.cities) - 1

    @property
    def total_population(self) -> float:
        return float(self.populations.sum())

    def city(self, i: int) -> City:
        return self.cities[i]

    def window_of(self, i: int) -> DarknessWindow | None:
        return self.cities[i].window

    def distance(self, i: int, j: int) -> float:
        return float(self.distance_cache[i, j])


def _parse_row(row: dict, where: str, buffer_min: float) -> City:
    name = (row.get("name") or "").strip()
    if not name:
        raise ValueError(f"{where}: empty city name")
    try:
        lat = float(row["lat_deg"])
        lon = float(row["lon_deg"])
        population = int(row["population"])
        offset = float(row["utc_offset_hours"])
    except (ValueError, TypeError) as exc:
        raise ValueError(f"{where}: unparsable numeric field ({exc})") from None
    if not -90.0 <= lat <= 90.0:
        raise ValueError(f"{where}: latitude {lat} outside [-90, +90] for {name!r}")
    if not -180.0 <= lon <= 180.0:
        raise ValueError(f"{where}: longitude {lon} outside [-180, +180] for {name!r}")
    if population <= 0:
        raise ValueError(f"{where}: population must be positive for {name!r}")
    if not math.isfinite(offset):
        raise ValueError(f"{where}: non-finite utc offset for {name!r}")
    try:
        window = window_from_local(
            row["dusk_local_hhmm"], row["dawn_local_hhmm"], offset, buffer_min
        )
    except ValueError as exc:
        raise ValueError(f"{where}: invalid darkness window for {name!r}: {exc}") from None
    return City(0, name, GeoPoint(lat, lon), population, offset, window)


def load_cities(
    path,
    limit: int | None = None,
    buffer_min: float = DEFAULT_BUFFER_MIN,
) -> CityTable:
    """Load a city CSV into a :class:`CityTable`.

    Rows are sorted by descending population (name as tie-break) and, when
    ``limit`` is given, truncated to the ``limit`` most populous before the
    depot is prepended.  Any malformed row fails the whole load with a
    message naming the file and line.
    """
    if limit is not None and limit <= 0:
        raise ValueError("limit must be positive")
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames is None:
            raise ValueError(f"{path}: empty file")
        missing = set(CSV_FIELDS) - set(reader.fieldnames)
        if missing:
            raise ValueError(f"{path}: missing columns {sorted(missing)}")
        destinations: list[City] = []
        seen_names: set[str] = set()
        for row in reader:
            where = f"{path}:{reader.line_num}"
            city = _parse_row(row, where, buffer_min)
            if city.name in seen_names:
                raise ValueError(f"{where}: duplicate city name {city.name!r}")
            seen_names.add(city.name)
            destinations.append(city)
    if not destinations:
        raise ValueError(f"{path}: no city rows")
    destinations.sort(key=lambda c: (-c.population, c.name))
    if limit is not None:
        destinations = destinations[:limit]
    return CityTable.from_destinations(destinations)


def write_convergence(records: Sequence["ConvergenceRecord"], path) -> None:
    """Write the per-iteration convergence log as a LF-terminated CSV."""
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CONVERGENCE_HEADER)
        for r in records:
            writer.writerow(
                [
                    str(r.iteration),
                    f"{r.best_objective:.10e}",
                    f"{r.best_distance:.3f}",
                    str(r.daylight_count),
                    f"{r.epsilon:.8f}",
                    f"{r.v_default:.6f}",
                ]
            )


def read_convergence(path) -> list["ConvergenceRecord"]:
    """Parse a convergence CSV back into records (at written precision)."""
    from .colony import ConvergenceRecord

    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames is None or tuple(reader.fieldnames) != CONVERGENCE_HEADER:
            raise ValueError(f"{path}: unexpected convergence header {reader.fieldnames}")
        return [
            ConvergenceRecord(
                iteration=int(row["iteration"]),
                best_objective=float(row["best_objective_J"]),
                best_distance=float(row["best_distance_m"]),
                daylight_count=int(row["daylight_count"]),
                epsilon=float(row["epsilon"]),
                v_default=float(row["v_default_mps"]),
            )
            for row in reader
        ]


def _split_antimeridian(points: list[GeoPoint]) -> list[list[list[float]]]:
    """Break a sampled arc into [lon, lat] runs that never jump the date line.

    A crossing is interpolated to a point at longitude +/-180 on the closing
    side and -/+180 on the opening side, so each run keeps consistent signs.
    """
    runs: list[list[list[float]]] = []
    current: list[list[float]] = [[points[0].lon_deg, points[0].lat_deg]]
    for prev, here in zip(points, points[1:]):
        lon_a, lon_b = prev.lon_deg, here.lon_deg
        if abs(lon_b - lon_a) > 180.0:
            # unwrap the second longitude next to the first
            lon_b_unwrapped = lon_b + 360.0 if lon_a > lon_b else lon_b - 360.0
            span = lon_b_unwrapped - lon_a
            edge = 180.0 if lon_a > 0 else -180.0
            t = (edge - lon_a) / span if span else 0.0
            lat_cross = prev.lat_deg + t * (here.lat_deg - prev.lat_deg)
            current.append([edge, lat_cross])
            runs.append(current)
            current = [[-edge, lat_cross]]
        current.append([here.lon_deg, here.lat_deg])
    runs.append(current)
    return runs


def write_route_geojson(evaluation: "TourEvaluation", table: CityTable, path) -> None:
    """Write the tour as a GeoJSON FeatureCollection.

    One LineString per leg (two when a leg crosses the antimeridian), sampled
    at most 100 km apart, plus one Point per city including the depot.
    """
    features: list[dict] = []
    for k, leg in enumerate(evaluation.legs):
        a = table.city(leg.from_city).point
        b = table.city(leg.to_city).point
        props = {
            "leg_index": k + 1,
            "depart_utc": instant_to_iso(leg.depart),
            "arrive_utc": instant_to_iso(leg.arrive),
            "speed_kmh": round(leg.speed * 3.6, 3),
            "work_J": leg.work,
            "daylight": leg.daylight,
        }
        for run in _split_antimeridian(geo.sample_arc(a, b, ROUTE_SAMPLE_SPACING_M)):
            features.append(
                {
                    "type": "Feature",
                    "geometry": {
                        "type": "LineString",
                        "coordinates": [[round(lon, 6), round(lat, 6)] for lon, lat in run],
                    },
                    "properties": dict(props),
                }
            )
    for city in table.cities:
        features.append(
            {
                "type": "Feature",
                "geometry": {
                    "type": "Point",
                    "coordinates": [city.point.lon_deg, city.point.lat_deg],
                },
                "properties": {
                    "name": city.name,
                    "population": city.population,
                    "dusk_utc": instant_to_iso(city.window.dusk_utc) if city.window else None,
                    "dawn_utc": instant_to_iso(city.window.dawn_utc) if city.window else None,
                },
            }
        )
    with open(path, "w", newline="\n", encoding="utf-8") as f:
        json.dump({"type": "FeatureCollection", "features": features}, f, indent=2)
        f.write("\n")


def write_gantt_csv(evaluation: "TourEvaluation", table: CityTable, path) -> None:
    """Write one row per visited destination: its window and the arrival."""
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(GANTT_HEADER)
        stop = 0
        for leg in evaluation.legs:
            if leg.to_city == 0:
                continue
            stop += 1
            window = table.window_of(leg.to_city)
            writer.writerow(
                [
                    str(stop),
                    table.city(leg.to_city).name,
                    instant_to_iso(window.dusk_utc),
                    instant_to_iso(window.dawn_utc),
                    instant_to_iso(leg.arrive),
                ]
            )
