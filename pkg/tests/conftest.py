"""Shared fixtures: small synthetic city tables with controllable windows."""

from __future__ import annotations

import pytest

from nightroute.config import SolverConfig
from nightroute.dataio import City, CityTable
from nightroute.geo import GeoPoint
from nightroute.physics import SpeedBounds
from nightroute.temporal import DarknessWindow


def make_table(rows, window=(0.0, 1440.0)):
    """Build a CityTable from (name, lat, lon, population[, window]) tuples.

    ``window`` is the default (dusk, dawn) in absolute minutes; a per-row
    5th element overrides it.
    """
    destinations = []
    for row in rows:
        name, lat, lon, pop = row[:4]
        w = row[4] if len(row) > 4 else window
        destinations.append(
            City(0, name, GeoPoint(lat, lon), pop, 0.0, DarknessWindow(w[0], w[1]))
        )
    return CityTable.from_destinations(destinations)


@pytest.fixture
def equator_table():
    """Depot plus three equatorial cities a quarter meridian apart."""
    return make_table(
        [
            ("A", 0.0, 0.0, 100),
            ("B", 0.0, 90.0, 300),
            ("C", 0.0, 180.0, 600),
        ]
    )


@pytest.fixture
def equator_config():
    """Wide bounds and a 2 km/s default: every fixture leg is dark at default."""
    return SolverConfig(
        iterations=10,
        ants=2,
        v_default_init=2000.0,
        speed_bounds=SpeedBounds(1.0, 3000.0),
        start_instant=60.0,
        rng_seed=0,
    )


@pytest.fixture
def cluster_table():
    """Six nearby cities with equal populations and an always-open window.

    Leg times at 2 km/s are minutes, so a whole mission stays inside the
    [0, 1440] window: windows never constrain anything here.
    """
    return make_table(
        [
            ("P1", 44.0, 7.0, 1000),
            ("P2", 46.5, 9.0, 1000),
            ("P3", 43.2, 12.5, 1000),
            ("P4", 47.8, 5.5, 1000),
            ("P5", 45.1, 14.0, 1000),
            ("P6", 42.0, 3.0, 1000),
        ]
    )
