"""Great-circle geometry on a spherical Earth."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Mean Earth radius in meters; every distance in the package derives from it.
EARTH_RADIUS_M = 6_371_000.0


@dataclass(frozen=True)
class GeoPoint:
    """A position given as latitude/longitude in decimal degrees.

    Longitudes are normalised into [-180, +180] on construction; latitudes
    outside [-90, +90] are rejected.
    """

    lat_deg: float
    lon_deg: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.lat_deg) or not math.isfinite(self.lon_deg):
            raise ValueError(f"non-finite coordinates ({self.lat_deg}, {self.lon_deg})")
        if not -90.0 <= self.lat_deg <= 90.0:
            raise ValueError(f"latitude {self.lat_deg} outside [-90, +90]")
        if not -180.0 <= self.lon_deg <= 180.0:
            # math.remainder keeps the result in [-180, +180] and leaves
            # both boundary values untouched.
            object.__setattr__(self, "lon_deg", math.remainder(self.lon_deg, 360.0))


def great_circle_distance(a: GeoPoint, b: GeoPoint) -> float:
    """Haversine distance between two points, in meters."""
    phi_a = math.radians(a.lat_deg)
    phi_b = math.radians(b.lat_deg)
    half_dphi = math.radians(b.lat_deg - a.lat_deg) / 2.0
    half_dlam = math.radians(b.lon_deg - a.lon_deg) / 2.0
    h = math.sin(half_dphi) ** 2 + math.cos(phi_a) * math.cos(phi_b) * math.sin(half_dlam) ** 2
    # rounding may push h a hair outside [0, 1] for antipodal pairs
    h = min(max(h, 0.0), 1.0)
    return 2.0 * EARTH_RADIUS_M * math.asin(math.sqrt(h))


def pairwise_distances(lat_deg: np.ndarray, lon_deg: np.ndarray) -> np.ndarray:
    """All-pairs haversine distances in meters for coordinate vectors.

    Matches :func:`great_circle_distance` elementwise.
    """
    phi = np.radians(np.asarray(lat_deg, dtype=float))
    lam = np.radians(np.asarray(lon_deg, dtype=float))
    half_dphi = (phi[None, :] - phi[:, None]) / 2.0
    half_dlam = (lam[None, :] - lam[:, None]) / 2.0
    h = np.sin(half_dphi) ** 2 + np.cos(phi)[:, None] * np.cos(phi)[None, :] * np.sin(half_dlam) ** 2
    h = np.clip(h, 0.0, 1.0)
    return 2.0 * EARTH_RADIUS_M * np.arcsin(np.sqrt(h))


def _unit_vector(p: GeoPoint) -> tuple[float, float, float]:
    phi = math.radians(p.lat_deg)
    lam = math.radians(p.lon_deg)
    return (math.cos(phi) * math.cos(lam), math.cos(phi) * math.sin(lam), math.sin(phi))


def _from_unit_vector(x: float, y: float, z: float) -> GeoPoint:
    lat = math.degrees(math.asin(min(max(z, -1.0), 1.0)))
    lon = math.degrees(math.atan2(y, x))
    return GeoPoint(lat, lon)


def sample_arc(a: GeoPoint, b: GeoPoint, max_spacing_m: float = 100_000.0) -> list[GeoPoint]:
    """Points along the great circle from ``a`` to ``b``, endpoints included.

    Consecutive samples are at most ``max_spacing_m`` apart.  Degenerate and
    antipodal pairs (where the arc is not unique) fall back to the endpoints.
    """
    if max_spacing_m <= 0.0:
        raise ValueError("max_spacing_m must be positive")
    d = great_circle_distance(a, b)
    segments = max(1, math.ceil(d / max_spacing_m))
    omega = d / EARTH_RADIUS_M
    sin_omega = math.sin(omega)
    if segments == 1 or sin_omega < 1e-12:
        return [a, b]
    va = _unit_vector(a)
    vb = _unit_vector(b)
    points = [a]
    for k in range(1, segments):
        t = k / segments
        wa = math.sin((1.0 - t) * omega) / sin_omega
        wb = math.sin(t * omega) / sin_omega
        points.append(
            _from_unit_vector(
                wa * va[0] + wb * vb[0],
                wa * va[1] + wb * vb[1],
                wa * va[2] + wb * vb[2],
            )
        )
    points.append(b)
    return points
