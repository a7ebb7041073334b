"""Absolute mission time and per-city darkness windows.

All times in the solver are plain floats ("instants") counting real minutes
since the reference UTC midnight.  Local civil times only appear at the
ingestion boundary, where they are converted once via fixed UTC offsets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone

#: Mission zero: instants are minutes since this moment.
REFERENCE_EPOCH = datetime(2025, 12, 24, 0, 0, tzinfo=timezone.utc)

#: Minutes since REFERENCE_EPOCH.
Instant = float

#: Default dusk/dawn safety buffer applied at ingestion, minutes.
DEFAULT_BUFFER_MIN = 15.0


def instant_from_datetime(dt: datetime) -> Instant:
    """Convert an aware (or naive-UTC) datetime to minutes since the epoch."""
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return (dt - REFERENCE_EPOCH).total_seconds() / 60.0


def instant_to_datetime(t: Instant) -> datetime:
    return REFERENCE_EPOCH + timedelta(minutes=t)


def instant_to_iso(t: Instant) -> str:
    """Render an instant as an ISO-8601 UTC timestamp at second precision."""
    dt = REFERENCE_EPOCH + timedelta(seconds=round(t * 60.0))
    return dt.strftime("%Y-%m-%dT%H:%M:%SZ")


def instant_from_iso(text: str) -> Instant:
    """Parse an ISO-8601 timestamp; naive values are taken as UTC."""
    dt = datetime.fromisoformat(text.replace("Z", "+00:00"))
    return instant_from_datetime(dt)


@dataclass(frozen=True)
class DarknessWindow:
    """Buffered darkness interval in absolute minutes; arrivals must land inside.

    Both boundaries count as dark.
    """

    dusk_utc: Instant
    dawn_utc: Instant

    def __post_init__(self) -> None:
        if not (math.isfinite(self.dusk_utc) and math.isfinite(self.dawn_utc)):
            raise ValueError("darkness window boundaries must be finite")
        if self.dusk_utc >= self.dawn_utc:
            raise ValueError(
                f"empty darkness window: dusk {self.dusk_utc:.2f} >= dawn {self.dawn_utc:.2f}"
            )
        if self.dawn_utc - self.dusk_utc > 24.0 * 60.0:
            raise ValueError("darkness window longer than 24 hours")


def is_dark(window: DarknessWindow, t: Instant) -> bool:
    """Whether instant ``t`` falls inside the window (boundaries inclusive)."""
    return window.dusk_utc <= t <= window.dawn_utc


def _parse_hhmm(text: str) -> float:
    """Minutes since local midnight for a strict ``HH:MM`` string."""
    parts = text.strip().split(":")
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise ValueError(f"time {text!r} is not in HH:MM form")
    hours, minutes = int(parts[0]), int(parts[1])
    if hours > 23 or minutes > 59:
        raise ValueError(f"time {text!r} out of range")
    return hours * 60.0 + minutes


def window_from_local(
    dusk_local_hhmm: str,
    dawn_local_hhmm: str,
    utc_offset_hours: float,
    buffer_min: float = DEFAULT_BUFFER_MIN,
) -> DarknessWindow:
    """Build a buffered absolute window from local wall-clock dusk/dawn.

    Dusk is pinned to the local calendar date of the reference epoch; dawn is
    the first occurrence after dusk (usually the next local day).  The buffer
    shrinks the window at both ends; a window that becomes empty raises
    ValueError.
    """
    if not -12.0 <= utc_offset_hours <= 14.0:
        raise ValueError(f"utc offset {utc_offset_hours} outside [-12, +14]")
    if buffer_min < 0.0:
        raise ValueError("buffer_min must be non-negative")
    dusk_local = _parse_hhmm(dusk_local_hhmm)
    dawn_local = _parse_hhmm(dawn_local_hhmm)
    if dawn_local <= dusk_local:
        dawn_local += 24.0 * 60.0
    offset_min = utc_offset_hours * 60.0
    return DarknessWindow(
        dusk_utc=dusk_local - offset_min + buffer_min,
        dawn_utc=dawn_local - offset_min - buffer_min,
    )
