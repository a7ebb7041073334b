"""Single-night tour optimisation: ant colony search over darkness windows."""

from .colony import ConvergenceRecord, PheromoneMatrix, solve
from .config import SolverConfig
from .dataio import City, CityTable, load_cities
from .evaluator import LegRecord, Tour, TourEvaluation, evaluate, rogue_check
from .geo import GeoPoint, great_circle_distance
from .oracle import OracleResult, brute_force
from .physics import PayloadState, SpeedBounds
from .temporal import DarknessWindow, Instant, window_from_local

__version__ = "0.1.0"

__all__ = [
    "City",
    "CityTable",
    "ConvergenceRecord",
    "DarknessWindow",
    "GeoPoint",
    "Instant",
    "LegRecord",
    "OracleResult",
    "PayloadState",
    "PheromoneMatrix",
    "SolverConfig",
    "SpeedBounds",
    "Tour",
    "TourEvaluation",
    "brute_force",
    "evaluate",
    "great_circle_distance",
    "load_cities",
    "rogue_check",
    "solve",
    "window_from_local",
    "__version__",
]
