from .app import create_app, serve
from .config import ServiceConfig
from .geo import (
    EARTH_RADIUS_KM,
    CoordinateOutOfRange,
    EmptyRegistry,
    HealthCenter,
    haversine,
    load_centers_csv,
    nearest_centers,
)
from .store import (
    AGE_BUCKETS,
    GENDERS,
    SYMPTOM_CATALOG,
    CaseRecord,
    CaseStore,
    DashboardSnapshot,
    StorageFailure,
)

__all__ = [
    "AGE_BUCKETS",
    "CaseRecord",
    "CaseStore",
    "CoordinateOutOfRange",
    "DashboardSnapshot",
    "EARTH_RADIUS_KM",
    "EmptyRegistry",
    "GENDERS",
    "HealthCenter",
    "SYMPTOM_CATALOG",
    "ServiceConfig",
    "StorageFailure",
    "create_app",
    "haversine",
    "load_centers_csv",
    "nearest_centers",
    "serve",
]
