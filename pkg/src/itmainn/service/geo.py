"""Health-center registry and great-circle distance lookups."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import List, Sequence, Tuple

EARTH_RADIUS_KM = 6371.0


class CoordinateOutOfRange(ValueError):
    pass


class EmptyRegistry(ValueError):
    pass


def validate_coordinates(lat: float, lon: float) -> None:
    if not -90.0 <= lat <= 90.0:
        raise CoordinateOutOfRange(f"latitude {lat} outside [-90, 90]")
    if not -180.0 <= lon <= 180.0:
        raise CoordinateOutOfRange(f"longitude {lon} outside [-180, 180]")


@dataclass(frozen=True)
class HealthCenter:
    center_id: str
    name: str
    lat: float
    lon: float
    contact: str = ""

    def __post_init__(self):
        if not self.center_id:
            raise ValueError("health center id must be non-empty")
        if not self.name:
            raise ValueError("health center name must be non-empty")
        validate_coordinates(self.lat, self.lon)

    def to_dict(self) -> dict:
        return {
            "center_id": self.center_id,
            "name": self.name,
            "lat": self.lat,
            "lon": self.lon,
            "contact": self.contact,
        }


def haversine(a: Tuple[float, float], b: Tuple[float, float]) -> float:
    """Great-circle distance in km on a sphere of radius 6371.0 km."""
    validate_coordinates(*a)
    validate_coordinates(*b)
    lat1, lon1 = map(math.radians, a)
    lat2, lon2 = map(math.radians, b)
    dlat = lat2 - lat1
    dlon = lon2 - lon1
    h = math.sin(dlat / 2) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin(dlon / 2) ** 2
    return 2.0 * EARTH_RADIUS_KM * math.asin(math.sqrt(h))


def nearest_centers(
    registry: Sequence[HealthCenter],
    origin: Tuple[float, float],
    limit: int,
) -> List[Tuple[HealthCenter, float]]:
    """Centers sorted by distance (ties by center_id), truncated to limit."""
    if not registry:
        raise EmptyRegistry("health-center registry is empty")
    if limit < 1:
        raise ValueError("limit must be at least 1")
    validate_coordinates(*origin)
    ranked = sorted(
        ((center, haversine(origin, (center.lat, center.lon))) for center in registry),
        key=lambda pair: (pair[1], pair[0].center_id),
    )
    return ranked[:limit]


def load_centers_csv(path: Path) -> List[HealthCenter]:
    """Registry CSV with header: center_id,name,lat,lon,contact."""
    centers = []
    with Path(path).open(newline="") as fh:
        for row in csv.DictReader(fh):
            centers.append(
                HealthCenter(
                    center_id=row["center_id"],
                    name=row["name"],
                    lat=float(row["lat"]),
                    lon=float(row["lon"]),
                    contact=row.get("contact", "") or "",
                )
            )
    return centers
