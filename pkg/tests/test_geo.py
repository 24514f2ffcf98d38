"""Great-circle distance and nearest-center lookup."""
import math
import random

import pytest

from itmainn.service.geo import (
    EARTH_RADIUS_KM,
    CoordinateOutOfRange,
    EmptyRegistry,
    HealthCenter,
    haversine,
    load_centers_csv,
    nearest_centers,
    validate_coordinates,
)


def law_of_cosines_distance(a, b):
    """Independent oracle using the spherical law of cosines."""
    p1, p2 = math.radians(a[0]), math.radians(b[0])
    dl = math.radians(b[1] - a[1])
    central = math.acos(
        min(1.0, max(-1.0, math.sin(p1) * math.sin(p2) + math.cos(p1) * math.cos(p2) * math.cos(dl)))
    )
    return EARTH_RADIUS_KM * central


def test_hand_worked_distances():
    assert EARTH_RADIUS_KM == 6371.0
    assert haversine((0, 0), (0, 1)) == pytest.approx(111.19492664455873, abs=1e-9)
    assert haversine((10, 33), (11, 33)) == pytest.approx(111.19492664455873, abs=1e-9)
    assert haversine((51.5074, -0.1278), (48.8566, 2.3522)) == pytest.approx(
        343.55606034104164, abs=1e-9
    )
    assert haversine((0, 0), (0, 180)) == pytest.approx(math.pi * EARTH_RADIUS_KM, abs=1e-9)
    assert haversine((42.1, 7.7), (42.1, 7.7)) == 0.0


def test_matches_law_of_cosines_oracle():
    rng = random.Random(6)
    for _ in range(200):
        a = (rng.uniform(-80, 80), rng.uniform(-180, 180))
        b = (rng.uniform(-80, 80), rng.uniform(-180, 180))
        assert haversine(a, b) == pytest.approx(law_of_cosines_distance(a, b), abs=1e-6)


def test_symmetry():
    assert haversine((10, 20), (-30, 40)) == pytest.approx(haversine((-30, 40), (10, 20)), abs=1e-12)


def test_coordinate_validation():
    validate_coordinates(90, 180)
    validate_coordinates(-90, -180)
    for lat, lon in ((90.01, 0), (-91, 0), (0, 180.5), (0, -181)):
        with pytest.raises(CoordinateOutOfRange):
            validate_coordinates(lat, lon)


def test_health_center_validation():
    c = HealthCenter("hc1", "Main Clinic", 10.0, 20.0, "012-345")
    assert c.to_dict()["center_id"] == "hc1"
    with pytest.raises(CoordinateOutOfRange):
        HealthCenter("hc2", "Bad", 99.0, 0.0)
    with pytest.raises(ValueError):
        HealthCenter("", "No id", 0.0, 0.0)
    with pytest.raises(ValueError):
        HealthCenter("hc3", "", 0.0, 0.0)


def random_registry(rng, n):
    return [
        HealthCenter(f"hc{i:03d}", f"Center {i}", rng.uniform(-89, 89), rng.uniform(-179, 179))
        for i in range(n)
    ]


def test_nearest_matches_brute_force():
    rng = random.Random(14)
    for _ in range(25):
        centers = random_registry(rng, rng.randint(1, 30))
        origin = (rng.uniform(-89, 89), rng.uniform(-179, 179))
        k = rng.randint(1, 5)
        got = nearest_centers(centers, origin, k)
        oracle = sorted(centers, key=lambda c: (haversine(origin, (c.lat, c.lon)), c.center_id))
        assert [c.center_id for c, _ in got] == [c.center_id for c in oracle[:k]]
        distances = [d for _, d in got]
        assert distances == sorted(distances)


def test_nearest_tie_breaks_by_id():
    centers = [
        HealthCenter("b", "B", 10.0, 10.0),
        HealthCenter("a", "A", 10.0, 10.0),
    ]
    got = nearest_centers(centers, (11.0, 10.0), 2)
    assert [c.center_id for c, _ in got] == ["a", "b"]
    assert got[0][1] == pytest.approx(got[1][1])


def test_nearest_errors():
    with pytest.raises(EmptyRegistry):
        nearest_centers([], (0, 0), 1)
    with pytest.raises(ValueError):
        nearest_centers(random_registry(random.Random(1), 3), (0, 0), 0)
    with pytest.raises(CoordinateOutOfRange):
        nearest_centers(random_registry(random.Random(1), 3), (95, 0), 1)


def test_csv_round_trip(tmp_path):
    path = tmp_path / "centers.csv"
    path.write_text(
        "center_id,name,lat,lon,contact\n"
        "hc1,North Clinic,12.5,-7.25,555-0100\n"
        "hc2,South Clinic,-3.0,39.5,\n"
    )
    centers = load_centers_csv(path)
    assert [c.center_id for c in centers] == ["hc1", "hc2"]
    assert centers[0].lat == 12.5 and centers[0].contact == "555-0100"
    assert centers[1].contact == ""
