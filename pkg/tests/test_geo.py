import math

import pytest

from syndromic.geo import City, CityRegistry, default_registry, haversine_km


class TestHaversine:
    def test_zero_distance(self):
        assert haversine_km(51.5, -0.12, 51.5, -0.12) == 0.0

    def test_equator_degree_of_longitude(self):
        # One degree along the equator: R * pi / 180.
        want = 6371.0 * math.pi / 180.0
        assert haversine_km(0.0, 0.0, 0.0, 1.0) == pytest.approx(want, rel=1e-12)

    def test_pole_to_pole(self):
        assert haversine_km(90.0, 0.0, -90.0, 0.0) == pytest.approx(
            6371.0 * math.pi, rel=1e-12
        )

    def test_quarter_meridian(self):
        assert haversine_km(0.0, 10.0, 90.0, 10.0) == pytest.approx(
            6371.0 * math.pi / 2.0, rel=1e-12
        )

    def test_symmetry(self):
        a = haversine_km(40.7, -74.0, 51.5, -0.12)
        b = haversine_km(51.5, -0.12, 40.7, -74.0)
        assert a == pytest.approx(b, rel=1e-15)

    def test_london_paris_ballpark(self):
        # Widely quoted great-circle distance is about 344 km.
        d = haversine_km(51.5074, -0.1278, 48.8566, 2.3522)
        assert 330.0 < d < 350.0

    def test_antipodal_is_half_circumference(self):
        # The formula loses precision as the half-angle approaches 1, so
        # antipodes are only good to metre scale.
        d = haversine_km(10.0, 20.0, -10.0, -160.0)
        assert d == pytest.approx(6371.0 * math.pi, rel=1e-6)


class TestCity:
    def test_coordinate_validation(self):
        with pytest.raises(ValueError):
            City("x", 91.0, 0.0)
        with pytest.raises(ValueError):
            City("x", 0.0, 181.0)
        with pytest.raises(ValueError):
            City("x", 0.0, 0.0, radius_km=0.0)
        with pytest.raises(ValueError):
            City("", 0.0, 0.0)


class TestRegistry:
    def make(self):
        return CityRegistry(
            [
                City("near", 10.0, 10.0, radius_km=50.0),
                City("far", 10.0, 12.0, radius_km=50.0),
                City("tiny", 50.0, 50.0, radius_km=5.0),
            ]
        )

    def test_lookup(self):
        reg = self.make()
        assert reg.get("near").lat == 10.0
        assert "far" in reg
        assert "nowhere" not in reg
        with pytest.raises(KeyError):
            reg.get("nowhere")

    def test_duplicate_names_rejected(self):
        with pytest.raises(ValueError):
            CityRegistry([City("a", 0, 0), City("a", 1, 1)])

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            CityRegistry([])

    def test_assign_nearest_within_radius(self):
        reg = self.make()
        # A point slightly to the east of "near" but well inside both radii.
        got = reg.assign(10.0, 10.2)
        assert got is not None and got.name == "near"

    def test_assign_respects_radius(self):
        reg = self.make()
        assert reg.assign(50.0, 51.0) is None  # ~70 km from "tiny", radius 5
        assert reg.assign(0.0, 0.0) is None

    def test_assign_tie_breaks_to_first_listed(self):
        reg = CityRegistry(
            [City("first", 0.0, -1.0, radius_km=200.0), City("second", 0.0, 1.0, radius_km=200.0)]
        )
        got = reg.assign(0.0, 0.0)
        assert got is not None and got.name == "first"

    def test_from_tsv(self, tmp_path):
        path = tmp_path / "cities.tsv"
        path.write_text(
            "# comment line\n"
            "alpha\t10.0\t20.0\t75\n"
            "beta\t-5.5\t30.0\n"
            "\n",
            encoding="utf-8",
        )
        reg = CityRegistry.from_tsv(path)
        assert reg.names() == ("alpha", "beta")
        assert reg.get("alpha").radius_km == 75.0
        assert reg.get("beta").radius_km == 50.0  # default

    def test_from_tsv_malformed(self, tmp_path):
        path = tmp_path / "cities.tsv"
        path.write_text("only_one_field\n", encoding="utf-8")
        with pytest.raises(ValueError):
            CityRegistry.from_tsv(path)


class TestBundledCatalogue:
    def test_loads_and_assigns(self):
        reg = default_registry()
        assert len(reg) >= 20
        got = reg.assign(40.7580, -73.9855)  # midtown manhattan
        assert got is not None and got.name == "new york"

    def test_all_unique_and_valid(self):
        reg = default_registry()
        names = reg.names()
        assert len(names) == len(set(names))
