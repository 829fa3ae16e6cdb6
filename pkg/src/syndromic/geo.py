"""City catalogue and great-circle geocoding.

Messages carry point coordinates; aggregation wants city names. Each
message is attached to the nearest catalogued city, provided it lies
within that city's assignment radius.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

EARTH_RADIUS_KM = 6371.0

DEFAULT_RADIUS_KM = 50.0


@dataclass(frozen=True)
class City:
    name: str
    lat: float
    lon: float
    radius_km: float = DEFAULT_RADIUS_KM

    def __post_init__(self):
        if not self.name:
            raise ValueError("city name is empty")
        if not (-90.0 <= self.lat <= 90.0):
            raise ValueError(f"latitude out of range: {self.lat}")
        if not (-180.0 <= self.lon <= 180.0):
            raise ValueError(f"longitude out of range: {self.lon}")
        if self.radius_km <= 0:
            raise ValueError("assignment radius must be positive")


def haversine_km(lat1: float, lon1: float, lat2: float, lon2: float) -> float:
    """Great-circle distance in kilometres on a sphere of radius 6371 km."""
    phi1 = math.radians(lat1)
    phi2 = math.radians(lat2)
    dphi = math.radians(lat2 - lat1)
    dlam = math.radians(lon2 - lon1)
    a = math.sin(dphi / 2.0) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlam / 2.0) ** 2
    return EARTH_RADIUS_KM * 2.0 * math.asin(min(1.0, math.sqrt(a)))


class CityRegistry:
    """Ordered, name-unique catalogue of cities."""

    __slots__ = ("_cities", "_by_name")

    def __init__(self, cities: Iterable[City]):
        self._cities = tuple(cities)
        self._by_name = {}
        for c in self._cities:
            if c.name in self._by_name:
                raise ValueError(f"duplicate city name {c.name!r}")
            self._by_name[c.name] = c
        if not self._cities:
            raise ValueError("registry is empty")

    def __len__(self) -> int:
        return len(self._cities)

    def __iter__(self):
        return iter(self._cities)

    def get(self, name: str) -> City:
        try:
            return self._by_name[name]
        except KeyError:
            raise KeyError(f"unknown city {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self._cities)

    def assign(self, lat: float, lon: float) -> City | None:
        """Nearest city whose assignment radius covers the point, or None.

        Distance ties break toward the city listed first.
        """
        best = None
        best_d = math.inf
        for c in self._cities:
            d = haversine_km(lat, lon, c.lat, c.lon)
            if d <= c.radius_km and d < best_d:
                best = c
                best_d = d
        return best

    @classmethod
    def from_tsv(cls, path: str | Path) -> "CityRegistry":
        """Tab-separated catalogue: name, lat, lon, optional radius_km.
        Lines starting with '#' and blank lines are skipped."""
        cities = []
        for raw in Path(path).read_text(encoding="utf-8").splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) not in (3, 4):
                raise ValueError(f"malformed city line: {raw!r}")
            name, lat, lon = parts[0], float(parts[1]), float(parts[2])
            radius = float(parts[3]) if len(parts) == 4 else DEFAULT_RADIUS_KM
            cities.append(City(name=name, lat=lat, lon=lon, radius_km=radius))
        return cls(cities)


def default_registry() -> CityRegistry:
    """The city catalogue bundled with the package."""
    ref = resources.files("syndromic.data") / "cities.tsv"
    with resources.as_file(ref) as path:
        return CityRegistry.from_tsv(path)
