"""Service configuration.

Plain INI file with sections for paths, per-syndrome model assignment,
detector parameters, the message source and the server. Every key has a
default, so an empty file (or none at all) yields a runnable config.
SYNDROMIC_PORT and SYNDROMIC_DATA_DIR env vars override their file
counterparts.
"""
from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, field
from pathlib import Path

from .aberration import AberrationConfig
from .classifiers import DEFAULT_ASSIGNMENT
from .syndromes import SYNDROMES

ENV_PORT = "SYNDROMIC_PORT"
ENV_DATA_DIR = "SYNDROMIC_DATA_DIR"


@dataclass
class ServiceConfig:
    data_dir: Path = Path("./data")
    model_dir: Path = Path("./models")
    lexicon_path: Path | None = None  # None -> bundled sample
    cities_path: Path | None = None  # None -> bundled catalogue
    blocklist_path: Path | None = None  # None -> bundled sample
    assignment: dict[str, str] = field(default_factory=lambda: dict(DEFAULT_ASSIGNMENT))
    aberration: AberrationConfig = field(default_factory=AberrationConfig)
    port: int = 8000
    tick_hours: int = 1
    source_kind: str = "synthetic"  # "synthetic" | "replay"
    source_path: Path | None = None
    source_seed: int = 0
    source_rate: float = 10.0
    outbreaks: tuple[tuple[str, str, str, int, float], ...] = ()

    def __post_init__(self):
        if set(self.assignment) != set(SYNDROMES):
            raise ValueError("model assignment must cover exactly the six syndromes")
        if self.port <= 0 or self.tick_hours <= 0:
            raise ValueError("port and tick interval must be positive")
        if self.source_kind not in ("synthetic", "replay"):
            raise ValueError(f"unknown source kind {self.source_kind!r}")


def _opt_path(value: str | None) -> Path | None:
    return Path(value) if value else None


def load_config(path: str | Path | None = None) -> ServiceConfig:
    """Read the INI file (if given) and apply env overrides on top."""
    parser = configparser.ConfigParser()
    if path is not None:
        read = parser.read(str(path))
        if not read:
            raise FileNotFoundError(f"config file not found: {path}")

    cfg = ServiceConfig()

    if parser.has_section("paths"):
        sec = parser["paths"]
        cfg.data_dir = Path(sec.get("data_dir", str(cfg.data_dir)))
        cfg.model_dir = Path(sec.get("model_dir", str(cfg.model_dir)))
        cfg.lexicon_path = _opt_path(sec.get("lexicon", ""))
        cfg.cities_path = _opt_path(sec.get("cities", ""))
        cfg.blocklist_path = _opt_path(sec.get("blocklist", ""))

    if parser.has_section("models"):
        for syndrome in SYNDROMES:
            if parser.has_option("models", syndrome):
                cfg.assignment[syndrome] = parser.get("models", syndrome)

    if parser.has_section("aberration"):
        sec = parser["aberration"]
        thresholds = cfg.aberration.band_thresholds
        if sec.get("band_thresholds"):
            thresholds = tuple(float(x) for x in sec.get("band_thresholds").split(","))
        cfg.aberration = AberrationConfig(
            k=sec.getfloat("k", cfg.aberration.k),
            history_days=sec.getint("history_days", cfg.aberration.history_days),
            sigma_floor=sec.getfloat("sigma_floor", cfg.aberration.sigma_floor),
            band_thresholds=thresholds,
            stratify_by_hour=sec.getboolean("stratify_by_hour", cfg.aberration.stratify_by_hour),
        )

    if parser.has_section("server"):
        cfg.port = parser.getint("server", "port", fallback=cfg.port)
        cfg.tick_hours = parser.getint("server", "tick_hours", fallback=cfg.tick_hours)

    if parser.has_section("source"):
        sec = parser["source"]
        cfg.source_kind = sec.get("kind", cfg.source_kind)
        cfg.source_path = _opt_path(sec.get("path", ""))
        cfg.source_seed = sec.getint("seed", cfg.source_seed)
        cfg.source_rate = sec.getfloat("rate", cfg.source_rate)

    if os.environ.get(ENV_PORT):
        cfg.port = int(os.environ[ENV_PORT])
    if os.environ.get(ENV_DATA_DIR):
        cfg.data_dir = Path(os.environ[ENV_DATA_DIR])

    # Re-validate after all overrides.
    cfg.__post_init__()
    return cfg
