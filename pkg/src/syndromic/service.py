"""Runtime assembly: hourly ingestion, alert recomputation and the HTTP API.

A tick drains the source for the hour just ended, geocodes each message to
its nearest catalogued city, runs the filtering pipeline, and records the
accepted counts. Ticks are idempotent: a marker per completed hour means
replaying the same hour is a no-op. Alert snapshots are recomputed from
the store on demand, so API reads never depend on scheduler state beyond
what was ingested.
"""
from __future__ import annotations

import json
import threading
from collections import Counter
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone

from fastapi import FastAPI, HTTPException, Query

from .aberration import AberrationConfig, AlertState, band, c2_score, trend
from .classifiers import TrainedClassifier, load_all, parse_model_spec, train_classifier
from .config import ServiceConfig
from .geo import CityRegistry, default_registry
from .pipeline import (
    BlockList,
    Pipeline,
    PipelineConfig,
    SyndromeLexicon,
    default_blocklist,
    default_lexicon,
    message_to_json,
    parse_timestamp,
)
from .sources import MessageSource, ReplaySource, SyntheticSource, training_corpus
from .store import GRANULARITY_HOURS, CountStore, hour_bucket, iter_hours
from .syndromes import SYNDROMES


@dataclass(frozen=True)
class TickReport:
    hour: datetime
    processed: int
    no_city: int
    by_status: dict[str, int]
    recorded: dict[tuple[str, str], int]
    skipped: bool = False

    @property
    def accepted(self) -> int:
        return self.by_status.get("accepted", 0)


def ingest_tick(
    now: datetime,
    source: MessageSource,
    pipeline: Pipeline,
    registry: CityRegistry,
    store: CountStore,
) -> TickReport:
    """Process the hour that ended at *now*: [now - 1h, now).

    Running the same tick twice leaves the store unchanged; the second
    call reports skipped=True.
    """
    now_utc = now.astimezone(timezone.utc)
    if hour_bucket(now) != now_utc:
        raise ValueError(f"tick instant not on an hour boundary: {now.isoformat()}")
    now = now_utc
    hour = now - timedelta(hours=1)
    if store.has_tick(hour):
        return TickReport(
            hour=hour, processed=0, no_city=0, by_status={}, recorded={}, skipped=True
        )
    by_status: Counter[str] = Counter()
    recorded: Counter[tuple[str, str]] = Counter()
    no_city = 0
    processed = 0
    for m in source.drain(hour, now):
        processed += 1
        if m.location is None:
            no_city += 1
            continue
        city = registry.assign(*m.location)
        if city is None:
            no_city += 1
            continue
        outcome = pipeline.process(m)
        by_status[outcome.status] += 1
        if outcome.status == "accepted":
            for syndrome in sorted(outcome.matched_syndromes):
                store.record(city.name, syndrome, hour, 1, message=m)
                recorded[(city.name, syndrome)] += 1
    store.mark_tick(hour)
    return TickReport(
        hour=hour,
        processed=processed,
        no_city=no_city,
        by_status=dict(by_status),
        recorded=dict(recorded),
    )


@dataclass(frozen=True)
class AlertSnapshot:
    computed_at: datetime
    alerts: dict[tuple[str, str], AlertState]

    def for_city(self, city: str) -> list[AlertState]:
        return [self.alerts[(city, s)] for s in SYNDROMES]


def recompute_alerts(
    now: datetime,
    store: CountStore,
    registry: CityRegistry,
    cfg: AberrationConfig = AberrationConfig(),
) -> AlertSnapshot:
    """Score every (city, syndrome) pair on the last completed hour.

    The observation C_t is the count for hour [now-1h, now); the trend
    compares against the hour before that, recomputed the same way.
    """
    now = hour_bucket(now)
    alerts: dict[tuple[str, str], AlertState] = {}

    def score_at(city: str, syndrome: str, obs_hour: datetime) -> tuple[float, float]:
        window = store.baseline(
            city,
            syndrome,
            obs_hour,
            history_days=cfg.history_days,
            stratify_by_hour=cfg.stratify_by_hour,
        )
        if cfg.stratify_by_hour:
            c_t = float(store.count_at(city, syndrome, obs_hour))
        else:
            day = obs_hour.replace(hour=0)
            c_t = float(
                store.series(city, syndrome, day, day + timedelta(hours=24), "daily").total()
            )
        return c2_score(window, c_t, k=cfg.k, sigma_floor=cfg.sigma_floor), c_t

    obs = now - timedelta(hours=1)
    prev = now - timedelta(hours=2)
    for city in registry:
        for syndrome in SYNDROMES:
            s_now, c_now = score_at(city.name, syndrome, obs)
            s_prev, _ = score_at(city.name, syndrome, prev)
            alerts[(city.name, syndrome)] = AlertState(
                score=s_now,
                band=band(s_now, cfg.band_thresholds),
                trend=trend(s_now, s_prev),
                computed_at=now,
                city=city.name,
                syndrome=syndrome,
                count=c_now,
            )
    return AlertSnapshot(computed_at=now, alerts=alerts)


@dataclass
class Runtime:
    """Everything the API and scheduler share."""

    config: ServiceConfig
    registry: CityRegistry
    lexicon: SyndromeLexicon
    blocklist: BlockList
    classifiers: dict[str, TrainedClassifier]
    store: CountStore
    source: MessageSource | None = None
    _pipeline: Pipeline | None = field(default=None, repr=False)

    def pipeline(self) -> Pipeline:
        if self._pipeline is None:
            self._pipeline = Pipeline(
                PipelineConfig(
                    lexicon=self.lexicon,
                    blocklist=self.blocklist,
                    classifiers={
                        s: c.predict_vector for s, c in self.classifiers.items()
                    },
                    vocabularies={s: c.vocab for s, c in self.classifiers.items()},
                )
            )
        return self._pipeline

    def tick(self, now: datetime) -> TickReport:
        if self.source is None:
            raise RuntimeError("no message source configured")
        return ingest_tick(now, self.source, self.pipeline(), self.registry, self.store)

    def snapshot(self, now: datetime | None = None) -> AlertSnapshot:
        if now is None:
            last = self.store.latest_tick()
            now = (last + timedelta(hours=1)) if last else hour_bucket(
                datetime.now(timezone.utc)
            )
        return recompute_alerts(now, self.store, self.registry, self.config.aberration)


def bootstrap_classifiers(config: ServiceConfig) -> dict[str, TrainedClassifier]:
    """Load trained bundles from the model directory, or train from the
    built-in synthetic corpus when the directory has none (demo mode)."""
    try:
        return load_all(config.model_dir)
    except FileNotFoundError:
        pass
    corpora = training_corpus(seed=config.source_seed)
    out = {}
    for syndrome in SYNDROMES:
        spec = parse_model_spec(config.assignment[syndrome])
        out[syndrome] = train_classifier(corpora[syndrome], syndrome, spec)
    return out


def build_runtime(config: ServiceConfig) -> Runtime:
    registry = (
        CityRegistry.from_tsv(config.cities_path) if config.cities_path else default_registry()
    )
    lexicon = (
        SyndromeLexicon.from_tsv(config.lexicon_path)
        if config.lexicon_path
        else default_lexicon()
    )
    blocklist = (
        BlockList.from_file(config.blocklist_path)
        if config.blocklist_path
        else default_blocklist()
    )
    classifiers = bootstrap_classifiers(config)
    store = CountStore(config.data_dir)
    source: MessageSource | None
    if config.source_kind == "replay":
        source = ReplaySource.from_file(config.source_path) if config.source_path else None
    else:
        source = SyntheticSource(
            registry, seed=config.source_seed, rate=config.source_rate
        )
    return Runtime(
        config=config,
        registry=registry,
        lexicon=lexicon,
        blocklist=blocklist,
        classifiers=classifiers,
        store=store,
        source=source,
    )


class TickScheduler:
    """Fires runtime.tick on every hour boundary (or a shortened interval).

    Runs in a daemon thread; stop() is idempotent. Missed hours are caught
    up in order, which the tick markers make safe.
    """

    def __init__(self, runtime: Runtime, interval_hours: int = 1):
        self.runtime = runtime
        self.interval = timedelta(hours=interval_hours)
        self._stop = threading.Event()
        self._thread: threading.Thread | None = None

    def _loop(self) -> None:
        while not self._stop.is_set():
            now = datetime.now(timezone.utc)
            next_fire = hour_bucket(now) + self.interval
            if self._stop.wait(timeout=(next_fire - now).total_seconds()):
                return
            last = self.runtime.store.latest_tick()
            start = (last + timedelta(hours=1)) if last else next_fire - self.interval
            for hour in iter_hours(start, next_fire):
                self.runtime.tick(hour + timedelta(hours=1))

    def start(self) -> None:
        if self._thread is None:
            self._thread = threading.Thread(target=self._loop, daemon=True)
            self._thread.start()

    def stop(self) -> None:
        self._stop.set()
        if self._thread is not None:
            self._thread.join(timeout=5)
            self._thread = None


def _city_json(c) -> dict:
    return {"name": c.name, "lat": c.lat, "lon": c.lon, "radius_km": c.radius_km}


def _alert_json(a: AlertState) -> dict:
    return {
        "syndrome": a.syndrome,
        "score": a.score,
        "band": a.band,
        "trend": a.trend,
        "count": a.count,
    }


def create_app(runtime: Runtime) -> FastAPI:
    """Read-only JSON API over the runtime's store and registry."""
    app = FastAPI(title="syndromic", version="0.1.0")
    app.state.runtime = runtime

    def known_city(name: str) -> str:
        if name not in runtime.registry:
            raise HTTPException(status_code=404, detail=f"unknown city {name!r}")
        return name

    def known_syndrome(name: str) -> str:
        if name not in SYNDROMES:
            raise HTTPException(status_code=404, detail=f"unknown syndrome {name!r}")
        return name

    @app.get("/cities")
    def cities():
        return {"cities": [_city_json(c) for c in runtime.registry]}

    @app.get("/alerts")
    def alerts(city: str | None = None):
        snap = runtime.snapshot()
        if city is not None:
            known_city(city)
            names = [city]
        else:
            names = list(runtime.registry.names())
        return {
            "computed_at": snap.computed_at.isoformat().replace("+00:00", "Z"),
            "cities": [
                {"city": n, "alerts": [_alert_json(a) for a in snap.for_city(n)]}
                for n in names
            ],
        }

    @app.get("/series")
    def series(
        city: str,
        syndrome: str,
        granularity: str = "hourly",
        days: int = Query(default=1, ge=1, le=366),
    ):
        known_city(city)
        known_syndrome(syndrome)
        if granularity not in GRANULARITY_HOURS:
            raise HTTPException(status_code=400, detail=f"unknown granularity {granularity!r}")
        last = runtime.store.latest_tick()
        end = (last + timedelta(hours=1)) if last else hour_bucket(datetime.now(timezone.utc))
        start = end - timedelta(days=days)
        s = runtime.store.series(city, syndrome, start, end, granularity)
        return {
            "city": city,
            "syndrome": syndrome,
            "granularity": granularity,
            "points": [
                {"bucket": b.isoformat().replace("+00:00", "Z"), "count": c}
                for b, c in s.entries
            ],
        }

    @app.get("/messages")
    def messages(
        city: str,
        syndrome: str,
        hour: str | None = None,
        limit: int = Query(default=50, ge=1, le=500),
    ):
        known_city(city)
        known_syndrome(syndrome)
        if hour is not None:
            try:
                start = hour_bucket(parse_timestamp(hour))
            except ValueError as exc:
                raise HTTPException(status_code=400, detail=str(exc))
        else:
            last = runtime.store.latest_tick()
            start = last if last else hour_bucket(datetime.now(timezone.utc))
        msgs = runtime.store.messages(
            city, syndrome, start, start + timedelta(hours=1), limit=limit
        )
        return {
            "city": city,
            "syndrome": syndrome,
            "hour": start.isoformat().replace("+00:00", "Z"),
            "messages": [json.loads(message_to_json(m)) for m in msgs],
        }

    return app


def serve(config: ServiceConfig) -> None:
    """Build the runtime, start the scheduler if a source exists, serve HTTP."""
    import uvicorn

    runtime = build_runtime(config)
    app = create_app(runtime)
    scheduler = None
    if runtime.source is not None:
        scheduler = TickScheduler(runtime, interval_hours=config.tick_hours)
        scheduler.start()
    try:
        uvicorn.run(app, host="127.0.0.1", port=config.port, log_level="warning")
    finally:
        if scheduler is not None:
            scheduler.stop()
        runtime.store.close()
