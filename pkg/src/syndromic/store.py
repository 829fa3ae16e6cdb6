"""Count and message persistence.

Hourly positive-message counts per (city, syndrome) live in an in-memory
map backed by an append-only log, so a restart replays the log and ends up
with identical state. Accepted messages are archived alongside for
drill-down queries. All instants are UTC and all buckets are
inclusive-start, exclusive-end.

On-disk layout (directory, versioned by the FORMAT file):
    FORMAT        store format tag
    counts.tsv    hour_iso<TAB>city<TAB>syndrome<TAB>increment
    archive.jsonl one JSON object per archived message with its key
    ticks.txt     one ISO hour per completed ingest tick
"""
from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Iterable

from .aberration import BaselineWindow
from .pipeline import Message, message_from_json, message_to_json, parse_timestamp
from .syndromes import validate_syndrome

_FORMAT_LINE = "syndromic-store 1"

GRANULARITY_HOURS = {"hourly": 1, "daily": 24, "weekly": 168, "monthly": 720}

ARCHIVE_RETENTION_DAYS = 35


def hour_bucket(ts: datetime) -> datetime:
    """Truncate a timezone-aware instant to its UTC hour."""
    if ts.tzinfo is None:
        raise ValueError("timestamp must be timezone-aware")
    return ts.astimezone(timezone.utc).replace(minute=0, second=0, microsecond=0)


def _require_on_hour(ts: datetime) -> datetime:
    ts = ts.astimezone(timezone.utc)
    if ts.minute or ts.second or ts.microsecond:
        raise ValueError(f"instant not on an hour boundary: {ts.isoformat()}")
    return ts


def _iso(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).isoformat().replace("+00:00", "Z")


@dataclass(frozen=True)
class CountSeries:
    city: str
    syndrome: str
    granularity: str
    entries: tuple[tuple[datetime, int], ...]

    def __post_init__(self):
        for (a, _), (b, _) in zip(self.entries, self.entries[1:]):
            if a >= b:
                raise ValueError("series buckets must be strictly increasing")
        if any(c < 0 for _, c in self.entries):
            raise ValueError("counts must be non-negative")

    def counts(self) -> list[int]:
        return [c for _, c in self.entries]

    def total(self) -> int:
        return sum(c for _, c in self.entries)


class CountStore:
    """File-backed hourly count and archive store.

    A single lock covers both cache and log appends: writes are atomic per
    call and reads copy out under the lock, so every reader sees a
    consistent snapshot and its own completed writes.
    """

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._counts: dict[tuple[str, str, datetime], int] = {}
        self._archive: dict[tuple[str, str], list[tuple[datetime, Message]]] = {}
        self._ticks: set[datetime] = set()

        fmt = self.data_dir / "FORMAT"
        if fmt.exists():
            found = fmt.read_text(encoding="utf-8").strip()
            if found != _FORMAT_LINE:
                raise ValueError(f"unsupported store format {found!r} in {self.data_dir}")
        else:
            fmt.write_text(_FORMAT_LINE + "\n", encoding="utf-8")

        self._counts_path = self.data_dir / "counts.tsv"
        self._archive_path = self.data_dir / "archive.jsonl"
        self._ticks_path = self.data_dir / "ticks.txt"
        self._replay_logs()
        self._counts_fh = open(self._counts_path, "a", encoding="utf-8")
        self._archive_fh = open(self._archive_path, "a", encoding="utf-8")
        self._ticks_fh = open(self._ticks_path, "a", encoding="utf-8")

    def _replay_logs(self) -> None:
        if self._counts_path.exists():
            for raw in self._counts_path.read_text(encoding="utf-8").splitlines():
                if not raw.strip():
                    continue
                hour_s, city, syndrome, inc = raw.split("\t")
                key = (city, syndrome, parse_timestamp(hour_s))
                self._counts[key] = self._counts.get(key, 0) + int(inc)
        if self._archive_path.exists():
            for raw in self._archive_path.read_text(encoding="utf-8").splitlines():
                if not raw.strip():
                    continue
                obj = json.loads(raw)
                key = (obj["city"], obj["syndrome"])
                hour = parse_timestamp(obj["hour"])
                msg = message_from_json(json.dumps(obj["message"]))
                self._archive.setdefault(key, []).append((hour, msg))
        if self._ticks_path.exists():
            for raw in self._ticks_path.read_text(encoding="utf-8").splitlines():
                if raw.strip():
                    self._ticks.add(parse_timestamp(raw.strip()))

    def close(self) -> None:
        with self._lock:
            for fh in (self._counts_fh, self._archive_fh, self._ticks_fh):
                fh.close()

    def __enter__(self) -> "CountStore":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    # -- writes ---------------------------------------------------------

    def record(
        self,
        city: str,
        syndrome: str,
        hour: datetime,
        increment: int = 1,
        message: Message | None = None,
    ) -> None:
        """Add to one hourly bucket and optionally archive the message."""
        validate_syndrome(syndrome)
        if increment < 0:
            raise ValueError("increment must be non-negative")
        hour = _require_on_hour(hour)
        with self._lock:
            if increment:
                key = (city, syndrome, hour)
                self._counts[key] = self._counts.get(key, 0) + increment
                self._counts_fh.write(f"{_iso(hour)}\t{city}\t{syndrome}\t{increment}\n")
                self._counts_fh.flush()
            if message is not None:
                self._archive.setdefault((city, syndrome), []).append((hour, message))
                self._archive_fh.write(
                    json.dumps(
                        {
                            "city": city,
                            "syndrome": syndrome,
                            "hour": _iso(hour),
                            "message": json.loads(message_to_json(message)),
                        },
                        ensure_ascii=False,
                    )
                    + "\n"
                )
                self._archive_fh.flush()

    def mark_tick(self, hour: datetime) -> None:
        hour = _require_on_hour(hour)
        with self._lock:
            if hour in self._ticks:
                return
            self._ticks.add(hour)
            self._ticks_fh.write(_iso(hour) + "\n")
            self._ticks_fh.flush()

    def has_tick(self, hour: datetime) -> bool:
        hour = _require_on_hour(hour)
        with self._lock:
            return hour in self._ticks

    def latest_tick(self) -> datetime | None:
        with self._lock:
            return max(self._ticks) if self._ticks else None

    # -- reads ----------------------------------------------------------

    def count_at(self, city: str, syndrome: str, hour: datetime) -> int:
        hour = _require_on_hour(hour)
        with self._lock:
            return self._counts.get((city, syndrome, hour), 0)

    def series(
        self,
        city: str,
        syndrome: str,
        start: datetime,
        end: datetime,
        granularity: str = "hourly",
    ) -> CountSeries:
        """Counts over [start, end) re-bucketed by summation.

        Buckets are fixed-width windows anchored at *start* (1 hour, 24
        hours, 7 days, 30 days); a partial trailing window is included.
        Missing data reads as zero.
        """
        validate_syndrome(syndrome)
        if granularity not in GRANULARITY_HOURS:
            raise ValueError(f"unknown granularity {granularity!r}")
        start = _require_on_hour(start)
        end = _require_on_hour(end)
        if end <= start:
            raise ValueError("series range is empty or inverted")
        width = timedelta(hours=GRANULARITY_HOURS[granularity])
        with self._lock:
            relevant = {
                h: c
                for (c_city, c_syn, h), c in self._counts.items()
                if c_city == city and c_syn == syndrome and start <= h < end
            }
        entries = []
        bucket_start = start
        while bucket_start < end:
            bucket_end = min(bucket_start + width, end)
            total = sum(c for h, c in relevant.items() if bucket_start <= h < bucket_end)
            entries.append((bucket_start, total))
            bucket_start = bucket_start + width
        return CountSeries(
            city=city, syndrome=syndrome, granularity=granularity, entries=tuple(entries)
        )

    def baseline(
        self,
        city: str,
        syndrome: str,
        at: datetime,
        history_days: int = 14,
        stratify_by_hour: bool = True,
    ) -> BaselineWindow:
        """History window for the observation at hour *at*, oldest first.

        Stratified mode reads the same hour-of-day on each of the previous
        *history_days* days; otherwise each day contributes its full daily
        total. Absent data reads as zero either way.
        """
        validate_syndrome(syndrome)
        at = _require_on_hour(at)
        counts = []
        with self._lock:
            if stratify_by_hour:
                for back in range(history_days, 0, -1):
                    h = at - timedelta(days=back)
                    counts.append(float(self._counts.get((city, syndrome, h), 0)))
            else:
                day_start = at.replace(hour=0)
                for back in range(history_days, 0, -1):
                    d0 = day_start - timedelta(days=back)
                    total = sum(
                        self._counts.get((city, syndrome, d0 + timedelta(hours=h)), 0)
                        for h in range(24)
                    )
                    counts.append(float(total))
        return BaselineWindow(counts=tuple(counts))

    def messages(
        self,
        city: str,
        syndrome: str,
        start: datetime,
        end: datetime,
        limit: int = 50,
    ) -> list[Message]:
        """Archived accepted messages in [start, end), newest first."""
        validate_syndrome(syndrome)
        if limit <= 0:
            raise ValueError("limit must be positive")
        start = _require_on_hour(start)
        end = _require_on_hour(end)
        with self._lock:
            rows = [
                (h, m)
                for h, m in self._archive.get((city, syndrome), ())
                if start <= h < end
            ]
        rows.sort(key=lambda hm: hm[1].timestamp, reverse=True)
        return [m for _, m in rows[:limit]]

    def keys(self) -> set[tuple[str, str]]:
        """All (city, syndrome) pairs with recorded counts."""
        with self._lock:
            return {(c, s) for (c, s, _) in self._counts}

    # -- maintenance ----------------------------------------------------

    def prune_archive(self, now: datetime, retention_days: int = ARCHIVE_RETENTION_DAYS) -> int:
        """Drop archived messages older than the retention window.

        The archive log is rewritten; counts are untouched. Returns the
        number of messages removed."""
        cutoff = hour_bucket(now) - timedelta(days=retention_days)
        removed = 0
        with self._lock:
            for key in list(self._archive):
                kept = [(h, m) for h, m in self._archive[key] if h >= cutoff]
                removed += len(self._archive[key]) - len(kept)
                if kept:
                    self._archive[key] = kept
                else:
                    del self._archive[key]
            if removed:
                self._archive_fh.close()
                with open(self._archive_path, "w", encoding="utf-8") as fh:
                    for (city, syndrome), rows in sorted(self._archive.items()):
                        for h, m in rows:
                            fh.write(
                                json.dumps(
                                    {
                                        "city": city,
                                        "syndrome": syndrome,
                                        "hour": _iso(h),
                                        "message": json.loads(message_to_json(m)),
                                    },
                                    ensure_ascii=False,
                                )
                                + "\n"
                            )
                self._archive_fh = open(self._archive_path, "a", encoding="utf-8")
        return removed

    def export_csv(self, out_dir: str | Path) -> list[Path]:
        """One CSV per (city, syndrome) with rows hour_iso,count."""
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        with self._lock:
            by_key: dict[tuple[str, str], list[tuple[datetime, int]]] = {}
            for (city, syndrome, hour), c in self._counts.items():
                by_key.setdefault((city, syndrome), []).append((hour, c))
        written = []
        for (city, syndrome), rows in sorted(by_key.items()):
            safe_city = "".join(ch if ch.isalnum() else "_" for ch in city.lower())
            path = out / f"{safe_city}__{syndrome}.csv"
            rows.sort()
            with open(path, "w", encoding="utf-8") as fh:
                fh.write("hour_iso,count\n")
                for hour, c in rows:
                    fh.write(f"{_iso(hour)},{c}\n")
            written.append(path)
        return written


def iter_hours(start: datetime, end: datetime) -> Iterable[datetime]:
    """Hour boundaries in [start, end)."""
    h = _require_on_hour(start)
    end = _require_on_hour(end)
    while h < end:
        yield h
        h += timedelta(hours=1)
