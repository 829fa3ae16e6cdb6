"""Message sources for the ingest scheduler.

Two adapters stand in for a live feed: replaying a message file, and a
synthetic generator that emits Poisson background chatter per city and
syndrome with optional outbreak injections. Both hand out messages in
timestamp order through the same drain(start, end) interface, and the
generator is deterministic per hour so replaying a tick reproduces the
same messages.
"""
from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timedelta
from pathlib import Path
from typing import Protocol, Sequence

import numpy as np

from .geo import CityRegistry
from .pipeline import Message, read_messages
from .store import iter_hours
from .syndromes import SYNDROMES


class MessageSource(Protocol):
    def drain(self, start: datetime, end: datetime) -> list[Message]:
        """Messages with start <= timestamp < end, in timestamp order."""
        ...


class ReplaySource:
    """Serves a fixed message list (typically loaded from a file)."""

    def __init__(self, messages: Sequence[Message]):
        self._messages = sorted(messages, key=lambda m: m.timestamp)

    @classmethod
    def from_file(cls, path: str | Path) -> "ReplaySource":
        return cls(read_messages(path))

    def __len__(self) -> int:
        return len(self._messages)

    def span(self) -> tuple[datetime, datetime] | None:
        if not self._messages:
            return None
        return self._messages[0].timestamp, self._messages[-1].timestamp

    def drain(self, start: datetime, end: datetime) -> list[Message]:
        return [m for m in self._messages if start <= m.timestamp < end]


# Message templates. Positive templates lead with a syndromic keyword the
# bundled lexicon knows; chatter templates contain none of them.
_POSITIVE_TEMPLATES = {
    "constitutional": (
        "running a fever and aching all over today",
        "this fever and fatigue is wiping me out",
        "chills all night, feeling feverish again",
    ),
    "respiratory": (
        "my throat is killing me and i can't stop coughing",
        "awful cough and a sore throat since monday",
        "wheezing all day, this cough won't quit",
    ),
    "gastrointestinal": (
        "stomach cramps and vomiting since breakfast",
        "can't keep anything down, diarrhea all day",
        "nausea and vomiting again, staying home",
    ),
    "hemorrhagic": (
        "nosebleed that won't stop, bleeding for an hour",
        "woke up bleeding from the gums, scary stuff",
        "bruising and a nosebleed out of nowhere",
    ),
    "rash": (
        "itchy rash spreading up my arm",
        "woke up with hives all over my back",
        "this rash is getting worse, red spots everywhere",
    ),
    "neurological": (
        "migraine so bad i can't see straight",
        "dizzy spells and a splitting headache",
        "numbness in my hand and a weird headache",
    ),
}

_CHATTER_TEMPLATES = (
    "great game last night, what a finish",
    "traffic on the bridge is unreal this morning",
    "new coffee place on the corner is actually decent",
    "anyone else watching the match tonight",
    "finally finished that book, worth the hype",
)


@dataclass(frozen=True)
class OutbreakInjection:
    """Multiplies one (city, syndrome) rate for a window of hours."""

    city: str
    syndrome: str
    start: datetime
    duration_hours: int
    multiplier: float

    def active_at(self, hour: datetime) -> bool:
        return self.start <= hour < self.start + timedelta(hours=self.duration_hours)


class SyntheticSource:
    """Poisson message generator over a city registry.

    Every (city, syndrome, hour) cell draws its positive-message count
    from Poisson(rate x any active outbreak multiplier); chatter messages
    arrive at chatter_rate per city-hour. Draws are seeded per hour cell,
    so drains are idempotent and order-independent.
    """

    def __init__(
        self,
        registry: CityRegistry,
        seed: int = 0,
        rate: float = 10.0,
        chatter_rate: float = 20.0,
        outbreaks: Sequence[OutbreakInjection] = (),
    ):
        if rate < 0 or chatter_rate < 0:
            raise ValueError("rates must be non-negative")
        for ob in outbreaks:
            registry.get(ob.city)  # unknown city fails fast
        self.registry = registry
        self.seed = seed
        self.rate = rate
        self.chatter_rate = chatter_rate
        self.outbreaks = tuple(outbreaks)

    def _cell_rng(self, hour: datetime, city_idx: int, channel: int) -> np.random.Generator:
        return np.random.default_rng(
            [self.seed, int(hour.timestamp()), city_idx, channel]
        )

    def _emit(
        self,
        rng: np.random.Generator,
        n: int,
        hour: datetime,
        city,
        city_idx: int,
        channel: int,
        texts: Sequence[str],
    ) -> list[Message]:
        out = []
        for j in range(n):
            # Unique user per message keeps the rate limit out of the way;
            # jitter stays well inside the city's assignment radius.
            dlat = float(rng.uniform(-0.05, 0.05))
            dlon = float(rng.uniform(-0.05, 0.05))
            minute = int(rng.integers(0, 60))
            second = int(rng.integers(0, 60))
            text = texts[int(rng.integers(0, len(texts)))]
            ts = hour + timedelta(minutes=minute, seconds=second)
            mid = f"syn-{int(hour.timestamp())}-{city_idx}-{channel}-{j}"
            out.append(
                Message(
                    id=mid,
                    user_id=f"user-{mid}",
                    timestamp=ts,
                    text=text,
                    location=(city.lat + dlat, city.lon + dlon),
                )
            )
        return out

    def drain(self, start: datetime, end: datetime) -> list[Message]:
        messages: list[Message] = []
        for hour in iter_hours(start, end):
            for city_idx, city in enumerate(self.registry):
                for s_idx, syndrome in enumerate(SYNDROMES):
                    lam = self.rate
                    for ob in self.outbreaks:
                        if ob.city == city.name and ob.syndrome == syndrome and ob.active_at(hour):
                            lam *= ob.multiplier
                    rng = self._cell_rng(hour, city_idx, s_idx)
                    n = int(rng.poisson(lam))
                    messages.extend(
                        self._emit(
                            rng, n, hour, city, city_idx, s_idx, _POSITIVE_TEMPLATES[syndrome]
                        )
                    )
                rng = self._cell_rng(hour, city_idx, len(SYNDROMES))
                n = int(rng.poisson(self.chatter_rate))
                messages.extend(
                    self._emit(
                        rng, n, hour, city, city_idx, len(SYNDROMES), _CHATTER_TEMPLATES
                    )
                )
        messages.sort(key=lambda m: (m.timestamp, m.id))
        return messages


def training_corpus(seed: int = 0, per_class: int = 120) -> dict[str, list[tuple[str, bool]]]:
    """Labeled synthetic corpora, one per syndrome, built from the same
    templates the generator emits. Positives are that syndrome's
    templates; negatives mix chatter with the other syndromes' texts."""
    rng = np.random.default_rng(seed)
    corpora: dict[str, list[tuple[str, bool]]] = {}
    for syndrome in SYNDROMES:
        pos_texts = _POSITIVE_TEMPLATES[syndrome]
        neg_pool = list(_CHATTER_TEMPLATES)
        for other, texts in _POSITIVE_TEMPLATES.items():
            if other != syndrome:
                neg_pool.extend(texts)
        examples = []
        for _ in range(per_class):
            examples.append((pos_texts[int(rng.integers(0, len(pos_texts)))], True))
            examples.append((neg_pool[int(rng.integers(0, len(neg_pool)))], False))
        corpora[syndrome] = examples
    return corpora
