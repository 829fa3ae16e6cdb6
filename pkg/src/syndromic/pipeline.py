"""Message filtering pipeline.

Incoming messages pass through five stages in a fixed order: structural
drops (repeats, external links), a per-user daily rate limit, a syndromic
keyword prefilter, a block list that vetoes known-bad contexts ("cabin
fever"), and finally the per-syndrome binary classifiers. The first stage
that rejects a message decides its outcome status.

Keyword and block-list matching is whole-token: an entry matches when its
token sequence occurs contiguously in the tokenized text, so "fever" never
fires on "feverish".
"""
from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from datetime import date, datetime, timezone
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, Mapping, Sequence

from .syndromes import SYNDROMES, validate_syndrome
from .text import BinaryVector, Vocabulary, tokenize, vectorize

STATUSES = (
    "dropped_retweet",
    "dropped_link",
    "dropped_rate_limit",
    "dropped_no_keyword",
    "dropped_blocklist",
    "dropped_ml_negative",
    "accepted",
)

DAILY_MESSAGE_LIMIT = 5


@dataclass(frozen=True)
class Message:
    id: str
    user_id: str
    timestamp: datetime
    text: str
    location: tuple[float, float] | None = None
    is_retweet: bool = False
    has_external_link: bool = False

    def __post_init__(self):
        if not self.id:
            raise ValueError("message id is empty")
        if self.timestamp.tzinfo is None:
            raise ValueError("timestamp must be timezone-aware")
        if self.location is not None:
            lat, lon = self.location
            if not (-90.0 <= lat <= 90.0 and -180.0 <= lon <= 180.0):
                raise ValueError(f"coordinates out of range: {self.location}")

    @property
    def utc_day(self) -> date:
        return self.timestamp.astimezone(timezone.utc).date()


def parse_timestamp(value: str) -> datetime:
    """ISO-8601 parse that also accepts a trailing 'Z'."""
    if value.endswith(("Z", "z")):
        value = value[:-1] + "+00:00"
    ts = datetime.fromisoformat(value)
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts


def message_from_json(line: str) -> Message:
    obj = json.loads(line)
    loc = obj.get("location")
    return Message(
        id=obj["id"],
        user_id=obj["user_id"],
        timestamp=parse_timestamp(obj["timestamp"]),
        text=obj["text"],
        location=tuple(loc) if loc is not None else None,
        is_retweet=bool(obj.get("is_retweet", False)),
        has_external_link=bool(obj.get("has_external_link", False)),
    )


def message_to_json(m: Message) -> str:
    return json.dumps(
        {
            "id": m.id,
            "user_id": m.user_id,
            "timestamp": m.timestamp.astimezone(timezone.utc).isoformat().replace("+00:00", "Z"),
            "text": m.text,
            "location": list(m.location) if m.location is not None else None,
            "is_retweet": m.is_retweet,
            "has_external_link": m.has_external_link,
        },
        ensure_ascii=False,
    )


def read_messages(path: str | Path) -> list[Message]:
    """Message file: one JSON object per line."""
    out = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        try:
            out.append(message_from_json(line))
        except (KeyError, ValueError, TypeError) as exc:
            raise ValueError(f"{path}:{lineno}: bad message record: {exc}") from exc
    return out


class SyndromeLexicon:
    """Per-syndrome keyword and phrase lists (tokenized, lowercase)."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[str, Sequence[str]]):
        table: dict[str, tuple[tuple[str, ...], ...]] = {}
        for syndrome in SYNDROMES:
            keywords = entries.get(syndrome, ())
            if not keywords:
                raise ValueError(f"lexicon has no keywords for {syndrome!r}")
            phrases = []
            for kw in keywords:
                toks = tuple(tokenize(kw))
                if not toks:
                    raise ValueError(f"lexicon entry tokenizes to nothing: {kw!r}")
                if kw != kw.lower():
                    raise ValueError(f"lexicon entries must be lowercase: {kw!r}")
                phrases.append(toks)
            table[syndrome] = tuple(phrases)
        unknown = set(entries) - set(SYNDROMES)
        if unknown:
            raise ValueError(f"unknown syndromes in lexicon: {sorted(unknown)}")
        self._entries = table

    def phrases(self, syndrome: str) -> tuple[tuple[str, ...], ...]:
        validate_syndrome(syndrome)
        return self._entries[syndrome]

    @classmethod
    def from_tsv(cls, path: str | Path) -> "SyndromeLexicon":
        """One entry per line: syndrome<TAB>keyword-or-phrase."""
        entries: dict[str, list[str]] = {}
        for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
            line = raw.strip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected syndrome<TAB>keyword")
            syndrome, keyword = parts[0].strip(), parts[1].strip()
            entries.setdefault(syndrome, []).append(keyword)
        return cls(entries)


class BlockList:
    """Stop words and phrases that veto a message outright."""

    __slots__ = ("_phrases",)

    def __init__(self, entries: Iterable[str]):
        phrases = []
        for e in entries:
            toks = tuple(tokenize(e))
            if not toks:
                raise ValueError(f"block-list entry tokenizes to nothing: {e!r}")
            if e != e.lower():
                raise ValueError(f"block-list entries must be lowercase: {e!r}")
            phrases.append(toks)
        self._phrases = tuple(phrases)

    def __len__(self) -> int:
        return len(self._phrases)

    @property
    def phrases(self) -> tuple[tuple[str, ...], ...]:
        return self._phrases

    @classmethod
    def from_file(cls, path: str | Path) -> "BlockList":
        """One stop word or phrase per line."""
        entries = [
            line.strip()
            for line in Path(path).read_text(encoding="utf-8").splitlines()
            if line.strip() and not line.lstrip().startswith("#")
        ]
        return cls(entries)


def default_lexicon() -> SyndromeLexicon:
    ref = resources.files("syndromic.data") / "lexicon.tsv"
    with resources.as_file(ref) as path:
        return SyndromeLexicon.from_tsv(path)


def default_blocklist() -> BlockList:
    ref = resources.files("syndromic.data") / "blocklist.txt"
    with resources.as_file(ref) as path:
        return BlockList.from_file(path)


def contains_phrase(tokens: Sequence[str], phrase: Sequence[str]) -> bool:
    """Whole-token contiguous subsequence match."""
    k = len(phrase)
    if k == 0 or k > len(tokens):
        return False
    first = phrase[0]
    for i in range(len(tokens) - k + 1):
        if tokens[i] == first and tuple(tokens[i : i + k]) == tuple(phrase):
            return True
    return False


@dataclass(frozen=True)
class PipelineOutcome:
    message_id: str
    status: str
    matched_syndromes: frozenset[str] = frozenset()

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == "accepted" and not self.matched_syndromes:
            raise ValueError("accepted outcome must carry at least one syndrome")
        if self.status != "accepted" and self.matched_syndromes:
            raise ValueError("only accepted outcomes carry syndromes")


class RateLimiter:
    """Per-user, per-UTC-day message counter with atomic check-and-count."""

    def __init__(self, limit: int = DAILY_MESSAGE_LIMIT):
        if limit < 1:
            raise ValueError("limit must be at least 1")
        self.limit = limit
        self._counts: dict[tuple[str, date], int] = {}
        self._lock = threading.Lock()

    def admit(self, user_id: str, day: date) -> bool:
        """True (and counted) if the user is under the daily limit."""
        key = (user_id, day)
        with self._lock:
            n = self._counts.get(key, 0)
            if n >= self.limit:
                return False
            self._counts[key] = n + 1
            return True

    def prune_before(self, day: date) -> int:
        """Drop counters for days earlier than *day*; returns how many."""
        with self._lock:
            stale = [k for k in self._counts if k[1] < day]
            for k in stale:
                del self._counts[k]
            return len(stale)


def structural_filter(m: Message) -> str | None:
    """Drop reason for repeats and link posts, None to pass."""
    if m.is_retweet:
        return "dropped_retweet"
    if m.has_external_link:
        return "dropped_link"
    return None


def keyword_prefilter(tokens: Sequence[str], lexicon: SyndromeLexicon) -> frozenset[str]:
    """Syndromes with at least one whole-token keyword/phrase hit."""
    hits = set()
    for syndrome in SYNDROMES:
        for phrase in lexicon.phrases(syndrome):
            if contains_phrase(tokens, phrase):
                hits.add(syndrome)
                break
    return frozenset(hits)


def blocklist_filter(tokens: Sequence[str], blocklist: BlockList) -> bool:
    """True when a stop word or phrase occurs (message must be dropped)."""
    return any(contains_phrase(tokens, p) for p in blocklist.phrases)


@dataclass
class PipelineConfig:
    lexicon: SyndromeLexicon
    blocklist: BlockList
    classifiers: Mapping[str, Callable[[BinaryVector], bool]]
    vocabularies: Mapping[str, Vocabulary]
    rate_limit: int = DAILY_MESSAGE_LIMIT


class Pipeline:
    """Composed filter; stage order is fixed.

    structural -> rate limit -> keyword prefilter -> block list -> ML.
    Stages before the classifiers are cheap and deterministic, so the
    expensive models only ever see putatively on-topic messages.
    """

    def __init__(self, config: PipelineConfig):
        for syndrome in SYNDROMES:
            if syndrome not in config.classifiers:
                raise ValueError(f"no classifier configured for {syndrome!r}")
            if syndrome not in config.vocabularies:
                raise ValueError(f"no vocabulary configured for {syndrome!r}")
        self.config = config
        self.limiter = RateLimiter(limit=config.rate_limit)

    def process(self, m: Message) -> PipelineOutcome:
        reason = structural_filter(m)
        if reason is not None:
            return PipelineOutcome(message_id=m.id, status=reason)
        if not self.limiter.admit(m.user_id, m.utc_day):
            return PipelineOutcome(message_id=m.id, status="dropped_rate_limit")
        tokens = tokenize(m.text)
        candidates = keyword_prefilter(tokens, self.config.lexicon)
        if not candidates:
            return PipelineOutcome(message_id=m.id, status="dropped_no_keyword")
        if blocklist_filter(tokens, self.config.blocklist):
            return PipelineOutcome(message_id=m.id, status="dropped_blocklist")
        confirmed = set()
        for syndrome in sorted(candidates):
            vocab = self.config.vocabularies[syndrome]
            if self.config.classifiers[syndrome](vectorize(tokens, vocab)):
                confirmed.add(syndrome)
        if not confirmed:
            return PipelineOutcome(message_id=m.id, status="dropped_ml_negative")
        return PipelineOutcome(
            message_id=m.id, status="accepted", matched_syndromes=frozenset(confirmed)
        )
