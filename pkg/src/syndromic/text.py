"""Tokenization, vocabulary construction and binary bag-of-words vectors.

All classifiers share the same representation: a message is reduced to the
set of vocabulary indices whose term occurs in it at least once. Surface
words are never stemmed or otherwise normalised beyond lowercasing.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

# Split on any character that is neither a letter, a digit nor an
# apostrophe. Underscore must be listed separately because \w matches it.
_SPLIT_RE = re.compile(r"(?:[^\w']|_)+")


def tokenize(text: str) -> list[str]:
    """Lowercase *text* and split it into word tokens.

    Apostrophes survive inside a word ("don't") but are trimmed from its
    edges. Hashtag and mention markers are split characters, so "#fever"
    and "@nurse" keep the trailing word. Empty input yields an empty list.
    """
    tokens = []
    for part in _SPLIT_RE.split(text.lower()):
        part = part.strip("'")
        if part:
            tokens.append(part)
    return tokens


class Vocabulary:
    """Immutable term index in first-appearance order.

    Indices are dense 0..m-1. First-appearance ordering keeps existing
    indices stable when a corpus is extended and re-indexed.
    """

    __slots__ = ("_terms", "_index")

    def __init__(self, terms: Iterable[str]):
        self._terms = tuple(terms)
        self._index = {t: i for i, t in enumerate(self._terms)}
        if len(self._index) != len(self._terms):
            raise ValueError("vocabulary contains duplicate terms")
        for t in self._terms:
            if not t or any(c.isspace() for c in t):
                raise ValueError(f"invalid vocabulary term {t!r}")

    def __len__(self) -> int:
        return len(self._terms)

    def __contains__(self, term: str) -> bool:
        return term in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, Vocabulary) and self._terms == other._terms

    def __repr__(self) -> str:
        return f"Vocabulary({len(self._terms)} terms)"

    @property
    def terms(self) -> tuple[str, ...]:
        return self._terms

    def index(self, term: str) -> int:
        return self._index[term]

    def get(self, term: str) -> int | None:
        return self._index.get(term)

    def save(self, path: str | Path) -> None:
        """Write one term per line; the line number is the feature index."""
        Path(path).write_text("".join(t + "\n" for t in self._terms), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "Vocabulary":
        lines = Path(path).read_text(encoding="utf-8").splitlines()
        return cls(lines)


def build_vocabulary(corpus: Sequence[Sequence[str]]) -> Vocabulary:
    """Collect the distinct tokens of *corpus* in first-appearance order."""
    if len(corpus) == 0:
        raise ValueError("cannot build a vocabulary from an empty corpus")
    seen: dict[str, None] = {}
    for doc in corpus:
        for token in doc:
            seen.setdefault(token, None)
    return Vocabulary(seen)


@dataclass(frozen=True)
class BinaryVector:
    """Presence/absence feature vector: the set of active feature indices."""

    dimension: int
    active: frozenset[int]

    def __post_init__(self):
        if self.dimension < 0:
            raise ValueError("dimension must be non-negative")
        if not isinstance(self.active, frozenset):
            object.__setattr__(self, "active", frozenset(self.active))
        for i in self.active:
            if not 0 <= i < self.dimension:
                raise ValueError(f"active index {i} out of range for dimension {self.dimension}")


def vectorize(tokens: Iterable[str], vocab: Vocabulary) -> BinaryVector:
    """Map *tokens* onto *vocab* indices; out-of-vocabulary tokens are dropped."""
    active = frozenset(i for t in tokens if (i := vocab.get(t)) is not None)
    return BinaryVector(dimension=len(vocab), active=active)
