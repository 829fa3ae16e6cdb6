"""Naive Bayes over binary bag-of-words vectors.

One binary model per syndrome: the positive class means "this message is
about the syndrome". The default event model is Bernoulli, because the
feature vectors are strictly binary: absent features contribute
P(f_i=0 | class) to the score. A multinomial event model, in which only
present features contribute, is available as a configuration switch.

Likelihoods use add-alpha smoothing so an unseen feature/class pairing
never produces log(0). Class priors are the unsmoothed label frequencies.
The evidence term shared by both classes is never computed: scores are
unnormalised log posteriors, which is enough for the argmax.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .text import BinaryVector

EVENT_MODELS = ("bernoulli", "multinomial")

_FORMAT_TAG = "syndromic-nb"
_FORMAT_VERSION = 1


@dataclass(frozen=True)
class NBModel:
    """Trained naive Bayes parameters, all in log space.

    ``log_p1_*`` is log P(f_i=1 | class) per vocabulary index. For the
    Bernoulli event model ``log_p0_*`` holds log P(f_i=0 | class); for
    the multinomial model those arrays are all-zero placeholders.
    """

    event_model: str
    alpha: float
    vocab_size: int
    log_prior_pos: float
    log_prior_neg: float
    log_p1_pos: np.ndarray
    log_p0_pos: np.ndarray
    log_p1_neg: np.ndarray
    log_p0_neg: np.ndarray
    # Sum of the inactive-feature terms, cached so scoring is O(|active|).
    _base_pos: float = field(init=False, repr=False, compare=False, default=0.0)
    _base_neg: float = field(init=False, repr=False, compare=False, default=0.0)

    def __post_init__(self):
        if self.event_model not in EVENT_MODELS:
            raise ValueError(f"unknown event model {self.event_model!r}")
        for arr in (self.log_p1_pos, self.log_p0_pos, self.log_p1_neg, self.log_p0_neg):
            if arr.shape != (self.vocab_size,):
                raise ValueError("likelihood array shape does not match vocab_size")
            if not np.all(np.isfinite(arr)):
                raise ValueError("non-finite log likelihood")
        if self.event_model == "bernoulli":
            object.__setattr__(self, "_base_pos", float(np.sum(self.log_p0_pos)))
            object.__setattr__(self, "_base_neg", float(np.sum(self.log_p0_neg)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, NBModel):
            return NotImplemented
        return (
            self.event_model == other.event_model
            and self.alpha == other.alpha
            and self.vocab_size == other.vocab_size
            and self.log_prior_pos == other.log_prior_pos
            and self.log_prior_neg == other.log_prior_neg
            and np.array_equal(self.log_p1_pos, other.log_p1_pos)
            and np.array_equal(self.log_p0_pos, other.log_p0_pos)
            and np.array_equal(self.log_p1_neg, other.log_p1_neg)
            and np.array_equal(self.log_p0_neg, other.log_p0_neg)
        )

    def save(self, path: str | Path) -> None:
        """Plain-text model file; floats are written with repr() so the
        round-trip is bit-exact."""
        lines = [
            f"{_FORMAT_TAG} {_FORMAT_VERSION}",
            f"event_model {self.event_model}",
            f"alpha {float(self.alpha)!r}",
            f"vocab_size {self.vocab_size}",
            f"log_priors {float(self.log_prior_pos)!r} {float(self.log_prior_neg)!r}",
        ]
        for i in range(self.vocab_size):
            lines.append(
                f"{i} {float(self.log_p1_pos[i])!r} {float(self.log_p0_pos[i])!r} "
                f"{float(self.log_p1_neg[i])!r} {float(self.log_p0_neg[i])!r}"
            )
        Path(path).write_text("".join(l + "\n" for l in lines), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "NBModel":
        lines = Path(path).read_text(encoding="utf-8").splitlines()
        header = lines[0].split()
        if header[0] != _FORMAT_TAG or int(header[1]) != _FORMAT_VERSION:
            raise ValueError(f"not a naive Bayes model file: {path}")
        event_model = lines[1].split()[1]
        alpha = float(lines[2].split()[1])
        vocab_size = int(lines[3].split()[1])
        _, lp_pos, lp_neg = lines[4].split()
        arrays = np.zeros((4, vocab_size))
        for line in lines[5 : 5 + vocab_size]:
            parts = line.split()
            i = int(parts[0])
            arrays[:, i] = [float(p) for p in parts[1:5]]
        return cls(
            event_model=event_model,
            alpha=alpha,
            vocab_size=vocab_size,
            log_prior_pos=float(lp_pos),
            log_prior_neg=float(lp_neg),
            log_p1_pos=arrays[0],
            log_p0_pos=arrays[1],
            log_p1_neg=arrays[2],
            log_p0_neg=arrays[3],
        )


def train_nb(
    examples: Sequence[tuple[BinaryVector, bool]],
    alpha: float = 1.0,
    event_model: str = "bernoulli",
) -> NBModel:
    """Estimate class priors and per-feature likelihoods from counts.

    Bernoulli likelihoods: P(f=1|c) = (count(f=1, c) + alpha) / (count(c) + 2*alpha).
    Multinomial likelihoods: P(f|c) = (count(f, c) + alpha) / (total(c) + m*alpha).
    Raises if the training set is empty, single-class, or dimensionally
    inconsistent.
    """
    if event_model not in EVENT_MODELS:
        raise ValueError(f"unknown event model {event_model!r}")
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if not examples:
        raise ValueError("empty training set")
    m = examples[0][0].dimension
    n_pos = n_neg = 0
    df_pos = np.zeros(m)
    df_neg = np.zeros(m)
    for vec, label in examples:
        if vec.dimension != m:
            raise ValueError("training vectors have inconsistent dimensions")
        df = df_pos if label else df_neg
        for i in vec.active:
            df[i] += 1
        if label:
            n_pos += 1
        else:
            n_neg += 1
    if n_pos == 0 or n_neg == 0:
        raise ValueError("training set contains a single class; model would be degenerate")

    if event_model == "bernoulli":
        log_p1_pos = np.log((df_pos + alpha) / (n_pos + 2 * alpha))
        log_p0_pos = np.log((n_pos - df_pos + alpha) / (n_pos + 2 * alpha))
        log_p1_neg = np.log((df_neg + alpha) / (n_neg + 2 * alpha))
        log_p0_neg = np.log((n_neg - df_neg + alpha) / (n_neg + 2 * alpha))
    else:
        log_p1_pos = np.log((df_pos + alpha) / (df_pos.sum() + m * alpha))
        log_p1_neg = np.log((df_neg + alpha) / (df_neg.sum() + m * alpha))
        log_p0_pos = np.zeros(m)
        log_p0_neg = np.zeros(m)

    n = n_pos + n_neg
    return NBModel(
        event_model=event_model,
        alpha=alpha,
        vocab_size=m,
        log_prior_pos=math.log(n_pos / n),
        log_prior_neg=math.log(n_neg / n),
        log_p1_pos=log_p1_pos,
        log_p0_pos=log_p0_pos,
        log_p1_neg=log_p1_neg,
        log_p0_neg=log_p0_neg,
    )


def log_posterior(model: NBModel, x: BinaryVector) -> tuple[float, float]:
    """Unnormalised log posterior scores (positive, negative) for *x*."""
    if x.dimension != model.vocab_size:
        raise ValueError(
            f"vector dimension {x.dimension} does not match model vocab_size {model.vocab_size}"
        )
    if x.active:
        idx = np.fromiter(x.active, dtype=np.intp, count=len(x.active))
        active_pos = float(np.sum(model.log_p1_pos[idx] - model.log_p0_pos[idx]))
        active_neg = float(np.sum(model.log_p1_neg[idx] - model.log_p0_neg[idx]))
    else:
        active_pos = active_neg = 0.0
    score_pos = model.log_prior_pos + model._base_pos + active_pos
    score_neg = model.log_prior_neg + model._base_neg + active_neg
    return score_pos, score_neg


def classify_nb(model: NBModel, x: BinaryVector) -> bool:
    """True when the positive score strictly wins; ties go negative."""
    score_pos, score_neg = log_posterior(model, x)
    return score_pos > score_neg
