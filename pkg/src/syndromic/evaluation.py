"""Corpus evaluation: annotator agreement, consensus labeling,
cross-validation with precision/recall/F1, and term ranking by mutual
information.

An annotated message carries three independent boolean judgements for one
syndrome. Agreement is summarized as Cohen's kappa over the best-agreeing
annotator pair; only messages with unanimous labels enter the training
corpus. Classifier quality is measured by stratified k-fold
cross-validation, micro-averaged over folds.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from . import naive_bayes, svm
from .syndromes import validate_syndrome
from .text import BinaryVector, build_vocabulary, tokenize, vectorize

# A trained predictor: binary vector in, positive verdict out.
Predictor = Callable[[BinaryVector], bool]
# A trainer builds a predictor from vectorized labeled examples.
Trainer = Callable[[Sequence[tuple[BinaryVector, bool]]], Predictor]


@dataclass(frozen=True)
class AnnotatedMessage:
    text: str
    syndrome: str
    labels: tuple[bool, bool, bool]

    def __post_init__(self):
        validate_syndrome(self.syndrome)
        if len(self.labels) != 3:
            raise ValueError("expected exactly 3 annotator labels")


def load_annotated(path: str | Path) -> list[AnnotatedMessage]:
    """One JSON object per line: {"text": ..., "syndrome": ..., "labels": [b, b, b]}."""
    out = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
            out.append(
                AnnotatedMessage(
                    text=obj["text"],
                    syndrome=obj["syndrome"],
                    labels=tuple(bool(b) for b in obj["labels"]),
                )
            )
        except (KeyError, ValueError, TypeError) as exc:
            raise ValueError(f"{path}:{lineno}: bad annotated record: {exc}") from exc
    return out


def save_annotated(msgs: Iterable[AnnotatedMessage], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for m in msgs:
            fh.write(
                json.dumps(
                    {"text": m.text, "syndrome": m.syndrome, "labels": list(m.labels)},
                    ensure_ascii=False,
                )
                + "\n"
            )


def cohen_kappa(a: Sequence[bool], b: Sequence[bool]) -> float:
    """Chance-corrected agreement (p_o - p_e) / (1 - p_e).

    When expected agreement is exactly 1 (both annotators constant and
    equal in distribution), kappa is defined as 1 for perfect observed
    agreement and 0 otherwise.
    """
    if len(a) != len(b):
        raise ValueError(f"label lists differ in length: {len(a)} vs {len(b)}")
    n = len(a)
    if n == 0:
        raise ValueError("empty label lists")
    a = np.asarray(a, dtype=bool)
    b = np.asarray(b, dtype=bool)
    p_o = float(np.mean(a == b))
    pa = float(np.mean(a))
    pb = float(np.mean(b))
    p_e = pa * pb + (1.0 - pa) * (1.0 - pb)
    if p_e == 1.0:
        return 1.0 if p_o == 1.0 else 0.0
    return (p_o - p_e) / (1.0 - p_e)


def best_pair_kappa(msgs: Sequence[AnnotatedMessage]) -> float:
    """Kappa of the two highest-agreeing annotators out of the three."""
    if not msgs:
        raise ValueError("no annotated messages")
    cols = [[m.labels[j] for m in msgs] for j in range(3)]
    return max(
        cohen_kappa(cols[0], cols[1]),
        cohen_kappa(cols[0], cols[2]),
        cohen_kappa(cols[1], cols[2]),
    )


def consensus_corpus(
    msgs: Sequence[AnnotatedMessage],
) -> tuple[list[tuple[str, bool]], int]:
    """Keep only unanimously labeled messages.

    Returns (labeled examples, number discarded)."""
    kept: list[tuple[str, bool]] = []
    discarded = 0
    for m in msgs:
        if all(m.labels):
            kept.append((m.text, True))
        elif not any(m.labels):
            kept.append((m.text, False))
        else:
            discarded += 1
    return kept, discarded


@dataclass(frozen=True)
class CorpusSummary:
    syndrome: str
    positives: int
    negatives: int
    kappa: float

    @property
    def ratio(self) -> float:
        return self.positives / self.negatives if self.negatives else math.inf


def summarize_corpus(msgs: Sequence[AnnotatedMessage], syndrome: str) -> CorpusSummary:
    """Consensus positive/negative counts plus best-pair agreement for
    the messages annotated against one syndrome."""
    validate_syndrome(syndrome)
    subset = [m for m in msgs if m.syndrome == syndrome]
    if not subset:
        raise ValueError(f"no messages annotated for {syndrome!r}")
    examples, _ = consensus_corpus(subset)
    pos = sum(1 for _, lab in examples if lab)
    return CorpusSummary(
        syndrome=syndrome,
        positives=pos,
        negatives=len(examples) - pos,
        kappa=best_pair_kappa(subset),
    )


@dataclass(frozen=True)
class PRF:
    precision: float
    recall: float
    f1: float
    degenerate: bool = False

    def __iter__(self):
        return iter((self.precision, self.recall, self.f1))


def prf(tp: int, fp: int, fn: int) -> PRF:
    """Precision, recall and F1 as percentages.

    A zero denominator anywhere yields 0 for the affected metric and sets
    the degenerate flag."""
    if min(tp, fp, fn) < 0:
        raise ValueError("confusion counts must be non-negative")
    degenerate = False
    if tp + fp > 0:
        p = 100.0 * tp / (tp + fp)
    else:
        p, degenerate = 0.0, True
    if tp + fn > 0:
        r = 100.0 * tp / (tp + fn)
    else:
        r, degenerate = 0.0, True
    if p + r > 0:
        f1 = 2.0 * p * r / (p + r)
    else:
        f1, degenerate = 0.0, True
    return PRF(precision=p, recall=r, f1=f1, degenerate=degenerate)


@dataclass(frozen=True)
class FoldResult:
    tp: int
    fp: int
    fn: int
    tn: int
    metrics: PRF


@dataclass(frozen=True)
class EvalReport:
    folds: tuple[FoldResult, ...]
    tp: int
    fp: int
    fn: int
    tn: int
    metrics: PRF  # micro-averaged: computed from the summed counts
    mean_precision: float
    mean_recall: float
    mean_f1: float


def _deal_stratified(
    n_pos: int, n_neg: int, k: int, seed: int
) -> tuple[list[list[int]], np.ndarray, np.ndarray]:
    """Shuffled fold assignment. Positives are dealt round-robin to folds
    0..k-1 and negatives continue the cycle where the positives stopped,
    so fold sizes stay within one of each other even when folds are
    smaller than a class."""
    rng = np.random.default_rng(seed)
    pos_order = rng.permutation(n_pos)
    neg_order = rng.permutation(n_neg)
    folds: list[list[int]] = [[] for _ in range(k)]
    cursor = 0
    for local in pos_order:
        folds[cursor % k].append(int(local))  # index into positives
        cursor += 1
    neg_start = cursor
    for j, local in enumerate(neg_order):
        folds[(neg_start + j) % k].append(n_pos + int(local))  # offset into negatives
        cursor += 1
    return folds, pos_order, neg_order


def kfold_cv(
    corpus: Sequence[tuple[str, bool]],
    trainer: Trainer,
    k: int = 10,
    seed: int = 0,
) -> EvalReport:
    """Stratified k-fold cross-validation over a labeled text corpus.

    Folds preserve the class ratio as closely as integer counts allow;
    the shuffle is deterministic in the seed. Each fold's vocabulary is
    built from its training split only, so test-fold tokens unseen in
    training are dropped. The headline metrics are micro-averaged
    (confusion counts summed across folds).
    """
    if k < 2:
        raise ValueError("need at least 2 folds")
    if k > len(corpus):
        raise ValueError(f"k={k} exceeds corpus size {len(corpus)}")
    pos = [(t, lab) for t, lab in corpus if lab]
    neg = [(t, lab) for t, lab in corpus if not lab]
    if not pos or not neg:
        raise ValueError("corpus must contain both classes")
    ordered = pos + neg
    folds, _, _ = _deal_stratified(len(pos), len(neg), k, seed)
    for f in folds:
        if not f:
            raise ValueError("empty fold; reduce k")
    members = set()
    for f in folds:
        members.update(f)
    assert members == set(range(len(ordered)))

    fold_results = []
    for holdout in range(k):
        test_idx = folds[holdout]
        train_idx = [i for j, f in enumerate(folds) if j != holdout for i in f]
        train = [ordered[i] for i in train_idx]
        test = [ordered[i] for i in test_idx]
        if len({lab for _, lab in train}) < 2:
            raise ValueError(
                "a training partition lost a class entirely; use a larger corpus or smaller k"
            )
        vocab = build_vocabulary([tokenize(t) for t, _ in train])
        train_vecs = [(vectorize(tokenize(t), vocab), lab) for t, lab in train]
        predict = trainer(train_vecs)
        tp = fp = fn = tn = 0
        for text, truth in test:
            verdict = predict(vectorize(tokenize(text), vocab))
            if verdict and truth:
                tp += 1
            elif verdict and not truth:
                fp += 1
            elif not verdict and truth:
                fn += 1
            else:
                tn += 1
        fold_results.append(FoldResult(tp=tp, fp=fp, fn=fn, tn=tn, metrics=prf(tp, fp, fn)))

    TP = sum(f.tp for f in fold_results)
    FP = sum(f.fp for f in fold_results)
    FN = sum(f.fn for f in fold_results)
    TN = sum(f.tn for f in fold_results)
    return EvalReport(
        folds=tuple(fold_results),
        tp=TP,
        fp=FP,
        fn=FN,
        tn=TN,
        metrics=prf(TP, FP, FN),
        mean_precision=float(np.mean([f.metrics.precision for f in fold_results])),
        mean_recall=float(np.mean([f.metrics.recall for f in fold_results])),
        mean_f1=float(np.mean([f.metrics.f1 for f in fold_results])),
    )


def nb_trainer(alpha: float = 1.0, event_model: str = "bernoulli") -> Trainer:
    """Trainer factory for the probabilistic classifier."""

    def train(examples: Sequence[tuple[BinaryVector, bool]]) -> Predictor:
        model = naive_bayes.train_nb(examples, alpha=alpha, event_model=event_model)
        return lambda x: naive_bayes.classify_nb(model, x)

    return train


def svm_trainer(
    kernel: svm.KernelConfig, settings: svm.SolverSettings = svm.SolverSettings()
) -> Trainer:
    """Trainer factory for the margin classifier; labels map to +/-1."""

    def train(examples: Sequence[tuple[BinaryVector, bool]]) -> Predictor:
        signed = [(v, 1 if lab else -1) for v, lab in examples]
        model = svm.train_svm(signed, kernel, settings)
        return lambda x: svm.classify_svm(model, x)

    return train


RANK_METHODS = ("mi", "pmi")


def mi_rank(
    corpus: Sequence[tuple[str, bool]],
    top_n: int = 7,
    method: str = "mi",
) -> list[tuple[str, float]]:
    """Rank vocabulary terms by association with the positive class.

    The default score is the expected mutual information of the 2x2
    term-presence/class table in bits, with 1/2 added to every cell
    before normalizing. "pmi" scores only the (present, positive) cell:
    log2(P(1,+) / (P(1) P(+))). Descending by score; ties alphabetical.
    """
    if method not in RANK_METHODS:
        raise ValueError(f"unknown ranking method {method!r}")
    if not corpus:
        raise ValueError("empty corpus")
    token_sets = [frozenset(tokenize(t)) for t, _ in corpus]
    labels = np.array([lab for _, lab in corpus], dtype=bool)
    vocab = build_vocabulary([sorted(s) for s in token_sets])
    n = len(corpus)
    n_pos = int(labels.sum())

    # Document frequency of each term within each class.
    df_pos = np.zeros(len(vocab))
    df_neg = np.zeros(len(vocab))
    for toks, lab in zip(token_sets, labels):
        tgt = df_pos if lab else df_neg
        for tok in toks:
            tgt[vocab.index(tok)] += 1

    # Smoothed joint over (presence, class); marginals from the same table.
    c11 = df_pos + 0.5
    c10 = df_neg + 0.5
    c01 = (n_pos - df_pos) + 0.5
    c00 = ((n - n_pos) - df_neg) + 0.5
    total = n + 2.0
    p11, p10, p01, p00 = c11 / total, c10 / total, c01 / total, c00 / total
    p_t1 = p11 + p10
    p_t0 = p01 + p00
    p_c1 = p11 + p01
    p_c0 = p10 + p00
    if method == "mi":
        scores = (
            p11 * np.log2(p11 / (p_t1 * p_c1))
            + p10 * np.log2(p10 / (p_t1 * p_c0))
            + p01 * np.log2(p01 / (p_t0 * p_c1))
            + p00 * np.log2(p00 / (p_t0 * p_c0))
        )
    else:
        scores = np.log2(p11 / (p_t1 * p_c1))

    ranked = sorted(zip(vocab.terms, scores), key=lambda kv: (-kv[1], kv[0]))
    return [(t, float(s)) for t, s in ranked[: max(0, top_n)]]


def render_report_table(rows: Sequence[tuple[str, str, PRF]]) -> str:
    """Fixed-width table of (syndrome, model, metrics) rows."""
    lines = [f"{'syndrome':<18} {'model':<12} {'P':>6} {'R':>6} {'F1':>6}"]
    for syn, model, m in rows:
        lines.append(
            f"{syn:<18} {model:<12} {m.precision:>6.1f} {m.recall:>6.1f} {m.f1:>6.1f}"
        )
    return "\n".join(lines)
