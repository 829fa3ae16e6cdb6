"""Per-syndrome classifier bundles: vocabulary + trained model.

The deployed assignment picks the best model family per syndrome, so a
bundle records which family it is. On disk a bundle is two plain-text
files, {syndrome}.vocab and {syndrome}.model; the model file's format tag
says which loader applies.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import naive_bayes, svm
from .syndromes import SYNDROMES, validate_syndrome
from .text import BinaryVector, Vocabulary, build_vocabulary, tokenize, vectorize

MODEL_KINDS = ("nb", "svm")

# Best-performing family per syndrome on the reference evaluation.
DEFAULT_ASSIGNMENT = {
    "respiratory": "nb",
    "hemorrhagic": "nb",
    "gastrointestinal": "svm:polynomial:2",
    "neurological": "svm:polynomial:1",
    "rash": "svm:polynomial:1",
    "constitutional": "svm:polynomial:1",
}
assert set(DEFAULT_ASSIGNMENT) == set(SYNDROMES)


@dataclass(frozen=True)
class ClassifierSpec:
    """Which model family to train, and with what knobs."""

    kind: str  # "nb" | "svm"
    alpha: float = 1.0
    event_model: str = "bernoulli"
    kernel: svm.KernelConfig | None = None
    C: float = 1.0

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise ValueError(f"unknown model kind {self.kind!r}")
        if self.kind == "svm" and self.kernel is None:
            object.__setattr__(self, "kernel", svm.KernelConfig(kind="polynomial", degree=1))


def parse_model_spec(text: str) -> ClassifierSpec:
    """Parse "nb", "svm:polynomial:2", "svm:rbf" style assignment strings."""
    parts = text.strip().lower().split(":")
    if parts[0] == "nb":
        if len(parts) > 1:
            raise ValueError(f"bad model spec {text!r}")
        return ClassifierSpec(kind="nb")
    if parts[0] == "svm":
        if len(parts) == 1:
            return ClassifierSpec(kind="svm")
        kernel_kind = parts[1]
        if kernel_kind == "rbf":
            if len(parts) > 2:
                raise ValueError(f"bad model spec {text!r}")
            return ClassifierSpec(kind="svm", kernel=svm.KernelConfig(kind="rbf"))
        if kernel_kind == "polynomial":
            degree = int(parts[2]) if len(parts) > 2 else 1
            return ClassifierSpec(
                kind="svm", kernel=svm.KernelConfig(kind="polynomial", degree=degree)
            )
        raise ValueError(f"bad model spec {text!r}")
    raise ValueError(f"bad model spec {text!r}")


@dataclass(frozen=True)
class TrainedClassifier:
    syndrome: str
    kind: str
    vocab: Vocabulary
    model: naive_bayes.NBModel | svm.SVMModel

    def predict_vector(self, x: BinaryVector) -> bool:
        if self.kind == "nb":
            return naive_bayes.classify_nb(self.model, x)
        return svm.classify_svm(self.model, x)

    def predict_text(self, text: str) -> bool:
        return self.predict_vector(vectorize(tokenize(text), self.vocab))

    def save(self, out_dir: str | Path) -> tuple[Path, Path]:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        vocab_path = out / f"{self.syndrome}.vocab"
        model_path = out / f"{self.syndrome}.model"
        self.vocab.save(vocab_path)
        self.model.save(model_path)
        return vocab_path, model_path


def train_classifier(
    corpus: Sequence[tuple[str, bool]],
    syndrome: str,
    spec: ClassifierSpec,
    settings: svm.SolverSettings | None = None,
) -> TrainedClassifier:
    """Build the vocabulary from *corpus* and train one binary model."""
    validate_syndrome(syndrome)
    if not corpus:
        raise ValueError("empty corpus")
    vocab = build_vocabulary([tokenize(t) for t, _ in corpus])
    vectors = [(vectorize(tokenize(t), vocab), lab) for t, lab in corpus]
    if spec.kind == "nb":
        model = naive_bayes.train_nb(vectors, alpha=spec.alpha, event_model=spec.event_model)
    else:
        signed = [(v, 1 if lab else -1) for v, lab in vectors]
        if settings is None:
            settings = svm.SolverSettings(C=spec.C)
        model = svm.train_svm(signed, spec.kernel, settings)
    return TrainedClassifier(syndrome=syndrome, kind=spec.kind, vocab=vocab, model=model)


def load_classifier(model_dir: str | Path, syndrome: str) -> TrainedClassifier:
    """Load {syndrome}.vocab and {syndrome}.model, dispatching on the
    model file's format tag."""
    validate_syndrome(syndrome)
    d = Path(model_dir)
    vocab_path = d / f"{syndrome}.vocab"
    model_path = d / f"{syndrome}.model"
    if not vocab_path.exists():
        raise FileNotFoundError(f"missing vocabulary file {vocab_path}")
    if not model_path.exists():
        raise FileNotFoundError(f"missing model file {model_path}")
    vocab = Vocabulary.load(vocab_path)
    with open(model_path, encoding="utf-8") as fh:
        tag = fh.readline().split()
    if tag and tag[0] == "syndromic-nb":
        model = naive_bayes.NBModel.load(model_path)
        kind = "nb"
    elif tag and tag[0] == "syndromic-svm":
        model = svm.SVMModel.load(model_path)
        kind = "svm"
    else:
        raise ValueError(f"unrecognized model file {model_path}")
    if len(vocab) != (model.vocab_size if kind == "nb" else model.dimension):
        raise ValueError(f"vocabulary and model disagree on dimension for {syndrome!r}")
    return TrainedClassifier(syndrome=syndrome, kind=kind, vocab=vocab, model=model)


def load_all(model_dir: str | Path) -> dict[str, TrainedClassifier]:
    return {s: load_classifier(model_dir, s) for s in SYNDROMES}
