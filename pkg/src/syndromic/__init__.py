"""Syndromic surveillance from short public messages.

Messages are filtered (structure, rate limits, keywords, block list),
classified per syndrome with naive Bayes or kernel SVM models, aggregated
into hourly counts per city, and scored for aberrations against a trailing
two-week baseline. A small HTTP API serves the resulting series and
alerts.
"""
from .aberration import (
    AberrationConfig,
    AlertState,
    BaselineWindow,
    band,
    c2_score,
    trend,
)
from .classifiers import (
    ClassifierSpec,
    TrainedClassifier,
    load_classifier,
    parse_model_spec,
    train_classifier,
)
from .evaluation import (
    AnnotatedMessage,
    CorpusSummary,
    EvalReport,
    PRF,
    best_pair_kappa,
    cohen_kappa,
    consensus_corpus,
    kfold_cv,
    load_annotated,
    mi_rank,
    nb_trainer,
    prf,
    summarize_corpus,
    svm_trainer,
)
from .geo import City, CityRegistry, default_registry, haversine_km
from .naive_bayes import NBModel, classify_nb, log_posterior, train_nb
from .pipeline import (
    BlockList,
    Message,
    Pipeline,
    PipelineConfig,
    PipelineOutcome,
    SyndromeLexicon,
    default_blocklist,
    default_lexicon,
)
from .store import CountSeries, CountStore, hour_bucket
from .svm import (
    ConvergenceError,
    KernelConfig,
    SolverSettings,
    SVMModel,
    classify_svm,
    decision_value,
    train_svm,
)
from .syndromes import SYNDROMES
from .text import BinaryVector, Vocabulary, build_vocabulary, tokenize, vectorize

__version__ = "0.1.0"

__all__ = [
    "AberrationConfig",
    "AlertState",
    "AnnotatedMessage",
    "BaselineWindow",
    "BinaryVector",
    "BlockList",
    "City",
    "CityRegistry",
    "ClassifierSpec",
    "ConvergenceError",
    "CorpusSummary",
    "CountSeries",
    "CountStore",
    "EvalReport",
    "KernelConfig",
    "Message",
    "NBModel",
    "PRF",
    "Pipeline",
    "PipelineConfig",
    "PipelineOutcome",
    "SVMModel",
    "SYNDROMES",
    "SolverSettings",
    "SyndromeLexicon",
    "TrainedClassifier",
    "Vocabulary",
    "band",
    "best_pair_kappa",
    "build_vocabulary",
    "c2_score",
    "classify_nb",
    "classify_svm",
    "cohen_kappa",
    "consensus_corpus",
    "decision_value",
    "default_blocklist",
    "default_lexicon",
    "default_registry",
    "haversine_km",
    "hour_bucket",
    "kfold_cv",
    "load_annotated",
    "load_classifier",
    "log_posterior",
    "mi_rank",
    "nb_trainer",
    "parse_model_spec",
    "prf",
    "summarize_corpus",
    "svm_trainer",
    "tokenize",
    "train_classifier",
    "train_nb",
    "train_svm",
    "trend",
    "vectorize",
]
