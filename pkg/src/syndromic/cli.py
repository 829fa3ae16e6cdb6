"""Command-line entry points.

    syndromic train      annotated corpus -> model bundle per syndrome
    syndromic eval       10-fold cross-validation report
    syndromic kappa      annotator agreement and consensus counts
    syndromic rank-terms top terms by mutual information
    syndromic replay     message file -> count store, hour by hour
    syndromic serve      HTTP API plus the hourly scheduler
    syndromic export     per-series CSV dump of the count store
"""
from __future__ import annotations

import argparse
import json
import sys
from datetime import timedelta
from pathlib import Path

from . import evaluation, service
from .classifiers import parse_model_spec, train_classifier
from .config import load_config
from .evaluation import (
    best_pair_kappa,
    consensus_corpus,
    kfold_cv,
    load_annotated,
    mi_rank,
    nb_trainer,
    summarize_corpus,
    svm_trainer,
)
from .store import CountStore, hour_bucket, iter_hours
from .syndromes import SYNDROMES


def _add_corpus_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--corpus", required=True, type=Path, help="annotated JSONL corpus")
    p.add_argument(
        "--syndrome",
        choices=SYNDROMES,
        action="append",
        help="restrict to one syndrome (repeatable); default: all present",
    )


def _syndromes_present(msgs, requested):
    present = [s for s in SYNDROMES if any(m.syndrome == s for m in msgs)]
    if requested:
        missing = [s for s in requested if s not in present]
        if missing:
            raise SystemExit(f"no messages annotated for: {', '.join(missing)}")
        return [s for s in SYNDROMES if s in requested]
    return present


def _consensus_for(msgs, syndrome):
    subset = [m for m in msgs if m.syndrome == syndrome]
    return consensus_corpus(subset)


def cmd_train(args) -> int:
    msgs = load_annotated(args.corpus)
    for syndrome in _syndromes_present(msgs, args.syndrome):
        corpus, discarded = _consensus_for(msgs, syndrome)
        spec = parse_model_spec(args.model)
        clf = train_classifier(corpus, syndrome, spec)
        vocab_path, model_path = clf.save(args.out_dir)
        print(
            f"{syndrome}: trained {args.model} on {len(corpus)} examples "
            f"({discarded} discarded), wrote {vocab_path.name}, {model_path.name}"
        )
    return 0


def cmd_eval(args) -> int:
    msgs = load_annotated(args.corpus)
    spec = parse_model_spec(args.model)
    if spec.kind == "nb":
        trainer = nb_trainer(alpha=args.alpha)
    else:
        trainer = svm_trainer(spec.kernel)
    rows = []
    results = {}
    for syndrome in _syndromes_present(msgs, args.syndrome):
        corpus, _ = _consensus_for(msgs, syndrome)
        report = kfold_cv(corpus, trainer, k=args.folds, seed=args.seed)
        rows.append((syndrome, args.model, report.metrics))
        results[syndrome] = {
            "model": args.model,
            "precision": report.metrics.precision,
            "recall": report.metrics.recall,
            "f1": report.metrics.f1,
            "tp": report.tp,
            "fp": report.fp,
            "fn": report.fn,
            "tn": report.tn,
            "folds": [
                {
                    "tp": f.tp,
                    "fp": f.fp,
                    "fn": f.fn,
                    "tn": f.tn,
                    "precision": f.metrics.precision,
                    "recall": f.metrics.recall,
                    "f1": f.metrics.f1,
                }
                for f in report.folds
            ],
        }
    print(evaluation.render_report_table(rows))
    if args.json:
        args.json.write_text(json.dumps(results, indent=2) + "\n", encoding="utf-8")
        print(f"wrote {args.json}")
    return 0


def cmd_kappa(args) -> int:
    msgs = load_annotated(args.corpus)
    print(f"{'syndrome':<18} {'pos':>6} {'neg':>6} {'p/n':>6} {'kappa':>6}")
    for syndrome in _syndromes_present(msgs, args.syndrome):
        summary = summarize_corpus(msgs, syndrome)
        print(
            f"{syndrome:<18} {summary.positives:>6} {summary.negatives:>6} "
            f"{summary.ratio:>6.2f} {summary.kappa:>6.2f}"
        )
    return 0


def cmd_rank_terms(args) -> int:
    msgs = load_annotated(args.corpus)
    for syndrome in _syndromes_present(msgs, args.syndrome):
        corpus, _ = _consensus_for(msgs, syndrome)
        ranked = mi_rank(corpus, top_n=args.top, method=args.method)
        terms = ", ".join(t for t, _ in ranked)
        print(f"{syndrome}: {terms}")
    return 0


def cmd_replay(args) -> int:
    from .sources import ReplaySource

    cfg = load_config(args.config)
    if args.data_dir:
        cfg.data_dir = args.data_dir
    runtime = service.build_runtime(cfg)
    src = ReplaySource.from_file(args.messages)
    span = src.span()
    if span is None:
        print("message file is empty")
        return 1
    start = hour_bucket(span[0])
    end = hour_bucket(span[1]) + timedelta(hours=1)
    total = 0
    for hour in iter_hours(start, end):
        report = service.ingest_tick(
            hour + timedelta(hours=1), src, runtime.pipeline(), runtime.registry, runtime.store
        )
        total += report.accepted
        if not report.skipped:
            print(
                f"{hour.isoformat()}: processed {report.processed}, "
                f"accepted {report.accepted}"
            )
    print(f"replay done: {len(src)} messages, {total} accepted")
    runtime.store.close()
    return 0


def cmd_serve(args) -> int:
    cfg = load_config(args.config)
    if args.port:
        cfg.port = args.port
    service.serve(cfg)
    return 0


def cmd_export(args) -> int:
    store = CountStore(args.data_dir)
    written = store.export_csv(args.out_dir)
    store.close()
    for p in written:
        print(p)
    print(f"exported {len(written)} series")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="syndromic", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train per-syndrome classifier bundles")
    _add_corpus_args(p)
    p.add_argument("--model", default="nb", help='"nb", "svm:polynomial:2" or "svm:rbf"')
    p.add_argument("--out-dir", type=Path, default=Path("./models"))
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="stratified k-fold cross-validation")
    _add_corpus_args(p)
    p.add_argument("--model", default="nb")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", type=Path, help="also write a machine-readable report")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("kappa", help="annotator agreement summary")
    _add_corpus_args(p)
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("rank-terms", help="top terms by mutual information")
    _add_corpus_args(p)
    p.add_argument("--top", type=int, default=7)
    p.add_argument("--method", choices=evaluation.RANK_METHODS, default="mi")
    p.set_defaults(func=cmd_rank_terms)

    p = sub.add_parser("replay", help="ingest a message file hour by hour")
    p.add_argument("--messages", required=True, type=Path)
    p.add_argument("--config", type=Path, help="INI config file")
    p.add_argument("--data-dir", type=Path, help="override the store directory")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("serve", help="run the HTTP API and scheduler")
    p.add_argument("--config", type=Path, help="INI config file")
    p.add_argument("--port", type=int, help="override the configured port")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("export", help="dump per-series CSVs")
    p.add_argument("--data-dir", required=True, type=Path)
    p.add_argument("--out-dir", required=True, type=Path)
    p.set_defaults(func=cmd_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
