"""
Comparing models with stratified cross-validation
=================================================

How do the model families stack up per syndrome? This script runs
stratified 10-fold cross-validation for naive Bayes and three SVM
kernels on a noisy synthetic corpus and prints one P/R/F1 table.

Label noise is injected on purpose. The synthetic templates are easy
enough that every model would score 100 otherwise, and a table of
identical rows demonstrates nothing.
"""
import numpy as np

from syndromic.evaluation import kfold_cv, nb_trainer, render_report_table, svm_trainer
from syndromic.sources import training_corpus
from syndromic.svm import KernelConfig
from syndromic.syndromes import SYNDROMES

rng = np.random.default_rng(7)
corpora = training_corpus(seed=7, per_class=60)
for syndrome in SYNDROMES:
    # Flip ~8% of labels to simulate disagreeing annotators.
    corpora[syndrome] = [
        (text, (not lab) if rng.random() < 0.08 else lab)
        for text, lab in corpora[syndrome]
    ]

trainers = [
    ("nb", nb_trainer()),
    ("svm poly-1", svm_trainer(KernelConfig(kind="polynomial", degree=1))),
    ("svm poly-2", svm_trainer(KernelConfig(kind="polynomial", degree=2))),
    ("svm rbf", svm_trainer(KernelConfig(kind="rbf"))),
]

# Folds preserve the class ratio; each fold's vocabulary comes from its
# own training split, so the held-out fold may contain unseen tokens,
# exactly as fresh traffic would. Headline metrics are micro-averaged.
rows = []
for syndrome in SYNDROMES:
    for name, trainer in trainers:
        report = kfold_cv(corpora[syndrome], trainer, k=10, seed=1)
        rows.append((syndrome, name, report.metrics))

print(render_report_table(rows))

best = max(rows, key=lambda r: r[2].f1)
print(f"\nbest cell: {best[0]} / {best[1]} at F1 = {best[2].f1:.1f}")
print("with 8% label noise the ceiling sits near 92, not 100:")
print("the flipped examples are unlearnable by construction.")
