"""
Training the two classifier families
====================================

Each syndrome gets its own binary classifier: naive Bayes with add-one
smoothing, or a kernel SVM trained by sequential minimal optimization.
Both read the binary bag-of-words vectors from demo 01. This script
trains one of each for the rash syndrome on the built-in synthetic
corpus and pokes at what they learned.
"""
from syndromic.classifiers import parse_model_spec, train_classifier
from syndromic.evaluation import mi_rank
from syndromic.sources import training_corpus

corpus = training_corpus(seed=42)["rash"]
print(f"rash corpus: {len(corpus)} examples, "
      f"{sum(1 for _, lab in corpus if lab)} positive")

# Model assignments are compact strings, the same syntax the config file
# uses: "nb", "svm" (linear), "svm:polynomial:2", "svm:rbf".
nb = train_classifier(corpus, "rash", parse_model_spec("nb"))
svm2 = train_classifier(corpus, "rash", parse_model_spec("svm:polynomial:2"))

probes = [
    "woke up with an itchy rash all over my arms",
    "hives spreading up my back, going to the clinic",
    "the new pizza place gave me hives (kidding, it was great)",
    "great game last night, what a finish",
    "match tonight, anyone watching?",
]
print(f"\n{'message':<55} {'nb':>5} {'svm2':>5}")
for text in probes:
    print(f"{text:<55} {str(nb.predict_text(text)):>5} "
          f"{str(svm2.predict_text(text)):>5}")

# Which terms carry the signal? Rank by mutual information between term
# presence and the label over the training corpus.
print("\nmost informative terms (mutual information, bits):")
for term, score in mi_rank(corpus, top_n=7):
    print(f"  {term:<12} {score:.4f}")

# Models round-trip through plain text files, one vocabulary and one
# parameter file per syndrome.
import tempfile
from syndromic.classifiers import load_classifier

with tempfile.TemporaryDirectory() as tmp:
    vocab_path, model_path = svm2.save(tmp)
    print(f"\nsaved {vocab_path.name} and {model_path.name}")
    back = load_classifier(tmp, "rash")
    agree = all(back.predict_text(t) == svm2.predict_text(t) for t in probes)
    print(f"reloaded model agrees on all probes: {agree}")
