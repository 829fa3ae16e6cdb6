"""
Bag-of-words features for short messages
========================================

Every classifier in this package consumes the same representation: a
message is lowercased, split into word tokens, and mapped onto a binary
vector that records which vocabulary terms are present. Counts are
deliberately ignored; in a message of a dozen words a repeated term
carries almost no extra signal.
"""
import numpy as np

from syndromic.text import build_vocabulary, tokenize, vectorize

messages = [
    "Running a fever and a splitting headache since last night",
    "worst COUGH ever... staying home today",
    "new coffee place on the corner is actually decent",
    "fever, chills, and now a rash on both arms?!",
]

# Tokenization lowercases and strips punctuation. URLs and @handles do
# not survive either, which already removes most of the noise.
print("tokens of message 0:")
print(" ", tokenize(messages[0]))

# The vocabulary is the sorted union of all tokens seen in training.
vocab = build_vocabulary([tokenize(m) for m in messages])
print(f"\nvocabulary ({len(vocab)} terms):")
print(" ", " ".join(vocab.terms))

# Each message becomes the set of vocabulary indices it activates.
vectors = [vectorize(tokenize(m), vocab) for m in messages]
for m, v in zip(messages, vectors):
    print(f"\n  {m!r}")
    print(f"  active terms: {sorted(vocab.terms[i] for i in v.active)}")

# Stacked into a dense 0/1 matrix the corpus looks like this. Rows are
# messages, columns follow vocab.terms.
X = np.zeros((len(vectors), len(vocab)), dtype=int)
for row, v in enumerate(vectors):
    X[row, list(v.active)] = 1
print("\ndense matrix (messages x terms):")
print(X)
print("document frequency per term:", X.sum(axis=0))

# Tokens outside the vocabulary are dropped at vectorize time, so a
# model trained on this corpus can score arbitrary new text.
unseen = "quarantine selfie, feeling feverish and dizzy"
v = vectorize(tokenize(unseen), vocab)
print(f"\nunseen message {unseen!r}")
print("  known tokens kept:", sorted(vocab.terms[i] for i in v.active))
