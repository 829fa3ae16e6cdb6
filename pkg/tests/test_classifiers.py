import pytest

from syndromic.classifiers import (
    DEFAULT_ASSIGNMENT,
    ClassifierSpec,
    load_all,
    load_classifier,
    parse_model_spec,
    train_classifier,
)
from syndromic.svm import KernelConfig
from syndromic.syndromes import SYNDROMES


CORPUS = [
    ("itchy rash on my arm", True),
    ("rash spreading everywhere", True),
    ("red rash again", True),
    ("spotty rash today", True),
    ("great game last night", False),
    ("coffee with friends", False),
    ("traffic on the bridge", False),
    ("new song on repeat", False),
]


class TestParseModelSpec:
    def test_nb(self):
        spec = parse_model_spec("nb")
        assert spec.kind == "nb"

    def test_bare_svm_defaults_linear(self):
        spec = parse_model_spec("svm")
        assert spec.kind == "svm"
        assert spec.kernel == KernelConfig(kind="polynomial", degree=1)

    def test_polynomial_degree(self):
        spec = parse_model_spec("svm:polynomial:2")
        assert spec.kernel.kind == "polynomial"
        assert spec.kernel.degree == 2

    def test_rbf(self):
        assert parse_model_spec("svm:rbf").kernel.kind == "rbf"

    def test_case_and_whitespace(self):
        assert parse_model_spec("  SVM:Polynomial:3 ").kernel.degree == 3

    def test_bad_specs(self):
        for bad in ("nb:2", "svm:rbf:3", "svm:sigmoid", "forest"):
            with pytest.raises(ValueError):
                parse_model_spec(bad)

    def test_default_assignment_parses(self):
        for syndrome in SYNDROMES:
            parse_model_spec(DEFAULT_ASSIGNMENT[syndrome])


class TestTrainPredict:
    def test_nb_classifies_training_texts(self):
        clf = train_classifier(CORPUS, "rash", ClassifierSpec(kind="nb"))
        assert clf.predict_text("a rash on my arm")
        assert not clf.predict_text("great game with friends")

    def test_svm_classifies_training_texts(self):
        clf = train_classifier(CORPUS, "rash", parse_model_spec("svm:polynomial:1"))
        assert clf.predict_text("itchy rash today")
        assert not clf.predict_text("traffic again")

    def test_empty_corpus_rejected(self):
        with pytest.raises(ValueError):
            train_classifier([], "rash", ClassifierSpec(kind="nb"))

    def test_unknown_syndrome_rejected(self):
        with pytest.raises(ValueError):
            train_classifier(CORPUS, "sniffles", ClassifierSpec(kind="nb"))


class TestSaveLoad:
    def test_nb_roundtrip(self, tmp_path):
        clf = train_classifier(CORPUS, "rash", ClassifierSpec(kind="nb"))
        clf.save(tmp_path)
        again = load_classifier(tmp_path, "rash")
        assert again.kind == "nb"
        texts = ["rash everywhere", "what a match", "red itchy rash"]
        assert [again.predict_text(t) for t in texts] == [
            clf.predict_text(t) for t in texts
        ]

    def test_svm_roundtrip_dispatches_on_tag(self, tmp_path):
        clf = train_classifier(CORPUS, "rash", parse_model_spec("svm:rbf"))
        clf.save(tmp_path)
        again = load_classifier(tmp_path, "rash")
        assert again.kind == "svm"
        assert again.predict_text("rash again") == clf.predict_text("rash again")

    def test_missing_files_raise(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_classifier(tmp_path, "rash")

    def test_load_all_requires_all_six(self, tmp_path):
        train_classifier(CORPUS, "rash", ClassifierSpec(kind="nb")).save(tmp_path)
        with pytest.raises(FileNotFoundError):
            load_all(tmp_path)

    def test_load_all_happy_path(self, tmp_path):
        for s in SYNDROMES:
            train_classifier(CORPUS, s, ClassifierSpec(kind="nb")).save(tmp_path)
        bundles = load_all(tmp_path)
        assert set(bundles) == set(SYNDROMES)
