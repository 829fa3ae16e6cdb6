import pytest
from hypothesis import given, strategies as st

from syndromic.text import BinaryVector, Vocabulary, build_vocabulary, tokenize, vectorize


class TestTokenize:
    def test_punctuation_and_case(self):
        assert tokenize("Woke up with a stomach ache!") == [
            "woke", "up", "with", "a", "stomach", "ache",
        ]

    def test_ellipsis_and_commas(self):
        assert tokenize("Fever, back pain, headache... ugh!") == [
            "fever", "back", "pain", "headache", "ugh",
        ]

    def test_empty_input(self):
        assert tokenize("") == []
        assert tokenize("   \t\n") == []

    def test_hashtag_and_mention_markers_stripped(self):
        assert tokenize("#fever is rough, thanks @nurse") == ["fever", "is", "rough", "thanks", "nurse"]

    def test_apostrophe_kept_inside_word(self):
        assert tokenize("don't worry") == ["don't", "worry"]

    def test_edge_apostrophes_trimmed(self):
        assert tokenize("'tis the season, y'all'") == ["tis", "the", "season", "y'all"]

    def test_underscore_splits(self):
        assert tokenize("snake_case_word") == ["snake", "case", "word"]

    def test_digits_kept(self):
        assert tokenize("sick for 3 days") == ["sick", "for", "3", "days"]

    def test_pure_punctuation(self):
        assert tokenize("!!! ... ???") == []

    @given(st.text(max_size=200))
    def test_idempotent_on_joined_output(self, text):
        once = tokenize(text)
        assert tokenize(" ".join(once)) == once

    @given(st.text(max_size=200))
    def test_tokens_are_lowercase_and_whitespace_free(self, text):
        for tok in tokenize(text):
            assert tok
            assert tok == tok.lower()
            assert not any(c.isspace() for c in tok)


class TestVocabulary:
    def test_first_appearance_order(self):
        vocab = build_vocabulary([["a", "b"], ["b", "c"]])
        assert vocab.terms == ("a", "b", "c")

    def test_singleton(self):
        vocab = build_vocabulary([["x"]])
        assert vocab.terms == ("x",)
        assert len(vocab) == 1

    def test_deduplication(self):
        assert build_vocabulary([["a", "a", "a"]]).terms == ("a",)

    def test_lookup_roundtrip(self):
        vocab = build_vocabulary([["alpha", "beta", "gamma"]])
        for i, t in enumerate(vocab.terms):
            assert vocab.index(t) == i
        assert vocab.get("nope") is None
        assert "beta" in vocab

    def test_empty_corpus_rejected(self):
        with pytest.raises(ValueError):
            build_vocabulary([])

    def test_duplicate_terms_rejected(self):
        with pytest.raises(ValueError):
            Vocabulary(["a", "a"])

    def test_invalid_terms_rejected(self):
        with pytest.raises(ValueError):
            Vocabulary([""])
        with pytest.raises(ValueError):
            Vocabulary(["has space"])

    def test_save_load_roundtrip(self, tmp_path):
        vocab = build_vocabulary([tokenize("Fever and chills since Tuesday"), ["zzz"]])
        path = tmp_path / "v.vocab"
        vocab.save(path)
        assert Vocabulary.load(path) == vocab

    def test_unicode_terms_survive_roundtrip(self, tmp_path):
        vocab = Vocabulary(["café", "naïve", "fièvre"])
        path = tmp_path / "v.vocab"
        vocab.save(path)
        assert Vocabulary.load(path).terms == vocab.terms


class TestVectorize:
    def test_basic_mapping(self):
        vocab = Vocabulary(["a", "b", "c"])
        assert vectorize(["a", "c"], vocab).active == {0, 2}

    def test_fully_out_of_vocabulary(self):
        vocab = Vocabulary(["a", "b", "c"])
        assert vectorize(["zzz"], vocab).active == frozenset()

    def test_repeats_collapse(self):
        vocab = Vocabulary(["a"])
        assert vectorize(["a", "a"], vocab).active == {0}

    def test_dimension_matches_vocab(self):
        vocab = Vocabulary(["a", "b"])
        assert vectorize([], vocab).dimension == 2

    @given(st.lists(st.sampled_from(["a", "b", "c", "x", "y"]), max_size=20))
    def test_active_indices_in_range_and_duplicate_invariant(self, tokens):
        vocab = Vocabulary(["a", "b", "c"])
        v = vectorize(tokens, vocab)
        assert all(0 <= i < len(vocab) for i in v.active)
        assert vectorize(tokens + tokens, vocab) == v


class TestBinaryVector:
    def test_out_of_range_index_rejected(self):
        with pytest.raises(ValueError):
            BinaryVector(dimension=2, active=frozenset({5}))
        with pytest.raises(ValueError):
            BinaryVector(dimension=2, active=frozenset({-1}))

    def test_empty_vector_ok(self):
        v = BinaryVector(dimension=0, active=frozenset())
        assert v.active == frozenset()
