import pytest
from hypothesis import given, strategies as st

from charspace import brief as B
from charspace.errors import ValidationError


class TestDesignBrief:
    def test_empty_rejected(self):
        with pytest.raises(ValidationError):
            B.DesignBrief(text="   \n  ")

    def test_oversized_rejected(self):
        with pytest.raises(ValidationError):
            B.DesignBrief(text="x" * (B.MAX_BRIEF_CHARS + 1))

    def test_limit_length_accepted(self):
        assert B.DesignBrief(text="x" * B.MAX_BRIEF_CHARS).text


class TestTokenize:
    def test_lowercase_letter_runs(self):
        assert B.tokenize("The Car, fast!") == ["the", "car", "fast"]

    def test_hyphenated_yields_whole_and_parts(self):
        assert B.tokenize("eco-friendly") == ["eco-friendly", "eco", "friendly"]

    def test_digits_and_punctuation_split(self):
        assert B.tokenize("2030's car") == ["s", "car"]


class TestExtraction:
    def test_retired_couple_brief(self, fixture_graph, brief_a_text):
        result = B.extract_query_adjectives(
            B.DesignBrief(text=brief_a_text), fixture_graph)
        assert result.lemmas == ["economical", "spacious", "functional", "smart"]
        assert not result.no_query_words

    def test_family_brief(self, fixture_graph, brief_b_text):
        result = B.extract_query_adjectives(
            B.DesignBrief(text=brief_b_text), fixture_graph)
        assert result.lemmas == ["fun"]

    def test_order_is_first_occurrence_dedup(self, fixture_graph):
        brief = B.DesignBrief(text="smart, economical, smart and economical")
        result = B.extract_query_adjectives(brief, fixture_graph)
        assert result.lemmas == ["smart", "economical"]

    def test_stopwords_never_pass(self, fixture_graph):
        # even if a stopword had an adjective sense it must not surface
        brief = B.DesignBrief(text="a very smart car")
        result = B.extract_query_adjectives(
            brief, fixture_graph, extra_lexicon={"very", "smart"})
        assert "very" not in result.lemmas

    def test_no_adjectives_flagged(self, fixture_graph):
        brief = B.DesignBrief(text="the owner of the vehicle")
        result = B.extract_query_adjectives(brief, fixture_graph)
        assert result.lemmas == [] and result.no_query_words

    def test_extra_lexicon_admits_unknown_terms(self, fixture_graph):
        brief = B.DesignBrief(text="a zorpy car")
        result = B.extract_query_adjectives(
            brief, fixture_graph, extra_lexicon={"zorpy"})
        assert result.lemmas == ["zorpy"]

    def test_pure_given_same_inputs(self, fixture_graph, brief_a_text):
        brief = B.DesignBrief(text=brief_a_text)
        first = B.extract_query_adjectives(brief, fixture_graph)
        second = B.extract_query_adjectives(brief, fixture_graph)
        assert first == second

    @given(st.text(min_size=1, max_size=200))
    def test_never_raises_on_arbitrary_text(self, fixture_graph, text):
        if not text.strip():
            return
        result = B.extract_query_adjectives(B.DesignBrief(text=text), fixture_graph)
        assert all(lemma == lemma.lower() for lemma in result.lemmas)


class TestStopwords:
    def test_loaded_set(self):
        words = B.load_stopwords()
        assert {"the", "and", "of", "a"} <= words
        assert all(w == w.strip().lower() for w in words)
