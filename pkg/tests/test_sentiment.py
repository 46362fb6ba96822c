import math

import pytest
from hypothesis import given, strategies as st

from sentireg.corpus import Document, tokenize
from sentireg.sentiment import (
    Lexicon,
    SentimentClass,
    aggregate_by_state,
    classify,
    load_lexicon,
    score,
    to_binary,
)
from sentireg.pipeline import default_data_path


def lex(valences=None, negators=(), amplifiers=None):
    return Lexicon(
        valences=valences or {},
        negators=frozenset(negators),
        amplifiers=amplifiers or {},
    )


def stream_of(*words):
    return tokenize(" ".join(words))


def doc(state, i=0):
    return Document(id=f"d{state}{i}", state=state, text="x", text_width=1)


class TestScore:
    def test_single_match(self):
        s = score(stream_of("great"), lex({"great": 1.0}))
        assert s.value == pytest.approx(1.0)
        assert s.label is SentimentClass.POSITIVE
        assert s.matched_count == 1

    def test_negation(self):
        s = score(stream_of("not", "great"), lex({"great": 1.0}, negators={"not"}))
        assert s.value == pytest.approx(-1 / math.sqrt(2))
        assert s.label is SentimentClass.NEGATIVE

    def test_no_match_is_neutral(self):
        s = score(stream_of("plain", "words"), lex({"great": 1.0}))
        assert s.value == 0.0
        assert s.label is SentimentClass.NEUTRAL
        assert s.matched_count == 0

    def test_double_negation_cancels(self):
        s = score(stream_of("not", "not", "great"), lex({"great": 1.0}, negators={"not"}))
        assert s.value == pytest.approx(1 / math.sqrt(3))

    def test_amplifier_in_window(self):
        s = score(stream_of("very", "great"), lex({"great": 1.0}, amplifiers={"very": 1.5}))
        assert s.value == pytest.approx(1.5 / math.sqrt(2))

    def test_negation_window_is_two_tokens(self):
        lx = lex({"great": 1.0}, negators={"not"})
        in_window = score(stream_of("not", "so", "great"), lx)
        out_of_window = score(stream_of("not", "so", "so", "great"), lx)
        assert in_window.value < 0
        assert out_of_window.value > 0

    def test_sqrt_length_scaling(self):
        lx = lex({"great": 1.0})
        s = score(stream_of("great", "a", "b", "c"), lx)
        assert s.value == pytest.approx(1 / math.sqrt(4))

    def test_clamped_to_range(self):
        lx = lex({"awful": -2.0}, amplifiers={"extremely": 2.0})
        s = score(stream_of("extremely", "awful"), lx)
        assert s.value == -2.0


class TestClassify:
    def test_zero_is_neutral(self):
        assert classify(0.0) is SentimentClass.NEUTRAL

    def test_signs(self):
        assert classify(0.5) is SentimentClass.POSITIVE
        assert classify(-0.3) is SentimentClass.NEGATIVE

    def test_nan_rejected(self):
        with pytest.raises(ValueError):
            classify(float("nan"))


class TestToBinary:
    def test_mapping(self):
        assert to_binary(SentimentClass.POSITIVE) == 1
        assert to_binary(SentimentClass.NEUTRAL) == 0
        assert to_binary(SentimentClass.NEGATIVE) == 0


class TestAggregate:
    def test_single_state_mix(self):
        lx = lex({"good": 1.0, "bad": -1.0})
        scored = [
            (doc("NC", 1), score(stream_of("good"), lx)),
            (doc("NC", 2), score(stream_of("bad"), lx)),
            (doc("NC", 3), score(stream_of("meh"), lx)),
        ]
        (summary,) = aggregate_by_state(scored)
        assert summary.state == "NC"
        assert summary.mean_score == pytest.approx(0.0)
        assert summary.share_positive == pytest.approx(1 / 3)
        assert summary.share_negative == pytest.approx(1 / 3)
        assert summary.share_neutral == pytest.approx(1 / 3)

    def test_single_doc(self):
        lx = lex({"best": 2.0})
        (summary,) = aggregate_by_state([(doc("WY"), score(stream_of("best"), lx))])
        assert summary.mean_score == pytest.approx(2.0)
        assert summary.share_positive == 1.0

    def test_interleaved_states_match_groupby_oracle(self):
        lx = lex({"good": 1.0, "bad": -1.0})
        words = ["good", "bad", "good", "meh", "bad", "good"]
        states = ["NC", "CA", "CA", "NC", "NC", "CA"]
        scored = [
            (doc(st_, i), score(stream_of(w), lx))
            for i, (st_, w) in enumerate(zip(states, words))
        ]
        summaries = {s.state: s for s in aggregate_by_state(scored)}
        # independent brute-force group-by
        for state in ("NC", "CA"):
            values = [s.value for d, s in scored if d.state == state]
            assert summaries[state].n_docs == len(values)
            assert summaries[state].mean_score == pytest.approx(sum(values) / len(values))
        assert list(summaries) == sorted(summaries)

    def test_empty_input(self):
        assert aggregate_by_state([]) == []


class TestLexiconValidation:
    def test_out_of_range_valence(self):
        with pytest.raises(ValueError):
            lex({"big": 3.0})

    def test_shifters_disjoint_from_valences(self):
        with pytest.raises(ValueError):
            lex({"not": -1.0}, negators={"not"})

    def test_amplifier_must_exceed_one(self):
        with pytest.raises(ValueError):
            lex({"good": 1.0}, amplifiers={"kinda": 0.5})

    def test_bundled_lexicon_loads(self):
        lx = load_lexicon(
            default_data_path("lexicon.tsv"),
            default_data_path("negators.txt"),
            default_data_path("amplifiers.tsv"),
        )
        assert len(lx.valences) >= 150
        assert "not" in lx.negators
        assert all(m > 1 for m in lx.amplifiers.values())


# -- properties -------------------------------------------------------------

vocab = ["good", "bad", "not", "very", "meh", "ok", "x"]


@given(
    st.lists(st.sampled_from(vocab), max_size=20),
    st.dictionaries(st.sampled_from(["good", "bad", "meh"]),
                    st.floats(min_value=-2, max_value=2, allow_nan=False)),
)
def test_score_always_in_range(words, valences):
    lx = lex(valences, negators={"not"}, amplifiers={"very": 2.0})
    s = score(stream_of(*words) if words else tokenize(""), lx)
    assert -2.0 <= s.value <= 2.0


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_classify_antisymmetry(v):
    flipped = {SentimentClass.POSITIVE: SentimentClass.NEGATIVE,
               SentimentClass.NEGATIVE: SentimentClass.POSITIVE,
               SentimentClass.NEUTRAL: SentimentClass.NEUTRAL}
    assert classify(-v) is flipped[classify(v)]


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_binary_iff_positive(v):
    assert to_binary(classify(v)) == (1 if v > 0 else 0)


@given(st.lists(st.tuples(st.sampled_from(["NC", "CA", "WY"]),
                          st.sampled_from(vocab)), min_size=1, max_size=30))
def test_aggregate_shares_and_counts(pairs):
    lx = lex({"good": 1.0, "bad": -1.0})
    scored = [(doc(state, i), score(stream_of(w), lx))
              for i, (state, w) in enumerate(pairs)]
    summaries = aggregate_by_state(scored)
    assert sum(s.n_docs for s in summaries) == len(pairs)
    for s in summaries:
        assert abs(s.share_positive + s.share_negative + s.share_neutral - 1.0) < 1e-12
