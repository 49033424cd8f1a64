"""Character n-gram model and perplexity-filter tests."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cgeckit.core import ConfigError, ParseError
from cgeckit.lm import (
    BOUNDARY,
    UNK,
    LMConfig,
    filter_percentile,
    load_lm,
    perplexity,
    save_lm,
    train_lm,
)

B = BOUNDARY


def test_config_validation():
    assert LMConfig().n == 3
    assert LMConfig().alpha == 1.0
    with pytest.raises(ConfigError):
        LMConfig(n=0)
    with pytest.raises(ConfigError):
        LMConfig(alpha=0.0)
    with pytest.raises(ConfigError):
        LMConfig(alpha=-1.0)


def test_train_bigram_hand_counts():
    model = train_lm(["ab"], LMConfig(n=2, alpha=1.0))
    assert model.ngrams == {(B, "a"): 1, ("a", "b"): 1, ("b", B): 1}
    assert model.vocab_size == 4  # a, b, UNK, boundary
    assert model.contexts == {(B,): 1, ("a",): 1, ("b",): 1}


def test_train_empty_sentence_only_boundary():
    model = train_lm([""], LMConfig(n=2))
    assert model.ngrams == {(B, B): 1}


def test_train_duplicated_corpus_doubles_counts():
    one = train_lm(["ab"], LMConfig(n=2))
    two = train_lm(["ab", "ab"], LMConfig(n=2))
    assert two.ngrams == {gram: 2 * c for gram, c in one.ngrams.items()}


def test_train_empty_corpus_rejected():
    with pytest.raises(ConfigError):
        train_lm([], LMConfig())


def test_perplexity_hand_computed_bigram():
    # trained on "aaaa": counts (B,a)=1, (a,a)=3, (a,B)=1; V=3 (a, UNK, boundary)
    model = train_lm(["aaaa"], LMConfig(n=2, alpha=1.0))
    assert model.vocab_size == 3
    probs = [
        Fraction(1 + 1, 1 + 3),  # (B, a)
        Fraction(3 + 1, 4 + 3),  # (a, a) x3
        Fraction(3 + 1, 4 + 3),
        Fraction(3 + 1, 4 + 3),
        Fraction(1 + 1, 4 + 3),  # (a, B)
    ]
    expected = math.exp(-sum(math.log(p) for p in probs) / 5)
    assert perplexity(model, "aaaa") == pytest.approx(expected, rel=1e-12)


def test_unseen_characters_raise_perplexity():
    model = train_lm(["aaaa"], LMConfig(n=2))
    assert perplexity(model, "zzzz") > perplexity(model, "aaaa")


def test_perplexity_is_pure():
    model = train_lm(["他喜欢苹果", "我非常喜欢苹果"], LMConfig(n=3))
    assert perplexity(model, "他喜欢苹果") == perplexity(model, "他喜欢苹果")


@pytest.mark.parametrize("n", [1, 2, 3])
def test_probabilities_normalize_over_full_vocab(n):
    corpus = ["他喜欢苹果", "我们不赞成这种做法", "abc", ""]
    model = train_lm(corpus, LMConfig(n=n))
    symbols = sorted(model.chars) + [UNK, BOUNDARY]
    for context in model.contexts:
        total = sum(model.probability(context + (s,)) for s in symbols)
        assert abs(total - 1.0) <= 1e-9, (context, total)


def test_filter_keep_counts():
    model = train_lm(["aaaa"], LMConfig(n=2))
    corpus = [f"a{'b' * i}" for i in range(10)]
    assert len(filter_percentile(corpus, model, 90)) == 9
    assert filter_percentile(corpus, model, 100) == corpus
    assert filter_percentile([], model, 90) == []
    with pytest.raises(ConfigError):
        filter_percentile(corpus, model, 0)
    with pytest.raises(ConfigError):
        filter_percentile(corpus, model, 101)


def test_filter_keeps_lowest_ppl_in_original_order():
    model = train_lm(["aaaa"], LMConfig(n=2))
    corpus = ["abbb", "aaaa", "aabb", "bbbb", "aaab"]
    ppls = [perplexity(model, s) for s in corpus]
    assert len(set(ppls)) == 5  # all distinct, sort oracle is unambiguous
    want = sorted(sorted(range(5), key=lambda i: ppls[i])[:3])
    assert filter_percentile(corpus, model, 60) == [corpus[i] for i in want]


def test_filter_ties_resolved_earlier_first():
    model = train_lm(["aaaa"], LMConfig(n=2))
    corpus = ["aa", "aa", "aa", "aa"]
    assert filter_percentile(corpus, model, 50) == ["aa", "aa"]
    # and the kept ones are the earliest indices
    kept = filter_percentile(list(enumerate(corpus)) and corpus, model, 25)
    assert kept == ["aa"]


@given(
    st.lists(st.text(alphabet="ab他果", max_size=6), min_size=1, max_size=20),
    st.integers(min_value=1, max_value=100),
)
def test_filter_output_is_subsequence(corpus, keep):
    model = train_lm(["ab他果ab"], LMConfig(n=2))
    kept = filter_percentile(corpus, model, keep)
    assert len(kept) == math.ceil(Fraction(keep) * len(corpus) / 100)
    it = iter(corpus)
    assert all(any(s == c for c in it) for s in kept)


def test_save_load_round_trip(tmp_path):
    model = train_lm(["他喜欢苹果", "我非常喜欢苹果"], LMConfig(n=3, alpha=0.5))
    path = str(tmp_path / "model.json")
    save_lm(model, path)
    loaded = load_lm(path)
    for query in ["他喜欢苹果", "你呢", ""]:
        assert perplexity(loaded, query) == perplexity(model, query)


def test_load_rejects_bad_documents(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("not json", encoding="utf-8")
    with pytest.raises(ParseError):
        load_lm(str(bad))
    bad.write_text('{"format": "something-else", "version": 1}', encoding="utf-8")
    with pytest.raises(ParseError):
        load_lm(str(bad))
    bad.write_text(
        '{"format": "cgeckit-ngram", "version": 99, "n": 2, "alpha": 1.0, "chars": [], "ngrams": []}',
        encoding="utf-8",
    )
    with pytest.raises(ParseError):
        load_lm(str(bad))
    with pytest.raises(ConfigError):
        load_lm(str(tmp_path / "missing.json"))


def test_unigram_model_works():
    model = train_lm(["ab"], LMConfig(n=1))
    assert model.contexts == {(): 3}
    assert perplexity(model, "ab") > 0
