"""Generator tests: seeding, determinism, rule policy, random baseline."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cgeckit.core import ConfigError, apply_edits, pair_to_json
from cgeckit.generator import (
    AugmentConfig,
    GenConfig,
    augment_corpus,
    build_word_pool,
    derive_seed,
    generate_corpus,
    generate_pair,
    random_augment,
)
from cgeckit.resources import load_resources
from cgeckit.rules import RULE_REGISTRY
from cgeckit.tagging import _shipped, identify_roles, segment_and_tag

RES = load_resources()


def fixture_sentences():
    with open(_shipped("fixtures/correct_sentences.txt"), encoding="utf-8") as fh:
        return [line.strip() for line in fh if line.strip()]


def tagged(text):
    sent = segment_and_tag(text)
    return sent, identify_roles(sent)


# --- configuration -------------------------------------------------------


def test_genconfig_defaults_enable_every_rule():
    config = GenConfig()
    assert config.enabled_rules == frozenset(RULE_REGISTRY)
    assert config.per_sentence == 1
    assert config.combine_max == 1
    assert config.rule_weights == {}


@pytest.mark.parametrize(
    "kwargs",
    [
        {"enabled_rules": frozenset({"NoSuchRule"})},
        {"enabled_rules": frozenset()},
        {"per_sentence": 0},
        {"combine_max": 0},
        {"rule_weights": {"NoSuchRule": 1.0}},
        {"rule_weights": {"MixedPatterns": -0.5}},
        {"seed": -1},
        {"seed": 2**64},
    ],
)
def test_genconfig_rejects_bad_values(kwargs):
    with pytest.raises(ConfigError):
        GenConfig(**kwargs)


@pytest.mark.parametrize(
    "kwargs",
    [
        {},  # default insert/replace > 0 but pool empty
        {"word_pool": ("x",), "p_keep": 0.5, "p_insert": 0.5, "p_replace": 0.5, "p_delete": 0.5},
        {"word_pool": ("x",), "p_keep": -0.1, "p_insert": 0.5, "p_replace": 0.3, "p_delete": 0.3},
        {"word_pool": ("x",), "seed": -3},
    ],
)
def test_augmentconfig_rejects_bad_values(kwargs):
    with pytest.raises(ConfigError):
        AugmentConfig(**kwargs)


def test_augmentconfig_allows_empty_pool_when_pool_unused():
    config = AugmentConfig(p_keep=0.8, p_insert=0.0, p_replace=0.0, p_delete=0.2)
    assert config.word_pool == ()


def test_derive_seed_is_stable_and_index_sensitive():
    assert derive_seed(7, 3, 0) == derive_seed(7, 3, 0)
    assert derive_seed(7, 3, 0) != derive_seed(7, 4, 0)
    assert derive_seed(7, 3, 0) != derive_seed(7, 3, 1)
    assert derive_seed(7, 3, 0) != derive_seed(8, 3, 0)
    assert 0 <= derive_seed(7, 3, 0) < 2**64


# --- generate_pair -------------------------------------------------------


def test_generate_pair_round_trips_and_labels():
    sent, roles = tagged("他取得了优异的成绩")
    config = GenConfig(seed=11, enabled_rules=frozenset({"ModifierHeadWord"}))
    pair = generate_pair(sent, roles, RES, config, 4, 2)
    assert pair is not None
    assert pair.id == "pair-000004-02"
    assert pair.seed == derive_seed(11, 4, 2)
    assert pair.rule_id == "ModifierHeadWord"
    assert [e.fine for e in pair.error_types] == ["ModifierHeadWord"]
    assert pair.correct == "他取得了优异的成绩"
    assert pair.incorrect != pair.correct
    assert apply_edits(pair.incorrect, pair.edits) == pair.correct


def test_generate_pair_is_deterministic():
    sent, roles = tagged("我非常喜欢苹果")
    config = GenConfig(seed=3)
    a = generate_pair(sent, roles, RES, config, 0)
    b = generate_pair(sent, roles, RES, config, 0)
    assert a == b


def test_generate_pair_returns_none_when_nothing_matches():
    sent, roles = tagged("xyz")
    assert generate_pair(sent, roles, RES, GenConfig(), 0) is None
    empty, empty_roles = tagged("")
    assert generate_pair(empty, empty_roles, RES, GenConfig(), 0) is None


def test_generate_pair_honours_enabled_rule_filter():
    sent, roles = tagged("我非常喜欢苹果")
    config = GenConfig(enabled_rules=frozenset({"MultiWords"}))
    for seed in range(20):
        pair = generate_pair(sent, roles, RES, GenConfig(seed=seed, enabled_rules=config.enabled_rules), 0)
        assert pair is not None and pair.rule_id == "MultiWords"


def test_zero_weight_disables_a_rule():
    sent, roles = tagged("我非常喜欢苹果")
    enabled = frozenset({"MultiWords", "MixedPatterns"})
    weights = {"MixedPatterns": 0.0}
    for seed in range(20):
        pair = generate_pair(
            sent, roles, RES, GenConfig(seed=seed, enabled_rules=enabled, rule_weights=weights), 0
        )
        assert pair is not None and pair.rule_id == "MultiWords"


def test_combine_max_two_stacks_rules_and_round_trips():
    # Both rules stay applicable regardless of which fires first.
    sent, roles = tagged("我非常喜欢苹果")
    enabled = frozenset({"MultiWords", "MixedSentences"})
    seen_orders = set()
    for seed in range(12):
        config = GenConfig(seed=seed, enabled_rules=enabled, combine_max=2)
        pair = generate_pair(sent, roles, RES, config, 0)
        assert pair is not None
        parts = pair.rule_id.split("+")
        assert sorted(parts) == ["MixedSentences", "MultiWords"]
        assert [e.fine for e in pair.error_types] == parts
        assert apply_edits(pair.incorrect, pair.edits) == pair.correct
        seen_orders.add(pair.rule_id)
    assert len(seen_orders) == 2  # both orders occur across seeds


# --- generate_corpus -----------------------------------------------------


def test_generate_corpus_empty_input_gives_zero_report():
    pairs, report = generate_corpus([], GenConfig(), RES)
    assert pairs == []
    assert report.to_dict() == {
        "sentences_read": 0,
        "pairs_emitted": 0,
        "skipped": 0,
        "rule_fires": {},
    }


def test_generate_corpus_preserves_order_and_counts():
    corpus = fixture_sentences()
    config = GenConfig(seed=5, per_sentence=2)
    pairs, report = generate_corpus(corpus, config, RES)
    indices = [int(p.id.split("-")[1]) for p in pairs]
    assert indices == sorted(indices)
    assert report.sentences_read == len(corpus)
    assert report.pairs_emitted == len(pairs)
    assert report.skipped == len(corpus) * 2 - len(pairs)
    assert sum(report.rule_fires.values()) == sum(len(p.rule_id.split("+")) for p in pairs)
    assert len(pairs) > 0
    for pair in pairs:
        assert apply_edits(pair.incorrect, pair.edits) == pair.correct


def test_generate_corpus_per_sentence_ids_are_distinct_attempts():
    config = GenConfig(seed=1, per_sentence=3, enabled_rules=frozenset({"MultiWords"}))
    pairs, _ = generate_corpus(["我非常喜欢苹果"], config, RES)
    assert [p.id for p in pairs] == ["pair-000000-00", "pair-000000-01", "pair-000000-02"]
    assert len({p.seed for p in pairs}) == 3


def test_generate_corpus_byte_identical_across_runs_and_workers():
    corpus = fixture_sentences()
    config = GenConfig(seed=42, per_sentence=2)
    first, report_a = generate_corpus(corpus, config, RES, workers=1)
    second, report_b = generate_corpus(corpus, config, RES, workers=1)
    forked, report_c = generate_corpus(corpus, config, RES, workers=2)
    render = lambda pairs: "".join(pair_to_json(p) + "\n" for p in pairs)
    assert render(first) == render(second) == render(forked)
    assert report_a.to_json() == report_b.to_json() == report_c.to_json()


def test_generate_corpus_pretagged_matches_builtin_tagging():
    raw = ["我非常喜欢苹果"]
    pretagged = ["我/PRON 非常/ADV 喜欢/VERB 苹果/NOUN"]
    config = GenConfig(seed=9)
    a, _ = generate_corpus(raw, config, RES)
    b, _ = generate_corpus(pretagged, config, RES, pretagged=True)
    assert a == b


def test_uniform_selection_among_applicable_rules():
    # Equal weights: whichever rules can fire on a sentence should be hit
    # uniformly. Empirical shares over many seeds, +/-3 points absolute.
    sent, roles = tagged("我非常喜欢苹果")
    counts = {}
    trials = 4000
    for seed in range(trials):
        pair = generate_pair(sent, roles, RES, GenConfig(seed=seed), 0)
        if pair is not None:
            counts[pair.rule_id] = counts.get(pair.rule_id, 0) + 1
    fired = sum(counts.values())
    assert len(counts) >= 3
    expected = 1 / len(counts)
    for rule, count in counts.items():
        assert abs(count / fired - expected) < 0.03, (rule, count / fired, expected)


# --- random augmentation -------------------------------------------------


def test_random_augment_all_keep_is_identity():
    sent, _ = tagged("他喜欢苹果")
    config = AugmentConfig(p_keep=1.0, p_insert=0.0, p_replace=0.0, p_delete=0.0)
    pair = random_augment(sent, config, 0)
    assert pair.incorrect == pair.correct == "他喜欢苹果"
    assert pair.edits == ()
    assert pair.error_types == ()
    assert pair.rule_id == "random-augment"


def test_random_augment_delete_only_empties_single_word():
    sent, _ = tagged("苹果")
    config = AugmentConfig(p_keep=0.0, p_insert=0.0, p_replace=0.0, p_delete=1.0)
    pair = random_augment(sent, config, 5)
    assert pair.incorrect == ""
    assert pair.correct == "苹果"
    assert [(e.start, e.end, e.replacement) for e in pair.edits] == [(0, 0, "苹果")]
    assert pair.id == "aug-000005"
    assert pair.seed == derive_seed(0, 5)


def test_random_augment_is_deterministic():
    sent, _ = tagged("学校采取措施防止事故发生")
    config = AugmentConfig(word_pool=("的", "了", "很"), seed=77)
    assert random_augment(sent, config, 3) == random_augment(sent, config, 3)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32), index=st.integers(min_value=0, max_value=999))
def test_random_augment_edits_always_restore_correct(seed, index):
    sent, _ = tagged("学生对这个问题很感兴趣")
    config = AugmentConfig(word_pool=("水果", "了"), seed=seed)
    pair = random_augment(sent, config, index)
    assert apply_edits(pair.incorrect, pair.edits) == pair.correct


def test_augment_corpus_reports_op_frequencies_within_one_percent():
    # 500 copies of a 200-word sentence = 100,000 single-char words.
    sent = segment_and_tag("字" * 200)
    corpus = [sent] * 500
    config = AugmentConfig(word_pool=("的", "我", "很"), seed=12345)
    pairs, report = augment_corpus(corpus, config)
    assert report.sentences_read == 500
    assert report.words_seen == 100_000
    assert sum(report.op_counts.values()) == report.words_seen
    for op, expected in [("keep", 0.70), ("insert", 0.10), ("replace", 0.10), ("delete", 0.10)]:
        assert abs(report.op_counts[op] / report.words_seen - expected) < 0.01, op
    assert len(pairs) == 500
    assert all(p.rule_id == "random-augment" and p.error_types == () for p in pairs)


def test_build_word_pool_is_sorted_unique_surfaces():
    sentences = [segment_and_tag("他喜欢苹果"), segment_and_tag("苹果很好")]
    pool = build_word_pool(sentences)
    assert pool == tuple(sorted(set(pool)))
    assert "苹果" in pool and pool.count("苹果") == 1
