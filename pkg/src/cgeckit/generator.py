"""Corpus-scale pair generation: rule policy, seeding, and random baseline.

Reproducibility scheme: every sentence gets its own rng seeded by
sha256(seed, sentence_index, attempt). Workers therefore never share rng
state and the output is byte-identical for any worker count.
"""

from __future__ import annotations

import hashlib
import json
import multiprocessing
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from cgeckit.core import ConfigError, CorpusPair, ErrorType, TaggedSentence, diff_edits
from cgeckit.resources import RuleResources
from cgeckit.rules import RULE_REGISTRY, apply_fine_rule
from cgeckit.tagging import RoleSpans, identify_roles, parse_pretagged, segment_and_tag

_MAX_DRAWS = 5  # weighted rule draws per pair before giving up


@dataclass(frozen=True)
class GenConfig:
    """Generation policy: which rules, how many, how seeded."""

    seed: int = 0
    enabled_rules: frozenset[str] = frozenset(RULE_REGISTRY)
    per_sentence: int = 1
    combine_max: int = 1
    rule_weights: dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must fit in 64 unsigned bits, got {self.seed!r}")
        unknown = set(self.enabled_rules) - set(RULE_REGISTRY)
        if unknown:
            raise ConfigError(f"unknown rule ids: {sorted(unknown)}")
        if not self.enabled_rules:
            raise ConfigError("enabled_rules must not be empty")
        if self.per_sentence < 1:
            raise ConfigError(f"per_sentence must be >= 1, got {self.per_sentence}")
        if self.combine_max < 1:
            raise ConfigError(f"combine_max must be >= 1, got {self.combine_max}")
        unknown = set(self.rule_weights) - set(RULE_REGISTRY)
        if unknown:
            raise ConfigError(f"rule_weights for unknown rule ids: {sorted(unknown)}")
        if any(w < 0 for w in self.rule_weights.values()):
            raise ConfigError("rule weights must be >= 0")
        object.__setattr__(self, "enabled_rules", frozenset(self.enabled_rules))


@dataclass(frozen=True)
class AugmentConfig:
    """Per-word random corruption probabilities for the naive baseline."""

    p_keep: float = 0.70
    p_insert: float = 0.10
    p_replace: float = 0.10
    p_delete: float = 0.10
    word_pool: tuple[str, ...] = ()
    seed: int = 0

    def __post_init__(self) -> None:
        probs = (self.p_keep, self.p_insert, self.p_replace, self.p_delete)
        if any(p < 0 for p in probs):
            raise ConfigError("augment probabilities must be >= 0")
        if abs(sum(probs) - 1.0) > 1e-9:
            raise ConfigError(f"augment probabilities must sum to 1.0, got {sum(probs)!r}")
        if not self.word_pool and (self.p_insert > 0 or self.p_replace > 0):
            raise ConfigError("word_pool must be non-empty when insert/replace can fire")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must fit in 64 unsigned bits, got {self.seed!r}")
        object.__setattr__(self, "word_pool", tuple(self.word_pool))


def derive_seed(seed: int, *parts: int) -> int:
    """Stable per-(sentence, attempt) sub-seed; independent of worker layout."""
    h = hashlib.sha256()
    h.update(str(seed).encode())
    for part in parts:
        h.update(b"\x1f")
        h.update(str(part).encode())
    return int.from_bytes(h.digest()[:8], "big")


def _weighted_pop(rng: random.Random, pool: list[tuple[str, float]]) -> str:
    total = sum(w for _, w in pool)
    r = rng.random() * total
    acc = 0.0
    for index, (rule, weight) in enumerate(pool):
        acc += weight
        if r < acc or index == len(pool) - 1:
            del pool[index]
            return rule
    raise AssertionError("unreachable")


def generate_pair(
    sentence: TaggedSentence,
    roles: RoleSpans,
    resources: RuleResources,
    config: GenConfig,
    sentence_index: int,
    attempt: int = 0,
) -> CorpusPair | None:
    """Corrupt one sentence into a pair, or None if no sampled rule fires.

    Up to combine_max distinct rules are drawn by weight without
    replacement (at most five draws total); each fired rule rewrites the
    current text, which is re-segmented with the builtin tagger so the next
    rule sees valid offsets. Gold edits are the canonical character diff of
    the final text against the original, so they always restore it exactly.
    """
    if not sentence.tokens:
        return None
    pair_seed = derive_seed(config.seed, sentence_index, attempt)
    rng = random.Random(pair_seed)
    pool = [
        (rule, config.rule_weights.get(rule, RULE_REGISTRY[rule].weight))
        for rule in sorted(config.enabled_rules)
    ]
    pool = [(rule, w) for rule, w in pool if w > 0]
    fired: list[str] = []
    current, current_roles = sentence, roles
    draws = 0
    while pool and len(fired) < config.combine_max and draws < _MAX_DRAWS:
        rule = _weighted_pop(rng, pool)
        draws += 1
        outcome = apply_fine_rule(current, current_roles, resources, rng, rule)
        if outcome is None:
            continue
        fired.append(rule)
        current = segment_and_tag(outcome.incorrect)
        current_roles = identify_roles(current)
    if not fired:
        return None
    incorrect = current.text
    return CorpusPair(
        id=f"pair-{sentence_index:06d}-{attempt:02d}",
        incorrect=incorrect,
        correct=sentence.text,
        edits=diff_edits(incorrect, sentence.text),
        error_types=tuple(ErrorType.from_fine(r) for r in fired),
        rule_id="+".join(fired),
        seed=pair_seed,
    )


@dataclass
class GenerationReport:
    """Counters for one generate_corpus run."""

    sentences_read: int = 0
    pairs_emitted: int = 0
    skipped: int = 0
    rule_fires: dict[str, int] = field(default_factory=dict)

    def merge(self, other: "GenerationReport") -> None:
        self.sentences_read += other.sentences_read
        self.pairs_emitted += other.pairs_emitted
        self.skipped += other.skipped
        for rule, count in other.rule_fires.items():
            self.rule_fires[rule] = self.rule_fires.get(rule, 0) + count

    def to_dict(self) -> dict:
        return {
            "sentences_read": self.sentences_read,
            "pairs_emitted": self.pairs_emitted,
            "skipped": self.skipped,
            "rule_fires": {k: self.rule_fires[k] for k in sorted(self.rule_fires)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2) + "\n"


_WORKER_STATE: dict = {}


def _init_worker(config, resources, pretagged):
    _WORKER_STATE["config"] = config
    _WORKER_STATE["resources"] = resources
    _WORKER_STATE["pretagged"] = pretagged


def _sentence_job(args: tuple[int, str]) -> tuple[list[CorpusPair], GenerationReport]:
    index, line = args
    return _generate_for_sentence(
        index, line, _WORKER_STATE["config"], _WORKER_STATE["resources"], _WORKER_STATE["pretagged"]
    )


def _generate_for_sentence(
    index: int, line: str, config: GenConfig, resources: RuleResources, pretagged: bool
) -> tuple[list[CorpusPair], GenerationReport]:
    report = GenerationReport(sentences_read=1)
    sentence = parse_pretagged(line) if pretagged else segment_and_tag(line)
    roles = identify_roles(sentence)
    pairs = []
    for attempt in range(config.per_sentence):
        pair = generate_pair(sentence, roles, resources, config, index, attempt)
        if pair is None:
            report.skipped += 1
            continue
        pairs.append(pair)
        report.pairs_emitted += 1
        for rule in pair.rule_id.split("+"):
            report.rule_fires[rule] = report.rule_fires.get(rule, 0) + 1
    return pairs, report


def stream_generate(
    corpus: Iterable[str],
    config: GenConfig,
    resources: RuleResources,
    workers: int = 1,
    pretagged: bool = False,
) -> Iterator[tuple[list[CorpusPair], GenerationReport]]:
    """Yield (pairs, report) per input sentence, preserving input order.

    Consumes the corpus lazily so arbitrarily large files process in
    bounded memory. Output is a pure function of (corpus, config): worker
    count only changes wall-clock time, never bytes.
    """
    jobs = enumerate(corpus)
    if workers <= 1:
        for index, line in jobs:
            yield _generate_for_sentence(index, line, config, resources, pretagged)
        return
    with multiprocessing.Pool(
        workers, initializer=_init_worker, initargs=(config, resources, pretagged)
    ) as pool:
        yield from pool.imap(_sentence_job, jobs, chunksize=64)


def generate_corpus(
    corpus: Iterable[str],
    config: GenConfig,
    resources: RuleResources,
    workers: int = 1,
    pretagged: bool = False,
) -> tuple[list[CorpusPair], GenerationReport]:
    """Generate pairs for a sentence stream, preserving input order.

    With pretagged=True input lines are `surface/TAG ...` items;
    intermediate re-tagging after a rule fires still uses the builtin
    segmenter either way.
    """
    report = GenerationReport()
    pairs: list[CorpusPair] = []
    for got, sub in stream_generate(corpus, config, resources, workers, pretagged):
        pairs.extend(got)
        report.merge(sub)
    return pairs, report


# --- random-augmentation baseline ---------------------------------------

_OPS = ("keep", "insert", "replace", "delete")


def _augment_ops(
    sentence: TaggedSentence, config: AugmentConfig, rng: random.Random
) -> tuple[str, dict[str, int]]:
    counts = dict.fromkeys(_OPS, 0)
    thresholds = (
        config.p_keep,
        config.p_keep + config.p_insert,
        config.p_keep + config.p_insert + config.p_replace,
    )
    pieces: list[str] = []
    for token in sentence.tokens:
        r = rng.random()
        if r < thresholds[0]:
            op = "keep"
        elif r < thresholds[1]:
            op = "insert"
        elif r < thresholds[2]:
            op = "replace"
        else:
            op = "delete"
        counts[op] += 1
        if op in ("insert", "replace"):
            # config validation guarantees the pool is non-empty here
            word = config.word_pool[
                min(int(rng.random() * len(config.word_pool)), len(config.word_pool) - 1)
            ]
            if op == "insert":
                pieces.append(word)
                pieces.append(token.surface)
            else:
                pieces.append(word)
        elif op == "keep":
            pieces.append(token.surface)
        # delete contributes nothing
    return "".join(pieces), counts


def random_augment(
    sentence: TaggedSentence, config: AugmentConfig, sentence_index: int
) -> CorpusPair:
    """Per-word keep/insert/replace/delete corruption (naive baseline).

    Unlike the rules, this may return an identity pair (all words kept) and
    may produce an empty incorrect text (everything deleted); error_types
    is empty and rule_id is "random-augment".
    """
    pair_seed = derive_seed(config.seed, sentence_index)
    incorrect, _ = _augment_ops(sentence, config, random.Random(pair_seed))
    return CorpusPair(
        id=f"aug-{sentence_index:06d}",
        incorrect=incorrect,
        correct=sentence.text,
        edits=diff_edits(incorrect, sentence.text),
        error_types=(),
        rule_id="random-augment",
        seed=pair_seed,
    )


@dataclass
class AugmentReport:
    sentences_read: int = 0
    words_seen: int = 0
    op_counts: dict[str, int] = field(default_factory=lambda: dict.fromkeys(_OPS, 0))

    def to_dict(self) -> dict:
        return {
            "sentences_read": self.sentences_read,
            "words_seen": self.words_seen,
            "op_counts": dict(self.op_counts),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2) + "\n"


def build_word_pool(sentences: Iterable[TaggedSentence]) -> tuple[str, ...]:
    """Sorted unique token surfaces: the insert/replace vocabulary."""
    return tuple(sorted({t.surface for s in sentences for t in s.tokens}))


def _augment_one(
    sentence: TaggedSentence, config: AugmentConfig, index: int
) -> tuple[CorpusPair, dict[str, int]]:
    pair_seed = derive_seed(config.seed, index)
    incorrect, counts = _augment_ops(sentence, config, random.Random(pair_seed))
    pair = CorpusPair(
        id=f"aug-{index:06d}",
        incorrect=incorrect,
        correct=sentence.text,
        edits=diff_edits(incorrect, sentence.text),
        error_types=(),
        rule_id="random-augment",
        seed=pair_seed,
    )
    return pair, counts


def stream_augment(
    corpus: Iterable[TaggedSentence], config: AugmentConfig
) -> Iterator[tuple[CorpusPair, dict[str, int]]]:
    """Yield (pair, per-op draw counts) per sentence, lazily."""
    for index, sentence in enumerate(corpus):
        yield _augment_one(sentence, config, index)


def _augment_line_job(args: tuple[int, str]) -> tuple[CorpusPair, dict[str, int]]:
    index, line = args
    return _augment_one(segment_and_tag(line), _WORKER_STATE["config"], index)


def stream_augment_lines(
    lines: Iterable[str], config: AugmentConfig, workers: int = 1
) -> Iterator[tuple[CorpusPair, dict[str, int]]]:
    """stream_augment over raw text lines, segmenting with the builtin tagger."""
    if workers <= 1:
        yield from stream_augment((segment_and_tag(line) for line in lines), config)
        return
    with multiprocessing.Pool(
        workers, initializer=_init_worker, initargs=(config, None, False)
    ) as pool:
        yield from pool.imap(_augment_line_job, enumerate(lines), chunksize=64)


def augment_corpus(
    corpus: Iterable[TaggedSentence], config: AugmentConfig
) -> tuple[list[CorpusPair], AugmentReport]:
    report = AugmentReport()
    pairs = []
    for pair, counts in stream_augment(corpus, config):
        pairs.append(pair)
        report.sentences_read += 1
        report.words_seen += sum(counts.values())
        for op, count in counts.items():
            report.op_counts[op] += count
    return pairs, report
