"""Evaluation: character Levenshtein, word-level MaxMatch scoring, corpus
statistics tables, and Fleiss' kappa.

MaxMatch extraction searches every minimal alignment between source and
hypothesis, allowing adjacent edits to merge across short unchanged runs,
and returns the edit set that best matches the gold annotation. Annotator
selection during corpus scoring maximizes the running F-score, so scoring
is sequential by contract even though extraction is per-sentence pure.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence, TextIO

from cgeckit.core import (
    CoarseType,
    ConfigError,
    CorpusPair,
    ParseError,
    ValidationError,
    _edit_ops,
)

# --- character Levenshtein ------------------------------------------------


class EditOps(NamedTuple):
    distance: int
    replace: int
    insert: int
    delete: int


def levenshtein(a: str, b: str) -> EditOps:
    """Unit-cost edit distance from a to b with canonical op counts.

    Counts come from one backtrace with ties resolved match > replace >
    insert > delete, so they are reproducible; distance == replace +
    insert + delete always holds.
    """
    replace = insert = delete = 0
    for op, _, _ in _edit_ops(a, b):
        if op == "replace":
            replace += 1
        elif op == "insert":
            insert += 1
        elif op == "delete":
            delete += 1
    return EditOps(replace + insert + delete, replace, insert, delete)


# --- M2 gold files --------------------------------------------------------


@dataclass(frozen=True)
class GoldEdit:
    """One annotated correction over word-token offsets of the source."""

    start_token: int
    end_token: int
    correction: str
    annotator_id: int

    def __post_init__(self) -> None:
        if not 0 <= self.start_token <= self.end_token:
            raise ValidationError(
                f"gold edit span ({self.start_token}, {self.end_token}) is invalid"
            )

    @property
    def triple(self) -> tuple[int, int, str]:
        return (self.start_token, self.end_token, self.correction)


@dataclass(frozen=True)
class M2Sentence:
    """One source sentence with each annotator's gold edit set."""

    tokens: tuple[str, ...]
    by_annotator: Mapping[int, tuple[GoldEdit, ...]]


@dataclass(frozen=True)
class ScoreParams:
    beta: float = 0.5
    max_unchanged: int = 2
    char_tokenize: bool = False

    def __post_init__(self) -> None:
        if self.beta <= 0:
            raise ConfigError(f"beta must be > 0, got {self.beta!r}")
        if self.max_unchanged < 0:
            raise ConfigError(f"max_unchanged must be >= 0, got {self.max_unchanged!r}")


_NOOP = "-NONE-"


def parse_m2(source) -> list[M2Sentence]:
    """Parse an M2 gold file: `S` token lines plus `A` annotation lines.

    A `-NONE-` correction is a no-op annotation: it registers the annotator
    with an empty edit set. A sentence without annotation lines gets one
    implicit annotator 0 with an empty set. Accepts a path or an open file.
    """
    if hasattr(source, "read"):
        lines = source.read().splitlines()
    else:
        with open(source, encoding="utf-8") as fh:
            lines = fh.read().splitlines()

    sentences: list[M2Sentence] = []
    tokens: tuple[str, ...] | None = None
    edits: dict[int, list[GoldEdit]] = {}

    def flush() -> None:
        nonlocal tokens, edits
        if tokens is None:
            return
        by_annotator = {a: tuple(v) for a, v in sorted(edits.items())} or {0: ()}
        sentences.append(M2Sentence(tokens=tokens, by_annotator=by_annotator))
        tokens, edits = None, {}

    for num, line in enumerate(lines, 1):
        line = line.rstrip()
        if not line:
            flush()
            continue
        if line.startswith("S ") or line == "S":
            flush()
            tokens = tuple(line[2:].split())
            continue
        if not line.startswith("A "):
            raise ParseError(f"line {num}: expected S/A/blank, got {line[:30]!r}")
        if tokens is None:
            raise ParseError(f"line {num}: annotation before any S line")
        fields = line[2:].split("|||")
        if len(fields) != 6:
            raise ParseError(f"line {num}: expected 6 |||-separated fields, got {len(fields)}")
        span = fields[0].split()
        if len(span) != 2:
            raise ParseError(f"line {num}: span must be two integers, got {fields[0]!r}")
        try:
            start, end = int(span[0]), int(span[1])
            annotator = int(fields[5])
        except ValueError as exc:
            raise ParseError(f"line {num}: {exc}") from None
        if not 0 <= start <= end:
            raise ParseError(f"line {num}: invalid span {start} {end}")
        if end > len(tokens):
            raise ParseError(f"line {num}: span end {end} exceeds {len(tokens)} tokens")
        bucket = edits.setdefault(annotator, [])
        if fields[2] != _NOOP:
            correction = " ".join(fields[2].split())
            bucket.append(GoldEdit(start, end, correction, annotator))
    flush()
    return sentences


def write_m2(pairs: Iterable[CorpusPair], fh: TextIO) -> int:
    """Write pairs as a character-tokenized M2 gold file (annotator 0).

    Each character of the incorrect text becomes one token, so the pair's
    character edit spans are valid token spans as-is. Returns the number of
    sentences written.
    """
    count = 0
    for pair in pairs:
        if any(ch.isspace() for ch in pair.incorrect):
            raise ValidationError(
                f"pair {pair.id}: whitespace cannot be a character token in M2 output"
            )
        etype = pair.error_types[0].coarse.value if pair.error_types else "NA"
        fh.write("S " + " ".join(pair.incorrect) + "\n")
        for span in pair.edits:
            if any(ch.isspace() for ch in span.replacement) or "|||" in span.replacement:
                raise ValidationError(
                    f"pair {pair.id}: correction {span.replacement!r} not representable in M2"
                )
            correction = " ".join(span.replacement)
            fh.write(
                f"A {span.start} {span.end}|||{etype}|||{correction}"
                f"|||REQUIRED|||-NONE-|||0\n"
            )
        fh.write("\n")
        count += 1
    return count


# --- MaxMatch edit extraction ----------------------------------------------


def _as_triple(edit) -> tuple[int, int, str]:
    if isinstance(edit, GoldEdit):
        return edit.triple
    start, end, correction = edit
    return (int(start), int(end), correction)


def extract_system_edits(
    source_tokens: Sequence[str],
    hypothesis_tokens: Sequence[str],
    gold: Iterable,
    params: ScoreParams = ScoreParams(),
) -> tuple[tuple[int, int, str], ...]:
    """System edits between source and hypothesis that best match gold.

    Searches all minimal-cost alignments; adjacent changed regions may
    merge into one edit across runs of up to max_unchanged unchanged
    tokens (the merged correction keeps those tokens). Among all reachable
    edit sets the result maximizes exact overlap with gold, then has the
    fewest edits, then the lexicographically smallest spans. Corrections
    are hypothesis tokens joined by single spaces.
    """
    src = list(source_tokens)
    hyp = list(hypothesis_tokens)
    gold_set = frozenset(_as_triple(g) for g in gold)
    n, m = len(src), len(hyp)
    max_unchanged = params.max_unchanged

    dstart = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        dstart[i][0] = i
    for j in range(m + 1):
        dstart[0][j] = j
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            cost = 0 if src[i - 1] == hyp[j - 1] else 1
            dstart[i][j] = min(
                dstart[i - 1][j - 1] + cost, dstart[i][j - 1] + 1, dstart[i - 1][j] + 1
            )
    dend = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        dend[i][m] = n - i
    for j in range(m + 1):
        dend[n][j] = m - j
    for i in range(n - 1, -1, -1):
        for j in range(m - 1, -1, -1):
            cost = 0 if src[i] == hyp[j] else 1
            dend[i][j] = min(dend[i + 1][j + 1] + cost, dend[i][j + 1] + 1, dend[i + 1][j] + 1)
    total = dstart[n][m]

    # Value of a state: best (-(gold matches), edit count, edit tuple)
    # completing the walk from there; None when the state is a dead end.
    # seg is None between edits, else (start_i, start_j, trailing matches).
    # Gold matching counts DISTINCT edits, and only pure insertions (which
    # never advance the source index) can repeat a span; `used` carries the
    # corrections already credited at the current source index and resets
    # whenever the walk consumes a source token.
    memo: dict = {}
    empty: frozenset[str] = frozenset()

    def best(i: int, j: int, seg, used: frozenset[str]):
        key = (i, j, seg, used)
        if key in memo:
            return memo[key]
        candidates = []
        if i == n and j == m and seg is None:
            memo[key] = (0, 0, ())
            return memo[key]
        if seg is not None and seg[2] == 0:
            edit = (seg[0], i, " ".join(hyp[seg[1] : j]))
            if seg[0] == i:  # pure insertion; may duplicate an earlier one
                tp = 1 if edit in gold_set and edit[2] not in used else 0
                next_used = used | {edit[2]} if edit in gold_set else used
            else:
                tp = 1 if edit in gold_set else 0
                next_used = used
            sub = best(i, j, None, next_used)
            if sub is not None:
                candidates.append((sub[0] - tp, sub[1] + 1, (edit,) + sub[2]))
        if i < n and j < m and src[i] == hyp[j] and dstart[i][j] + dend[i + 1][j + 1] == total:
            if seg is None:
                sub = best(i + 1, j + 1, None, empty)
                if sub is not None:
                    candidates.append(sub)
            elif seg[2] < max_unchanged:
                sub = best(i + 1, j + 1, (seg[0], seg[1], seg[2] + 1), empty)
                if sub is not None:
                    candidates.append(sub)
        changed_arcs = []
        if i < n and j < m and src[i] != hyp[j] and dstart[i][j] + 1 + dend[i + 1][j + 1] == total:
            changed_arcs.append((i + 1, j + 1))
        if j < m and dstart[i][j] + 1 + dend[i][j + 1] == total:
            changed_arcs.append((i, j + 1))
        if i < n and dstart[i][j] + 1 + dend[i + 1][j] == total:
            changed_arcs.append((i + 1, j))
        for ni, nj in changed_arcs:
            nseg = (i, j, 0) if seg is None else (seg[0], seg[1], 0)
            sub = best(ni, nj, nseg, used if ni == i else empty)
            if sub is not None:
                candidates.append(sub)
        result = min(candidates) if candidates else None
        memo[key] = result
        return result

    value = best(0, 0, None, empty)
    assert value is not None, "alignment walk must reach the end"
    return value[2]


def edit_counts(
    system: Iterable[tuple[int, int, str]], gold: Iterable
) -> tuple[int, int, int]:
    """(tp, fp, fn) of a system edit sequence against one gold edit set.

    Each gold edit can be matched at most once, but the system side is a
    sequence: extraction may emit the same insertion twice (the source
    index does not advance), and every occurrence beyond the single
    credited match is a false positive.
    """
    system_list = [_as_triple(e) for e in system]
    gold_set = {_as_triple(g) for g in gold}
    tp = len(set(system_list) & gold_set)
    return tp, len(system_list) - tp, len(gold_set) - tp


# --- corpus scoring --------------------------------------------------------


@dataclass(frozen=True)
class ScoreReport:
    tp: int
    fp: int
    fn: int
    precision: float
    recall: float
    f_beta: float
    beta: float
    chosen_annotators: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "tp": self.tp,
            "fp": self.fp,
            "fn": self.fn,
            "precision": self.precision,
            "recall": self.recall,
            f"f_{self.beta:g}": self.f_beta,
            "chosen_annotators": list(self.chosen_annotators),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2) + "\n"


def _f_beta_exact(tp: int, fp: int, fn: int, beta: Fraction) -> Fraction:
    p = Fraction(1) if tp + fp == 0 else Fraction(tp, tp + fp)
    r = Fraction(1) if tp + fn == 0 else Fraction(tp, tp + fn)
    if p * r == 0:
        return Fraction(0)
    b2 = beta * beta
    return (1 + b2) * p * r / (b2 * p + r)


def _tokenize(text: str, params: ScoreParams) -> list[str]:
    return list(text) if params.char_tokenize else text.split()


def score_corpus(
    sources: Sequence[str],
    hypotheses: Sequence[str],
    gold,
    params: ScoreParams = ScoreParams(),
) -> ScoreReport:
    """Score hypotheses against M2 gold with running-F annotator selection.

    For every sentence each annotator's gold set gets its own MaxMatch
    extraction; the annotator whose counts maximize the corpus F-score so
    far (ties: lowest id) is accumulated. Sources must tokenize to exactly
    the gold `S` line tokens; a mismatch means the gold file was built with
    a different tokenization and scoring would be meaningless.
    """
    if isinstance(gold, (str, os.PathLike)) or hasattr(gold, "read"):
        gold = parse_m2(gold)
    if not len(sources) == len(hypotheses) == len(gold):
        raise ValidationError(
            f"count mismatch: {len(sources)} sources, {len(hypotheses)} hypotheses, "
            f"{len(gold)} gold sentences"
        )
    beta = Fraction(str(params.beta))
    tp_total = fp_total = fn_total = 0
    chosen: list[int] = []
    for index, (source, hypothesis, entry) in enumerate(zip(sources, hypotheses, gold)):
        src_tokens = _tokenize(source, params)
        if tuple(src_tokens) != entry.tokens:
            raise ValidationError(
                f"sentence {index}: source tokens do not match the gold S line "
                f"({len(src_tokens)} vs {len(entry.tokens)} tokens)"
            )
        hyp_tokens = _tokenize(hypothesis, params)
        best_id = None
        best_f = None
        best_counts = (0, 0, 0)
        for annotator in sorted(entry.by_annotator):
            gold_set = entry.by_annotator[annotator]
            system = extract_system_edits(src_tokens, hyp_tokens, gold_set, params)
            tp, fp, fn = edit_counts(system, gold_set)
            f = _f_beta_exact(tp_total + tp, fp_total + fp, fn_total + fn, beta)
            if best_f is None or f > best_f:
                best_id, best_f, best_counts = annotator, f, (tp, fp, fn)
        tp_total += best_counts[0]
        fp_total += best_counts[1]
        fn_total += best_counts[2]
        chosen.append(best_id if best_id is not None else 0)
    precision = 1.0 if tp_total + fp_total == 0 else tp_total / (tp_total + fp_total)
    recall = 1.0 if tp_total + fn_total == 0 else tp_total / (tp_total + fn_total)
    f_final = float(_f_beta_exact(tp_total, fp_total, fn_total, beta))
    return ScoreReport(
        tp=tp_total,
        fp=fp_total,
        fn=fn_total,
        precision=precision,
        recall=recall,
        f_beta=f_final,
        beta=params.beta,
        chosen_annotators=tuple(chosen),
    )


def format_score(report: ScoreReport) -> str:
    """The three-line P/R/F console rendering, 4 decimal places."""
    return (
        f"Precision : {report.precision:.4f}\n"
        f"Recall : {report.recall:.4f}\n"
        f"F_{report.beta:g} : {report.f_beta:.4f}\n"
    )


# --- corpus statistics -----------------------------------------------------


@dataclass
class StatsReport:
    """Aggregate corpus statistics; to_dict mirrors the report table rows."""

    number_of_sentences: int = 0
    erroneous_sentences: int = 0
    number_of_references: int = 0
    average_length_chars: float = 0.0
    average_edit_distance_chars: float = 0.0
    references_per_sentence: float = 0.0
    empty: bool = False  # set when the input stream had no pairs

    def to_dict(self) -> dict:
        return {
            "Number of Sentences": self.number_of_sentences,
            "Erroneous Sentences": self.erroneous_sentences,
            "Number of References": self.number_of_references,
            "Average Length (Char.)": self.average_length_chars,
            "Edit Distance (Char.)": self.average_edit_distance_chars,
            "References / Sentence": self.references_per_sentence,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2) + "\n"


def corpus_stats(pairs: Iterable[CorpusPair]) -> StatsReport:
    """Sentence counts, average incorrect-text length, average edit distance."""
    sentences = erroneous = references = 0
    length_sum = 0
    distance_sum = 0
    for pair in pairs:
        sentences += 1
        references += 1
        length_sum += len(pair.incorrect)
        distance_sum += levenshtein(pair.incorrect, pair.correct).distance
        if pair.incorrect != pair.correct:
            erroneous += 1
    if sentences == 0:
        return StatsReport(empty=True)
    return StatsReport(
        number_of_sentences=sentences,
        erroneous_sentences=erroneous,
        number_of_references=references,
        average_length_chars=length_sum / sentences,
        average_edit_distance_chars=distance_sum / sentences,
        references_per_sentence=references / sentences,
    )


def _display_name(coarse: CoarseType) -> str:
    return re.sub(r"(?<=[a-z])(?=[A-Z])", " ", coarse.value)


def per_type_edit_stats(pairs: Iterable[CorpusPair]) -> dict[str, dict[str, float]]:
    """Average correction op counts per coarse error type.

    Counts are for the edit direction incorrect -> correct. A pair carrying
    several error types contributes its counts to each distinct type's row.
    """
    sums: dict[CoarseType, list[float]] = {}
    observations: dict[CoarseType, int] = {}
    for pair in pairs:
        types = {et.coarse for et in pair.error_types}
        if not types:
            continue
        ops = levenshtein(pair.incorrect, pair.correct)
        for coarse in types:
            row = sums.setdefault(coarse, [0, 0, 0, 0])
            row[0] += ops.replace
            row[1] += ops.insert
            row[2] += ops.delete
            row[3] += ops.distance
            observations[coarse] = observations.get(coarse, 0) + 1
    table: dict[str, dict[str, float]] = {}
    for coarse in CoarseType:
        if coarse not in sums:
            continue
        count = observations[coarse]
        row = sums[coarse]
        table[_display_name(coarse)] = {
            "Replace": row[0] / count,
            "Insert": row[1] / count,
            "Delete": row[2] / count,
            "Total": row[3] / count,
        }
    return table


# --- inter-annotator agreement ----------------------------------------------


def fleiss_kappa(counts: Sequence[Sequence[int]], n: int | None = None) -> float:
    """Fleiss' kappa over an items x categories rating-count matrix.

    Every row must sum to the same number of raters n >= 2. Exact 1.0 when
    observed agreement is perfect; undefined (error) when chance agreement
    is 1 while observed agreement is not.
    """
    if not counts:
        raise ValidationError("kappa needs at least one item")
    width = len(counts[0])
    rows: list[list[int]] = []
    for index, row in enumerate(counts):
        row = list(row)
        if len(row) != width:
            raise ValidationError(f"item {index}: expected {width} categories, got {len(row)}")
        if any(c < 0 for c in row):
            raise ValidationError(f"item {index}: negative rating count")
        rows.append(row)
    if n is None:
        n = sum(rows[0])
    if n < 2:
        raise ValidationError(f"kappa needs at least 2 raters per item, got {n}")
    for index, row in enumerate(rows):
        if sum(row) != n:
            raise ValidationError(f"item {index}: row sums to {sum(row)}, expected {n}")
    big_n = len(rows)
    p_bar = Fraction(
        sum(sum(c * c for c in row) - n for row in rows), big_n * n * (n - 1)
    )
    if p_bar == 1:
        return 1.0
    column_totals = [sum(row[j] for row in rows) for j in range(width)]
    p_e = sum(Fraction(t, big_n * n) ** 2 for t in column_totals)
    if p_e == 1:
        raise ValidationError("chance agreement is 1 with imperfect observed agreement")
    return float((p_bar - p_e) / (1 - p_e))
