"""Core text types and edit primitives.

Everything downstream builds on the types here: POS-tagged tokens and
sentences, the coarse/fine error-type taxonomy, character-level edit
spans, and the training-pair record with its JSON-lines serialization.
All offsets are Unicode code point indices, never bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Sequence


class CgecError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(CgecError):
    """Bad or missing configuration (maps to exit code 2 in the CLI)."""


class ValidationError(CgecError):
    """Malformed input data (maps to exit code 3 in the CLI)."""


class ParseError(ValidationError):
    """Unparseable input line or item; carries location context in the message."""


class POSTag(Enum):
    """Closed 13-member part-of-speech set; unknown external tags map to OTHER."""

    NOUN = "NOUN"
    VERB = "VERB"
    ADJ = "ADJ"
    ADV = "ADV"
    PRON = "PRON"
    CCONJ = "CCONJ"
    ADP = "ADP"
    PART = "PART"
    X = "X"  # auxiliary verbs (能/会/应该/要/...)
    NUM = "NUM"
    PROPN = "PROPN"
    PUNCT = "PUNCT"
    OTHER = "OTHER"


class SyntacticRole(Enum):
    """The six sentence components corruption rules match against."""

    SUBJECT = "Subject"
    PREDICATE = "Predicate"
    OBJECT = "Object"
    ATTRIBUTE = "Attribute"
    ADVERBIAL = "Adverbial"
    COMPLEMENT = "Complement"


class CoarseType(Enum):
    """The six coarse grammatical-error categories."""

    STRUCTURAL_CONFUSION = "StructuralConfusion"
    IMPROPER_LOGICALITY = "ImproperLogicality"
    MISSING_COMPONENT = "MissingComponent"
    REDUNDANT_COMPONENT = "RedundantComponent"
    IMPROPER_COLLOCATION = "ImproperCollocation"
    IMPROPER_WORD_ORDER = "ImproperWordOrder"


# Fine-grained rule id -> coarse category. Exactly 26 entries; rule ids double
# as registry keys in the rules module.
FINE_TO_COARSE: dict[str, CoarseType] = {
    "MixedPatterns": CoarseType.STRUCTURAL_CONFUSION,
    "MixedSubjects": CoarseType.STRUCTURAL_CONFUSION,
    "MixedSentences": CoarseType.STRUCTURAL_CONFUSION,
    "MeasureWord": CoarseType.IMPROPER_LOGICALITY,
    "Unreasonable": CoarseType.IMPROPER_LOGICALITY,
    "ImproperNegation": CoarseType.IMPROPER_LOGICALITY,
    "ReverseHostGuest": CoarseType.IMPROPER_LOGICALITY,
    "ImposingCauseAndEffect": CoarseType.IMPROPER_LOGICALITY,
    "LackSubject": CoarseType.MISSING_COMPONENT,
    "LackPredicate": CoarseType.MISSING_COMPONENT,
    "LackObject": CoarseType.MISSING_COMPONENT,
    "LackModifier": CoarseType.MISSING_COMPONENT,
    "MultiWords": CoarseType.REDUNDANT_COMPONENT,
    "MultiMeanings": CoarseType.REDUNDANT_COMPONENT,
    "SubjectPredicate": CoarseType.IMPROPER_COLLOCATION,
    "PredicateObject": CoarseType.IMPROPER_COLLOCATION,
    "SubjectObject": CoarseType.IMPROPER_COLLOCATION,
    "ModifierHeadWord": CoarseType.IMPROPER_COLLOCATION,
    "Connectives": CoarseType.IMPROPER_COLLOCATION,
    "MultiAttributives": CoarseType.IMPROPER_WORD_ORDER,
    "MultiAdverbials": CoarseType.IMPROPER_WORD_ORDER,
    "AttributiveHeadWord": CoarseType.IMPROPER_WORD_ORDER,
    "Prepositions": CoarseType.IMPROPER_WORD_ORDER,
    "ConnectivesSubject": CoarseType.IMPROPER_WORD_ORDER,
    "AssociatedWords": CoarseType.IMPROPER_WORD_ORDER,
    "AdverbialAttributives": CoarseType.IMPROPER_WORD_ORDER,
}


@dataclass(frozen=True)
class ErrorType:
    """A (coarse, fine) error label; fine ids determine the coarse category."""

    coarse: CoarseType
    fine: str

    def __post_init__(self) -> None:
        expected = FINE_TO_COARSE.get(self.fine)
        if expected is None:
            raise ValidationError(f"unknown fine error type: {self.fine!r}")
        if expected is not self.coarse:
            raise ValidationError(
                f"fine type {self.fine!r} belongs to {expected.value}, not {self.coarse.value}"
            )

    @classmethod
    def from_fine(cls, fine: str) -> "ErrorType":
        coarse = FINE_TO_COARSE.get(fine)
        if coarse is None:
            raise ValidationError(f"unknown fine error type: {fine!r}")
        return cls(coarse, fine)


@dataclass(frozen=True)
class Token:
    surface: str
    tag: POSTag
    char_start: int
    char_end: int

    def __post_init__(self) -> None:
        if self.char_start >= self.char_end:
            raise ValidationError(
                f"token {self.surface!r} has empty span [{self.char_start}, {self.char_end})"
            )
        if len(self.surface) != self.char_end - self.char_start:
            raise ValidationError(
                f"token {self.surface!r} length does not match span "
                f"[{self.char_start}, {self.char_end})"
            )


@dataclass(frozen=True)
class TaggedSentence:
    """A segmented, tagged sentence. Token surfaces concatenate back to text."""

    text: str
    tokens: tuple[Token, ...]

    def __post_init__(self) -> None:
        pos = 0
        for tok in self.tokens:
            if tok.char_start != pos or self.text[tok.char_start : tok.char_end] != tok.surface:
                raise ValidationError(
                    f"token {tok.surface!r} at [{tok.char_start}, {tok.char_end}) "
                    f"does not tile the sentence text"
                )
            pos = tok.char_end
        if pos != len(self.text):
            raise ValidationError("tokens do not cover the sentence text")

    def surfaces(self) -> list[str]:
        return [t.surface for t in self.tokens]


@dataclass(frozen=True, order=True)
class EditSpan:
    """Replace incorrect[start:end] with `replacement` (empty = deletion)."""

    start: int
    end: int
    replacement: str

    def __post_init__(self) -> None:
        if self.start < 0 or self.end < self.start:
            raise ValidationError(f"bad edit span ({self.start}, {self.end}, {self.replacement!r})")


@dataclass(frozen=True)
class CorpusPair:
    """One training sample: an ungrammatical text, its correction, and labels.

    Invariant: apply_edits(incorrect, edits) == correct. error_types has one
    entry per applied rule (empty for the random-augmentation baseline).
    """

    id: str
    incorrect: str
    correct: str
    edits: tuple[EditSpan, ...]
    error_types: tuple[ErrorType, ...]
    rule_id: str
    seed: int


def _check_edits(text: str, edits: Sequence[EditSpan]) -> None:
    prev_end = 0
    prev: EditSpan | None = None
    for span in edits:
        if span.end > len(text):
            raise ValidationError(
                f"edit ({span.start}, {span.end}, {span.replacement!r}) "
                f"exceeds text length {len(text)}"
            )
        if prev is not None and span.start < prev_end:
            raise ValidationError(
                f"edit ({span.start}, {span.end}, {span.replacement!r}) "
                f"overlaps previous edit ({prev.start}, {prev.end}, {prev.replacement!r})"
            )
        prev_end = span.end
        prev = span


def apply_edits(incorrect: str, edits: Sequence[EditSpan]) -> str:
    """Apply sorted, non-overlapping edit spans to a text.

    Args:
        incorrect: the text the spans index into.
        edits: spans sorted by start, pairwise non-overlapping.

    Returns:
        The edited text.

    Raises:
        ValidationError: on out-of-bounds or overlapping spans, naming the span.
    """
    _check_edits(incorrect, edits)
    result = incorrect
    # Right-to-left so earlier offsets stay valid as the string changes.
    for span in reversed(list(edits)):
        result = result[: span.start] + span.replacement + result[span.end :]
    return result


def _edit_ops(a: str, b: str) -> list[tuple[str, int, int]]:
    """Minimal unit-cost edit script turning a into b.

    Returns (op, i, j) steps in left-to-right order, where op is one of
    "match", "replace", "insert", "delete"; i indexes a, j indexes b at the
    point the step applies. Backtrace ties resolve match > replace > insert
    > delete so the script is canonical.
    """
    m, n = len(a), len(b)
    dp = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(m + 1):
        dp[i][0] = i
    for j in range(n + 1):
        dp[0][j] = j
    for i in range(1, m + 1):
        ai = a[i - 1]
        row, prev_row = dp[i], dp[i - 1]
        for j in range(1, n + 1):
            cost = 0 if ai == b[j - 1] else 1
            row[j] = min(prev_row[j - 1] + cost, row[j - 1] + 1, prev_row[j] + 1)
    ops: list[tuple[str, int, int]] = []
    i, j = m, n
    while i > 0 or j > 0:
        if i > 0 and j > 0 and a[i - 1] == b[j - 1] and dp[i][j] == dp[i - 1][j - 1]:
            ops.append(("match", i - 1, j - 1))
            i, j = i - 1, j - 1
        elif i > 0 and j > 0 and dp[i][j] == dp[i - 1][j - 1] + 1:
            ops.append(("replace", i - 1, j - 1))
            i, j = i - 1, j - 1
        elif j > 0 and dp[i][j] == dp[i][j - 1] + 1:
            ops.append(("insert", i, j - 1))
            j -= 1
        else:
            ops.append(("delete", i - 1, j))
            i -= 1
    ops.reverse()
    return ops


def diff_edits(incorrect: str, correct: str) -> tuple[EditSpan, ...]:
    """Minimal character edit script grouped into maximal touching spans.

    Adjacent atomic ops (no matched character between them) collapse into a
    single span. Round trip: apply_edits(a, diff_edits(a, b)) == b.
    """
    spans: list[EditSpan] = []
    start = end = -1
    pieces: list[str] = []
    for op, i, j in _edit_ops(incorrect, correct):
        if op == "match":
            if start >= 0:
                spans.append(EditSpan(start, end, "".join(pieces)))
                start = -1
                pieces = []
            continue
        if start < 0:
            start, end = i, i
            pieces = []
        if op in ("replace", "delete"):
            end = i + 1
        if op in ("replace", "insert"):
            pieces.append(correct[j])
    if start >= 0:
        spans.append(EditSpan(start, end, "".join(pieces)))
    return tuple(spans)


def pair_to_json(pair: CorpusPair) -> str:
    """Serialize one pair as a compact JSON object with a fixed key order."""
    obj = {
        "id": pair.id,
        "incorrect": pair.incorrect,
        "correct": pair.correct,
        "edits": [
            {"start": e.start, "end": e.end, "replacement": e.replacement} for e in pair.edits
        ],
        "error_types": [{"coarse": t.coarse.value, "fine": t.fine} for t in pair.error_types],
        "rule_id": pair.rule_id,
        "seed": pair.seed,
    }
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def pair_from_json(line: str, lineno: int | None = None) -> CorpusPair:
    where = "" if lineno is None else f" at line {lineno}"
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON{where}: {exc}") from exc
    try:
        pair = CorpusPair(
            id=obj["id"],
            incorrect=obj["incorrect"],
            correct=obj["correct"],
            edits=tuple(
                EditSpan(e["start"], e["end"], e["replacement"]) for e in obj["edits"]
            ),
            error_types=tuple(
                ErrorType(CoarseType(t["coarse"]), t["fine"]) for t in obj["error_types"]
            ),
            rule_id=obj["rule_id"],
            seed=obj["seed"],
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad pair record{where}: {exc}") from exc
    if apply_edits(pair.incorrect, pair.edits) != pair.correct:
        raise ParseError(f"pair record{where}: edits do not reproduce the correct text")
    return pair


def write_pairs(pairs: Iterable[CorpusPair], path: str) -> int:
    n = 0
    with open(path, "w", encoding="utf-8") as fh:
        for pair in pairs:
            fh.write(pair_to_json(pair))
            fh.write("\n")
            n += 1
    return n


def read_pairs(path: str) -> Iterator[CorpusPair]:
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if line:
                yield pair_from_json(line, lineno)
