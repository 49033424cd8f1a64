import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cgeckit.core import (
    CoarseType,
    CorpusPair,
    EditSpan,
    ErrorType,
    FINE_TO_COARSE,
    ParseError,
    ValidationError,
    apply_edits,
    diff_edits,
    pair_from_json,
    pair_to_json,
)
from oracles import levenshtein_recursive

TEXT_ALPHABET = "ab他喜欢苹果最后一天xy ，。"


def test_taxonomy_has_26_fine_types_in_6_categories():
    assert len(FINE_TO_COARSE) == 26
    per_coarse = {}
    for fine, coarse in FINE_TO_COARSE.items():
        per_coarse.setdefault(coarse, []).append(fine)
    assert len(per_coarse) == 6
    sizes = {c.value: len(v) for c, v in per_coarse.items()}
    assert sizes == {
        "StructuralConfusion": 3,
        "ImproperLogicality": 5,
        "MissingComponent": 4,
        "RedundantComponent": 2,
        "ImproperCollocation": 5,
        "ImproperWordOrder": 7,
    }


def test_error_type_rejects_wrong_coarse():
    with pytest.raises(ValidationError):
        ErrorType(CoarseType.MISSING_COMPONENT, "MultiWords")
    with pytest.raises(ValidationError):
        ErrorType.from_fine("NoSuchRule")
    t = ErrorType.from_fine("MultiWords")
    assert t.coarse is CoarseType.REDUNDANT_COMPONENT


def test_apply_edits_empty_is_identity():
    assert apply_edits("昨天是转会的最后一天", []) == "昨天是转会的最后一天"


def test_apply_edits_deletion_example():
    # Hand-counted offsets: 截止日期 occupies [5, 9).
    edits = [EditSpan(5, 9, "")]
    assert apply_edits("昨天是转会截止日期的最后一天", edits) == "昨天是转会的最后一天"


def test_apply_edits_replacement_example():
    src = "丝绸之路开拓了千古传诵的壮美篇章"
    assert src.index("开拓") == 4
    assert apply_edits(src, [EditSpan(4, 6, "谱写")]) == "丝绸之路谱写了千古传诵的壮美篇章"


def test_apply_edits_rejects_bad_spans():
    with pytest.raises(ValidationError) as exc:
        apply_edits("abc", [EditSpan(1, 9, "x")])
    assert "(1, 9," in str(exc.value)
    with pytest.raises(ValidationError) as exc:
        apply_edits("abcdef", [EditSpan(0, 3, "x"), EditSpan(2, 4, "y")])
    assert "overlaps" in str(exc.value)


def test_apply_edits_allows_touching_and_repeated_insertion_points():
    assert apply_edits("abc", [EditSpan(1, 2, "X"), EditSpan(2, 3, "Y")]) == "aXY"
    assert apply_edits("abc", [EditSpan(1, 1, "x"), EditSpan(1, 1, "y")]) == "axybc"


def test_diff_edits_examples():
    assert diff_edits("abc", "abc") == ()
    assert diff_edits("昨天是转会截止日期的最后一天", "昨天是转会的最后一天") == (
        EditSpan(5, 9, ""),
    )
    assert diff_edits("ax", "ay") == (EditSpan(1, 2, "y"),)


def test_diff_edits_groups_touching_ops():
    # Replacement followed directly by an insertion collapses into one span.
    (span,) = diff_edits("ab", "axy")
    assert apply_edits("ab", [span]) == "axy"
    assert span.start >= 1  # the matched prefix "a" is never part of the span


@settings(max_examples=300, deadline=None)
@given(
    st.text(TEXT_ALPHABET, max_size=30),
    st.text(TEXT_ALPHABET, max_size=30),
)
def test_diff_edits_round_trip(a, b):
    edits = diff_edits(a, b)
    assert apply_edits(a, edits) == b
    starts = [e.start for e in edits]
    assert starts == sorted(starts)
    for prev, cur in zip(edits, edits[1:]):
        assert prev.end <= cur.start


@settings(max_examples=300, deadline=None)
@given(
    st.text(TEXT_ALPHABET, max_size=12),
    st.text(TEXT_ALPHABET, max_size=12),
)
def test_diff_edits_total_char_cost_is_levenshtein(a, b):
    edits = diff_edits(a, b)
    cost = 0
    for e in edits:
        deleted = e.end - e.start
        inserted = len(e.replacement)
        # Within one span, min(deleted, inserted) chars count as replacements.
        cost += max(deleted, inserted)
    assert cost == levenshtein_recursive(a, b)


def _sample_pair():
    return CorpusPair(
        id="pair-000001-00",
        incorrect="昨天是转会截止日期的最后一天",
        correct="昨天是转会的最后一天",
        edits=(EditSpan(5, 9, ""),),
        error_types=(ErrorType.from_fine("MultiMeanings"),),
        rule_id="MultiMeanings",
        seed=12345,
    )


def test_pair_json_field_order_and_content():
    line = pair_to_json(_sample_pair())
    keys = list(json.loads(line))
    assert keys == ["id", "incorrect", "correct", "edits", "error_types", "rule_id", "seed"]
    assert "昨天是转会截止日期的最后一天" in line  # ensure_ascii off
    assert pair_from_json(line) == _sample_pair()


def test_pair_from_json_rejects_inconsistent_edits():
    obj = json.loads(pair_to_json(_sample_pair()))
    obj["correct"] = "完全不同的句子"
    with pytest.raises(ParseError):
        pair_from_json(json.dumps(obj, ensure_ascii=False), lineno=7)


def test_pair_from_json_reports_line_number():
    with pytest.raises(ParseError) as exc:
        pair_from_json("{not json", lineno=31)
    assert "line 31" in str(exc.value)
