"""Resource-driven corruption rules: 6 coarse categories, 26 fine types.

Every rule takes a correct TaggedSentence plus its RoleSpans and produces
an ungrammatical variant together with character edits that restore the
original. Rules never error on non-matching input; they return None.

Randomness discipline: rules consume only rng.random() (via _choice), so
an outcome is fully determined by (sentence, resources, seed) and never by
interpreter details. When several sites or rules match, one is chosen
uniformly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable

from cgeckit.core import (
    FINE_TO_COARSE,
    CoarseType,
    EditSpan,
    ErrorType,
    POSTag,
    TaggedSentence,
    apply_edits,
    diff_edits,
)
from cgeckit.resources import RuleResources
from cgeckit.tagging import NOMINAL_TAGS, RoleSpans, _clauses, _is_de
from cgeckit.core import SyntacticRole as Role


@dataclass(frozen=True)
class RuleDescriptor:
    rule_id: str
    coarse: CoarseType
    weight: float = 1.0


RULE_REGISTRY: dict[str, RuleDescriptor] = {
    fine: RuleDescriptor(fine, coarse) for fine, coarse in FINE_TO_COARSE.items()
}

FINE_ORDER: tuple[str, ...] = tuple(FINE_TO_COARSE)


@dataclass(frozen=True)
class RuleOutcome:
    """A fired rule: the corrupted text plus edits restoring the original."""

    incorrect: str
    edits: tuple[EditSpan, ...]
    fine_type: ErrorType
    match_site: tuple[int, int]


@dataclass(frozen=True)
class _Candidate:
    fine: str
    site: tuple[int, int]
    build: Callable[[random.Random], str]


def _choice(rng: random.Random, seq):
    idx = int(rng.random() * len(seq))
    return seq[min(idx, len(seq) - 1)]


def _span(sentence: TaggedSentence, i: int, j: int) -> tuple[int, int]:
    return sentence.tokens[i].char_start, sentence.tokens[j - 1].char_end


def _insert(text: str, pos: int, piece: str) -> str:
    return text[:pos] + piece + text[pos:]


def _replace(text: str, a: int, b: int, piece: str) -> str:
    return text[:a] + piece + text[b:]


def _swap(text: str, r1: tuple[int, int], r2: tuple[int, int]) -> str:
    (a1, b1), (a2, b2) = sorted([r1, r2])
    if b1 > a2:
        return text
    return text[:a1] + text[a2:b2] + text[b1:a2] + text[a1:b1] + text[b2:]


def _surfaces_in(sentence: TaggedSentence, rng_range: tuple[int, int]) -> set[str]:
    i, j = rng_range
    return {t.surface for t in sentence.tokens[i:j]}


def _clause_of(sentence: TaggedSentence, index: int) -> tuple[int, int]:
    for cs, ce in _clauses(sentence):
        if cs <= index < ce:
            return cs, ce
    return 0, len(sentence.tokens)


# --- StructuralConfusion -------------------------------------------------


def _core_end(sentence: TaggedSentence) -> int | None:
    """Character position after the last non-punctuation token."""
    for tok in reversed(sentence.tokens):
        if tok.tag is not POSTag.PUNCT:
            return tok.char_end
    return None


def _mixed_candidates(
    sentence: TaggedSentence, resources: RuleResources, kind: str, fine: str
) -> list[_Candidate]:
    out: list[_Candidate] = []
    end = _core_end(sentence)
    if end is None:
        return out
    head = sentence.text[:end]
    for entry in resources.mixed_patterns:
        if entry.kind != kind or not head.endswith(entry.match):
            continue
        start = end - len(entry.match)
        site = tuple(
            (i for i, t in enumerate(sentence.tokens) if t.char_end > start and t.char_start < end)
        )
        new_text = _insert(sentence.text, end, entry.splice)
        out.append(_Candidate(fine, (site[0], site[-1] + 1), lambda rng, t=new_text: t))
    return out


def _cand_mixed_patterns(sentence, roles, resources):
    return _mixed_candidates(sentence, resources, "pattern", "MixedPatterns")


def _cand_mixed_sentences(sentence, roles, resources):
    return _mixed_candidates(sentence, resources, "sentence", "MixedSentences")


def _cand_mixed_subjects(sentence, roles, resources):
    subject = roles.first(Role.SUBJECT)
    if subject is None or roles.predicate_index() is None:
        return []
    subject_text = sentence.text[slice(*_span(sentence, *subject))]
    words = [w for w in resources.function_words.get("subject", []) if w != subject_text]
    if not words:
        return []
    pos = _span(sentence, *subject)[1]

    def build(rng, pos=pos, words=tuple(words)):
        return _insert(sentence.text, pos, _choice(rng, words))

    return [_Candidate("MixedSubjects", subject, build)]


# --- ImproperLogicality --------------------------------------------------


def _cand_measure_word(sentence, roles, resources):
    tokens = sentence.tokens
    exact = set(resources.function_words.get("exact_marker", []))
    approx_pre = resources.function_words.get("approx_pre", [])
    approx_post = resources.function_words.get("approx_post", [])
    out = []
    for k, tok in enumerate(tokens):
        if tok.tag is not POSTag.NUM:
            continue
        window = tokens[max(0, k - 2) : k]
        if approx_pre and any(t.surface in exact for t in window):
            # exact marker + numeral: wedge in an approximate quantifier
            def build(rng, pos=tok.char_start, words=tuple(approx_pre)):
                return _insert(sentence.text, pos, _choice(rng, words))

            out.append(_Candidate("MeasureWord", (k, k + 1), build))
        if approx_post and any(t.surface in approx_pre for t in window):
            # approximate quantifier + numeral: add a trailing 左右/上下 too
            j = k + 1
            while j < len(tokens) and tokens[j].tag is POSTag.NOUN:
                j += 1
            pos = tokens[j - 1].char_end

            def build(rng, pos=pos, words=tuple(approx_post)):
                return _insert(sentence.text, pos, _choice(rng, words))

            out.append(_Candidate("MeasureWord", (k, k + 1), build))
    return out


def _cand_unreasonable(sentence, roles, resources):
    out = []
    for k, tok in enumerate(sentence.tokens):
        for superset, subsumed in resources.subsume_pairs:
            if tok.surface == superset and subsumed not in sentence.text:
                piece = "、" + subsumed
                new_text = _insert(sentence.text, tok.char_end, piece)
                out.append(_Candidate("Unreasonable", (k, k + 1), lambda rng, t=new_text: t))
    return out


def _cand_improper_negation(sentence, roles, resources):
    tokens = sentence.tokens
    negators = set(resources.function_words.get("negator", []))
    implicit = set(resources.function_words.get("implicit_negative", []))
    inserts = resources.function_words.get("negation_insert", [])
    doubles = resources.function_words.get("double_negator", [])
    out = []
    if inserts:
        for k, tok in enumerate(tokens):
            if tok.surface not in implicit:
                continue
            for m in range(k + 1, len(tokens)):
                if tokens[m].tag is POSTag.PUNCT:
                    break
                if tokens[m].surface in negators:
                    break
                if tokens[m].tag is POSTag.VERB:
                    # 防止…发生 → 防止…不发生: the hidden negation doubles up
                    def build(rng, pos=tokens[m].char_start, words=tuple(inserts)):
                        return _insert(sentence.text, pos, _choice(rng, words))

                    out.append(_Candidate("ImproperNegation", (m, m + 1), build))
                    break
    p = roles.predicate_index()
    if doubles and p is not None and p > 0 and tokens[p - 1].surface in negators:
        if p < 2 or tokens[p - 2].surface not in negators:

            def build(rng, pos=tokens[p - 1].char_start, words=tuple(doubles)):
                return _insert(sentence.text, pos, _choice(rng, words))

            out.append(_Candidate("ImproperNegation", (p - 1, p), build))
    return out


_PHRASE_TAGS = NOMINAL_TAGS | {POSTag.NUM}


def _cand_reverse_host_guest(sentence, roles, resources):
    tokens = sentence.tokens
    out = []
    for k, tok in enumerate(tokens):
        if tok.tag is not POSTag.ADP or tok.surface not in resources.hostguest_markers:
            continue
        a = k
        while a - 1 >= 0 and tokens[a - 1].tag in _PHRASE_TAGS:
            a -= 1
        b = k + 1
        while b < len(tokens) and tokens[b].tag in _PHRASE_TAGS:
            b += 1
        if a == k or b == k + 1:
            continue
        left = _span(sentence, a, k)
        right = _span(sentence, k + 1, b)
        new_text = _swap(sentence.text, left, right)
        out.append(_Candidate("ReverseHostGuest", (a, b), lambda rng, t=new_text: t))
    return out


def _cand_imposing_cause_effect(sentence, roles, resources):
    text = sentence.text
    if "因为" in text or "所以" in text or "，" not in text:
        return []
    if not any(trigger in text for trigger in resources.causal_triggers):
        return []
    comma = text.index("，")
    new_text = "因为" + text[: comma + 1] + "所以" + text[comma + 1 :]
    return [
        _Candidate(
            "ImposingCauseAndEffect", (0, len(sentence.tokens)), lambda rng, t=new_text: t
        )
    ]


# --- MissingComponent ----------------------------------------------------


def _delete_candidate(sentence, fine, token_range, char_range=None):
    a, b = char_range if char_range else _span(sentence, *token_range)
    new_text = _replace(sentence.text, a, b, "")
    if not new_text:
        return []
    return [_Candidate(fine, token_range, lambda rng, t=new_text: t)]


def _cand_lack_subject(sentence, roles, resources):
    subject = roles.first(Role.SUBJECT)
    if subject is None:
        return []
    return _delete_candidate(sentence, "LackSubject", subject)


def _cand_lack_predicate(sentence, roles, resources):
    predicate = roles.first(Role.PREDICATE)
    if predicate is None:
        return []
    return _delete_candidate(sentence, "LackPredicate", predicate)


def _cand_lack_object(sentence, roles, resources):
    obj = roles.first(Role.OBJECT)
    if obj is None:
        return []
    i, j = obj
    if i > 0 and _is_de(sentence.tokens[i - 1]):
        # delete the 的-phrase head, leaving the attribute dangling
        char_range = (sentence.tokens[i - 1].char_start, sentence.tokens[j - 1].char_end)
        return _delete_candidate(sentence, "LackObject", (i - 1, j), char_range)
    return _delete_candidate(sentence, "LackObject", obj)


def _cand_lack_modifier(sentence, roles, resources):
    essential = set(resources.function_words.get("essential_modifier", []))
    out = []
    if len(sentence.tokens) < 2:
        return out
    for k, tok in enumerate(sentence.tokens):
        if tok.surface in essential:
            out.extend(_delete_candidate(sentence, "LackModifier", (k, k + 1)))
    return out


# --- RedundantComponent --------------------------------------------------


def _insertion_candidates(sentence, table, fine):
    out = []
    for k, tok in enumerate(sentence.tokens):
        words = [w for w in table.get(tok.surface, []) if w != tok.surface]
        if not words:
            continue

        def build(rng, pos=tok.char_end, words=tuple(words)):
            return _insert(sentence.text, pos, _choice(rng, words))

        out.append(_Candidate(fine, (k, k + 1), build))
    return out


def _cand_multi_words(sentence, roles, resources):
    return _insertion_candidates(sentence, resources.synonyms, "MultiWords")


def _cand_multi_meanings(sentence, roles, resources):
    return _insertion_candidates(sentence, resources.meaning_pairs, "MultiMeanings")


# --- ImproperCollocation -------------------------------------------------


def _replace_word_candidate(sentence, fine, index, wrong):
    tok = sentence.tokens[index]

    def build(rng, a=tok.char_start, b=tok.char_end, words=tuple(wrong)):
        return _replace(sentence.text, a, b, _choice(rng, words))

    return _Candidate(fine, (index, index + 1), build)


def _find_after(sentence, start, end, surface):
    for m in range(start, end):
        if sentence.tokens[m].surface == surface:
            return m
    return None


def _cand_subject_predicate(sentence, roles, resources):
    p = roles.predicate_index()
    subject = roles.first(Role.SUBJECT)
    if p is None or subject is None:
        return []
    subj_words = _surfaces_in(sentence, subject)
    out = []
    for c in (c for c in resources.collocations if c.kind == "subject_predicate"):
        if c.left in subj_words and sentence.tokens[p].surface == c.right:
            if c.side == "right":
                out.append(_replace_word_candidate(sentence, "SubjectPredicate", p, c.wrong))
            else:
                i = _find_after(sentence, subject[0], subject[1], c.left)
                if i is not None:
                    out.append(_replace_word_candidate(sentence, "SubjectPredicate", i, c.wrong))
    return out


def _cand_predicate_object(sentence, roles, resources):
    p = roles.predicate_index()
    if p is None:
        return []
    cs, ce = _clause_of(sentence, p)
    out = []
    for c in (c for c in resources.collocations if c.kind == "predicate_object"):
        if sentence.tokens[p].surface != c.left:
            continue
        m = _find_after(sentence, p + 1, ce, c.right)
        if m is None:
            continue
        index = p if c.side == "left" else m
        out.append(_replace_word_candidate(sentence, "PredicateObject", index, c.wrong))
    return out


def _cand_subject_object(sentence, roles, resources):
    p = roles.predicate_index()
    subject = roles.first(Role.SUBJECT)
    if p is None or subject is None:
        return []
    cs, ce = _clause_of(sentence, p)
    subj_words = _surfaces_in(sentence, subject)
    out = []
    for c in (c for c in resources.collocations if c.kind == "subject_object"):
        if c.left not in subj_words:
            continue
        m = _find_after(sentence, p + 1, ce, c.right)
        if m is None:
            continue
        if c.side == "right":
            out.append(_replace_word_candidate(sentence, "SubjectObject", m, c.wrong))
        else:
            i = _find_after(sentence, subject[0], subject[1], c.left)
            if i is not None:
                out.append(_replace_word_candidate(sentence, "SubjectObject", i, c.wrong))
    return out


def _cand_modifier_head(sentence, roles, resources):
    tokens = sentence.tokens
    out = []
    for c in (c for c in resources.collocations if c.kind == "modifier_head"):
        for k, tok in enumerate(tokens):
            if tok.surface != c.left:
                continue
            # head within two tokens so a linking 的 may intervene
            for m in range(k + 1, min(k + 3, len(tokens))):
                if tokens[m].surface == c.right:
                    index = k if c.side == "left" else m
                    out.append(
                        _replace_word_candidate(sentence, "ModifierHeadWord", index, c.wrong)
                    )
                    break
    return out


def _cand_connectives(sentence, roles, resources):
    tokens = sentence.tokens
    out = []
    for pair in resources.connective_pairs:
        for i, tok in enumerate(tokens):
            if tok.surface != pair.first:
                continue
            for j in range(i + 1, len(tokens)):
                if tokens[j].surface == pair.second:
                    out.append(_replace_word_candidate(sentence, "Connectives", j, pair.wrong))
                    break
            break
    return out


# --- ImproperWordOrder ---------------------------------------------------

_MODIFIER_TAGS = frozenset(
    {POSTag.ADJ, POSTag.NOUN, POSTag.PROPN, POSTag.NUM, POSTag.ADV, POSTag.PRON}
)


def _cand_multi_attributives(sentence, roles, resources):
    tokens = sentence.tokens
    out = []
    for k in range(len(tokens) - 4):
        w1, de1, w2, de2, head = tokens[k : k + 5]
        if (
            w1.tag in _MODIFIER_TAGS
            and _is_de(de1)
            and w2.tag in _MODIFIER_TAGS
            and _is_de(de2)
            and head.tag in NOMINAL_TAGS
            and w1.surface != w2.surface
        ):
            new_text = _swap(
                sentence.text,
                (w1.char_start, w1.char_end),
                (w2.char_start, w2.char_end),
            )
            out.append(_Candidate("MultiAttributives", (k, k + 5), lambda rng, t=new_text: t))
    return out


def _cand_multi_adverbials(sentence, roles, resources):
    p = roles.predicate_index()
    if p is None:
        return []
    tokens = sentence.tokens
    out = []
    for k in range(p - 1):
        a, b = tokens[k], tokens[k + 1]
        if a.tag is POSTag.ADV and b.tag is POSTag.ADV and a.surface != b.surface:
            new_text = _swap(
                sentence.text, (a.char_start, a.char_end), (b.char_start, b.char_end)
            )
            out.append(_Candidate("MultiAdverbials", (k, k + 2), lambda rng, t=new_text: t))
    return out


def _cand_attributive_head(sentence, roles, resources):
    tokens = sentence.tokens
    out = []
    for a, b in roles.ranges(Role.ATTRIBUTE):
        h = b
        while h < len(tokens) and tokens[h].tag is POSTag.ADJ:
            h += 1
        e = h
        while e < len(tokens) and tokens[e].tag in NOMINAL_TAGS:
            e += 1
        if e == h:  # no nominal head follows the attribute
            continue
        new_text = _swap(sentence.text, _span(sentence, a, b), _span(sentence, b, e))
        out.append(_Candidate("AttributiveHeadWord", (a, e), lambda rng, t=new_text: t))
    return out


def _adp_phrase(sentence, k):
    tokens = sentence.tokens
    j = k + 1
    while j < len(tokens) and tokens[j].tag in _PHRASE_TAGS:
        j += 1
    return j


def _cand_prepositions(sentence, roles, resources):
    tokens = sentence.tokens
    p = roles.predicate_index()
    if p is None:
        return []
    subject = roles.first(Role.SUBJECT) or (0, 0)
    out = []
    for k, tok in enumerate(tokens):
        if tok.tag is not POSTag.ADP:
            continue
        j = _adp_phrase(sentence, k)
        phrase = _span(sentence, k, j)
        if k > p:
            # move a post-predicate ADP phrase in front of the predicate
            pred_start = tokens[p].char_start
            new_text = (
                sentence.text[:pred_start]
                + sentence.text[phrase[0] : phrase[1]]
                + sentence.text[pred_start : phrase[0]]
                + sentence.text[phrase[1] :]
            )
            out.append(_Candidate("Prepositions", (k, j), lambda rng, t=new_text: t))
        # swap the phrase with the adverb/auxiliary run just before it
        r = k
        while (
            r - 1 >= 0
            and (
                tokens[r - 1].tag in (POSTag.ADV, POSTag.X)
                or (
                    tokens[r - 1].tag is POSTag.PRON
                    and not subject[0] <= r - 1 < subject[1]
                )
            )
        ):
            r -= 1
        if r < k:
            new_text = _swap(sentence.text, _span(sentence, r, k), phrase)
            out.append(_Candidate("Prepositions", (r, j), lambda rng, t=new_text: t))
    return out


def _cand_connectives_subject(sentence, roles, resources):
    tokens = sentence.tokens
    out = []
    for cs, ce in _clauses(sentence):
        if cs >= ce or tokens[cs].tag not in NOMINAL_TAGS:
            continue
        j = cs
        while j < ce and tokens[j].tag in NOMINAL_TAGS:
            j += 1
        if j < ce and tokens[j].tag is POSTag.CCONJ:
            new_text = _swap(sentence.text, _span(sentence, cs, j), _span(sentence, j, j + 1))
            out.append(_Candidate("ConnectivesSubject", (cs, j + 1), lambda rng, t=new_text: t))
    return out


def _cand_associated_words(sentence, roles, resources):
    tokens = sentence.tokens
    out = []
    for k in range(len(tokens) - 1):
        if tokens[k].tag is POSTag.ADV and tokens[k + 1].tag is POSTag.VERB:
            new_text = _swap(
                sentence.text,
                (tokens[k].char_start, tokens[k].char_end),
                (tokens[k + 1].char_start, tokens[k + 1].char_end),
            )
            out.append(_Candidate("AssociatedWords", (k, k + 2), lambda rng, t=new_text: t))
    return out


def _cand_adverbial_attributives(sentence, roles, resources):
    out = []
    for adv in roles.ranges(Role.ADVERBIAL):
        for attr in roles.ranges(Role.ATTRIBUTE):
            lo, hi = sorted([adv, attr])
            if lo[1] > hi[0]:
                continue
            new_text = _swap(sentence.text, _span(sentence, *adv), _span(sentence, *attr))
            out.append(
                _Candidate("AdverbialAttributives", (lo[0], hi[1]), lambda rng, t=new_text: t)
            )
    return out


_CANDIDATE_FNS: dict[str, Callable] = {
    "MixedPatterns": _cand_mixed_patterns,
    "MixedSubjects": _cand_mixed_subjects,
    "MixedSentences": _cand_mixed_sentences,
    "MeasureWord": _cand_measure_word,
    "Unreasonable": _cand_unreasonable,
    "ImproperNegation": _cand_improper_negation,
    "ReverseHostGuest": _cand_reverse_host_guest,
    "ImposingCauseAndEffect": _cand_imposing_cause_effect,
    "LackSubject": _cand_lack_subject,
    "LackPredicate": _cand_lack_predicate,
    "LackObject": _cand_lack_object,
    "LackModifier": _cand_lack_modifier,
    "MultiWords": _cand_multi_words,
    "MultiMeanings": _cand_multi_meanings,
    "SubjectPredicate": _cand_subject_predicate,
    "PredicateObject": _cand_predicate_object,
    "SubjectObject": _cand_subject_object,
    "ModifierHeadWord": _cand_modifier_head,
    "Connectives": _cand_connectives,
    "MultiAttributives": _cand_multi_attributives,
    "MultiAdverbials": _cand_multi_adverbials,
    "AttributiveHeadWord": _cand_attributive_head,
    "Prepositions": _cand_prepositions,
    "ConnectivesSubject": _cand_connectives_subject,
    "AssociatedWords": _cand_associated_words,
    "AdverbialAttributives": _cand_adverbial_attributives,
}

COARSE_FINE_IDS: dict[CoarseType, tuple[str, ...]] = {
    coarse: tuple(f for f in FINE_ORDER if FINE_TO_COARSE[f] is coarse)
    for coarse in CoarseType
}


def _dispatch(
    sentence: TaggedSentence,
    roles: RoleSpans,
    resources: RuleResources,
    rng: random.Random,
    fine_ids: Iterable[str],
) -> RuleOutcome | None:
    if not sentence.tokens:
        return None
    candidates: list[_Candidate] = []
    for fine in fine_ids:
        candidates.extend(_CANDIDATE_FNS[fine](sentence, roles, resources))
    while candidates:
        picked = _choice(rng, candidates)
        new_text = picked.build(rng)
        if new_text != sentence.text:
            edits = diff_edits(new_text, sentence.text)
            assert apply_edits(new_text, edits) == sentence.text
            return RuleOutcome(new_text, edits, ErrorType.from_fine(picked.fine), picked.site)
        # identical output counts as a non-match; try the remaining sites
        candidates = [c for c in candidates if c is not picked]
    return None


def apply_fine_rule(
    sentence: TaggedSentence,
    roles: RoleSpans,
    resources: RuleResources,
    rng: random.Random,
    fine_id: str,
) -> RuleOutcome | None:
    """Apply one fine-grained rule; None when it does not match."""
    if fine_id not in RULE_REGISTRY:
        raise KeyError(f"unknown rule id: {fine_id}")
    return _dispatch(sentence, roles, resources, rng, (fine_id,))


def corrupt_structural_confusion(sentence, roles, resources, rng):
    return _dispatch(
        sentence, roles, resources, rng, COARSE_FINE_IDS[CoarseType.STRUCTURAL_CONFUSION]
    )


def corrupt_improper_logicality(sentence, roles, resources, rng):
    return _dispatch(
        sentence, roles, resources, rng, COARSE_FINE_IDS[CoarseType.IMPROPER_LOGICALITY]
    )


def corrupt_missing_component(sentence, roles, resources, rng):
    return _dispatch(
        sentence, roles, resources, rng, COARSE_FINE_IDS[CoarseType.MISSING_COMPONENT]
    )


def corrupt_redundant_component(sentence, roles, resources, rng):
    return _dispatch(
        sentence, roles, resources, rng, COARSE_FINE_IDS[CoarseType.REDUNDANT_COMPONENT]
    )


def corrupt_improper_collocation(sentence, roles, resources, rng):
    return _dispatch(
        sentence, roles, resources, rng, COARSE_FINE_IDS[CoarseType.IMPROPER_COLLOCATION]
    )


def corrupt_improper_word_order(sentence, roles, resources, rng):
    return _dispatch(
        sentence, roles, resources, rng, COARSE_FINE_IDS[CoarseType.IMPROPER_WORD_ORDER]
    )


CORRUPTORS = {
    CoarseType.STRUCTURAL_CONFUSION: corrupt_structural_confusion,
    CoarseType.IMPROPER_LOGICALITY: corrupt_improper_logicality,
    CoarseType.MISSING_COMPONENT: corrupt_missing_component,
    CoarseType.REDUNDANT_COMPONENT: corrupt_redundant_component,
    CoarseType.IMPROPER_COLLOCATION: corrupt_improper_collocation,
    CoarseType.IMPROPER_WORD_ORDER: corrupt_improper_word_order,
}
