"""Tests for shortlex Knuth-Bendix completion and rewriting"""

import itertools
import random

import pytest

from src.errors import NonConfluentError, PresentationParseError
from src.rewriting import (
    Comparison, CompletionStatus, LetterOrder, RewritingSystem, knuth_bendix, rewrite,
    shortlex_compare, word_equal,
)
from src.weeks import R1, R2
from src.words import Presentation, invert

ORDER = LetterOrder(("a", "b"))


def _words(letters: str, max_length: int):
    for n in range(max_length + 1):
        for t in itertools.product(letters, repeat=n):
            yield "".join(t)


def test_shortlex_compare():
    assert shortlex_compare("b", "aa", ORDER) is Comparison.LESS
    assert shortlex_compare("aA", "ab", ORDER) is Comparison.LESS
    assert shortlex_compare("ab", "ab", ORDER) is Comparison.EQUAL
    assert shortlex_compare("B", "b", ORDER) is Comparison.GREATER
    assert ORDER.render() == "a A b B"


def test_z3_completion(z3_system):
    assert z3_system.confluent
    assert dict(z3_system.rules) == {"aA": "", "Aa": "", "aa": "A", "AA": "a"}
    assert rewrite(z3_system, "aaaa") == "a"
    assert rewrite(z3_system, "") == ""
    normal_forms = {z3_system.rewrite(w) for w in _words("aA", 5)}
    assert normal_forms == {"", "a", "A"}


def test_free_group_has_only_trivial_rules(free2):
    system = knuth_bendix(free2)
    assert system.confluent
    assert dict(system.rules) == {"aA": "", "Aa": "", "bB": "", "Bb": ""}
    assert system.rewrite("abBA") == ""
    assert not word_equal(system, "ab", "ba")


def test_rules_are_oriented_and_interreduced(s3_system):
    rules = dict(s3_system.rules)
    for lhs, rhs in rules.items():
        assert s3_system.order.key(lhs) > s3_system.order.key(rhs)
        assert s3_system.rewrite(rhs) == rhs
        for other in rules:
            if other != lhs:
                assert other not in lhs


def test_s3_normal_forms_match_the_group(s3_system):
    assert s3_system.confluent
    normal_forms = {s3_system.rewrite(w) for w in _words("aAbB", 6)}
    assert len(normal_forms) == 6


def test_s3_multiplication_matches_permutations(s3_system):
    # a -> transposition (0 1), b -> 3-cycle (0 1 2); words act left to right
    perms = {"a": (1, 0, 2), "A": (1, 0, 2), "b": (1, 2, 0), "B": (2, 0, 1)}

    def evaluate(word):
        p = (0, 1, 2)
        for ch in word:
            p = tuple(perms[ch][i] for i in p)
        return p

    normal_forms = sorted({s3_system.rewrite(w) for w in _words("aAbB", 4)})
    images = {evaluate(w) for w in normal_forms}
    assert len(images) == 6
    for u in normal_forms:
        for v in normal_forms:
            assert evaluate(s3_system.rewrite(u + v)) == evaluate(u + v)


def test_no_unresolved_critical_pairs(s3_system, z3_system):
    assert s3_system.unresolved_critical_pairs() == []
    assert z3_system.unresolved_critical_pairs() == []


def test_weeks_completes(weeks_system):
    assert weeks_system.status is CompletionStatus.CONFLUENT
    assert weeks_system.stats.rule_count == len(weeks_system.rules)
    assert weeks_system.rewrite(R1) == ""
    assert weeks_system.rewrite(R2) == ""
    assert weeks_system.word_equal("bababAbbA", "")
    assert weeks_system.unresolved_critical_pairs(limit=1) == []


@pytest.mark.parametrize("seed", range(8))
def test_rewrite_is_idempotent_and_respects_inverses(weeks_system, seed):
    rng = random.Random(seed)
    w = "".join(rng.choice("aAbB") for _ in range(rng.randint(0, 25)))
    normal = weeks_system.rewrite(w)
    assert weeks_system.rewrite(normal) == normal
    assert len(normal) <= len(w)
    assert weeks_system.rewrite(w + invert(w)) == ""
    assert weeks_system.rewrite(normal + invert(normal)) == ""


def test_budget_exceeded_is_flagged_and_refused():
    system = knuth_bendix(Presentation(("a", "b"), (R1, R2)), max_rules=5)
    assert system.status is CompletionStatus.BUDGET_EXCEEDED
    assert system.stats.stop_reason
    with pytest.raises(NonConfluentError):
        system.require_confluent()
    with pytest.raises(NonConfluentError):
        system.word_equal("a", "a")


def test_lhs_budget():
    system = knuth_bendix(Presentation(("a", "b"), (R1, R2)), max_lhs_length=3)
    assert system.status is CompletionStatus.BUDGET_EXCEEDED


def test_text_round_trip(s3_system):
    text = s3_system.to_text()
    assert text.startswith("# rewriting system\norder: a A b B\nstatus: confluent\n")
    loaded = RewritingSystem.from_text(text)
    assert loaded.rules == s3_system.rules
    assert loaded.status is CompletionStatus.CONFLUENT
    assert loaded.presentation_digest == s3_system.presentation_digest


def test_from_text_rejects_garbage():
    with pytest.raises(PresentationParseError):
        RewritingSystem.from_text("order: a A\nnonsense\n")
    with pytest.raises(PresentationParseError):
        RewritingSystem.from_text("aa -> 1\n")


def test_trivial_group_of_no_generators():
    system = knuth_bendix(Presentation(()))
    assert system.confluent
    assert system.rules == ()
    assert system.rewrite("") == ""
