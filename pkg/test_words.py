"""Tests for words, presentations and the presentation grammar"""

import random

import pytest

from src.errors import PresentationParseError
from src.words import (
    GeneratorMap, Presentation, apply_map, cyclic_reduce, cyclic_rotations, exponent_sums,
    free_reduce, invert, parse_presentation, parse_word, render_word, verify_conjugate_product,
)
from src.weeks import CONJUGATE_FACTORIZATION, PHI, PSI, R1, R2, WEEKS


def _random_word(rng: random.Random, length: int, letters: str = "aAbB") -> str:
    return "".join(rng.choice(letters) for _ in range(length))


def test_free_reduce():
    assert free_reduce("aAb") == "b"
    assert free_reduce("abBA") == ""
    assert free_reduce("aabAAB") == "aabAAB"
    assert free_reduce("") == ""


def test_invert():
    assert invert("ab") == "BA"
    assert invert("") == ""
    assert invert(invert("aBBa")) == "aBBa"


def test_cyclic_reduce():
    assert cyclic_reduce("aAa") == "a"
    assert cyclic_reduce("abA") == "b"
    assert cyclic_reduce("baB") == "a"
    assert cyclic_reduce("aA") == ""
    assert cyclic_reduce("aab") == "aab"


def test_render_word():
    assert render_word("") == "1"
    assert render_word("aB") == "aB"


@pytest.mark.parametrize("seed", range(10))
def test_free_reduce_properties(seed):
    rng = random.Random(seed)
    w = _random_word(rng, rng.randint(0, 30))
    reduced = free_reduce(w)
    assert free_reduce(reduced) == reduced
    assert all(x != y.swapcase() for x, y in zip(reduced, reduced[1:]))
    assert free_reduce(w + invert(w)) == ""
    assert exponent_sums(w, ("a", "b")) == exponent_sums(reduced, ("a", "b"))


@pytest.mark.parametrize("seed", range(5))
def test_cyclic_reduce_is_a_conjugate(seed):
    rng = random.Random(100 + seed)
    w = free_reduce(_random_word(rng, 20))
    c = cyclic_reduce(w)
    assert cyclic_reduce(c) == c
    if c:
        assert c[0] != c[-1].swapcase()
    assert exponent_sums(c, ("a", "b")) == exponent_sums(w, ("a", "b"))


def test_cyclic_rotations():
    assert cyclic_rotations("abc") == ["abc", "bca", "cab"]
    assert cyclic_rotations("") == [""]


def test_exponent_sums():
    assert exponent_sums(R1, ("a", "b")) == [0, 5]
    assert exponent_sums(R2, ("a", "b")) == [5, 0]


def test_parse_weeks():
    p = parse_presentation("# Weeks\ngens: a b\nrel: bababAbbA\nrel: ababaBaaB\n")
    assert p.alphabet == ("a", "b")
    assert p.relators == (R1, R2)
    assert p == WEEKS


def test_parse_reduces_relators():
    p = parse_presentation("gens: a\nrel: aAa")
    assert p.relators == ("a",)


def test_parse_drops_empty_relators():
    p = parse_presentation("gens: a b\nrel: 1\nrel: abBA\n")
    assert p.relators == ()


def test_parse_free_group():
    p = parse_presentation("gens: a b")
    assert p.rank == 2 and p.relators == ()


def test_render_round_trips():
    text = WEEKS.render()
    assert text == "gens: a b\nrel: bababAbbA\nrel: ababaBaaB\n"
    assert parse_presentation(text) == WEEKS


def test_digest_is_stable():
    assert WEEKS.digest() == parse_presentation(WEEKS.render()).digest()
    assert WEEKS.digest() != Presentation(("a", "b"), (R1,)).digest()


@pytest.mark.parametrize("text, line, column", [
    ("gens: a\nrel: ab", 2, 7),
    ("gens: a a", 1, 9),
    ("rel: a\ngens: a", 1, 1),
    ("gens: a\ngens: b", 2, 1),
    ("gens: a\nfoo: a", 2, 1),
    ("gens: ab", 1, 7),
])
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(PresentationParseError) as excinfo:
        parse_presentation(text)
    assert excinfo.value.line == line
    assert excinfo.value.column == column
    assert str(excinfo.value).startswith(f"line {line}, column {column}:")


def test_missing_gens_line():
    with pytest.raises(PresentationParseError):
        parse_presentation("# nothing here\n")


def test_too_many_generators():
    letters = " ".join(chr(ord("a") + i) for i in range(26))
    assert parse_presentation(f"gens: {letters}").rank == 26
    with pytest.raises(PresentationParseError):
        Presentation(tuple(f"g{i}" for i in range(27)))


def test_parse_word():
    assert parse_word("1", WEEKS) == ""
    assert parse_word(" aBA ", WEEKS) == "aBA"
    with pytest.raises(PresentationParseError):
        parse_word("ac", WEEKS)


def test_letters_and_spell():
    assert WEEKS.letters == "aAbB"
    letters = [WEEKS.letter(ch) for ch in "aBbA"]
    assert letters[1].generator == 1 and letters[1].inverted
    assert WEEKS.spell(letters) == "aBbA"


def test_apply_map_sends_relators_to_relator_consequences():
    assert apply_map(PHI, "ab") == "ba"
    assert apply_map(PSI, "b") == "a"
    assert apply_map(PSI, "A") == "bA"
    assert apply_map(GeneratorMap(("a",), ("",)), "aaa") == ""


def test_conjugate_factorization():
    target, factors = CONJUGATE_FACTORIZATION
    assert verify_conjugate_product(target, factors, WEEKS)
    assert not verify_conjugate_product(target, [("", 1, 1)], WEEKS)
