"""
Words and Presentations - free-group arithmetic on letter-notation words

A word is a plain string: a lowercase letter is a generator, the matching
uppercase letter is its inverse and the empty string is the identity
(rendered as ``1``).
"""

import hashlib
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, NamedTuple, Sequence, Tuple

from .errors import PresentationParseError

logger = logging.getLogger(__name__)

Word = str
IDENTITY: Word = ""
MAX_GENERATORS = 26


class Letter(NamedTuple):
    """A generator index with an inversion flag"""
    generator: int
    inverted: bool


def render_word(word: Word) -> str:
    """Letter notation with ``1`` for the identity"""
    return word if word else "1"


def free_reduce(word: Word) -> Word:
    """Cancel adjacent ``xX`` / ``Xx`` pairs until none remain"""
    out: List[str] = []
    for ch in word:
        if out and out[-1] == ch.swapcase():
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def invert(word: Word) -> Word:
    """Reverse the word and flip every letter"""
    return word[::-1].swapcase()


def cyclic_reduce(word: Word) -> Word:
    """Free reduction followed by stripping mutually inverse end letters"""
    word = free_reduce(word)
    start, end = 0, len(word)
    while end - start >= 2 and word[start] == word[end - 1].swapcase():
        start += 1
        end -= 1
    return word[start:end]


def cyclic_rotations(word: Word) -> List[Word]:
    return [word[i:] + word[:i] for i in range(len(word))] or [IDENTITY]


def exponent_sums(word: Word, alphabet: Sequence[str]) -> List[int]:
    """Signed count of each generator in ``word``"""
    position = {name: i for i, name in enumerate(alphabet)}
    sums = [0] * len(alphabet)
    for ch in word:
        sums[position[ch.lower()]] += 1 if ch.islower() else -1
    return sums


@dataclass(frozen=True)
class Presentation:
    """
    Finite presentation <alphabet | relators>

    Relators are stored cyclically reduced; empty relators are dropped on
    construction. Generator names are distinct single lowercase letters.
    """
    alphabet: Tuple[str, ...]
    relators: Tuple[Word, ...] = ()

    def __post_init__(self):
        alphabet = tuple(self.alphabet)
        if len(alphabet) > MAX_GENERATORS:
            raise PresentationParseError(f"at most {MAX_GENERATORS} generators are supported")
        seen = set()
        for name in alphabet:
            if len(name) != 1 or not ("a" <= name <= "z"):
                raise PresentationParseError(f"generator name '{name}' is not a single lowercase letter")
            if name in seen:
                raise PresentationParseError(f"duplicate generator '{name}'")
            seen.add(name)
        relators = []
        for relator in self.relators:
            for ch in relator:
                if ch.lower() not in seen:
                    raise PresentationParseError(f"letter '{ch}' is not in the alphabet")
            reduced = cyclic_reduce(relator)
            if reduced:
                relators.append(reduced)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "relators", tuple(relators))

    @property
    def rank(self) -> int:
        return len(self.alphabet)

    @property
    def letters(self) -> str:
        """Every letter in the order generator, inverse, next generator, ..."""
        return "".join(name + name.upper() for name in self.alphabet)

    def letter(self, ch: str) -> Letter:
        return Letter(self.alphabet.index(ch.lower()), ch.isupper())

    def spell(self, letters: Iterable[Letter]) -> Word:
        return "".join(
            self.alphabet[l.generator].upper() if l.inverted else self.alphabet[l.generator]
            for l in letters
        )

    def check_word(self, word: Word) -> Word:
        """Validate that every letter of ``word`` belongs to the alphabet"""
        for ch in word:
            if not ch.isalpha() or ch.lower() not in self.alphabet:
                raise PresentationParseError(f"letter '{ch}' is not in the alphabet")
        return word

    def with_relators(self, extra: Iterable[Word]) -> "Presentation":
        return Presentation(self.alphabet, self.relators + tuple(extra))

    def render(self) -> str:
        """Text form accepted by ``parse_presentation``"""
        lines = ["gens: " + " ".join(self.alphabet) if self.alphabet else "gens:"]
        lines.extend(f"rel: {r}" for r in self.relators)
        return "\n".join(lines) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.render().encode("utf-8")).hexdigest()

    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)


@dataclass(frozen=True)
class GeneratorMap:
    """Homomorphism from the free group on ``source`` given by generator images"""
    source: Tuple[str, ...]
    images: Tuple[Word, ...]
    name: str = ""

    def __post_init__(self):
        if len(self.source) != len(self.images):
            raise ValueError("one image per source generator is required")
        object.__setattr__(self, "source", tuple(self.source))
        object.__setattr__(self, "images", tuple(self.images))

    def as_dict(self) -> Dict[str, Word]:
        return dict(zip(self.source, self.images))


def apply_map(mapping: GeneratorMap, word: Word) -> Word:
    """Substitute each letter by its image (inverted for uppercase), then free-reduce"""
    images = mapping.as_dict()
    parts = []
    for ch in word:
        image = images[ch.lower()]
        parts.append(invert(image) if ch.isupper() else image)
    return free_reduce("".join(parts))


def verify_conjugate_product(
    target: Word,
    factors: Sequence[Tuple[Word, int, int]],
    presentation: Presentation,
) -> bool:
    """
    Check ``target`` equals prod u_i r_i^(e_i) u_i^-1 in the free group.

    Each factor is ``(conjugator, relator index, exponent +1 or -1)``.
    """
    parts = []
    for conjugator, index, sign in factors:
        relator = presentation.relators[index]
        parts.append(conjugator + (relator if sign > 0 else invert(relator)) + invert(conjugator))
    return free_reduce("".join(parts)) == free_reduce(target)


def _parse_error(message: str, line_no: int, column: int) -> PresentationParseError:
    return PresentationParseError(message, line=line_no, column=column)


def parse_word(text: str, presentation: Presentation) -> Word:
    """Parse a single word (``1`` is the identity)"""
    text = text.strip()
    if text == "1":
        return IDENTITY
    for column, ch in enumerate(text, 1):
        if not ch.isalpha() or ch.lower() not in presentation.alphabet:
            raise PresentationParseError(f"letter '{ch}' is not in the alphabet", 1, column)
    return text


def parse_presentation(text: str) -> Presentation:
    """
    Parse the line-oriented presentation grammar.

    ``gens: a b`` exactly once, then any number of ``rel: <word>`` lines.
    Blank lines and ``#`` comments are ignored.
    """
    alphabet: List[str] = []
    relators: List[Word] = []
    gens_seen = False

    for line_no, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        offset = len(raw) - len(raw.lstrip())
        key, sep, rest = stripped.partition(":")
        key = key.strip()
        if not sep or key not in ("gens", "rel"):
            raise _parse_error(f"expected 'gens:' or 'rel:', found '{stripped}'", line_no, offset + 1)
        rest_column = offset + len(key) + 2

        if key == "gens":
            if gens_seen:
                raise _parse_error("'gens:' given more than once", line_no, offset + 1)
            gens_seen = True
            column = rest_column
            for token in rest.split(" "):
                if token:
                    if len(token) != 1 or not ("a" <= token <= "z"):
                        raise _parse_error(f"generator name '{token}' is not a single lowercase letter", line_no, column)
                    if token in alphabet:
                        raise _parse_error(f"duplicate generator '{token}'", line_no, column)
                    alphabet.append(token)
                column += len(token) + 1
            if len(alphabet) > MAX_GENERATORS:
                raise _parse_error(f"at most {MAX_GENERATORS} generators are supported", line_no, offset + 1)
            continue

        if not gens_seen:
            raise _parse_error("'rel:' before 'gens:'", line_no, offset + 1)
        lead = len(rest) - len(rest.lstrip())
        word = rest.strip()
        if not word:
            raise _parse_error("empty relator", line_no, rest_column)
        if word == "1":
            continue
        for i, ch in enumerate(word):
            if not ch.isalpha() or ch.lower() not in alphabet:
                raise _parse_error(f"letter '{ch}' is not in the alphabet", line_no, rest_column + lead + i)
        relators.append(word)

    if not gens_seen:
        raise _parse_error("missing 'gens:' line", 0, 0)

    presentation = Presentation(tuple(alphabet), tuple(relators))
    logger.debug("parsed presentation with %d generators, %d relators",
                 presentation.rank, len(presentation.relators))
    return presentation
