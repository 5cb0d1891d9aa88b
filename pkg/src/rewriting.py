"""
Rewriting Systems - shortlex Knuth-Bendix completion for group presentations

The letter order is generator, inverse, next generator, ... (a < A < b < B).
Completion either returns a confluent system, whose normal forms are in
bijection with group elements, or a system flagged ``BUDGET_EXCEEDED`` that
is still sound (every rule is a true equation) but may not decide equality.
"""

import heapq
import logging
import time
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional, Set, Tuple

from .errors import NonConfluentError, PresentationParseError
from .words import IDENTITY, Presentation, Word, cyclic_rotations, invert, render_word

logger = logging.getLogger(__name__)

DEFAULT_MAX_RULES = 20000
DEFAULT_MAX_LHS_LENGTH = 60

Rule = Tuple[Word, Word]


class Comparison(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class CompletionStatus(Enum):
    CONFLUENT = "confluent"
    BUDGET_EXCEEDED = "budget_exceeded"


class LetterOrder:
    """Shortlex order over the letters of an alphabet"""

    def __init__(self, alphabet: Iterable[str]):
        self.alphabet = tuple(alphabet)
        self.letters = "".join(name + name.upper() for name in self.alphabet)
        # map letters onto consecutive code points so str comparison is lexicographic in our order
        self._table = str.maketrans({ch: chr(0x100 + i) for i, ch in enumerate(self.letters)})

    def key(self, word: Word) -> Tuple[int, str]:
        return len(word), word.translate(self._table)

    def compare(self, u: Word, v: Word) -> Comparison:
        ku, kv = self.key(u), self.key(v)
        if ku < kv:
            return Comparison.LESS
        if ku > kv:
            return Comparison.GREATER
        return Comparison.EQUAL

    def render(self) -> str:
        return " ".join(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, LetterOrder) and other.letters == self.letters

    def __hash__(self) -> int:
        return hash(self.letters)


def shortlex_compare(u: Word, v: Word, order: LetterOrder) -> Comparison:
    return order.compare(u, v)


class _RuleIndex:
    """Rules keyed by left-hand side plus the set of left-hand-side lengths"""

    def __init__(self, rules: Optional[Dict[Word, Word]] = None):
        self.rules: Dict[Word, Word] = {}
        self._length_counts: Counter = Counter()
        self.lengths: List[int] = []
        for lhs, rhs in (rules or {}).items():
            self.add(lhs, rhs)

    def add(self, lhs: Word, rhs: Word):
        self.rules[lhs] = rhs
        self._length_counts[len(lhs)] += 1
        if self._length_counts[len(lhs)] == 1:
            self.lengths = sorted(self._length_counts)

    def remove(self, lhs: Word) -> Word:
        rhs = self.rules.pop(lhs)
        self._length_counts[len(lhs)] -= 1
        if self._length_counts[len(lhs)] == 0:
            del self._length_counts[len(lhs)]
            self.lengths = sorted(self._length_counts)
        return rhs

    def reduce(self, word: Word) -> Word:
        """
        Rewrite to the irreducible form.

        Letters are pushed onto a stack; after each push the suffixes of the
        stack with a rule-lhs length are looked up (shortest first) and the
        first match is replaced by its rhs, which is re-fed letter by letter.
        """
        rules = self.rules
        lengths = self.lengths
        if not rules:
            return word
        stack: List[str] = []
        todo = list(reversed(word))
        while todo:
            stack.append(todo.pop())
            size = len(stack)
            for n in lengths:
                if n > size:
                    break
                rhs = rules.get("".join(stack[size - n:]))
                if rhs is not None:
                    del stack[size - n:]
                    todo.extend(reversed(rhs))
                    break
        return "".join(stack)

    def is_reducible(self, word: Word) -> bool:
        for n in self.lengths:
            if n > len(word):
                break
            for i in range(len(word) - n + 1):
                if word[i:i + n] in self.rules:
                    return True
        return False


def _critical_pairs(rules: Dict[Word, Word], lhs: Word, partners: Dict[Word, Set[Word]],
                    suffixes: Dict[Word, Set[Word]]) -> Iterable[Tuple[Word, Word]]:
    """Both sides of every overlap between ``lhs`` and the indexed rules"""
    rhs = rules[lhs]
    for k in range(1, len(lhs)):
        # lhs = p s, other = s q  ->  rhs q  vs  p other_rhs
        for other in partners.get(lhs[k:], ()):
            tail = other[len(lhs) - k:]
            yield rhs + tail, lhs[:k] + rules[other]
        # other = p s, lhs = s q  ->  other_rhs q  vs  p rhs
        for other in suffixes.get(lhs[:k], ()):
            if other == lhs:
                continue
            tail = lhs[k:]
            yield rules[other] + tail, other[:len(other) - k] + rhs


def _overlap_indexes(lhs_set: Iterable[Word]) -> Tuple[Dict[Word, Set[Word]], Dict[Word, Set[Word]]]:
    prefixes: Dict[Word, Set[Word]] = defaultdict(set)
    suffixes: Dict[Word, Set[Word]] = defaultdict(set)
    for lhs in lhs_set:
        for k in range(1, len(lhs)):
            prefixes[lhs[:k]].add(lhs)
            suffixes[lhs[-k:]].add(lhs)
    return prefixes, suffixes


@dataclass
class CompletionStats:
    """Counters collected during completion"""
    rule_count: int = 0
    max_lhs_length: int = 0
    equations_processed: int = 0
    overlaps_processed: int = 0
    verification_rounds: int = 0
    elapsed_seconds: float = 0.0
    stop_reason: str = ""

    def to_dict(self) -> Dict:
        return {
            "rule_count": self.rule_count,
            "max_lhs_length": self.max_lhs_length,
            "equations_processed": self.equations_processed,
            "overlaps_processed": self.overlaps_processed,
            "verification_rounds": self.verification_rounds,
            "elapsed_seconds": round(self.elapsed_seconds, 3),
            "stop_reason": self.stop_reason,
        }


@dataclass
class RewritingSystem:
    """
    Length-reducing rewriting system for one presentation

    ``rules`` are ordered by the shortlex order of their left-hand sides so
    serialisation is deterministic. Only ``CONFLUENT`` systems may be used to
    decide equality.
    """
    alphabet: Tuple[str, ...]
    rules: Tuple[Rule, ...]
    status: CompletionStatus
    presentation_digest: str = ""
    stats: CompletionStats = field(default_factory=CompletionStats)

    def __post_init__(self):
        self.order = LetterOrder(self.alphabet)
        self.rules = tuple(sorted(self.rules, key=lambda rule: self.order.key(rule[0])))
        self._index = _RuleIndex(dict(self.rules))

    @property
    def confluent(self) -> bool:
        return self.status is CompletionStatus.CONFLUENT

    def require_confluent(self):
        if not self.confluent:
            raise NonConfluentError(
                f"rewriting system did not complete ({self.stats.stop_reason or 'budget exceeded'}); "
                "equality of words cannot be decided"
            )

    def rewrite(self, word: Word) -> Word:
        """Irreducible form of ``word``; the normal form when confluent"""
        return self._index.reduce(word)

    def word_equal(self, u: Word, v: Word) -> bool:
        self.require_confluent()
        return self.rewrite(u) == self.rewrite(v)

    def is_reducible(self, word: Word) -> bool:
        return self._index.is_reducible(word)

    def unresolved_critical_pairs(self, limit: int = 0) -> List[Tuple[Word, Word]]:
        """Critical pairs whose sides have different irreducible forms"""
        rules = self._index.rules
        prefixes, suffixes = _overlap_indexes(rules)
        unresolved = []
        for lhs in rules:
            for left, right in _critical_pairs(rules, lhs, prefixes, suffixes):
                if self.rewrite(left) != self.rewrite(right):
                    unresolved.append((left, right))
                    if limit and len(unresolved) >= limit:
                        return unresolved
        return unresolved

    def to_text(self) -> str:
        lines = [
            "# rewriting system",
            f"order: {self.order.render()}",
            f"status: {self.status.value}",
            f"digest: {self.presentation_digest}",
        ]
        lines.extend(f"{render_word(lhs)} -> {render_word(rhs)}" for lhs, rhs in self.rules)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RewritingSystem":
        """Inverse of ``to_text``"""
        header: Dict[str, str] = {}
        rules: List[Rule] = []
        for line_no, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "->" in line:
                lhs, _, rhs = line.partition("->")
                lhs, rhs = lhs.strip(), rhs.strip()
                rules.append((lhs if lhs != "1" else IDENTITY, rhs if rhs != "1" else IDENTITY))
                continue
            key, sep, value = line.partition(":")
            if not sep:
                raise PresentationParseError(f"unrecognised line '{line}'", line_no, 1)
            header[key.strip()] = value.strip()
        if "order" not in header or "status" not in header:
            raise PresentationParseError("rewriting system text needs 'order:' and 'status:' lines")
        letters = header["order"].split()
        alphabet = tuple(ch for ch in letters if ch.islower())
        system = cls(
            alphabet=alphabet,
            rules=tuple(rules),
            status=CompletionStatus(header["status"]),
            presentation_digest=header.get("digest", ""),
        )
        system.stats.rule_count = len(rules)
        system.stats.max_lhs_length = max((len(l) for l, _ in rules), default=0)
        return system


def rewrite(system: RewritingSystem, word: Word) -> Word:
    return system.rewrite(word)


def word_equal(system: RewritingSystem, u: Word, v: Word) -> bool:
    return system.word_equal(u, v)


class KnuthBendix:
    """
    Shortlex completion state

    Pending work lives in one heap ordered by total length: equations still
    to be oriented, and accepted rules whose overlaps have not been formed.
    New rules inter-reduce the system immediately.
    """

    _EQUATION = 0
    _OVERLAPS = 1

    def __init__(
        self,
        presentation: Presentation,
        max_rules: int = DEFAULT_MAX_RULES,
        max_lhs_length: int = DEFAULT_MAX_LHS_LENGTH,
        deadline: Optional[float] = None,
    ):
        self.presentation = presentation
        self.order = LetterOrder(presentation.alphabet)
        self.max_rules = max_rules
        self.max_lhs_length = max_lhs_length
        self.deadline = deadline
        self.index = _RuleIndex()
        self.heap: List[Tuple[int, int, int, Word, Word]] = []
        self.processed: Set[Word] = set()
        self.prefixes: Dict[Word, Set[Word]] = defaultdict(set)
        self.suffixes: Dict[Word, Set[Word]] = defaultdict(set)
        self.stats = CompletionStats()
        self._seq = 0
        self.dropped = 0
        self._seeds = self._seed_equations()

    def _seed_equations(self) -> List[Tuple[Word, Word]]:
        seeds = []
        for ch in self.order.letters:
            seeds.append((ch + ch.swapcase(), IDENTITY))
        for relator in self.presentation.relators:
            for word in set(cyclic_rotations(relator)) | set(cyclic_rotations(invert(relator))):
                seeds.append((word, IDENTITY))
        return seeds

    def _push(self, kind: int, u: Word, v: Word):
        self._seq += 1
        heapq.heappush(self.heap, (len(u) + len(v), kind, self._seq, u, v))

    def _orient(self, u: Word, v: Word) -> Optional[Rule]:
        u, v = self.index.reduce(u), self.index.reduce(v)
        if u == v:
            return None
        if self.order.key(u) > self.order.key(v):
            return u, v
        return v, u

    def _add_rule(self, lhs: Word, rhs: Word) -> bool:
        if len(lhs) > self.max_lhs_length:
            logger.debug("dropping equation with lhs length %d", len(lhs))
            self.stats.stop_reason = f"lhs length over {self.max_lhs_length}"
            self.dropped += 1
            return False
        index = self.index
        for other in [l for l in index.rules if len(l) > len(lhs) and lhs in l]:
            other_rhs = index.remove(other)
            self._forget(other)
            self._push(self._EQUATION, other, other_rhs)
        index.add(lhs, rhs)
        for other, other_rhs in list(index.rules.items()):
            if other != lhs and lhs in other_rhs:
                index.rules[other] = index.reduce(other_rhs)
        self._push(self._OVERLAPS, lhs, rhs)
        return True

    def _forget(self, lhs: Word):
        if lhs in self.processed:
            self.processed.discard(lhs)
            for k in range(1, len(lhs)):
                self.prefixes[lhs[:k]].discard(lhs)
                self.suffixes[lhs[-k:]].discard(lhs)

    def _process_overlaps(self, lhs: Word):
        if lhs not in self.index.rules or lhs in self.processed:
            return
        self.processed.add(lhs)
        for k in range(1, len(lhs)):
            self.prefixes[lhs[:k]].add(lhs)
            self.suffixes[lhs[-k:]].add(lhs)
        self.stats.overlaps_processed += 1
        for left, right in _critical_pairs(self.index.rules, lhs, self.prefixes, self.suffixes):
            self._push(self._EQUATION, left, right)

    def _out_of_budget(self) -> bool:
        if len(self.index.rules) > self.max_rules:
            self.stats.stop_reason = f"more than {self.max_rules} rules"
            return True
        if self.deadline is not None and time.monotonic() > self.deadline:
            self.stats.stop_reason = "deadline reached"
            return True
        return False

    def _drain(self) -> bool:
        """Process the heap until empty; False when a budget stops the run"""
        steps = 0
        while self.heap:
            steps += 1
            if steps % 256 == 0 and self._out_of_budget():
                return False
            _, kind, _, u, v = heapq.heappop(self.heap)
            if kind == self._OVERLAPS:
                self._process_overlaps(u)
                continue
            self.stats.equations_processed += 1
            rule = self._orient(u, v)
            if rule is not None:
                self._add_rule(*rule)
        return not self._out_of_budget()

    def _verify(self) -> bool:
        """Full check: seeds hold and every critical pair resolves; failures are re-queued"""
        self.stats.verification_rounds += 1
        rules = self.index.rules
        prefixes, suffixes = _overlap_indexes(rules)
        pending = 0
        for u, v in self._seeds:
            if self.index.reduce(u) != self.index.reduce(v):
                self._push(self._EQUATION, u, v)
                pending += 1
        for lhs in list(rules):
            for left, right in _critical_pairs(rules, lhs, prefixes, suffixes):
                if self.index.reduce(left) != self.index.reduce(right):
                    self._push(self._EQUATION, left, right)
                    pending += 1
        logger.debug("verification round %d: %d unresolved", self.stats.verification_rounds, pending)
        return pending == 0

    def run(self) -> RewritingSystem:
        started = time.monotonic()
        for u, v in self._seeds:
            self._push(self._EQUATION, u, v)

        status = CompletionStatus.BUDGET_EXCEEDED
        while True:
            self.dropped = 0
            if not self._drain():
                break
            if self._verify():
                status = CompletionStatus.CONFLUENT
                self.stats.stop_reason = ""
                break
            if self.dropped:
                # unresolved pairs need rules longer than the lhs budget
                break

        rules = tuple(self.index.rules.items())
        self.stats.rule_count = len(rules)
        self.stats.max_lhs_length = max((len(l) for l, _ in rules), default=0)
        self.stats.elapsed_seconds = time.monotonic() - started
        logger.info("completion %s: %d rules, max lhs %d, %.2fs",
                    status.value, self.stats.rule_count, self.stats.max_lhs_length,
                    self.stats.elapsed_seconds)
        return RewritingSystem(
            alphabet=self.presentation.alphabet,
            rules=rules,
            status=status,
            presentation_digest=self.presentation.digest(),
            stats=self.stats,
        )


def knuth_bendix(
    presentation: Presentation,
    max_rules: int = DEFAULT_MAX_RULES,
    max_lhs_length: int = DEFAULT_MAX_LHS_LENGTH,
    deadline: Optional[float] = None,
) -> RewritingSystem:
    """Complete the presentation under shortlex; never loops past the budgets"""
    return KnuthBendix(presentation, max_rules, max_lhs_length, deadline).run()
