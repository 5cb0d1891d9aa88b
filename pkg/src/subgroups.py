"""
Subgroup Presentations - Reidemeister-Schreier and Tietze simplification

A complete coset table of H in G gives a presentation of H. Generators of
the new presentation are named a, b, c, ... and ``schreier_map`` records the
element of G (as a word in G's generators) each one stands for.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .enumeration import CosetTable, todd_coxeter, DEFAULT_MAX_COSETS
from .errors import IncompleteTableError, PresentationParseError
from .words import (
    MAX_GENERATORS, Presentation, Word, cyclic_reduce, cyclic_rotations, free_reduce, invert,
)

logger = logging.getLogger(__name__)


@dataclass
class SubgroupPresentation:
    """Presentation of a finite-index subgroup plus its embedding words"""
    presentation: Presentation
    schreier_map: Dict[str, Word]
    ambient: Presentation
    table: CosetTable
    raw_relators: Tuple[Word, ...] = ()
    simplified: bool = False

    @property
    def index(self) -> int:
        return self.table.index

    def to_dict(self) -> Dict:
        return {
            "index": self.index,
            "normal": self.table.normal,
            "simplified": self.simplified,
            "generators": list(self.presentation.alphabet),
            "relators": list(self.presentation.relators),
            "schreier_map": dict(self.schreier_map),
            "presentation": self.presentation.render(),
        }


def _fresh_names(count: int) -> List[str]:
    if count > MAX_GENERATORS:
        raise PresentationParseError(
            f"subgroup presentation needs {count} generators; at most {MAX_GENERATORS} are supported"
        )
    return [chr(ord("a") + i) for i in range(count)]


def subgroup_presentation(presentation: Presentation, table: CosetTable) -> SubgroupPresentation:
    """
    Reidemeister-Schreier rewriting over the standardization spanning tree.

    Every non-tree edge (c, x) becomes a generator standing for
    rep(c) x rep(c x)^-1; each relator traced from each coset becomes a
    relator. The result has index * (rank - 1) + 1 generators and
    index * #relators relators before simplification.
    """
    if not table.complete or any(d is None for row in table.rows for d in row):
        raise IncompleteTableError("Reidemeister-Schreier needs a complete coset table")
    letters = presentation.letters
    if table.letters != letters:
        raise ValueError("coset table letters do not match the presentation")

    reps = table.representatives()
    tree = set()
    for d in range(1, table.index):
        c = table.act(0, reps[d][:-1])
        col = letters.index(reps[d][-1])
        g = col // 2
        if col % 2 == 0:
            tree.add((c, g))
        else:
            tree.add((d, g))

    edges: Dict[Tuple[int, int], int] = {}
    words: List[Word] = []
    for c in range(table.index):
        for g, name in enumerate(presentation.alphabet):
            if (c, g) in tree:
                continue
            target = table.rows[c][2 * g]
            edges[(c, g)] = len(words)
            words.append(free_reduce(reps[c] + name + invert(reps[target])))
    names = _fresh_names(len(words))

    raw = []
    for c in range(table.index):
        for relator in presentation.relators:
            coset = c
            traced = []
            for ch in relator:
                col = letters.index(ch)
                g = col // 2
                if col % 2 == 0:
                    edge = (coset, g)
                    coset = table.rows[coset][col]
                    if edge in edges:
                        traced.append(names[edges[edge]])
                else:
                    nxt = table.rows[coset][col]
                    edge = (nxt, g)
                    if edge in edges:
                        traced.append(names[edges[edge]].upper())
                    coset = nxt
            raw.append("".join(traced))

    expected = table.index * (presentation.rank - 1) + 1
    if presentation.rank and len(names) != expected:
        raise ArithmeticError(f"index formula violated: {len(names)} generators, expected {expected}")

    result = SubgroupPresentation(
        presentation=Presentation(tuple(names), tuple(raw)),
        schreier_map=dict(zip(names, words)),
        ambient=presentation,
        table=table,
        raw_relators=tuple(raw),
    )
    logger.info("subgroup of index %d: %d generators, %d relators",
                table.index, len(names), len(raw))
    return result


def _substitute(word: Word, name: str, expression: Word) -> Word:
    inverse = invert(expression)
    return "".join(expression if ch == name else inverse if ch == name.upper() else ch for ch in word)


def _cyclic_key(word: Word) -> Word:
    """Same key for a cyclic word, its rotations and its inverse"""
    return min(cyclic_rotations(word) + cyclic_rotations(invert(word)))


class TietzeSimplifier:
    """
    Greedy Tietze moves

    Repeatedly: drop empty and duplicate relators, eliminate a generator
    that occurs exactly once in some relator (shortest relator first), and
    shorten a relator using more than half of another as a cyclic subword.
    Total relator length stays within ``budget`` times the starting length.
    """

    def __init__(self, subgroup: SubgroupPresentation, budget: float = 2.0, max_rounds: int = 1000):
        self.subgroup = subgroup
        self.generators: List[str] = list(subgroup.presentation.alphabet)
        self.relators: List[Word] = list(subgroup.presentation.relators)
        self.schreier_map = dict(subgroup.schreier_map)
        self.limit = max(1, int(budget * max(1, subgroup.presentation.total_length())))
        self.max_rounds = max_rounds

    def _tidy(self):
        seen = set()
        kept = []
        for r in self.relators:
            r = cyclic_reduce(r)
            if not r:
                continue
            key = _cyclic_key(r)
            if key not in seen:
                seen.add(key)
                kept.append(r)
        self.relators = kept

    def _eliminate(self) -> bool:
        candidates = []
        for i, r in enumerate(self.relators):
            for name in self.generators:
                positions = [k for k, ch in enumerate(r) if ch.lower() == name]
                if len(positions) == 1:
                    candidates.append((len(r), i, self.generators.index(name), positions[0]))
        for _, i, g, k in sorted(candidates):
            r = self.relators[i]
            name = self.generators[g]
            rest = r[k + 1:] + r[:k]
            expression = invert(rest) if r[k] == name else rest
            others = [cyclic_reduce(_substitute(s, name, expression)) for j, s in enumerate(self.relators) if j != i]
            if sum(len(s) for s in others) > self.limit:
                continue
            self.relators = others
            self.generators.remove(name)
            del self.schreier_map[name]
            logger.debug("eliminated %s = %s", name, expression or "1")
            return True
        return False

    def _shorten(self) -> bool:
        for i, r in enumerate(self.relators):
            for rotated in cyclic_rotations(r) + cyclic_rotations(invert(r)):
                for length in range(len(rotated), len(rotated) // 2, -1):
                    piece, remainder = rotated[:length], rotated[length:]
                    for j, s in enumerate(self.relators):
                        if j == i or length > len(s):
                            continue
                        doubled = s + s
                        at = doubled.find(piece)
                        if at < 0 or at >= len(s):
                            continue
                        window = doubled[at:at + len(s)]
                        shorter = cyclic_reduce(invert(remainder) + window[length:])
                        if len(shorter) < len(s):
                            self.relators[j] = shorter
                            return True
        return False

    def run(self) -> SubgroupPresentation:
        for _ in range(self.max_rounds):
            self._tidy()
            if self._eliminate():
                continue
            if self._shorten():
                continue
            break
        self._tidy()

        names = [chr(ord("a") + i) for i in range(len(self.generators))]
        rename = {}
        for old, new in zip(self.generators, names):
            rename[old] = new
            rename[old.upper()] = new.upper()
        relators = tuple("".join(rename[ch] for ch in r) for r in self.relators)
        schreier_map = {rename[old]: self.schreier_map[old] for old in self.generators}
        presentation = Presentation(tuple(names), relators)
        logger.info("Tietze: %d -> %d generators, length %d -> %d",
                    self.subgroup.presentation.rank, presentation.rank,
                    self.subgroup.presentation.total_length(), presentation.total_length())
        return SubgroupPresentation(
            presentation=presentation,
            schreier_map=schreier_map,
            ambient=self.subgroup.ambient,
            table=self.subgroup.table,
            raw_relators=self.subgroup.raw_relators,
            simplified=True,
        )


def tietze_simplify(subgroup: SubgroupPresentation, budget: float = 2.0) -> SubgroupPresentation:
    return TietzeSimplifier(subgroup, budget).run()


def derived_subgroup_table(presentation: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Coset table of the commutator subgroup (H1 must be finite)"""
    commutators = []
    names = presentation.alphabet
    for i, x in enumerate(names):
        for y in names[i + 1:]:
            commutators.append(x + y + x.upper() + y.upper())
    table = todd_coxeter(presentation.with_relators(commutators), (), max_cosets)
    return CosetTable(table.letters, table.rows, normal=True)
