"""
Enumeration - word balls, multiplication tables and coset tables

Ball elements are shortlex normal forms numbered by (length, shortlex) so the
identity is 0 and every element's prefix has a smaller id. Coset tables are
standardized: cosets are numbered in breadth-first order over the letter
columns starting from coset 0.
"""

import logging
import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import CosetOverflow, IncompleteTableError, ResourceExceeded
from .rewriting import RewritingSystem
from .words import IDENTITY, Presentation, Word, invert

logger = logging.getLogger(__name__)

OUT_OF_BALL = -1
DEFAULT_MAX_BALL_SIZE = 200000
DEFAULT_TABLE_CAP = 20000
DEFAULT_MAX_COSETS = 100000
DEFAULT_MAX_LOW_INDEX_NODES = 1000000
_ROW_CHUNK = 1024


def _id_dtype(size: int):
    """Smallest unsigned dtype whose maximum can serve as the out-of-ball marker"""
    if size < np.iinfo(np.uint8).max:
        return np.uint8
    if size < np.iinfo(np.uint16).max:
        return np.uint16
    return np.uint32


def _check_deadline(deadline: Optional[float], what: str):
    if deadline is not None and time.monotonic() > deadline:
        raise ResourceExceeded(f"deadline reached while {what}")


def _next_sphere(system: RewritingSystem, frontier: Sequence[Word]) -> List[Word]:
    """Normal forms one letter longer than the (geodesic) frontier words"""
    letters = system.order.letters
    found = set()
    for w in frontier:
        last = w[-1:].swapcase()
        for x in letters:
            if x == last:
                continue
            v = w + x
            if system.rewrite(v) == v:
                found.add(v)
    return sorted(found, key=system.order.key)


class Ball:
    """
    Elements of length at most ``radius`` in a confluent system

    ``table`` is either a dense ``size x size`` array of product ids (the
    dtype maximum marks a product outside the ball) or ``None``, in which
    case products are computed on demand by rewriting and memoized.
    """

    def __init__(self, system: RewritingSystem, radius: int, elements: Sequence[Word],
                 inverse: Optional[np.ndarray] = None, table: Optional[np.ndarray] = None):
        self.system = system
        self.radius = radius
        self.elements: Tuple[Word, ...] = tuple(elements)
        self.index: Dict[Word, int] = {w: i for i, w in enumerate(self.elements)}
        self.size = len(self.elements)
        self.dtype = _id_dtype(self.size)
        self.sentinel = int(np.iinfo(self.dtype).max)
        self.lengths = np.fromiter((len(w) for w in self.elements), dtype=np.int64, count=self.size)
        if inverse is None:
            inverse = np.array(
                [self.index[system.rewrite(invert(w))] for w in self.elements], dtype=np.int64
            )
        self.inverse = inverse
        self.table = table
        self._memo: Dict[Tuple[int, int], int] = {}

    @property
    def table_mode(self) -> str:
        return "precomputed" if self.table is not None else "on_demand"

    def word(self, element: int) -> Word:
        return self.elements[element]

    def id_of(self, word: Word) -> int:
        """Id of the element represented by ``word``, or ``OUT_OF_BALL``"""
        return self.index.get(self.system.rewrite(word), OUT_OF_BALL)

    def _on_demand(self, i: int, j: int) -> int:
        key = (i, j)
        found = self._memo.get(key)
        if found is None:
            found = self.index.get(self.system.rewrite(self.elements[i] + self.elements[j]), self.sentinel)
            self._memo[key] = found
        return found

    def multiply(self, i: int, j: int) -> int:
        if self.table is not None:
            k = int(self.table[i, j])
        else:
            k = self._on_demand(i, j)
        return OUT_OF_BALL if k == self.sentinel else k

    def products_right(self, x: int, ids: np.ndarray) -> np.ndarray:
        """``x * y`` for every ``y`` in ``ids`` (sentinel when outside)"""
        if self.table is not None:
            return self.table[x, ids]
        return np.fromiter((self._on_demand(x, int(y)) for y in ids), dtype=np.int64, count=len(ids))

    def products_left(self, ids: np.ndarray, x: int) -> np.ndarray:
        """``y * x`` for every ``y`` in ``ids`` (sentinel when outside)"""
        if self.table is not None:
            return self.table[ids, x]
        return np.fromiter((self._on_demand(int(y), x) for y in ids), dtype=np.int64, count=len(ids))

    def with_table(self, table: Optional[np.ndarray]) -> "Ball":
        return Ball(self.system, self.radius, self.elements, self.inverse, table)

    def sphere_sizes(self) -> List[int]:
        return np.bincount(self.lengths, minlength=self.radius + 1).tolist()

    def cumulative_sizes(self) -> List[int]:
        return np.cumsum(self.sphere_sizes()).tolist()


def build_ball(system: RewritingSystem, radius: int, max_size: int = DEFAULT_MAX_BALL_SIZE,
               deadline: Optional[float] = None) -> Ball:
    """Breadth-first enumeration of normal forms of length at most ``radius``"""
    system.require_confluent()
    elements: List[Word] = [IDENTITY]
    frontier: List[Word] = [IDENTITY]
    for k in range(1, radius + 1):
        _check_deadline(deadline, f"building sphere {k}")
        frontier = _next_sphere(system, frontier)
        elements.extend(frontier)
        if len(elements) > max_size:
            raise ResourceExceeded(f"ball of radius {radius} exceeds {max_size} elements", max_size)
        if not frontier:
            break
    ball = Ball(system, radius, elements)
    logger.info("ball of radius %d: %d elements", radius, ball.size)
    return ball


@dataclass
class BallStats:
    """Ball sizes per radius with a fitted growth curve size ~ A * C**r"""
    radius: int
    sizes: List[int]
    fit_radii: Tuple[int, ...] = ()
    growth_prefactor: Optional[float] = None
    growth_constant: Optional[float] = None
    residual: Optional[float] = None

    def to_dict(self) -> Dict:
        return {
            "radius": self.radius,
            "sizes": self.sizes,
            "fit_radii": list(self.fit_radii),
            "growth_prefactor": self.growth_prefactor,
            "growth_constant": self.growth_constant,
            "residual": self.residual,
        }


def ball_stats(ball: Ball, fit_from: Optional[int] = None) -> BallStats:
    """Cumulative sizes and a least-squares exponential fit over the outer radii"""
    sizes = ball.cumulative_sizes()
    stats = BallStats(radius=ball.radius, sizes=sizes)
    start = fit_from if fit_from is not None else max(1, ball.radius - 3)
    radii = [r for r in range(start, ball.radius + 1) if sizes[r] > 0]
    if len(radii) >= 2:
        coeffs, residuals, *_ = np.polyfit(radii, np.log([sizes[r] for r in radii]), 1, full=True)
        stats.fit_radii = tuple(radii)
        stats.growth_constant = float(np.exp(coeffs[0]))
        stats.growth_prefactor = float(np.exp(coeffs[1]))
        stats.residual = float(residuals[0]) if len(residuals) else 0.0
    return stats


def build_mul_table(ball: Ball, max_table: int = DEFAULT_TABLE_CAP,
                    deadline: Optional[float] = None) -> Ball:
    """
    Attach the product table of ``ball``.

    Products are built column by column: ``u * v = (u * parent(v)) * x``
    where ``v = parent(v) x``. Intermediate products are tracked exactly up
    to length ``r + r // 2``; a product that passes that length cannot
    return to the ball. Balls larger than ``max_table`` use on-demand
    multiplication instead.
    """
    if ball.size > max_table:
        logger.info("ball of %d elements is above the table cap %d; multiplying on demand",
                    ball.size, max_table)
        return ball.with_table(None)

    system = ball.system
    letters = system.order.letters
    column = {x: j for j, x in enumerate(letters)}
    halo_radius = ball.radius + ball.radius // 2

    extended: List[Word] = list(ball.elements)
    frontier = [w for w in ball.elements if len(w) == ball.radius]
    for k in range(ball.radius + 1, halo_radius + 1):
        _check_deadline(deadline, "extending the ball for the product table")
        frontier = _next_sphere(system, frontier)
        extended.extend(frontier)
    ext_index = {w: i for i, w in enumerate(extended)}
    sink = len(extended)

    letter_action = np.full((sink + 1, len(letters)), sink, dtype=np.int64)
    for e, w in enumerate(extended):
        for j, x in enumerate(letters):
            letter_action[e, j] = ext_index.get(system.rewrite(w + x), sink)

    n = ball.size
    parent = np.zeros(n, dtype=np.int64)
    last_letter = np.zeros(n, dtype=np.int64)
    for v in range(1, n):
        w = ball.elements[v]
        parent[v] = ball.index[w[:-1]]
        last_letter[v] = column[w[-1]]

    table = np.empty((n, n), dtype=ball.dtype)
    for start in range(0, n, _ROW_CHUNK):
        _check_deadline(deadline, "filling the product table")
        rows = np.arange(start, min(n, start + _ROW_CHUNK), dtype=np.int64)
        products = np.empty((len(rows), n), dtype=np.int64, order="F")
        products[:, 0] = rows
        for v in range(1, n):
            products[:, v] = letter_action[products[:, parent[v]], last_letter[v]]
        table[start:start + len(rows)] = np.where(products < n, products, ball.sentinel)
    table.setflags(write=False)
    logger.info("product table %dx%d (%s), halo radius %d with %d elements",
                n, n, ball.dtype.__name__, halo_radius, len(extended))
    return ball.with_table(table)


# ---------------------------------------------------------------------------
# Coset tables
# ---------------------------------------------------------------------------

def standardize_rows(rows: Sequence[Sequence[Optional[int]]], start: int = 0) -> Tuple[Tuple[Optional[int], ...], ...]:
    """Renumber cosets in breadth-first order over the columns, starting at ``start``"""
    order = [start]
    position = {start: 0}
    i = 0
    while i < len(order):
        for d in rows[order[i]]:
            if d is not None and d not in position:
                position[d] = len(order)
                order.append(d)
        i += 1
    return tuple(
        tuple(position[d] if d is not None else None for d in rows[c])
        for c in order
    )


@dataclass(frozen=True)
class CosetTable:
    """
    Action of the generators on the cosets of a subgroup

    ``rows[c][j]`` is the coset reached from ``c`` by letter ``letters[j]``.
    """
    letters: str
    rows: Tuple[Tuple[Optional[int], ...], ...]
    complete: bool = True
    normal: Optional[bool] = None

    @property
    def index(self) -> int:
        return len(self.rows)

    def column(self, letter: str) -> int:
        return self.letters.index(letter)

    def act(self, coset: int, word: Word) -> int:
        for ch in word:
            coset = self.rows[coset][self.letters.index(ch)]
            if coset is None:
                raise IncompleteTableError("word leaves the defined part of the table")
        return coset

    def representatives(self) -> List[Word]:
        """Shortlex-first word reaching each coset along the standardization tree"""
        reps: List[Optional[Word]] = [None] * self.index
        reps[0] = IDENTITY
        queue = [0]
        for c in queue:
            for j, d in enumerate(self.rows[c]):
                if d is not None and reps[d] is None:
                    reps[d] = reps[c] + self.letters[j]
                    queue.append(d)
        return [r if r is not None else "" for r in reps]

    def restandardized(self, start: int) -> Tuple[Tuple[Optional[int], ...], ...]:
        """Rows of the conjugate subgroup stabilising coset ``start``"""
        return standardize_rows(self.rows, start)

    def is_normal(self) -> bool:
        if not self.complete:
            raise IncompleteTableError("normality needs a complete table")
        return all(self.restandardized(c) == self.rows for c in range(self.index))

    def conjugacy_key(self) -> Tuple:
        return min(self.restandardized(c) for c in range(self.index))

    def render(self) -> str:
        header = "coset: " + " ".join(self.letters)
        lines = [header]
        for c, row in enumerate(self.rows):
            cells = " ".join("-" if d is None else str(d) for d in row)
            lines.append(f"{c}: {cells}")
        return "\n".join(lines)

    def to_dict(self) -> Dict:
        return {
            "letters": self.letters,
            "index": self.index,
            "complete": self.complete,
            "normal": self.normal,
            "rows": [list(row) for row in self.rows],
        }


class CosetEnumerator:
    """HLT coset enumeration with coincidence handling"""

    def __init__(self, presentation: Presentation, subgroup_gens: Sequence[Word] = (),
                 max_cosets: int = DEFAULT_MAX_COSETS, deadline: Optional[float] = None):
        self.letters = presentation.letters
        self.n_cols = len(self.letters)
        self.col = {ch: j for j, ch in enumerate(self.letters)}
        self.relators = [[self.col[ch] for ch in r] for r in presentation.relators]
        self.subgroup_gens = [[self.col[ch] for ch in presentation.check_word(w)] for w in subgroup_gens]
        self.max_cosets = max_cosets
        self.deadline = deadline
        self.table: List[List[Optional[int]]] = [[None] * self.n_cols]
        self.p: List[int] = [0]

    @staticmethod
    def inverse(col: int) -> int:
        return col ^ 1

    def is_live(self, c: int) -> bool:
        return self.p[c] == c

    def define(self, c: int, x: int):
        if len(self.table) >= self.max_cosets:
            raise CosetOverflow(f"coset enumeration exceeded {self.max_cosets} cosets", self.max_cosets)
        d = len(self.table)
        self.table.append([None] * self.n_cols)
        self.p.append(d)
        self.table[c][x] = d
        self.table[d][self.inverse(x)] = c

    def rep(self, c: int) -> int:
        root = c
        while self.p[root] != root:
            root = self.p[root]
        while self.p[c] != root:
            self.p[c], c = root, self.p[c]
        return root

    def merge(self, k: int, lam: int, queue: List[int]):
        phi, psi = self.rep(k), self.rep(lam)
        if phi != psi:
            mu, v = min(phi, psi), max(phi, psi)
            self.p[v] = mu
            queue.append(v)

    def coincidence(self, alpha: int, beta: int):
        table = self.table
        queue: List[int] = []
        self.merge(alpha, beta, queue)
        i = 0
        while i < len(queue):
            gamma = queue[i]
            i += 1
            for x in range(self.n_cols):
                delta = table[gamma][x]
                if delta is None:
                    continue
                x_inv = self.inverse(x)
                table[delta][x_inv] = None
                mu, nu = self.rep(gamma), self.rep(delta)
                if table[mu][x] is not None:
                    self.merge(nu, table[mu][x], queue)
                elif table[nu][x_inv] is not None:
                    self.merge(mu, table[nu][x_inv], queue)
                else:
                    table[mu][x] = nu
                    table[nu][x_inv] = mu

    def scan_and_fill(self, alpha: int, word: Sequence[int]):
        table = self.table
        r = len(word)
        f, b = alpha, alpha
        i, j = 0, r - 1
        while True:
            while i <= j and table[f][word[i]] is not None:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and table[b][self.inverse(word[j])] is not None:
                b = table[b][self.inverse(word[j])]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][self.inverse(word[i])] = f
                return
            self.define(f, word[i])

    def run(self) -> CosetTable:
        for word in self.subgroup_gens:
            self.scan_and_fill(0, word)
        c = 0
        while c < len(self.table):
            if c % 512 == 0:
                _check_deadline(self.deadline, "enumerating cosets")
            if self.is_live(c):
                for word in self.relators:
                    if not self.is_live(c):
                        break
                    self.scan_and_fill(c, word)
                if self.is_live(c):
                    for x in range(self.n_cols):
                        if self.table[c][x] is None:
                            self.define(c, x)
            c += 1
        return self.compress()

    def compress(self) -> CosetTable:
        live = [c for c in range(len(self.table)) if self.is_live(c)]
        rows = [[self.rep(d) if d is not None else None for d in self.table[c]] for c in live]
        renumber = {c: i for i, c in enumerate(live)}
        rows = [[renumber[d] if d is not None else None for d in row] for row in rows]
        standardized = standardize_rows(rows, 0)
        complete = all(d is not None for row in standardized for d in row)
        logger.info("coset enumeration: index %d (%d cosets defined)", len(standardized), len(self.table))
        return CosetTable(self.letters, standardized, complete=complete)


def todd_coxeter(presentation: Presentation, subgroup_gens: Sequence[Word] = (),
                 max_cosets: int = DEFAULT_MAX_COSETS, deadline: Optional[float] = None) -> CosetTable:
    """Complete standardized coset table of <subgroup_gens>, or ``CosetOverflow``"""
    return CosetEnumerator(presentation, subgroup_gens, max_cosets, deadline).run()


class LowIndexSearch:
    """
    Backtracking search over partial coset tables of bounded size

    The first undefined entry (row-major) is filled either with an existing
    coset whose inverse entry is free or with a new coset; relator scans then
    deduce forced entries. Completed tables are standardized by construction,
    so each subgroup of index at most ``max_index`` appears exactly once.
    """

    def __init__(self, presentation: Presentation, max_index: int,
                 max_nodes: int = DEFAULT_MAX_LOW_INDEX_NODES, deadline: Optional[float] = None):
        self.letters = presentation.letters
        self.n_cols = len(self.letters)
        col = {ch: j for j, ch in enumerate(self.letters)}
        self.relators = [[col[ch] for ch in r] for r in presentation.relators]
        self.max_index = max_index
        self.max_nodes = max_nodes
        self.deadline = deadline
        self.nodes = 0
        self.found: List[Tuple[Tuple[int, ...], ...]] = []

    def _deduce(self, t: List[List[Optional[int]]]) -> bool:
        """Scan every relator from every coset until nothing changes; False on a clash"""
        changed = True
        while changed:
            changed = False
            for c in range(len(t)):
                for word in self.relators:
                    n = len(word)
                    f, b = c, c
                    i, j = 0, n - 1
                    while i <= j and t[f][word[i]] is not None:
                        f = t[f][word[i]]
                        i += 1
                    if i > j:
                        if f != b:
                            return False
                        continue
                    while j >= i and t[b][word[j] ^ 1] is not None:
                        b = t[b][word[j] ^ 1]
                        j -= 1
                    if j < i:
                        if f != b:
                            return False
                    elif i == j:
                        t[f][word[i]] = b
                        t[b][word[i] ^ 1] = f
                        changed = True
        return True

    def _extend(self, t: List[List[Optional[int]]]):
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise ResourceExceeded(f"low-index search exceeded {self.max_nodes} nodes", self.max_nodes)
        if self.nodes % 1024 == 0:
            _check_deadline(self.deadline, "searching low-index subgroups")

        target = next(((c, x) for c in range(len(t)) for x in range(self.n_cols) if t[c][x] is None), None)
        if target is None:
            self.found.append(tuple(tuple(row) for row in t))
            return
        c, x = target
        x_inv = x ^ 1
        candidates = [d for d in range(len(t)) if t[d][x_inv] is None]
        if len(t) < self.max_index:
            candidates.append(len(t))
        for d in candidates:
            branch = [list(row) for row in t]
            if d == len(branch):
                branch.append([None] * self.n_cols)
            branch[c][x] = d
            branch[d][x_inv] = c
            if self._deduce(branch):
                self._extend(branch)

    def run(self) -> List[Tuple[Tuple[int, ...], ...]]:
        start = [[None] * self.n_cols]
        if self._deduce(start):
            self._extend(start)
        logger.info("low-index search up to %d: %d subgroups, %d nodes",
                    self.max_index, len(self.found), self.nodes)
        return self.found


def low_index_subgroups(presentation: Presentation, max_index: int,
                        max_nodes: int = DEFAULT_MAX_LOW_INDEX_NODES,
                        deadline: Optional[float] = None,
                        up_to_conjugacy: bool = True) -> List[CosetTable]:
    """
    Subgroups of index at most ``max_index``.

    With ``up_to_conjugacy`` one table per conjugacy class is returned (the
    least re-standardization). Every table carries its ``normal`` flag.
    """
    found = LowIndexSearch(presentation, max_index, max_nodes, deadline).run()
    tables: Dict[Tuple, CosetTable] = {}
    for rows in found:
        table = CosetTable(presentation.letters, rows)
        key = table.conjugacy_key() if up_to_conjugacy else table.rows
        if key not in tables:
            tables[key] = CosetTable(presentation.letters, key, normal=table.is_normal())
    return sorted(tables.values(), key=lambda t: (t.index, t.rows))
