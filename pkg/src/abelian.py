"""
Abelian Invariants - Smith normal form, first homology and cyclic quotients

All matrix arithmetic uses Python integers. Every Smith form carries its
unimodular transforms and is verified (U * M * V == D, |det U| = |det V| = 1)
before it is returned.
"""

import itertools
import logging
from dataclasses import dataclass
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Matrix

from .enumeration import CosetTable, standardize_rows
from .words import Presentation, Word, exponent_sums

logger = logging.getLogger(__name__)

IntMatrix = List[List[int]]


def _identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _matmul(a: IntMatrix, b: IntMatrix, inner: int) -> IntMatrix:
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(a))]


@dataclass
class SmithForm:
    """
    Diagonal form ``D = U * M * V`` of an integer matrix

    ``diagonal`` holds the min(rows, cols) diagonal entries, non-negative and
    each dividing the next among the non-zero ones.
    """
    rows: int
    cols: int
    diagonal: List[int]
    left: IntMatrix
    right: IntMatrix

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def invariant_factors(self) -> List[int]:
        return list(self.diagonal)


class SmithNormalForm:
    """Row and column reduction with tracked transforms"""

    def __init__(self, matrix: Sequence[Sequence[int]], cols: Optional[int] = None):
        self.m = len(matrix)
        self.n = cols if cols is not None else (len(matrix[0]) if matrix else 0)
        self.original = [[int(v) for v in row] for row in matrix]
        self.a = [list(row) for row in self.original]
        self.u = _identity(self.m)
        self.v = _identity(self.n)

    def _swap_rows(self, i: int, j: int):
        self.a[i], self.a[j] = self.a[j], self.a[i]
        self.u[i], self.u[j] = self.u[j], self.u[i]

    def _swap_cols(self, i: int, j: int):
        for row in self.a:
            row[i], row[j] = row[j], row[i]
        for row in self.v:
            row[i], row[j] = row[j], row[i]

    def _add_row(self, target: int, source: int, factor: int):
        for mat in (self.a, self.u):
            src = mat[source]
            mat[target] = [t + factor * s for t, s in zip(mat[target], src)]

    def _add_col(self, target: int, source: int, factor: int):
        for mat in (self.a, self.v):
            for row in mat:
                row[target] += factor * row[source]

    def _negate_row(self, i: int):
        self.a[i] = [-x for x in self.a[i]]
        self.u[i] = [-x for x in self.u[i]]

    def _pivot(self, t: int) -> Optional[Tuple[int, int]]:
        best = None
        for i in range(t, self.m):
            for j in range(t, self.n):
                value = abs(self.a[i][j])
                if value and (best is None or value < best[0]):
                    best = (value, i, j)
        return None if best is None else (best[1], best[2])

    def reduce(self) -> SmithForm:
        a = self.a
        for t in range(min(self.m, self.n)):
            pivot = self._pivot(t)
            if pivot is None:
                break
            self._swap_rows(t, pivot[0])
            self._swap_cols(t, pivot[1])
            while True:
                changed = False
                for i in range(t + 1, self.m):
                    q = a[i][t] // a[t][t]
                    if q:
                        self._add_row(i, t, -q)
                    if a[i][t]:
                        self._swap_rows(t, i)
                        changed = True
                for j in range(t + 1, self.n):
                    q = a[t][j] // a[t][t]
                    if q:
                        self._add_col(j, t, -q)
                    if a[t][j]:
                        self._swap_cols(t, j)
                        changed = True
                if changed:
                    continue
                bad = next(((i, j) for i in range(t + 1, self.m) for j in range(t + 1, self.n)
                            if a[i][j] % a[t][t]), None)
                if bad is None:
                    break
                self._add_row(t, bad[0], 1)
            if a[t][t] < 0:
                self._negate_row(t)

        diagonal = [a[i][i] for i in range(min(self.m, self.n))]
        form = SmithForm(self.m, self.n, diagonal, self.u, self.v)
        _verify(form, self.original)
        return form


def _verify(form: SmithForm, original: IntMatrix):
    m, n = form.rows, form.cols
    product = _matmul(_matmul(form.left, original, m), form.right, n) if m and n else []
    for i in range(m):
        for j in range(n):
            expected = form.diagonal[i] if i == j else 0
            if product[i][j] != expected:
                raise ArithmeticError("Smith normal form transform check failed")
    for transform in (form.left, form.right):
        if transform and abs(Matrix(transform).det()) != 1:
            raise ArithmeticError("Smith normal form transform is not unimodular")


def smith_normal_form(matrix: Sequence[Sequence[int]], cols: Optional[int] = None) -> SmithForm:
    """Smith normal form with retained transforms; ``cols`` sizes an empty matrix"""
    return SmithNormalForm(matrix, cols).reduce()


def relation_matrix(presentation: Presentation) -> IntMatrix:
    """Exponent-sum row per relator"""
    return [exponent_sums(r, presentation.alphabet) for r in presentation.relators]


@dataclass(frozen=True)
class AbelianInvariants:
    """G_ab = Z^free_rank + sum of Z/t for t in torsion"""
    free_rank: int
    torsion: Tuple[int, ...]

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> Optional[int]:
        if not self.is_finite:
            return None
        result = 1
        for t in self.torsion:
            result *= t
        return result

    @property
    def exponent(self) -> Optional[int]:
        if not self.is_finite:
            return None
        return self.torsion[-1] if self.torsion else 1

    @property
    def has_even_torsion(self) -> bool:
        return any(t % 2 == 0 for t in self.torsion)

    def element_orders(self) -> List[int]:
        """Orders of non-zero elements of a finite group: divisors > 1 of the exponent"""
        if not self.is_finite:
            raise ValueError("infinite abelian group")
        e = self.exponent
        return [d for d in range(2, e + 1) if e % d == 0]

    def hom_count(self, m: int) -> int:
        """Number of homomorphisms to Z/m"""
        count = m ** self.free_rank
        for t in self.torsion:
            count *= gcd(t, m)
        return count

    def render(self) -> str:
        parts = [f"Z/{t}" for t in self.torsion]
        if self.free_rank == 1:
            parts.insert(0, "Z")
        elif self.free_rank > 1:
            parts.insert(0, f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"

    def to_dict(self) -> Dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion), "summary": self.render()}


def h1(presentation: Presentation) -> AbelianInvariants:
    """First homology (abelianization) of the presented group"""
    form = smith_normal_form(relation_matrix(presentation), presentation.rank)
    torsion = tuple(d for d in form.diagonal if d > 1)
    invariants = AbelianInvariants(presentation.rank - form.rank, torsion)
    logger.debug("H1 = %s", invariants.render())
    return invariants


@dataclass(frozen=True)
class CyclicEpi:
    """Surjection G -> Z/n sending generator i to ``exponents[i]``"""
    modulus: int
    exponents: Tuple[int, ...]
    alphabet: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(e % self.modulus for e in self.exponents))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))

    def _names(self) -> Tuple[str, ...]:
        return self.alphabet or tuple(chr(ord("a") + i) for i in range(len(self.exponents)))

    def image(self, word: Word) -> int:
        sums = exponent_sums(word, self._names())
        return sum(s * e for s, e in zip(sums, self.exponents)) % self.modulus

    def contains(self, word: Word) -> bool:
        """Whether ``word`` lies in the kernel"""
        return self.image(word) == 0

    def is_surjective(self) -> bool:
        g = self.modulus
        for e in self.exponents:
            g = gcd(g, e)
        return g == 1

    def kernel_table(self) -> CosetTable:
        """Standardized coset table of the kernel (the regular Z/n action)"""
        names = self._names()
        letters = "".join(name + name.upper() for name in names)
        rows = []
        for c in range(self.modulus):
            row = []
            for e in self.exponents:
                row.extend(((c + e) % self.modulus, (c - e) % self.modulus))
            rows.append(row)
        table = CosetTable(letters, standardize_rows(rows, 0))
        return CosetTable(letters, table.rows, normal=True)

    def precompose(self, images: Sequence[Word]) -> "CyclicEpi":
        """The epimorphism ``self o f`` where ``f`` sends generator i to ``images[i]``"""
        return CyclicEpi(self.modulus, tuple(self.image(w) for w in images), self.alphabet)

    def render(self) -> str:
        names = self._names()
        return ", ".join(f"{n}->{e}" for n, e in zip(names, self.exponents)) + f" (mod {self.modulus})"

    def to_dict(self) -> Dict:
        return {"modulus": self.modulus, "exponents": list(self.exponents)}

    @classmethod
    def from_dict(cls, data: Dict, alphabet: Sequence[str] = ()) -> "CyclicEpi":
        return cls(int(data["modulus"]), tuple(int(e) for e in data["exponents"]), tuple(alphabet))


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, int(n ** 0.5) + 1))


def _unit_canonical(vector: Tuple[int, ...], n: int) -> Tuple[int, ...]:
    """Rescale so the first non-zero entry is 1 (n prime)"""
    lead = next(v for v in vector if v)
    inverse = pow(lead, -1, n)
    return tuple(v * inverse % n for v in vector)


def homomorphisms_to_cyclic(presentation: Presentation, n: int) -> List[Tuple[int, ...]]:
    """
    All exponent vectors v with M v = 0 mod n.

    Solved in Smith coordinates: with U M V = D, v = V w where d_i w_i = 0
    mod n, so each w_i ranges over multiples of n / gcd(d_i, n).
    """
    k = presentation.rank
    form = smith_normal_form(relation_matrix(presentation), k)
    choices = []
    for i in range(k):
        d = form.diagonal[i] if i < len(form.diagonal) else 0
        step = n // gcd(d, n)
        choices.append(range(0, n, step))
    vectors = set()
    for w in itertools.product(*choices):
        v = tuple(sum(form.right[i][j] * w[j] for j in range(k)) % n for i in range(k))
        vectors.add(v)
    return sorted(vectors)


def epimorphisms_to_cyclic(presentation: Presentation, n: int) -> List[CyclicEpi]:
    """
    Surjections G -> Z/n, one per kernel.

    For prime n two surjections share a kernel exactly when they differ by a
    unit, so the unit-rescaled vector is canonical. For composite n kernels
    are compared directly through their standardized coset tables.
    """
    if n < 2:
        raise ValueError("modulus must be at least 2")
    found: Dict[object, CyclicEpi] = {}
    for vector in homomorphisms_to_cyclic(presentation, n):
        epi = CyclicEpi(n, vector, presentation.alphabet)
        if not epi.is_surjective():
            continue
        if _is_prime(n):
            epi = CyclicEpi(n, _unit_canonical(vector, n), presentation.alphabet)
            key: object = epi.exponents
        else:
            key = epi.kernel_table().rows
        found.setdefault(key, epi)
    result = sorted(found.values(), key=lambda e: e.exponents)
    logger.info("%d kernels of surjections onto Z/%d", len(result), n)
    return result
