"""
Weeks Manifold Group - presentation, automorphisms and hand case analyses

G = <a, b | bababAbbA, ababaBaaB>, H1(G) = Z/5 + Z/5. The case analyses
below are the hand proofs that G and the index-5 kernels N1 (a->0, b->1)
and N2 (a->1, b->-1) admit no positive cone; each leaf lists positive
factors whose product is the identity.
"""

from typing import Dict, List, Tuple

from .abelian import CyclicEpi
from .orderability import Case, Leaf
from .words import GeneratorMap, Presentation, Word

R1 = "bababAbbA"
R2 = "ababaBaaB"

PRESENTATION_TEXT = """# Weeks manifold (closed hyperbolic, smallest volume)
gens: a b
rel: bababAbbA
rel: ababaBaaB
"""

WEEKS = Presentation(("a", "b"), (R1, R2))

PHI = GeneratorMap(("a", "b"), ("b", "a"), name="phi")
PSI = GeneratorMap(("a", "b"), ("aB", "a"), name="psi")
AUTOMORPHISMS = (PHI, PSI)

N1 = CyclicEpi(5, (0, 1), ("a", "b"))
N2 = CyclicEpi(5, (1, 4), ("a", "b"))

# BaB^2a^2Ba^2B = b^-1 R1^-1 b . R2 in the free group
CONJUGATE_FACTORIZATION: Tuple[Word, List[Tuple[Word, int, int]]] = (
    "BaBBaaBaaB",
    [("B", 0, -1), ("", 1, 1)],
)


def _leaf(*factors: List[Word]) -> Leaf:
    flat: List[Word] = []
    for part in factors:
        flat.extend(part)
    return Leaf(tuple(flat))


# G itself: assume a > 1, split on b, then on aB
WEEKS_CASES = Case(
    "b",
    Case(
        "aB",
        _leaf(["a", "b", "a", "b"], ["aB"], ["a"], ["aB"]),
        _leaf(["b", "a", "b", "a"], ["bA"], ["b"], ["bA"]),
    ),
    _leaf(["B", "a", "B", "B", "a", "a", "B", "a", "a", "B"]),
)

_W = ["bAB", "bABA", "bAB"] * 2

# N1: assume a > 1, split on baB, then on abaB
N1_CASES = Case(
    "baB",
    _leaf(
        ["a"], ["baB"] * 3, (["a"] * 3 + ["baB"]) * 2, ["a"] * 2, ["baB"],
        (["a"] * 3 + ["baB"]) * 2, ["baB"] * 2,
    ),
    Case(
        "abaB",
        _leaf(
            ["a"] * 2, ["abaB"], ["a"] * 2, ["bAB"] * 2, ["a"], ["abaB"], ["a"],
            ["a", "abaB"] * 2, (["a"] * 2 + ["abaB"]) * 2, ["a"], ["abaB"],
        ),
        _leaf(
            ["a"] * 2, _W, ["bABA"] * 2, ["a"], ["bAB", "bABA"], ["bAB"] * 2, ["bABA"], _W, ["bAB"],
        ),
    ),
)

# N2: assume ab > 1, split on ba, then on a^2bA
N2_CASES = Case(
    "ba",
    Case(
        "aabA",
        _leaf(["ab"], ["aabA"] * 2, ["ab"] * 2, ["aabA"] * 2, (["ab"] * 2 + ["ba"] * 2) * 2),
        _leaf(
            ["aBAA"] * 2, ["ba"] * 2, ["ab"] * 2, ["ba"] * 2, ["ab"], ["aBAA"], ["ba"] * 2,
            (["ab"] * 2 + ["ba"] * 2 + ["ab"] * 2 + ["ba"]) * 2,
        ),
    ),
    Case(
        "aabA",
        _leaf(
            (["aabA"] + ["ab"] * 2 + ["aabA"] * 2 + ["ab"] * 2) * 2, ["aabA"] * 2, ["AB"], ["ab"],
            ["aabA"] * 2, ["ab"] * 2, ["aabA"] * 2, ["AB"] * 2,
        ),
        _leaf(["ab"], ["AB"] * 3, ["aBAA"] * 3),
    ),
)

CASE_ANALYSES = {
    "weeks": (("a",), WEEKS_CASES, None),
    "n1": (("a",), N1_CASES, N1),
    "n2": (("ab",), N2_CASES, N2),
}


def _leaf_words(cases) -> List[Word]:
    if isinstance(cases, Leaf):
        return ["".join(cases.factors)]
    return _leaf_words(cases.positive) + _leaf_words(cases.negative)


def identity_corpus() -> Dict[str, Word]:
    """Every case-analysis product, labelled; each must equal 1 in G"""
    corpus: Dict[str, Word] = {"R1": R1, "R2": R2}
    for label, (_, cases, _) in CASE_ANALYSES.items():
        for i, word in enumerate(_leaf_words(cases), 1):
            corpus[f"{label}-case-{i}"] = word
    return corpus


# words whose quotient G/<<w>> should be Z/5
QUOTIENT_WORDS: Tuple[Word, ...] = (
    "a", "b", "aB", "bA", "B", "baB", "bAB", "abaB", "bABA", "ba",
    "aabA", "aBAA", "AB", "aabA", "aBAA",
)
