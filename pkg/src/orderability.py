"""
Left-Orderability Search - positive-cone construction on finite balls

A left order on G is the same thing as a positive cone P: a subsemigroup
with G = P, P^-1 and {1} pairwise disjoint and covering G. The search
tries to build P inside a ball B(r). Products leaving the ball are ignored,
so every contradiction found is genuine (the certificate proves G is not
left-orderable) while a consistent cone only says no contradiction is
visible at that radius.
"""

import json
import logging
import time
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .abelian import CyclicEpi
from .config import RunConfig
from .enumeration import Ball, build_ball, build_mul_table
from .errors import CertificateFormatError, PresentationParseError, ResourceExceeded
from .rewriting import LetterOrder, RewritingSystem, knuth_bendix
from .words import IDENTITY, Presentation, Word, invert, parse_presentation, render_word

logger = logging.getLogger(__name__)

CERTIFICATE_FORMAT = "positive-cone-certificate"
CERTIFICATE_VERSION = 1


class VerdictKind(Enum):
    NOT_LEFT_ORDERABLE = "not_left_orderable"
    CONSISTENT_AT_RADIUS = "consistent_at_radius"
    INCONCLUSIVE = "inconclusive"


class InconclusiveReason(Enum):
    DEPTH_CAP = "depth_cap"
    BUDGET_EXCEEDED = "budget_exceeded"


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Step:
    """One multiplication ``x * y = product`` inside a contradiction chain"""
    x: Word
    y: Word
    product: Word

    def to_list(self) -> List[str]:
        return [render_word(self.x), render_word(self.y), render_word(self.product)]


@dataclass(frozen=True)
class LeafNode:
    steps: Tuple[Step, ...]


@dataclass(frozen=True)
class BranchNode:
    """Case split on ``element``: positive child assumes it, negative child its inverse"""
    element: Word
    positive: "CertificateNode"
    negative: "CertificateNode"


CertificateNode = Union[LeafNode, BranchNode]


def _parse_cert_word(value) -> Word:
    if not isinstance(value, str) or not value:
        raise CertificateFormatError(f"expected a word, found {value!r}")
    return IDENTITY if value == "1" else value


def _node_to_dict(node: CertificateNode) -> Dict:
    if isinstance(node, LeafNode):
        return {"contradiction": [step.to_list() for step in node.steps]}
    return {
        "branch": render_word(node.element),
        "positive": _node_to_dict(node.positive),
        "negative": _node_to_dict(node.negative),
    }


def _node_from_dict(data) -> CertificateNode:
    if not isinstance(data, dict):
        raise CertificateFormatError("certificate tree node must be an object")
    if "contradiction" in data:
        steps = []
        for entry in data["contradiction"]:
            if not isinstance(entry, list) or len(entry) != 3:
                raise CertificateFormatError("contradiction steps are [x, y, product] triples")
            steps.append(Step(*(_parse_cert_word(v) for v in entry)))
        return LeafNode(tuple(steps))
    if "branch" in data:
        try:
            return BranchNode(
                _parse_cert_word(data["branch"]),
                _node_from_dict(data["positive"]),
                _node_from_dict(data["negative"]),
            )
        except KeyError as e:
            raise CertificateFormatError(f"branch node without '{e.args[0]}' child")
    raise CertificateFormatError("tree node needs 'branch' or 'contradiction'")


@dataclass
class Certificate:
    """Self-contained proof that no positive cone exists"""
    presentation_text: str
    presentation_digest: str
    letter_order: str
    radius: int
    seed: Tuple[Word, ...]
    tree: CertificateNode
    subgroup: Optional[CyclicEpi] = None

    def leaves(self) -> List[LeafNode]:
        found, stack = [], [self.tree]
        while stack:
            node = stack.pop()
            if isinstance(node, LeafNode):
                found.append(node)
            else:
                stack.extend((node.negative, node.positive))
        return found

    def depth(self) -> int:
        def walk(node):
            return 0 if isinstance(node, LeafNode) else 1 + max(walk(node.positive), walk(node.negative))
        return walk(self.tree)

    def to_dict(self) -> Dict:
        return {
            "format": CERTIFICATE_FORMAT,
            "version": CERTIFICATE_VERSION,
            "presentation": {"text": self.presentation_text, "digest": self.presentation_digest},
            "letter_order": self.letter_order,
            "radius": self.radius,
            "seed": [render_word(w) for w in self.seed],
            "subgroup": self.subgroup.to_dict() if self.subgroup else None,
            "tree": _node_to_dict(self.tree),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: Dict) -> "Certificate":
        if not isinstance(data, dict) or data.get("format") != CERTIFICATE_FORMAT:
            raise CertificateFormatError("not a positive-cone certificate")
        if data.get("version") != CERTIFICATE_VERSION:
            raise CertificateFormatError(f"unsupported certificate version {data.get('version')!r}")
        try:
            presentation = data["presentation"]
            subgroup = data.get("subgroup")
            return cls(
                presentation_text=presentation["text"],
                presentation_digest=presentation["digest"],
                letter_order=data["letter_order"],
                radius=int(data["radius"]),
                seed=tuple(_parse_cert_word(w) for w in data["seed"]),
                tree=_node_from_dict(data["tree"]),
                subgroup=CyclicEpi.from_dict(subgroup) if subgroup else None,
            )
        except (KeyError, TypeError, ValueError) as e:
            if isinstance(e, CertificateFormatError):
                raise
            raise CertificateFormatError(f"malformed certificate: {e}")

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise CertificateFormatError(f"certificate is not valid JSON: {e}")
        return cls.from_dict(data)

    def save(self, filepath: str):
        with open(filepath, "w") as f:
            f.write(self.to_json() + "\n")


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------

@dataclass
class SearchStats:
    """Counters for one cone search"""
    nodes: int = 0
    max_depth: int = 0
    ball_size: int = 0
    table_mode: str = ""
    elapsed_seconds: float = 0.0

    def to_dict(self) -> Dict:
        return {
            "nodes": self.nodes,
            "max_depth": self.max_depth,
            "ball_size": self.ball_size,
            "table_mode": self.table_mode,
            "elapsed_seconds": round(self.elapsed_seconds, 3),
        }


@dataclass
class OrderVerdict:
    """
    Outcome of a search at one radius

    ``CONSISTENT_AT_RADIUS`` is evidence only: it never proves orderability.
    """
    kind: VerdictKind
    radius: int
    certificate: Optional[Certificate] = None
    witness: Tuple[Word, ...] = ()
    reason: Optional[InconclusiveReason] = None
    detail: str = ""
    stats: SearchStats = field(default_factory=SearchStats)
    history: List[Tuple[int, str]] = field(default_factory=list)

    @property
    def not_left_orderable(self) -> bool:
        return self.kind is VerdictKind.NOT_LEFT_ORDERABLE

    @property
    def ord_symbol(self) -> str:
        """Batch-table column: N proven non-orderable, O consistent, blank otherwise"""
        if self.kind is VerdictKind.NOT_LEFT_ORDERABLE:
            return "N"
        if self.kind is VerdictKind.CONSISTENT_AT_RADIUS:
            return "O"
        return ""

    def to_dict(self) -> Dict:
        return {
            "verdict": self.kind.value,
            "radius": self.radius,
            "reason": self.reason.value if self.reason else None,
            "detail": self.detail,
            "witness_size": len(self.witness),
            "certificate_leaves": len(self.certificate.leaves()) if self.certificate else None,
            "stats": self.stats.to_dict(),
            "history": [{"radius": r, "verdict": k} for r, k in self.history],
        }


# ---------------------------------------------------------------------------
# Cone state and saturation
# ---------------------------------------------------------------------------

@dataclass
class ConeState:
    """
    Partial positive cone inside a ball

    ``members`` is the membership mask. For derived members ``left`` and
    ``right`` hold the two factors (``-1`` marks an assumption) and ``seq``
    the order of insertion. ``pending`` members have not yet been
    multiplied against the rest.
    """
    members: np.ndarray
    left: np.ndarray
    right: np.ndarray
    seq: np.ndarray
    counter: int = 0
    depth: int = 0
    assumptions: Tuple[int, ...] = ()
    pending: Tuple[int, ...] = ()

    @classmethod
    def empty(cls, size: int) -> "ConeState":
        return cls(
            members=np.zeros(size, dtype=bool),
            left=np.full(size, -1, dtype=np.int64),
            right=np.full(size, -1, dtype=np.int64),
            seq=np.full(size, -1, dtype=np.int64),
        )

    def copy(self) -> "ConeState":
        return ConeState(self.members.copy(), self.left.copy(), self.right.copy(), self.seq.copy(),
                         self.counter, self.depth, self.assumptions, self.pending)

    def assume(self, element: int, branch: bool = True) -> "ConeState":
        """New state with ``element`` added as an assumption"""
        state = self.copy()
        state.members[element] = True
        state.seq[element] = state.counter
        state.counter += 1
        state.assumptions = self.assumptions + (element,)
        state.pending = self.pending + (element,)
        if branch:
            state.depth = self.depth + 1
        return state

    def member_ids(self) -> np.ndarray:
        return np.flatnonzero(self.members)

    def bitset(self) -> int:
        """Membership as an integer with bit i set for element i"""
        value = 0
        for i in self.member_ids().tolist():
            value |= 1 << i
        return value


@dataclass(frozen=True)
class Contradiction:
    """Derivation of the identity: (x, y, product) id triples in derivation order"""
    chain: Tuple[Tuple[int, int, int], ...]


def _derivation(state: ConeState, target: int) -> Tuple[Tuple[int, int, int], ...]:
    needed = set()
    stack = [target]
    while stack:
        k = stack.pop()
        if k in needed:
            continue
        needed.add(k)
        if state.left[k] >= 0:
            stack.append(int(state.left[k]))
            stack.append(int(state.right[k]))
    derived = sorted((k for k in needed if state.left[k] >= 0), key=lambda k: state.seq[k])
    return tuple((int(state.left[k]), int(state.right[k]), k) for k in derived)


def saturate(cone: ConeState, ball: Ball) -> Union[ConeState, Contradiction]:
    """
    Close the cone under products that stay inside the ball.

    Returns ``Contradiction`` as soon as the identity is derived; the input
    state is left untouched.
    """
    state = cone.copy()
    members, left, right, seq = state.members, state.left, state.right, state.seq
    sentinel = ball.sentinel
    queue = deque(state.pending)
    state.pending = ()

    if members[0]:
        return Contradiction(_derivation(state, 0))

    while queue:
        x = queue.popleft()
        ids = np.flatnonzero(members)
        x_column = np.full(len(ids), x, dtype=np.int64)
        for products, lefts, rights in (
            (ball.products_right(x, ids), x_column, ids),
            (ball.products_left(ids, x), ids, x_column),
        ):
            products = np.asarray(products, dtype=np.int64)
            inside = products != sentinel
            if not inside.any():
                continue
            products, lefts, rights = products[inside], lefts[inside], rights[inside]
            fresh = ~members[products]
            if not fresh.any():
                continue
            products, lefts, rights = products[fresh], lefts[fresh], rights[fresh]
            new_ids, first = np.unique(products, return_index=True)
            for k, pos in zip(new_ids.tolist(), first.tolist()):
                members[k] = True
                left[k] = lefts[pos]
                right[k] = rights[pos]
                seq[k] = state.counter
                state.counter += 1
                if k == 0:
                    return Contradiction(_derivation(state, 0))
                queue.append(k)
    return state


# ---------------------------------------------------------------------------
# Branching search
# ---------------------------------------------------------------------------

class _SearchBudget(Exception):
    pass


@dataclass
class _Failed:
    tree: Tuple


@dataclass
class _Consistent:
    state: ConeState


class _Capped:
    pass


_CAPPED = _Capped()


class ConeSearch:
    """
    Depth-first case analysis over undecided ball elements

    Branching picks the lowest-id element g with neither g nor g^-1 in the
    cone and tries g first, then g^-1. A consistent branch ends the search;
    two failed branches make a proof node; anything else is capped.
    """

    def __init__(self, ball: Ball, depth_cap: int, max_nodes: int, deadline: Optional[float] = None):
        self.ball = ball
        self.depth_cap = depth_cap
        self.max_nodes = max_nodes
        self.deadline = deadline
        self.stats = SearchStats(ball_size=ball.size, table_mode=ball.table_mode)

    def _tick(self, depth: int):
        self.stats.nodes += 1
        self.stats.max_depth = max(self.stats.max_depth, depth)
        if self.stats.nodes > self.max_nodes:
            raise _SearchBudget(f"search exceeded {self.max_nodes} nodes")
        if self.deadline is not None and self.stats.nodes % 64 == 0 and time.monotonic() > self.deadline:
            raise _SearchBudget("deadline reached during cone search")

    def _explore(self, state: ConeState):
        self._tick(state.depth)
        result = saturate(state, self.ball)
        if isinstance(result, Contradiction):
            return _Failed(("leaf", result.chain))
        decided = result.members | result.members[self.ball.inverse]
        decided[0] = True
        undecided = np.flatnonzero(~decided)
        if undecided.size == 0:
            return _Consistent(result)
        if result.depth >= self.depth_cap:
            return _CAPPED
        g = int(undecided[0])
        positive = self._explore(result.assume(g))
        if isinstance(positive, _Consistent):
            return positive
        negative = self._explore(result.assume(int(self.ball.inverse[g])))
        if isinstance(negative, _Consistent):
            return negative
        if isinstance(positive, _Failed) and isinstance(negative, _Failed):
            return _Failed(("branch", g, positive.tree, negative.tree))
        return _CAPPED

    def run(self, seed_ids: Sequence[int]):
        state = ConeState.empty(self.ball.size)
        for element in seed_ids:
            state = state.assume(element, branch=False)
        started = time.monotonic()
        try:
            return self._explore(state)
        finally:
            self.stats.elapsed_seconds = time.monotonic() - started


def _tree_to_node(ball: Ball, tree: Tuple) -> CertificateNode:
    if tree[0] == "leaf":
        return LeafNode(tuple(Step(ball.word(x), ball.word(y), ball.word(k)) for x, y, k in tree[1]))
    _, g, positive, negative = tree
    return BranchNode(ball.word(g), _tree_to_node(ball, positive), _tree_to_node(ball, negative))


def _seed_ids(ball: Ball, seed: Sequence[Word]) -> List[int]:
    ids = []
    for word in seed:
        element = ball.id_of(word)
        if element == 0:
            raise ValueError(f"seed element '{render_word(word)}' is the identity")
        if element < 0:
            raise ValueError(f"seed element '{render_word(word)}' is outside the ball")
        ids.append(element)
    return ids


def construct_positive_cone(
    ball: Ball,
    presentation: Presentation,
    seed: Sequence[Word] = (),
    depth_cap: int = 16,
    max_nodes: int = 2000000,
    deadline: Optional[float] = None,
) -> OrderVerdict:
    """Run the branching search on one ball"""
    if ball.table is None:
        logger.info("cone search on radius %d uses on-demand products", ball.radius)
    search = ConeSearch(ball, depth_cap, max_nodes, deadline)
    seed = tuple(ball.system.rewrite(w) for w in seed)
    try:
        outcome = search.run(_seed_ids(ball, seed))
    except _SearchBudget as e:
        logger.info("cone search stopped: %s", e)
        return OrderVerdict(VerdictKind.INCONCLUSIVE, ball.radius,
                            reason=InconclusiveReason.BUDGET_EXCEEDED, detail=str(e), stats=search.stats)

    logger.info("cone search at radius %d: %d nodes, depth %d",
                ball.radius, search.stats.nodes, search.stats.max_depth)
    if isinstance(outcome, _Failed):
        certificate = Certificate(
            presentation_text=presentation.render(),
            presentation_digest=presentation.digest(),
            letter_order=ball.system.order.render(),
            radius=ball.radius,
            seed=seed,
            tree=_tree_to_node(ball, outcome.tree),
        )
        return OrderVerdict(VerdictKind.NOT_LEFT_ORDERABLE, ball.radius,
                            certificate=certificate, stats=search.stats)
    if isinstance(outcome, _Consistent):
        witness = tuple(ball.word(i) for i in outcome.state.member_ids().tolist())
        return OrderVerdict(VerdictKind.CONSISTENT_AT_RADIUS, ball.radius,
                            witness=witness, stats=search.stats)
    return OrderVerdict(VerdictKind.INCONCLUSIVE, ball.radius, reason=InconclusiveReason.DEPTH_CAP,
                        detail=f"depth cap {depth_cap} reached", stats=search.stats)


def default_seed(presentation: Presentation, system: RewritingSystem) -> Tuple[Word, ...]:
    """First generator that is not trivial in the group, if any"""
    for name in presentation.alphabet:
        if system.rewrite(name):
            return (name,)
    return ()


def test_left_orderability(
    presentation: Presentation,
    config: Optional[RunConfig] = None,
    system: Optional[RewritingSystem] = None,
    seed: Optional[Sequence[Word]] = None,
) -> OrderVerdict:
    """
    Search at each radius of the schedule.

    Returns the first ``NOT_LEFT_ORDERABLE`` verdict, otherwise the outcome
    at the last radius tried. Raises ``NonConfluentError`` when completion
    did not finish, since nothing can be decided then.
    """
    config = config or RunConfig()
    deadline = config.deadline()
    if system is None:
        system = knuth_bendix(presentation, config.max_rules, config.max_lhs_length, deadline)
    system.require_confluent()
    if seed is None:
        seed = default_seed(presentation, system) if config.seeded else ()

    history: List[Tuple[int, str]] = []
    verdict: Optional[OrderVerdict] = None
    for radius in config.radii:
        try:
            ball = build_ball(system, radius, config.max_ball_size, deadline)
            ball = build_mul_table(ball, config.table_cap, deadline)
        except ResourceExceeded as e:
            verdict = OrderVerdict(VerdictKind.INCONCLUSIVE, radius,
                                   reason=InconclusiveReason.BUDGET_EXCEEDED, detail=str(e))
            history.append((radius, verdict.kind.value))
            break
        verdict = construct_positive_cone(ball, presentation, seed, config.effective_depth_cap,
                                          config.max_search_nodes, deadline)
        history.append((radius, verdict.kind.value))
        if verdict.kind is VerdictKind.NOT_LEFT_ORDERABLE:
            break
        if verdict.reason is InconclusiveReason.BUDGET_EXCEEDED:
            break
    verdict.history = history
    return verdict


test_left_orderability.__test__ = False


# ---------------------------------------------------------------------------
# Hand case analyses
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Leaf:
    """Assumed-positive factors whose product is the identity"""
    factors: Tuple[Word, ...]


@dataclass(frozen=True)
class Case:
    """Split on ``element``: ``positive`` assumes it, ``negative`` its inverse"""
    element: Word
    positive: Union["Case", Leaf]
    negative: Union["Case", Leaf]


def _leaf_steps(system: RewritingSystem, factors: Sequence[Word]) -> Tuple[Step, ...]:
    if len(factors) < 2:
        raise ValueError("a contradiction needs at least two factors")
    steps = []
    product = system.rewrite(factors[0])
    for factor in factors[1:]:
        y = system.rewrite(factor)
        nxt = system.rewrite(product + y)
        steps.append(Step(product, y, nxt))
        product = nxt
    return tuple(steps)


def certificate_from_cases(
    presentation: Presentation,
    system: RewritingSystem,
    seed: Sequence[Word],
    cases: Union[Case, Leaf],
    subgroup: Optional[CyclicEpi] = None,
) -> Certificate:
    """Turn a hand case analysis into a checkable certificate"""
    def build(node):
        if isinstance(node, Leaf):
            return LeafNode(_leaf_steps(system, node.factors))
        return BranchNode(system.rewrite(node.element), build(node.positive), build(node.negative))

    return Certificate(
        presentation_text=presentation.render(),
        presentation_digest=presentation.digest(),
        letter_order=system.order.render(),
        radius=0,
        seed=tuple(system.rewrite(w) for w in seed),
        tree=build(cases),
        subgroup=subgroup,
    )


# ---------------------------------------------------------------------------
# Certificate checking
# ---------------------------------------------------------------------------

@dataclass
class CertificateCheck:
    """Result of checking a certificate; truthy when valid"""
    valid: bool
    failure: str = ""
    leaves_checked: int = 0
    steps_checked: int = 0

    def __bool__(self) -> bool:
        return self.valid

    def to_dict(self) -> Dict:
        return {
            "valid": self.valid,
            "failure": self.failure or None,
            "leaves_checked": self.leaves_checked,
            "steps_checked": self.steps_checked,
        }


class _Invalid(Exception):
    pass


class CertificateChecker:
    """Independent re-verification of a certificate against a presentation"""

    def __init__(self, certificate: Certificate, presentation: Presentation,
                 system: Optional[RewritingSystem] = None, config: Optional[RunConfig] = None):
        self.certificate = certificate
        self.presentation = presentation
        self.system = system
        self.config = config or RunConfig()
        self.result = CertificateCheck(valid=False)
        self.subgroup: Optional[CyclicEpi] = None

    def _nontrivial(self, word: Word, what: str) -> Word:
        self.presentation.check_word(word)
        normal = self.system.rewrite(word)
        if not normal:
            raise _Invalid(f"{what} '{render_word(word)}' is the identity")
        subgroup = self.subgroup
        if subgroup is not None and not subgroup.contains(normal):
            raise _Invalid(f"{what} '{render_word(word)}' is not in the subgroup")
        return normal

    def _leaf(self, leaf: LeafNode, assumptions: Tuple[Word, ...], path: str):
        if not leaf.steps:
            raise _Invalid(f"{path}: empty contradiction")
        known = set(assumptions)
        product = None
        for i, step in enumerate(leaf.steps, 1):
            x, y = self.system.rewrite(step.x), self.system.rewrite(step.y)
            if x not in known:
                raise _Invalid(f"{path}, step {i}: '{render_word(step.x)}' is neither assumed nor derived")
            if y not in known:
                raise _Invalid(f"{path}, step {i}: '{render_word(step.y)}' is neither assumed nor derived")
            product = self.system.rewrite(x + y)
            if product != self.system.rewrite(step.product):
                raise _Invalid(
                    f"{path}, step {i}: {render_word(step.x)} * {render_word(step.y)} "
                    f"is {render_word(product)}, not {render_word(step.product)}"
                )
            known.add(product)
            self.result.steps_checked += 1
        if product != IDENTITY:
            raise _Invalid(f"{path}: final product {render_word(product)} is not the identity")
        self.result.leaves_checked += 1

    def _walk(self, node: CertificateNode, assumptions: Tuple[Word, ...], path: str):
        if isinstance(node, LeafNode):
            self._leaf(node, assumptions, path)
            return
        element = self._nontrivial(node.element, f"{path}: branch element")
        inverse = self.system.rewrite(invert(element))
        self._walk(node.positive, assumptions + (element,), f"{path}/{render_word(element)}")
        self._walk(node.negative, assumptions + (inverse,), f"{path}/{render_word(inverse)}")

    def check(self) -> CertificateCheck:
        cert = self.certificate
        try:
            if cert.presentation_digest != self.presentation.digest():
                raise _Invalid("certificate was issued for a different presentation")
            order = LetterOrder(self.presentation.alphabet).render()
            if cert.letter_order != order:
                raise _Invalid(f"letter order '{cert.letter_order}' does not match '{order}'")
            if self.system is None:
                self.system = knuth_bendix(self.presentation, self.config.max_rules,
                                           self.config.max_lhs_length, self.config.deadline())
            if not self.system.confluent:
                raise _Invalid("rewriting system did not complete; nontriviality cannot be checked")
            if cert.subgroup is not None:
                if len(cert.subgroup.exponents) != self.presentation.rank:
                    raise _Invalid("subgroup exponents do not match the generators")
                self.subgroup = CyclicEpi(cert.subgroup.modulus, cert.subgroup.exponents,
                                          self.presentation.alphabet)
            if len(cert.seed) > 1:
                raise _Invalid("the seed may hold at most one element")
            seed = tuple(self._nontrivial(w, "seed element") for w in cert.seed)
            self._walk(cert.tree, seed, "root")
        except _Invalid as e:
            self.result.failure = str(e)
            return self.result
        except PresentationParseError as e:
            self.result.failure = f"certificate word outside the alphabet: {e}"
            return self.result
        self.result.valid = True
        return self.result


def check_certificate(certificate: Certificate, presentation: Presentation,
                      system: Optional[RewritingSystem] = None,
                      config: Optional[RunConfig] = None) -> CertificateCheck:
    """Valid iff the certificate proves ``presentation`` (or its subgroup) is not left-orderable"""
    return CertificateChecker(certificate, presentation, system, config).check()


def certificate_presentation(certificate: Certificate) -> Presentation:
    """Presentation echoed inside a certificate"""
    return parse_presentation(certificate.presentation_text)
