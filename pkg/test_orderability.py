"""Tests for the positive-cone search, certificates and the certificate checker"""

import dataclasses
import json

import pytest

from conftest import load
from src import orderability
from src.config import RunConfig
from src.enumeration import build_ball, build_mul_table
from src.errors import CertificateFormatError, NonConfluentError
from src.orderability import (
    BranchNode, Certificate, ConeState, Contradiction, InconclusiveReason, LeafNode, Step, VerdictKind,
    certificate_from_cases, certificate_presentation, check_certificate, construct_positive_cone,
    default_seed, saturate,
)
from src.rewriting import knuth_bendix
from src.weeks import CASE_ANALYSES, N1, N1_CASES, N2

FAST = RunConfig(radii=(3,), timeout=60)


def _verdict(name, config=FAST, **kwargs):
    return orderability.test_left_orderability(load(name), config, **kwargs)


def test_z_mod_2_is_not_left_orderable():
    verdict = _verdict("z_mod2")
    assert verdict.kind is VerdictKind.NOT_LEFT_ORDERABLE
    assert verdict.ord_symbol == "N"
    cert = verdict.certificate
    assert cert.seed == ("a",)
    assert isinstance(cert.tree, LeafNode)
    assert cert.tree.steps == (Step("a", "a", ""),)
    assert check_certificate(cert, load("z_mod2"))


def test_z_mod_3_is_not_left_orderable(z3, z3_system):
    verdict = orderability.test_left_orderability(z3, FAST, system=z3_system)
    assert verdict.not_left_orderable
    assert verdict.history == [(3, "not_left_orderable")]
    assert check_certificate(verdict.certificate, z3, z3_system).valid


def test_unseeded_search_branches_on_both_signs():
    p = load("z_mod2")
    system = knuth_bendix(p)
    ball = build_mul_table(build_ball(system, 1))
    verdict = construct_positive_cone(ball, p, seed=())
    assert verdict.kind is VerdictKind.NOT_LEFT_ORDERABLE
    cert = verdict.certificate
    assert isinstance(cert.tree, BranchNode)
    assert cert.tree.element == "a"
    assert len(cert.leaves()) == 2
    assert cert.depth() == 1
    assert check_certificate(cert, p, system)


def test_infinite_cyclic_is_consistent():
    verdict = _verdict("z")
    assert verdict.kind is VerdictKind.CONSISTENT_AT_RADIUS
    assert verdict.ord_symbol == "O"
    assert set(verdict.witness) == {"a", "aa", "aaa"}
    assert verdict.certificate is None


@pytest.mark.parametrize("name", [
    "z", "z2", "klein",
    pytest.param("f2", marks=pytest.mark.slow),
])
def test_left_orderable_groups_are_never_refuted(name):
    config = RunConfig(radii=(2, 3, 4, 5, 6), timeout=300)
    verdict = _verdict(name, config)
    assert [radius for radius, _ in verdict.history] == [2, 3, 4, 5, 6]
    assert all(kind != "not_left_orderable" for _, kind in verdict.history)
    assert verdict.certificate is None


@pytest.mark.xfail(raises=NonConfluentError, strict=True,
                   reason="aaBBB has no finite shortlex rewriting system over a < A < b < B")
def test_trefoil_is_never_refuted():
    verdict = _verdict("trefoil", RunConfig(radii=(2, 3), max_rules=2000, timeout=60))
    assert verdict.kind is not VerdictKind.NOT_LEFT_ORDERABLE


@pytest.mark.parametrize("name", ["z_mod2", "z_mod3", "z", "f2"])
def test_flipping_the_seed_keeps_the_outcome(name):
    positive = _verdict(name, seed=("a",))
    negative = _verdict(name, seed=("A",))
    assert positive.not_left_orderable == negative.not_left_orderable
    if negative.not_left_orderable:
        assert check_certificate(negative.certificate, load(name))


@pytest.mark.parametrize("name, first", [("z_mod2", 1), ("z_mod3", 2)])
def test_refutation_persists_at_larger_radii(name, first):
    for radius in range(first, 7):
        verdict = _verdict(name, RunConfig(radii=(radius,), timeout=60))
        assert verdict.kind is VerdictKind.NOT_LEFT_ORDERABLE, radius


def test_screen_mode_caps_depth():
    config = RunConfig(radii=(3,), screen=True, depth_cap=16)
    assert config.effective_depth_cap == 5
    verdict = orderability.test_left_orderability(load("f2"), config)
    assert verdict.kind is not VerdictKind.NOT_LEFT_ORDERABLE
    assert verdict.stats.max_depth <= 5


def test_node_budget_gives_inconclusive():
    config = RunConfig(radii=(3,), max_search_nodes=1, seeded=False)
    verdict = orderability.test_left_orderability(load("f2"), config)
    assert verdict.kind is VerdictKind.INCONCLUSIVE
    assert verdict.reason is InconclusiveReason.BUDGET_EXCEEDED
    assert verdict.ord_symbol == ""


def test_non_confluent_system_is_refused(weeks):
    with pytest.raises(NonConfluentError):
        orderability.test_left_orderability(weeks, RunConfig(max_rules=5))


def test_default_seed(z3, z3_system):
    assert default_seed(z3, z3_system) == ("a",)


def test_saturate_derives_the_identity(z3_system):
    ball = build_mul_table(build_ball(z3_system, 2))
    start = ConeState.empty(ball.size).assume(ball.id_of("a"), branch=False)
    result = saturate(start, ball)
    assert isinstance(result, Contradiction)
    assert result.chain[-1][2] == 0
    assert not start.members[0]


def test_saturate_keeps_consistent_cones(free2):
    ball = build_mul_table(build_ball(knuth_bendix(free2), 2))
    state = saturate(ConeState.empty(ball.size).assume(ball.id_of("a"), branch=False), ball)
    assert not isinstance(state, Contradiction)
    assert {ball.word(i) for i in state.member_ids().tolist()} == {"a", "aa"}
    assert state.bitset() == (1 << ball.id_of("a")) | (1 << ball.id_of("aa"))


def test_certificate_json_round_trip(z3, z3_system):
    cert = orderability.test_left_orderability(z3, FAST, system=z3_system).certificate
    data = json.loads(cert.to_json())
    assert data["format"] == "positive-cone-certificate"
    assert data["version"] == 1
    assert set(data) == {"format", "version", "presentation", "letter_order", "radius", "seed",
                         "subgroup", "tree"}
    assert data["presentation"]["digest"] == z3.digest()
    loaded = Certificate.from_json(cert.to_json())
    assert loaded == cert
    assert certificate_presentation(loaded) == z3


def test_tampered_certificates_are_rejected(z3, z3_system):
    cert = orderability.test_left_orderability(z3, FAST, system=z3_system).certificate
    steps = cert.tree.steps

    wrong_product = dataclasses.replace(
        cert, tree=LeafNode((Step(steps[0].x, steps[0].y, "a"),) + steps[1:]))
    result = check_certificate(wrong_product, z3, z3_system)
    assert not result.valid and "step 1" in result.failure

    truncated = dataclasses.replace(cert, tree=LeafNode(steps[:-1]))
    assert not check_certificate(truncated, z3, z3_system)

    identity_seed = dataclasses.replace(cert, seed=("aA",))
    assert "identity" in check_certificate(identity_seed, z3, z3_system).failure

    two_seeds = dataclasses.replace(cert, seed=("a", "A"))
    assert not check_certificate(two_seeds, z3, z3_system)

    other_group = load("z_mod2")
    assert "different presentation" in check_certificate(cert, other_group).failure


def test_malformed_certificates_raise():
    with pytest.raises(CertificateFormatError):
        Certificate.from_json("{not json")
    with pytest.raises(CertificateFormatError):
        Certificate.from_json(json.dumps({"format": "something-else"}))
    with pytest.raises(CertificateFormatError):
        Certificate.from_dict({"format": "positive-cone-certificate", "version": 1,
                               "presentation": {"text": "gens: a\n", "digest": "x"},
                               "letter_order": "a A", "radius": 1, "seed": [],
                               "tree": {"branch": "a", "positive": {"contradiction": []}}})


@pytest.mark.parametrize("label", ["weeks", "n1", "n2"])
def test_hand_case_analyses_are_valid_certificates(weeks, weeks_system, label):
    seed, cases, subgroup = CASE_ANALYSES[label]
    cert = certificate_from_cases(weeks, weeks_system, seed, cases, subgroup)
    result = check_certificate(cert, weeks, weeks_system)
    assert result.valid, result.failure
    assert result.leaves_checked == len(cert.leaves())
    round_tripped = Certificate.from_json(cert.to_json())
    assert check_certificate(round_tripped, weeks, weeks_system).valid


def test_subgroup_membership_is_enforced(weeks, weeks_system):
    cert = certificate_from_cases(weeks, weeks_system, ("a",), N1_CASES, N2)
    result = check_certificate(cert, weeks, weeks_system)
    assert not result.valid
    assert "not in the subgroup" in result.failure
    assert N1.contains("a") and not N2.contains("a")


@pytest.mark.slow
def test_weeks_search_finds_a_certificate(weeks, weeks_system):
    verdict = orderability.test_left_orderability(weeks, RunConfig(), system=weeks_system)
    assert verdict.kind is VerdictKind.NOT_LEFT_ORDERABLE
    assert verdict.radius <= 6
    result = check_certificate(verdict.certificate, weeks, weeks_system)
    assert result.valid, result.failure


@pytest.mark.slow
def test_weeks_refutation_persists_one_radius_further(weeks, weeks_system):
    first = orderability.test_left_orderability(weeks, RunConfig(), system=weeks_system)
    assert first.not_left_orderable
    later = orderability.test_left_orderability(
        weeks, RunConfig(radii=(first.radius + 1,), timeout=1800), system=weeks_system)
    assert later.kind is VerdictKind.NOT_LEFT_ORDERABLE
    assert check_certificate(later.certificate, weeks, weeks_system)


def test_saturation_is_a_closure_operator(free2):
    ball = build_mul_table(build_ball(knuth_bendix(free2), 3))
    a, b = ball.id_of("a"), ball.id_of("b")
    small = saturate(ConeState.empty(ball.size).assume(a, branch=False), ball)
    large = saturate(ConeState.empty(ball.size).assume(a, branch=False).assume(b, branch=False), ball)
    assert not isinstance(small, Contradiction) and not isinstance(large, Contradiction)
    assert small.members[a] and large.members[a] and large.members[b]
    assert not (small.members & ~large.members).any()
    again = saturate(large, ball)
    assert (again.members == large.members).all()
    assert {ball.word(i) for i in large.member_ids().tolist()} == {
        w for w in ball.elements if w and set(w) <= {"a", "b"}}
