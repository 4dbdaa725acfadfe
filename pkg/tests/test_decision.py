import math

import numpy as np
import pytest

from selfinduced.automorphisms import ElementaryTwist, Endomorphism, conjugacy, incidence_matrix
from selfinduced.config import Config
from selfinduced.decision import (
    ACCEPTED,
    INCONCLUSIVE,
    REJECTED,
    DecisionState,
    base_automorphism,
    compose_twists,
    decide,
    induction_step,
    smallest_period,
)
from selfinduced.errors import ConditionFailure
from selfinduced.rauzy import PermutationPair, edge_twist, enumerate_class, induce_pair, is_irreducible
from selfinduced.words import Word

from conftest import PHI
from oracles import compose_images, eig_right_vector

PSI_PAIR = PermutationPair.parse("abcd/dacb")
PSI_TWISTS = ["b->bd", "d->cd", "c->cd", "d->ad", "c->ac", "a->ab", "b->ab", "a->ad"]


def twist(text):
    target, image = text.split("->")
    if image[0] == target:
        return ElementaryTwist(target, image[1])
    return ElementaryTwist(target, image[0], prepend=True)


def test_base_automorphism_psi(psi, psi_detection):
    cand, orientation, notes = base_automorphism(psi, 1, psi_detection.singularities, PSI_PAIR)
    assert orientation == "as-is"
    assert cand.conjugator == Word.parse("a^-1")
    assert cand.automorphism.as_strings() == PHI
    assert cand.automorphism == conjugacy(Word.parse("a^-1"), "abcd").compose(psi)
    assert "positive = False" in notes["mirror"]


def test_base_automorphism_rejects_when_both_fail(psi, psi_detection):
    with pytest.raises(ConditionFailure) as err:
        base_automorphism(psi, 1, psi_detection.singularities, PermutationPair.parse("abcd/dcba"))
    assert err.value.condition == "C5"


@pytest.fixture(scope="module")
def stage0(phi, psi_detection):
    return DecisionState(0, phi, PSI_PAIR, psi_detection.singularities, [], [PSI_PAIR])


def test_stage_zero(stage0):
    out = induction_step(stage0)
    assert not out.done
    assert [str(t) for t in out.state.twists] == ["b->bd"]
    assert out.state.remainder.as_strings() == {"a": "abacd", "b": "abb", "c": "accd", "d": "acd"}
    assert out.state.pair == induce_pair(PSI_PAIR, 0)


def test_stage_one(stage0):
    out = induction_step(induction_step(stage0).state)
    assert str(out.state.twists[-1]) == "d->cd"
    assert out.state.remainder.as_strings() == {"a": "abad", "b": "abb", "c": "acd", "d": "ad"}


def test_remainder_shrinks_until_identity(stage0):
    state, done, lengths = stage0, False, [stage0.remainder.total_image_length()]
    while not done:
        out = induction_step(state)
        state, done = out.state, out.done
        lengths.append(state.remainder.total_image_length())
    assert state.stage == 8
    assert state.remainder.is_identity()
    assert all(x > y for x, y in zip(lengths, lengths[1:]))


def test_compose_twists():
    twists = [twist(t) for t in PSI_TWISTS]
    assert compose_twists(twists, "abcd").as_strings() == PHI
    images = {x: x for x in "abcd"}
    for t in twists:
        images = compose_images(images, t.as_endomorphism("abcd").as_strings())
    assert images == PHI


def test_smallest_period():
    t = [ElementaryTwist("a", "b"), ElementaryTwist("b", "a", prepend=True)]
    p = PermutationPair.parse("ab/ba")
    assert smallest_period(t * 3, [p] * 7) == 2
    assert smallest_period(t[:1] * 4, [p] * 5) == 1
    r = PermutationPair.parse("abc/cba")
    s = PermutationPair.parse("abc/cab")
    assert smallest_period(t * 2, [r, s, r, s, r]) == 2
    assert smallest_period(t * 2, [r, s, s, s, s]) == 4  # the pair never closes early


def test_decide_psi(psi_report, psi):
    r = psi_report
    assert r.verdict == ACCEPTED and r.exit_code == 0
    assert r.k == 1 and r.orientation == "as-is"
    assert r.pair == PSI_PAIR
    assert [str(t) for t in r.twists] == PSI_TWISTS
    assert compose_twists(r.twists, psi.alphabet) == r.phi
    assert r.period == 8 and r.delta_automorphism == r.phi
    m = incidence_matrix(psi)
    assert list(r.lengths.values()) == pytest.approx(eig_right_vector(m), rel=1e-8)
    assert math.fsum(r.lengths.values()) == pytest.approx(1.0)
    assert r.diagnostics["verification"]["factors_match"]
    assert r.diagnostics["verification"]["numeric_matches"]


def test_psi_pairs_stay_in_class(psi_report):
    cls = enumerate_class(PSI_PAIR)
    pair = psi_report.pair
    for stage in psi_report.diagnostics["stages"]:
        here = PermutationPair.parse(stage["pair"])
        assert here in cls.nodes and is_irreducible(here)
        used = stage["twist"]
        assert used in (str(edge_twist(here, 0)), str(edge_twist(here, 1)))
    assert pair in cls.nodes


def test_decide_special(special):
    r = decide(special)
    assert r.verdict == REJECTED and r.exit_code == 1
    assert r.condition == "C1"
    assert r.k == 2


def test_decide_fibonacci(fib):
    r = decide(fib)
    assert r.verdict == ACCEPTED
    assert sorted(r.pair.top) == ["a", "b"]
    golden = (1 + math.sqrt(5)) / 2
    assert r.lengths["a"] / r.lengths["b"] == pytest.approx(golden)
    assert r.diagnostics["verification"]["numeric_matches"]


def test_decide_rejects_non_primitive():
    r = decide(Endomorphism.from_strings({"a": "a", "b": "ab"}))
    assert r.verdict == REJECTED and r.condition == "positive-primitive"


def test_decide_rejects_bad_determinant():
    r = decide(Endomorphism.from_strings({"a": "aab", "b": "abb"}))
    assert r.verdict == REJECTED and r.condition == "positive-primitive"


def test_decide_depth_cap_is_inconclusive(psi):
    r = decide(psi, Config(max_depth=8))
    assert r.verdict == INCONCLUSIVE and r.exit_code == 2


def test_decide_without_verification(psi):
    r = decide(psi, Config(verify=False))
    assert r.accepted and "verification" not in r.diagnostics


def test_report_dict(psi_report):
    d = psi_report.as_dict()
    assert d["verdict"] == "accepted"
    assert d["pair"] == {"pi0": list("abcd"), "pi1": list("dacb")}
    assert d["twists"] == PSI_TWISTS
    assert d["phi"] == PHI
    assert d["eta"] == pytest.approx(max(np.linalg.eigvals(np.array(
        [[2, 1, 1, 1], [1, 2, 0, 0], [1, 0, 2, 1], [2, 2, 1, 1]], dtype=float)).real))
