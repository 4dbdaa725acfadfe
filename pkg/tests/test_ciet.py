import math

import numpy as np
import pytest

from selfinduced.automorphisms import factors, incidence_matrix
from selfinduced.ciet import (
    Ciet,
    cross_validate,
    detect_self_induction,
    iet_apply,
    iet_inverse,
    orbit_coding,
    perron,
    rauzy_induce_numeric,
    simulate,
)
from selfinduced.errors import InputError, IntervalConnectionError, NotPrimitiveError
from selfinduced.rauzy import PermutationPair
from selfinduced.words import Word

from oracles import char_poly_root, eig_right_vector, iet_map, itinerary, rotation_coding

ETA = 2 + math.sqrt(3)
GOLDEN = (1 + math.sqrt(5)) / 2
MIRROR = {"a": 2 * ETA - 1, "b": ETA, "c": 2 * ETA}


def mirror_ciet():
    return Ciet.build(PermutationPair.parse("abc/cab"), MIRROR)


@pytest.fixture(scope="module")
def psi_ciet(psi):
    return Ciet.build(PermutationPair.parse("abcd/dacb"), perron(incidence_matrix(psi)).vector)


def test_offsets():
    c = mirror_ciet()
    assert c.offsets(0)["a"] == 0
    assert c.offsets(0)["c"] == pytest.approx(3 * ETA - 1)
    assert c.offsets(1)["a"] == pytest.approx(2 * ETA)
    assert sum(c.domain(x)[1] - c.domain(x)[0] for x in "abc") == pytest.approx(c.total)


def test_build_errors():
    p = PermutationPair.parse("ab/ba")
    with pytest.raises(InputError):
        Ciet.build(p, [1.0, 0.0])
    with pytest.raises(InputError):
        Ciet.build(p, [1.0])
    with pytest.raises(InputError):
        Ciet.build(p, [1.0, math.inf])


def test_iet_apply():
    c = mirror_ciet()
    assert iet_apply(c, 0.0) == pytest.approx(2 * ETA)
    assert iet_apply(c, 0.5) == pytest.approx(0.5 + c.offsets(1)["a"])
    with pytest.raises(InputError):
        iet_apply(c, c.total)


def test_iet_matches_oracle():
    c = mirror_ciet()
    for x in np.linspace(0, c.total, 37, endpoint=False):
        assert iet_apply(c, x) == pytest.approx(iet_map("abc", "cab", MIRROR, x))
        assert iet_inverse(c, iet_apply(c, x)) == pytest.approx(x)


def test_first_step_of_mirror():
    st = rauzy_induce_numeric(mirror_ciet())
    assert st.kind == 0
    assert st.ciet.length("c") == pytest.approx(ETA)
    assert str(st.twist) == "b->bc"


def test_mirror_five_steps():
    c = mirror_ciet()
    last = simulate(c, 5).steps[-1].ciet
    assert last.pair == c.pair
    for x in "abc":
        assert last.length(x) == pytest.approx(c.length(x) / ETA, rel=1e-9)


def test_mirror_self_induction():
    found = detect_self_induction(mirror_ciet())
    assert found.steps == 5
    assert found.dilation == pytest.approx(ETA, rel=1e-9)


def test_flipped_pair_reaches_periodic_orbit():
    flipped = Ciet.build(mirror_ciet().pair.mirror(), MIRROR)
    assert detect_self_induction(flipped, 50) is None
    later = simulate(flipped, 5).steps[-1].ciet
    assert str(later.pair) == "cab/bac"
    ratio = later.normalized() / later.normalized()[0]
    assert ratio == pytest.approx([1, ETA - 2, 1], rel=1e-9)
    found = detect_self_induction(later, 50)
    assert found.steps == 5 and found.dilation == pytest.approx(ETA, rel=1e-6)


def test_fibonacci_first_step():
    c = Ciet.build(PermutationPair.parse("ab/ba"), {"a": GOLDEN, "b": 1})
    assert rauzy_induce_numeric(c).kind == 1


def test_connection_error():
    with pytest.raises(IntervalConnectionError):
        rauzy_induce_numeric(Ciet.build(PermutationPair.parse("ab/ba"), [1.0, 1.0]))


def test_length_loss_per_step():
    c = mirror_ciet()
    for st in simulate(c, 12).steps:
        a0, a1 = c.pair.alpha0, c.pair.alpha1
        assert st.ciet.total == pytest.approx(c.total - min(c.length(a0), c.length(a1)))
        c = st.ciet


def test_psi_self_induction(psi_ciet, psi):
    found = detect_self_induction(psi_ciet)
    assert found.steps == 8
    assert [str(t) for t in found.twists] == [
        "b->bd", "d->cd", "c->cd", "d->ad", "c->ac", "a->ab", "b->ab", "a->ad"]
    assert found.dilation == pytest.approx(char_poly_root(incidence_matrix(psi)), rel=1e-9)


def test_orbit_coding_first_letter():
    c = mirror_ciet()
    for x in np.linspace(0, c.total, 29, endpoint=False):
        word = orbit_coding(c, x, 1)
        lo, hi = c.domain(word)
        assert lo <= x < hi


def test_orbit_coding_matches_oracle():
    c = mirror_ciet()
    assert orbit_coding(c, 1.2345, 40) == itinerary("abc", "cab", MIRROR, 1.2345, 40)


def test_backward_coding_inverts():
    c = mirror_ciet()
    x = 2.5
    y = x
    for _ in range(10):
        y = iet_inverse(c, y)
    forward = orbit_coding(c, y, 10)
    # the bottom-row letter at z is the top-row letter of f⁻¹(z)
    backward = orbit_coding(c, x, 10, "backward")
    assert forward == backward[::-1]


def test_orbit_coding_range():
    with pytest.raises(InputError):
        orbit_coding(mirror_ciet(), -1.0, 3)
    with pytest.raises(ValueError):
        orbit_coding(mirror_ciet(), 1.0, 3, "sideways")


def test_fibonacci_coding_is_rotation():
    c = Ciet.build(PermutationPair.parse("ab/ba"), {"a": GOLDEN, "b": 1})
    x = 0.3
    alpha = 1 / (1 + GOLDEN)
    assert orbit_coding(c, x * c.total, 200) == rotation_coding(alpha, x, 200)


def test_recoding_through_one_step():
    c = mirror_ciet()
    st = rauzy_induce_numeric(c)
    x = 0.123456 * st.ciet.total
    image = st.twist.as_endomorphism("abc").apply(Word.positive(orbit_coding(st.ciet, x, 50))).symbols()
    assert orbit_coding(c, x, len(image)) == image


def test_psi_coding_of_zero_has_psi_pairs(psi_ciet, psi):
    word = orbit_coding(psi_ciet, 0.0, 200)
    assert {word[i:i + 2] for i in range(len(word) - 1)} == {f for f in factors(psi, 2) if len(f) == 2}


def test_perron_golden():
    r = perron([[1, 1], [1, 0]])
    assert r.eigenvalue == pytest.approx(GOLDEN)
    assert r.vector[0] / r.vector[1] == pytest.approx(GOLDEN)


def test_perron_matches_oracles(psi):
    m = incidence_matrix(psi)
    r = perron(m)
    assert (r.vector > 0).all() and r.residual < 1e-10
    assert r.eigenvalue == pytest.approx(char_poly_root(m), rel=1e-10)
    assert r.vector == pytest.approx(eig_right_vector(m), rel=1e-8)
    assert np.max(np.abs(m @ r.vector - r.eigenvalue * r.vector)) < 1e-10


def test_perron_rejects_identity():
    with pytest.raises(NotPrimitiveError):
        perron(np.eye(3))


def test_cross_validate(psi, psi_ciet, fib):
    assert cross_validate(psi, psi_ciet, 10).ok
    golden = Ciet.build(PermutationPair.parse("ab/ba"), {"a": GOLDEN, "b": 1})
    assert cross_validate(fib, golden, 10).ok


def test_cross_validate_perturbed(psi, psi_ciet):
    lengths = np.array(psi_ciet.lengths) * np.array([1.05, 1, 1, 1])
    bad = Ciet.build(psi_ciet.pair, lengths)
    report = cross_validate(psi, bad, 10)
    assert not report.ok
    assert report.first_difference is not None
