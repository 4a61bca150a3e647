import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from qsatake.bimodcalc import Identity, maps_equal, scalar_of
from qsatake.qarith import quantum_int, to_qrational
from qsatake.satake import (FunctorSpec, calibrate_trivalent, cap_image, closed_scalar,
                            cup_image, default_spec, functor_image, functoriality_sample,
                            merge_image, plan_image, split_raw, verify_functor)
from qsatake.webs import (compose, evaluate_closed, identity, merge, nested_circles,
                          random_closed_web, split, theta)

Q2, Q3 = quantum_int(2), quantum_int(3)
COLS3 = ("o", "g", "p")


def test_word_map_widens_strands():
    spec = default_spec(3)
    assert tuple(spec.word(("o", "g", "p"))) == ("o", "y", "g", "b", "p")
    assert tuple(spec.word(("p", "o"))) == ("p", "r", "o")
    assert tuple(default_spec(2).word(("r", "b", "r"))) == ("r", "∅", "b", "∅", "r")


@pytest.mark.parametrize("a,b", [(a, b) for a in COLS3 for b in COLS3 if a != b])
def test_circle_image_sl3(a, b):
    t = plan_image(default_spec(3), (a,), [("cup", 0, b), ("cap", 0)])
    assert scalar_of(t) == to_qrational(Q3)


def test_circle_image_sl2():
    for a, b in (("r", "b"), ("b", "r")):
        t = plan_image(default_spec(2), (a,), [("cup", 0, b), ("cap", 0)])
        assert scalar_of(t) == to_qrational(-Q2)


def test_generator_images_have_degree_zero():
    spec = default_spec(3)
    for a, b in itertools.permutations(COLS3, 2):
        assert cup_image(spec, (a,), 0, b).degree == 0
        assert cap_image(spec, (a, b, a), 0).degree == 0
    for x0, x1, x2 in itertools.permutations(COLS3):
        assert merge_image(spec, (x0, x1, x2), 0).degree == 0
        assert split_raw(spec, (x0, x2), 0, x1).degree == 0


def test_calibration_scalars_are_one():
    assert set(map(str, calibrate_trivalent(FunctorSpec(3)).values())) == {"1"}


@pytest.mark.parametrize("x0,x1,x2", list(itertools.permutations(COLS3)))
def test_bigon_image(x0, x1, x2):
    spec = default_spec(3)
    lhs = functor_image(compose(merge(x0, x1, x2), split(x0, x1, x2)))
    assert maps_equal(lhs, Identity(spec.word((x0, x2))) * (-Q2))


def test_square_image_matches_its_reroutings():
    spec = default_spec(3)
    a, b, c = COLS3
    lhs = plan_image(spec, (a, b, a), [("split", 0, c), ("merge", 1), ("split", 0, b), ("merge", 1)])
    rhs = Identity(spec.word((a, b, a))) + plan_image(spec, (a, b, a), [("cap", 0), ("cup", 0, b)])
    assert maps_equal(lhs, rhs)


def test_closed_images_match_evaluation():
    for w in (theta(), nested_circles(3, 2), nested_circles(2, 3)):
        assert closed_scalar(w) == to_qrational(evaluate_closed(w))


def test_functor_image_of_identity_web():
    spec = default_spec(3)
    assert maps_equal(functor_image(identity(3, ("o", "g"))), Identity(spec.word(("o", "g"))))


@settings(max_examples=6)
@given(st.integers(0, 10 ** 6))
def test_closed_webs_cross_check(seed):
    _, _, w = random_closed_web(random.Random(seed), length=8)
    assert closed_scalar(w) == to_qrational(evaluate_closed(w))


@settings(max_examples=6)
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3]))
def test_functoriality(seed, n):
    ok, witness = functoriality_sample(n, random.Random(seed), width=2, length=2)
    assert ok, witness


def test_sl2_suite():
    rep = verify_functor(2)
    assert rep.ok, rep.failures()


def test_closed_scalar_rejects_boundary():
    with pytest.raises(ValueError):
        closed_scalar(identity(3, ("o", "g")))
