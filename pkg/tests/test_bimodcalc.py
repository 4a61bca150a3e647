import pytest
from hypothesis import given, strategies as st

import sympy_oracle as O
from qsatake.bimodcalc import (Box, Comult, Crossing, Identity, Mult, TensorElement, Trace, Unit,
                               Word, bimodule_generators, chain, eval_term, local, maps_equal,
                               proportionality, right_module_basis, scalar_of,
                               splitting_idempotents, verify_relations)
from qsatake.frobhypercube import mu
from qsatake.polyring import EMPTY, Poly, alpha, graded_basis, realization
from qsatake.qarith import quantum_int, to_qrational

R3, R2 = realization(3), realization(2)
E = EMPTY


def test_word_validation():
    Word(R3, (E, "r", "p", "b", E))
    with pytest.raises(ValueError):
        Word(R3, (E, "p"))  # sizes differ by two
    with pytest.raises(ValueError):
        Word(R3, ("r", "b"))  # not nested
    with pytest.raises(ValueError):
        Word(R3, ())
    assert Word(R3, (E, "r")) + Word(R3, ("r", E)) == Word(R3, (E, "r", E))


def test_invariants_slide_across_the_tensor_sign():
    w = Word(R3, (E, "r", E))
    f = alpha(R3, "r") ** 2
    one = Poly.const(R3, 1)
    assert TensorElement.from_pure(w, [[f, one, one]]) == TensorElement.from_pure(w, [[one, one, f]])
    g = alpha(R3, "r")
    assert TensorElement.from_pure(w, [[g, one, one]]) != TensorElement.from_pure(w, [[one, one, g]])


def test_rank_of_bott_samelson_as_right_module():
    assert len(right_module_basis(Word(R3, (E, "r", E)))) == 2
    assert len(right_module_basis(Word(R3, (E, "r", "p", "r", E)))) == 6
    assert len(right_module_basis(Word(R3, (E, "r", E, "b", E)))) == 4


def test_bimodule_generators():
    # R ⊗_{R^s} R is generated by 1 ⊗ 1
    gens = bimodule_generators(Word(R3, (E, "b", E)))
    assert len(gens) == 1
    assert gens[0] == TensorElement.one(Word(R3, (E, "b", E)))
    gens = bimodule_generators(Word(R3, (E, "r", E, "b", E)))
    assert TensorElement.one(Word(R3, (E, "r", E, "b", E))) in gens


@given(st.integers(0, 2), st.integers(0, 2), st.data())
def test_mult_of_pure_tensor_matches_sympy(i, j, data):
    w = Word(R3, (E, "b", E))
    f = data.draw(st.sampled_from(graded_basis(R3, E, 2 * i)))
    g = data.draw(st.sampled_from(graded_basis(R3, E, 2 * j)))
    h = data.draw(st.sampled_from(graded_basis(R3, "b", 2)))
    x = TensorElement.from_pure(w, [[f, h, g]])
    out = eval_term(Mult(R3, E, "b"), x)
    (value,) = out.canon.values()
    assert O.same(O.poly(value), O.poly(f) * O.poly(h) * O.poly(g))


@pytest.mark.parametrize("small,big", [(E, "r"), (E, "y"), ("r", "p"), ("y", "g"), ("r", "o")])
def test_frobenius_zigzag_and_bubble(small, big):
    IJ = Word(R3, (small, big))
    IJIJ = Word(R3, (small, big, small, big))
    zig = chain(local(IJ, 1, Unit(R3, small, big)), local(IJIJ, 0, Mult(R3, small, big)))
    assert maps_equal(zig, Identity(IJ))
    I = Word(R3, (small,))
    assert maps_equal(chain(Comult(R3, small, big), Mult(R3, small, big)), Box(I, 0, mu(R3, small, big)))


@pytest.mark.parametrize("s", ["r", "b", "y"])
def test_circle_around_a_root_gives_cartan_entry(s):
    SES = Word(R3, (s, E, s))
    for t in "rby":
        circ = chain(Unit(R3, E, s), Box(SES, 1, alpha(R3, t)), Trace(R3, E, s))
        assert scalar_of(circ) == to_qrational(R3.a(s, t))


def test_sl2_circle_value():
    SES = Word(R2, ("r", E, "r"))
    circ = chain(Unit(R2, E, "r"), Box(SES, 1, alpha(R2, "b")), Trace(R2, E, "r"))
    assert scalar_of(circ) == to_qrational(-quantum_int(2))


def test_crossings_are_inverse():
    w = Word(R3, (E, "r", "p"))
    assert maps_equal(chain(Crossing(R3, "r", "b", "p"), Crossing(R3, "b", "r", "p")), Identity(w))


def test_proportionality_and_degree_mismatch():
    I = Word(R3, (E,))
    f = alpha(R3, "r")
    assert proportionality(Box(I, 0, f) * 3, Box(I, 0, f)) == 3
    assert not maps_equal(Box(I, 0, f), Identity(I))
    assert scalar_of(Box(I, 0, f)) is None
    with pytest.raises(ValueError):
        maps_equal(Identity(I), Identity(Word(R3, ("r",))))


@pytest.mark.parametrize("ring,s", [(R3, "r"), (R3, "b"), (R3, "y"), (R2, "r"), (R2, "b")])
def test_splitting_idempotents(ring, s):
    idem = splitting_idempotents(ring, s)
    w = Word(ring, (s, E, s))
    assert len(idem) == 2
    total = idem[0] + idem[1]
    assert maps_equal(total, Identity(w))
    assert maps_equal(chain(idem[0], idem[0]), idem[0])
    assert maps_equal(chain(idem[1], idem[1]), idem[1])
    assert maps_equal(chain(idem[0], idem[1]), Identity(w) * 0)


def test_sl2_relation_suite():
    rep = verify_relations(R2)
    assert rep.ok, rep.failures()


@given(st.sampled_from([(E, "r"), (E, "b"), ("r", "p"), ("b", "g"), ("y", "o")]),
       st.integers(1, 2), st.integers(0, 2), st.data())
def test_middle_relation(ext, k, j, data):
    small, big = ext
    w = Word(R3, (small, big, small))
    r = data.draw(st.sampled_from(graded_basis(R3, big, 2 * k)))
    f = data.draw(st.sampled_from(graded_basis(R3, small, 2 * j)))
    one = Poly.const(R3, 1)
    left = TensorElement.from_pure(w, [[f * r, one, one]])
    assert left == TensorElement.from_pure(w, [[f, r, one]])
    assert left == TensorElement.from_pure(w, [[f, one, r]])


def test_degrees_add_under_composition():
    unit, tr = Unit(R3, E, "r"), Trace(R3, E, "r")
    assert unit.degree == tr.degree == -1
    assert Mult(R3, E, "r").degree == Comult(R3, E, "r").degree == 1
    assert Unit(R3, "r", "p").degree == -2
    SES = Word(R3, ("r", E, "r"))
    box = Box(SES, 1, alpha(R3, "b"))
    assert chain(unit, box, tr).degree == unit.degree + box.degree + tr.degree
    assert Crossing(R3, "r", "b", "p").degree == 0
