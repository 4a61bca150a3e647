import pytest
from hypothesis import given, strategies as st

import sympy_oracle as O
from qsatake.frobhypercube import (c_scalar, coproduct_coordinates, dual_bases, extension, mu,
                                   positive_roots, third_root, trace, verify_hypercube)
from qsatake.polyring import Poly, alpha, demazure, graded_basis, realization
from qsatake.qarith import QLaurent, quantum_int

R3, R2 = realization(3), realization(2)


def nested_pairs(ring):
    return [(a, b) for a in ring.labels for b in ring.labels if a != b and ring.is_subset(a, b)]


def test_lattice_sizes():
    assert len(nested_pairs(R3)) == 12
    # sl_2 has no doubletons, so only the two inclusions of ∅
    assert len(nested_pairs(R2)) == 2


def test_positive_roots_match_hand_table():
    for label, roots in O.ROOTS3.items():
        got = [O.poly(x) for x in positive_roots(R3, label)]
        assert len(got) == len(roots)
        assert all(any(O.same(g, r) for g in got) for r in roots)


def test_c_scalars():
    want = {("r", "b"): 1, ("b", "r"): 1, ("y", "b"): 1, ("y", "r"): 1,
            ("b", "y"): QLaurent.q(-1), ("r", "y"): QLaurent.q()}
    for (s, t), v in want.items():
        assert c_scalar(R3, s, t) == v


@pytest.mark.parametrize("lower,upper", nested_pairs(R3))
def test_mu_matches_oracle(lower, upper):
    assert O.same(O.poly(mu(R3, lower, upper)), O.mu(3, lower, upper))


@pytest.mark.parametrize("lower,upper", nested_pairs(R3))
def test_trace_matches_oracle(lower, upper):
    for d in (0, 2, 4, 6, 8):
        for f in graded_basis(R3, lower, d)[:6]:
            assert O.same(O.poly(trace(R3, lower, upper, f)), O.trace(3, lower, upper, O.poly(f)))


@pytest.mark.parametrize("ring,lower,upper", [(R3, a, b) for a, b in nested_pairs(R3)]
                         + [(R2, a, b) for a, b in nested_pairs(R2)])
def test_dual_bases_pairing_via_oracle(ring, lower, upper):
    n = ring.nvars
    b, dual = dual_bases(ring, lower, upper)
    assert len(b) == extension(ring, lower, upper).rank
    for i, x in enumerate(b):
        for j, y in enumerate(dual):
            val = O.trace(n, lower, upper, O.poly(x * y))
            assert O.same(val, 1 if i == j else 0)
    total = sum((O.poly(x * y) for x, y in zip(b, dual)), 0)
    assert O.same(total, O.mu(n, lower, upper))


@pytest.mark.parametrize("lower,upper", nested_pairs(R3))
def test_coproduct_does_not_depend_on_the_dual_bases(lower, upper):
    assert dual_bases(R3, lower, upper, 1) != dual_bases(R3, lower, upper, 0)
    assert coproduct_coordinates(R3, lower, upper, 1) == coproduct_coordinates(R3, lower, upper, 0)


@pytest.mark.parametrize("s,label", [("r", "p"), ("b", "p"), ("b", "g"), ("y", "g"),
                                     ("r", "o"), ("y", "o")])
def test_trace_of_mu_is_three(s, label):
    assert trace(R3, s, label, mu(R3, s, label)) == 3


def test_identity_values():
    three, two = quantum_int(3), quantum_int(2)
    for I, J in (("p", "g"), ("g", "p"), ("p", "o"), ("o", "p"), ("g", "o"), ("o", "g")):
        s = R3.intersection(I, J)
        assert trace(R3, s, I, mu(R3, s, J)) == three
    for label, u in (("p", "y"), ("g", "r"), ("o", "b")):
        assert demazure(u, third_root(R3, label)) == -two
    for u in "rby":
        s, t = [x for x in "rby" if x != u]
        assert c_scalar(R3, s, u) * c_scalar(R3, t, u) == 1


def test_trace_rejects_non_invariant_input():
    with pytest.raises(ValueError):
        trace(R3, "r", "p", alpha(R3, "b"))
    with pytest.raises(ValueError):
        extension(R3, "p", "r")


@given(st.sampled_from(nested_pairs(R3)), st.integers(0, 3), st.data())
def test_trace_is_linear_over_the_smaller_ring(pair, k, data):
    lower, upper = pair
    f = data.draw(st.sampled_from(graded_basis(R3, lower, 2 * k)))
    g = data.draw(st.sampled_from(graded_basis(R3, upper, 2)))
    assert trace(R3, lower, upper, g * f) == g * trace(R3, lower, upper, f)


def test_verify_suites_pass():
    for ring in (R2, R3):
        rep = verify_hypercube(ring, 8)
        assert rep.ok, rep.failures()


def chains(ring):
    return [(a, b, c) for a, b in nested_pairs(ring) for c in ring.labels
            if c != b and ring.is_subset(b, c)]


@given(st.sampled_from(nested_pairs(R3)), st.integers(0, 4), st.data())
def test_reproducing_property(pair, k, data):
    lower, upper = pair
    f = data.draw(st.sampled_from(graded_basis(R3, lower, 2 * k)))
    b, dual = dual_bases(R3, lower, upper)
    rebuilt = sum((x * trace(R3, lower, upper, y * f) for x, y in zip(b, dual)), Poly.zero(R3))
    assert rebuilt == f


@given(st.sampled_from(nested_pairs(R3)), st.integers(0, 5), st.data())
def test_trace_lowers_degree_exactly(pair, k, data):
    lower, upper = pair
    ext = extension(R3, lower, upper)
    f = data.draw(st.sampled_from(graded_basis(R3, lower, 2 * k)))
    out = trace(R3, lower, upper, f)
    assert out.is_zero() or out.degree() == f.degree() - 2 * ext.degree


@pytest.mark.parametrize("lower,upper", nested_pairs(R3))
def test_trace_is_surjective_on_graded_pieces(lower, upper):
    from qsatake.linalg import rank
    from qsatake.polyring import coordinates
    shift = 2 * extension(R3, lower, upper).degree
    for d in (0, 2, 4):
        images = [trace(R3, lower, upper, f) for f in graded_basis(R3, lower, d + shift)]
        rows = [coordinates(g, d) for g in images if not g.is_zero()]
        assert (rank(rows) if rows else 0) == len(graded_basis(R3, upper, d))


@pytest.mark.parametrize("a,b,c", chains(R3))
def test_mu_is_multiplicative_along_chains(a, b, c):
    assert mu(R3, a, c) == mu(R3, a, b) * mu(R3, b, c)
    for d in (0, 2, 4, 6):
        for f in graded_basis(R3, a, d)[:4]:
            assert trace(R3, b, c, trace(R3, a, b, f)) == trace(R3, a, c, f)
