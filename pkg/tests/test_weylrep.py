import pytest

import sympy_oracle as O
from qsatake.qarith import QLaurent
from qsatake.weylrep import (ReflRep, cartan_matrix, check_coxeter, cyclotomic_orders,
                             determinant, expected_determinant, kernel_check, matrix_order,
                             t_word, verify_weylrep, word_matrix, x_word)


@pytest.mark.parametrize("n", range(1, 7))
def test_cartan_matrix_matches_hand_table(n):
    A = cartan_matrix(n)
    B = O.exotic_cartan(n)
    for i in range(n + 1):
        for j in range(n + 1):
            assert O.same(O.laurent(A[i][j]), B[i, j])


@pytest.mark.parametrize("n", range(1, 7))
def test_determinant(n):
    d = determinant(cartan_matrix(n))
    assert d == expected_determinant() == QLaurent({0: 2, 2: -1, -2: -1})
    assert O.same(O.laurent(d), O.exotic_cartan(n).det())


def test_determinant_of_small_matrices():
    one = QLaurent.const(1)
    assert determinant(((one,),)) == 1
    two = QLaurent.const(2)
    assert determinant(((two, one), (one, two))) == 3


def test_words():
    assert t_word(1) == [1]
    assert t_word(3) == [1, 2, 3, 2, 1]
    assert x_word(2) == [1, 2, 0]


def test_cyclotomic_orders():
    assert cyclotomic_orders(2) == [4]
    assert cyclotomic_orders(3) == [6, 3]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_reflections_are_involutions(n):
    rep = ReflRep(n)
    for M in rep.gens:
        assert rep.is_identity(rep.mul(M, M))


@pytest.mark.parametrize("n,m", [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)])
def test_kernel_against_sympy(n, m):
    word = [0] + t_word(n)
    for k in cyclotomic_orders(m):
        rep = ReflRep(n, k)
        st = word_matrix(rep, word)
        P = rep.identity()
        ours, theirs = [], []
        for j in range(1, m + 1):
            P = rep.mul(P, st)
            ours.append(rep.is_identity(P))
            theirs.append(O.is_identity_at(O.word_product(n, word * j), k))
        assert ours == theirs == [False] * (m - 1) + [True]


@pytest.mark.parametrize("n", [1, 2])
def test_generic_q_nondegeneracy_against_sympy(n):
    word = [0] + t_word(n)
    for j in range(1, 5):
        assert not O.is_identity_at(O.word_product(n, word * j))
    rep = ReflRep(n)
    assert matrix_order(rep, word_matrix(rep, word), 12) is None


@pytest.mark.parametrize("n,m", [(2, 2), (2, 3), (3, 2)])
def test_order_of_x(n, m):
    for k in cyclotomic_orders(m):
        rep = ReflRep(n, k)
        assert matrix_order(rep, word_matrix(rep, x_word(n)), 2 * m * n) == m * n


def test_classical_pattern_at_q_equal_one():
    for n in (1, 2, 3):
        assert check_coxeter(n, 1).ok
    # at q = 1 the sl_2 Cartan entry -[2] becomes -2 and s_0 s_1 has infinite order
    rep = ReflRep(1, 1)
    assert matrix_order(rep, word_matrix(rep, [0, 1]), 20) is None


def test_kernel_check_rejects_a_mismatched_order():
    rep = kernel_check(2, 3, orders=[6])
    assert rep.ok
    with pytest.raises(ValueError):
        kernel_check(2, 3, orders=[8])


def test_bad_arguments():
    with pytest.raises(ValueError):
        cartan_matrix(0)
    with pytest.raises(ValueError):
        kernel_check(2, 1)
    with pytest.raises(ValueError):
        ReflRep(2).index(5)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_suite(n):
    rep = verify_weylrep(n, max_m=3)
    assert rep.ok, rep.failures()
