"""Reflection representation of affine sl_{n+1} with the exotic Cartan matrix.

Indices 0..n-1 are the finite simple reflections s_1..s_n; index n is the
affine reflection s_0. Matrices act on the span of the simple coroots:
s_i(a_j) = a_j - A[j][i] a_i, where A[j][i] = <a_j, alpha_i>.
"""

from __future__ import annotations

from functools import lru_cache

from .qarith import CycloNumber, QLaurent, quantum_int, specialize_cyclotomic
from .report import Report


@lru_cache(maxsize=None)
def cartan_matrix(n):
    """The (n+1)x(n+1) exotic Cartan matrix as a tuple of QLaurent rows."""
    if n < 1:
        raise ValueError("the exotic Cartan matrix needs n >= 1")
    zero, one, two = QLaurent.const(0), QLaurent.const(1), QLaurent.const(2)
    size = n + 1
    A = [[zero] * size for _ in range(size)]
    for i in range(size):
        A[i][i] = two
    if n == 1:
        A[0][1] = A[1][0] = -quantum_int(2)
        return tuple(tuple(r) for r in A)
    for i in range(n - 1):
        A[i][i + 1] = A[i + 1][i] = -one
    q, qi = QLaurent.q(), QLaurent.q(-1)
    A[0][n] = -qi
    A[n - 1][n] = -q
    A[n][0] = -q
    A[n][n - 1] = -qi
    return tuple(tuple(r) for r in A)


def determinant(mat):
    """Laplace expansion along rows, memoised on the used column set."""
    size = len(mat)
    memo = {}

    def det(row, used):
        if row == size:
            return None  # empty product
        key = used
        if key in memo:
            return memo[key]
        total = None
        sign = 1
        for c in range(size):
            if used >> c & 1:
                continue
            entry = mat[row][c]
            if entry:
                sub = det(row + 1, used | (1 << c))
                term = entry if sub is None else entry * sub
                term = term if sign > 0 else -term
                total = term if total is None else total + term
            sign = -sign
        if total is None:
            total = mat[row][0] * 0
        memo[key] = total
        return total

    return det(0, 0)


def expected_determinant():
    return QLaurent.const(2) - QLaurent.q(2) - QLaurent.q(-2)


class ReflRep:
    """Simple reflections as dense matrices over QLaurent or CycloNumber.

    ``order`` None keeps q generic; an integer k sends q to a primitive
    k-th root of unity.
    """

    def __init__(self, n, order=None):
        self.n = n
        self.order = order
        A = cartan_matrix(n)
        self.cartan = [[self._scalar(x) for x in row] for row in A]
        self.zero = self._scalar(QLaurent.const(0))
        self.one = self._scalar(QLaurent.const(1))
        self.size = n + 1
        self.gens = [self._reflection(i) for i in range(self.size)]

    def _scalar(self, x):
        if self.order is None:
            return x
        return specialize_cyclotomic(x, self.order)

    def _reflection(self, i):
        M = self.identity()
        for j in range(self.size):
            M[i][j] = M[i][j] - self.cartan[j][i]
        return M

    def identity(self):
        return [[self.one if i == j else self.zero for j in range(self.size)]
                for i in range(self.size)]

    def mul(self, X, Y):
        size = self.size
        out = []
        for i in range(size):
            row = []
            for j in range(size):
                acc = self.zero
                for k in range(size):
                    a = X[i][k]
                    if a:
                        b = Y[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return out

    def power(self, M, e):
        out = self.identity()
        base = M
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def is_identity(self, M):
        return M == self.identity()

    def index(self, label):
        """Position of s_label (0 is the affine reflection)."""
        if not 0 <= label <= self.n:
            raise ValueError(f"no simple reflection s_{label} for n={self.n}")
        return self.n if label == 0 else label - 1


def word_matrix(rep, word):
    """Product of s_{i_1} s_{i_2} ... for a word of labels in 0..n."""
    M = rep.identity()
    for label in word:
        M = rep.mul(M, rep.gens[rep.index(label)])
    return M


def t_word(n):
    """Reflection in the highest finite root: s_1 ... s_n ... s_1."""
    return list(range(1, n + 1)) + list(range(n - 1, 0, -1))


def x_word(n):
    return list(range(1, n + 1)) + [0]


def _adjacent(n, i, j):
    if n == 1:
        return False
    return abs(i - j) == 1 or {i, j} == {0, n} or {i, j} == {0, 1}


def matrix_order(rep, M, bound):
    """Smallest j <= bound with M^j = Id, or None."""
    P = rep.identity()
    for j in range(1, bound + 1):
        P = rep.mul(P, M)
        if rep.is_identity(P):
            return j
    return None


def _text(M):
    return "[" + "; ".join(", ".join(str(x) for x in row) for row in M) + "]"


def check_coxeter(n, order=None, generic_bound=12) -> Report:
    rep = ReflRep(n, order)
    tag = "generic" if order is None else f"q^{order}=1"
    r = Report(f"coxeter-n{n}-{tag}")
    labels = list(range(n + 1))
    for i in labels:
        M = word_matrix(rep, [i, i])
        r.add(f"s{i}^2 = 1", rep.is_identity(M), _text(M))
    for i in labels:
        for j in labels:
            if j <= i:
                continue
            if _adjacent(n, i, j):
                L, R = word_matrix(rep, [i, j, i]), word_matrix(rep, [j, i, j])
                r.add(f"s{i}s{j}s{i} = s{j}s{i}s{j}", L == R, f"{_text(L)} vs {_text(R)}")
            elif n >= 2:
                L, R = word_matrix(rep, [i, j]), word_matrix(rep, [j, i])
                r.add(f"s{i}s{j} = s{j}s{i}", L == R, f"{_text(L)} vs {_text(R)}")
    if order is None:
        st = word_matrix(rep, [0] + t_word(n))
        P = rep.identity()
        for j in range(1, generic_bound + 1):
            P = rep.mul(P, st)
            r.add(f"(s0 t)^{j} != 1", not rep.is_identity(P))
    return r


def cyclotomic_orders(m):
    """Orders k of q making q^2 a primitive m-th root of unity."""
    return [2 * m, m] if m % 2 else [2 * m]


def kernel_check(n, m, orders=None) -> Report:
    if n < 1:
        raise ValueError("n must be at least 1")
    if m < 2:
        raise ValueError("m must be at least 2")
    orders = orders or cyclotomic_orders(m)
    r = Report(f"kernel-n{n}-m{m}")
    for k in orders:
        if not _q_squared_primitive(k, m):
            raise ValueError(f"q of order {k} does not make q^2 a primitive {m}-th root")
        rep = ReflRep(n, k)
        st = word_matrix(rep, [0] + t_word(n))
        P = rep.identity()
        for j in range(1, m):
            P = rep.mul(P, st)
            r.add(f"order {k}: (s0 t)^{j} != 1", not rep.is_identity(P))
        P = rep.mul(P, st)
        r.add(f"order {k}: (s0 t)^{m} = 1", rep.is_identity(P), _text(P))
        if n >= 2:
            x = word_matrix(rep, x_word(n))
            got = matrix_order(rep, x, m * n)
            r.add(f"order {k}: ord(x) = {m * n}", got == m * n, f"order found {got}")
    return r


def _q_squared_primitive(k, m):
    from math import gcd
    return k // gcd(k, 2) == m


def check_determinants(max_n=6) -> Report:
    r = Report("cartan-determinant")
    want = expected_determinant()
    for n in range(1, max_n + 1):
        d = determinant(cartan_matrix(n))
        r.add(f"det n={n}", d == want, str(d))
    return r


def check_specialization(n, k) -> Report:
    """Specialising generic matrices agrees with building them at q^k = 1."""
    gen, spec = ReflRep(n), ReflRep(n, k)
    r = Report(f"specialization-n{n}-k{k}")
    for i in range(n + 1):
        M = [[specialize_cyclotomic(x, k) for x in row] for row in gen.gens[i]]
        r.add(f"s_{i}", M == spec.gens[i])
    return r


def verify_weylrep(n, max_m=4) -> Report:
    r = Report(f"weylrep-n{n}")
    r.extend(check_determinants(max(n, 1)))
    r.extend(check_coxeter(n), "generic ")
    r.extend(check_coxeter(n, 1), "q=1 ")
    for m in range(2, max_m + 1):
        r.extend(kernel_check(n, m))
    r.extend(check_specialization(n, 6))
    return r


__all__ = ["cartan_matrix", "determinant", "ReflRep", "word_matrix", "check_coxeter",
           "check_determinants", "check_specialization", "matrix_order",
           "kernel_check", "verify_weylrep", "t_word", "x_word", "CycloNumber"]
