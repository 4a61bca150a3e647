"""Independent reference computations in sympy.

Nothing here imports the package's algorithms: the Cartan data and trace
formulas are typed in from their published definitions, and all algebra
is done with sympy's rational-function arithmetic.
"""

from functools import lru_cache

import sympy as sp

q = sp.Symbol("q")
A = {s: sp.Symbol(f"a_{s}") for s in "rby"}

CARTAN3 = {
    ("r", "r"): 2, ("b", "b"): 2, ("y", "y"): 2,
    ("b", "r"): -1, ("r", "b"): -1,
    ("b", "y"): -1 / q, ("r", "y"): -q,
    ("y", "b"): -q, ("y", "r"): -1 / q,
}
CARTAN2 = {("r", "r"): 2, ("b", "b"): 2, ("r", "b"): -(q + 1 / q), ("b", "r"): -(q + 1 / q)}

# trace formulas: tuple of (prefactor, operators applied right to left)
TRACES3 = {
    ("∅", "r"): (1, "r"), ("∅", "b"): (1, "b"), ("∅", "y"): (1, "y"),
    ("b", "p"): (1, "br"), ("r", "p"): (1, "rb"),
    ("b", "g"): (q, "by"), ("y", "g"): (1, "yb"),
    ("r", "o"): (1 / q, "ry"), ("y", "o"): (1, "yr"),
}
DOUBLE = {"p": "rb", "g": "by", "o": "ry"}


def cartan(n):
    return CARTAN3 if n == 3 else CARTAN2


def variables(n):
    return [A[s] for s in ("rby" if n == 3 else "rb")]


def reflect(n, s, f):
    C = cartan(n)
    sub = {}
    for t in ("rby" if n == 3 else "rb"):
        sub[A[t]] = -A[s] if t == s else A[t] - C[(s, t)] * A[s]
    return sp.expand(f.subs(sub, simultaneous=True))


def demazure(n, s, f):
    num = sp.expand(f - reflect(n, s, f))
    quo, rem = sp.div(sp.Poly(num, *variables(n)), sp.Poly(A[s], *variables(n)))
    assert rem.is_zero
    return sp.expand(quo.as_expr())


def demazure_word(n, ops, f):
    for s in reversed(ops):
        f = demazure(n, s, f)
    return f


def trace(n, lower, upper, f):
    if n == 2:
        assert lower == "∅"
        return demazure(n, upper, f)
    if lower == "∅" and upper in DOUBLE:
        mid = DOUBLE[upper][0]
        return trace(n, mid, upper, trace(n, "∅", mid, f))
    pre, ops = TRACES3[(lower, upper)]
    return sp.expand(pre * demazure_word(n, ops, f))


def laurent(x):
    """sympy expression of a QLaurent."""
    return sp.nsimplify(sum(sp.Rational(c.numerator, c.denominator) * q ** k
                            for k, c in x.coefficients.items()))


def qrational(x):
    num = sum(c * q ** i for i, c in enumerate(x.num))
    den = sum(c * q ** i for i, c in enumerate(x.den))
    return sp.cancel(num / den)


def poly(f):
    names = [A[s] for s in f.ring.primaries]
    out = 0
    for mono, c in f.terms.items():
        term = qrational(c)
        for v, e in zip(names, mono):
            term *= v ** e
        out += term
    return sp.expand(out)


def same(a, b):
    return sp.cancel(sp.together(sp.expand(a - b))) == 0


def quantum(n):
    return sum(q ** (n - 1 - 2 * i) for i in range(n))


@lru_cache(maxsize=None)
def cyclotomic_residue(expr_str, k):
    """Reduce a Laurent polynomial modulo Phi_k; returns coefficient list."""
    expr = sp.sympify(expr_str, locals={"q": q})
    num, den = sp.fraction(sp.together(expr))
    phi = sp.cyclotomic_poly(k, q)
    # den is a power of q, which is invertible modulo Phi_k
    inv = sp.invert(sp.Poly(den, q), sp.Poly(phi, q))
    r = sp.rem(sp.Poly(num, q) * inv, sp.Poly(phi, q))
    coeffs = list(reversed(r.all_coeffs()))
    deg = sp.degree(phi, q)
    coeffs += [0] * (deg - len(coeffs))
    return [sp.Rational(c) for c in coeffs[:deg]]


a_r, a_b, a_y = A["r"], A["b"], A["y"]
ROOTS3 = {
    "∅": [], "r": [a_r], "b": [a_b], "y": [a_y],
    "p": [a_b, a_r, a_r + a_b],
    "g": [a_b, a_y, a_y + a_b / q],
    "o": [a_r, a_y, a_y + q * a_r],
}
ROOTS2 = {"∅": [], "r": [a_r], "b": [a_b]}


def mu(n, lower, upper):
    roots = ROOTS3 if n == 3 else ROOTS2
    small = [sp.expand(x) for x in roots[lower]]
    out = 1
    for x in roots[upper]:
        if sp.expand(x) not in small:
            out *= x
    return sp.expand(out)


def exotic_cartan(n):
    """Exotic affine sl_{n+1} Cartan matrix; the last index is the affine node."""
    if n == 1:
        return sp.Matrix([[2, -(q + 1 / q)], [-(q + 1 / q), 2]])
    size = n + 1
    M = sp.zeros(size, size)
    for i in range(size):
        M[i, i] = 2
    for i in range(n - 1):
        M[i, i + 1] = M[i + 1, i] = -1
    M[0, n] = -1 / q
    M[n - 1, n] = -q
    M[n, 0] = -q
    M[n, n - 1] = -1 / q
    return M


def root_reflection(n, i):
    """s_i on root coordinates: alpha_j -> alpha_j - A[i, j] alpha_i."""
    A = exotic_cartan(n)
    size = n + 1
    S = sp.eye(size)
    for j in range(size):
        S[i, j] -= A[i, j]
    return S


def labelled(n, label):
    """Matrix index of s_label, where s_0 is the affine reflection."""
    return n if label == 0 else label - 1


def word_product(n, word):
    M = sp.eye(n + 1)
    for label in word:
        M = (M * root_reflection(n, labelled(n, label))).applyfunc(sp.expand)
    return M


def vanishes_mod(expr, k):
    """Whether a Laurent polynomial vanishes at a primitive k-th root of unity."""
    num, den = sp.fraction(sp.together(sp.expand(expr)))
    if num == 0:
        return True
    return sp.rem(sp.Poly(num, q), sp.Poly(sp.cyclotomic_poly(k, q), q)).is_zero


def is_identity_at(M, k=None):
    size = M.shape[0]
    for i in range(size):
        for j in range(size):
            d = sp.expand(M[i, j] - (1 if i == j else 0))
            if k is None:
                if sp.cancel(d) != 0:
                    return False
            elif not vanishes_mod(d, k):
                return False
    return True
