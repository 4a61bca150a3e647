"""Frobenius extensions R^J ⊂ R^I between invariant subrings.

For nested labels I ⊂ J (so R^J ⊂ R^I) the trace map sends R^I to R^J and
lowers degree by 2(ℓ(J) - ℓ(I)). Single steps are fixed explicitly; longer
chains are composites. Dual bases are found by graded linear algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from .linalg import independent_rows, inverse
from .polyring import EMPTY, Poly, monomials, alpha, demazure, demazure_word, graded_basis, is_invariant
from .qarith import QLaurent, quantum_int
from .report import Report

# Third positive root of each rank-two parabolic, as (coefficient of the
# first colour, first colour, second colour): alpha_second + c * alpha_first.
_THIRD = {"p": (0, "b", "r"), "g": (-1, "b", "y"), "o": (1, "r", "y")}

# Single-step traces of sl_3: (lower, upper) -> (power of q, operators).
# The operator tuple is applied right to left.
_STEPS3 = {
    ("b", "p"): (0, "br"), ("r", "p"): (0, "rb"),
    ("b", "g"): (1, "by"), ("y", "g"): (0, "yb"),
    ("r", "o"): (-1, "ry"), ("y", "o"): (0, "yr"),
}


def _q(k):
    return QLaurent.q(k)


def third_root(ring, label):
    """The non-simple positive root of a rank-two parabolic."""
    k, s, t = _THIRD[label]
    return alpha(ring, t) + alpha(ring, s) * _q(k)


def positive_roots(ring, label):
    members = ring.members(label)
    if not members:
        return ()
    if len(members) == 1:
        return (alpha(ring, label),)
    _, s, t = _THIRD[label]
    return (alpha(ring, s), alpha(ring, t), third_root(ring, label))


@dataclass(frozen=True)
class RootTable:
    roots: dict
    c: dict

    def __getitem__(self, label):
        return self.roots[label]


@lru_cache(maxsize=None)
def root_table(ring) -> RootTable:
    roots = {label: positive_roots(ring, label) for label in ring.labels}
    c = {}
    if ring.nvars == 3:
        for s, t in permutations(ring.primaries, 2):
            c[(s, t)] = c_scalar(ring, s, t)
    return RootTable(roots, c)


def c_scalar(ring, s, t) -> QLaurent:
    """Coefficient of alpha_s in the third positive root of {s, t}."""
    label = ring.label_of({s, t})
    coeff = third_root(ring, label).terms
    e = [0] * ring.nvars
    e[ring.index[s]] = 1
    return coeff[tuple(e)].to_laurent()


def _check_nested(ring, lower, upper, strict=False):
    if not ring.is_subset(lower, upper) or (strict and lower == upper):
        raise ValueError(f"labels {lower!r} and {upper!r} are not nested")


def mu(ring, lower, upper) -> Poly:
    """Product of the positive roots of `upper` that are not roots of `lower`."""
    _check_nested(ring, lower, upper)
    small = set(positive_roots(ring, lower))
    out = Poly.const(ring, 1)
    for r in positive_roots(ring, upper):
        if r not in small:
            out = out * r
    return out


@dataclass(frozen=True)
class FrobeniusExtension:
    """R^upper ⊂ R^lower with trace prefactor * d_{ops[0]} ... d_{ops[-1]}."""

    ring: object
    lower: str
    upper: str
    prefactor: QLaurent
    ops: tuple

    @property
    def degree(self):
        return self.ring.ell(self.upper) - self.ring.ell(self.lower)

    @property
    def rank(self):
        size = {0: 1, 1: 2, 2: 6}
        return size[len(self.ring.members(self.upper))] // size[len(self.ring.members(self.lower))]

    def trace(self, f: Poly) -> Poly:
        return demazure_word(self.ops, f) * self.prefactor

    def describe(self):
        body = "".join(f"d_{s}" for s in self.ops)
        return body if self.prefactor == 1 else f"({self.prefactor})*{body}"


@lru_cache(maxsize=None)
def extension(ring, lower, upper) -> FrobeniusExtension:
    _check_nested(ring, lower, upper, strict=True)
    low, up = ring.members(lower), ring.members(upper)
    if len(up) - len(low) == 1:
        if not low:
            return FrobeniusExtension(ring, lower, upper, QLaurent.const(1), (upper,))
        k, ops = _STEPS3[(lower, upper)]
        return FrobeniusExtension(ring, lower, upper, _q(k), tuple(ops))
    # ∅ ⊂ doubleton: go through the first primary colour of the doubleton.
    mid = next(s for s in ring.primaries if s in up)
    first = extension(ring, lower, mid)
    second = extension(ring, mid, upper)
    return FrobeniusExtension(ring, lower, upper, first.prefactor * second.prefactor,
                              second.ops + first.ops)


def trace(ring, lower, upper, f: Poly, check=True) -> Poly:
    """The Frobenius trace R^lower -> R^upper."""
    if lower == upper:
        return f
    ext = extension(ring, lower, upper)
    if check and not is_invariant(lower, f):
        raise ValueError(f"{f} is not {lower}-invariant")
    return ext.trace(f)


# ------------------------------------------------------------ dual bases


class SingularPairing(ArithmeticError):
    pass


@lru_cache(maxsize=None)
def dual_bases(ring, lower, upper, variant=0):
    """Bases (b_i) and (b_i*) of R^lower over R^upper with trace(b_i b_j*) = δ_ij.

    `variant` selects among different but equally valid choices; 0 is the
    canonical one, 1 scans candidates in reverse order.
    """
    ext = extension(ring, lower, upper)
    top = 2 * ext.degree
    tr = ext.trace
    chosen_b, chosen_star = {}, {}
    for e in range(0, top + 1, 2):
        low = _candidates(ring, lower, upper, e)
        high = _candidates(ring, lower, upper, top - e)
        if variant:
            low.reverse()
            high.reverse()
        pairing = [[tr(x * y).scalar() for y in high] for x in low]
        rows = independent_rows(pairing)
        cols = independent_rows([list(c) for c in zip(*[pairing[i] for i in rows])]) if rows else []
        chosen_b[e] = [low[i] for i in rows]
        chosen_star[e] = [high[j] for j in cols]
    b = [x for e in sorted(chosen_b) for x in chosen_b[e]]
    star = [y for e in sorted(chosen_star) for y in chosen_star[e]]
    if variant:
        # rescale so the alternative pair differs even when the scan agrees
        b = [x * (k + 2) for k, x in enumerate(b)]
    if len(b) != ext.rank:
        raise SingularPairing(f"found {len(b)} basis elements for {lower}⊂{upper}, expected {ext.rank}")
    # The full pairing is block lower triangular by degree with invertible
    # scalar diagonal blocks; invert it over R^upper by forward substitution.
    n = len(b)
    P = [[tr(x * y) for y in star] for x in b]
    X = _invert_unitriangular_blocks(ring, P, [x.degree() for x in b])
    dual = []
    for j in range(n):
        c = Poly.zero(ring)
        for k in range(n):
            if X[k][j]:
                c = c + star[k] * X[k][j]
        dual.append(c)
    for i in range(n):
        for j in range(n):
            if tr(b[i] * dual[j]) != (1 if i == j else 0):
                raise SingularPairing(f"dual basis check failed for {lower}⊂{upper}")
    return tuple(b), tuple(dual)


def _candidates(ring, lower, upper, e):
    """Spanning list of (R^lower)_e, simplest elements first."""
    members = ring.members(upper) - ring.members(lower)
    out = []
    if not ring.members(lower):
        # monomials in the roots of `upper`
        idx = [ring.index[s] for s in members]
        for m in monomials(ring.nvars, e):
            if all(k == 0 or i in idx for i, k in enumerate(m)):
                out.append(Poly(ring, {m: 1}))
    else:
        (t,) = members
        (s,) = ring.members(lower)
        # alpha_t - a_{s,t}/2 alpha_s is s-invariant
        x = alpha(ring, t) - alpha(ring, s) * ring.a(s, t) * Fraction(1, 2)
        out.append(x ** (e // 2))
    out.extend(graded_basis(ring, lower, e))
    return out


def _invert_unitriangular_blocks(ring, P, degrees):
    """Inverse of a block lower triangular Poly matrix whose diagonal blocks
    (grouped by equal degree) are invertible scalar matrices."""
    n = len(P)
    blocks = []
    start = 0
    while start < n:
        end = start
        while end < n and degrees[end] == degrees[start]:
            end += 1
        blocks.append(range(start, end))
        start = end
    zero = Poly.zero(ring)
    X = [[zero] * n for _ in range(n)]
    for bi, rows in enumerate(blocks):
        D = [[P[i][j].scalar() for j in rows] for i in rows]
        Dinv = inverse(D)
        if Dinv is None:
            raise SingularPairing("singular diagonal block in the pairing matrix")
        # rhs = I_rows - sum over earlier blocks P[rows, earlier] X[earlier, :]
        for col in range(n):
            rhs = []
            for i in rows:
                v = Poly.const(ring, 1) if i == col else zero
                for bj in blocks[:bi]:
                    for k in bj:
                        if P[i][k] and X[k][col]:
                            v = v - P[i][k] * X[k][col]
                rhs.append(v)
            for a, i in enumerate(rows):
                v = zero
                for b_, r in enumerate(rhs):
                    if Dinv[a][b_] and r:
                        v = v + r * Dinv[a][b_]
                X[i][col] = v
    return X


def coproduct(ring, lower, upper, variant=0):
    """Σ b_i ⊗ b_i* in R^lower ⊗_{R^upper} R^lower (word lower, upper, lower)."""
    from .bimodcalc import TensorElement, Word

    b, dual = dual_bases(ring, lower, upper, variant)
    word = Word(ring, (lower, upper, lower))
    one = Poly.const(ring, 1)
    return TensorElement.from_pure(word, [(x, one, y) for x, y in zip(b, dual)])


def coproduct_coordinates(ring, lower, upper, variant=0, reference=0):
    """Right-hand factors of Σ b_i ⊗ b_i* written over the reference basis.

    Moving trace values across the tensor sign gives
    Σ_i b_i ⊗ b_i* = Σ_j a_j ⊗ (Σ_i ∂(a_j* b_i) b_i*) for a reference pair
    (a, a*). Equal lists mean equal coproduct elements.
    """
    a, a_star = dual_bases(ring, lower, upper, reference)
    b, b_star = dual_bases(ring, lower, upper, variant)
    tr = extension(ring, lower, upper).trace
    out = []
    for aj_star in a_star:
        c = Poly.zero(ring)
        for bi, bi_star in zip(b, b_star):
            c = c + tr(aj_star * bi) * bi_star
        out.append(c)
    return tuple(out)


# ------------------------------------------------------------ verification


def _eq_on(polys, lhs, rhs):
    for f in polys:
        a, b = lhs(f), rhs(f)
        if a != b:
            return False, f"input {f}: {a} != {b}"
    return True, None


def _all_monomials(ring, cutoff, label=EMPTY):
    out = []
    for d in range(0, cutoff + 1, 2):
        out.extend(graded_basis(ring, label, d))
    return out


def verify_hypercube(ring, cutoff=12) -> Report:
    """Identity suite for the Frobenius hypercube of `ring`."""
    rep = Report(f"frobenius-{ring.name}")
    q, qi = _q(1), _q(-1)
    three, two = quantum_int(3), quantum_int(2)
    D = demazure_word

    # Cartan entries recovered as d_s(alpha_t).
    for s in ring.primaries:
        for t in ring.primaries:
            rep.run(f"cartan d_{s}(a_{t}) = {ring.a(s, t)}",
                    lambda s=s, t=t: demazure(s, alpha(ring, t)) == Poly.const(ring, ring.a(s, t)))

    if ring.nvars == 3:
        R_all = _all_monomials(ring, cutoff)
        braids = [("brb", "rbr", 1), ("byb", "yby", q), ("ryr", "yry", qi)]
        for left, right, c in braids:
            rep.run(f"braid ({c})*d_{'d_'.join(left)} = d_{'d_'.join(right)} up to degree {cutoff}",
                    lambda left=left, right=right, c=c: _eq_on(
                        R_all, lambda f: D(left, f) * c, lambda f: D(right, f)))
        for s, t in permutations(ring.primaries, 2):
            label = ring.label_of({s, t})
            cst = c_scalar(ring, s, t)
            polys = _all_monomials(ring, cutoff, s)
            rep.run(f"d_{s}d_{t} = c_{s}{t} * trace({s}⊂{label}) up to degree {cutoff}",
                    lambda s=s, t=t, label=label, cst=cst, polys=polys: _eq_on(
                        polys, lambda f: D(s + t, f),
                        lambda f: trace(ring, s, label, f) * cst))
        for label in ("p", "g", "o"):
            a, b = sorted(ring.members(label), key=ring.primaries.index)
            rep.run(f"chain ∅⊂{a}⊂{label} = ∅⊂{b}⊂{label} up to degree {cutoff}",
                    lambda a=a, b=b, label=label: _eq_on(
                        R_all,
                        lambda f: trace(ring, a, label, demazure(a, f), check=False),
                        lambda f: trace(ring, b, label, demazure(b, f), check=False)))
            for s in (a, b):
                rep.run(f"chain ∅⊂{s}⊂{label} = trace(∅⊂{label}) up to degree {cutoff}",
                        lambda s=s, label=label: _eq_on(
                            R_all,
                            lambda f: trace(ring, s, label, demazure(s, f), check=False),
                            lambda f: trace(ring, EMPTY, label, f)))
                rep.run(f"trace({s}⊂{label})(mu^{s}_{label}) = 3",
                        lambda s=s, label=label: trace(ring, s, label, mu(ring, s, label)) == 3)
        for I, J in permutations(("p", "g", "o"), 2):
            s = ring.intersection(I, J)
            rep.run(f"trace({s}⊂{I})(mu^{s}_{J}) = [3]",
                    lambda s=s, I=I, J=J: trace(ring, s, I, mu(ring, s, J)) == three)
        for label in ("p", "g", "o"):
            u = next(x for x in ring.primaries if x not in ring.members(label))
            rep.run(f"d_{u}(third root of {label}) = -[2]",
                    lambda u=u, label=label: demazure(u, third_root(ring, label)) == -two)
        for u in ring.primaries:
            s, t = [x for x in ring.primaries if x != u]
            rep.run(f"c_{s}{u} * c_{t}{u} = 1",
                    lambda s=s, t=t, u=u: c_scalar(ring, s, u) * c_scalar(ring, t, u) == 1)
    else:
        for s in ring.primaries:
            t = next(x for x in ring.primaries if x != s)
            rep.run(f"d_{s}(a_{t}) = -[2]", lambda s=s, t=t: demazure(s, alpha(ring, t)) == -two)

    for lower in ring.labels:
        for upper in ring.labels:
            if lower == upper or not ring.is_subset(lower, upper):
                continue
            ext = extension(ring, lower, upper)

            def duals(lower=lower, upper=upper, ext=ext):
                b, dual = dual_bases(ring, lower, upper)
                if len(b) != ext.rank:
                    return False, f"rank {len(b)} != {ext.rank}"
                total = Poly.zero(ring)
                for x, y in zip(b, dual):
                    total = total + x * y
                return total == mu(ring, lower, upper), f"sum b b* = {total}"

            rep.run(f"dual bases {lower}⊂{upper}: rank {ext.rank}, sum b b* = mu", duals)
            rep.run(f"coproduct {lower}⊂{upper} independent of the dual bases",
                    lambda lower=lower, upper=upper: coproduct_coordinates(ring, lower, upper, 1)
                    == dual_bases(ring, lower, upper)[1]
                    and dual_bases(ring, lower, upper, 1) != dual_bases(ring, lower, upper))
    return rep


__all__ = [
    "RootTable", "root_table", "positive_roots", "third_root", "c_scalar", "mu",
    "FrobeniusExtension", "extension", "trace", "dual_bases", "coproduct",
    "coproduct_coordinates",
    "SingularPairing", "verify_hypercube",
]
