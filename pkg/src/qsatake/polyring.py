"""The polynomial ring R = Q(q)[alpha_s] with the q-deformed affine Weyl action.

Two realizations are provided: affine sl_2 (colours r, b) and affine sl_3
(colours r, b, y). Region and object labels are proper subsets of the
primary colours, written as single characters::

    sl_3:  ∅  r  b  y  p={r,b}  g={b,y}  o={r,y}
    sl_2:  ∅  r  b

Polynomials are immutable ``Poly`` values. Variables are ordered
(alpha_r, alpha_b, alpha_y) and each has degree 2.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement

from .linalg import nullspace, rref
from .qarith import ONE, ZERO, QLaurent, parse_expression, quantum_int, to_qrational

EMPTY = "∅"
_EMPTY_ALIASES = {"∅", "e", "0", "E", "empty"}


class Realization:
    """Cartan data, colour names and subset labels for one affine type."""

    def __init__(self, name, primaries, cartan, doubletons):
        self.name = name
        self.primaries = tuple(primaries)
        self.rank = len(primaries) - 1
        self.index = {s: i for i, s in enumerate(self.primaries)}
        self.cartan = dict(cartan)
        self._subsets = {EMPTY: frozenset()}
        for s in self.primaries:
            self._subsets[s] = frozenset(s)
        for label, pair in doubletons.items():
            self._subsets[label] = frozenset(pair)
        self._labels = {v: k for k, v in self._subsets.items()}
        # Images of the variables under each simple reflection.
        self._images = {}
        for s in self.primaries:
            imgs = []
            for t in self.primaries:
                if t == s:
                    imgs.append(-Poly.var(self, s))
                else:
                    imgs.append(Poly.var(self, t) - Poly.var(self, s) * self.a(s, t))
            self._images[s] = tuple(imgs)

    def __repr__(self):
        return f"<Realization {self.name}>"

    def __reduce__(self):
        return (realization, (len(self.primaries),))

    @property
    def nvars(self):
        return len(self.primaries)

    def a(self, s, t):
        """Cartan entry a_{s,t} = <alpha_s^vee, alpha_t>."""
        if s == t:
            return QLaurent.const(2)
        return self.cartan[(s, t)]

    def cartan_matrix(self, order=None):
        order = order or self.primaries
        return [[self.a(s, t) for t in order] for s in order]

    # subset lattice ------------------------------------------------------

    @property
    def labels(self):
        return tuple(self._subsets)

    def parse_label(self, text):
        if text in _EMPTY_ALIASES:
            return EMPTY
        if text in self._subsets:
            return text
        raise ValueError(f"unknown colour {text!r} for {self.name}")

    def members(self, label):
        try:
            return self._subsets[label]
        except KeyError:
            raise ValueError(f"unknown colour {label!r} for {self.name}") from None

    def label_of(self, members):
        members = frozenset(members)
        if members == frozenset(self.primaries):
            raise ValueError("the full set of colours is not an admissible label")
        try:
            return self._labels[members]
        except KeyError:
            raise ValueError(f"no label for {sorted(members)}") from None

    def union(self, a, b):
        return self.label_of(self.members(a) | self.members(b))

    def intersection(self, a, b):
        return self.label_of(self.members(a) & self.members(b))

    def is_subset(self, a, b):
        return self.members(a) <= self.members(b)

    def ell(self, label):
        """Length of the longest element of the parabolic subgroup."""
        return {0: 0, 1: 1, 2: 3}[len(self.members(label))]

    def check_primary(self, s):
        if s not in self.index:
            raise ValueError(f"{s!r} is not a primary colour of {self.name}")
        return s


@lru_cache(maxsize=None)
def realization(n: int) -> Realization:
    """The exotic realization of affine sl_n, n in {2, 3}."""
    q = QLaurent.q()
    qi = QLaurent.q(-1)
    if n == 3:
        one = QLaurent.const(1)
        cartan = {
            ("b", "r"): -one, ("b", "y"): -qi,
            ("r", "b"): -one, ("r", "y"): -q,
            ("y", "b"): -q, ("y", "r"): -qi,
        }
        return Realization("sl3", "rby", cartan, {"p": "rb", "g": "by", "o": "ry"})
    if n == 2:
        two = quantum_int(2)
        return Realization("sl2", "rb", {("b", "r"): -two, ("r", "b"): -two}, {})
    raise ValueError(f"only sl_2 and sl_3 are supported, got n={n}")


# -------------------------------------------------------------------- Poly


class Poly:
    """Polynomial in the simple roots with Q(q) coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms=None):
        self.ring = ring
        t = {}
        if terms:
            for e, c in dict(terms).items():
                c = to_qrational(c)
                if c:
                    t[tuple(e)] = c
        self.terms = t
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def var(cls, ring, s):
        e = [0] * ring.nvars
        e[ring.index[s]] = 1
        return cls._raw(ring, {tuple(e): ONE})

    @classmethod
    def const(cls, ring, c=1):
        c = to_qrational(c)
        return cls._raw(ring, {(0,) * ring.nvars: c} if c else {})

    @classmethod
    def zero(cls, ring):
        return cls._raw(ring, {})

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or set(self.terms) == {(0,) * self.ring.nvars}

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, ZERO)

    def scalar(self):
        """The coefficient of a constant polynomial."""
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.constant_term()

    def degrees(self):
        return {2 * sum(e) for e in self.terms}

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def degree(self):
        """Graded degree (each alpha has degree 2); None for zero."""
        ds = self.degrees()
        if not ds:
            return None
        if len(ds) > 1:
            raise ValueError(f"{self} is not homogeneous")
        return ds.pop()

    def homogeneous_part(self, d):
        return Poly._raw(self.ring, {e: c for e, c in self.terms.items() if 2 * sum(e) == d})

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        return Poly.const(self.ring, other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e)
            if s is None:
                t[e] = c
            else:
                s = s + c
                if s:
                    t[e] = s
                else:
                    del t[e]
        return Poly._raw(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = to_qrational(other)
            if not c:
                return Poly.zero(self.ring)
            return Poly._raw(self.ring, {e: v * c for e, v in self.terms.items()})
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                s = t.get(e)
                t[e] = v if s is None else s + v
        return Poly._raw(self.ring, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = to_qrational(c)
        return self * c.inverse()

    def __pow__(self, k):
        if k < 0:
            if not self.is_constant() or not self.terms:
                raise ValueError("only non-zero constants have inverses")
            return Poly.const(self.ring, self.scalar().inverse() ** (-k))
        out = Poly.const(self.ring, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Poly):
            try:
                other = Poly.const(self.ring, other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    def divide_by_var(self, s):
        """Exact division by alpha_s."""
        i = self.ring.index[s]
        t = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                raise ArithmeticError(f"{self} is not divisible by alpha_{s}")
            e = list(e)
            e[i] -= 1
            t[tuple(e)] = c
        return Poly._raw(self.ring, t)

    def __repr__(self):
        return f"Poly({str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        names = [f"a_{s}" for s in self.ring.primaries]
        out = []
        for e, c in self.sorted_terms():
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            cs = str(c)
            sign = "+"
            if " " not in cs and cs.startswith("-"):
                sign, cs = "-", cs[1:]
            elif " " in cs and mono:
                cs = f"({cs})"
            if not mono:
                body = cs
            elif cs == "1":
                body = mono
            else:
                body = f"{cs}*{mono}"
            out.append((sign, body))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text


def alpha(ring, s):
    return Poly.var(ring, s)


def parse_poly(ring, text: str) -> Poly:
    """Parse e.g. ``a_r^2*a_b - q^-1*a_y``."""
    atoms = {f"a_{s}": Poly.var(ring, s) for s in ring.primaries}
    atoms["q"] = Poly.const(ring, QLaurent.q())
    return parse_expression(text, atoms, Poly.const(ring, 1))


# --------------------------------------------------------- group action


def _power(ring, s, i, k, _cache={}):
    key = (ring.name, s, i, k)
    p = _cache.get(key)
    if p is None:
        p = ring._images[s][i] ** k
        _cache[key] = p
    return p


_MONO_IMAGE = {}
_MONO_DEMAZURE = {}


def _mono_image(ring, s, e):
    key = (ring.name, s, e)
    img = _MONO_IMAGE.get(key)
    if img is None:
        img = Poly.const(ring, 1)
        for i, k in enumerate(e):
            if k:
                img = img * _power(ring, s, i, k)
        _MONO_IMAGE[key] = img
    return img


def _mono_demazure(ring, s, e):
    key = (ring.name, s, e)
    d = _MONO_DEMAZURE.get(key)
    if d is None:
        m = Poly._raw(ring, {e: ONE})
        d = (m - _mono_image(ring, s, e)).divide_by_var(s)
        _MONO_DEMAZURE[key] = d
    return d


def _combine(ring, pieces):
    """Σ c·p over (c, p) pairs."""
    out = {}
    for c, p in pieces:
        for e2, c2 in p.terms.items():
            v = c * c2
            old = out.get(e2)
            out[e2] = v if old is None else old + v
    return Poly._raw(ring, {e: c for e, c in out.items() if c})


@lru_cache(maxsize=200_000)
def reflect(s, f: Poly) -> Poly:
    """Apply the simple reflection s as a ring automorphism."""
    ring = f.ring
    ring.check_primary(s)
    return _combine(ring, ((c, _mono_image(ring, s, e)) for e, c in f.terms.items()))


def act_word(word, f: Poly) -> Poly:
    """Apply w = s_1 s_2 ... s_k to f; the rightmost letter acts first."""
    for s in reversed(list(word)):
        f = reflect(s, f)
    return f


@lru_cache(maxsize=200_000)
def demazure(s, f: Poly) -> Poly:
    """Divided difference (f - s f) / alpha_s."""
    ring = f.ring
    ring.check_primary(s)
    return _combine(ring, ((c, _mono_demazure(ring, s, e)) for e, c in f.terms.items()))


def demazure_word(ops, f: Poly) -> Poly:
    """Apply d_{s_1} ... d_{s_k}; the rightmost operator acts first."""
    for s in reversed(list(ops)):
        f = demazure(s, f)
    return f


def is_invariant(label, f: Poly) -> bool:
    ring = f.ring
    members = ring.members(label)
    if members == frozenset(ring.primaries):
        raise ValueError("the full set of colours is not an admissible label")
    return all(reflect(s, f) == f for s in sorted(members))


# --------------------------------------------------------- graded pieces


@lru_cache(maxsize=None)
def monomials(nvars: int, d: int):
    """Exponent vectors of graded degree d, lexicographically descending."""
    if d % 2:
        raise ValueError("graded degrees are even")
    k = d // 2
    out = set()
    for combo in combinations_with_replacement(range(nvars), k):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.add(tuple(e))
    return tuple(sorted(out, reverse=True))


@lru_cache(maxsize=None)
def graded_basis(ring, label, d: int):
    """Basis of the degree-d part of R^label, in reduced echelon form with
    respect to the lexicographic monomial order."""
    if d < 0 or d % 2:
        raise ValueError(f"graded degree must be even and non-negative, got {d}")
    members = ring.members(label)
    if members == frozenset(ring.primaries):
        raise ValueError("the full set of colours is not an admissible label")
    monos = monomials(ring.nvars, d)
    if not members:
        return tuple(Poly._raw(ring, {m: ONE}) for m in monos)
    rows = []
    for s in sorted(members):
        cols = []
        for m in monos:
            x = Poly._raw(ring, {m: ONE})
            cols.append(reflect(s, x) - x)
        for m in monos:
            rows.append([c.terms.get(m, ZERO) for c in cols])
    kernel = nullspace(rows, len(monos), ZERO, ONE)
    red, _ = rref(kernel, len(monos))
    return tuple(Poly._raw(ring, {m: c for m, c in zip(monos, v) if c}) for v in red)


def coordinates(f: Poly, d: int):
    """Coefficient vector of a homogeneous f in the monomial basis of degree d."""
    return [f.terms.get(m, ZERO) for m in monomials(f.ring.nvars, d)]


__all__ = [
    "EMPTY", "Realization", "realization", "Poly", "alpha", "parse_poly",
    "reflect", "act_word", "demazure", "demazure_word", "is_invariant",
    "graded_basis", "monomials", "coordinates",
]
