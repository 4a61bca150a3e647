"""Singular Bott-Samelson bimodules and a term language for maps between them.

A word c_0 ... c_m of labels names the bimodule

    R^{c_0} ⊗_{R^{c_0 ∪ c_1}} R^{c_1} ⊗ ... ⊗ R^{c_m}.

Elements are kept in a canonical form: slots 0..m-1 hold fixed module
basis elements (recorded by index) and slot m holds an arbitrary element
of R^{c_m}. When c_i ⊂ c_{i+1}, slot i is expanded as
f = Σ_j b_j · trace(b_j* f) and the trace moves right; when c_i ⊃ c_{i+1}
the whole slot moves right.

Morphisms are expression trees (``MorTerm``) of Frobenius generators.
Two terms are compared by evaluating them on the right-module basis of
the source, which decides equality of bimodule maps exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .frobhypercube import dual_bases, extension, mu
from .linalg import rank
from .polyring import EMPTY, Poly, graded_basis, is_invariant, monomials
from .qarith import ONE, ZERO, to_qrational
from .report import Report

# ------------------------------------------------------------------ words


class Word:
    """A validated sequence of labels."""

    __slots__ = ("ring", "labels", "_hash")

    def __init__(self, ring, labels):
        labels = tuple(ring.parse_label(x) if isinstance(x, str) else x for x in labels)
        if not labels:
            raise ValueError("a word needs at least one label")
        full = frozenset(ring.primaries)
        for x in labels:
            if ring.members(x) == full:
                raise ValueError("the full set of colours is not an admissible label")
        for a, b in zip(labels, labels[1:]):
            ma, mb = ring.members(a), ring.members(b)
            if not (ma < mb or mb < ma) or abs(len(ma) - len(mb)) != 1:
                raise ValueError(f"neighbouring labels {a!r}, {b!r} must be nested and differ by one colour")
        self.ring = ring
        self.labels = labels
        self._hash = None

    def __len__(self):
        return len(self.labels)

    def __getitem__(self, i):
        return self.labels[i]

    def __iter__(self):
        return iter(self.labels)

    def __eq__(self, other):
        return isinstance(other, Word) and self.ring is other.ring and self.labels == other.labels

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.name, self.labels))
        return self._hash

    def __repr__(self):
        return f"Word({''.join(self.labels)!r})"

    def __str__(self):
        return "".join(self.labels)

    def __add__(self, other):
        """Concatenate two words sharing their boundary label."""
        if self.labels[-1] != other.labels[0]:
            raise ValueError(f"cannot glue {self} and {other}")
        return Word(self.ring, self.labels + other.labels[1:])

    def goes_up(self, i):
        """True when c_i ⊂ c_{i+1}."""
        return len(self.ring.members(self.labels[i])) < len(self.ring.members(self.labels[i + 1]))

    def step_basis(self, i):
        """(basis, dual) used to straighten slot i."""
        if self.goes_up(i):
            return dual_bases(self.ring, self.labels[i], self.labels[i + 1])
        one = Poly.const(self.ring, 1)
        return (one,), (one,)

    def offset(self):
        """Grading shift -1/2 Σ |Δℓ| carried by the word."""
        ell = self.ring.ell
        total = sum(abs(ell(a) - ell(b)) for a, b in zip(self.labels, self.labels[1:]))
        return -total // 2 if total % 2 == 0 else -total / 2

    def key_degree(self, key):
        deg = 0
        for i, j in enumerate(key):
            b, _ = self.step_basis(i)
            deg += b[j].degree()
        return deg

    def keys(self):
        out = [()]
        for i in range(len(self.labels) - 1):
            n = len(self.step_basis(i)[0])
            out = [k + (j,) for k in out for j in range(n)]
        return out


def validate_word(ring, seq) -> Word:
    return Word(ring, seq)


def _straighten_into(word, prefix, start, slots, out, coeff=None):
    """Straighten a pure tensor whose slots before `start` are already the
    basis elements named by `prefix`; accumulate into `out`."""
    ring = word.ring
    m = len(word) - 1
    states = {prefix: slots[start] if coeff is None else slots[start] * coeff}
    for i in range(start, m):
        nxt = slots[i + 1]
        new = {}
        if word.goes_up(i):
            for key, f in states.items():
                for j, c in enumerate(_expansion(ring, word[i], word[i + 1], f)):
                    if c:
                        k2 = key + (j,)
                        v = c * nxt
                        old = new.get(k2)
                        new[k2] = v if old is None else old + v
        else:
            for key, f in states.items():
                k2 = key + (0,)
                v = f * nxt
                old = new.get(k2)
                new[k2] = v if old is None else old + v
        states = new
    for key, f in states.items():
        if f:
            old = out.get(key)
            f = f if old is None else old + f
            if f:
                out[key] = f
            else:
                del out[key]


_MONO_EXPANSION = {}


def _mono_expansion(ring, small, big, e):
    key = (ring.name, small, big, e)
    out = _MONO_EXPANSION.get(key)
    if out is None:
        ext = extension(ring, small, big)
        m = Poly._raw(ring, {e: ONE})
        out = tuple(ext.trace(d * m) for d in dual_bases(ring, small, big)[1])
        _MONO_EXPANSION[key] = out
    return out


@lru_cache(maxsize=100_000)
def _expansion(ring, small, big, f):
    """Coefficients trace(b_j* f) of f in the module basis of R^small over R^big.

    The trace is only R^big-linear, but f ↦ trace(b_j* f) is Q(q)-linear,
    so it is tabulated on monomials.
    """
    n = len(dual_bases(ring, small, big)[1])
    acc = [{} for _ in range(n)]
    for e, c in f.terms.items():
        for j, t in enumerate(_mono_expansion(ring, small, big, e)):
            a = acc[j]
            for e2, c2 in t.terms.items():
                v = c * c2
                old = a.get(e2)
                a[e2] = v if old is None else old + v
    return tuple(Poly._raw(ring, {e: c for e, c in a.items() if c}) for a in acc)


class TensorElement:
    """Element of the bimodule of a word, stored in canonical form."""

    __slots__ = ("word", "canon")

    def __init__(self, word, canon):
        self.word = word
        self.canon = {k: v for k, v in canon.items() if v}

    @classmethod
    def zero(cls, word):
        return cls(word, {})

    @classmethod
    def from_pure(cls, word, tensors, check=True):
        """Sum of pure tensors, each a sequence of slot polynomials."""
        ring = word.ring
        out = {}
        for slots in tensors:
            slots = [s if isinstance(s, Poly) else Poly.const(ring, s) for s in slots]
            if len(slots) != len(word):
                raise ValueError("pure tensor length does not match the word")
            if check:
                for lab, f in zip(word, slots):
                    if not is_invariant(lab, f):
                        raise ValueError(f"slot value {f} is not {lab}-invariant")
            _straighten_into(word, (), 0, slots, out)
        return cls(word, out)

    @classmethod
    def one(cls, word):
        ring = word.ring
        return cls.from_pure(word, [[Poly.const(ring, 1)] * len(word)], check=False)

    def pure_terms(self):
        """Canonical pure tensors (basis slots followed by the free slot)."""
        w = self.word
        out = []
        for key, f in self.canon.items():
            slots = [w.step_basis(i)[0][j] for i, j in enumerate(key)]
            out.append((key, slots + [f]))
        return out

    def __add__(self, other):
        self._same(other)
        out = dict(self.canon)
        for k, v in other.canon.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return TensorElement(self.word, out)

    def __neg__(self):
        return TensorElement(self.word, {k: -v for k, v in self.canon.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = to_qrational(c)
        return TensorElement(self.word, {k: v * c for k, v in self.canon.items()})

    def multiply_slot(self, pos, f):
        """Multiply slot `pos` by f (an element of R^{c_pos})."""
        out = {}
        for key, slots in self.pure_terms():
            slots = list(slots)
            slots[pos] = slots[pos] * f
            _straighten_into(self.word, key[:pos], pos, slots, out)
        return TensorElement(self.word, out)

    def _same(self, other):
        if self.word != other.word:
            raise ValueError(f"elements live on different words {self.word} and {other.word}")

    def is_zero(self):
        return not self.canon

    def __eq__(self, other):
        return isinstance(other, TensorElement) and self.word == other.word and self.canon == other.canon

    def __hash__(self):
        return hash((self.word, frozenset(self.canon.items())))

    def coordinates(self, d):
        """Monomial coordinates of the degree-d part, for graded linear algebra."""
        w = self.word
        vec = []
        for key in w.keys():
            e = d - w.key_degree(key)
            f = self.canon.get(key)
            if e < 0:
                continue
            monos = monomials(w.ring.nvars, e)
            vec.extend(f.terms.get(m, ZERO) if f is not None else ZERO for m in monos)
        return vec

    def __repr__(self):
        return f"TensorElement({self.word}, {len(self.canon)} terms)"

    def __str__(self):
        if not self.canon:
            return "0"
        parts = []
        for key, slots in sorted(self.pure_terms(), key=lambda t: t[0]):
            parts.append(" ⊗ ".join(f"({s})" for s in slots))
        return " + ".join(parts)


def restraighten(x: TensorElement) -> TensorElement:
    """Straighten the canonical pure terms again (the identity on canonical forms)."""
    return TensorElement.from_pure(x.word, [s for _, s in x.pure_terms()], check=False)


def graded_piece(word, d, cutoff=12):
    """Basis of the degree-d part (polynomial degree, no shift)."""
    if d % 2:
        raise ValueError("graded degrees are even")
    if d > cutoff:
        raise ValueError(f"degree {d} exceeds the cutoff {cutoff}")
    out = []
    last = word[-1]
    ring = word.ring
    for key in word.keys():
        e = d - word.key_degree(key)
        if e < 0:
            continue
        for f in graded_basis(ring, last, e):
            out.append(TensorElement(word, {key: f}))
    return out


def bimodule_generators(word, cutoff=12):
    """Homogeneous generators over (R^{c_0}, R^{c_m}), degree by degree.

    Generators live in degrees at most the top key degree, since the key
    basis already generates the bimodule as a right module.
    """
    ring = word.ring
    top = max(word.key_degree(k) for k in word.keys())
    if top > cutoff:
        raise ValueError(f"generation needs degree {top}, above the cutoff {cutoff}")
    gens = []
    pieces = {}
    for d in range(0, top + 1, 2):
        piece = graded_piece(word, d, cutoff)
        pieces[d] = piece
        spanned = []
        for e in range(2, d + 1, 2):
            for x in pieces.get(d - e, []):
                for f in graded_basis(ring, word[0], e):
                    spanned.append(x.multiply_slot(0, f).coordinates(d))
                for f in graded_basis(ring, word[-1], e):
                    spanned.append(x.multiply_slot(len(word) - 1, f).coordinates(d))
        r0 = rank(spanned) if spanned else 0
        for g in piece:
            trial = spanned + [g.coordinates(d)]
            if rank(trial) > r0:
                gens.append(g)
                spanned = trial
                r0 += 1
    return gens


def right_module_basis(word):
    """Canonical basis keys with free slot 1: a basis over R^{c_m}."""
    one = Poly.const(word.ring, 1)
    return [TensorElement(word, {k: one}) for k in word.keys()]


# ------------------------------------------------------------------ terms


class MorTerm:
    source: Word
    target: Word

    @property
    def degree(self):
        raise NotImplementedError

    def __matmul__(self, other):
        """self ∘ other (apply other first)."""
        return Vertical(self, other)

    def __mul__(self, c):
        return LinComb(((to_qrational(c), self),))

    __rmul__ = __mul__

    def __add__(self, other):
        return LinComb(_terms_of(self) + _terms_of(other))

    def __sub__(self, other):
        return LinComb(_terms_of(self) + tuple((-c, t) for c, t in _terms_of(other)))


def _terms_of(t):
    if isinstance(t, LinComb):
        return t.terms
    return ((ONE, t),)


class Generator(MorTerm):
    """A local map; `act` sends a window of slots to a list of windows."""

    def act(self, slots):
        raise NotImplementedError


def _ext_degree(ring, small, big):
    return ring.ell(big) - ring.ell(small)


def _check_ext(ring, small, big):
    ms, mb = ring.members(small), ring.members(big)
    if not (ms < mb and len(mb) - len(ms) == 1):
        raise ValueError(f"{small}⊂{big} is not an elementary extension")


@dataclass(frozen=True, eq=False)
class Unit(Generator):
    """[J] -> [J, I, J], a -> a ⊗ 1 ⊗ 1 (I ⊂ J)."""

    ring: object
    small: str
    big: str

    def __post_init__(self):
        _check_ext(self.ring, self.small, self.big)
        object.__setattr__(self, "source", Word(self.ring, (self.big,)))
        object.__setattr__(self, "target", Word(self.ring, (self.big, self.small, self.big)))

    @property
    def degree(self):
        return -_ext_degree(self.ring, self.small, self.big)

    def act(self, slots):
        one = Poly.const(self.ring, 1)
        return [(slots[0], one, one)]

    def __str__(self):
        return f"(unit {self.small}<{self.big})"


@dataclass(frozen=True, eq=False)
class Trace(Generator):
    """[J, I, J] -> [J], a ⊗ g ⊗ b -> a trace(g) b."""

    ring: object
    small: str
    big: str

    def __post_init__(self):
        _check_ext(self.ring, self.small, self.big)
        object.__setattr__(self, "source", Word(self.ring, (self.big, self.small, self.big)))
        object.__setattr__(self, "target", Word(self.ring, (self.big,)))

    @property
    def degree(self):
        return -_ext_degree(self.ring, self.small, self.big)

    def act(self, slots):
        a, g, b = slots
        return [(a * extension(self.ring, self.small, self.big).trace(g) * b,)]

    def __str__(self):
        return f"(trace {self.small}<{self.big})"


@dataclass(frozen=True, eq=False)
class Mult(Generator):
    """[I, J, I] -> [I], a ⊗ g ⊗ b -> a g b."""

    ring: object
    small: str
    big: str

    def __post_init__(self):
        _check_ext(self.ring, self.small, self.big)
        object.__setattr__(self, "source", Word(self.ring, (self.small, self.big, self.small)))
        object.__setattr__(self, "target", Word(self.ring, (self.small,)))

    @property
    def degree(self):
        return _ext_degree(self.ring, self.small, self.big)

    def act(self, slots):
        a, g, b = slots
        return [(a * g * b,)]

    def __str__(self):
        return f"(mult {self.small}<{self.big})"


@dataclass(frozen=True, eq=False)
class Comult(Generator):
    """[I] -> [I, J, I], a -> Σ a b_i ⊗ 1 ⊗ b_i*."""

    ring: object
    small: str
    big: str

    def __post_init__(self):
        _check_ext(self.ring, self.small, self.big)
        object.__setattr__(self, "source", Word(self.ring, (self.small,)))
        object.__setattr__(self, "target", Word(self.ring, (self.small, self.big, self.small)))

    @property
    def degree(self):
        return _ext_degree(self.ring, self.small, self.big)

    def act(self, slots):
        (a,) = slots
        b, dual = dual_bases(self.ring, self.small, self.big)
        one = Poly.const(self.ring, 1)
        return [(a * x, one, y) for x, y in zip(b, dual)]

    def __str__(self):
        return f"(comult {self.small}<{self.big})"


@dataclass(frozen=True, eq=False)
class Crossing(Generator):
    """[∅, s, I] -> [∅, t, I]; both sides are R as an (R, R^I)-bimodule.

    With ``mirror=True`` the map is [I, s, ∅] -> [I, t, ∅] instead.
    """

    ring: object
    s: str
    t: str
    doubleton: str
    mirror: bool = False

    def __post_init__(self):
        ring = self.ring
        members = ring.members(self.doubleton)
        if len(members) != 2 or self.s == self.t or not {self.s, self.t} <= members:
            raise ValueError(f"crossing needs two colours inside a doubleton, got {self.s}, {self.t}, {self.doubleton}")
        src = (EMPTY, self.s, self.doubleton)
        tgt = (EMPTY, self.t, self.doubleton)
        if self.mirror:
            src, tgt = src[::-1], tgt[::-1]
        object.__setattr__(self, "source", Word(ring, src))
        object.__setattr__(self, "target", Word(ring, tgt))

    @property
    def degree(self):
        return 0

    def act(self, slots):
        one = Poly.const(self.ring, 1)
        prod = slots[0] * slots[1] * slots[2]
        if self.mirror:
            return [(one, one, prod)]
        return [(prod, one, one)]

    def __str__(self):
        tag = "mcross" if self.mirror else "cross"
        return f"({tag} {self.s}->{self.t} in {self.doubleton})"


@dataclass(frozen=True, eq=False)
class Box(Generator):
    """Multiply slot `pos` of `word` by f."""

    word: Word
    pos: int
    f: Poly

    def __post_init__(self):
        if not is_invariant(self.word[self.pos], self.f):
            raise ValueError(f"box polynomial {self.f} is not {self.word[self.pos]}-invariant")
        if not self.f.is_homogeneous():
            raise ValueError("box polynomials must be homogeneous")
        object.__setattr__(self, "source", self.word)
        object.__setattr__(self, "target", self.word)

    @property
    def degree(self):
        d = self.f.degree()
        return 0 if d is None else d

    def act(self, slots):
        slots = list(slots)
        slots[self.pos] = slots[self.pos] * self.f
        return [tuple(slots)]

    def __str__(self):
        return f"(box {self.pos} {self.f})"


@dataclass(frozen=True, eq=False)
class Identity(MorTerm):
    word: Word

    def __post_init__(self):
        object.__setattr__(self, "source", self.word)
        object.__setattr__(self, "target", self.word)

    @property
    def degree(self):
        return 0

    def __str__(self):
        return f"(id {self.word})"


@dataclass(frozen=True, eq=False)
class Vertical(MorTerm):
    """outer ∘ inner."""

    outer: MorTerm
    inner: MorTerm

    def __post_init__(self):
        if self.inner.target != self.outer.source:
            raise ValueError(f"cannot compose: {self.inner.target} != {self.outer.source}")
        object.__setattr__(self, "source", self.inner.source)
        object.__setattr__(self, "target", self.outer.target)

    @property
    def degree(self):
        return self.outer.degree + self.inner.degree

    def __str__(self):
        return f"(o {self.outer} {self.inner})"


@dataclass(frozen=True, eq=False)
class Horizontal(MorTerm):
    """left ⊗ right, glued along their shared boundary label."""

    left: MorTerm
    right: MorTerm

    def __post_init__(self):
        object.__setattr__(self, "source", self.left.source + self.right.source)
        object.__setattr__(self, "target", self.left.target + self.right.target)

    @property
    def degree(self):
        return self.left.degree + self.right.degree

    def __str__(self):
        return f"(x {self.left} {self.right})"


@dataclass(frozen=True, eq=False)
class LinComb(MorTerm):
    terms: tuple

    def __post_init__(self):
        if not self.terms:
            raise ValueError("empty linear combination")
        t0 = self.terms[0][1]
        degs = set()
        for _, t in self.terms:
            if t.source != t0.source or t.target != t0.target:
                raise ValueError("summands have different boundaries")
            degs.add(t.degree)
        if len(degs) != 1:
            raise ValueError(f"summands have different degrees {sorted(degs)}")
        object.__setattr__(self, "source", t0.source)
        object.__setattr__(self, "target", t0.target)

    @property
    def degree(self):
        return self.terms[0][1].degree

    def __str__(self):
        return "(+ " + " ".join(f"[{c}]{t}" for c, t in self.terms) + ")"


def local(word, pos, gen) -> MorTerm:
    """gen acting on word[pos : pos + len(gen.source)], identity elsewhere."""
    n = len(gen.source)
    if tuple(word[pos:pos + n]) != gen.source.labels:
        raise ValueError(f"{gen} does not match {word} at position {pos}")
    ring = word.ring
    term = gen
    if pos > 0:
        term = Horizontal(Identity(Word(ring, word[:pos + 1])), term)
    if pos + n < len(word):
        term = Horizontal(term, Identity(Word(ring, word[pos + n - 1:])))
    return term


def chain(*terms) -> MorTerm:
    """Compose terms listed in the order they are applied."""
    out = terms[0]
    for t in terms[1:]:
        out = Vertical(t, out)
    return out


# ------------------------------------------------------------- evaluation


def _window(t):
    """Decompose id ⊗ gen ⊗ id into (offset, gen), or None."""
    left = 0
    while isinstance(t, Horizontal):
        if isinstance(t.left, Identity):
            left += len(t.left.word) - 1
            t = t.right
        elif isinstance(t.right, Identity):
            t = t.left
        else:
            return None
    if isinstance(t, Generator):
        return left, t
    return None


def eval_term(t: MorTerm, x: TensorElement) -> TensorElement:
    """Apply a term to an element of its source bimodule."""
    if x.word != t.source:
        raise ValueError(f"element lives on {x.word}, term expects {t.source}")
    if isinstance(t, Identity):
        return x
    if isinstance(t, Vertical):
        return eval_term(t.outer, eval_term(t.inner, x))
    if isinstance(t, LinComb):
        out = TensorElement.zero(t.target)
        for c, s in t.terms:
            out = out + eval_term(s, x).scale(c)
        return out
    win = _window(t)
    if win is not None:
        return _eval_window(t.target, win[0], win[1], x)
    if isinstance(t, Horizontal):
        return _eval_horizontal(t, x)
    raise TypeError(f"cannot evaluate {t!r}")


def _eval_window(target, pos, gen, x):
    n = len(gen.source)
    out = {}
    for key, slots in x.pure_terms():
        for new in gen.act(slots[pos:pos + n]):
            full = slots[:pos] + list(new) + slots[pos + n:]
            _straighten_into(target, key[:pos], pos, full, out)
    return TensorElement(target, out)


def _eval_horizontal(t, x):
    ring = x.word.ring
    k = len(t.left.source) - 1
    one = Poly.const(ring, 1)
    out = {}
    for key, slots in x.pure_terms():
        left = TensorElement.from_pure(t.left.source, [slots[:k + 1]], check=False)
        right = TensorElement.from_pure(t.right.source, [[one] + slots[k + 1:]], check=False)
        lres = eval_term(t.left, left)
        rres = eval_term(t.right, right)
        for _, ls in lres.pure_terms():
            for _, rs in rres.pure_terms():
                full = ls[:-1] + [ls[-1] * rs[0]] + rs[1:]
                _straighten_into(t.target, (), 0, full, out)
    return TensorElement(t.target, out)


def maps_equal(t1: MorTerm, t2: MorTerm) -> bool:
    """Decide t1 = t2 as bimodule maps."""
    if t1.source != t2.source or t1.target != t2.target:
        raise ValueError(f"boundaries differ: {t1.source}->{t1.target} vs {t2.source}->{t2.target}")
    if t1.degree != t2.degree:
        return False
    for g in right_module_basis(t1.source):
        if eval_term(t1, g) != eval_term(t2, g):
            return False
    return True


def map_difference_witness(t1, t2):
    for g in right_module_basis(t1.source):
        a, b = eval_term(t1, g), eval_term(t2, g)
        if a != b:
            return f"on {g}: {a} != {b}"
    return None


def proportionality(t1: MorTerm, t2: MorTerm):
    """The scalar c with t1 = c·t2, or None when no such scalar exists
    (or t2 vanishes, leaving c undetermined)."""
    if t1.source != t2.source or t1.target != t2.target:
        raise ValueError("boundaries differ")
    c = None
    for g in right_module_basis(t1.source):
        a, b = eval_term(t1, g), eval_term(t2, g)
        if b.is_zero():
            if not a.is_zero():
                return None
            continue
        r = _ratio(a, b)
        if r is None or (c is not None and r != c):
            return None
        c = r
    return c


def scalar_of(t: MorTerm):
    """The scalar c with t = c·id, or None if t is not a scalar map."""
    if t.source != t.target:
        return None
    return proportionality(t, Identity(t.source))


def _ratio(a, b):
    """Scalar c with a = c·b for non-zero b, or None."""
    if a.is_zero():
        return ZERO
    if set(a.canon) != set(b.canon):
        return None
    key = next(iter(b.canon))
    fb = b.canon[key]
    mono, cb = next(iter(fb.terms.items()))
    c = a.canon[key].terms.get(mono, ZERO) / cb
    if all(a.canon[k] == fb_ * c for k, fb_ in b.canon.items()):
        return c
    return None


# --------------------------------------------------- idempotents and suite


def splitting_idempotents(ring, s):
    """Orthogonal idempotents of s∅s splitting it into copies of s."""
    a, dual = dual_bases(ring, EMPTY, s)
    w = Word(ring, (s, EMPTY, s))
    out = []
    for x, y in zip(a, dual):
        out.append(chain(Box(w, 1, y), Trace(ring, EMPTY, s), Unit(ring, EMPTY, s), Box(w, 1, x)))
    return out


def _sum_terms(terms):
    return LinComb(tuple((ONE, t) for t in terms))


def _elementary_extensions(ring):
    out = []
    for small in ring.labels:
        for big in ring.labels:
            ms, mb = ring.members(small), ring.members(big)
            if ms < mb and len(mb) - len(ms) == 1:
                out.append((small, big))
    return out


def _eq(rep, name, lhs, rhs):
    rep.run(name, lambda: (maps_equal(lhs, rhs), map_difference_witness(lhs, rhs)))


def _sample_polys(ring, label, max_degree):
    out = []
    for d in range(2, max_degree + 1, 2):
        out.extend(graded_basis(ring, label, d)[:2])
    return out


def verify_relations(ring, cutoff=12) -> Report:
    """Algebraic relation suite for the singular Soergel generators."""
    from .frobhypercube import c_scalar, coproduct, third_root
    from .polyring import alpha, demazure, reflect

    rep = Report(f"relations-{ring.name}")
    box_degree = min(cutoff, 6)
    for small, big in _elementary_extensions(ring):
        ext = f"{small}⊂{big}"
        I = Word(ring, (small,))
        J = Word(ring, (big,))
        IJ = Word(ring, (small, big))
        JI = Word(ring, (big, small))
        IJI = Word(ring, (small, big, small))
        JIJ = Word(ring, (big, small, big))
        unit, tr = Unit(ring, small, big), Trace(ring, small, big)
        mult, com = Mult(ring, small, big), Comult(ring, small, big)

        # zigzags (counit/unit axioms)
        _eq(rep, f"{ext} zigzag comult/trace on IJ",
            chain(local(IJ, 0, com), local(Word(ring, (small, big, small, big)), 1, tr)), Identity(IJ))
        _eq(rep, f"{ext} zigzag comult/trace on JI",
            chain(local(JI, 1, com), local(Word(ring, (big, small, big, small)), 0, tr)), Identity(JI))
        _eq(rep, f"{ext} zigzag unit/mult on JI",
            chain(local(JI, 0, unit), local(Word(ring, (big, small, big, small)), 1, mult)), Identity(JI))
        _eq(rep, f"{ext} zigzag unit/mult on IJ",
            chain(local(IJ, 1, unit), local(Word(ring, (small, big, small, big)), 0, mult)), Identity(IJ))
        # circles
        _eq(rep, f"{ext} mult∘comult = mu", chain(com, mult), Box(I, 0, mu(ring, small, big)))
        _eq(rep, f"{ext} trace∘unit = 0", chain(unit, tr), _zero_map(J, -2 * _ext_degree(ring, small, big)))
        for f in _sample_polys(ring, small, box_degree):
            tf = extension(ring, small, big).trace(f)
            rhs = Box(J, 0, tf) if tf else _zero_map(J, f.degree() - 2 * _ext_degree(ring, small, big))
            _eq(rep, f"{ext} trace∘box({f})∘unit = box(trace f)", chain(unit, Box(JIJ, 1, f), tr), rhs)
        # polynomial sliding across the middle slot, and through (co)multiplication
        for f in _sample_polys(ring, big, min(box_degree, 4)):
            _eq(rep, f"{ext} slide {f} across IJI", Box(IJI, 0, f), Box(IJI, 2, f))
        for f in _sample_polys(ring, small, min(box_degree, 4)):
            _eq(rep, f"{ext} comult∘box({f}) = box left", chain(Box(I, 0, f), com), chain(com, Box(IJI, 0, f)))
            _eq(rep, f"{ext} comult∘box({f}) = box right", chain(Box(I, 0, f), com), chain(com, Box(IJI, 2, f)))
            _eq(rep, f"{ext} box({f}) through mult", chain(Box(IJI, 0, f), mult), chain(Box(IJI, 2, f), mult))
        # Frobenius associativity and forcing
        IJIJI = Word(ring, (small, big, small, big, small))
        _eq(rep, f"{ext} frobenius associativity left",
            chain(local(IJI, 2, com), local(IJIJI, 0, mult)), chain(mult, com))
        _eq(rep, f"{ext} frobenius associativity right",
            chain(local(IJI, 0, com), local(IJIJI, 2, mult)), chain(mult, com))
        b, dual = dual_bases(ring, small, big)
        forcing = _sum_terms([chain(Box(IJI, 0, x), Box(IJI, 2, y)) for x, y in zip(b, dual)])
        _eq(rep, f"{ext} comult∘mult = coproduct action", chain(mult, com), forcing)
        # trace is linear over the big ring
        for g in _sample_polys(ring, big, min(box_degree, 4)):
            for f in _sample_polys(ring, small, 2)[:1]:
                _eq(rep, f"{ext} trace bilinear in {g}",
                    chain(Box(JIJ, 1, f * g), tr), chain(Box(JIJ, 1, f), tr, Box(J, 0, g)))
        # splitting of J I J is reproducing
        reproduce = _sum_terms([chain(Box(JIJ, 1, y), tr, unit, Box(JIJ, 1, x)) for x, y in zip(b, dual)])
        _eq(rep, f"{ext} reproducing sum on JIJ", reproduce, Identity(JIJ))

    if ring.nvars == 3:
        for I in ("p", "g", "o"):
            s, t = sorted(ring.members(I), key=ring.primaries.index)
            for a, b_ in ((s, t), (t, s)):
                # crossings are inverse to each other
                w = Word(ring, (EMPTY, a, I))
                _eq(rep, f"crossing {a}->{b_}->{a} in {I}",
                    chain(Crossing(ring, a, b_, I), Crossing(ring, b_, a, I)), Identity(w))
                wm = Word(ring, (I, a, EMPTY))
                _eq(rep, f"mirror crossing {a}->{b_}->{a} in {I}",
                    chain(Crossing(ring, a, b_, I, True), Crossing(ring, b_, a, I, True)), Identity(wm))

                def sweedler(a=a, b_=b_, I=I):
                    lhs = _apply_slot(coproduct(ring, b_, I), 0, lambda f: demazure(a, f), Word(ring, (a, I, b_)))
                    rhs = _apply_slot(coproduct(ring, a, I), 2, lambda f: demazure(b_, f), Word(ring, (a, I, b_)))
                    return lhs == rhs, f"{lhs} != {rhs}"

                rep.run(f"(d_{a} ⊗ id)Δ^{b_}_{I} = (id ⊗ d_{b_})Δ^{a}_{I}", sweedler)

                def kernel(a=a, b_=b_, I=I):
                    c = c_scalar(ring, a, b_)
                    w3 = Word(ring, (a, I, a))
                    lhs = _apply_slot(coproduct(ring, a, I), 0, lambda f: demazure(a, demazure(b_, f)), w3)
                    rhs = TensorElement.one(w3).scale(c)
                    return lhs == rhs, f"{lhs} != {c}·1⊗1"

                rep.run(f"(d_{a}d_{b_} ⊗ id)Δ^{a}_{I} = c_{a}{b_}·1⊗1", kernel)

                def r2scalar(a=a, b_=b_, I=I):
                    # multiplying out (d_a ⊗ id)Δ^{b}_I gives the third root
                    total = Poly.zero(ring)
                    basis, dual = dual_bases(ring, b_, I)
                    for x, y in zip(basis, dual):
                        total = total + demazure(a, x) * y
                    want = third_root(ring, I)
                    return total == want, f"{total} != {want}"

                rep.run(f"m((d_{a} ⊗ id)Δ^{b_}_{I}) = third root of {I}", r2scalar)
    for s in ring.primaries:
        S = Word(ring, (s,))
        SES = Word(ring, (s, EMPTY, s))
        ESE = Word(ring, (EMPTY, s, EMPTY))
        unit, tr = Unit(ring, EMPTY, s), Trace(ring, EMPTY, s)
        broken = chain(Mult(ring, EMPTY, s), Comult(ring, EMPTY, s))
        for t in ring.primaries:
            # a circle of colour s around a_t evaluates to the Cartan entry
            _eq(rep, f"circle {s} around a_{t} = {ring.a(s, t)}",
                chain(unit, Box(SES, 1, alpha(ring, t)), tr), Identity(S) * to_qrational(ring.a(s, t)))
            f = alpha(ring, t)
            lhs = Box(ESE, 0, f)
            rhs = Box(ESE, 2, reflect(s, f)) + broken * to_qrational(demazure(s, f).scalar())
            _eq(rep, f"forcing a_{t} through {s}", lhs, rhs)
        idem = splitting_idempotents(ring, s)
        _eq(rep, f"idempotents of {s}∅{s} sum to id", _sum_terms(idem), Identity(SES))
        for i, e in enumerate(idem):
            for j, g in enumerate(idem):
                want = e if i == j else _zero_map(SES, 0)
                _eq(rep, f"idempotents of {s}∅{s}: e{i}∘e{j}", chain(g, e), want)
    return rep


def _zero_map(word, degree):
    return _ZeroMap(word, degree)


@dataclass(frozen=True, eq=False)
class _ZeroMap(Generator):
    word: Word
    deg: int

    def __post_init__(self):
        object.__setattr__(self, "source", self.word)
        object.__setattr__(self, "target", self.word)

    @property
    def degree(self):
        return self.deg

    def act(self, slots):
        return []

    def __str__(self):
        return "(zero)"


def _apply_slot(x, pos, fn, new_word):
    """Apply a linear map to one slot of every canonical pure term."""
    out = []
    for _, slots in x.pure_terms():
        slots = list(slots)
        slots[pos] = fn(slots[pos])
        out.append(slots)
    return TensorElement.from_pure(new_word, out)


__all__ = [
    "Word", "validate_word", "TensorElement", "graded_piece", "bimodule_generators",
    "right_module_basis", "MorTerm", "Generator", "Unit", "Trace", "Mult", "Comult",
    "Crossing", "Box", "Identity", "Vertical", "Horizontal", "LinComb", "local", "chain",
    "eval_term", "maps_equal", "proportionality", "scalar_of", "splitting_idempotents", "verify_relations",
    "restraighten",
]
