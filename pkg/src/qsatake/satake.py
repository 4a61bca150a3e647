"""The functor from region-coloured webs to singular Bott-Samelson maps.

Each web region keeps its colour; each web strand between regions x and y
is widened into a region coloured by the primary colour x ∩ y. A web word
[x0, x1, ..., xk] therefore maps to the bimodule word
[x0, x0∩x1, x1, ..., xk].

Cups and caps become two-step Frobenius composites (unit then comultiply,
multiply then trace). A trivalent vertex becomes a six-step composite:
open an ∅-bubble, slide it through the three incident regions with
crossings, and close it with a trace. Merge images carry a calibration
scalar, fixed by the bigon relation.

Webs are turned into generator sequences by sweeping (webs.sweep), so
functor_image on a web depends only on the web, not on how it was built.
Free loops and closed components are degree-0 endomorphisms of a region's
ring and so act by scalars; they are evaluated once on the bimodule side.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache

from .bimodcalc import (Comult, Crossing, Identity, LinComb, Mult, Trace, Unit, Word,
                        chain, local, map_difference_witness, maps_equal, proportionality,
                        scalar_of)
from .polyring import EMPTY, realization
from .qarith import ONE, to_qrational
from .report import Report
from . import webs as W


@dataclass
class FunctorSpec:
    """Data of the functor for sl_n webs (n = 2 or 3).

    ``scalars`` maps a merge colouring (x0, x1, x2) to the factor applied to
    its raw image; split images are left unscaled.
    """

    n: int
    scalars: dict = field(default_factory=dict)

    def __post_init__(self):
        W._check_n(self.n)
        self.ring = realization(self.n)

    @property
    def rank(self):
        """Affine rank: 1 for sl_2, 2 for sl_3."""
        return self.n - 1

    def strand_colour(self, x, y):
        return self.ring.intersection(x, y)

    def word(self, web_word) -> Word:
        seq = [web_word[0]]
        for a, b in zip(web_word, web_word[1:]):
            seq += [self.strand_colour(a, b), b]
        return Word(self.ring, seq)

    def cyclic_types(self):
        """Merge colourings grouped by their cyclic order."""
        cols = W.SECONDARY[3]
        groups = {}
        for perm in itertools.permutations(cols):
            i = perm.index(cols[0])
            rot = perm[i:] + perm[:i]
            groups.setdefault(rot, []).append(perm)
        return groups


@lru_cache(maxsize=None)
def default_spec(n) -> FunctorSpec:
    spec = FunctorSpec(n)
    if n == 3:
        spec.scalars = calibrate_trivalent(spec)
    return spec


# ------------------------------------------------------- generator images


def _steps(word, moves):
    terms = []
    cur = word
    for pos, gen in moves:
        t = local(cur, pos, gen)
        terms.append(t)
        cur = t.target
    return chain(*terms)


def cup_image(spec, web_word, i, t):
    ring = spec.ring
    c = web_word[i]
    u = spec.strand_colour(c, t)
    return _steps(spec.word(web_word), [(2 * i, Unit(ring, u, c)), (2 * i + 1, Comult(ring, u, t))])


def cap_image(spec, web_word, i):
    ring = spec.ring
    c, t = web_word[i], web_word[i + 1]
    u = spec.strand_colour(c, t)
    return _steps(spec.word(web_word), [(2 * i + 1, Mult(ring, u, t)), (2 * i, Trace(ring, u, c))])


def merge_raw(spec, web_word, i):
    ring = spec.ring
    x0, x1, x2 = web_word[i:i + 3]
    s01, s12, s02 = (spec.strand_colour(x0, x1), spec.strand_colour(x1, x2),
                     spec.strand_colour(x0, x2))
    p = 2 * i
    return _steps(spec.word(web_word), [
        (p + 1, Unit(ring, EMPTY, s01)),
        (p + 2, Crossing(ring, s01, s12, x1)),
        (p + 3, Mult(ring, s12, x1)),
        (p + 2, Crossing(ring, s12, s02, x2)),
        (p, Crossing(ring, s01, s02, x0, True)),
        (p + 1, Trace(ring, EMPTY, s02)),
    ])


def split_raw(spec, web_word, i, t):
    ring = spec.ring
    x0, x2 = web_word[i:i + 2]
    x1 = t
    s01, s12, s02 = (spec.strand_colour(x0, x1), spec.strand_colour(x1, x2),
                     spec.strand_colour(x0, x2))
    p = 2 * i
    return _steps(spec.word(web_word), [
        (p + 1, Unit(ring, EMPTY, s02)),
        (p, Crossing(ring, s02, s01, x0, True)),
        (p + 2, Crossing(ring, s02, s12, x2)),
        (p + 3, Comult(ring, s12, x1)),
        (p + 2, Crossing(ring, s12, s01, x1)),
        (p + 1, Trace(ring, EMPTY, s01)),
    ])


def merge_image(spec, web_word, i):
    raw = merge_raw(spec, web_word, i)
    c = spec.scalars.get(tuple(web_word[i:i + 3]), ONE)
    return raw if c == ONE else raw * c


def step_image(spec, web_word, step):
    """Image of one plan layer acting on the web word."""
    kind = step[0]
    if kind == "cup":
        return cup_image(spec, web_word, step[1], step[2])
    if kind == "cap":
        return cap_image(spec, web_word, step[1])
    if kind == "merge":
        return merge_image(spec, web_word, step[1])
    if kind == "split":
        return split_raw(spec, web_word, step[1], step[2])
    raise ValueError(f"unknown step {step!r}")


def plan_image(spec, source, steps):
    word = tuple(source)
    terms = []
    for st in steps:
        terms.append(step_image(spec, word, st))
        word = W.apply_step(word, st)
    if not terms:
        return Identity(spec.word(source))
    return chain(*terms)


# ------------------------------------------------------------ calibration


def calibrate_trivalent(spec=None) -> dict:
    """Merge scalars making F(bigon) = -[2]·F(edge) at every colouring."""
    spec = spec or FunctorSpec(3)
    if spec.n != 3:
        raise ValueError("trivalent vertices exist only for sl_3")
    target = to_qrational(W.bigon_value())
    plain = FunctorSpec(3)
    out = {}
    for x0, x1, x2 in itertools.permutations(W.SECONDARY[3]):
        bigon = chain(split_raw(plain, (x0, x2), 0, x1), merge_raw(plain, (x0, x1, x2), 0))
        raw = scalar_of(bigon)
        if raw is None or raw.is_zero():
            raise ArithmeticError(f"no scalar calibrates the bigon at {x0}{x1}{x2}")
        out[(x0, x1, x2)] = target / raw
    return out


# ---------------------------------------------------------- functor image


_CLOSED_CACHE = {}


def _closed_scalar(spec, web):
    """Scalar by which a closed connected web acts on its region."""
    key = (spec.n, tuple(sorted(spec.scalars.items())), W._sphere_key(web))
    v = _CLOSED_CACHE.get(key)
    if v is None:
        (od,) = web.outer
        source, steps, _, _ = W.sweep(web, start_dart=od)
        v = scalar_of(plan_image(spec, source, steps))
        if v is None:
            raise ArithmeticError("closed web image is not a scalar")
        _CLOSED_CACHE[key] = v
    return v


def loop_scalar(spec, a, b):
    """Scalar of a free loop separating colours a and b (a circle of b in a)."""
    key = (spec.n, tuple(sorted(spec.scalars.items())), "loop", a, b)
    v = _CLOSED_CACHE.get(key)
    if v is None:
        v = scalar_of(plan_image(spec, (a,), [("cup", 0, b), ("cap", 0)]))
        _CLOSED_CACHE[key] = v
    return v


def web_image(web, spec=None):
    """(scalar, MorTerm) with F(web) = scalar · MorTerm."""
    spec = spec or default_spec(web.n)
    if web.n != spec.n:
        raise ValueError("web and functor are for different ranks")
    source, steps, loops, closed = W.sweep(web)
    c = to_qrational(1)
    for a, b in loops:
        c = c * loop_scalar(spec, a, b)
    for comp in closed:
        c = c * _closed_scalar(spec, comp)
    return c, plan_image(spec, source, steps)


def functor_image(x, spec=None):
    """F of a Web or WebCombo, as a MorTerm (a LinComb for sums)."""
    combo = W.as_combo(x)
    spec = spec or default_spec(combo.n)
    terms = []
    for coef, web in combo.items():
        c, t = web_image(web, spec)
        terms.append((to_qrational(coef) * c, t))
    if not terms:
        raise ValueError("the zero combination has no term representative")
    if len(terms) == 1 and terms[0][0] == ONE:
        return terms[0][1]
    return LinComb(tuple(terms))


def closed_scalar(web, spec=None):
    """F of a closed web as a scalar (via the bimodule side)."""
    if web.bottom or web.top:
        raise ValueError("closed_scalar needs a web without boundary points")
    spec = spec or default_spec(web.n)
    c, t = web_image(web, spec)
    s = scalar_of(t)
    return c * s


# ----------------------------------------------------------- verification


def _eq_check(rep, name, lhs, rhs):
    if lhs.degree != rhs.degree:
        return rep.add(name, False, f"degrees {lhs.degree} and {rhs.degree}")
    ok = maps_equal(lhs, rhs)
    return rep.add(name, ok, None if ok else map_difference_witness(lhs, rhs))


def _scalar_check(rep, name, term, expected):
    got = scalar_of(term)
    want = to_qrational(expected)
    return rep.add(name, got == want, f"got {got}, expected {want}")


def verify_functor(n, seed=0, samples=4) -> Report:
    """Transport every web relation through F and compare on the bimodule side."""
    spec = default_spec(n)
    rep = Report(f"functor-sl{n}", seed)
    cols = W.SECONDARY[n]
    pairs = [(a, b) for a in cols for b in cols if a != b]
    for s, t in pairs:
        _scalar_check(rep, f"circle {t} in {s}",
                      plan_image(spec, (s,), [("cup", 0, t), ("cap", 0)]), W.circle_value(n))
    for s, t in pairs:
        word = (s, t, s)
        zig = plan_image(spec, (s, t), [("cup", 0, t), ("cap", 1)])
        _eq_check(rep, f"zigzag {s}{t} left", zig, Identity(spec.word((s, t))))
        zag = plan_image(spec, (t, s), [("cup", 1, t), ("cap", 0)])
        _eq_check(rep, f"zigzag {t}{s} right", zag, Identity(spec.word((t, s))))
        rep.add(f"degree cup {s}|{t}", cup_image(spec, (s,), 0, t).degree == 0)
        rep.add(f"degree cap {s}|{t}", cap_image(spec, word, 0).degree == 0)
    if n == 3:
        for x0, x1, x2 in itertools.permutations(cols):
            m = merge_image(spec, (x0, x1, x2), 0)
            sp = split_raw(spec, (x0, x2), 0, x1)
            rep.add(f"degree merge {x0}{x1}{x2}", m.degree == 0, f"degree {m.degree}")
            rep.add(f"degree split {x0}{x1}{x2}", sp.degree == 0, f"degree {sp.degree}")
            _eq_check(rep, f"bigon {x0}{x1}{x2}", chain(sp, m),
                      Identity(spec.word((x0, x2))) * W.bigon_value())
        for x0, x1, x2 in itertools.permutations(cols):
            # merges at both rotations equal split-then-cap composites
            lhs = merge_image(spec, (x0, x2, x1), 0)
            rhs = plan_image(spec, (x0, x2, x1), [("split", 0, x1), ("cap", 1)])
            _eq_check(rep, f"rotation left {x0}{x2}{x1}", lhs, rhs)
            lhs = merge_image(spec, (x1, x0, x2), 0)
            rhs = plan_image(spec, (x1, x0, x2), [("split", 1, x1), ("cap", 0)])
            _eq_check(rep, f"rotation right {x1}{x0}{x2}", lhs, rhs)
        for a, b, c in itertools.permutations(cols):
            lhs = plan_image(spec, (a, b, a), [("split", 0, c), ("merge", 1),
                                               ("split", 0, b), ("merge", 1)])
            rhs = Identity(spec.word((a, b, a))) + plan_image(spec, (a, b, a),
                                                              [("cap", 0), ("cup", 0, b)])
            _eq_check(rep, f"square {a}{b}{a} via {c}", lhs, rhs)
        for rot, members in spec.cyclic_types().items():
            vals = {spec.scalars[m] for m in members}
            rep.add(f"calibration constant on type {''.join(rot)}", len(vals) == 1,
                    f"scalars {sorted(map(str, vals))}")
    rng = random.Random(seed)
    for k in range(samples):
        ok, witness = functoriality_sample(n, rng, spec)
        rep.add(f"functoriality sample {k}", ok, witness)
    return rep


def functoriality_sample(n, rng, spec=None, width=3, length=3):
    """Compare F(b ∘ a) with F(b) ∘ F(a) on a random composable pair."""
    spec = spec or default_spec(n)
    cols = W.SECONDARY[n]
    src = [rng.choice(cols)]
    while len(src) < rng.randint(1, width):
        src.append(rng.choice([c for c in cols if c != src[-1]]))
    source, steps1 = W.random_plan(n, rng, tuple(src), length=length, max_width=3)
    mid = W.plan_target(source, steps1)
    _, steps2 = W.random_plan(n, rng, mid, length=length, max_width=3)
    a = W.plan_to_web(n, source, steps1)
    b = W.plan_to_web(n, mid, steps2)
    whole = functor_image(W.compose(b, a), spec)
    parts = chain(functor_image(a, spec), functor_image(b, spec))
    if whole.degree != parts.degree:
        return False, f"degrees {whole.degree} and {parts.degree}"
    ok = maps_equal(whole, parts)
    return ok, None if ok else map_difference_witness(whole, parts)


def images_proportional(t1, t2):
    return proportionality(t1, t2)
