"""Region-coloured webs for sl_2 (crossingless matchings) and sl_3 (trivalent).

A web is a combinatorial map on a disk. Darts carry an edge involution
``alpha``, a home node (a boundary point or an internal trivalent vertex),
and the colour of the region on their left. Boundary points are numbered
counter-clockwise: bottom points left to right, then top points right to
left. Vertices list their darts counter-clockwise.

The successor of a dart d in its face is the dart before alpha(d) in the
rotation at the far end; at a boundary point the walk follows the wall to
the next point counter-clockwise. Isotopy therefore never needs rewriting.

Closed components (no boundary point) are kept until reduction, each with
an "outer" dart whose left face is the face it sits in. Free loops carry no
darts and are stored only as the sorted pair of colours they separate: a loop
evaluates to the circle value whichever side is inside, so neither its
placement nor its orientation is kept.
"""

from __future__ import annotations

import json
import random
from collections import deque
from functools import lru_cache

from .qarith import QLaurent, parse_laurent, quantum_int

SECONDARY = {2: ("r", "b"), 3: ("o", "g", "p")}


def circle_value(n):
    return quantum_int(3) if n == 3 else -quantum_int(2)


def bigon_value():
    return -quantum_int(2)


def _loop(a, b):
    return (a, b) if a <= b else (b, a)


def _check_n(n):
    if n not in SECONDARY:
        raise ValueError(f"webs exist here for n = 2 or 3, not {n}")


def _check_word(n, word):
    word = tuple(word)
    if not word:
        raise ValueError("an object word needs at least one colour")
    for c in word:
        if c not in SECONDARY[n]:
            raise ValueError(f"{c!r} is not a region colour for sl_{n}")
    for a, b in zip(word, word[1:]):
        if a == b:
            raise ValueError(f"neighbouring regions share the colour {a!r}")
    return word


class Web:
    """Immutable region-coloured web between two object words."""

    __slots__ = ("n", "source", "target", "alpha", "left", "home", "verts",
                 "bottom", "top", "loops", "outer", "_key")

    def __init__(self, n, source, target, alpha, left, home, verts, bottom, top,
                 loops=(), outer=(), validate=True):
        _check_n(n)
        self.n = n
        self.source = _check_word(n, source)
        self.target = _check_word(n, target)
        self.alpha = tuple(alpha)
        self.left = tuple(left)
        self.home = tuple(home)
        self.verts = tuple(tuple(v) for v in verts)
        self.bottom = tuple(bottom)
        self.top = tuple(top)
        self.loops = tuple(sorted(_loop(*x) for x in loops))
        self.outer = frozenset(outer)
        self._key = None
        if validate:
            self.validate()

    # ------------------------------------------------------------ geometry

    @property
    def ndarts(self):
        return len(self.alpha)

    @property
    def npoints(self):
        return len(self.bottom) + len(self.top)

    def ccw_index(self, home):
        kind, i = home[0], home[1]
        if kind == "b":
            return i
        return len(self.bottom) + len(self.top) - 1 - i

    def point_dart(self, g):
        """Dart at the boundary point with counter-clockwise index g."""
        kb = len(self.bottom)
        if g < kb:
            return self.bottom[g]
        return self.top[len(self.top) - 1 - (g - kb)]

    def segment_colour(self, g):
        """Colour of the wall segment after counter-clockwise point g."""
        kb, kt = len(self.bottom), len(self.top)
        if g < kb:
            return self.source[g + 1]
        j = kt - 1 - (g - kb)
        return self.target[j]

    def next_ccw(self, d):
        h = self.home[d]
        rot = self.verts[h[1]]
        return rot[(h[2] + 1) % 3]

    def prev_ccw(self, d):
        h = self.home[d]
        rot = self.verts[h[1]]
        return rot[(h[2] - 1) % 3]

    def step(self, d):
        """(successor of d in its face, wall segment crossed or None)."""
        e = self.alpha[d]
        h = self.home[e]
        if h[0] == "v":
            return self.prev_ccw(e), None
        g = self.ccw_index(h)
        return self.point_dart((g + 1) % self.npoints), g

    def face_orbits(self):
        """List of (darts, crossed wall segments) for every face walk."""
        seen = set()
        out = []
        for d0 in range(self.ndarts):
            if d0 in seen:
                continue
            darts, walls = [], []
            d = d0
            while d not in seen:
                seen.add(d)
                darts.append(d)
                d, g = self.step(d)
                if g is not None:
                    walls.append(g)
            out.append((tuple(darts), tuple(walls)))
        return out

    def components(self):
        """Connected components as sets of darts."""
        seen = set()
        comps = []
        for d0 in range(self.ndarts):
            if d0 in seen:
                continue
            comp = set()
            stack = [d0]
            while stack:
                d = stack.pop()
                if d in comp:
                    continue
                comp.add(d)
                stack.append(self.alpha[d])
                h = self.home[d]
                if h[0] == "v":
                    stack.extend(self.verts[h[1]])
            seen |= comp
            comps.append(comp)
        return comps

    def closed_components(self):
        return [c for c in self.components() if all(self.home[d][0] == "v" for d in c)]

    # ---------------------------------------------------------- validation

    def validate(self):
        D = self.ndarts
        if len(self.left) != D or len(self.home) != D:
            raise ValueError("dart tables have inconsistent lengths")
        if len(self.source) != len(self.bottom) + 1 or len(self.target) != len(self.top) + 1:
            raise ValueError("boundary words do not match the boundary points")
        if self.source[0] != self.target[0] or self.source[-1] != self.target[-1]:
            raise ValueError("source and target must share their outer regions")
        colours = set(SECONDARY[self.n])
        for d in range(D):
            a = self.alpha[d]
            if not (0 <= a < D) or a == d or self.alpha[a] != d:
                raise ValueError(f"edge involution broken at dart {d}")
            if self.left[d] not in colours:
                raise ValueError(f"dart {d} has an invalid colour {self.left[d]!r}")
            if self.left[d] == self.left[a]:
                raise ValueError(f"edge {d}-{a} has the same colour on both sides")
        for i, d in enumerate(self.bottom):
            if self.home[d] != ("b", i):
                raise ValueError("bottom boundary table is inconsistent")
        for j, d in enumerate(self.top):
            if self.home[d] != ("t", j):
                raise ValueError("top boundary table is inconsistent")
        if self.n == 2 and self.verts:
            raise ValueError("sl_2 webs have no vertices")
        for k, rot in enumerate(self.verts):
            if len(rot) != 3:
                raise ValueError("internal vertices are trivalent")
            for pos, d in enumerate(rot):
                if self.home[d] != ("v", k, pos):
                    raise ValueError("rotation table is inconsistent")
            if len({self.left[d] for d in rot}) != 3:
                raise ValueError(f"vertex {k} needs three distinct region colours")
        for darts, walls in self.face_orbits():
            cols = {self.left[d] for d in darts}
            cols |= {self.segment_colour(g) for g in walls}
            if len(cols) != 1:
                raise ValueError(f"face through darts {darts} is inconsistently coloured")
        closed = self.closed_components()
        for comp in closed:
            if len(comp & self.outer) != 1:
                raise ValueError("every closed component needs exactly one outer dart")
        if len(self.outer) != len(closed):
            raise ValueError("outer darts must lie on closed components")
        for a, b in self.loops:
            if a == b or a not in colours or b not in colours:
                raise ValueError(f"invalid loop colours {(a, b)}")

    # ---------------------------------------------------------- canonical

    def _encode(self, roots):
        label = {}
        order = []
        queue = deque()

        def see(d):
            if d not in label:
                label[d] = len(order)
                order.append(d)
                queue.append(d)

        for r in roots:
            see(r)
        while queue:
            d = queue.popleft()
            see(self.alpha[d])
            if self.home[d][0] == "v":
                nxt = self.next_ccw(d)
                see(nxt)
                see(self.next_ccw(nxt))
        out = []
        for d in order:
            h = self.home[d]
            if h[0] == "v":
                out.append(("v", label[self.alpha[d]], label[self.next_ccw(d)], self.left[d]))
            else:
                out.append((h[0] + str(h[1]), label[self.alpha[d]], -1, self.left[d]))
        return tuple(out), label

    def _component_code(self, comp, roots):
        return min(self._encode([r])[0] for r in roots if r in comp)

    def canonical_key(self):
        if self._key is None:
            main, _ = self._encode(list(self.bottom) + list(self.top))
            closed = []
            for comp in self.closed_components():
                (od,) = comp & self.outer
                face = _face_of(self, od)
                closed.append(self._component_code(comp, face))
            self._key = (self.n, self.source, self.target, main, tuple(sorted(closed)), self.loops)
        return self._key

    def __eq__(self, other):
        return isinstance(other, Web) and self.canonical_key() == other.canonical_key()

    def __hash__(self):
        return hash(self.canonical_key())

    def __repr__(self):
        return (f"Web(n={self.n}, {''.join(self.source)}->{''.join(self.target)}, "
                f"{len(self.verts)} vertices, {len(self.loops)} loops)")

    # ------------------------------------------------------------- JSON

    def to_dict(self):
        verts = {f"v{k}": list(rot) for k, rot in enumerate(self.verts)}
        return {
            "n": self.n,
            "source": list(self.source),
            "target": list(self.target),
            "vertices": sorted(verts),
            "edges": sorted([d, self.alpha[d]] for d in range(self.ndarts) if d < self.alpha[d]),
            "rotations": verts,
            "regions": {str(d): self.left[d] for d in range(self.ndarts)},
            "boundary": {"bottom": list(self.bottom), "top": list(self.top)},
            "loops": [list(x) for x in self.loops],
            "outer": sorted(self.outer),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), ensure_ascii=False)

    @classmethod
    def from_dict(cls, data):
        n = int(data["n"])
        edges = data.get("edges", [])
        D = 2 * len(edges)
        alpha = [None] * D
        for a, b in edges:
            if not (0 <= a < D and 0 <= b < D):
                raise ValueError("half-edge ids must be 0 .. 2*#edges - 1")
            alpha[a], alpha[b] = b, a
        if any(x is None for x in alpha):
            raise ValueError("every half-edge must lie on exactly one edge")
        home = [None] * D
        bd = data.get("boundary", {})
        bottom = list(bd.get("bottom", []))
        top = list(bd.get("top", []))
        for i, d in enumerate(bottom):
            home[d] = ("b", i)
        for j, d in enumerate(top):
            home[d] = ("t", j)
        names = list(data.get("vertices", []))
        rots = data.get("rotations", {})
        verts = []
        for k, name in enumerate(names):
            rot = list(rots[name])
            for pos, d in enumerate(rot):
                if home[d] is not None:
                    raise ValueError(f"half-edge {d} has two homes")
                home[d] = ("v", k, pos)
            verts.append(rot)
        if any(h is None for h in home):
            raise ValueError("every half-edge needs a home")
        regions = data["regions"]
        left = [regions[str(d)] for d in range(D)]
        return cls(n, data["source"], data["target"], alpha, left, home, verts, bottom, top,
                   data.get("loops", ()), data.get("outer", ()))

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def _face_of(web, d):
    """Darts of the face on the left of d."""
    out = []
    e = d
    while True:
        out.append(e)
        e, _ = web.step(e)
        if e == d:
            return out


# ------------------------------------------------------------- generators


def identity(n, word):
    word = _check_word(n, word)
    k = len(word) - 1
    alpha, left, home = [], [], []
    bottom, top = [], []
    for i in range(k):
        b, t = 2 * i, 2 * i + 1
        alpha += [t, b]
        left += [word[i], word[i + 1]]
        home += [("b", i), ("t", i)]
        bottom.append(b)
        top.append(t)
    return Web(n, word, word, alpha, left, home, (), bottom, top)


def cup(n, s, t):
    """[s] -> [s, t, s]."""
    # darts: 0 = top 0, 1 = top 1
    return Web(n, (s,), (s, t, s), [1, 0], [t, s], [("t", 0), ("t", 1)], (), (), (0, 1))


def cap(n, s, t):
    """[s, t, s] -> [s]."""
    return Web(n, (s, t, s), (s,), [1, 0], [s, t], [("b", 0), ("b", 1)], (), (0, 1), ())


def merge(x0, x1, x2):
    """sl_3 trivalent vertex [x0, x1, x2] -> [x0, x2]."""
    # 0 hb0, 1 hb1, 2 ht0, 3 d_out, 4 d_l, 5 d_r
    alpha = [4, 5, 3, 2, 0, 1]
    left = [x0, x1, x2, x0, x1, x2]
    home = [("b", 0), ("b", 1), ("t", 0), ("v", 0, 0), ("v", 0, 1), ("v", 0, 2)]
    return Web(3, (x0, x1, x2), (x0, x2), alpha, left, home, [(3, 4, 5)], (0, 1), (2,))


def split(x0, x1, x2):
    """sl_3 trivalent vertex [x0, x2] -> [x0, x1, x2]."""
    # 0 hb0, 1 ht0, 2 ht1, 3 d_down, 4 d_ur, 5 d_ul
    alpha = [3, 5, 4, 0, 2, 1]
    left = [x0, x1, x2, x2, x1, x0]
    home = [("b", 0), ("t", 0), ("t", 1), ("v", 0, 0), ("v", 0, 1), ("v", 0, 2)]
    return Web(3, (x0, x2), (x0, x1, x2), alpha, left, home, [(3, 4, 5)], (0,), (1, 2))


def trivalent(x0, x1, x2):
    """sl_3 vertex with three legs on the bottom: [x0, x1, x2, x0] -> [x0]."""
    return compose(cap(3, x0, x2), tensor(merge(x0, x1, x2), identity(3, (x2, x0))))


def generators(kind, colours, n=3):
    """Elementary web by name: cup/cap (s, t), merge/split/trivalent (x0, x1, x2),
    identity (word)."""
    colours = tuple(colours)
    if kind == "identity":
        return identity(n, colours)
    if kind in ("cup", "cap"):
        if len(colours) != 2 or colours[0] == colours[1]:
            raise ValueError(f"{kind} needs two distinct colours")
        for c in colours:
            if c not in SECONDARY[n]:
                raise ValueError(f"{c!r} is not a region colour for sl_{n}")
        return (cup if kind == "cup" else cap)(n, *colours)
    if kind in ("merge", "split", "trivalent"):
        if n != 3:
            raise ValueError("trivalent vertices exist only for sl_3")
        if len(colours) != 3 or len(set(colours)) != 3 or not set(colours) <= set(SECONDARY[3]):
            raise ValueError("a trivalent vertex needs three distinct secondary colours")
        return {"merge": merge, "split": split, "trivalent": trivalent}[kind](*colours)
    raise ValueError(f"unknown generator kind {kind!r}")


# ------------------------------------------------------ tensor and compose


def _shift_home(h, db, dt, dv):
    if h[0] == "b":
        return ("b", h[1] + db)
    if h[0] == "t":
        return ("t", h[1] + dt)
    return ("v", h[1] + dv, h[2])


def tensor(a: Web, b: Web) -> Web:
    """Place b to the right of a."""
    if a.n != b.n:
        raise ValueError("cannot tensor webs of different rank")
    if a.source[-1] != b.source[0] or a.target[-1] != b.target[0]:
        raise ValueError("adjacent boundary colours do not agree")
    D = a.ndarts
    alpha = list(a.alpha) + [x + D for x in b.alpha]
    left = list(a.left) + list(b.left)
    home = list(a.home) + [_shift_home(h, len(a.bottom), len(a.top), len(a.verts)) for h in b.home]
    verts = list(a.verts) + [tuple(d + D for d in rot) for rot in b.verts]
    bottom = list(a.bottom) + [d + D for d in b.bottom]
    top = list(a.top) + [d + D for d in b.top]
    return Web(a.n, a.source + b.source[1:], a.target + b.target[1:], alpha, left, home, verts,
               bottom, top, a.loops + b.loops, set(a.outer) | {d + D for d in b.outer})


def compose(top: Web, bottom: Web) -> Web:
    """top ∘ bottom: glue bottom's top boundary to top's bottom boundary."""
    lo, hi = bottom, top
    if lo.n != hi.n:
        raise ValueError("cannot compose webs of different rank")
    if lo.target != hi.source:
        raise ValueError(f"boundary mismatch: {''.join(lo.target)} vs {''.join(hi.source)}")
    mid = lo.target
    # global dart ids: lo darts are 0..D-1, hi darts are D..
    D = lo.ndarts
    glue = {}
    for j in range(len(lo.top)):
        u, v = lo.top[j], hi.bottom[j] + D
        glue[u] = (v, j)
        glue[v] = (u, j)

    def alpha(x):
        return lo.alpha[x] if x < D else hi.alpha[x - D] + D

    keep = [x for x in range(D + hi.ndarts) if x not in glue]
    new_id = {x: i for i, x in enumerate(keep)}
    new_alpha = [None] * len(keep)
    below = {}  # glue point -> dart heading up into it from the lower web
    above = {}  # glue point -> dart heading down into it from the upper web
    for x in keep:
        p = alpha(x)
        first = True
        while p in glue:
            q, j = glue[p]
            if first:
                (below if x < D else above)[j] = x
                first = False
            p = alpha(q)
        new_alpha[new_id[x]] = new_id[p]
    # leftover glue cycles are free loops
    loops = list(lo.loops) + list(hi.loops)
    done = set()
    for j in range(len(lo.top)):
        if j in done:
            continue
        u = lo.top[j]
        if lo.alpha[u] not in glue:
            continue
        cycle = []
        p = u
        ok = True
        while True:
            if p not in glue:
                ok = False
                break
            q, jj = glue[p]
            cycle.append(jj)
            p = alpha(q)
            if p not in glue:
                ok = False
                break
            q2, jj2 = glue[p]
            cycle.append(jj2)
            p = alpha(q2)
            if p == u:
                break
        if not ok:
            continue
        done.update(cycle)
        jmin = min(cycle)
        loops.append((mid[jmin], mid[jmin + 1]))
    left = [None] * len(keep)
    home = [None] * len(keep)
    for x in keep:
        i = new_id[x]
        if x < D:
            left[i] = lo.left[x]
            h = lo.home[x]
            home[i] = h if h[0] != "t" else None
        else:
            left[i] = hi.left[x - D]
            h = hi.home[x - D]
            home[i] = h if h[0] != "b" else None
            if h[0] == "v":
                home[i] = ("v", h[1] + len(lo.verts), h[2])
    verts = [tuple(new_id[d] for d in rot) for rot in lo.verts]
    verts += [tuple(new_id[d + D] for d in rot) for rot in hi.verts]
    bottom = [new_id[d] for d in lo.bottom]
    top = [new_id[d + D] for d in hi.top]
    outer = {new_id[d] for d in lo.outer} | {new_id[d + D] for d in hi.outer}
    web = Web(lo.n, lo.source, hi.target, new_alpha, left, home, verts, bottom, top,
              loops, (), validate=False)
    # components closed off by the gluing get an outer dart from their
    # leftmost crossing of the glue line
    for comp in web.closed_components():
        if comp & outer:
            continue
        crossings = []
        for j, x in below.items():
            if new_id[x] in comp:
                crossings.append((j, 0, new_id[x]))
        for j, y in above.items():
            if new_id[y] in comp:
                crossings.append((j, 1, new_alpha[new_id[y]]))
        crossings.sort()
        outer.add(crossings[0][2])
    return Web(lo.n, lo.source, hi.target, new_alpha, left, home, verts, bottom, top,
               loops, outer)


def _splice(web: Web, removed_verts, joins, keep_outer=True):
    """Delete vertices and reconnect their legs pairwise through `joins`.

    Returns the new web; leg cycles that close up become free loops.
    """
    removed = set()
    for k in removed_verts:
        removed.update(web.verts[k])
    jump = {}
    for a, b in joins:
        jump[a], jump[b] = b, a
    keep = [d for d in range(web.ndarts) if d not in removed]
    new_id = {d: i for i, d in enumerate(keep)}
    new_alpha = [None] * len(keep)
    for d in keep:
        p = web.alpha[d]
        while p in removed:
            p = web.alpha[jump[p]]
        new_alpha[new_id[d]] = new_id[p]
    loops = list(web.loops)
    seen = set()
    for a in jump:
        if a in seen:
            continue
        # walk leg -> jump -> alpha -> ... ; a cycle avoiding kept darts is a loop
        cyc = []
        p = a
        closed = True
        while True:
            cyc.append(p)
            q = jump.get(p)
            if q is None:
                closed = False
                break
            cyc.append(q)
            p = web.alpha[q]
            if p not in jump:
                closed = False
                break
            if p == a:
                break
        if closed:
            seen.update(cyc)
            loops.append(_loop(web.left[a], web.left[web.alpha[a]]))
    vmap = {}
    verts = []
    for k, rot in enumerate(web.verts):
        if k in removed_verts:
            continue
        vmap[k] = len(verts)
        verts.append(tuple(new_id[d] for d in rot))
    home = []
    for d in keep:
        h = web.home[d]
        home.append(("v", vmap[h[1]], h[2]) if h[0] == "v" else h)
    left = [web.left[d] for d in keep]
    outer = {new_id[d] for d in web.outer if d in new_id}
    out = Web(web.n, web.source, web.target, new_alpha, left, home, verts,
              [new_id[d] for d in web.bottom], [new_id[d] for d in web.top], loops, (),
              validate=False)
    comps = out.closed_components()
    fixed = set()
    for comp in comps:
        hit = comp & outer
        fixed.add(min(hit) if hit else min(comp))
    return Web(out.n, out.source, out.target, out.alpha, out.left, out.home, out.verts,
               out.bottom, out.top, out.loops, fixed)


# ----------------------------------------------------------------- faces


def faces(web: Web):
    """Internal faces as (darts, side count); each free loop adds a 0-sided face.

    The face holding a closed component's outer dart is not internal.
    """
    out = []
    outer_faces = set()
    for d in web.outer:
        outer_faces.add(frozenset(_face_of(web, d)))
    for darts, walls in web.face_orbits():
        if walls or frozenset(darts) in outer_faces:
            continue
        out.append((darts, len(darts)))
    out.extend(((), 0) for _ in web.loops)
    return out


def is_nonelliptic(web: Web) -> bool:
    if web.loops or web.closed_components():
        return False
    return all(k > 4 for _, k in faces(web))


# ------------------------------------------------------------- rewriting


def _face_vertices(web, darts):
    vs = [web.home[d] for d in darts]
    if any(h[0] != "v" for h in vs):
        return None
    ks = [h[1] for h in vs]
    if len(set(ks)) != len(ks):
        return None
    legs = []
    for d in darts:
        # the face enters the vertex along next_ccw(d) and leaves along d
        legs.append(web.prev_ccw(d))
    return ks, legs


def rewrite_face(web, darts):
    """Apply the bigon or square relation to an internal face.

    Returns a list of (coefficient, web).
    """
    fv = _face_vertices(web, darts)
    if fv is None:
        raise ValueError("face does not bound distinct trivalent vertices")
    ks, legs = fv
    if len(darts) == 2:
        return [(bigon_value(), _splice(web, ks, [(legs[0], legs[1])]))]
    if len(darts) == 4:
        one = QLaurent.const(1)
        a = _splice(web, ks, [(legs[0], legs[1]), (legs[2], legs[3])])
        b = _splice(web, ks, [(legs[1], legs[2]), (legs[3], legs[0])])
        return [(one, a), (one, b)]
    raise ValueError(f"no relation for a {len(darts)}-sided face")


def _extract_closed(web):
    """Split off loops and closed components: (scalar, web without them)."""
    scalar = circle_value(web.n) ** len(web.loops) if web.loops else QLaurent.const(1)
    comps = web.closed_components()
    if not comps:
        if web.loops:
            web = Web(web.n, web.source, web.target, web.alpha, web.left, web.home, web.verts,
                      web.bottom, web.top, (), web.outer, validate=False)
        return scalar, web
    removed = set()
    for comp in comps:
        scalar = scalar * _closed_value(_component_web(web, comp))
        removed |= {web.home[d][1] for d in comp}
    rest = _splice(web, removed, [])
    rest = Web(rest.n, rest.source, rest.target, rest.alpha, rest.left, rest.home, rest.verts,
               rest.bottom, rest.top, (), (), validate=False)
    return scalar, rest


def _component_web(web, comp):
    """A closed component as a web of its own (boundary-free)."""
    ks = sorted({web.home[d][1] for d in comp})
    keep = sorted(comp)
    nid = {d: i for i, d in enumerate(keep)}
    vmap = {k: i for i, k in enumerate(ks)}
    alpha = [nid[web.alpha[d]] for d in keep]
    home = [("v", vmap[web.home[d][1]], web.home[d][2]) for d in keep]
    verts = [tuple(nid[d] for d in web.verts[k]) for k in ks]
    left = [web.left[d] for d in keep]
    hit = comp & web.outer
    od = nid[min(hit)] if hit else 0
    c = left[od]
    return Web(web.n, (c,), (c,), alpha, left, home, verts, (), (), (), {od}, validate=False)


_CLOSED_MEMO = {}


def _sphere_key(web):
    return min(web._encode([r])[0] for r in range(web.ndarts))


def _closed_value(web):
    """Value of a connected closed web (evaluated on the sphere)."""
    key = (web.n, _sphere_key(web))
    v = _CLOSED_MEMO.get(key)
    if v is not None:
        return v
    orbits = sorted(web.face_orbits(), key=lambda o: (len(o[0]), min(o[0])))
    total = QLaurent.const(0)
    for darts, _ in orbits:
        if len(darts) > 4:
            raise ArithmeticError("closed web without a face of at most four sides")
        if _face_vertices(web, darts) is None:
            continue
        for c, w in rewrite_face(web, darts):
            s, rest = _extract_closed(w)
            total = total + c * s * _evaluate_rest(rest)
        break
    else:
        raise ArithmeticError("no reducible face in a closed web")
    _CLOSED_MEMO[key] = total
    return total


def _evaluate_rest(web):
    if web.ndarts:
        raise ArithmeticError("closed evaluation left boundary darts behind")
    return QLaurent.const(1)


def evaluate_closed(web: Web) -> QLaurent:
    """Scalar of a web with no boundary points; the empty web gives 1."""
    if web.bottom or web.top:
        raise ValueError("evaluate_closed needs a web without boundary points")
    s, rest = _extract_closed(web)
    return s * _evaluate_rest(rest)


def _reduce_web(web, strategy="smallest", rng=None):
    """Full reduction of one web to a dict key -> (coef, web)."""
    out = {}
    stack = [(QLaurent.const(1), web)]
    while stack:
        c, w = stack.pop()
        s, w = _extract_closed(w)
        c = c * s
        if not c:
            continue
        cand = [(len(d), d) for d, k in faces(w) if k in (2, 4) and _face_vertices(w, d) is not None]
        if not cand:
            k = w.canonical_key()
            old = out.get(k)
            v = c if old is None else old[0] + c
            if v:
                out[k] = (v, w)
            else:
                out.pop(k, None)
            continue
        if strategy == "random":
            _, darts = rng.choice(cand)
        else:
            _, darts = min(cand, key=lambda t: (t[0], min(t[1])))
        for c2, w2 in rewrite_face(w, darts):
            stack.append((c * c2, w2))
    return out


# ------------------------------------------------------------ WebCombo


class WebCombo:
    """Finite Q[q, q^-1]-linear combination of webs with common boundary."""

    __slots__ = ("n", "source", "target", "terms")

    def __init__(self, n, source, target, terms=None):
        self.n = n
        self.source = tuple(source)
        self.target = tuple(target)
        self.terms = {}
        for k, (c, w) in (terms or {}).items():
            if c:
                self.terms[k] = (c, w)

    @classmethod
    def from_web(cls, web, coef=1):
        c = coef if isinstance(coef, QLaurent) else QLaurent.const(coef)
        return cls(web.n, web.source, web.target, {web.canonical_key(): (c, web)})

    def _check(self, other):
        if (self.n, self.source, self.target) != (other.n, other.source, other.target):
            raise ValueError("combinations have different boundaries")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for k, (c, w) in other.terms.items():
            if k in t:
                v = t[k][0] + c
                if v:
                    t[k] = (v, w)
                else:
                    del t[k]
            else:
                t[k] = (c, w)
        return WebCombo(self.n, self.source, self.target, t)

    def scale(self, c):
        c = c if isinstance(c, QLaurent) else QLaurent.const(c)
        return WebCombo(self.n, self.source, self.target,
                        {k: (v * c, w) for k, (v, w) in self.terms.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, WebCombo):
            return NotImplemented
        return ((self.n, self.source, self.target) == (other.n, other.source, other.target)
                and {k: c for k, (c, _) in self.terms.items()}
                == {k: c for k, (c, _) in other.terms.items()})

    def __hash__(self):
        return hash((self.n, self.source, self.target, frozenset((k, c) for k, (c, _) in self.terms.items())))

    def __len__(self):
        return len(self.terms)

    def items(self):
        """(coefficient, web) pairs in a stable order."""
        return [self.terms[k][::1] for k in sorted(self.terms, key=repr)]

    def is_zero(self):
        return not self.terms

    def compose(self, bottom):
        return compose_combo(self, bottom)

    def reduce(self, strategy="smallest", seed=0):
        return reduce(self, strategy, seed)

    def to_dict(self):
        return {
            "n": self.n,
            "source": list(self.source),
            "target": list(self.target),
            "terms": [{"coef": str(c), "web": w.to_dict()} for c, w in self.items()],
        }

    def to_text(self):
        return json.dumps(self.to_dict(), ensure_ascii=False, sort_keys=True)

    @classmethod
    def from_dict(cls, data):
        if "terms" not in data:
            return cls.from_web(Web.from_dict(data))
        out = cls(int(data["n"]), data["source"], data["target"])
        for t in data["terms"]:
            out = out + cls.from_web(Web.from_dict(t["web"]), parse_laurent(t["coef"]))
        return out

    def __repr__(self):
        return f"WebCombo({''.join(self.source)}->{''.join(self.target)}, {len(self.terms)} terms)"

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{w!r}" for c, w in self.items())


def as_combo(x) -> WebCombo:
    return x if isinstance(x, WebCombo) else WebCombo.from_web(x)


def compose_combo(top, bottom) -> WebCombo:
    top, bottom = as_combo(top), as_combo(bottom)
    out = WebCombo(top.n, bottom.source, top.target)
    if top.source != bottom.target:
        raise ValueError("boundary mismatch")
    for c1, w1 in top.items():
        for c2, w2 in bottom.items():
            out = out + WebCombo.from_web(compose(w1, w2), c1 * c2)
    return out


def tensor_combo(left, right) -> WebCombo:
    left, right = as_combo(left), as_combo(right)
    out = WebCombo(left.n, left.source + right.source[1:], left.target + right.target[1:])
    for c1, w1 in left.items():
        for c2, w2 in right.items():
            out = out + WebCombo.from_web(tensor(w1, w2), c1 * c2)
    return out


def reduce(x, strategy="smallest", seed=0) -> WebCombo:
    """Rewrite to a combination of non-elliptic webs (linear in x)."""
    x = as_combo(x)
    if strategy not in ("smallest", "random"):
        raise ValueError(f"unknown strategy {strategy!r}")
    rng = random.Random(seed)
    out = WebCombo(x.n, x.source, x.target)
    for c, w in x.items():
        for k, (c2, w2) in _reduce_web(w, strategy, rng).items():
            out = out + WebCombo.from_web(w2, c * c2)
    return out


# ---------------------------------------------------------------- plans
#
# A plan is a source word and a list of layers applied bottom to top:
#   ("cup", i, t)    w[i]                 -> w[i], t, w[i]
#   ("cap", i)       w[i], w[i+1], w[i]   -> w[i]
#   ("merge", i)     w[i], w[i+1], w[i+2] -> w[i], w[i+2]   (sl_3)
#   ("split", i, t)  w[i], w[i+1]         -> w[i], t, w[i+1] (sl_3)


def apply_step(word, step):
    word = tuple(word)
    kind, i = step[0], step[1]
    if kind == "cup":
        t = step[2]
        if t == word[i]:
            raise ValueError("cup colour must differ from the region it sits in")
        return word[:i + 1] + (t, word[i]) + word[i + 1:]
    if kind == "cap":
        if word[i] != word[i + 2]:
            raise ValueError("cap needs equal outer colours")
        return word[:i + 1] + word[i + 3:]
    if kind == "merge":
        if len(set(word[i:i + 3])) != 3:
            raise ValueError("merge needs three distinct colours")
        return word[:i + 1] + word[i + 2:]
    if kind == "split":
        t = step[2]
        if t in word[i:i + 2]:
            raise ValueError("split needs a third colour")
        return word[:i + 1] + (t,) + word[i + 1:]
    raise ValueError(f"unknown step {step!r}")


def step_web(n, word, step):
    """The layer web of a plan step acting on `word`."""
    word = tuple(word)
    kind, i = step[0], step[1]
    if kind == "cup":
        gen, width = cup(n, word[i], step[2]), 1
    elif kind == "cap":
        gen, width = cap(n, word[i], word[i + 1]), 3
    elif kind == "merge":
        gen, width = merge(*word[i:i + 3]), 3
    elif kind == "split":
        gen, width = split(word[i], step[2], word[i + 1]), 2
    else:
        raise ValueError(f"unknown step {step!r}")
    out = gen
    if i > 0:
        out = tensor(identity(n, word[:i + 1]), out)
    if i + width < len(word):
        out = tensor(out, identity(n, word[i + width - 1:]))
    return out


def plan_to_web(n, source, steps) -> Web:
    web = identity(n, source)
    word = tuple(source)
    for st in steps:
        web = compose(step_web(n, word, st), web)
        word = apply_step(word, st)
    return web


def plan_target(source, steps):
    word = tuple(source)
    for st in steps:
        word = apply_step(word, st)
    return word


def random_plan(n, rng, source=None, length=12, max_width=5, close=False):
    """Random valid plan; with close=True it ends on a single region."""
    cols = SECONDARY[n]
    if source is None:
        source = (rng.choice(cols),)
    word = tuple(source)
    steps = []

    def options(word):
        opts = []
        for i in range(len(word)):
            if len(word) < max_width + 1:
                opts += [("cup", i, t) for t in cols if t != word[i]]
        for i in range(len(word) - 2):
            if word[i] == word[i + 2]:
                opts.append(("cap", i))
            elif n == 3:
                opts.append(("merge", i))
        if n == 3 and len(word) < max_width + 1:
            for i in range(len(word) - 1):
                t = next(c for c in cols if c not in word[i:i + 2])
                opts.append(("split", i, t))
        return opts

    for _ in range(length):
        st = rng.choice(options(word))
        steps.append(st)
        word = apply_step(word, st)
    if close:
        while len(word) > 1:
            opts = [o for o in options(word) if o[0] in ("cap", "merge")]
            st = rng.choice(opts)
            steps.append(st)
            word = apply_step(word, st)
    return tuple(source), tuple(steps)


def random_elliptic_web(rng, max_faces=10, n=3, attempts=500):
    """Random sl_3 web with a reducible face or closed part, ≤ max_faces internal faces."""
    for _ in range(attempts):
        width = rng.randint(2, 4)
        cols = SECONDARY[n]
        src = [rng.choice(cols)]
        while len(src) < width:
            src.append(rng.choice([c for c in cols if c != src[-1]]))
        source, steps = random_plan(n, rng, tuple(src), length=rng.randint(4, 14))
        w = plan_to_web(n, source, steps)
        nfaces = len(faces(w))
        if nfaces <= max_faces and not is_nonelliptic(w):
            return w
    raise RuntimeError("could not sample an elliptic web")


def random_closed_web(rng, n=3, length=10, min_vertices=0, attempts=1000):
    """Random plan closing back to one region, and the web it builds."""
    for _ in range(attempts):
        source, steps = random_plan(n, rng, length=length, close=True)
        web = plan_to_web(n, source, steps)
        if len(web.verts) >= min_vertices:
            return source, steps, web
    raise RuntimeError("could not sample a closed web with enough vertices")


# ----------------------------------------------------------------- sweep


def _joins(web, left_far, right_far, processed):
    """Would adjacent items with these far darts cap or merge next?"""
    if web.alpha[left_far] == right_far:
        return True
    h1, h2 = web.home[left_far], web.home[right_far]
    return (h1[0] == "v" and h2[0] == "v" and h1[1] == h2[1] and h1[1] not in processed
            and web.next_ccw(left_far) == right_far)


class _Item:
    __slots__ = ("far", "near")

    def __init__(self, far, near):
        self.far = far
        self.near = near


def sweep(web: Web, start_dart=None):
    """Decompose a web into a plan by sweeping a line upward.

    Loops and closed components are returned separately; the plan covers
    the part attached to the boundary. With ``start_dart`` the web is a
    closed component and the sweep starts in the face left of that dart.
    Returns (source, steps, loops, closed component webs).
    """
    if start_dart is None:
        comps = web.closed_components()
        closed = [_component_web(web, c) for c in comps]
        if comps:
            drop = set()
            for c in comps:
                drop |= {web.home[d][1] for d in c}
            web = _splice(web, drop, [])
        loops = list(web.loops)
        source = web.source
        items = [_Item(web.alpha[d], d) for d in web.bottom]
    else:
        closed, loops = [], []
        source = (web.left[start_dart],)
        items = []
    processed = set()
    steps = []
    word = list(source)
    N = web.npoints
    top = list(web.top)

    def unprocessed_node(d):
        h = web.home[d]
        return h[0] == "t" or (h[0] == "v" and h[1] not in processed)

    kb = len(web.bottom)

    def gap_arc(i):
        """Darts of the face boundary lying above the sweep line in gap i."""
        if not items:
            if start_dart is not None:
                return _face_of(web, start_dart)
            for darts, walls in web.face_orbits():
                if N - 1 in walls:
                    return darts
            return []
        if i < len(items):
            d = web.alpha[items[i].far]
        elif start_dart is None and web.top:
            d = None
        else:
            return []
        if start_dart is not None:
            stop = items[-1].far if i == 0 else items[i - 1].far
        else:
            stop = items[i - 1].far if i > 0 else None
        arc = []
        if d is None:
            # enter across the right wall at the rightmost top point
            d = web.point_dart(kb)
            arc.append(d)
        for _ in range(web.ndarts + 1):
            d, g = web.step(d)
            if g is not None and (g < kb or g == N - 1):
                break
            if d == stop:
                break
            arc.append(d)
        return arc

    guard = 0
    while True:
        guard += 1
        if guard > 10_000:
            raise RuntimeError("sweep did not terminate")
        if len(processed) == len(web.verts) and [it.far for it in items] == top:
            break
        done = False
        # cap
        for i in range(len(items) - 1):
            a, b = items[i], items[i + 1]
            # two adjacent pieces of one edge whose lower end is already swept
            if web.alpha[a.far] == b.far and (a.near is not None or b.near is not None):
                steps.append(("cap", i))
                del items[i:i + 2]
                del word[i + 1:i + 3]
                done = True
                break
        if done:
            continue
        # merge
        for i in range(len(items) - 1):
            a, b = items[i], items[i + 1]
            ha, hb = web.home[a.far], web.home[b.far]
            if ha[0] == "v" and hb[0] == "v" and ha[1] == hb[1] and ha[1] not in processed \
                    and web.next_ccw(a.far) == b.far:
                o = web.next_ccw(b.far)
                processed.add(ha[1])
                steps.append(("merge", i))
                items[i:i + 2] = [_Item(web.alpha[o], o)]
                del word[i + 1]
                done = True
                break
        if done:
            continue
        # split, preferring one that lets a merge or cap follow at once
        best = None
        for i, a in enumerate(items):
            h = web.home[a.far]
            if h[0] == "v" and h[1] not in processed:
                e1 = web.next_ccw(a.far)
                e2 = web.next_ccw(e1)
                score = 0
                if i > 0 and _joins(web, items[i - 1].far, web.alpha[e2], processed | {h[1]}):
                    score += 1
                if i + 1 < len(items) and _joins(web, web.alpha[e1], items[i + 1].far,
                                                 processed | {h[1]}):
                    score += 1
                if best is None or score > best[0]:
                    best = (score, i, e1, e2)
        if best is not None:
            _, i, e1, e2 = best
            processed.add(web.home[e1][1])
            t = web.left[e1]
            steps.append(("split", i, t))
            items[i:i + 1] = [_Item(web.alpha[e2], e2), _Item(web.alpha[e1], e1)]
            word.insert(i + 1, t)
            continue
        # cup
        fars = {it.far for it in items}
        gaps = len(items) if (start_dart is not None and items) else len(items) + 1
        for i in range(gaps):
            for d in gap_arc(i):
                a = web.alpha[d]
                if d in fars or a in fars:
                    continue
                if unprocessed_node(d) and unprocessed_node(a):
                    t = web.left[a]
                    steps.append(("cup", i, t))
                    items[i:i] = [_Item(a, None), _Item(d, None)]
                    word[i + 1:i + 1] = [t, word[i]]
                    done = True
                    break
            if done:
                break
        if not done:
            raise RuntimeError("sweep is stuck; the web may be invalid")
    if start_dart is None and tuple(word) != web.target:
        raise RuntimeError("sweep ended on the wrong word")
    return tuple(source), tuple(steps), loops, closed


@lru_cache(maxsize=None)
# --------------------------------------------------------------- suite


def nested_circles(n, k, colours=None):
    """k concentric loops on an identity region."""
    cols = colours or SECONDARY[n][:2]
    a, b = cols
    steps = []
    for j in range(k):
        steps.append(("cup", j, b if j % 2 == 0 else a))
    for j in reversed(range(k)):
        steps.append(("cap", j))
    return plan_to_web(n, (a,), steps)


def theta(x0="o", x1="g", x2="p"):
    return plan_to_web(3, (x0,), [("cup", 0, x2), ("split", 0, x1), ("merge", 0), ("cap", 0)])


def verify_webs(n, seed=0, samples=100, max_faces=10):
    from .report import Report

    rep = Report(f"webs-sl{n}", seed)
    circle = circle_value(n)
    cols = SECONDARY[n]
    for a in cols:
        for b in cols:
            if a != b:
                w = plan_to_web(n, (a,), [("cup", 0, b), ("cap", 0)])
                rep.run(f"circle {b} in {a}", lambda w=w: evaluate_closed(w) == circle)
    for k in range(1, 6):
        w = nested_circles(n, k)
        rep.run(f"{k} nested circles", lambda w=w, k=k: evaluate_closed(w) == circle ** k)
    rep.run("empty web evaluates to 1",
            lambda: evaluate_closed(identity(n, (cols[0],))) == QLaurent.const(1))
    if n == 3:
        rep.run("theta", lambda: evaluate_closed(theta()) == -quantum_int(2) * quantum_int(3))
        rep.run("bigon", lambda: reduce(compose(merge("o", "g", "p"), split("o", "g", "p")))
                == WebCombo.from_web(identity(3, ("o", "p")), bigon_value()))
    rng = random.Random(seed)
    for k in range(samples):
        if n == 3:
            w = random_elliptic_web(rng, max_faces)
        else:
            src, steps = random_plan(2, rng, ("r", "b", "r"), length=8)
            w = plan_to_web(2, src, steps)

        def check(w=w, k=k):
            a = reduce(w, "smallest")
            b = reduce(w, "random", seed + k)
            if a != b:
                return False, f"strategies disagree on {w.to_json()}"
            if (a.source, a.target) != (w.source, w.target):
                return False, "boundary changed"
            if not all(is_nonelliptic(x) for _, x in a.items()):
                return False, "elliptic summand left"
            if WebCombo.from_dict(json.loads(a.to_text())) != a:
                return False, "text form does not round-trip"
            glued = compose(identity(n, w.target), compose(w, identity(n, w.source)))
            if glued != w:
                return False, "gluing identities changed the canonical form"
            return True, None

        rep.run(f"random web {k}", check)
    return rep
