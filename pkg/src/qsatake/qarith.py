"""Exact arithmetic in the parameter q.

Three scalar types live here:

* ``QLaurent``  -- Laurent polynomials in q with rational coefficients,
* ``QRational`` -- reduced rational functions num(q)/den(q) over Z[q],
* ``CycloNumber`` -- elements of Q[q]/Phi_k, i.e. q specialised to a
  primitive k-th root of unity.

Everything is immutable and hashable.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from functools import lru_cache
from math import gcd

from sympy import ZZ
from sympy.polys.densearith import dup_exquo
from sympy.polys.euclidtools import dup_gcd

__all__ = [
    "QLaurent",
    "QRational",
    "CycloNumber",
    "quantum_int",
    "qr_normalize",
    "specialize_cyclotomic",
    "cyclotomic_poly",
    "parse_laurent",
    "to_qrational",
]


def _frac(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


# ---------------------------------------------------------------- QLaurent


class QLaurent:
    """Finite sum of c_k q^k with rational c_k and integer k."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for k, v in dict(coeffs).items():
                v = _frac(v)
                if v:
                    c[int(k)] = v
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c):
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def q(cls, k=1):
        return cls._raw({k: Fraction(1)})

    @property
    def coefficients(self):
        return dict(self._c)

    def is_zero(self):
        return not self._c

    def is_constant(self):
        return not self._c or set(self._c) == {0}

    def constant(self):
        return self._c.get(0, Fraction(0))

    def min_exp(self):
        return min(self._c) if self._c else 0

    def max_exp(self):
        return max(self._c) if self._c else 0

    def bar(self):
        """The involution q -> q^-1."""
        return QLaurent._raw({-k: v for k, v in self._c.items()})

    def __add__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        c = dict(self._c)
        for k, v in other._c.items():
            s = c.get(k, 0) + v
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        return QLaurent._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return QLaurent._raw({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        c = {}
        for k1, v1 in self._c.items():
            for k2, v2 in other._c.items():
                c[k1 + k2] = c.get(k1 + k2, 0) + v1 * v2
        return QLaurent._raw({k: v for k, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials are invertible in Q[q, q^-1]")
            (k, v), = self._c.items()
            return QLaurent._raw({k * e: v ** e})
        out = QLaurent.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            if isinstance(other, QRational):
                return NotImplemented
            return False
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __bool__(self):
        return bool(self._c)

    def __call__(self, value):
        """Evaluate at a number (exact for Fractions, CycloNumbers, ...)."""
        total = 0
        for k, v in self._c.items():
            total = total + v * value ** k
        return total

    def __repr__(self):
        return f"QLaurent({str(self)!r})"

    def __str__(self):
        return _format_terms(sorted(self._c.items(), reverse=True))


def _format_terms(items, var="q"):
    if not items:
        return "0"
    parts = []
    for k, v in items:
        sign = "-" if v < 0 else "+"
        a = abs(v)
        if k == 0:
            body = str(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append((sign, body))
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _as_laurent(x):
    if isinstance(x, QLaurent):
        return x
    if isinstance(x, (int, Fraction)):
        return QLaurent.const(x)
    return NotImplemented


@lru_cache(maxsize=None)
def quantum_int(n: int) -> QLaurent:
    """[n] = q^(n-1) + q^(n-3) + ... + q^(1-n)."""
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"quantum_int needs a non-negative integer, got {n!r}")
    return QLaurent({n - 1 - 2 * i: 1 for i in range(n)})


# ---------------------------------------------------------------- QRational
#
# Integer polynomials are tuples of ints, lowest degree first, no trailing
# zeros.  The zero polynomial is ().


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return _trim(out)


def _pneg(a):
    return tuple(-v for v in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _pscale(a, c):
    return tuple(v * c for v in a) if c else ()


def _content(a):
    g = 0
    for v in a:
        g = gcd(g, v)
    return g


def _low(a):
    for i, v in enumerate(a):
        if v:
            return i
    return 0


def _is_monomial(a):
    return sum(1 for v in a if v) == 1


def _to_dup(a):
    return [ZZ(v) for v in reversed(a)]


def _from_dup(a):
    return _trim(int(v) for v in reversed(a))


def _pgcd(a, b):
    """gcd over Z[q] with positive leading coefficient."""
    if _is_monomial(a) or _is_monomial(b):
        k = min(_low(a), _low(b))
        c = gcd(_content(a), _content(b))
        return (0,) * k + (c,)
    return _from_dup(dup_gcd(_to_dup(a), _to_dup(b), ZZ))


def _pexquo(a, b):
    if _is_monomial(b):
        k = _low(b)
        c = b[k]
        out = []
        for v in a[k:]:
            if v % c:
                raise ArithmeticError("inexact division")
            out.append(v // c)
        return _trim(out)
    return _from_dup(dup_exquo(_to_dup(a), _to_dup(b), ZZ))


class QRational:
    """Element num/den of Q(q) in lowest terms.

    The denominator has positive leading coefficient and gcd(num, den) = 1
    over Z[q]. Integer content of the denominator is kept, since 1/2 has no
    representative with content-1 denominator over Z[q].
    """

    __slots__ = ("num", "den", "_hash", "_mono")

    def __init__(self, num=(), den=(1,)):
        n, d = _normalize(_trim(num), _trim(den))
        self.num = n
        self.den = d
        self._hash = None
        self._mono = _mono_of(d)

    @classmethod
    def _raw(cls, num, den, mono=False):
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        obj._mono = _mono_of(den) if mono is False else mono
        return obj

    @classmethod
    def from_laurent(cls, p: QLaurent) -> "QRational":
        if not p._c:
            return ZERO
        lo = min(p._c)
        hi = max(p._c)
        den_l = 1
        for v in p._c.values():
            den_l = den_l * v.denominator // gcd(den_l, v.denominator)
        num = [0] * (hi - lo + 1)
        for k, v in p._c.items():
            num[k - lo] = int(v * den_l)
        den = (0,) * max(-lo, 0) + (den_l,)
        if lo > 0:
            num = [0] * lo + num
        return cls(tuple(num), den)

    @classmethod
    def from_fraction(cls, f) -> "QRational":
        f = _frac(f)
        if not f:
            return ZERO
        return cls._raw((f.numerator,), (f.denominator,))

    def is_zero(self):
        return not self.num

    def is_constant(self):
        return len(self.num) <= 1 and len(self.den) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return Fraction(self.num[0] if self.num else 0, self.den[0])

    def is_laurent(self):
        return _is_monomial(self.den)

    def to_laurent(self) -> QLaurent:
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        k = _low(self.den)
        c = self.den[k]
        return QLaurent._raw(
            {i - k: Fraction(v, c) for i, v in enumerate(self.num) if v})

    def __add__(self, other):
        other = to_qrational(other)
        if not self.num:
            return other
        if not other.num:
            return self
        if self._mono and other._mono:
            (k1, c1), (k2, c2) = self._mono, other._mono
            k = max(k1, k2)
            c = c1 * c2 // gcd(c1, c2)
            a = _pscale((0,) * (k - k1) + self.num, c // c1)
            b = _pscale((0,) * (k - k2) + other.num, c // c2)
            return _mono_norm(_padd(a, b), k, c)
        if self.den == other.den:
            return QRational(_padd(self.num, other.num), self.den)
        num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
        return QRational(num, _pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return QRational._raw(_pneg(self.num), self.den, self._mono)

    def __sub__(self, other):
        return self + (-to_qrational(other))

    def __rsub__(self, other):
        return to_qrational(other) - self

    def __mul__(self, other):
        other = to_qrational(other)
        if not self.num or not other.num:
            return ZERO
        if self._mono and other._mono:
            (k1, c1), (k2, c2) = self._mono, other._mono
            return _mono_norm(_pmul(self.num, other.num), k1 + k2, c1 * c2)
        return QRational(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero in Q(q)")
        return QRational(self.den, self.num)

    def __truediv__(self, other):
        return self * to_qrational(other).inverse()

    def __rtruediv__(self, other):
        return to_qrational(other) * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        out = ONE
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        try:
            other = to_qrational(other)
        except TypeError:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        return f"QRational({str(self)!r})"

    def __str__(self):
        if self.is_laurent():
            return str(self.to_laurent())
        n = _format_terms(
            sorted(((i, Fraction(v)) for i, v in enumerate(self.num) if v), reverse=True))
        d = _format_terms(
            sorted(((i, Fraction(v)) for i, v in enumerate(self.den) if v), reverse=True))
        return f"({n})/({d})"


def _mono_of(den):
    """(k, c) when den = c·q^k, else None."""
    k = len(den) - 1
    for v in den[:k]:
        if v:
            return None
    return (k, den[k])


def _mono_norm(num, k, c):
    """Reduce num / (c·q^k) with c > 0."""
    if not num:
        return ZERO
    s = 0
    while s < k and not num[s]:
        s += 1
    g = c
    for v in num:
        if v:
            g = gcd(g, v)
            if g == 1:
                break
    if s:
        num = num[s:]
        k -= s
    if g != 1:
        num = tuple(v // g for v in num)
        c //= g
    return QRational._raw(num, (0,) * k + (c,), (k, c))


def _normalize(num, den):
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return (), (1,)
    g = _pgcd(num, den)
    if g != (1,):
        num = _pexquo(num, g)
        den = _pexquo(den, g)
    if den[-1] < 0:
        num, den = _pneg(num), _pneg(den)
    return num, den


def qr_normalize(num, den) -> QRational:
    """Reduced form of num/den; inputs are integer coefficient sequences,
    lowest degree first."""
    return QRational(tuple(int(v) for v in num), tuple(int(v) for v in den))


ZERO = QRational._raw((), (1,))
ONE = QRational._raw((1,), (1,))


def to_qrational(x) -> QRational:
    if isinstance(x, QRational):
        return x
    if isinstance(x, QLaurent):
        return QRational.from_laurent(x)
    if isinstance(x, (int, Fraction)):
        return QRational.from_fraction(x)
    raise TypeError(f"cannot convert {x!r} to QRational")


# ------------------------------------------------------------- cyclotomic


@lru_cache(maxsize=None)
def cyclotomic_poly(k: int) -> tuple:
    """Phi_k as an integer tuple, lowest degree first."""
    if k < 1:
        raise ValueError("cyclotomic order must be positive")
    p = (-1,) + (0,) * (k - 1) + (1,)  # q^k - 1
    for d in range(1, k):
        if k % d == 0:
            p = _pexquo(p, cyclotomic_poly(d))
    return p


def _reduce_mod(coeffs, k):
    """Reduce a Fraction list (lowest first) modulo the monic Phi_k."""
    phi = cyclotomic_poly(k)
    deg = len(phi) - 1
    c = list(coeffs)
    for i in range(len(c) - 1, deg - 1, -1):
        t = c[i]
        if t:
            for j in range(deg + 1):
                c[i - deg + j] -= t * phi[j]
    c = c[:deg] + [Fraction(0)] * max(0, deg - len(c))
    return tuple(c)


class CycloNumber:
    """Element of Q[q]/Phi_k; q is a primitive k-th root of unity."""

    __slots__ = ("order", "residue")

    def __init__(self, order: int, residue=()):
        if order < 1:
            raise ValueError("cyclotomic order must be positive")
        self.order = order
        self.residue = _reduce_mod([_frac(v) for v in residue], order)

    @classmethod
    def gen(cls, order):
        """The image of q."""
        return cls(order, (0, 1))

    def _coerce(self, other):
        if isinstance(other, CycloNumber):
            if other.order != self.order:
                raise ValueError("cyclotomic orders differ")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNumber(self.order, (other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CycloNumber(self.order, [a + b for a, b in zip(self.residue, other.residue)])

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.order, [-a for a in self.residue])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.residue, other.residue
        prod = [Fraction(0)] * max(1, len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return CycloNumber(self.order, prod)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return self._inverse() ** (-e)
        out = CycloNumber(self.order, (1,))
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def _inverse(self):
        # Solve x * self = 1 by linear algebra in the power basis.
        from .linalg import solve
        deg = len(self.residue)
        cols = []
        basis = [CycloNumber(self.order, (0,) * i + (1,)) for i in range(deg)]
        for e in basis:
            cols.append((e * self).residue)
        mat = [[cols[j][i] for j in range(deg)] for i in range(deg)]
        rhs = [Fraction(1)] + [Fraction(0)] * (deg - 1)
        x = solve(mat, rhs)
        if x is None:
            raise ZeroDivisionError("non-invertible cyclotomic number")
        return CycloNumber(self.order, x)

    def is_zero(self):
        return not any(self.residue)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloNumber(self.order, (other,))
        if not isinstance(other, CycloNumber):
            return False
        return self.order == other.order and self.residue == other.residue

    def __hash__(self):
        return hash((self.order, self.residue))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"CycloNumber({self.order}, {str(self)!r})"

    def __str__(self):
        items = sorted(((i, v) for i, v in enumerate(self.residue) if v), reverse=True)
        return _format_terms(items, var="z")


def specialize_cyclotomic(p, k: int) -> CycloNumber:
    """Image of a Laurent polynomial under q -> primitive k-th root of unity."""
    if k < 1:
        raise ValueError("cyclotomic order must be positive")
    if isinstance(p, (int, Fraction)):
        return CycloNumber(k, (p,))
    if isinstance(p, QRational):
        p = p.to_laurent()
    coeffs = [Fraction(0)] * k
    for e, v in p._c.items():
        coeffs[e % k] += v
    return CycloNumber(k, coeffs)


# ---------------------------------------------------------------- parsing


class _Eval(ast.NodeVisitor):
    """Restricted arithmetic evaluator over a caller-supplied atom table."""

    def __init__(self, atoms, one):
        self.atoms = atoms
        self.one = one

    def visit_Expression(self, node):
        return self.visit(node.body)

    def visit_Constant(self, node):
        if isinstance(node.value, bool) or not isinstance(node.value, int):
            raise ValueError(f"unsupported literal {node.value!r}")
        return self.one * node.value

    def visit_Name(self, node):
        try:
            return self.atoms[node.id]
        except KeyError:
            raise ValueError(f"unknown symbol {node.id!r}") from None

    def visit_UnaryOp(self, node):
        v = self.visit(node.operand)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
        raise ValueError("unsupported unary operator")

    def visit_BinOp(self, node):
        if isinstance(node.op, ast.Pow):
            e = _int_exponent(node.right)
            return self.visit(node.left) ** e
        a, b = self.visit(node.left), self.visit(node.right)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        raise ValueError("unsupported operator")

    def generic_visit(self, node):
        raise ValueError(f"unsupported syntax: {type(node).__name__}")


def _int_exponent(node):
    sign = 1
    while isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        if isinstance(node.op, ast.USub):
            sign = -sign
        node = node.operand
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return sign * node.value
    raise ValueError("exponents must be integer literals")


def parse_expression(text: str, atoms: dict, one):
    """Parse ``+ - * ^`` arithmetic over named atoms."""
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse {text!r}: {exc.msg}") from None
    return _Eval(atoms, one).visit(tree)


def parse_laurent(text: str) -> QLaurent:
    """Parse e.g. ``q^2 + 1 + q^-2``."""
    return parse_expression(text, {"q": QLaurent.q()}, QLaurent.const(1))
