"""Supported base rings and their elements.

The engine works over the normal noetherian domains

    Z,  Z[x],  Q[x],  Q[x,y],  GF(p)[x],  GF(p)[x,y]

plus the zero-variable rings Q and GF(p) that arise as restriction targets
(Z/(p) is GF(p), Q[x]/(x-c) is Q, and so on).  A RingDescriptor carries the
coefficient domain and the ordered variable names; a RingElement wraps a
canonical sparse polynomial (see polyops) so that equal values are equal
objects and hashing/golden serialization are reliable.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as int_gcd

from . import polyops as P
from .errors import UnsupportedRing
from .fields import FuncField, GFPrime, IntegerOps, Rationals


@dataclass(frozen=True)
class RingDescriptor:
    coeff: object  # IntegerOps | Rationals | GFPrime
    varnames: tuple

    def __post_init__(self):
        names = self.varnames
        if len(set(names)) != len(names) or any(not _NAME_RE.fullmatch(n) for n in names):
            raise UnsupportedRing(f"bad variable names {names!r}")
        if isinstance(self.coeff, IntegerOps):
            if len(names) > 1:
                raise UnsupportedRing("at most one variable over the integers")
        elif isinstance(self.coeff, (Rationals, GFPrime)):
            if len(names) > 2:
                raise UnsupportedRing("at most two variables over a field")
        else:
            raise UnsupportedRing(f"unsupported coefficient domain {self.coeff!r}")

    @property
    def nv(self):
        return len(self.varnames)

    @property
    def kind(self):
        return "Integers" if isinstance(self.coeff, IntegerOps) and self.nv == 0 else "PolynomialRing"

    @property
    def is_field_ring(self):
        return self.nv == 0 and not isinstance(self.coeff, IntegerOps)

    @property
    def is_euclidean(self):
        """True when Hermite normal forms are available (Z, fields, k[x])."""
        if self.nv == 0:
            return True
        return self.nv == 1 and not isinstance(self.coeff, IntegerOps)

    @property
    def characteristic(self):
        return self.coeff.characteristic

    def __repr__(self):
        c = {True: "Z"}.get(isinstance(self.coeff, IntegerOps)) or repr(self.coeff)
        return c + (f"[{','.join(self.varnames)}]" if self.varnames else "")

    # element constructors

    def element(self, data):
        return RingElement(self, data)

    def zero(self):
        return self.element(P.PZERO)

    def one(self):
        return self.element(P.pone(self.coeff, self.nv))

    def from_int(self, n):
        return self.element(P.pconst(self.coeff, self.nv, self.coeff.from_int(n)))

    def from_coeff(self, c):
        return self.element(P.pconst(self.coeff, self.nv, c))

    def var(self, name):
        return self.element(P.pvar(self.coeff, self.nv, self.varnames.index(name)))

    def parse(self, text):
        return self.element(_parse_poly(text, self))

    def fraction_field(self):
        if self.is_field_ring:
            return self.coeff
        if self.nv == 0:
            return Rationals()
        base = Rationals() if isinstance(self.coeff, IntegerOps) else self.coeff
        return FuncField(base, self.varnames)

    def to_field(self, elem, field=None):
        """Image of elem in the fraction field (or any field via from_int/from_fraction)."""
        field = field or self.fraction_field()
        if self.nv == 0:
            c = P.pconst_value(self.coeff, elem.data)
            return field.from_fraction(Fraction(c)) if not isinstance(self.coeff, GFPrime) else field.from_int(c)
        if isinstance(self.coeff, IntegerOps):
            data = tuple((e, Fraction(c)) for e, c in elem.data)
        else:
            data = elem.data
        return field.from_poly(data)

    def from_field_scalar(self, a, field=None):
        """RingElement with the same value as the fraction-field scalar a,
        or None when a is not in the ring."""
        field = field or self.fraction_field()
        if self.is_field_ring:
            return self.from_coeff(a)
        if self.nv == 0:
            return self.from_int(a.numerator) if a.denominator == 1 else None
        if not field.is_polynomial(a):
            return None
        num = field.numerator(a)
        if isinstance(self.coeff, IntegerOps):
            if any(c.denominator != 1 for _, c in num):
                return None
            num = tuple((e, int(c)) for e, c in num)
        return self.element(num)


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


class RingElement:
    """Immutable element of a RingDescriptor in canonical sparse form."""

    __slots__ = ("ring", "data")

    def __init__(self, ring, data):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "data", data)

    def __setattr__(self, *_):
        raise AttributeError("RingElement is immutable")

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise UnsupportedRing("mixed-ring arithmetic")
            return other
        if isinstance(other, int):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingElement(self.ring, P.padd(self.ring.coeff, self.data, o.data))

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, P.pneg(self.ring.coeff, self.data))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingElement(self.ring, P.psub(self.ring.coeff, self.data, o.data))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingElement(self.ring, P.pmul(self.ring.coeff, self.data, o.data))

    __rmul__ = __mul__

    def __pow__(self, n):
        return RingElement(self.ring, P.ppow(self.ring.coeff, self.data, n, self.ring.nv))

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.from_int(other)
        return isinstance(other, RingElement) and self.ring == other.ring and self.data == other.data

    def __hash__(self):
        return hash((self.ring, self.data))

    def is_zero(self):
        return not self.data

    def is_const(self):
        return P.pis_const(self.data)

    def const_value(self):
        return P.pconst_value(self.ring.coeff, self.data)

    def total_degree(self):
        return P.pdeg(self.data)

    def degree_in(self, name):
        return P.pdeg_in(self.data, self.ring.varnames.index(name))

    def sort_key(self):
        return P.pkey(self.ring.coeff.sort_key, self.data)

    def __str__(self):
        return P.pformat(self.data, self.ring.varnames, self.ring.coeff.to_str)

    def __repr__(self):
        return f"<{self} in {self.ring!r}>"


# --- ring-level gcd, contents, exact division --------------------------------

def ring_exact_div(a, b):
    """a/b in the ring, or None when b does not divide a."""
    q = P.pexact_div(a.ring.coeff, a.data, b.data)
    return None if q is None else RingElement(a.ring, q)


def int_content(elem):
    """Content and sign of a polynomial with integer coefficients: returns
    (c, primitive) with c > 0 unless elem is 0, and primitive having positive
    leading coefficient times sign absorbed into c."""
    if elem.is_zero():
        return 0, elem
    c = 0
    for _, v in elem.data:
        c = int_gcd(c, v)
    if elem.data[0][1] < 0:
        c = -c
    prim = tuple((e, v // c) for e, v in elem.data)
    return c, RingElement(elem.ring, prim)


def _int_to_rat(ring):
    return RingDescriptor(Rationals(), ring.varnames)


def _rat_clear_denoms(elem):
    """Rational-coefficient polynomial to (fraction, primitive integer-coeff data)."""
    from math import lcm

    den = 1
    for _, c in elem.data:
        den = lcm(den, c.denominator)
    num_gcd = 0
    for _, c in elem.data:
        num_gcd = int_gcd(num_gcd, int(c * den))
    if not elem.is_zero() and elem.data[0][1] < 0:
        num_gcd = -num_gcd
    if num_gcd == 0:
        return Fraction(0), P.PZERO
    data = tuple((e, int(c * den) // num_gcd) for e, c in elem.data)
    return Fraction(num_gcd, den), data


def ring_gcd(a, b):
    """Gcd normalized per ring: |.| over Z, degree-lex monic over field
    coefficients, primitive positive-leading over Z[x]."""
    ring = a.ring
    if a.is_zero():
        return normalize_generator(b)
    if b.is_zero():
        return normalize_generator(a)
    coeff = ring.coeff
    if ring.nv == 0:
        if isinstance(coeff, IntegerOps):
            return ring.from_int(int_gcd(a.const_value(), b.const_value()))
        return ring.one()
    if not isinstance(coeff, IntegerOps):
        return ring.element(P.pgcd_field(coeff, ring.nv, a.data, b.data))
    # Z[x]: Gauss -- gcd of contents times primitive gcd over Q
    ca, pa = int_content(a)
    cb, pb = int_content(b)
    ratring = _int_to_rat(ring)
    qa = ratring.element(tuple((e, Fraction(c)) for e, c in pa.data))
    qb = ratring.element(tuple((e, Fraction(c)) for e, c in pb.data))
    g = P.pgcd_field(Rationals(), 1, qa.data, qb.data)
    _, gdata = _rat_clear_denoms(ratring.element(g))
    return ring.element(tuple((e, int(c)) for e, c in gdata)) * int_gcd(ca, cb)


def normalize_generator(elem):
    """Canonical generator of the principal ideal (elem)."""
    ring = elem.ring
    if elem.is_zero():
        return elem
    if isinstance(ring.coeff, IntegerOps):
        if elem.data[0][1] < 0:
            return -elem
        return elem
    lc = elem.data[0][1]
    if ring.coeff.is_zero(ring.coeff.sub(lc, ring.coeff.one)):
        return elem
    return ring.element(P.pscale(ring.coeff, elem.data, ring.coeff.inv(lc)))


def is_unit(elem):
    ring = elem.ring
    if not elem.is_const() or elem.is_zero():
        return False
    if isinstance(ring.coeff, IntegerOps):
        return elem.const_value() in (1, -1)
    return True


# --- Euclidean view for Hermite normal forms ---------------------------------

class EuclideanRing:
    """Z, k (fields), and k[x] through one divmod interface; the element
    representation is ints for Z, raw scalars for fields, and dense
    coefficient tuples for k[x]."""

    def __init__(self, ring):
        if not ring.is_euclidean:
            raise UnsupportedRing(f"no Euclidean structure on {ring!r}")
        self.ring = ring
        self.kind = (
            "int" if isinstance(ring.coeff, IntegerOps) and ring.nv == 0
            else "field" if ring.nv == 0
            else "poly"
        )

    def to_rep(self, elem):
        if self.kind == "int":
            return elem.const_value()
        if self.kind == "field":
            return elem.const_value()
        return P.p_to_dense(self.ring.coeff, elem.data)

    def from_rep(self, r):
        if self.kind == "int":
            return self.ring.from_int(r)
        if self.kind == "field":
            return self.ring.from_coeff(r)
        return self.ring.element(P.p_from_dense(self.ring.coeff, r))

    @property
    def zero(self):
        return 0 if self.kind == "int" else self.ring.coeff.zero if self.kind == "field" else ()

    @property
    def one(self):
        return 1 if self.kind == "int" else self.ring.coeff.one if self.kind == "field" else (self.ring.coeff.one,)

    def is_zero(self, a):
        if self.kind == "int":
            return a == 0
        if self.kind == "field":
            return self.ring.coeff.is_zero(a)
        return not a

    def size(self, a):
        """Euclidean size used for pivoting; None for zero."""
        if self.is_zero(a):
            return None
        if self.kind == "int":
            return abs(a)
        if self.kind == "field":
            return 0
        return len(a) - 1

    def add(self, a, b):
        if self.kind == "int":
            return a + b
        if self.kind == "field":
            return self.ring.coeff.add(a, b)
        return P.uadd(self.ring.coeff, a, b)

    def sub(self, a, b):
        if self.kind == "int":
            return a - b
        if self.kind == "field":
            return self.ring.coeff.sub(a, b)
        return P.usub(self.ring.coeff, a, b)

    def neg(self, a):
        if self.kind == "int":
            return -a
        if self.kind == "field":
            return self.ring.coeff.neg(a)
        return P.uneg(self.ring.coeff, a)

    def mul(self, a, b):
        if self.kind == "int":
            return a * b
        if self.kind == "field":
            return self.ring.coeff.mul(a, b)
        return P.umul(self.ring.coeff, a, b)

    def divmod(self, a, b):
        if self.kind == "int":
            return divmod(a, b)
        if self.kind == "field":
            return self.ring.coeff.div(a, b), self.ring.coeff.zero
        return P.udivmod(self.ring.coeff, a, b)

    def unit_normalize(self, a):
        """(u, a*u) with u a unit making a*u canonical (positive / monic)."""
        if self.is_zero(a):
            return self.one, a
        if self.kind == "int":
            return (1, a) if a > 0 else (-1, -a)
        if self.kind == "field":
            return self.ring.coeff.inv(a), self.ring.coeff.one
        inv = self.ring.coeff.inv(a[-1])
        return ((inv,), P.uscale(self.ring.coeff, a, inv))


# --- parsing ------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z_0-9]*|\^|\*|\+|-|/|\(|\))")


def _tokenize(text):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ValueError(f"bad character in polynomial at {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def _parse_poly(text, ring):
    """Parse `3*x^2*y - 1/2` style text into canonical sparse form."""
    toks = _tokenize(text)
    if not toks:
        raise ValueError("empty polynomial")
    coeff, nv = ring.coeff, ring.nv
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take():
        nonlocal pos
        t = toks[pos]
        pos += 1
        return t

    def parse_factor():
        t = take()
        if t.isdigit():
            num = int(t)
            den = 1
            if peek() == "/":
                take()
                d = take()
                if not d.isdigit():
                    raise ValueError("expected integer denominator")
                den = int(d)
            return ("coeff", coeff.parse_coeff(num, den))
        if _NAME_RE.fullmatch(t):
            if t not in ring.varnames:
                raise ValueError(f"unknown variable {t!r} in {ring!r}")
            k = 1
            if peek() == "^":
                take()
                e = take()
                if not e.isdigit():
                    raise ValueError("expected integer exponent")
                k = int(e)
            return ("var", ring.varnames.index(t), k)
        raise ValueError(f"unexpected token {t!r}")

    def parse_term():
        sign = 1
        while peek() in ("+", "-"):
            if take() == "-":
                sign = -sign
        c = coeff.from_int(sign)
        exps = [0] * nv
        while True:
            kind, *rest = parse_factor()
            if kind == "coeff":
                c = coeff.mul(c, rest[0])
            else:
                i, k = rest
                exps[i] += k
            if peek() == "*":
                take()
                continue
            break
        return (tuple(exps), c)

    items = [parse_term()]
    while peek() in ("+", "-"):
        items.append(parse_term())
    if pos != len(toks):
        raise ValueError(f"trailing input {toks[pos:]!r}")
    return P.pnorm(coeff, items)


def is_prime_int(n):
    if n < 2:
        return False
    q = 2
    while q * q <= n:
        if n % q == 0:
            return False
        q += 1
    return True


_RING_RE = re.compile(r"^(Z|Q|GF\((\d+)\))(?:\[([A-Za-z_0-9,\s]+)\])?$")


def parse_ring(text):
    """Ring descriptor from text: Z, Q, GF(p), Z[x], Q[x,y], GF(2)[x,y]."""
    m = _RING_RE.match(text.strip())
    if not m:
        raise UnsupportedRing(f"cannot parse ring {text!r}")
    head, p, vars_part = m.groups()
    if head == "Z":
        coeff = IntegerOps()
    elif head == "Q":
        coeff = Rationals()
    else:
        p = int(p)
        if not is_prime_int(p):
            raise UnsupportedRing(f"{p} is not prime")
        coeff = GFPrime(p)
    names = tuple(s.strip() for s in vars_part.split(",")) if vars_part else ()
    return RingDescriptor(coeff, names)


def ring_to_str(ring):
    head = "Z" if isinstance(ring.coeff, IntegerOps) else "Q" if isinstance(ring.coeff, Rationals) else f"GF({ring.coeff.p})"
    return head + (f"[{','.join(ring.varnames)}]" if ring.varnames else "")
