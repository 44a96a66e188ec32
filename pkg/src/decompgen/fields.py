"""Exact fields the engine computes over, and the integer coefficient domain.

Field objects double as their own descriptors: they are immutable, compare
structurally, and expose arithmetic on plain-data scalars.

    Rationals            scalars are fractions.Fraction
    GFPrime(p)           scalars are ints in [0, p)
    GFExt(p, e, modulus) scalars are length-e tuples of ints (coordinates of
                         the representative polynomial, constant term first);
                         modulus is a monic irreducible dense polynomial over
                         GF(p) of degree e
    FuncField(base, varnames)
                         rational function field over one of the above in one
                         or two variables; scalars are (num, den) pairs of
                         canonical sparse polynomials with monic denominator
                         and gcd(num, den) = 1

Keeping scalars as plain data (rather than wrapper objects) keeps the dense
linear algebra loops cheap; all operations go through the owning field.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import polyops as P


@dataclass(frozen=True)
class IntegerOps:
    """The ring of integers as a coefficient domain (not a field)."""

    is_field = False
    characteristic = 0
    zero = 0
    one = 1

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a):
        return a == 0

    def from_int(self, n):
        return n

    def exact_div(self, a, b):
        q, r = divmod(a, b)
        return q if r == 0 else None

    def sort_key(self, a):
        return a

    def to_str(self, a):
        return str(a)

    def parse_coeff(self, num, den):
        if num % den:
            raise ValueError(f"{num}/{den} is not an integer coefficient")
        return num // den


@dataclass(frozen=True)
class Rationals:
    is_field = True
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return 1 / a

    def div(self, a, b):
        return a / b

    def is_zero(self, a):
        return a == 0

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, q):
        return Fraction(q)

    def sort_key(self, a):
        return a

    def to_str(self, a):
        return str(a)

    def parse_coeff(self, num, den):
        return Fraction(num, den)

    def __repr__(self):
        return "Q"


@dataclass(frozen=True)
class GFPrime:
    p: int

    is_field = True

    @property
    def characteristic(self):
        return self.p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1 % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in GF(p)")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def is_zero(self, a):
        return a % self.p == 0

    def from_int(self, n):
        return n % self.p

    def from_fraction(self, q):
        return self.div(q.numerator % self.p, q.denominator % self.p)

    def sort_key(self, a):
        return a

    def to_str(self, a):
        return str(a)

    def parse_coeff(self, num, den):
        return self.from_fraction(Fraction(num, den))

    def size(self):
        return self.p

    def elements(self):
        return range(self.p)

    def __repr__(self):
        return f"GF({self.p})"


@dataclass(frozen=True)
class GFExt:
    p: int
    e: int
    modulus: tuple  # dense over GF(p), length e + 1, monic

    is_field = True

    @property
    def characteristic(self):
        return self.p

    @property
    def base(self):
        return GFPrime(self.p)

    @property
    def zero(self):
        return (0,) * self.e

    @property
    def one(self):
        return (1,) + (0,) * (self.e - 1)

    def _pad(self, dense):
        return tuple(dense) + (0,) * (self.e - len(dense))

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a, b):
        gf = self.base
        prod = P.umul(gf, P.utrim(gf, a), P.utrim(gf, b))
        return self._pad(P.umod(gf, prod, self.modulus))

    def is_zero(self, a):
        return all(x == 0 for x in a)

    def inv(self, a):
        gf = self.base
        r0, r1 = self.modulus, P.utrim(gf, a)
        if not r1:
            raise ZeroDivisionError("inverse of zero in GF(p^e)")
        s0, s1 = (), (1,)
        while r1:
            q, r = P.udivmod(gf, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, P.usub(gf, s0, P.umul(gf, q, s1))
        lc_inv = gf.inv(r0[-1])
        return self._pad(P.uscale(gf, s0, lc_inv))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def from_int(self, n):
        return self._pad((n % self.p,) if n % self.p else ())

    def embed(self, a):
        """Embedding of the prime field."""
        return self.from_int(a)

    def gen(self):
        """The class of the modulus variable."""
        return self._pad(P.umod(GFPrime(self.p), (0, 1), self.modulus))

    def sort_key(self, a):
        return tuple(a)

    def to_str(self, a):
        gf = self.base
        return P.pformat(P.p_from_dense(gf, P.utrim(gf, a)), ("a",), str)

    def size(self):
        return self.p ** self.e

    def elements(self):
        from itertools import product

        for tup in product(range(self.p), repeat=self.e):
            yield tup

    def __repr__(self):
        return f"GF({self.p}^{self.e})"


@dataclass(frozen=True)
class FuncField:
    base: object
    varnames: tuple

    is_field = True

    @property
    def characteristic(self):
        return self.base.characteristic

    @property
    def nv(self):
        return len(self.varnames)

    @property
    def zero(self):
        return (P.PZERO, P.pone(self.base, self.nv))

    @property
    def one(self):
        u = P.pone(self.base, self.nv)
        return (u, u)

    def make(self, num, den):
        """Canonical scalar from a numerator/denominator polynomial pair."""
        if P.pis_zero(den):
            raise ZeroDivisionError("zero denominator in function field")
        if P.pis_zero(num):
            return self.zero
        g = P.pgcd_field(self.base, self.nv, num, den)
        if P.pdeg(g) > 0:
            num = P.pexact_div(self.base, num, g)
            den = P.pexact_div(self.base, den, g)
        lc = den[0][1]
        if not self.base.is_zero(self.base.sub(lc, self.base.one)):
            inv = self.base.inv(lc)
            num = P.pscale(self.base, num, inv)
            den = P.pscale(self.base, den, inv)
        return (num, den)

    def add(self, a, b):
        (na, da), (nb, db) = a, b
        num = P.padd(self.base, P.pmul(self.base, na, db), P.pmul(self.base, nb, da))
        return self.make(num, P.pmul(self.base, da, db))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        return (P.pneg(self.base, a[0]), a[1])

    def mul(self, a, b):
        (na, da), (nb, db) = a, b
        return self.make(P.pmul(self.base, na, nb), P.pmul(self.base, da, db))

    def inv(self, a):
        if P.pis_zero(a[0]):
            raise ZeroDivisionError("inverse of zero in function field")
        return self.make(a[1], a[0])

    def div(self, a, b):
        (na, da), (nb, db) = a, b
        if P.pis_zero(nb):
            raise ZeroDivisionError("division by zero in function field")
        return self.make(P.pmul(self.base, na, db), P.pmul(self.base, da, nb))

    def is_zero(self, a):
        return P.pis_zero(a[0])

    def from_int(self, n):
        return (P.pconst(self.base, self.nv, self.base.from_int(n)), P.pone(self.base, self.nv))

    def from_fraction(self, q):
        c = self.base.from_fraction(q)
        return (P.pconst(self.base, self.nv, c), P.pone(self.base, self.nv))

    def from_poly(self, p):
        """Scalar from a polynomial over the base coefficient field."""
        return (p, P.pone(self.base, self.nv))

    def var_scalar(self, i):
        return self.from_poly(P.pvar(self.base, self.nv, i))

    def is_polynomial(self, a):
        return P.pis_const(a[1])

    def numerator(self, a):
        return a[0]

    def denominator(self, a):
        return a[1]

    def sort_key(self, a):
        bk = self.base.sort_key
        return (P.pkey(bk, a[0]), P.pkey(bk, a[1]))

    def to_str(self, a):
        num, den = a
        ns = P.pformat(num, self.varnames, self.base.to_str)
        if P.pis_const(den):
            return ns
        ds = P.pformat(den, self.varnames, self.base.to_str)
        if len(num) > 1:
            ns = "(" + ns + ")"
        if len(den) > 1:
            ds = "(" + ds + ")"
        return ns + "/" + ds

    def __repr__(self):
        return f"{self.base!r}({','.join(self.varnames)})"


def scalar_from_coeff(field, c):
    """Embed a base-ring coefficient (int or Fraction) into a field."""
    if isinstance(c, Fraction):
        return field.from_fraction(c)
    return field.from_int(c)
