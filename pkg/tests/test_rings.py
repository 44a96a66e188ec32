"""Arithmetic layer: ring/field axioms, reductions, denominators, factoring."""

import random
from fractions import Fraction

import pytest

from decompgen import polyops as P
from decompgen.errors import FactorBudgetExceeded, NotPrime, UnsupportedResidueField
from decompgen.factor import (
    factor_gf,
    factor_integer,
    factor_univariate,
    factor_zx_primitive,
    funcfield_polynomial_roots,
    squarefree_decomposition,
)
from decompgen.fields import FuncField, GFExt, GFPrime, Rationals
from decompgen.primes import (
    denominator_ideal,
    generic_point,
    is_in_localization,
    parse_prime,
    prime_spec,
    reduce_elem,
    reduce_scalar,
    ring_quotient,
)
from decompgen.rings import parse_ring, ring_gcd

RINGS = ["Z", "Z[x]", "Q[x]", "Q[x,y]", "GF(2)[x]", "GF(5)[x,y]"]


def random_element(ring, rng, size=3):
    terms = []
    for _ in range(rng.randrange(0, size + 1)):
        exps = tuple(rng.randrange(0, 3) for _ in range(ring.nv))
        c = rng.randint(-6, 6)
        terms.append((exps, c))
    out = ring.zero()
    for exps, c in terms:
        t = ring.from_int(c)
        for i, e in enumerate(exps):
            t = t * ring.var(ring.varnames[i]) ** e
        out = out + t
    return out


@pytest.mark.parametrize("ring_str", RINGS)
def test_ring_axioms_randomized(ring_str):
    ring = parse_ring(ring_str)
    rng = random.Random(hash(ring_str) & 0xFFFF)
    for _ in range(1000):
        a, b, c = (random_element(ring, rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a * b == b * a
        assert a + ring.zero() == a
        assert a * ring.one() == a
        assert a + (-a) == ring.zero()


FIELDS = [
    Rationals(),
    GFPrime(5),
    GFExt(2, 2, (1, 1, 1)),
    FuncField(Rationals(), ("x",)),
    FuncField(GFPrime(3), ("x", "y")),
]


def random_scalar(F, rng):
    if isinstance(F, Rationals):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    if isinstance(F, GFPrime):
        return rng.randrange(F.p)
    if isinstance(F, GFExt):
        return tuple(rng.randrange(F.p) for _ in range(F.e))
    num = ring_like_poly(F, rng)
    den = ring_like_poly(F, rng)
    while P.pis_zero(den):
        den = ring_like_poly(F, rng)
    return F.make(num, den)


def ring_like_poly(F, rng):
    base, nv = F.base, F.nv
    items = []
    for _ in range(rng.randrange(0, 3)):
        exps = tuple(rng.randrange(0, 3) for _ in range(nv))
        items.append((exps, base.from_int(rng.randint(-4, 4))))
    return P.pnorm(base, items)


@pytest.mark.parametrize("F", FIELDS, ids=lambda f: repr(f))
def test_field_axioms_randomized(F):
    rng = random.Random(7)
    n = 150 if isinstance(F, FuncField) else 1000
    for _ in range(n):
        a, b, c = (random_scalar(F, rng) for _ in range(3))
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.add(a, F.neg(a)) == F.zero
        if not F.is_zero(a):
            assert F.mul(a, F.inv(a)) == F.one


def test_reduce_examples():
    Z = parse_ring("Z")
    p2 = prime_spec(Z, [Z.from_int(2)])
    assert reduce_elem(Z.from_int(6), p2) == 0
    Qx = parse_ring("Q[x]")
    p = prime_spec(Qx, [Qx.parse("x - 1")])
    assert reduce_elem(Qx.parse("x^2 + 1"), p) == Fraction(2)
    Zx = parse_ring("Z[x]")
    p3 = prime_spec(Zx, [Zx.from_int(3)])
    v = reduce_elem(Zx.parse("3*x"), p3)
    assert p3.residue_field.is_zero(v)


@pytest.mark.parametrize("ring_str", RINGS)
def test_reduce_is_ring_morphism(ring_str):
    ring = parse_ring(ring_str)
    specs = [generic_point(ring)]
    if ring_str == "Z":
        specs.append(prime_spec(ring, [ring.from_int(7)]))
    elif ring_str == "Z[x]":
        specs.append(prime_spec(ring, [ring.from_int(5)]))
        specs.append(prime_spec(ring, [ring.parse("x - 2")]))
        specs.append(prime_spec(ring, [ring.from_int(2), ring.parse("x^2 + x + 1")]))
    elif ring_str == "GF(2)[x]":
        specs.append(prime_spec(ring, [ring.parse("x^2 + x + 1")]))
    elif ring_str == "Q[x]":
        specs.append(prime_spec(ring, [ring.parse("x + 2")]))
    elif ring_str == "Q[x,y]":
        specs.append(prime_spec(ring, [ring.parse("y - x^2")]))
        specs.append(prime_spec(ring, [ring.parse("x - 1"), ring.parse("y - 2")]))
    elif ring_str == "GF(5)[x,y]":
        specs.append(prime_spec(ring, [ring.parse("x^2 + 2")]))
    rng = random.Random(11)
    for spec in specs:
        F = spec.residue_field
        for _ in range(50):
            a, b = random_element(ring, rng), random_element(ring, rng)
            assert reduce_elem(a + b, spec) == F.add(reduce_elem(a, spec), reduce_elem(b, spec))
            assert reduce_elem(a * b, spec) == F.mul(reduce_elem(a, spec), reduce_elem(b, spec))


def test_denominator_ideal_examples():
    Z = parse_ring("Z")
    assert denominator_ideal(Fraction(3, 2), Z) == Z.from_int(2)
    assert denominator_ideal(Fraction(5), Z) == Z.from_int(1)
    Qx = parse_ring("Q[x]")
    K = Qx.fraction_field()
    alpha = K.make(Qx.parse("x + 1").data, Qx.parse("x^2").data)
    assert denominator_ideal(alpha, Qx) == Qx.parse("x^2")
    # over Z[x] rational contents matter
    Zx = parse_ring("Z[x]")
    KZ = Zx.fraction_field()
    alpha = KZ.from_fraction(Fraction(3, 2))
    assert denominator_ideal(alpha, Zx) == Zx.from_int(2)
    beta = KZ.mul(KZ.from_fraction(Fraction(1, 2)), KZ.var_scalar(0))  # x/2
    assert denominator_ideal(beta, Zx) == Zx.from_int(2)


def test_denominator_ideal_times_alpha_in_ring():
    rng = random.Random(3)
    for ring_str in ("Z", "Q[x]", "Z[x]", "GF(2)[x]"):
        ring = parse_ring(ring_str)
        K = ring.fraction_field()
        for _ in range(100):
            num = random_element(ring, rng)
            den = random_element(ring, rng)
            if den.is_zero():
                continue
            if ring_str == "Z":
                alpha = Fraction(num.const_value(), den.const_value())
                g = denominator_ideal(alpha, ring)
                assert (alpha * g.const_value()).denominator == 1
            else:
                alpha = K.div(ring.to_field(num, K), ring.to_field(den, K))
                g = denominator_ideal(alpha, ring)
                prod = K.mul(alpha, ring.to_field(g, K))
                assert ring.from_field_scalar(prod, K) is not None


def test_localization_membership():
    Z = parse_ring("Z")
    p3 = prime_spec(Z, [Z.from_int(3)])
    p2 = prime_spec(Z, [Z.from_int(2)])
    assert is_in_localization(Fraction(3, 2), p3)
    assert not is_in_localization(Fraction(3, 2), p2)
    assert reduce_scalar(Fraction(3, 2), prime_spec(Z, [Z.from_int(5)])) == 4
    Qx = parse_ring("Q[x]")
    K = Qx.fraction_field()
    alpha = K.make(Qx.parse("x + 1").data, Qx.parse("x").data)
    p = prime_spec(Qx, [Qx.parse("x - 1")])
    assert is_in_localization(alpha, p)
    assert reduce_scalar(alpha, p) == Fraction(2)


def test_factor_integer():
    assert factor_integer(108) == (1, [(2, 2), (3, 3)])
    assert factor_integer(1) == (1, [])
    assert factor_integer(-6) == (-1, [(2, 1), (3, 1)])
    with pytest.raises(FactorBudgetExceeded):
        factor_integer((10**7 + 19) * (10**7 + 79), limit=10**4)


def test_factor_univariate_examples():
    Qx = parse_ring("Q[x]")
    unit, pairs = factor_univariate(Qx.parse("x^2 - 1"))
    assert [(str(f), m) for f, m in pairs] == [("x - 1", 1), ("x + 1", 1)]
    F2x = parse_ring("GF(2)[x]")
    unit, pairs = factor_univariate(F2x.parse("x^2 + x + 1"))
    assert [(str(f), m) for f, m in pairs] == [("x^2 + x + 1", 1)]
    unit, pairs = factor_univariate(F2x.parse("x^4 + 1"))
    assert [(str(f), m) for f, m in pairs] == [("x + 1", 4)]


@pytest.mark.parametrize("ring_str,seed", [("Q[x]", 5), ("GF(2)[x]", 6), ("GF(5)[x]", 7)])
def test_factor_reconstructs_input(ring_str, seed):
    ring = parse_ring(ring_str)
    rng = random.Random(seed)
    for _ in range(40):
        f = random_element(ring, rng, size=4)
        if f.is_zero():
            continue
        unit, pairs = factor_univariate(f)
        prod = unit
        for fac, m in pairs:
            prod = prod * fac**m
        assert prod == f


def test_factor_zx():
    Zx = parse_ring("Z[x]")
    unit, pairs = factor_zx_primitive(Zx.parse("2*x^2 - 2"))
    labels = sorted((str(f), m) for f, m in pairs)
    assert labels == [("2", 1), ("x + 1", 1), ("x - 1", 1)]


def test_factor_gfq():
    F4 = GFExt(2, 2, (1, 1, 1))
    # x^2 + x + a splits over GF(4)? brute force check by refactoring
    rng = random.Random(1)
    for _ in range(25):
        dense = tuple(tuple(rng.randrange(2) for _ in range(2)) for _ in range(4))
        dense = P.utrim(F4, dense)
        if P.udeg(dense) < 1:
            continue
        unit, pairs = factor_gf(F4, dense)
        prod = (unit,)
        for fac, m in pairs:
            for _ in range(m):
                prod = P.umul(F4, prod, fac)
        assert prod == dense


def test_squarefree_decomposition_char_p():
    F2 = GFPrime(2)
    # (x+1)^4 has vanishing derivative twice over
    f = (1, 0, 0, 0, 1)  # x^4 + 1 = (x+1)^4
    out = squarefree_decomposition(F2, f)
    assert out == [((1, 1), 4)]


def test_funcfield_root_extraction():
    K = FuncField(Rationals(), ("d",))
    d = K.var_scalar(0)
    one = K.one
    # (X - d)(X - (d^2+1)) expanded
    r1, r2 = d, K.add(K.mul(d, d), one)
    chi = (K.mul(r1, r2), K.neg(K.add(r1, r2)), one)
    roots = funcfield_polynomial_roots(K, chi)
    assert sorted(roots, key=K.sort_key) == sorted([r1, r2], key=K.sort_key)


def test_prime_validation():
    Z = parse_ring("Z")
    with pytest.raises(NotPrime):
        prime_spec(Z, [Z.from_int(4)])
    Qx = parse_ring("Q[x]")
    with pytest.raises(NotPrime):
        prime_spec(Qx, [Qx.parse("x^2 - 1")])
    with pytest.raises(UnsupportedResidueField):
        prime_spec(Qx, [Qx.parse("x^2 - 2")])  # residue field Q(sqrt 2)
    Zx = parse_ring("Z[x]")
    with pytest.raises(NotPrime):
        prime_spec(Zx, [Zx.parse("2*x + 2")])  # content 2
    spec = prime_spec(Zx, [Zx.parse("2*x - 1")])  # residue Q at x = 1/2
    assert reduce_elem(Zx.parse("x^2"), spec) == Fraction(1, 4)
    with pytest.raises(UnsupportedResidueField):
        prime_spec(Zx, [Zx.parse("x^2 - 2")])


def test_parse_prime():
    Z = parse_ring("Z")
    assert parse_prime("p=3", Z).short_str() == "(3)"
    assert parse_prime("generic", Z).is_generic
    with pytest.raises(NotPrime):
        parse_prime("gen=[4]", Z)
    Qd = parse_ring("Q[d]")
    assert parse_prime("gen=[d]", Qd).short_str() == "(d)"


def test_ring_quotients_and_gcd():
    Zx = parse_ring("Z[x]")
    ring2, imap = ring_quotient(Zx, Zx.from_int(2))
    assert repr(ring2) == "GF(2)[x]"
    assert imap(Zx.parse("3*x + 2")) == ring2.parse("x")
    ringz, imap = ring_quotient(Zx, Zx.parse("x - 3"))
    assert imap(Zx.parse("x^2")) == ringz.from_int(9)
    g = ring_gcd(Zx.parse("2*x^2 - 2"), Zx.parse("4*x + 4"))
    assert str(g) == "2*x + 2"
    Qxy = parse_ring("Q[x,y]")
    rq, imap = ring_quotient(Qxy, Qxy.parse("y - x^2"))
    assert imap(Qxy.parse("x*y")) == rq.parse("x^3")


def test_poly_parse_format_roundtrip():
    rng = random.Random(9)
    for ring_str in RINGS:
        ring = parse_ring(ring_str)
        for _ in range(60):
            e = random_element(ring, rng, size=4)
            assert ring.parse(str(e)) == e


def test_canonical_forms_are_bit_identical():
    Qxy = parse_ring("Q[x,y]")
    a = Qxy.parse("x*y + y*x")  # same monomial twice
    b = Qxy.parse("2*x*y")
    assert a.data == b.data
    assert hash(a) == hash(b)
