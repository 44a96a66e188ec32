"""Exact linear algebra: echelon forms, characteristic polynomials, Hermite
normal forms with saturation, gcd-free bases."""

import random
from fractions import Fraction
from math import lcm

import pytest

from decompgen import polyops as P
from decompgen.errors import Inconsistent, NotSquare
from decompgen.fields import FuncField, GFExt, GFPrime, Rationals
from decompgen.linalg import (
    Matrix,
    char_poly,
    det,
    eval_poly_at_matrix,
    gcd_free_basis,
    hermite_normal_form,
    kernel_basis,
    lattice_member,
    left_kernel_ring,
    rank,
    saturate_rows,
    solve,
    unimodular_complement,
)
from decompgen.rings import EuclideanRing, parse_ring

QQ = Rationals()
F3 = GFPrime(3)
F4 = GFExt(2, 2, (1, 1, 1))
QX = FuncField(Rationals(), ("x",))

FIELDS = [QQ, F3, F4, QX]


def rand_scalar(F, rng):
    if isinstance(F, Rationals):
        return Fraction(rng.randint(-5, 5))
    if isinstance(F, GFPrime):
        return rng.randrange(F.p)
    if isinstance(F, GFExt):
        return tuple(rng.randrange(F.p) for _ in range(F.e))
    return F.from_int(rng.randint(-3, 3))


def rand_matrix(F, n, rng):
    return Matrix(F, [[rand_scalar(F, rng) for _ in range(n)] for _ in range(n)])


def rand_invertible(F, n, rng):
    while True:
        m = rand_matrix(F, n, rng)
        if not F.is_zero(det(m)):
            return m


def test_kernel_and_solve_examples():
    m = Matrix(QQ, [[1, 1], [1, 1]])
    m = Matrix(QQ, [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(1)]])
    assert kernel_basis(m) == [[Fraction(1), Fraction(-1)]]
    assert det(Matrix.identity(QQ, 5)) == 1
    assert solve(Matrix(F3, [[2]]), [1]) == [2]
    with pytest.raises(Inconsistent):
        solve(Matrix(QQ, [[Fraction(1)], [Fraction(1)]]), [Fraction(1), Fraction(2)])
    with pytest.raises(NotSquare):
        det(Matrix(QQ, [[Fraction(1), Fraction(2)]]))


def test_char_poly_examples():
    assert char_poly(Matrix.zeros(QQ, 2, 2)) == (Fraction(0), Fraction(0), Fraction(1))
    assert char_poly(Matrix.identity(QQ, 2)) == (Fraction(1), Fraction(-2), Fraction(1))
    swap = Matrix(QQ, [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]])
    assert char_poly(swap) == (Fraction(-1), Fraction(0), Fraction(1))


@pytest.mark.parametrize("F", FIELDS, ids=lambda f: repr(f))
def test_char_poly_similarity_invariance(F):
    rng = random.Random(17)
    for n in (2, 3, 4):
        for _ in range(8):
            m = rand_matrix(F, n, rng)
            p = rand_invertible(F, n, rng)
            pinv_cols = [solve(p, [F.one if i == j else F.zero for i in range(n)])
                         for j in range(n)]
            pinv = Matrix(F, [[pinv_cols[j][i] for j in range(n)] for i in range(n)])
            conj = p.mul(m).mul(pinv)
            assert char_poly(conj) == char_poly(m)


@pytest.mark.parametrize("F", FIELDS, ids=lambda f: repr(f))
def test_char_poly_block_multiplicativity(F):
    rng = random.Random(23)
    for _ in range(10):
        a = rand_matrix(F, 2, rng)
        b = rand_matrix(F, 3, rng)
        n = 5
        rows = [[F.zero] * n for _ in range(n)]
        for i in range(2):
            for j in range(2):
                rows[i][j] = a.rows[i][j]
        for i in range(3):
            for j in range(3):
                rows[2 + i][2 + j] = b.rows[i][j]
        block = Matrix(F, rows)
        assert char_poly(block) == P.umul(F, char_poly(a), char_poly(b))


@pytest.mark.parametrize("F", FIELDS, ids=lambda f: repr(f))
def test_cayley_hamilton(F):
    rng = random.Random(29)
    for n in (2, 3, 4):
        m = rand_matrix(F, n, rng)
        assert eval_poly_at_matrix(F, char_poly(m), m).is_zero_matrix()


def _z_adapter():
    return EuclideanRing(parse_ring("Z"))


def _clear_q_row(row):
    den = 1
    for c in row:
        den = lcm(den, c.denominator)
    return [int(c * den) for c in row]


def saturate_z(rows):
    E = _z_adapter()
    return saturate_rows(E, QQ, rows, lambda a: Fraction(a), _clear_q_row)


def test_hermite_saturation_examples():
    assert saturate_z([[2, 0], [0, 2]]) == [[1, 0], [0, 1]]
    assert saturate_z([[2, 2]]) == [[1, 1]]
    # over Q[x]: {(x, x^2)} saturates to {(1, x)}
    Qx = parse_ring("Q[x]")
    E = EuclideanRing(Qx)
    K = Qx.fraction_field()

    def to_f(a):
        return Qx.to_field(E.from_rep(a), K)

    def from_f(row):
        acc = P.pone(QQ, 1)
        for num, den in row:
            g = P.pgcd_field(QQ, 1, acc, den)
            acc = P.pexact_div(QQ, P.pmul(QQ, acc, den), g)
        return [P.p_to_dense(QQ, P.pmul(QQ, num, P.pexact_div(QQ, acc, den)))
                for num, den in row]

    x = (Fraction(0), Fraction(1))
    x2 = (Fraction(0), Fraction(0), Fraction(1))
    sat = saturate_rows(E, K, [[x, x2]], to_f, from_f)
    assert sat == [[(Fraction(1),), x]]


def test_hermite_saturation_idempotent_and_rank_preserving():
    rng = random.Random(31)
    E = _z_adapter()
    for _ in range(40):
        m = rng.randrange(1, 4)
        n = rng.randrange(m, 5)
        rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        sat1 = saturate_z(rows)
        sat2 = saturate_z(sat1)
        assert sat1 == sat2
        qrank = rank(Matrix(QQ, [[Fraction(c) for c in r] for r in rows]))
        assert len(sat1) == qrank
        # every original row is in the saturation
        for r in rows:
            assert lattice_member(E, sat1, r) is not None


def test_left_kernel_over_z():
    E = _z_adapter()
    ker = left_kernel_ring(E, [[2], [3]])
    assert ker == [[3, -2]] or ker == [[-3, 2]]
    for u in ker:
        assert u[0] * 2 + u[1] * 3 == 0


def test_unimodular_complement():
    E = _z_adapter()
    for basis in ([[2, 1]], [[1, 2]], [[1, 0, 3], [0, 1, 4]]):
        sat = saturate_z(basis)
        comp = unimodular_complement(E, sat)
        n = len(basis[0])
        full = [list(r) for r in sat] + [list(r) for r in comp]
        d = det(Matrix(QQ, [[Fraction(c) for c in r] for r in full]))
        assert abs(d) == 1


def test_hermite_canonical_form():
    E = _z_adapter()
    res = hermite_normal_form(E, [[4, 6], [2, 5]])
    assert res.basis == [[2, 1], [0, 4]]
    # entries above pivots are reduced
    res = hermite_normal_form(E, [[1, 7], [0, 3]])
    assert res.basis == [[1, 1], [0, 3]]


def test_gcd_free_basis_examples():
    x2m1 = (Fraction(-1), Fraction(0), Fraction(1))
    xm1 = (Fraction(-1), Fraction(1))
    xp1 = (Fraction(1), Fraction(1))
    gb = gcd_free_basis(QQ, [x2m1, xm1])
    assert gb.basis == (xm1, xp1)
    assert gb.mults == ((1, 1), (1, 0))
    gb = gcd_free_basis(QQ, [(Fraction(0), Fraction(0), Fraction(1))])
    assert gb.basis == ((Fraction(0), Fraction(1)),)
    assert gb.mults == ((2,),)
    sq = (Fraction(1), Fraction(2), Fraction(1))
    gb = gcd_free_basis(QQ, [x2m1, sq])
    assert gb.mults == ((1, 1), (0, 2))


@pytest.mark.parametrize("F", [QQ, F3, F4], ids=lambda f: repr(f))
def test_gcd_free_reconstruction_randomized(F):
    rng = random.Random(37)
    atoms = []
    for _ in range(4):
        a = (rand_scalar(F, rng), F.one)
        atoms.append(a)
    for _ in range(30):
        polys = []
        for _ in range(rng.randrange(1, 4)):
            p = (rand_scalar(F, rng),) if not F.is_zero(rand_scalar(F, rng)) else (F.one,)
            if F.is_zero(p[0]):
                p = (F.one,)
            for _ in range(rng.randrange(1, 4)):
                p = P.umul(F, p, atoms[rng.randrange(len(atoms))])
            polys.append(p)
        gb = gcd_free_basis(F, polys)
        for i, p in enumerate(polys):
            assert gb.reconstruct(i) == p
        for i, a in enumerate(gb.basis):
            for b in gb.basis[i + 1:]:
                assert P.udeg(P.ugcd(F, a, b)) == 0
