"""Discriminants, Schur elements, stratification trees and coverage."""

import random

import pytest

from decompgen.decomposition import dec_gen_membership
from decompgen.errors import NotSemisimpleGeneric, NotSymmetric
from decompgen.primes import contains, prime_spec
from decompgen.rings import parse_ring
from decompgen.strata import (
    UnresolvedPrime,
    candidate_discriminant,
    dec_ex,
    locate_stratum,
    minimal_primes,
    radical_lattice,
    schur_discriminant_crosscheck,
    schur_elements,
    stratify,
    tree_lines,
)

Z = parse_ring("Z")
Qd = parse_ring("Q[d]")
Zd = parse_ring("Z[d]")


def test_radical_lattice_examples(corpus):
    lat = radical_lattice(corpus["ZC2"])
    assert lat.rank == 0
    lat = radical_lattice(corpus["B2_Q"])
    assert lat.rank == 0
    lat = radical_lattice(corpus["UT2_Z"])
    assert lat.rank == 1 and lat.saturated
    assert [[str(c) for c in row] for row in lat.rows] == [["0", "1", "0"]]


def test_candidate_discriminant_values(corpus):
    assert str(candidate_discriminant(corpus["ZC2"])) == "4"
    assert str(candidate_discriminant(corpus["ZS3"])) == "46656"  # 6^6
    g = candidate_discriminant(corpus["Mat2_Z"])
    # a power of two: Mat_2's regular trace Gram degenerates exactly at 2
    assert str(g) == "16"
    assert str(candidate_discriminant(corpus["B2_Q"])) == "d^2"
    assert str(candidate_discriminant(corpus["B2_Z"])) == "4*d^2"
    assert str(candidate_discriminant(corpus["UT2_Z"])) == "1"
    assert str(candidate_discriminant(corpus["Dual_Z"])) == "1"


def test_minimal_primes_examples():
    out = minimal_primes(Z.from_int(108))
    assert [p.short_str() for p in out] == ["(2)", "(3)"]
    g = Qd.parse("d^2") * Qd.parse("d - 1")
    out = minimal_primes(g)
    assert sorted(p.short_str() for p in out) == ["(d - 1)", "(d)"]
    out = minimal_primes(Zd.parse("2*d"))
    assert sorted(p.short_str() for p in out) == ["(2)", "(d)"]


def test_minimal_primes_unresolved_quadratic():
    g = Qd.parse("d^2 - 2")
    out = minimal_primes(g)
    assert len(out) == 1 and isinstance(out[0], UnresolvedPrime)


def test_minimal_primes_bivariate():
    Qxy = parse_ring("Q[x,y]")
    g = Qxy.parse("x^2*y - x^2") * Qxy.parse("y - x^2")
    out = minimal_primes(g)
    labels = sorted(p.short_str() for p in out if not isinstance(p, UnresolvedPrime))
    assert "(x)" in labels and "(y - 1)" in labels and "(x^2 - y)" in labels
    # x^2 - y^2 must split into two lines
    out = minimal_primes(Qxy.parse("x^2 - y^2"))
    labels = sorted(p.short_str() for p in out if not isinstance(p, UnresolvedPrime))
    assert labels == ["(x + y)", "(x - y)"] or labels == ["(x - y)", "(x + y)"]
    # an honest undecidable: irreducible of higher degree is declined
    out = minimal_primes(Qxy.parse("x^3 + y^3 + 1"))
    assert any(isinstance(p, UnresolvedPrime) for p in out)


def test_dec_ex_statuses(corpus):
    dec = dec_ex(corpus["ZS3"])
    assert sorted(pt.prime.short_str() for pt in dec.excluded) == ["(2)", "(3)"]
    assert not dec.unknown
    dec = dec_ex(corpus["Mat2_Z"])
    assert not dec.excluded
    assert [pt.prime.short_str() for pt in dec.recovered] == ["(2)"]
    dec = dec_ex(corpus["UT2_Z"])
    assert not dec.points  # unit candidate, empty locus
    dec = dec_ex(corpus["TL4_Q"])
    # quadratic irrational loci are reported, not dropped
    assert dec.excluded or dec.unknown


def test_excluded_points_grow_strictly(corpus):
    for key in ("ZC2", "ZS3", "B2_Q", "B2_Z", "TL2_Z"):
        dec = dec_ex(corpus[key])
        for pt in dec.excluded:
            assert pt.fiber_radical_dim > pt.generic_radical_dim


def test_schur_elements(corpus):
    assert [str(c) for c in schur_elements(corpus["ZS3"])] == ["6", "6", "3"]
    assert [str(c) for c in schur_elements(corpus["ZC2"])] == ["2", "2"]
    assert [str(c) for c in schur_elements(corpus["Mat2_Z"])] == ["1"]
    with pytest.raises(NotSymmetric):
        schur_elements(corpus["B2_Q"])  # no trace vector attached
    with pytest.raises(NotSemisimpleGeneric):
        from decompgen.corpus import dual_numbers

        D = dual_numbers(Z)
        # give the dual numbers a symmetric form: tau(1) = 0, tau(eps) = 1
        from decompgen.algebra import FiniteFreeAlgebra

        A = FiniteFreeAlgebra("DualSym", Z, D.basis_names, D.sc, list(D.unit),
                              [Z.zero(), Z.one()])
        schur_elements(A)


def test_schur_crosscheck(corpus):
    for key in ("ZS3", "ZC2", "Mat2_Z"):
        rep = schur_discriminant_crosscheck(corpus[key])
        assert rep["match"], key


def test_stratify_zc2(corpus):
    tree = stratify(corpus["ZC2"])
    assert tree.kind == "node"
    assert len(tree.children) == 1
    pt, child = tree.children[0]
    assert pt.prime.short_str() == "(2)" and child.kind == "point-leaf"
    # strata: complement of (2), plus the point (2)
    assert "V(2)" in tree.stratum_description()


def test_stratify_b2z_two_levels(corpus):
    tree = stratify(corpus["B2_Z"])
    assert {pt.prime.short_str() for pt, _ in tree.children} == {"(2)", "(d)"}
    for pt, child in tree.children:
        assert child.kind == "node"
        assert len(child.children) == 1
        sub_pt, leaf = child.children[0]
        assert leaf.kind == "point-leaf"
    lines = tree_lines(tree)
    assert any("singleton" in line for line in lines)


def test_stratify_single_stratum(corpus):
    tree = stratify(corpus["Mat2_Z"])
    assert not tree.children
    assert tree.stratum_description() == "all of Spec(R)"
    tree = stratify(corpus["UT2_Z"])
    assert not tree.children


def test_stratify_non_split_generic_is_reported(corpus):
    tree = stratify(corpus["ZC3"])
    assert tree.kind == "unresolved-leaf"
    assert "split" in tree.reason


def _random_primes_z(rng, count):
    out = []
    smalls = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
    while len(out) < count:
        out.append(prime_spec(Z, [Z.from_int(rng.choice(smalls))]))
    return out


def _random_primes_zd(rng, count):
    out = []
    while len(out) < count:
        kind = rng.randrange(3)
        try:
            if kind == 0:
                out.append(prime_spec(Zd, [Zd.from_int(rng.choice([2, 3, 5, 7, 11]))]))
            elif kind == 1:
                c = rng.randint(-5, 5)
                out.append(prime_spec(Zd, [Zd.parse(f"d - {c}" if c >= 0 else f"d + {-c}")]))
            else:
                p = rng.choice([2, 3, 5])
                c = rng.randint(0, p - 1)
                out.append(prime_spec(Zd, [Zd.from_int(p), Zd.parse(f"d - {c}")]))
        except Exception:
            continue
    return out


def test_cover_every_sampled_prime_lands_in_one_stratum(corpus):
    rng = random.Random(99)
    cases = [
        ("ZC2", _random_primes_z(rng, 15)),
        ("ZS3", _random_primes_z(rng, 15)),
        ("B2_Z", _random_primes_zd(rng, 20)),
    ]
    for key, primes in cases:
        A = corpus[key]
        tree = stratify(A)
        dec = dec_ex(A)
        for pt in dec.excluded:
            primes = primes + [pt.prime]
        for p in primes:
            path = locate_stratum(tree, A, p)
            assert path, (key, p)
            assert path[-1][0] in ("node", "point-leaf", "unresolved-leaf", "leaf")


def _skewed_radical_algebra():
    """Over Z[d]: basis e, s, w with s^2 = e and w = (nilpotent) + d*s, so
    the generic radical is the line (0, -d, 1) and the quotient projection
    carries 1/d denominators."""
    from decompgen.algebra import load_algebra

    text = """
algebra Skew
ring Z[d]
basis e s w
unit 1, 0, 0
mul 0 0 0 1
mul 0 1 1 1
mul 0 2 2 1
mul 1 0 1 1
mul 2 0 2 1
mul 1 1 0 1
mul 1 2 0 d
mul 1 2 1 -d
mul 1 2 2 1
mul 2 1 0 d
mul 2 1 1 -d
mul 2 1 2 1
mul 2 2 0 d^2
mul 2 2 1 -2*d^2
mul 2 2 2 2*d
"""
    return load_algebra(text)


def test_two_variable_radical_lattice_with_denominators():
    A = _skewed_radical_algebra()
    lat = radical_lattice(A)
    assert lat.rank == 1 and not lat.saturated
    # cleared primitive generator of the radical line (0, -d, 1)
    coords = [str(c) for c in lat.rows[0]]
    assert coords in (["0", "-d", "1"], ["0", "d", "-1"])
    g = candidate_discriminant(A)
    # the projection denominator d must be absorbed into the candidate
    assert not g.is_zero()
    from decompgen.primes import contains, prime_spec as _ps

    pd = _ps(Zd, [Zd.parse("d")])
    assert contains(pd, g)
    dec = dec_ex(A)
    assert sorted(pt.prime.short_str() for pt in dec.excluded) == ["(2)"]
    # at (d) the radical stays one-dimensional: recovered, not excluded
    recovered = {pt.prime.short_str() for pt in dec.recovered}
    assert "(d)" in recovered
    assert not dec.unknown


def test_stratify_b3_over_zd_resolves_char_p_legs():
    """The regular trace form of B3's semisimple quotient vanishes over
    GF(2)(d) and GF(3)(d); the character-form fallback must still resolve
    those legs into verified strata."""
    from decompgen.corpus import brauer_algebra

    B3 = brauer_algebra(3, Zd)
    tree = stratify(B3)
    assert {pt.prime.short_str() for pt, _ in tree.children} == {
        "(2)", "(3)", "(d + 2)", "(d - 1)"}
    by_prime = {pt.prime.short_str(): child for pt, child in tree.children}
    leg2 = by_prime["(2)"]
    assert leg2.kind == "node"
    assert {pt.prime.short_str() for pt, _ in leg2.children} == {"(d)", "(d + 1)"}
    leg3 = by_prime["(3)"]
    assert leg3.kind == "node"
    assert {pt.prime.short_str() for pt, _ in leg3.children} == {"(d + 2)"}
    for child in by_prime.values():
        for _, leaf in child.children:
            assert leaf.kind == "point-leaf"


def test_monotone_invariant_along_chains(corpus):
    """Radical dimension can only grow along specialization chains."""
    B2Z = corpus["B2_Z"]
    chains = [
        ([], [Zd.from_int(2)], [Zd.from_int(2), Zd.parse("d")]),
        ([], [Zd.parse("d")], [Zd.from_int(2), Zd.parse("d")]),
        ([], [Zd.parse("d - 1")], [Zd.from_int(3), Zd.parse("d - 1")]),
        ([], [Zd.from_int(5)], [Zd.from_int(5), Zd.parse("d - 2")]),
    ]
    for chain in chains:
        dims = []
        for gens in chain:
            p = prime_spec(Zd, list(gens))
            ev = dec_gen_membership(B2Z, p)
            dims.append(ev.fiber_radical_dim)
        assert dims == sorted(dims), chain


def test_soundness_outside_candidate(corpus):
    """Sampled primes avoiding the candidate discriminant are trivial."""
    rng = random.Random(123)
    for key in ("ZC2", "ZS3", "Mat2_Z", "B2_Z", "TL2_Z"):
        A = corpus[key]
        g = candidate_discriminant(A)
        primes = _random_primes_z(rng, 40) if A.ring == Z else _random_primes_zd(rng, 40)
        tested = 0
        for p in primes:
            if contains(p, g):
                continue
            assert dec_gen_membership(A, p).trivial, (key, p)
            tested += 1
            if tested >= 10:
                break
        assert tested >= 5, key
