"""Radical lattices, the decomposition discriminant, Schur elements and the
recursive stratification of the base spectrum.

The discriminant candidate is the trace-Gram certificate: clear the generic
radical into an integral lattice J, form the quotient algebra B = A/J on a
complement basis, and take g = det(regular trace form of B) times the gcd
of the maximal minors of J's basis matrix.  Outside V(g) the reduced
lattice keeps its dimension and B's fiber is semisimple, so the fiber
radical equals the reduced lattice and has the generic dimension.  The
candidate over-approximates: each of its minimal primes is then verified
exactly by the radical-dimension criterion and recorded as Excluded or
RecoveredTrivial.  Excluded components seed the recursion on restricted
algebras; maximal points are singleton strata and stop it.
"""

from dataclasses import dataclass, field

from . import polyops as P
from .errors import (
    EngineError,
    NotSemisimpleGeneric,
    NotSplit,
    NotSymmetric,
    UnsupportedError,
    UnsupportedRestriction,
)
from .algebra import FiberAlgebra, restrict, span_subspace
from .decomposition import fiber_split_data, split_data
from .factor import factor_integer, factor_univariate, factor_zx_primitive
from .fields import IntegerOps, Rationals
from .linalg import Matrix, det, rref_rows, saturate_rows, unimodular_complement
from .modules import regular_trace_gram
from .primes import (
    contains,
    numerator_denominator_in_ring,
    prime_spec,
    reduce_elem,
    ring_quotient,
)
from .rings import EuclideanRing, RingElement, is_unit, normalize_generator, ring_gcd


@dataclass
class RadicalLattice:
    algebra: object
    rows: tuple          # RingElement coordinate vectors spanning J over R
    saturated: bool
    generic_dim: int

    @property
    def rank(self):
        return len(self.rows)


def _clear_row(ring, K, row):
    """Fraction-field row vector to a ring vector spanning the same line."""
    if ring.nv == 0 and not ring.is_field_ring:
        from math import lcm

        den = 1
        for c in row:
            den = lcm(den, c.denominator)
        return [ring.from_int(int(c * den)) for c in row]
    if ring.is_field_ring:
        return [ring.from_coeff(c) for c in row]
    out_nd = [numerator_denominator_in_ring(c, ring) for c in row]
    acc = ring.one()
    for _, d in out_nd:
        g = ring_gcd(acc, d)
        q = _ring_exact(acc * d, g)
        acc = q
    out = []
    for (nu, de), c in zip(out_nd, row):
        mult = _ring_exact(acc, de)
        out.append(nu * mult)
    return out


def _ring_exact(a, b):
    from .rings import ring_exact_div

    q = ring_exact_div(a, b)
    if q is None:
        raise EngineError("expected exact ring division")
    return q


def radical_lattice(A, seed=1):
    """Integral form of the generic radical: denominators cleared, and over
    Z and k[x] Hermite-saturated so the quotient is torsion free."""
    from .modules import radical

    fiber = A.generic_fiber()
    rad = radical(fiber, seed=seed)
    ring = A.ring
    K = fiber.field
    cleared = [_clear_row(ring, K, list(row)) for row in rad.rows]
    if not cleared:
        return RadicalLattice(A, (), True, 0)
    if ring.is_euclidean:
        E = EuclideanRing(ring)
        reps = [[E.to_rep(c) for c in row] for row in cleared]
        sat = saturate_rows(E, K, reps,
                            lambda a: ring.to_field(E.from_rep(a), K),
                            lambda frow: [E.to_rep(r) for r in _clear_row(ring, K, frow)])
        rows = tuple(tuple(E.from_rep(c) for c in row) for row in sat)
        lat = RadicalLattice(A, rows, True, rad.dim)
    else:
        prim = []
        for row in cleared:
            g = row[0].ring.zero()
            for c in row:
                g = ring_gcd(g, c)
            if not is_unit(g) and not g.is_zero():
                row = [_ring_exact(c, g) for c in row]
            prim.append(tuple(row))
        lat = RadicalLattice(A, tuple(prim), False, rad.dim)
    _assert_lattice(A, lat, rad)
    return lat


def _assert_lattice(A, lat, generic_radical):
    """The cleared lattice spans the generic radical and is closed, at the
    level of its fraction-field span, under both one-sided multiplications."""
    fiber = A.generic_fiber()
    K = fiber.field
    rows_K = [[A.ring.to_field(c, K) for c in row] for row in lat.rows]
    span = span_subspace(fiber, rows_K)
    if span.dim != generic_radical.dim or span != generic_radical:
        raise EngineError("integral radical lattice does not span the generic radical")
    for row in rows_K:
        for i in range(fiber.dim):
            b = fiber.basis_vector(i)
            if not generic_radical.contains_vector(fiber.vec_mul(b, row)):
                raise EngineError("radical lattice is not stable under left multiplication")
            if not generic_radical.contains_vector(fiber.vec_mul(row, b)):
                raise EngineError("radical lattice is not stable under right multiplication")


def _minor_gcd(A, lat):
    """Gcd of the rank-sized minors of the lattice basis matrix; detects the
    codimension-one locus where the reduced lattice drops dimension."""
    from itertools import combinations

    ring = A.ring
    r = lat.rank
    if r == 0:
        return ring.one()
    K = A.ring.fraction_field()
    acc = ring.zero()
    cols = range(A.dim)
    for sel in combinations(cols, r):
        sub = [[ring.to_field(lat.rows[i][j], K) for j in sel] for i in range(r)]
        d = det(Matrix(K, sub))
        elem = ring.from_field_scalar(d, K)
        if elem is None:
            raise EngineError("minor of an integral matrix escaped the ring")
        acc = ring_gcd(acc, elem)
        if is_unit(acc):
            break
    return acc


def quotient_over_ring(A, lat, seed=1):
    """Structure constants of B = A/J on a complement basis, as a fiber over
    the fraction field, together with the product of every denominator that
    entered the projection.

    Over Euclidean rings the complement completes a saturated lattice to a
    unimodular basis, so the constants are integral and the denominator
    product is 1.  Over two-variable rings the echelon projection can
    introduce denominators; the certificate is only valid where they are
    invertible, so the caller absorbs the product into the discriminant.
    """
    from .primes import denominator_ideal as _den

    fiber = A.generic_fiber()
    K = fiber.field
    ring = A.ring
    n = A.dim
    one = ring.one()
    if lat.rank == 0:
        return fiber, one
    rows_K = [[ring.to_field(c, K) for c in row] for row in lat.rows]
    if ring.is_euclidean:
        E = EuclideanRing(ring)
        comp = unimodular_complement(E, [[E.to_rep(c) for c in row] for row in lat.rows])
        comp_K = [[ring.to_field(E.from_rep(c), K) for c in row] for row in comp]
    else:
        comp_K = []
        _, pivots0 = rref_rows(K, rows_K)
        for j in range(n):
            if j not in pivots0:
                e = [K.zero] * n
                e[j] = K.one
                comp_K.append(e)
    span_rows, _ = rref_rows(K, rows_K)
    pivots = [next(k for k, c in enumerate(row) if not K.is_zero(c)) for row in span_rows]

    def project(vec):
        work = list(vec)
        for row, pj in zip(span_rows, pivots):
            if not K.is_zero(work[pj]):
                f = work[pj]
                work = [K.sub(a, K.mul(f, b)) for a, b in zip(work, row)]
        return work

    basis_t = Matrix(K, comp_K).transpose()
    from .linalg import solve

    m = len(comp_K)
    denoms = one
    seen = set()

    def absorb(scalar):
        nonlocal denoms
        d = _den(scalar, ring)
        if not is_unit(d):
            key = str(d)
            if key not in seen:
                seen.add(key)
                denoms = denoms * d

    sc = [[[K.zero] * m for _ in range(m)] for _ in range(m)]
    for a in range(m):
        for b in range(m):
            prod = project(fiber.vec_mul(list(comp_K[a]), list(comp_K[b])))
            coeffs = solve(basis_t, prod)
            for c in range(m):
                sc[a][b][c] = coeffs[c]
                absorb(coeffs[c])
    unit = solve(basis_t, project(list(fiber.unit)))
    for c in unit:
        absorb(c)
    for row in span_rows:
        for c in row:
            absorb(c)
    names = tuple(f"q{i}" for i in range(m))
    B = FiberAlgebra(K, names, tuple(tuple(tuple(r) for r in p) for p in sc),
                     unit, (A.name + "/J", None), validate=False)
    return B, denoms


def candidate_discriminant(A, seed=1):
    """Ring element g with: outside V(g) the fiber radical dimension equals
    the generic one.

    The primary certificate is the regular trace form of B = A/J.  In
    characteristic p that form can vanish identically on a semisimple
    algebra (every matrix block of size divisible by p); the sum of the
    simple characters then takes over: on a split semisimple algebra it
    restricts to the plain matrix trace on each block, so its Gram
    determinant is never zero, and it still kills the radical of every
    fiber.  Returns the zero element only when both degenerate (a non-split
    quotient, which the verification stage would reject anyway)."""
    lat = radical_lattice(A, seed=seed)
    ring = A.ring
    B, denoms = quotient_over_ring(A, lat, seed=seed)
    gram = regular_trace_gram(B)
    d = det(gram)
    K = B.field
    if K.is_zero(d):
        d = _character_gram_det(B, seed)
        if d is None or K.is_zero(d):
            return ring.zero()
    if ring.is_field_ring:
        return ring.one()
    num, den = numerator_denominator_in_ring(d, ring)
    g = num * den * denoms * _minor_gcd(A, lat)
    return normalize_generator(g)


def _character_gram_det(B, seed):
    """Determinant of G[i][j] = sum over simples of trace(b_i b_j acting);
    None when the quotient cannot be chopped."""
    from .errors import ChopBudgetExceeded
    from .modules import chop, regular_module

    K = B.field
    try:
        factors = chop(regular_module(B), seed=seed)
    except ChopBudgetExceeded:
        return None
    acts = [[s.module.action[i] for i in range(B.dim)] for s, _ in factors]
    n = B.dim
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = K.zero
            for mats in acts:
                acc = K.add(acc, mats[i].mul(mats[j]).trace())
            row.append(acc)
        rows.append(row)
    return det(Matrix(K, rows))


# --- minimal primes -----------------------------------------------------------------

@dataclass(frozen=True)
class UnresolvedPrime:
    generator: object
    reason: str

    def short_str(self):
        return f"({self.generator})?"


def minimal_primes(g, seed=1):
    """Minimal primes over V(g) as PrimeSpecs, with UnresolvedPrime markers
    for components whose primality or residue field is out of scope."""
    if g.is_zero():
        raise ValueError("the zero ideal has no minimal-prime decomposition here")
    ring = g.ring
    if is_unit(g) or ring.is_field_ring:
        return []
    out = []

    def add(elem):
        try:
            out.append(prime_spec(ring, [elem]))
        except UnsupportedError as e:
            out.append(UnresolvedPrime(elem, str(e)))

    coeff = ring.coeff
    if isinstance(coeff, IntegerOps) and ring.nv == 0:
        for prime, _ in factor_integer(abs(g.const_value()))[1]:
            add(ring.from_int(prime))
    elif isinstance(coeff, IntegerOps):
        _, pairs = factor_zx_primitive(g, seed)
        for f, _ in pairs:
            add(f)
    elif ring.nv == 1:
        _, pairs = factor_univariate(g, seed)
        for f, _ in pairs:
            add(f)
    else:
        out.extend(_minimal_primes_bivariate(g, seed))
    uniq = []
    seen = set()
    for item in out:
        key = item.signature if hasattr(item, "signature") else ("?", str(item.generator))
        if key not in seen:
            seen.add(key)
            uniq.append(item)
    uniq.sort(key=lambda it: str(it.signature) if hasattr(it, "signature") else str(it.generator))
    return uniq


def _minimal_primes_bivariate(g, seed):
    """Irreducible components over k[x,y]: univariate content factors plus
    squarefree primitive factors certified irreducible where degrees allow."""
    ring = g.ring
    coeff = ring.coeff
    out = []

    def add(elem):
        try:
            out.append(prime_spec(ring, [elem]))
        except UnsupportedError as e:
            out.append(UnresolvedPrime(elem, str(e)))

    work = g.data
    for main in (1, 0):
        cont = P._content_in(coeff, work, main) if P.pdeg_in(work, main) > 0 else None
        if cont and P.pdeg(cont) > 0:
            uni = RingElement(ring, cont)
            sub = _univariate_in(ring, uni)
            if sub is not None:
                subring, subelem, var_index = sub
                _, pairs = factor_univariate(subelem, seed)
                for f, _ in pairs:
                    out_elem = RingElement(ring, tuple(
                        (_embed_exp(e[0], var_index), c) for e, c in f.data))
                    add(out_elem)
            work = P.pexact_div(coeff, work, cont)
    if P.pdeg(work) == 0:
        return out
    # squarefree split of the remaining primitive part
    pieces = []
    rest = RingElement(ring, work)
    for i in (0, 1):
        der = RingElement(ring, P.pderiv(coeff, rest.data, i))
        if der.is_zero():
            continue
        sf = ring_gcd(rest, der)
        if not is_unit(sf) and sf.total_degree() > 0:
            q = _ring_exact(rest, sf)
            pieces.extend(_split_coprime(q, sf))
            break
    else:
        pieces = [rest]
    if not pieces:
        pieces = [rest]
    for piece in pieces:
        if piece.total_degree() < 1:
            continue
        if _certify_irreducible_bivariate(piece):
            add(normalize_generator(piece))
            continue
        split = _split_quadratic_bivariate(piece)
        if split:
            for part in split:
                if _certify_irreducible_bivariate(part):
                    add(normalize_generator(part))
                else:
                    out.append(UnresolvedPrime(normalize_generator(part),
                                               "cannot certify a quadratic factor"))
        else:
            out.append(UnresolvedPrime(normalize_generator(piece),
                                       "cannot certify irreducibility in two variables"))
    return out


def _split_quadratic_bivariate(piece):
    """Factor a squarefree primitive quadratic-in-one-variable piece whose
    discriminant is a perfect square; None when not applicable."""
    ring = piece.ring
    coeff = ring.coeff
    if coeff.characteristic == 2:
        return None
    for main in (1, 0):
        if P.pdeg_in(piece.data, main) != 2:
            continue
        rec = P.p_rec(piece.data, main)
        a = P.pnorm(coeff, rec.get(2, ()))
        b = P.pnorm(coeff, rec.get(1, ()))
        c = P.pnorm(coeff, rec.get(0, ()))
        disc = P.psub(coeff, P.pmul(coeff, b, b),
                      P.pscale(coeff, P.pmul(coeff, a, c), coeff.from_int(4)))
        s = _sqrt_univariate(coeff, disc)
        if s is None:
            continue
        other = 1 - main
        two_a = P.pscale(coeff, a, coeff.from_int(2))
        factors = []
        for sign in (1, -1):
            shift = P.padd(coeff, b, P.pscale(coeff, s, coeff.from_int(sign)))
            # (2a) * v_main + (b +/- s), embedded back into two variables
            items = []
            for e1, cv in two_a:
                e = [0, 0]
                e[other] = e1[0]
                e[main] = 1
                items.append((tuple(e), cv))
            for e1, cv in shift:
                e = [0, 0]
                e[other] = e1[0]
                items.append((tuple(e), cv))
            f = RingElement(ring, P.pnorm(coeff, items))
            # strip the content in the main variable
            cont = P._content_in(coeff, f.data, main) if f.data else None
            if cont and P.pdeg(cont) > 0:
                f = _ring_exact(f, RingElement(ring, cont))
            factors.append(normalize_generator(f))
        prod = factors[0] * factors[1]
        target = normalize_generator(piece)
        if normalize_generator(prod) == target:
            return factors
        return None
    return None


def _sqrt_univariate(coeff, data):
    """Square root of a one-variable polynomial (given in two-variable form)
    when it is a perfect square, else None."""
    if P.pis_zero(data):
        return data
    dense = P.p_to_dense(coeff, data)
    if P.udeg(dense) % 2:
        return None
    if isinstance(coeff, Rationals):
        import math

        from .factor import factor_qq

        unit, pairs = factor_qq(dense)
        if unit < 0:
            return None
        num_r, den_r = math.isqrt(unit.numerator), math.isqrt(unit.denominator)
        if num_r * num_r != unit.numerator or den_r * den_r != unit.denominator:
            return None
        if any(m % 2 for _, m in pairs):
            return None
        from fractions import Fraction

        root = ((Fraction(num_r, den_r)),)
        for f, m in pairs:
            for _ in range(m // 2):
                root = P.umul(coeff, root, f)
        return P.p_from_dense(coeff, root)
    from .factor import _scalar_pow, factor_gf

    unit, pairs = factor_gf(coeff, dense)
    if any(m % 2 for _, m in pairs):
        return None
    q = coeff.size()
    u_root = None
    for cand in coeff.elements():
        if coeff.is_zero(coeff.sub(coeff.mul(cand, cand), unit)):
            u_root = cand
            break
    if u_root is None:
        return None
    root = (u_root,)
    for f, m in pairs:
        for _ in range(m // 2):
            root = P.umul(coeff, root, f)
    return P.p_from_dense(coeff, root)


def _split_coprime(a, b):
    """Refine {a, b} into pairwise coprime factors by repeated gcds."""
    work = [a, b]
    out = []
    guard = 0
    while work:
        guard += 1
        if guard > 500:
            raise EngineError("coprime refinement did not stabilize")
        f = work.pop()
        if f.total_degree() < 1:
            continue
        placed = False
        for i, g in enumerate(out):
            d = ring_gcd(f, g)
            if not is_unit(d) and d.total_degree() > 0:
                del out[i]
                work.extend([d, _ring_exact(g, d), _ring_exact(f, d)])
                placed = True
                break
        if not placed:
            out.append(f)
    return out


def _univariate_in(ring, elem):
    """(one-variable subring, image, variable index) when elem involves only
    one of the two variables."""
    from .rings import RingDescriptor

    for i in (0, 1):
        j = 1 - i
        if P.pdeg_in(elem.data, j) <= 0 and P.pdeg_in(elem.data, i) > 0:
            sub = RingDescriptor(ring.coeff, (ring.varnames[i],))
            data = tuple(((e[i],), c) for e, c in elem.data)
            return sub, RingElement(sub, data), i
    return None


def _embed_exp(k, var_index):
    e = [0, 0]
    e[var_index] = k
    return tuple(e)


def _certify_irreducible_bivariate(piece):
    """Primitive squarefree piece: linear in one variable is irreducible;
    a quadratic in one variable is tested by whether its discriminant is a
    square (characteristic not 2).  Everything else is declined."""
    ring = piece.ring
    coeff = ring.coeff
    uni = _univariate_in(ring, piece)
    if uni is not None:
        _, sub, _ = uni
        _, pairs = factor_univariate(sub)
        return len(pairs) == 1 and pairs[0][1] == 1
    for main in (1, 0):
        dmain = P.pdeg_in(piece.data, main)
        if dmain == 1:
            rec = P.p_rec(piece.data, main)
            a = rec.get(1, ())
            b = rec.get(0, ())
            gd = P.ugcd(coeff, P.p_to_dense(coeff, P.pnorm(coeff, a)),
                        P.p_to_dense(coeff, P.pnorm(coeff, b)))
            return P.udeg(gd) == 0
        if dmain == 2 and coeff.characteristic != 2:
            rec = P.p_rec(piece.data, main)
            a = P.pnorm(coeff, rec.get(2, ()))
            b = P.pnorm(coeff, rec.get(1, ()))
            c = P.pnorm(coeff, rec.get(0, ()))
            disc = P.psub(coeff, P.pmul(coeff, b, b),
                          P.pscale(coeff, P.pmul(coeff, a, c), coeff.from_int(4)))
            if not _is_square_univariate(coeff, disc):
                return True
            return False
    return False


def _is_square_univariate(coeff, data):
    """Whether a one-variable polynomial (possibly constant) is a square."""
    if P.pis_zero(data):
        return True
    dense = P.p_to_dense(coeff, data)
    if P.udeg(dense) % 2:
        return False
    if isinstance(coeff, Rationals):
        from .factor import factor_qq

        unit, pairs = factor_qq(dense)
        import math

        if unit < 0 or not math.isqrt(unit.numerator) ** 2 == unit.numerator \
                or not math.isqrt(unit.denominator) ** 2 == unit.denominator:
            return False
        return all(m % 2 == 0 for _, m in pairs)
    from .factor import factor_gf

    unit, pairs = factor_gf(coeff, dense)
    if any(m % 2 for _, m in pairs):
        return False
    # the unit must be a square in GF(q)
    q = coeff.size()
    if q % 2 == 0:
        return True
    from .factor import _scalar_pow

    test = _scalar_pow(coeff, unit, (q - 1) // 2)
    return coeff.is_zero(coeff.sub(test, coeff.one))


# --- the discriminant with exact verification ----------------------------------------

@dataclass
class DiscriminantPoint:
    prime: object          # PrimeSpec or UnresolvedPrime
    status: str            # Excluded | RecoveredTrivial | Unknown
    generic_radical_dim: int = None
    fiber_radical_dim: int = None
    reason: str = ""

    def short_str(self):
        return f"{self.prime.short_str()} {self.status}"


@dataclass
class Discriminant:
    algebra_name: str
    candidate: object      # RingElement, zero when degenerate
    points: list

    @property
    def excluded(self):
        return [pt for pt in self.points if pt.status == "Excluded"]

    @property
    def recovered(self):
        return [pt for pt in self.points if pt.status == "RecoveredTrivial"]

    @property
    def unknown(self):
        return [pt for pt in self.points if pt.status == "Unknown"]


def dec_ex(A, seed=1):
    """Candidate discriminant with every minimal prime verified pointwise by
    the exact radical-dimension criterion."""
    g = candidate_discriminant(A, seed=seed)
    if g.is_zero():
        return Discriminant(A.name, g, [DiscriminantPoint(
            UnresolvedPrime(g, "trace certificate degenerates"), "Unknown",
            reason="degenerate certificate")])
    wk = split_data(A, seed)
    points = []
    for item in minimal_primes(g, seed=seed):
        if isinstance(item, UnresolvedPrime):
            points.append(DiscriminantPoint(item, "Unknown", reason=item.reason))
            continue
        try:
            wf = fiber_split_data(A, item, seed=seed)
        except NotSplit as e:
            points.append(DiscriminantPoint(item, "Unknown", reason=str(e)))
            continue
        if wf.radical_dim == wk.radical_dim:
            points.append(DiscriminantPoint(item, "RecoveredTrivial",
                                            wk.radical_dim, wf.radical_dim))
        else:
            points.append(DiscriminantPoint(item, "Excluded",
                                            wk.radical_dim, wf.radical_dim))
    return Discriminant(A.name, g, points)


# --- Schur elements -------------------------------------------------------------------

def schur_elements(A, seed=1):
    """Schur elements of the generic simples of a symmetric algebra with
    split semisimple generic fiber, via the dual basis of the trace form.
    Validated nonzero and integral over the base ring."""
    if A.trace_vector is None:
        raise NotSymmetric(f"{A.name} carries no symmetrizing trace")
    gram_ring = A.trace_gram_ring()
    wd = split_data(A, seed)
    if wd.radical_dim != 0:
        raise NotSemisimpleGeneric(f"the generic fiber of {A.name} is not semisimple")
    fiber = A.generic_fiber()
    K = fiber.field
    n = A.dim
    gmat = Matrix(K, [[A.ring.to_field(gram_ring[i][j], K) for j in range(n)]
                      for i in range(n)])
    from .linalg import solve

    ginv_cols = []
    for j in range(n):
        e = [K.zero] * n
        e[j] = K.one
        ginv_cols.append(solve(gmat, e))
    # ginv_cols[j][k] = (G^-1)[k][j]; G is symmetric so indexing is forgiving
    out = []
    for s in wd.simples:
        chars = [s.module.action[k].trace() for k in range(n)]
        c = K.zero
        for k in range(n):
            dual_char = K.zero
            for l in range(n):
                dual_char = K.add(dual_char, K.mul(ginv_cols[k][l], chars[l]))
            c = K.add(c, K.mul(chars[k], dual_char))
        c = K.div(c, K.from_int(s.dim))
        if K.is_zero(c):
            raise EngineError(f"vanishing Schur element on a semisimple fiber of {A.name}")
        elem = A.ring.from_field_scalar(c, K)
        if elem is None:
            raise EngineError(f"Schur element {K.to_str(c)} of {A.name} escapes the base ring")
        out.append(elem)
    return out


def schur_discriminant_crosscheck(A, seed=1):
    """V(product of Schur elements) against the Excluded components of the
    verified discriminant, compared as canonical prime lists."""
    cs = schur_elements(A, seed=seed)
    prod = A.ring.one()
    for c in cs:
        prod = prod * c
    prod = normalize_generator(prod)
    schur_primes = minimal_primes(prod, seed=seed)
    dec = dec_ex(A, seed=seed)
    schur_sigs = sorted(p.signature for p in schur_primes if not isinstance(p, UnresolvedPrime))
    excl_sigs = sorted(pt.prime.signature for pt in dec.excluded
                       if not isinstance(pt.prime, UnresolvedPrime))
    return {
        "schur_elements": cs,
        "product": prod,
        "schur_primes": schur_primes,
        "discriminant": dec,
        "match": schur_sigs == excl_sigs and not dec.unknown
                 and not any(isinstance(p, UnresolvedPrime) for p in schur_primes),
    }


# --- stratification --------------------------------------------------------------------

@dataclass
class StratumNode:
    algebra_name: str
    ring: object
    kind: str                  # node | point-leaf | unresolved-leaf
    discriminant: object = None
    children: list = field(default_factory=list)   # (DiscriminantPoint, StratumNode|None)
    reason: str = ""

    def stratum_description(self):
        if self.kind == "point-leaf":
            return "the single point"
        if self.kind == "unresolved-leaf":
            return f"unresolved: {self.reason}"
        if self.discriminant is None or self.discriminant.candidate.is_zero():
            return "unresolved: degenerate certificate"
        excl = [pt.prime.short_str() for pt, _ in self.children]
        if not excl:
            return "all of Spec(R)"
        return "Spec(R) minus " + " and ".join(f"V{g}" for g in excl)


def stratify(A, seed=1, _depth=0):
    """Tree of restricted algebras whose trivial loci cover the spectrum.

    Children sit at the verified Excluded components; maximal points become
    singleton-stratum leaves (over a field the only decomposition map is the
    identity), unsupported restrictions and unverifiable components become
    unresolved leaves that the report surfaces rather than drops.
    """
    if _depth > 4:
        raise EngineError("stratification recursion exceeded the supported depth")
    if A.ring.is_field_ring:
        return StratumNode(A.name, A.ring, "point-leaf")
    try:
        dec = dec_ex(A, seed=seed)
    except NotSplit as e:
        return StratumNode(A.name, A.ring, "unresolved-leaf", reason=str(e))
    node = StratumNode(A.name, A.ring, "node", dec)
    if dec.candidate.is_zero():
        node.kind = "unresolved-leaf"
        node.reason = "degenerate certificate"
        return node
    for pt in dec.points:
        if pt.status == "RecoveredTrivial":
            continue
        if pt.status == "Unknown":
            node.children.append(
                (pt, StratumNode(A.name, A.ring, "unresolved-leaf", reason=pt.reason)))
            continue
        spec = pt.prime
        if spec.is_maximal_point:
            node.children.append((pt, StratumNode(
                f"{A.name}|{spec.short_str()}", None, "point-leaf")))
            continue
        try:
            B = restrict(A, spec)
        except UnsupportedRestriction as e:
            node.children.append(
                (pt, StratumNode(A.name, A.ring, "unresolved-leaf", reason=str(e))))
            continue
        node.children.append((pt, stratify(B, seed=seed, _depth=_depth + 1)))
    return node


def locate_stratum(node, A, p, path=()):
    """Deterministic stratum assignment of a prime: descend into the first
    child whose component contains it, else stay in the node stratum."""
    if node.kind != "node":
        return path + ((node.kind, node.algebra_name),)
    for pt, child in node.children:
        spec = pt.prime
        if isinstance(spec, UnresolvedPrime):
            member = contains_gen(p, spec.generator)
        else:
            member = all(contains(p, g) for g in spec.generators)
        if member:
            if child is None or child.kind != "node":
                return path + ((child.kind if child else "leaf", node.algebra_name,
                                spec.short_str()),)
            B = restrict(A, spec)
            pushed = _push_prime(A, spec, p)
            return locate_stratum(child, B, pushed,
                                  path + (("descend", spec.short_str()),))
    return path + (("node", node.algebra_name),)


def contains_gen(p, gen):
    return p.residue_field.is_zero(reduce_elem(gen, p))


def _push_prime(A, xi, p):
    """The prime p/xi of the restricted ring, for xi contained in p."""
    cur = A.ring
    maps = []
    for gen in xi.generators:
        h = gen
        for m in maps:
            h = m(h)
        if h.is_zero():
            continue
        cur, m = ring_quotient(cur, h)
        maps.append(m)
    gens = []
    for g in p.generators:
        h = g
        for m in maps:
            h = m(h)
        if not h.is_zero():
            gens.append(h)
    return prime_spec(cur, gens)


def tree_lines(node, indent=0):
    pad = "  " * indent
    out = []
    if node.kind == "point-leaf":
        out.append(f"{pad}point {node.algebra_name}: singleton stratum")
        return out
    if node.kind == "unresolved-leaf":
        out.append(f"{pad}unresolved {node.algebra_name}: {node.reason}")
        return out
    cand = node.discriminant.candidate
    out.append(f"{pad}{node.algebra_name} over {node.ring!r}: candidate ({cand}), "
               f"stratum = {node.stratum_description()}")
    for pt in node.discriminant.recovered:
        out.append(f"{pad}  recovered {pt.prime.short_str()} "
                   f"(radical {pt.fiber_radical_dim} = generic {pt.generic_radical_dim})")
    for pt, child in node.children:
        label = pt.prime.short_str() if not isinstance(pt.prime, UnresolvedPrime) else pt.prime.short_str()
        out.append(f"{pad}  at {label} [{pt.status}]:")
        out.extend(tree_lines(child, indent + 2))
    return out
