"""Decomposition matrices between the generic fiber and special fibers.

The matrix is computed entirely at the fingerprint level: reduce the
fingerprint of each generic simple coefficientwise, then solve for the
multiplicities of the fiber simples' fingerprints inside it.  The linear
system lives over a gcd-free basis of all involved polynomials, so no
factorization over the residue field is ever needed, and injectivity of the
fingerprint map makes the solution unique.

Triviality (the matrix being a permutation matrix) is equivalent to the
radical dimension staying constant from the generic fiber, which gives the
cheap test; verification mode computes both and insists they agree.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import NoIntegerSolution, NotSplit
from .fields import Rationals
from .fingerprints import fingerprint_of_simple, reduce_fingerprint
from .linalg import gcd_free_basis, rref_rows
from .algebra import restrict, specialize
from .modules import is_split
from .primes import contains, prime_spec


def split_data(A, seed=1):
    """Cached Wedderburn data of the generic fiber; NotSplit if it fails."""
    cache = getattr(A, "_split_cache", None)
    if cache is None or cache[0] != seed:
        fiber = A.generic_fiber()
        ok, wd = is_split(fiber, seed=seed)
        cache = (seed, ok, wd)
        A._split_cache = cache
    _, ok, wd = cache
    if not ok:
        raise NotSplit(f"the generic fiber of {A.name} does not split")
    return wd


def fiber_split_data(A, p, seed=1):
    fiber = specialize(A, p)
    ok, wd = is_split(fiber, seed=seed)
    if not ok:
        raise NotSplit(f"the fiber of {A.name} at {p.short_str()} does not split")
    return wd


@dataclass(frozen=True)
class GrothendieckVector:
    """Integer coordinates in the basis of simple-module classes of a fiber.

    An honest (non-virtual) module class has nonnegative coordinates."""

    fiber_fingerprints: tuple  # identifies the simple basis
    coords: tuple

    @property
    def is_effective(self):
        return all(c >= 0 for c in self.coords)

    def total_dim(self):
        return sum(c * fp.module_dim for c, fp in zip(self.coords, self.fiber_fingerprints))


@dataclass
class DecompositionMatrix:
    algebra_name: str
    prime: object
    entries: tuple             # rows: generic simples, cols: fiber simples
    row_dims: tuple
    col_dims: tuple
    generic_fingerprints: tuple
    fiber_fingerprints: tuple

    @property
    def nrows(self):
        return len(self.entries)

    @property
    def ncols(self):
        return len(self.entries[0]) if self.entries else 0

    def column_is_zero(self, j):
        return all(row[j] == 0 for row in self.entries)

    def row_class(self, i):
        """The image of the i-th generic simple as a Grothendieck vector."""
        return GrothendieckVector(self.fiber_fingerprints, self.entries[i])

    def __repr__(self):
        body = "; ".join(" ".join(str(c) for c in r) for r in self.entries)
        return f"[{body}] at {self.prime.short_str()}"


def decomposition_matrix(A, p, seed=1):
    """Multiplicities of the fiber simples in the reductions of the generic
    simples, solved from the fingerprint multiplicity system."""
    wk = split_data(A, seed)
    wf = fiber_split_data(A, p, seed)
    generic_fps = [fingerprint_of_simple(s) for s in wk.simples]
    fiber_fps = [fingerprint_of_simple(s) for s in wf.simples]
    reduced = [reduce_fingerprint(fp, p) for fp in generic_fps]
    F = p.residue_field
    n = A.dim
    pool = []
    for fp in fiber_fps:
        pool.extend(fp.polys)
    for fp in reduced:
        pool.extend(fp.polys)
    basis = gcd_free_basis(F, pool)
    ncols = len(fiber_fps)
    # multiplicities are aligned with the pool order above
    t = len(basis.basis)
    fiber_mults = []
    for j in range(ncols):
        fiber_mults.append([basis.mults[j * n + k] for k in range(n)])
    offset = ncols * n
    reduced_mults = []
    for i in range(len(reduced)):
        reduced_mults.append([basis.mults[offset + i * n + k] for k in range(n)])

    QQ = Rationals()
    entries = []
    for i in range(len(reduced)):
        mat_rows = []
        rhs = []
        for k in range(n):
            for g in range(t):
                mat_rows.append([Fraction(fiber_mults[j][k][g]) for j in range(ncols)])
                rhs.append(Fraction(reduced_mults[i][k][g]))
        aug = [row + [b] for row, b in zip(mat_rows, rhs)]
        sol_rows, pivots = rref_rows(QQ, aug)
        if ncols in pivots:
            raise NoIntegerSolution(
                f"fingerprint system for simple {i} of {A.name} at {p.short_str()} is inconsistent")
        if len([pj for pj in pivots if pj < ncols]) != ncols:
            raise NoIntegerSolution(
                f"fingerprint system for simple {i} of {A.name} at {p.short_str()} is underdetermined")
        d = [QQ.zero] * ncols
        for r, pj in zip(sol_rows, pivots):
            d[pj] = r[ncols]
        if any(x.denominator != 1 or x < 0 for x in d):
            raise NoIntegerSolution(
                f"multiplicities {d} are not nonnegative integers")
        drow = tuple(int(x) for x in d)
        if sum(m * wf.simples[j].dim for j, m in enumerate(drow)) != wk.simples[i].dim:
            raise NoIntegerSolution(
                f"dimension bookkeeping fails in row {i} at {p.short_str()}")
        entries.append(drow)
    return DecompositionMatrix(
        A.name, p, tuple(entries),
        tuple(s.dim for s in wk.simples), tuple(s.dim for s in wf.simples),
        tuple(generic_fps), tuple(fiber_fps))


def is_trivial(D):
    """True exactly for permutation matrices."""
    if D.nrows != D.ncols:
        return False
    for row in D.entries:
        if sorted(row) != [0] * (D.ncols - 1) + [1]:
            return False
    for j in range(D.ncols):
        col = [row[j] for row in D.entries]
        if sorted(col) != [0] * (D.nrows - 1) + [1]:
            return False
    return True


def triviality_by_radical(A, p, seed=1):
    """dim Jac(generic fiber) == dim Jac(fiber at p), both sides split."""
    wk = split_data(A, seed)
    wf = fiber_split_data(A, p, seed)
    return wk.radical_dim == wf.radical_dim


@dataclass
class TrivialityEvidence:
    trivial: bool
    generic_radical_dim: int
    fiber_radical_dim: int
    matrix: object = None
    matrix_agrees: bool = None


def dec_gen_membership(A, p, seed=1, verify=False):
    """Triviality of the decomposition map at p via the radical criterion;
    with verify=True the matrix is computed as well and must agree."""
    wk = split_data(A, seed)
    wf = fiber_split_data(A, p, seed)
    trivial = wk.radical_dim == wf.radical_dim
    ev = TrivialityEvidence(trivial, wk.radical_dim, wf.radical_dim)
    if verify:
        D = decomposition_matrix(A, p, seed=seed)
        ev.matrix = D
        ev.matrix_agrees = is_trivial(D) == trivial
        if not ev.matrix_agrees:
            raise NoIntegerSolution(
                f"radical criterion and matrix disagree for {A.name} at {p.short_str()}")
    return ev


def composability_report(A, p, q, seed=1):
    """Whether the map at q factors as (map of the restriction at q/p) after
    (map at p).  Reported, never asserted: the factorization is not a
    theorem.  Returns a dict with a status and, when computable, the verdict.
    """
    for g in p.generators:
        if not contains(q, g):
            return {"status": "not-a-chain", "holds": None}
    try:
        D_p = decomposition_matrix(A, p, seed=seed)
        D_q = decomposition_matrix(A, q, seed=seed)
        B = restrict(A, p)
        qbar_gens = []
        for g in q.generators:
            h = _push_generator(A, p, g, B)
            if h is not None and not h.is_zero():
                qbar_gens.append(h)
        qbar = prime_spec(B.ring, qbar_gens)
        D_rest = decomposition_matrix(B, qbar, seed=seed)
    except Exception as e:  # reported, not raised: unsupported legs happen
        return {"status": f"unsupported: {e}", "holds": None}
    # the restriction's generic fiber is the fiber at p with the same table,
    # so the simple orders agree exactly when the fingerprints agree
    mid_match = tuple(fp.polys for fp in D_p.fiber_fingerprints) == tuple(
        fp.polys for fp in D_rest.generic_fingerprints)
    end_match = tuple(fp.polys for fp in D_q.fiber_fingerprints) == tuple(
        fp.polys for fp in D_rest.fiber_fingerprints)
    if not (mid_match and end_match):
        return {"status": "incomparable-bases", "holds": None}
    prod = []
    for i in range(len(D_p.entries)):
        prod.append(tuple(
            sum(D_p.entries[i][j] * D_rest.entries[j][k] for j in range(len(D_rest.entries)))
            for k in range(len(D_rest.entries[0]))))
    holds = tuple(prod) == D_q.entries
    return {"status": "computed", "holds": holds,
            "D_p": D_p, "D_q": D_q, "D_rest": D_rest}


def _push_generator(A, p, g, B):
    """Image of a generator of q in the restricted ring R/p."""
    from .primes import ring_quotient

    cur = A.ring
    maps = []
    for gen in p.generators:
        h = gen
        for m in maps:
            h = m(h)
        if h.is_zero():
            continue
        cur, m = ring_quotient(cur, h)
        maps.append(m)
    out = g
    for m in maps:
        out = m(out)
    return out
