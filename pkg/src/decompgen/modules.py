"""Modules over fiber algebras: composition factors, radicals, splitting.

The chop follows the classical randomized recipe: spin up kernel vectors of
polynomial evaluations of random algebra elements to find proper submodules,
and certify simplicity either by the surjectivity-onto-End criterion (the
image of the algebra spans the full matrix ring exactly for split simples,
a pure rank computation that needs no factorization) or, over fields with
univariate factorization, by the standard two-sided kernel-spinning test
with a multiplicity-one irreducible factor.  Over function fields the
second route is unavailable; there the rank certificate plus the budget is
the engineering answer, and running out of budget is an error rather than a
wrong answer.

Random elements are integer-coefficient combinations of the basis drawn
from a growing window, so the same seed gives the same run over any field.
"""

import random
from dataclasses import dataclass

from . import polyops as P
from .errors import ChopBudgetExceeded, RadicalNotNilpotent
from .fields import FuncField
from .linalg import Matrix, char_poly, kernel_basis, rref_rows, solve
from .algebra import SubLattice, span_subspace


class AlgebraModule:
    """A module over a fiber algebra: one action matrix per basis element."""

    def __init__(self, fiber, action, validate=False):
        self.fiber = fiber
        self.action = action  # list of Matrix
        self.dim = action[0].nrows if action else 0
        if validate:
            self.validate()

    def validate(self):
        F = self.fiber.field
        n = self.fiber.dim
        ident = Matrix.identity(F, self.dim)
        acc = Matrix.zeros(F, self.dim, self.dim)
        for i in range(n):
            if not F.is_zero(self.fiber.unit[i]):
                acc = acc.add(self.action[i].scale(self.fiber.unit[i]))
        if acc != ident:
            raise RadicalNotNilpotent("unit does not act as the identity")
        for i in range(n):
            for j in range(n):
                lhs = self.action[i].mul(self.action[j])
                rhs = Matrix.zeros(F, self.dim, self.dim)
                for k in range(n):
                    c = self.fiber.sc[i][j][k]
                    if not F.is_zero(c):
                        rhs = rhs.add(self.action[k].scale(c))
                if lhs != rhs:
                    raise RadicalNotNilpotent("action does not respect the table")
        return self

    def act_element(self, coeffs):
        """Matrix of sum_i coeffs[i] b_i acting on the module."""
        F = self.fiber.field
        out = Matrix.zeros(F, self.dim, self.dim)
        for i, c in enumerate(coeffs):
            if not F.is_zero(c):
                out = out.add(self.action[i].scale(c))
        return out

    def char_polys(self):
        return tuple(char_poly(m) for m in self.action)

    def transpose_module(self):
        return AlgebraModule(self.fiber, [m.transpose() for m in self.action])

    def __repr__(self):
        return f"<module of dim {self.dim} over {self.fiber!r}>"


def regular_module(fiber):
    mats = [fiber.left_regular_matrix(fiber.basis_vector(i)) for i in range(fiber.dim)]
    return AlgebraModule(fiber, mats)


# --- spinning ----------------------------------------------------------------------

def spin(module, vectors):
    """Canonical echelon basis of the submodule generated by the vectors."""
    F = module.fiber.field
    rows = []
    pivots = []

    def reduce_vec(v):
        v = list(v)
        for row, pj in zip(rows, pivots):
            if not F.is_zero(v[pj]):
                c = v[pj]
                v = [F.sub(a, F.mul(c, b)) for a, b in zip(v, row)]
        return v

    queue = [list(v) for v in vectors]
    while queue:
        v = reduce_vec(queue.pop())
        pj = next((k for k, c in enumerate(v) if not F.is_zero(c)), None)
        if pj is None:
            continue
        inv = F.inv(v[pj])
        v = [F.mul(inv, c) for c in v]
        rows.append(v)
        pivots.append(pj)
        if len(rows) == module.dim:
            break
        for m in module.action:
            queue.append(m.apply(v))
    canon, _ = rref_rows(F, rows) if rows else ([], [])
    return canon


def submodule(module, rows):
    """Restriction of the action to the subspace spanned by echelon rows."""
    F = module.fiber.field
    basis_t = Matrix(F, rows).transpose()
    acts = []
    for m in module.action:
        cols = [solve(basis_t, m.apply(row)) for row in rows]
        acts.append(Matrix(F, [[cols[j][i] for j in range(len(rows))]
                               for i in range(len(rows))]))
    return AlgebraModule(module.fiber, acts)


def quotient_module(module, rows):
    """Action on the quotient by the subspace spanned by echelon rows."""
    F = module.fiber.field
    pivots = [next(k for k, c in enumerate(r) if not F.is_zero(c)) for r in rows]
    free = [j for j in range(module.dim) if j not in pivots]

    def project(v):
        v = list(v)
        for row, pj in zip(rows, pivots):
            if not F.is_zero(v[pj]):
                c = v[pj]
                v = [F.sub(a, F.mul(c, b)) for a, b in zip(v, row)]
        return [v[j] for j in free]

    acts = []
    for m in module.action:
        cols = []
        for j in free:
            e = [F.zero] * module.dim
            e[j] = F.one
            cols.append(project(m.apply(e)))
        acts.append(Matrix(F, [[cols[b][a] for b in range(len(free))]
                               for a in range(len(free))]))
    return AlgebraModule(module.fiber, acts)


# --- simplicity and the chop ---------------------------------------------------------

@dataclass
class SimpleModule:
    module: AlgebraModule
    fingerprint_polys: tuple

    @property
    def dim(self):
        return self.module.dim

    def sort_key(self):
        F = self.module.fiber.field
        return (self.dim, tuple((P.udeg(p), tuple(F.sort_key(c) for c in reversed(p)))
                                for p in self.fingerprint_polys))

    def __repr__(self):
        return f"<simple of dim {self.dim}>"


def algebra_image_rank(module):
    """Dimension of the image of the algebra in End(module)."""
    F = module.fiber.field
    flat = [[c for row in m.rows for c in row] for m in module.action]
    return len(rref_rows(F, flat)[0])


def hom_dim(S, T):
    """Dimension of the space of intertwiners S -> T."""
    F = S.fiber.field
    ds, dt = S.dim, T.dim
    rows = []
    for i in range(S.fiber.dim):
        ms, mt = S.action[i], T.action[i]
        # unknowns X[a][b], equation rows indexed by (c, b):
        # sum_a mt[c][a] X[a][b] - sum_k X[c][k] ms[k][b] = 0
        for c in range(dt):
            for b in range(ds):
                row = [F.zero] * (dt * ds)
                for a in range(dt):
                    row[a * ds + b] = F.add(row[a * ds + b], mt.rows[c][a])
                for k in range(ds):
                    row[c * ds + k] = F.sub(row[c * ds + k], ms.rows[k][b])
                rows.append(row)
    ker = kernel_basis(Matrix(F, rows)) if rows else []
    return len(ker)


def _field_can_factor(F):
    return not isinstance(F, FuncField)


def _charpoly_pieces(F, chi, seed):
    """Factors of the characteristic polynomial to take kernels of.

    Over fields with factorization: the honest irreducible factors, each
    tagged irreducible.  Over function fields: constant-coefficient
    polynomials factor over the constant field; otherwise squarefree gcd
    pieces are refined by exact polynomial-root extraction, leaving
    certified linear factors plus uncertified cofactors.
    """
    from .factor import (
        factor_gf,
        factor_qq,
        funcfield_polynomial_roots,
        squarefree_decomposition,
        squarefree_part_safe,
    )
    from .fields import GFExt, GFPrime, Rationals

    if isinstance(F, Rationals):
        _, pairs = factor_qq(chi)
        return [(f, True) for f, _ in pairs]
    if isinstance(F, (GFPrime, GFExt)):
        _, pairs = factor_gf(F, chi, seed)
        return [(f, True) for f, _ in pairs]
    base = F.base
    consts = _constant_projection(F, chi)
    if consts is not None:
        if isinstance(base, Rationals):
            _, pairs = factor_qq(consts)
        else:
            _, pairs = factor_gf(base, consts, seed)
        lift = lambda p: tuple(F.from_poly(P.pconst(base, F.nv, c)) for c in p)
        return [(lift(f), True) for f, _ in pairs]
    if F.characteristic == 0:
        pieces = [f for f, _ in squarefree_decomposition(F, chi)]
    else:
        pieces = [squarefree_part_safe(F, chi)]
    out = []
    for f in pieces:
        if P.udeg(f) >= 2 and F.nv == 1:
            for r in funcfield_polynomial_roots(F, f):
                lin = (F.neg(r), F.one)
                q, rem = P.udivmod(F, f, lin)
                if not rem:
                    out.append((lin, True))
                    f = q
        if P.udeg(f) >= 1:
            out.append((f, P.udeg(f) == 1))
    return out


def _constant_projection(F, chi):
    """Dense polynomial over the constant field when every coefficient of
    chi is constant, else None."""
    out = []
    for s in chi:
        num, den = s
        if not P.pis_const(den) or not P.pis_const(num):
            return None
        out.append(P.pconst_value(F.base, num))
    return tuple(out)


def _eval_poly(F, poly, X):
    n = X.nrows
    acc = Matrix.zeros(F, n, n)
    first = True
    for c in reversed(poly):
        if not first:
            acc = acc.mul(X)
        else:
            first = False
        if not F.is_zero(c):
            acc = acc.add(Matrix.identity(F, n).scale(c))
    return acc


def _split_or_certify(module, rng, attempts):
    """Either ('split', echelon rows of a proper submodule) or
    ('simple', None); raises ChopBudgetExceeded when nothing certifies."""
    F = module.fiber.field
    d = module.dim
    if d == 1:
        return ("simple", None)
    n = module.fiber.dim

    def try_vector(v):
        w = spin(module, [v])
        if 0 < len(w) < d:
            return w
        return None

    # standard basis vectors usually find obvious submodules
    for j in range(d):
        e = [F.zero] * d
        e[j] = F.one
        w = try_vector(e)
        if w:
            return ("split", w)
    if algebra_image_rank(module) == d * d:
        return ("simple", None)
    transpose = module.transpose_module()
    for j in range(d):
        e = [F.zero] * d
        e[j] = F.one
        wt = spin(transpose, [e])
        if 0 < len(wt) < d:
            comp = kernel_basis(Matrix(F, wt))
            if 0 < len(comp) < d:
                return ("split", spin(module, comp))
    can_factor = _field_can_factor(F)
    for attempt in range(attempts):
        window = 1 + attempt // 4
        coeffs = [F.from_int(rng.randint(-window, window)) for _ in range(n)]
        X = module.act_element(coeffs)
        chi = char_poly(X)
        pieces = _charpoly_pieces(F, chi, seed=attempt + 1)
        pieces.sort(key=lambda t: P.udeg(t[0]))
        for f, is_irred in pieces:
            if not is_irred and P.udeg(f) == P.udeg(chi):
                continue  # the whole polynomial: kernel is everything
            N = _eval_poly(F, f, X)
            ker = kernel_basis(N)
            if not ker:
                continue
            if len(ker) < d:
                for v in ker:
                    w = try_vector(v)
                    if w:
                        return ("split", w)
                kert = kernel_basis(N.transpose())
                for v in kert:
                    wt = spin(transpose, [v])
                    if 0 < len(wt) < d:
                        comp = kernel_basis(Matrix(F, wt))
                        return ("split", spin(module, comp))
            if is_irred and len(ker) == P.udeg(f):
                # kernel dimension equals deg f and every spin on both sides
                # filled the module (here or in the opening sweeps): Norton's
                # criterion certifies irreducibility
                return ("simple", None)
    raise ChopBudgetExceeded(
        f"could not split or certify a dim-{d} module over {F!r} in {attempts} attempts")


def chop(module, seed=1, attempts=80):
    """Composition factors with multiplicities, deduplicated by fingerprint
    and sorted canonically.  The multiset is seed-independent."""
    rng = random.Random(seed)
    leaves = []
    stack = [module]
    while stack:
        m = stack.pop()
        if m.dim == 0:
            continue
        verdict, data = _split_or_certify(m, rng, attempts)
        if verdict == "simple":
            leaves.append(m)
        else:
            rows = data
            stack.append(submodule(m, rows))
            stack.append(quotient_module(m, rows))
    grouped = {}
    for m in leaves:
        s = SimpleModule(m, m.char_polys())
        key = s.sort_key()
        if key in grouped:
            grouped[key] = (grouped[key][0], grouped[key][1] + 1)
        else:
            grouped[key] = (s, 1)
    return [grouped[k] for k in sorted(grouped)]


def is_isomorphic(S, T, cross_validate=False):
    """Fingerprint comparison; complete for certified simples over one fiber."""
    if S.module.fiber.field != T.module.fiber.field:
        return False
    same = S.dim == T.dim and S.fingerprint_polys == T.fingerprint_polys
    if cross_validate:
        hd = hom_dim(S.module, T.module)
        assert (hd > 0) == same, "fingerprint equality disagrees with Hom"
    return same


# --- radical and splitting -----------------------------------------------------------

def _regular_trace_vector(fiber):
    F = fiber.field
    out = []
    for k in range(fiber.dim):
        t = F.zero
        for j in range(fiber.dim):
            c = fiber.sc[k][j][j]
            if not F.is_zero(c):
                t = F.add(t, c)
        out.append(t)
    return out


def regular_trace_gram(fiber):
    """G[i][j] = trace of left multiplication by b_i b_j."""
    F = fiber.field
    n = fiber.dim
    tr = _regular_trace_vector(fiber)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = F.zero
            for k in range(n):
                c = fiber.sc[i][j][k]
                if not F.is_zero(c) and not F.is_zero(tr[k]):
                    acc = F.add(acc, F.mul(c, tr[k]))
            row.append(acc)
        rows.append(row)
    return Matrix(F, rows)


def radical(fiber, seed=1, simples=None):
    """Basis of the Jacobson radical as a canonical SubLattice.

    Characteristic zero: kernel of the regular trace form.  Characteristic
    p: intersection of the annihilators of the simple modules (the trace
    form can degenerate on semisimple algebras there).  The result is
    verified to be a nilpotent two-sided ideal.
    """
    F = fiber.field
    if F.characteristic == 0:
        ker = kernel_basis(regular_trace_gram(fiber))
    else:
        if simples is None:
            simples = [s for s, _ in chop(regular_module(fiber), seed=seed)]
        cols = []
        for s in simples:
            mats = s.module.action
            for a in range(s.dim):
                for b in range(s.dim):
                    cols.append([mats[i].rows[a][b] for i in range(fiber.dim)])
        ker = kernel_basis(Matrix(F, cols)) if cols else [list(v) for v in
                                                          Matrix.identity(F, fiber.dim).rows]
    lattice = span_subspace(fiber, ker)
    _assert_radical(fiber, lattice)
    return lattice


def _assert_radical(fiber, lattice):
    from .algebra import nilpotency_index

    for v in lattice.rows:
        for i in range(fiber.dim):
            b = fiber.basis_vector(i)
            if not lattice.contains_vector(fiber.vec_mul(b, list(v))):
                raise RadicalNotNilpotent("radical candidate is not a left ideal")
            if not lattice.contains_vector(fiber.vec_mul(list(v), b)):
                raise RadicalNotNilpotent("radical candidate is not a right ideal")
    if nilpotency_index(fiber, lattice) is None:
        raise RadicalNotNilpotent("radical candidate is not nilpotent")


@dataclass
class WedderburnData:
    fiber: object
    simples: list          # SimpleModule, canonical order
    multiplicities: list   # in the regular module of the semisimple quotient
    jh_multiplicities: list  # Jordan-Hoelder multiplicities in the full regular module
    endo_dims: list
    radical_dim: int

    @property
    def split(self):
        return all(e == 1 for e in self.endo_dims)

    def bookkeeping_ok(self):
        total = self.radical_dim + sum(
            m * s.dim for s, m in zip(self.simples, self.multiplicities))
        return total == self.fiber.dim


def is_split(fiber, seed=1):
    """(split?, WedderburnData) for a fiber algebra.

    The stored multiplicity of a simple is its multiplicity on top of the
    radical, dim S / dim End(S); only then does the Artin-Wedderburn count
    radical_dim + sum(mult * dim) = dim A close up.
    """
    factors = chop(regular_module(fiber), seed=seed)
    simples = [s for s, _ in factors]
    jh_mults = [m for _, m in factors]
    endo = [hom_dim(s.module, s.module) for s in simples]
    for s, e in zip(simples, endo):
        if s.dim % e:
            raise RadicalNotNilpotent(
                f"endomorphism dimension {e} does not divide module dimension {s.dim}")
    mults = [s.dim // e for s, e in zip(simples, endo)]
    rad = radical(fiber, seed=seed, simples=simples)
    data = WedderburnData(fiber, simples, mults, jh_mults, endo, rad.dim)
    if not data.bookkeeping_ok():
        raise RadicalNotNilpotent(
            f"dimension bookkeeping failed: radical {rad.dim}, "
            f"factors {[(s.dim, m) for s, m in factors]}, dim {fiber.dim}")
    return data.split, data
