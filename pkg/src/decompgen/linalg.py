"""Dense exact linear algebra over the engine's fields, plus lattice normal
forms over Z and k[x] and gcd-free bases of univariate polynomial families.

Everything is deterministic: no randomized pivoting, row echelon forms pick
the first usable pivot, so repeated runs produce identical output.  Matrices
are small (algebra dimensions stay below ~20), so the classical algorithms
are the right tool.
"""

from dataclasses import dataclass

from . import polyops as P
from .errors import DimensionMismatch, Inconsistent, NotSquare

class Matrix:
    __slots__ = ("field", "rows")

    def __init__(self, field, rows):
        self.field = field
        self.rows = [list(r) for r in rows]

    @classmethod
    def identity(cls, field, n):
        return cls(field, [[field.one if i == j else field.zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field, m, n):
        return cls(field, [[field.zero] * n for _ in range(m)])

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.field == other.field and self.rows == other.rows

    def __repr__(self):
        body = "; ".join(" ".join(self.field.to_str(c) for c in r) for r in self.rows)
        return f"[{body}]"

    def copy(self):
        return Matrix(self.field, self.rows)

    def transpose(self):
        return Matrix(self.field, [list(c) for c in zip(*self.rows)] if self.rows else [])

    def add(self, other):
        F = self.field
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionMismatch("matrix addition shape mismatch")
        return Matrix(F, [[F.add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c):
        F = self.field
        return Matrix(F, [[F.mul(c, a) for a in r] for r in self.rows])

    def mul(self, other):
        F = self.field
        if self.ncols != other.nrows:
            raise DimensionMismatch("matrix product shape mismatch")
        bt = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in bt:
                acc = F.zero
                for a, b in zip(r, c):
                    if not F.is_zero(a) and not F.is_zero(b):
                        acc = F.add(acc, F.mul(a, b))
                row.append(acc)
            out.append(row)
        return Matrix(F, out)

    def apply(self, vec):
        F = self.field
        out = []
        for r in self.rows:
            acc = F.zero
            for a, b in zip(r, vec):
                if not F.is_zero(a) and not F.is_zero(b):
                    acc = F.add(acc, F.mul(a, b))
            out.append(acc)
        return out

    def is_zero_matrix(self):
        F = self.field
        return all(F.is_zero(c) for r in self.rows for c in r)

    def trace(self):
        F = self.field
        if self.nrows != self.ncols:
            raise NotSquare("trace of a non-square matrix")
        t = F.zero
        for i in range(self.nrows):
            t = F.add(t, self.rows[i][i])
        return t


def rref_rows(field, rows):
    """Reduced row echelon form of a list of row vectors.

    Returns (rows, pivots): nonzero canonical rows and their pivot columns.
    The input list is not modified.
    """
    F = field
    rows = [list(r) for r in rows]
    m = len(rows)
    n = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for j in range(n):
        sel = None
        for i in range(r, m):
            if not F.is_zero(rows[i][j]):
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = F.inv(rows[r][j])
        rows[r] = [F.mul(inv, c) for c in rows[r]]
        for i in range(m):
            if i != r and not F.is_zero(rows[i][j]):
                f = rows[i][j]
                rows[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[i], rows[r])]
        pivots.append(j)
        r += 1
        if r == m:
            break
    return rows[:r], pivots


def rref(mat):
    rows, pivots = rref_rows(mat.field, mat.rows)
    n = mat.ncols
    full = rows + [[mat.field.zero] * n for _ in range(mat.nrows - len(rows))]
    return Matrix(mat.field, full), pivots


def rank(mat):
    return len(rref(mat)[1])


def kernel_basis(mat):
    """Canonical basis of {v : mat v = 0}, returned as a list of vectors."""
    F = mat.field
    rows, pivots = rref_rows(F, mat.rows) if mat.rows else ([], [])
    n = mat.ncols
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for j in free:
        v = [F.zero] * n
        v[j] = F.one
        for r, pj in zip(rows, pivots):
            v[pj] = F.neg(r[j])
        basis.append(v)
    if not basis:
        return []
    canon, _ = rref_rows(F, basis)
    return canon


def solve(mat, rhs):
    """One solution of mat x = rhs; raises Inconsistent when there is none."""
    F = mat.field
    if len(rhs) != mat.nrows:
        raise DimensionMismatch("right-hand side length mismatch")
    aug = [row + [b] for row, b in zip(mat.rows, rhs)]
    rows, pivots = rref_rows(F, aug)
    n = mat.ncols
    for r, pj in zip(rows, pivots):
        if pj == n:
            raise Inconsistent("linear system has no solution")
    x = [F.zero] * n
    for r, pj in zip(rows, pivots):
        x[pj] = r[n]
    return x


def det(mat):
    F = mat.field
    n = mat.nrows
    if n != mat.ncols:
        raise NotSquare("determinant of a non-square matrix")
    rows = [list(r) for r in mat.rows]
    sign = False
    d = F.one
    for j in range(n):
        sel = None
        for i in range(j, n):
            if not F.is_zero(rows[i][j]):
                sel = i
                break
        if sel is None:
            return F.zero
        if sel != j:
            rows[j], rows[sel] = rows[sel], rows[j]
            sign = not sign
        piv = rows[j][j]
        d = F.mul(d, piv)
        inv = F.inv(piv)
        for i in range(j + 1, n):
            if not F.is_zero(rows[i][j]):
                f = F.mul(rows[i][j], inv)
                rows[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[i], rows[j])]
    return F.neg(d) if sign else d


def char_poly(mat):
    """Monic characteristic polynomial via Hessenberg reduction.

    Returned as a dense univariate polynomial over the matrix field
    (coefficient tuple, constant term first).
    """
    F = mat.field
    if mat.nrows != mat.ncols:
        raise NotSquare("characteristic polynomial of a non-square matrix")
    return _hessenberg_charpoly(F, _hessenberg(F, mat.rows))


def _hessenberg(F, rows):
    n = len(rows)
    H = [list(r) for r in rows]
    for j in range(n - 2):
        sel = None
        for i in range(j + 1, n):
            if not F.is_zero(H[i][j]):
                sel = i
                break
        if sel is None:
            continue
        if sel != j + 1:
            H[j + 1], H[sel] = H[sel], H[j + 1]
            for row in H:
                row[j + 1], row[sel] = row[sel], row[j + 1]
        piv = H[j + 1][j]
        inv = F.inv(piv)
        for i in range(j + 2, n):
            if F.is_zero(H[i][j]):
                continue
            f = F.mul(H[i][j], inv)
            H[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(H[i], H[j + 1])]
            for row in H:
                row[j + 1] = F.add(row[j + 1], F.mul(f, row[i]))
    return H


def _hessenberg_charpoly(F, H):
    n = len(H)
    polys = [(F.one,)]  # char poly of the empty matrix
    for m in range(1, n + 1):
        x_minus = (F.neg(H[m - 1][m - 1]), F.one)
        pm = P.umul(F, x_minus, polys[m - 1])
        prod = F.one
        for i in range(m - 1, 0, -1):
            prod = F.mul(prod, H[i][i - 1])
            term = F.mul(H[i - 1][m - 1], prod)
            pm = P.usub(F, pm, P.uscale(F, polys[i - 1], term))
        polys.append(pm)
    out = polys[n]
    return out if out else (F.one,)


def eval_poly_at_matrix(field, poly, mat):
    """poly(mat) for a dense univariate poly; used by tests and the chop."""
    n = mat.nrows
    acc = Matrix.zeros(field, n, n)
    for c in reversed(poly):
        acc = acc.mul(mat) if acc.rows else acc
        acc = acc.add(Matrix.identity(field, n).scale(c))
    return acc


# --- Hermite normal form over Z and k[x] ---------------------------------------

@dataclass
class HermiteResult:
    basis: list       # nonzero canonical rows, adapter representation
    transform: list   # full unimodular transform, or None
    zero_transform: list  # transform rows mapping to zero (left kernel), or None


def hermite_normal_form(E, rows, transform=False):
    """Row Hermite normal form over a EuclideanRing adapter.

    rows: list of adapter-representation row vectors.  Pivots are canonical
    (positive over Z, monic over k[x]), entries above a pivot are reduced
    modulo it.  With transform=True the unimodular row transform is tracked.
    """
    work = [list(r) for r in rows]
    m = len(work)
    n = len(work[0]) if work else 0
    U = [[E.one if i == j else E.zero for j in range(m)] for i in range(m)] if transform else None
    r = 0
    for j in range(n):
        while True:
            live = [i for i in range(r, m) if not E.is_zero(work[i][j])]
            if not live:
                break
            sel = min(live, key=lambda i: (E.size(work[i][j]), i))
            if sel != r:
                work[r], work[sel] = work[sel], work[r]
                if U:
                    U[r], U[sel] = U[sel], U[r]
            piv = work[r][j]
            done = True
            for i in range(r + 1, m):
                if E.is_zero(work[i][j]):
                    continue
                q, rem = E.divmod(work[i][j], piv)
                work[i] = [E.sub(a, E.mul(q, b)) for a, b in zip(work[i], work[r])]
                if U:
                    U[i] = [E.sub(a, E.mul(q, b)) for a, b in zip(U[i], U[r])]
                if not E.is_zero(rem):
                    done = False
            if done:
                break
        if r < m and not E.is_zero(work[r][j]):
            u, _ = E.unit_normalize(work[r][j])
            if not E.is_zero(E.sub(u, E.one)):
                work[r] = [E.mul(u, a) for a in work[r]]
                if U:
                    U[r] = [E.mul(u, a) for a in U[r]]
            piv = work[r][j]
            for i in range(r):
                if E.is_zero(work[i][j]):
                    continue
                q, _ = E.divmod(work[i][j], piv)
                if E.is_zero(q):
                    continue
                work[i] = [E.sub(a, E.mul(q, b)) for a, b in zip(work[i], work[r])]
                if U:
                    U[i] = [E.sub(a, E.mul(q, b)) for a, b in zip(U[i], U[r])]
            r += 1
            if r == m:
                break
    basis = work[:r]
    return HermiteResult(basis, U, U[r:] if U else None)


def left_kernel_ring(E, rows):
    """Basis of {u over R : u . rows = 0}, canonical; rows in adapter reps."""
    res = hermite_normal_form(E, rows, transform=True)
    if not res.zero_transform:
        return []
    return hermite_normal_form(E, res.zero_transform).basis


def saturate_rows(E, field, rows, to_field, from_field):
    """Basis of (K-span of rows) intersected with R^n, in Hermite form.

    to_field / from_field convert between adapter representation and field
    scalars; from_field must clear denominators row-wise (it receives a full
    row).
    """
    if not rows:
        return []
    n = len(rows[0])
    frows = [[to_field(a) for a in row] for row in rows]
    ker = kernel_basis(Matrix(field, frows))
    if not ker:
        return hermite_normal_form(E, [_unit_row(E, n, i) for i in range(n)]).basis
    cleared = [from_field(v) for v in ker]
    cols = [list(c) for c in zip(*cleared)]
    return left_kernel_ring(E, cols)


def _unit_row(E, n, i):
    return [E.one if j == i else E.zero for j in range(n)]


def lattice_member(E, basis, vec):
    """Solve vec = sum q_i basis_i over R against a Hermite basis; returns
    the coefficient list or None."""
    v = list(vec)
    n = len(v)
    coeffs = []
    for row in basis:
        j = next((k for k in range(n) if not E.is_zero(row[k])), None)
        if j is None:
            coeffs.append(E.zero)
            continue
        q, rem = E.divmod(v[j], row[j])
        if not E.is_zero(rem):
            return None
        coeffs.append(q)
        v = [E.sub(a, E.mul(q, b)) for a, b in zip(v, row)]
    if any(not E.is_zero(a) for a in v):
        return None
    return coeffs


def unimodular_complement(E, basis):
    """For a saturated Hermite basis of rank r in R^n, vectors completing it
    to a basis of R^n (representatives of a free complement)."""
    if not basis:
        return None
    n = len(basis[0])
    r = len(basis)
    cols = [list(c) for c in zip(*basis)]  # n x r
    res = hermite_normal_form(E, cols, transform=True)
    if len(res.basis) != r:
        raise Inconsistent("saturated basis with deficient rank")
    for i, row in enumerate(res.basis):
        # pivots of a saturated lattice are units
        if E.is_zero(row[i]) or not E.is_zero(E.sub(E.unit_normalize(row[i])[1], E.one)):
            raise Inconsistent("lattice is not saturated")
    U = res.transform
    Uinv = _invert_unimodular(E, U)
    comp = []
    for i in range(r, n):
        comp.append([Uinv[k][i] for k in range(n)])
    return comp


def _invert_unimodular(E, U):
    n = len(U)
    aug = [row + _unit_row(E, n, i) for i, row in enumerate(U)]
    res = hermite_normal_form(E, aug)
    rows = res.basis
    if len(rows) != n:
        raise Inconsistent("transform is singular")
    # back-substitute to reduce the left block to the identity
    for i in range(n - 1, -1, -1):
        piv = rows[i][i]
        u, canon = E.unit_normalize(piv)
        if not E.is_zero(E.sub(canon, E.one)):
            raise Inconsistent("matrix is not unimodular")
        if not E.is_zero(E.sub(u, E.one)):
            rows[i] = [E.mul(u, a) for a in rows[i]]
        for k in range(i):
            q = rows[k][i]
            if E.is_zero(q):
                continue
            rows[k] = [E.sub(a, E.mul(q, b)) for a, b in zip(rows[k], rows[i])]
    return [row[n:] for row in rows]


# --- gcd-free bases --------------------------------------------------------------

@dataclass
class GcdFreeBasis:
    field: object
    basis: tuple      # pairwise coprime nonconstant monic dense polynomials
    units: tuple      # leading coefficients of the inputs
    mults: tuple      # one multiplicity vector per input, aligned with basis

    def reconstruct(self, i):
        F = self.field
        out = (self.units[i],)
        for g, m in zip(self.basis, self.mults[i]):
            for _ in range(m):
                out = P.umul(F, out, g)
        return out


def _upoly_key(F, p):
    return (P.udeg(p), tuple(F.sort_key(c) for c in reversed(p)))


def gcd_free_basis(field, polys):
    """Coarsest gcd-free refinement of a family of nonzero univariate
    polynomials, with squarefree splitting where derivatives allow it."""
    from .factor import squarefree_part_safe

    F = field
    units = tuple(p[-1] for p in polys)
    monics = [P.umonic(F, p) for p in polys]
    work = {m for m in monics if P.udeg(m) >= 1}
    for m in list(work):
        s = squarefree_part_safe(F, m)
        if P.udeg(s) >= 1:
            work.add(s)
    basis = []
    queue = sorted(work, key=lambda p: _upoly_key(F, p))
    guard = 0
    while queue:
        guard += 1
        if guard > 10000:
            raise Inconsistent("gcd-free refinement failed to stabilize")
        f = queue.pop(0)
        if P.udeg(f) < 1:
            continue
        again = False
        for i, g in enumerate(basis):
            d = P.ugcd(F, f, g)
            if P.udeg(d) < 1:
                continue
            # split g (and f) by d
            del basis[i]
            for part in (d, P.uexact_div(F, g, d), P.uexact_div(F, f, d)):
                if P.udeg(part) >= 1:
                    queue.append(part)
            again = True
            break
        if not again:
            basis.append(f)
    basis = sorted(set(basis), key=lambda p: _upoly_key(F, p))
    mults = []
    for m in monics:
        row = []
        rem = m
        for g in basis:
            k = 0
            while P.udeg(rem) >= P.udeg(g):
                q, r = P.udivmod(F, rem, g)
                if r:
                    break
                rem = q
                k += 1
            row.append(k)
        if P.udeg(rem) != 0:
            raise Inconsistent("gcd-free basis does not reconstruct an input")
        mults.append(tuple(row))
    return GcdFreeBasis(F, tuple(basis), units, tuple(mults))
