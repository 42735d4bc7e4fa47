"""Sparse reduced row echelon form over the exact scalar field.

Rows are sparse dicts mapping column keys to FracScalar.  RowSpace keeps
a fully back-substituted basis (each stored row has coefficient 1 at its
pivot and no other pivot columns), so reducing a vector is a single pass
over its pivot entries and normal forms are canonical.
"""

from __future__ import annotations

from qclass.coeff import FracScalar


class SparseVec(dict):
    """Sparse vector: column key -> FracScalar, no zeros stored."""

    def iadd_scaled(self, c: FracScalar, other):
        """self += c * other, dropping cancellations."""
        if c.is_zero():
            return self
        for k, v in other.items():
            cur = self.get(k)
            nv = c * v if cur is None else cur + c * v
            if nv.is_zero():
                if cur is not None:
                    del self[k]
            else:
                self[k] = nv
        return self

    def scaled(self, c: FracScalar) -> "SparseVec":
        if c.is_zero():
            return SparseVec()
        return SparseVec((k, c * v) for k, v in self.items())

    def copy(self) -> "SparseVec":
        return SparseVec(self)


_MINUS_ONE = FracScalar.from_int(-1)


class RowSpace:
    """Incremental RREF over ordered column keys."""

    __slots__ = ("rows",)

    def __init__(self):
        self.rows = {}  # pivot column -> SparseVec

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self):
        return self.rows.keys()

    def reduce(self, vec) -> SparseVec:
        """Residue of vec modulo the row space (vec is not mutated)."""
        out = SparseVec(vec)
        hits = [k for k in out if k in self.rows]
        for p in hits:
            c = out.get(p)
            if c is None or c.is_zero():
                continue
            out.iadd_scaled(_MINUS_ONE * c, self.rows[p])
        return out

    def insert(self, vec):
        """Insert vec; returns the new pivot column or None if dependent."""
        r = self.reduce(vec)
        if not r:
            return None
        pivot = min(r)
        inv = r[pivot].inverse()
        r = r.scaled(inv)
        r[pivot] = FracScalar.one()
        for row in self.rows.values():
            c = row.get(pivot)
            if c is not None:
                row.iadd_scaled(_MINUS_ONE * c, r)
        self.rows[pivot] = r
        return pivot

    def insert_all(self, vecs) -> int:
        n = 0
        for v in vecs:
            if self.insert(v) is not None:
                n += 1
        return n

    def contains(self, vec) -> bool:
        return not self.reduce(vec)


def kernel_basis(equations, columns):
    """Kernel of the linear system given by equation rows.

    equations: iterable of SparseVec keyed by unknown columns; columns:
    the ordered list of unknowns.  Returns a list of SparseVec basis
    vectors of the solution space.
    """
    rs = RowSpace()
    for eq in equations:
        rs.insert(eq)
    basis = []
    one = FracScalar.one()
    for f in columns:
        if f in rs.rows:
            continue
        vec = SparseVec({f: one})
        for p, row in rs.rows.items():
            c = row.get(f)
            if c is not None:
                vec[p] = _MINUS_ONE * c
        basis.append(vec)
    return basis


def poly_rank(equations, columns) -> int:
    """Rank of a small equation system by fraction-free elimination.

    equations: iterable of SparseVec over the given columns with
    FracScalar entries.  Denominators are cleared rowwise, then one-step
    Bareiss elimination runs over the polynomial ring; every division is
    exact, so entries never become fractions and the rank is certified
    in formal arithmetic.
    """
    from qclass.coeff import LaurentPoly

    cols = {c: k for k, c in enumerate(columns)}
    nc = len(columns)
    mat = []
    for eq in equations:
        if not eq:
            continue
        row = [LaurentPoly.zero()] * nc
        common = LaurentPoly.one()
        for v in eq.values():
            common = common * v.den
        for c, v in eq.items():
            q = common.divide_exact(v.den, step_cap=1 << 20)
            row[cols[c]] = v.num * q
        mat.append(row)
    rank = 0
    prev = LaurentPoly.one()
    nr = len(mat)
    for c in range(nc):
        pivot = None
        best = None
        for r in range(rank, nr):
            if not mat[r][c].is_zero():
                t = mat[r][c].n_terms()
                if best is None or t < best:
                    best = t
                    pivot = r
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        pr = mat[rank]
        for r in range(rank + 1, nr):
            if all(mat[r][j].is_zero() for j in range(c, nc)):
                continue
            lead = mat[r][c]
            for j in range(c + 1, nc):
                num = pr[c] * mat[r][j] - lead * pr[j]
                if num.is_zero():
                    mat[r][j] = num
                    continue
                d = num.divide_exact(prev, step_cap=1 << 20)
                if d is None:  # pragma: no cover - Bareiss division is exact
                    raise ArithmeticError("fraction-free division failed")
                mat[r][j] = d
            mat[r][c] = LaurentPoly.zero()
        prev = pr[c]
        rank += 1
        if rank == nc:
            break
    return rank


def solve_dense(rows, rhs):
    """Solve a small dense linear system A x = b over FracScalar.

    rows: list of lists; rhs: list.  Returns the unique solution or None
    when the system is singular or inconsistent.
    """
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0])
    piv_rows = []
    for c in range(ncols):
        target = None
        for r in range(len(m)):
            if r in [pr for pr, _ in piv_rows]:
                continue
            if not m[r][c].is_zero():
                target = r
                break
        if target is None:
            return None
        inv = m[target][c].inverse()
        m[target] = [x * inv for x in m[target]]
        for r in range(len(m)):
            if r != target and not m[r][c].is_zero():
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[target])]
        piv_rows.append((target, c))
    for r in range(len(m)):
        if r not in [pr for pr, _ in piv_rows] and not m[r][ncols].is_zero():
            return None
    sol = [None] * ncols
    for r, c in piv_rows:
        sol[c] = m[r][ncols]
    return sol
