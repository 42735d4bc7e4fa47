"""Sparse matrices over the exact scalar field.

Used for the natural representation, the explicit R-matrix and every
evaluated operator identity on tensor powers of C^N.  Entries are kept
in a dict-of-rows layout with no stored zeros; all arithmetic is exact.
"""

from __future__ import annotations

from qclass.coeff import FracScalar


class SparseQMatrix:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows, ncols, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else {}

    @staticmethod
    def identity(n) -> "SparseQMatrix":
        one = FracScalar.one()
        return SparseQMatrix(n, n, {i: {i: one} for i in range(n)})

    @staticmethod
    def zero(nrows, ncols) -> "SparseQMatrix":
        return SparseQMatrix(nrows, ncols, {})

    def set(self, i, j, v: FracScalar):
        if v.is_zero():
            row = self.rows.get(i)
            if row and j in row:
                del row[j]
                if not row:
                    del self.rows[i]
            return
        self.rows.setdefault(i, {})[j] = v

    def add_to(self, i, j, v: FracScalar):
        row = self.rows.setdefault(i, {})
        cur = row.get(j)
        nv = v if cur is None else cur + v
        if nv.is_zero():
            row.pop(j, None)
            if not row:
                del self.rows[i]
        else:
            row[j] = nv

    def get(self, i, j) -> FracScalar:
        return self.rows.get(i, {}).get(j, FracScalar.zero())

    def n_entries(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def entries(self):
        for i, row in self.rows.items():
            for j, v in row.items():
                yield i, j, v

    def __add__(self, other):
        out = SparseQMatrix(self.nrows, self.ncols, {i: dict(r) for i, r in self.rows.items()})
        for i, j, v in other.entries():
            out.add_to(i, j, v)
        return out

    def __sub__(self, other):
        out = SparseQMatrix(self.nrows, self.ncols, {i: dict(r) for i, r in self.rows.items()})
        minus = FracScalar.from_int(-1)
        for i, j, v in other.entries():
            out.add_to(i, j, minus * v)
        return out

    def scale(self, c: FracScalar) -> "SparseQMatrix":
        if c.is_zero():
            return SparseQMatrix.zero(self.nrows, self.ncols)
        return SparseQMatrix(
            self.nrows,
            self.ncols,
            {i: {j: c * v for j, v in r.items()} for i, r in self.rows.items()},
        )

    def __mul__(self, other: "SparseQMatrix") -> "SparseQMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in sparse product")
        out = SparseQMatrix(self.nrows, other.ncols)
        orows = other.rows
        for i, arow in self.rows.items():
            acc = {}
            for k, v in arow.items():
                brow = orows.get(k)
                if brow is None:
                    continue
                for j, w in brow.items():
                    cur = acc.get(j)
                    p = v * w
                    acc[j] = p if cur is None else cur + p
            acc = {j: x for j, x in acc.items() if not x.is_zero()}
            if acc:
                out.rows[i] = acc
        return out

    def transpose(self) -> "SparseQMatrix":
        out = SparseQMatrix(self.ncols, self.nrows)
        for i, j, v in self.entries():
            out.rows.setdefault(j, {})[i] = v
        return out

    def is_zero(self) -> bool:
        return not self.rows

    def __eq__(self, other):
        if not isinstance(other, SparseQMatrix):
            return NotImplemented
        return (self - other).is_zero()

    def __pow__(self, k: int) -> "SparseQMatrix":
        out = SparseQMatrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out


def flip(N: int) -> SparseQMatrix:
    """The permutation P of C^N (x) C^N."""
    one = FracScalar.one()
    out = SparseQMatrix(N * N, N * N)
    for a in range(N):
        for b in range(N):
            out.rows[b * N + a] = {a * N + b: one}
    return out


def on_legs(A: SparseQMatrix, legs, nlegs, N) -> SparseQMatrix:
    """Lift A (acting on len(legs) tensor factors of C^N) to nlegs factors.

    legs are 0-based positions in increasing order.
    """
    k = len(legs)
    dim = N ** nlegs
    others = [t for t in range(nlegs) if t not in legs]
    out = SparseQMatrix(dim, dim)

    def decode(idx, width):
        digits = []
        for _ in range(width):
            digits.append(idx % N)
            idx //= N
        return digits[::-1]

    # enumerate complement assignments once
    comp_count = N ** len(others)
    for i, j, v in A.entries():
        di = decode(i, k)
        dj = decode(j, k)
        for c in range(comp_count):
            dc = decode(c, len(others))
            full_i = [0] * nlegs
            full_j = [0] * nlegs
            for pos, d in zip(legs, di):
                full_i[pos] = d
            for pos, d in zip(legs, dj):
                full_j[pos] = d
            for pos, d in zip(others, dc):
                full_i[pos] = d
                full_j[pos] = d
            ei = 0
            ej = 0
            for d in full_i:
                ei = ei * N + d
            for d in full_j:
                ej = ej * N + d
            out.rows.setdefault(ei, {})[ej] = v
    return out
