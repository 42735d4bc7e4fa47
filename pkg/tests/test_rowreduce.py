"""Row reduction utilities: RREF invariants, kernels, fraction-free rank."""

import random

from fractions import Fraction

from qclass.coeff import FracScalar, GaussianRational, LaurentPoly, Monomial
from qclass.rowreduce import RowSpace, SparseVec, kernel_basis, poly_rank, solve_dense


def fs(n, d=1):
    return FracScalar.from_poly(LaurentPoly.from_gaussian(GaussianRational.of(Fraction(n, d))))


def rnd_vec(rng, ncols, density=0.5):
    v = SparseVec()
    for c in range(ncols):
        if rng.random() < density:
            x = rng.randint(-4, 4)
            if x:
                v[c] = fs(x)
    return v


def test_membership_independent_of_insertion_order():
    rng = random.Random(5)
    vecs = [rnd_vec(rng, 8) for _ in range(6)]
    probes = [rnd_vec(rng, 8) for _ in range(10)] + [SparseVec(v) for v in vecs]
    a = RowSpace()
    a.insert_all(SparseVec(v) for v in vecs)
    b = RowSpace()
    b.insert_all(SparseVec(v) for v in reversed(vecs))
    assert a.rank == b.rank
    for p in probes:
        assert a.contains(SparseVec(p)) == b.contains(SparseVec(p))


def test_rref_rows_have_unique_pivots():
    rng = random.Random(9)
    rs = RowSpace()
    rs.insert_all(rnd_vec(rng, 10) for _ in range(8))
    for p, row in rs.rows.items():
        assert row[p] == FracScalar.one()
        for other in rs.rows:
            if other != p:
                assert other not in row


def test_reduce_is_idempotent_and_linear():
    rng = random.Random(3)
    rs = RowSpace()
    rs.insert_all(rnd_vec(rng, 9) for _ in range(5))
    u = rnd_vec(rng, 9)
    v = rnd_vec(rng, 9)
    ru = rs.reduce(u)
    assert rs.reduce(ru) == ru
    s = SparseVec(u)
    s.iadd_scaled(fs(3), v)
    lhs = rs.reduce(s)
    rhs = SparseVec(rs.reduce(u))
    rhs.iadd_scaled(fs(3), rs.reduce(v))
    assert lhs == rhs


def test_kernel_basis_matches_bruteforce():
    # system: x0 + 2 x1 = 0, x1 + x2 = 0 over 3 unknowns
    eqs = [
        SparseVec({0: fs(1), 1: fs(2)}),
        SparseVec({1: fs(1), 2: fs(1)}),
    ]
    kb = kernel_basis(eqs, [0, 1, 2])
    assert len(kb) == 1
    k = kb[0]
    for eq in eqs:
        acc = FracScalar.zero()
        for c, v in eq.items():
            acc = acc + v * k.get(c, FracScalar.zero())
        assert acc.is_zero()


def test_poly_rank_agrees_with_field_rank():
    rng = random.Random(17)
    for _ in range(25):
        ncols = 5
        eqs = [rnd_vec(rng, ncols, 0.6) for _ in range(rng.randint(1, 7))]
        rs = RowSpace()
        rs.insert_all(SparseVec(e) for e in eqs)
        assert poly_rank(eqs, list(range(ncols))) == rs.rank


def test_poly_rank_with_fractional_entries():
    tpoly = LaurentPoly.from_monomial(Monomial(t_exp=1))
    den = LaurentPoly.from_monomial(Monomial(s_exp=2)) - LaurentPoly.from_monomial(
        Monomial(s_exp=-2)
    )
    x = FracScalar(tpoly, den)
    eqs = [SparseVec({0: x, 1: fs(1)}), SparseVec({0: x + x, 1: fs(2)})]
    assert poly_rank(eqs, [0, 1]) == 1


def test_solve_dense():
    rows = [[fs(2), fs(1)], [fs(1), fs(-1)]]
    rhs = [fs(5), fs(1)]
    sol = solve_dense(rows, rhs)
    assert sol == [fs(2), fs(1)]
    singular = [[fs(1), fs(1)], [fs(2), fs(2)]]
    assert solve_dense(singular, [fs(1), fs(3)]) is None
