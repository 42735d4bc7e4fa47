"""Spectra of the quantum coordinate matrix and classical-limit checks.

The coordinate matrix acts on C^N tensor a highest weight module with
one eigenvalue per block of the natural representation, given by an
explicit exponential of the highest weight; on the natural module itself
it evaluates to S^2, which anchors the normalization.  This module
derives the eigenvalue lists and minimal-polynomial root lists of both
the quantum and the classical coordinate matrix, the q-trace central
characters, their numeric q -> 1 limits, and the exact classical ideal
check at the initial point of a class.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from qclass.coeff import FracScalar, LaurentPoly, Monomial, NearZeroDenominator
from qclass.natrep import (
    nat_weights,
    qtrace_leg1,
    rho_exponents,
    s_eigenvalues,
    smatrix,
)
from qclass.rootdata import (
    ClassData,
    OrthoRank,
    ParamAssignment,
    WeightVec,
    eps,
    mu_reflected,
    mu_vector,
    positive_roots,
    rho,
    zero_weight,
)
from qclass.sparse import SparseQMatrix


def hw_eigenvalue(rank: OrthoRank, q_lambda, nu: WeightVec) -> Monomial:
    """Eigenvalue q^{2(lambda+rho, nu) - 2(rho, eps_1) + (nu,nu) - 1}.

    q_lambda maps an integer weight to the monomial q^(lambda, .); the
    zero weight row of the B series with p = 0 comes out of the same
    expression.
    """
    r = rho(rank)
    e1 = eps(rank.n, 1)
    sexp = 2 * (2 * r.ip(nu) - 2 * r.ip(e1) + nu.ip(nu) - 1)
    if sexp != int(sexp):
        raise ArithmeticError("non-integral eigenvalue exponent")
    return (q_lambda(nu) ** 2) * Monomial(s_exp=int(sexp))


def natural_q_lambda(rank: OrthoRank):
    """q^(lambda, .) for lambda = eps_1 (the natural-module anchor)."""
    e1 = eps(rank.n, 1)

    def q_lambda(v: WeightVec) -> Monomial:
        x = 2 * e1.ip(v)
        return Monomial(s_exp=int(x))

    return q_lambda


@dataclass
class EigenvalueList:
    """Tagged eigenvalue monomials of the coordinate matrix."""

    cls: ClassData
    quotient: bool
    entries: list  # (role, Monomial)

    def monomials(self):
        return [m for _, m in self.entries]

    def pairwise_distinct(self) -> bool:
        keys = [m.key() for m in self.monomials()]
        return len(set(keys)) == len(keys)

    def s1_limit_multiset(self):
        return sorted(m.limit_s1() for m in self.monomials())


def block_highest_weights(cls: ClassData):
    """Highest weights nu_1..nu_{2l+3} of the natural-rep blocks."""
    n = cls.n
    out = []
    acc = 0
    for s in list(cls.gl_blocks) + [cls.m]:
        out.append(eps(n, acc + 1))
        acc += s
    out.append(eps(n, acc + 1) if cls.p > 0 else zero_weight(n))
    rev = []
    acc = 0
    for s in list(cls.gl_blocks) + [cls.m]:
        acc += s
        rev.append(-eps(n, acc))
    out.extend(reversed(rev))
    return out


def q_eigenvalues(cls: ClassData, param: ParamAssignment, quotient=False) -> EigenvalueList:
    """Eigenvalues on C^N tensor the module, from the mu parameters.

    The full list has 2l+3 entries; quotient mode drops the reflected
    partner of mu_{l+1}, leaving the 2l+2 roots of the reduced minimal
    polynomial.
    """
    ell = cls.ell
    mus = mu_vector(param)
    entries = []
    for i in range(1, ell + 2):
        entries.append((f"mu[{i}]", mus[i - 1]))
        if i <= ell or not quotient:
            entries.append((f"reflected[{i}]", mu_reflected(param, i)))
    entries.append((f"mu[{ell + 2}]", mus[ell + 1]))
    return EigenvalueList(cls, quotient, entries)


def q_eigenvalues_from_hw(cls: ClassData, param: ParamAssignment):
    """Same list through the highest-weight exponent formula (cross-route)."""
    out = []
    for nu in block_highest_weights(cls):
        out.append(hw_eigenvalue(cls.rank, param.q_on_weight, nu))
    return out


def min_poly_roots(cls: ClassData, param: ParamAssignment, mode: str):
    """Root list of the minimal polynomial of the coordinate matrix.

    quantum: the degree 2l+2 list on the quotient module, in the order
    mu_1..mu_l, mu_{l+1}, mu_{l+2}, then the reflected partners of
    mu_1..mu_l.  classical: (mu_1, ..., mu_l, -1, 1, mu_l^{-1}, ...,
    mu_1^{-1}) as limit keys (unit, z exponents, t exponent).
    """
    ell = cls.ell
    if mode == "quantum":
        mus = mu_vector(param)
        roots = [mus[i - 1] for i in range(1, ell + 1)]
        roots += [mus[ell], mus[ell + 1]]
        roots += [mu_reflected(param, i) for i in range(1, ell + 1)]
        return roots
    if mode == "classical":
        def zkey(i, e):
            z = [0] * i
            z[i - 1] = e
            return (0, tuple(z), 0)

        roots = [zkey(i, 2) for i in range(1, ell + 1)]
        roots += [(2, (), 0), (0, (), 0)]
        roots += [zkey(i, -2) for i in range(ell, 0, -1)]
        return roots
    raise ValueError(f"unknown mode {mode!r}")


# ----------------------------------------------------------------------
# central characters
# ----------------------------------------------------------------------


def _char_term_data(rank: OrthoRank, q_lambda, k: int):
    """Per-weight prefactor and factor monomials of the character sum.

    Yields (pref, [(m_num, m_den), ...]) with the value
    pref * prod (m_num - m_num^{-1}) / (m_den - m_den^{-1}).
    """
    r = rho(rank)
    e1 = eps(rank.n, 1)
    roots = positive_roots(rank)
    for nu in nat_weights(rank):
        sexp = 2 * k * (2 * r.ip(nu) - 2 * r.ip(e1) + nu.ip(nu) - 1)
        pref = (q_lambda(nu) ** (2 * k)) * Monomial(s_exp=int(sexp))
        factors = []
        for al in roots:
            m_num = q_lambda(al) * Monomial(s_exp=int(2 * (nu + r).ip(al)))
            m_den = q_lambda(al) * Monomial(s_exp=int(2 * r.ip(al)))
            factors.append((m_num, m_den))
        yield pref, factors


def central_character(rank: OrthoRank, q_lambda, k: int) -> FracScalar:
    """chi(tau_k): the exact scalar of the k-th q-trace central element."""
    total = FracScalar.zero()
    for pref, factors in _char_term_data(rank, q_lambda, k):
        term = FracScalar.from_monomial(pref)
        for m_num, m_den in factors:
            den = LaurentPoly.from_monomial(m_den) - LaurentPoly.from_monomial(
                m_den.inverse()
            )
            if den.is_zero():
                raise ZeroDivisionError(
                    f"vanishing character denominator at factor {m_den}"
                )
            num = LaurentPoly.from_monomial(m_num) - LaurentPoly.from_monomial(
                m_num.inverse()
            )
            term = term * FracScalar(num, den)
        total = total + term
    return total


def central_character_numeric(rank: OrthoRank, q_lambda, k: int, assign) -> complex:
    """Factorwise numeric evaluation of the character sum.

    Evaluating ratio by ratio keeps every factor O(1) near q = 1, where
    a single flattened fraction would underflow.
    """
    total = 0j
    for pref, factors in _char_term_data(rank, q_lambda, k):
        term = pref.eval(assign)
        for m_num, m_den in factors:
            dv = m_den.eval(assign)
            dv = dv - 1 / dv
            if abs(dv) < 1e-140:
                raise NearZeroDenominator(f"factor {m_den} vanished numerically")
            nv = m_num.eval(assign)
            term *= (nv - 1 / nv) / dv
        total += term
    return total


def classical_trace_value(cls: ClassData, zetas, k: int):
    """The classical trace of the k-th power at the initial point."""
    if len(zetas) != cls.ell:
        raise ValueError(f"expected {cls.ell} block parameters, got {len(zetas)}")
    val = Fraction(2 * cls.m) * (-1) ** k + cls.P
    total = Fraction(0)
    for n_i, z in zip(cls.gl_blocks, zetas):
        total += n_i * (Fraction(z) ** (2 * k) + Fraction(z) ** (-2 * k))
    return total + val


def trace_classical_limit_check(
    cls: ClassData, k: int, zetas=(), eps_pair=(1e-4, 1e-5), tol=1e-6
):
    """Richardson-extrapolated q -> 1 limit of the character vs the
    classical trace; returns (relative error, limit, classical value)."""
    param = ParamAssignment.specialized(cls)
    vals = []
    for e in eps_pair:
        assign = {"s": 1.0 + e}
        for i, z in enumerate(zetas, start=1):
            assign[f"z{i}"] = complex(Fraction(z))
        vals.append(
            central_character_numeric(cls.rank, param.q_on_weight, k, assign)
        )
    e1, e2 = eps_pair
    limit = (vals[1] * e1 - vals[0] * e2) / (e1 - e2)
    target = complex(classical_trace_value(cls, zetas, k))
    # absolute error when the classical value vanishes (odd k can give 0)
    rel = abs(limit - target) / (abs(target) if target != 0 else 1.0)
    return rel, limit, target


# ----------------------------------------------------------------------
# exact anchors against the natural representation
# ----------------------------------------------------------------------


def check_spectrum_anchor(rank: OrthoRank):
    """Squares of the S spectrum equal the highest-weight eigenvalues at
    lambda = eps_1 and nu in {eps_1, eps_2, -eps_1}."""
    ev = s_eigenvalues(rank)
    squares = sorted((c ** 2).key() for c in ev)
    ql = natural_q_lambda(rank)
    n = rank.n
    nus = [eps(n, 1), eps(n, 2), -eps(n, 1)]
    target = sorted(hw_eigenvalue(rank, ql, nu).key() for nu in nus)
    return squares == target, squares, target


def check_qtrace_central(rank: OrthoRank, k: int):
    """Partial q-trace of S^{2k} equals chi(tau_k) times the identity."""
    s = smatrix(rank)
    lhs = qtrace_leg1(s ** (2 * k), rank)
    scalar = central_character(rank, natural_q_lambda(rank), k)
    rhs = SparseQMatrix.identity(rank.N).scale(scalar)
    return (lhs - rhs).is_zero(), scalar


# ----------------------------------------------------------------------
# classical ideal at the initial point
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ClassicalPoint:
    """Numeric (exact rational) eigenvalue data of a classical class."""

    mus: tuple  # Fractions for the l invertible block eigenvalues

    def validate(self, cls: ClassData):
        errs = []
        vals = [Fraction(m) for m in self.mus]
        for i, v in enumerate(vals):
            if v == 0 or v * v == 1:
                errs.append(f"mu[{i + 1}] = {v} not invertible-regular")
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                if vals[i] == vals[j] or vals[i] * vals[j] == 1:
                    errs.append(f"mu[{i + 1}] and mu[{j + 1}] not regular")
        if len(vals) != cls.ell:
            errs.append(f"expected {cls.ell} eigenvalues, got {len(vals)}")
        return errs


def initial_point_matrix(cls: ClassData, point: ClassicalPoint):
    """The diagonal initial point of the class, as exact Fractions."""
    entries = []
    for n_i, mu in zip(cls.gl_blocks, point.mus):
        entries.extend([Fraction(mu)] * n_i)
    entries.extend([Fraction(-1)] * cls.m)
    entries.extend([Fraction(1)] * cls.P)
    entries.extend([Fraction(-1)] * cls.m)
    for n_i, mu in zip(reversed(cls.gl_blocks), reversed(point.mus)):
        entries.extend([1 / Fraction(mu)] * n_i)
    return entries


def dim_stabilizer(cls: ClassData) -> int:
    return sum(b * b for b in cls.gl_blocks) + cls.m * (2 * cls.m - 1) + cls.P * (
        cls.P - 1
    ) // 2


def classical_ideal_check(cls: ClassData, point: ClassicalPoint):
    """Point membership and the exact Jacobian rank of the ideal system.

    Verifies the group relation, the minimal polynomial and the trace
    relations at the initial point in rational arithmetic, then checks
    rank J = N^2 - (dim G - dim K).
    """
    errs = point.validate(cls)
    if errs:
        raise ValueError("; ".join(errs))
    N = cls.N
    o = initial_point_matrix(cls, point)
    results = []

    # group relation o C o^t = C with C_{ij} = delta_{i j'}
    ok = all(o[i] * o[N - 1 - i] == 1 for i in range(N))
    results.append(("point_group_relation", ok, "o C o^t = C"))

    # minimal polynomial at the point
    roots = [Fraction(m) for m in point.mus] + [Fraction(-1), Fraction(1)]
    roots += [1 / Fraction(m) for m in reversed(point.mus)]
    prodv = [Fraction(1)] * N
    for r in roots:
        prodv = [pv * (oi - r) for pv, oi in zip(prodv, o)]
    results.append(
        ("point_min_poly", all(v == 0 for v in prodv), f"degree {len(roots)}")
    )

    # traces
    ok = True
    for k in range(1, N + 1):
        lhs = sum(oi ** k for oi in o)
        rhs = sum(
            n_i * (Fraction(mu) ** k + Fraction(mu) ** (-k))
            for n_i, mu in zip(cls.gl_blocks, point.mus)
        ) + Fraction(2 * cls.m) * (-1) ** k + cls.P
        if lhs != rhs:
            ok = False
    results.append(("point_traces", ok, f"k = 1..{N}"))

    # Jacobian rank
    rows = []
    # group relations: d/dA_ab [sum_k A_ik A_{j k'}] = delta_ia A_{j b'} + delta_ja A_{i b'}
    for i in range(N):
        for j in range(N):
            row = {}
            for b in range(N):
                bp = N - 1 - b
                val = o[j] if (j == bp) else Fraction(0)
                if val:
                    row[(i, b)] = row.get((i, b), Fraction(0)) + val
                val = o[i] if (i == bp) else Fraction(0)
                if val:
                    row[(j, b)] = row.get((j, b), Fraction(0)) + val
            rows.append(row)
    # minimal polynomial: diagonal point makes the derivative diagonal in pairs
    for i in range(N):
        for j in range(N):
            coeff = Fraction(0)
            for t in range(len(roots)):
                left = Fraction(1)
                for u in range(t):
                    left *= o[i] - roots[u]
                right = Fraction(1)
                for u in range(t + 1, len(roots)):
                    right *= o[j] - roots[u]
                coeff += left * right
            if coeff:
                rows.append({(i, j): coeff})
    # traces: d Tr(A^k)/dA_ab = k (A^{k-1})_{ba}
    for k in range(1, N + 1):
        row = {}
        for a in range(N):
            v = k * o[a] ** (k - 1)
            if v:
                row[(a, a)] = v
        rows.append(row)

    rank_val = _fraction_rank(rows)
    dim_g = N * (N - 1) // 2
    dim_k = dim_stabilizer(cls)
    expected = N * N - (dim_g - dim_k)
    results.append(
        (
            "jacobian_rank",
            rank_val == expected,
            f"rank {rank_val}, expected {expected} = N^2 - (dim G - dim K)",
        )
    )
    return results


def _fraction_rank(rows):
    """Rank of sparse Fraction rows by plain Gaussian elimination."""
    pivots = {}
    rank_val = 0
    for row in rows:
        r = dict(row)
        while r:
            c = min(r)
            if c in pivots:
                f = r.pop(c)
                for cc, v in pivots[c].items():
                    nv = r.get(cc, Fraction(0)) - f * v
                    if nv:
                        r[cc] = nv
                    else:
                        r.pop(cc, None)
            else:
                inv = 1 / r[c]
                pivots[c] = {cc: v * inv for cc, v in r.items() if cc != c}
                rank_val += 1
                break
    return rank_val
