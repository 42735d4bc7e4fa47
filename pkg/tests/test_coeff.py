"""Exact coefficient arithmetic: examples, axioms, numeric evaluation."""

import pytest
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from qclass.coeff import (
    FracScalar,
    GaussianRational,
    LaurentPoly,
    Monomial,
    NearZeroDenominator,
    Q,
    S,
    T_VAR,
    bracket_int,
    eval_numeric,
    gauss_bracket,
    q_power,
    qbinom,
    z_var,
)


def mono_poly(*pairs):
    out = LaurentPoly.zero()
    for m, c in pairs:
        out = out + LaurentPoly.from_monomial(m, c)
    return out


class TestGaussBracket:
    def test_bracket_of_q_is_one(self):
        assert gauss_bracket(q_power(1)) == FracScalar.one()

    def test_bracket_of_q_squared(self):
        expected = FracScalar.from_poly(mono_poly((q_power(1), 1), (q_power(-1), 1)))
        assert gauss_bracket(q_power(2)) == expected

    def test_bracket_of_unit_monomial(self):
        # m = i s^(-2P) at P = 3: (i s^-6 + i s^6) / (s^2 - s^-2)
        m = Monomial(unit=1, s_exp=-6)
        num = mono_poly((Monomial(unit=1, s_exp=-6), 1), (Monomial(unit=1, s_exp=6), 1))
        den = mono_poly((Monomial(s_exp=2), 1), (Monomial(s_exp=-2), -1))
        assert gauss_bracket(m) == FracScalar(num, den)
        # numeric cross-check at s = 1.1
        a = {"s": 1.1}
        lhs = gauss_bracket(m).eval_numeric(a)
        mv = m.eval(a)
        rhs = (mv - 1 / mv) / (a["s"] ** 2 - a["s"] ** -2)
        assert abs(lhs - rhs) < 1e-12

    def test_exact_division_gives_denominator_one(self):
        b = gauss_bracket(q_power(3))
        assert b.den == LaurentPoly.one()

    def test_identity_on_random_monomials(self):
        import random

        rng = random.Random(11)
        qmq = mono_poly((q_power(1), 1), (q_power(-1), -1))
        for _ in range(200):
            m = Monomial(
                unit=rng.randrange(4),
                s_exp=rng.randint(-6, 6),
                z_exps=(rng.randint(-2, 2), rng.randint(-2, 2)),
                t_exp=rng.randint(-2, 2),
            )
            g = gauss_bracket(m)
            lhs = g * FracScalar.from_poly(qmq)
            rhs = FracScalar.from_poly(
                mono_poly((m, 1), (m.inverse(), -1))
            )
            assert lhs == rhs


class TestQBinom:
    def test_trivial(self):
        assert qbinom(1, 0, Q) == LaurentPoly.one()

    def test_two_choose_one(self):
        assert qbinom(2, 1, Q) == mono_poly((q_power(1), 1), (q_power(-1), 1))

    def test_three_choose_one_base_s(self):
        # oracle: expand [3]_s = (s^3 - s^-3)/(s - s^-1) by exact division
        num = mono_poly((Monomial(s_exp=3), 1), (Monomial(s_exp=-3), -1))
        den = mono_poly((S, 1), (S.inverse(), -1))
        oracle = num.divide_exact(den)
        assert oracle is not None
        got = qbinom(3, 1, S)
        assert got == oracle
        assert got == mono_poly((Monomial(s_exp=2), 1), (Monomial(), 1), (Monomial(s_exp=-2), 1))

    def test_symmetry_and_pascal(self):
        for n in range(6):
            for k in range(n + 1):
                assert qbinom(n, k, Q) == qbinom(n, n - k, Q)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            qbinom(2, 3, Q)
        with pytest.raises(ValueError):
            qbinom(2, -1, Q)


class TestEvalNumeric:
    def test_q_limit_of_two(self):
        x = FracScalar.from_poly(qbinom(2, 1, Q))
        assert abs(eval_numeric(x, {"s": 1.0}) - 2.0) < 1e-15

    def test_ratio_is_one(self):
        qmq = mono_poly((q_power(1), 1), (q_power(-1), -1))
        x = FracScalar(qmq, qmq)
        assert abs(eval_numeric(x, {"s": 1.05}) - 1.0) < 1e-12

    def test_near_zero_denominator_reported(self):
        qmq = mono_poly((q_power(1), 1), (q_power(-1), -1))
        x = FracScalar(LaurentPoly.one(), qmq)
        with pytest.raises(NearZeroDenominator):
            x.eval_numeric({"s": 1.0}, den_floor=1e-12)

    def test_pairing_value_limit(self):
        # (t - t^-1)/(q - q^-1) with t = s^(2c) tends to c as s -> 1
        c = 1.5
        x = gauss_bracket(T_VAR)
        vals = []
        eps = (1e-4, 1e-5)
        for e in eps:
            s = 1.0 + e
            vals.append(eval_numeric(x, {"s": s, "t": s ** (2 * c)}))
        lim = (vals[1] * eps[0] - vals[0] * eps[1]) / (eps[0] - eps[1])
        assert abs(lim - c) < 1e-6


# ----------------------------------------------------------------------
# randomized ring and field axioms
# ----------------------------------------------------------------------

monos = st.builds(
    Monomial,
    unit=st.integers(0, 3),
    s_exp=st.integers(-4, 4),
    z_exps=st.tuples(st.integers(-2, 2)),
    t_exp=st.integers(-1, 1),
)
coeffs = st.builds(
    GaussianRational.of,
    st.fractions(min_value=-5, max_value=5, max_denominator=6),
    st.fractions(min_value=-5, max_value=5, max_denominator=6),
)
polys = st.lists(st.tuples(monos, coeffs), max_size=4).map(
    lambda pairs: sum(
        (LaurentPoly.from_monomial(m).scale(c) for m, c in pairs),
        LaurentPoly.zero(),
    )
)
fracs = st.tuples(polys, polys).filter(lambda t: not t[1].is_zero()).map(
    lambda t: FracScalar(t[0], t[1])
)


@settings(max_examples=250, deadline=None)
@given(polys, polys, polys)
def test_poly_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()


@settings(max_examples=250, deadline=None)
@given(fracs, fracs, fracs)
def test_frac_field_axioms(x, y, z):
    assert x * (y + z) == x * y + x * z
    assert (x + y) + z == x + (y + z)
    if not x.is_zero():
        assert (x * x.inverse()).is_one()
        assert (x / x).is_one()


@settings(max_examples=250, deadline=None)
@given(fracs, fracs)
def test_eq_agrees_with_numeric_evaluation(x, y):
    assigns = [
        {"s": 1.31, "z1": 0.7, "t": 2.1},
        {"s": 0.83, "z1": 1.9, "t": 0.4},
        {"s": 1.11, "z1": -1.3, "t": -0.8},
        {"s": 1.57, "z1": 2.3, "t": 1.2},
        {"s": 0.67, "z1": -0.9, "t": -2.2},
    ]
    if x == y:
        for a in assigns:
            try:
                xv = x.eval_numeric(a)
                yv = y.eval_numeric(a)
            except NearZeroDenominator:
                continue
            assert abs(xv - yv) <= 1e-6 * max(1.0, abs(xv))


@settings(max_examples=250, deadline=None)
@given(polys, polys.filter(lambda p: not p.is_zero()))
def test_exact_division_roundtrip(a, b):
    q = (a * b).divide_exact(b)
    assert q is not None
    assert q == a


def test_bracket_int_matches_qbinom_building_block():
    assert bracket_int(3, S) == qbinom(3, 1, S)
    assert bracket_int(0, Q).is_zero()


def test_monomial_of_z_variables():
    z2 = z_var(2)
    assert z2.z_exps == (0, 1)
    assert (z2 * z2.inverse()).is_one()
    assert (z2 ** 3).z_exps == (0, 3)
