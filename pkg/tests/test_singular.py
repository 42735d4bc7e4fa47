"""Construction set: coefficients, lemma battery, singular vector."""

import pytest

from qclass.coeff import FracScalar, LaurentPoly, Monomial, T_VAR, gauss_bracket
from qclass.rootdata import ClassData, ParamAssignment, delta
from qclass.rowreduce import SparseVec
from qclass.singular import (
    A_COMM,
    LEMMA_NAMES,
    build_constructions,
    closed_form_c,
    proportional,
    quotient_engine,
    recurrence_residuals,
    singular_vector,
    u_nu2,
    verify_lemma,
    verify_singular,
)
from qclass.verma import VermaEngine

SO5 = ClassData.make(5, (), 2, 0)
SO7 = ClassData.make(7, (), 2, 1)
SO8 = ClassData.make(8, (), 2, 2)
SO9 = ClassData.make(9, (), 2, 2)
SO9L1 = ClassData.make(9, (1,), 2, 1)


def poly_pm(es):
    out = LaurentPoly.zero()
    for unit, e in es:
        out = out + LaurentPoly.from_monomial(Monomial(unit=unit, s_exp=e))
    return out


class TestClosedFormCoefficients:
    def test_so7_values(self):
        c = closed_form_c("B", 3)
        assert c[2] == FracScalar.from_poly(poly_pm([(0, 1), (0, -1)]))  # s + s^-1
        assert c[3] == FracScalar.from_poly(poly_pm([(2, 1), (2, -1)]))  # -(s + s^-1)
        assert (c[2] + c[3]).is_zero()

    def test_so8_values(self):
        c = closed_form_c("D", 4)
        assert c[2] == FracScalar.from_poly(poly_pm([(2, 2), (2, -2)]))  # -(q + q^-1)
        assert c[3] == FracScalar.one()
        assert c[4] == FracScalar.one()
        assert (c[2] + A_COMM * c[3]).is_zero()

    @pytest.mark.parametrize(
        "series,base_n", [("B", 2), ("B", 3), ("B", 4), ("B", 6), ("D", 4), ("D", 5), ("D", 7)]
    )
    def test_recurrence_exact(self, series, base_n):
        for label, v in recurrence_residuals(series, base_n):
            assert v.is_zero(), label


class TestConstructions:
    def test_so5_single_vector(self):
        cs = build_constructions(SO5, ParamAssignment.specialized(SO5))
        assert list(cs.x) == [2]
        # x_2 = [f_1, f_2]_a f_2 v: words (1,2,2) and (2,1,2)
        assert set(cs.x[2]) == {(1, 2, 2), (2, 1, 2)}
        assert cs.x[2][(1, 2, 2)] == FracScalar.one()
        assert cs.x[2][(2, 1, 2)] == -A_COMM

    def test_omega_words(self):
        cs7 = build_constructions(SO7, ParamAssignment.specialized(SO7))
        assert set(cs7.omega) == {(2,)}
        cs9 = build_constructions(SO9, ParamAssignment.specialized(SO9))
        assert set(cs9.omega) == {(3, 2)}

    def test_shifted_letters_general_class(self):
        cs = build_constructions(SO9L1, ParamAssignment.specialized(SO9L1))
        assert cs.shift == 1
        letters = set()
        for vec in cs.x.values():
            for w in vec:
                letters.update(w)
        assert letters == {2, 3, 4}

    def test_x_weights_are_delta(self):
        for cls in (SO5, SO7, SO8, SO9, SO9L1):
            eng = VermaEngine(cls, ParamAssignment.specialized(cls))
            cs = build_constructions(cls, eng.param, eng)
            _, drc, _ = delta(cls)
            for i, vec in cs.x.items():
                assert eng.beta_of(vec) == drc, (cls.N, i)


@pytest.mark.parametrize("cls", [SO5, SO7, SO8, SO9], ids=lambda c: f"so{c.N}")
class TestLemmaSuite:
    def test_all_lemmas(self, cls):
        eng = VermaEngine(cls, ParamAssignment.specialized(cls))
        for name in LEMMA_NAMES:
            res = verify_lemma(name, cls, eng.param, eng)
            bad = [r for r in res if r[1] == "fail"]
            assert not bad, (name, bad)


class TestExceptionalCases:
    def test_so5_y2_nonzero(self):
        eng = VermaEngine(SO5, ParamAssignment.specialized(SO5))
        res = verify_lemma("y_zero", SO5, eng.param, eng)
        assert res[0][1] == "skipped"
        assert "y2 != 0 verified: True" in res[0][2]
        cs = build_constructions(SO5, eng.param, eng)
        assert not eng.is_zero(cs.y[2])

    def test_so8_y_family_vanishes(self):
        eng = VermaEngine(SO8, ParamAssignment.specialized(SO8))
        cs = build_constructions(SO8, eng.param, eng)
        assert set(cs.y) == {2, 3}
        for k, vec in cs.y.items():
            assert eng.is_zero(vec), k

    def test_so7_x_ker_members(self):
        eng = VermaEngine(SO7, ParamAssignment.specialized(SO7))
        cs = build_constructions(SO7, eng.param, eng)
        for i in (2, 3):
            assert eng.is_zero(eng.apply_e(1, cs.x[i]))

    def test_even_N_word_count(self):
        eng = VermaEngine(SO8, ParamAssignment.specialized(SO8))
        res = dict((r[0], (r[1], r[2])) for r in verify_lemma("basis", SO8, eng.param, eng))
        # 2n - 2 = 6 raw words; the two tail words are identified in the
        # module, leaving effectively 2n - 3 = 5 distinct monomials
        assert res["word_count"][0] == "pass"
        assert "6 raw words" in res["word_count"][1]
        cs = build_constructions(SO8, eng.param, eng)
        raw = set()
        for vec in cs.x.values():
            raw.update(vec)
        assert len(raw) == 2 * 4 - 2
        assert res["word_identity"][0] == "pass"


class TestSingularVector:
    @pytest.mark.parametrize("cls", [SO5, SO7, SO8, SO9, SO9L1], ids=lambda c: f"so{c.N}-{c.ell}")
    def test_specialized_direction(self, cls):
        eng = VermaEngine(cls, ParamAssignment.specialized(cls))
        res = verify_singular(cls, eng.param, eng)
        bad = [r for r in res if r[1] == "fail"]
        assert not bad, bad

    @pytest.mark.parametrize("cls", [SO5, SO7, SO8, SO9, SO9L1], ids=lambda c: f"so{c.N}-{c.ell}")
    def test_generic_direction(self, cls):
        eng = VermaEngine(cls, ParamAssignment.generic(cls))
        res = verify_singular(cls, eng.param, eng)
        assert res == [("generic_singular_dim", "pass", "dim 0, expected 0")]

    def test_so5_condition_string(self):
        eng = VermaEngine(SO5, ParamAssignment.specialized(SO5))
        res = dict((r[0], r[2]) for r in verify_singular(SO5, eng.param, eng))
        assert "-q^-1" in res["weight_condition"]

    def test_scaling_invariance(self):
        # scaling all c_i by a common scalar preserves the singular property
        eng = VermaEngine(SO7, ParamAssignment.specialized(SO7))
        vec, drc = singular_vector(SO7, eng.param, eng)
        scalar = FracScalar.from_monomial(Monomial(unit=1, s_exp=3)) + FracScalar.from_int(2)
        scaled = SparseVec()
        scaled.iadd_scaled(scalar, vec)
        for i in range(1, eng.n + 1):
            assert eng.is_zero(eng.apply_e(i, scaled))

    def test_so9l1_all_raising_annihilate(self):
        eng = VermaEngine(SO9L1, ParamAssignment.specialized(SO9L1))
        vec, _ = singular_vector(SO9L1, eng.param, eng)
        for i in range(1, 5):
            assert eng.is_zero(eng.apply_e(i, vec))

    def test_kernel_proportional_to_closed_form(self):
        eng = VermaEngine(SO8, ParamAssignment.specialized(SO8))
        _, drc, _ = delta(SO8)
        kern = eng.singular_space(drc)
        assert len(kern) == 1
        vec, _ = singular_vector(SO8, eng.param, eng)
        ok, nz = proportional(eng, kern[0], vec)
        assert ok and nz


class TestUNu2:
    def test_coefficients_m2(self):
        par = ParamAssignment.generic(SO7)
        terms = u_nu2(SO7, par)
        by_k = {k: (w, c) for k, w, c in terms}
        assert set(by_k) == {1, 2, 3}
        assert by_k[3] == ((), gauss_bracket(T_VAR))
        assert by_k[2][0] == (2,)
        assert by_k[2][1] == FracScalar.from_monomial(Monomial(unit=2, s_exp=-2))
        assert by_k[1][0] == (1, 2)
        assert by_k[1][1] == FracScalar.from_monomial(Monomial(s_exp=-4))

    def test_rejects_general_classes(self):
        with pytest.raises(ValueError):
            u_nu2(SO9L1, ParamAssignment.specialized(SO9L1))


class TestQuotientEngine:
    def test_requires_specialized(self):
        with pytest.raises(ValueError):
            quotient_engine(SO5, ParamAssignment.generic(SO5))


class TestTwoBlockClass:
    """A class with two GL blocks drives the multi-parameter arithmetic."""

    CLS = ClassData.make(9, (1, 1), 2, 0)

    def test_lemmas_and_singular_both_modes(self):
        cls = self.CLS
        eng = VermaEngine(cls, ParamAssignment.specialized(cls))
        for name in LEMMA_NAMES:
            res = verify_lemma(name, cls, eng.param, eng)
            assert not any(r[1] == "fail" for r in res), name
        res = verify_singular(cls, eng.param, eng)
        assert not any(r[1] == "fail" for r in res)
        geng = VermaEngine(cls, ParamAssignment.generic(cls))
        res = verify_singular(cls, geng.param, geng)
        assert res[0][:2] == ("generic_singular_dim", "pass")

    def test_shift_and_letters(self):
        cs = build_constructions(self.CLS, ParamAssignment.specialized(self.CLS))
        assert cs.shift == 2 and cs.base_n == 2
        assert set(cs.x) == {2}
        assert set(cs.x[2]) == {(3, 4, 4), (4, 3, 4)}
