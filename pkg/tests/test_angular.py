from fractions import Fraction

import pytest

from pcclone.angular import (
    HalfInt,
    IncommensurableRadicalsError,
    SignedSqrtRational,
    b_coef,
    cg,
    cg_ladder,
    d_coef,
    d_coef_via_cg,
    fidelity_formula,
    gamma,
    gamma_closed_form,
    projection_norm_sq,
)

SSR = SignedSqrtRational


def h(x):
    return HalfInt.of(x)


class TestSignedSqrtRational:
    def test_product(self):
        a = SSR.sqrt(Fraction(2, 3))
        b = -SSR.sqrt(Fraction(1, 3))
        assert a * b == SSR(-1, Fraction(2, 9))

    def test_from_rational_keeps_sign(self):
        assert SSR.from_rational(Fraction(-3, 4)) == SSR(-1, Fraction(9, 16))

    def test_commensurable_sum(self):
        # sqrt(2) + sqrt(8) = 3 sqrt(2)
        total = SSR.sqrt(2) + SSR.sqrt(8)
        assert total == SSR(1, Fraction(18))

    def test_cancellation(self):
        assert SSR.sqrt(Fraction(5, 7)) - SSR.sqrt(Fraction(5, 7)) == SSR.zero()

    def test_incommensurable_sum_raises(self):
        with pytest.raises(IncommensurableRadicalsError):
            SSR.sqrt(2) + SSR.sqrt(3)

    def test_zero_identity(self):
        assert SSR.zero() + SSR.sqrt(5) == SSR.sqrt(5)

    def test_value(self):
        assert abs(SSR(-1, Fraction(1, 2)).value() + 0.7071067811865476) < 1e-15


class TestHalfInt:
    def test_of(self):
        assert HalfInt.of(Fraction(3, 2)).twice == 3
        assert HalfInt.of(2).twice == 4

    def test_of_rejects_quarters(self):
        with pytest.raises(ValueError):
            HalfInt.of(0.3)


class TestClebschGordan:
    def test_stretched(self):
        assert cg(h("1/2"), h("1/2"), h("1/2"), h("1/2"), h(1), h(1)) == SSR(1, Fraction(1))

    def test_triplet_zero(self):
        assert cg(h("1/2"), h("1/2"), h("1/2"), h("-1/2"), h(1), h(0)) == SSR(1, Fraction(1, 2))

    def test_singlet_antisymmetric(self):
        up_down = cg(h("1/2"), h("1/2"), h("1/2"), h("-1/2"), h(0), h(0))
        down_up = cg(h("1/2"), h("1/2"), h("-1/2"), h("1/2"), h(0), h(0))
        assert up_down == -down_up
        assert up_down.square() == Fraction(1, 2)

    def test_one_half_coupling(self):
        # frozen from the ladder-operator oracle
        val = cg(h(1), h("1/2"), h(0), h("1/2"), h("3/2"), h("1/2"))
        assert val == SSR(1, Fraction(2, 3))
        assert val == cg_ladder(h(1), h("1/2"), h(0), h("1/2"), h("3/2"), h("1/2"))

    def test_selection_rules_return_zero(self):
        assert cg(h(1), h(1), h(1), h(1), h(1), h(1)) == SSR.zero()  # m1+m2 != M
        assert cg(h(1), h(1), h(0), h(0), h(3), h(0)) == SSR.zero()  # triangle

    def test_malformed_inputs_raise(self):
        with pytest.raises(ValueError):
            cg(h(-1), h(1), h(0), h(0), h(1), h(0))
        with pytest.raises(ValueError):
            cg(h(1), h(1), h(2), h(0), h(1), h(0))

    def test_closed_form_matches_ladder_small(self):
        for tj1 in range(0, 7):
            for tj2 in range(0, 7):
                for tJ in range(abs(tj1 - tj2), tj1 + tj2 + 1, 2):
                    for tM in range(-tJ, tJ + 1, 2):
                        for tm1 in range(-tj1, tj1 + 1, 2):
                            tm2 = tM - tm1
                            if abs(tm2) > tj2:
                                continue
                            args = (
                                HalfInt(tj1), HalfInt(tj2), HalfInt(tm1),
                                HalfInt(tm2), HalfInt(tJ), HalfInt(tM),
                            )
                            assert cg(*args) == cg_ladder(*args)

    def test_orthogonality_exact(self):
        for tj1, tj2, tm1, tm2 in [(2, 1, 0, 1), (3, 3, 1, -1), (4, 2, -2, 0)]:
            total = sum(
                (
                    cg(HalfInt(tj1), HalfInt(tj2), HalfInt(tm1), HalfInt(tm2),
                       HalfInt(tJ), HalfInt(tm1 + tm2)).square()
                    for tJ in range(max(abs(tj1 - tj2), abs(tm1 + tm2)), tj1 + tj2 + 1, 2)
                ),
                Fraction(0),
            )
            assert total == 1


class TestCloningCoefficients:
    def test_b_p2(self):
        assert b_coef(2, 0) == SSR(1, Fraction(2, 3))
        assert b_coef(2, 1) == SSR(-1, Fraction(1, 3))

    def test_b_p1(self):
        assert b_coef(1, 0) == SSR(1, Fraction(1))

    def test_b_out_of_range(self):
        with pytest.raises(ValueError):
            b_coef(2, 2)
        with pytest.raises(ValueError):
            b_coef(3, -1)

    def test_b_normalized(self):
        for P in range(1, 51):
            assert sum((b_coef(P, k).square() for k in range(P)), Fraction(0)) == 1

    def test_d_p2(self):
        assert d_coef(2, 0) == SSR(1, Fraction(2, 3))
        assert d_coef(2, 1) == SSR(-1, Fraction(2, 9))

    def test_d_two_routes_agree(self):
        for P in range(1, 21):
            for k in range(P):
                assert d_coef(P, k) == d_coef_via_cg(P, k)

    def test_projection_norm(self):
        assert projection_norm_sq(1) == 1
        assert projection_norm_sq(2) == Fraction(8, 9)


class TestGamma:
    def test_anchors(self):
        assert gamma(2) == Fraction(5, 6)
        assert gamma(3) == Fraction(4, 5)

    def test_closed_form_small_range(self):
        for P in range(1, 60):
            assert gamma(P) == gamma_closed_form(P)

    def test_closed_form_large(self):
        assert gamma(1001) == gamma_closed_form(1001)


class TestFidelityFormula:
    def test_cov_odd(self):
        assert fidelity_formula("cov_odd", 1, 3) == Fraction(5, 6)
        assert fidelity_formula("cov_odd", 1, 5) == Fraction(4, 5)

    def test_cov_even(self):
        assert abs(fidelity_formula("cov_even", 1, 2) - 0.8535533905932737) < 1e-15

    def test_universal(self):
        assert fidelity_formula("universal", 1, 3) == Fraction(7, 9)
        assert fidelity_formula("universal", 1, 2) == Fraction(5, 6)

    def test_limits(self):
        assert fidelity_formula("universal", 1, None) == Fraction(2, 3)
        assert fidelity_formula("estimation", 1) == Fraction(2, 3)
        assert fidelity_formula("phase_estimation", 1) == Fraction(3, 4)
        assert fidelity_formula("cov_odd", 1, None) == Fraction(3, 4)

    def test_phase_gap(self):
        for M in (3, 5, 7, 21):
            gap = fidelity_formula("cov_odd", 1, M) - fidelity_formula("phase_estimation", 1)
            assert gap == Fraction(1, 4 * M)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            fidelity_formula("cov_odd", 1, 4)
        with pytest.raises(ValueError):
            fidelity_formula("cov_even", 1, 3)
        with pytest.raises(ValueError):
            fidelity_formula("cov_odd", 2, 3)
        with pytest.raises(ValueError):
            fidelity_formula("universal", 2, 1)
        with pytest.raises(ValueError):
            fidelity_formula("bogus", 1, 3)
