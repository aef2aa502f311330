"""Gaussian kernel, normalization constant, and moments of the q-measure."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from qfj.errors import DomainError, TruncationError
from qfj.qcalc import DEFAULT_POLICY, TruncationPolicy
from qfj.qcore import QParam, QScalar, q_bracket, q_double_factorial
from qfj.qgauss import (
    c_of_q,
    kernel_eval,
    kernel_eval_x2,
    moment_by_integration,
    moment_closed_form,
    nu,
)

Q_HALF = QParam(Fraction(1, 2))
SQRT_TWO_PI = math.sqrt(2.0 * math.pi)

q_params = st.fractions(min_value=Fraction(1, 8), max_value=Fraction(4, 5),
                        max_denominator=16).map(QParam)


def test_nu_square_is_exact():
    assert nu(Q_HALF).squared == 2
    assert nu(QParam(Fraction(3, 4))).squared == 4
    assert float(nu(Q_HALF)) == pytest.approx(math.sqrt(2))


class TestKernel:
    def test_value_at_origin(self):
        assert kernel_eval(Fraction(0), Q_HALF, TruncationPolicy.exact(16)) == 1
        assert kernel_eval(0.0, Q_HALF, DEFAULT_POLICY) == 1.0

    def test_even_in_x(self):
        pol = TruncationPolicy.exact(64)
        assert kernel_eval(Fraction(3, 2), Q_HALF, pol) == kernel_eval(
            Fraction(-3, 2), Q_HALF, pol)

    def test_float_route_tracks_exact_partial(self):
        exact = kernel_eval(Fraction(3, 2), Q_HALF, TruncationPolicy.exact(64))
        approx = kernel_eval(1.5, Q_HALF, DEFAULT_POLICY)
        assert approx == pytest.approx(float(exact), rel=1e-12)

    def test_moderate_tail_near_classical_limit(self):
        # regression: the reciprocal route used to abort here with a false
        # divergence report; the feasibility guard must keep this finite
        q = QParam(Fraction(999, 1000))
        val = kernel_eval(5.0, q, DEFAULT_POLICY)
        assert 0 < val < 1e-2

    def test_far_tail_is_noise_scale_not_garbage(self):
        # true value is ~exp(-200), below the fallback's absolute resolution;
        # the contract is noise magnitude, not sign
        q = QParam(Fraction(999, 1000))
        val = kernel_eval(20.0, q, DEFAULT_POLICY)
        assert abs(val) < 1e-40

    @given(q_params, st.fractions(min_value=0, max_value=1, max_denominator=16))
    @settings(max_examples=30, deadline=None)
    def test_positive_and_bounded_on_the_support(self, q, t):
        # x^2 = t * nu^2 keeps the node inside [-nu, nu], where every factor
        # of the kernel's product form is positive
        x2 = float(t / (1 - q.value))
        val = kernel_eval_x2(x2, q, DEFAULT_POLICY)
        assert 0 < val <= 1.0 + 1e-12


class TestNormalization:
    def test_reference_values(self):
        pol = DEFAULT_POLICY
        assert c_of_q(QParam(Fraction(1, 4)), pol).float_value == pytest.approx(
            2.192551320721914, rel=1e-14)
        assert c_of_q(Q_HALF, pol).float_value == pytest.approx(
            2.321619031711791, rel=1e-14)

    def test_exact_mode_returns_surd(self):
        r = c_of_q(Q_HALF, TruncationPolicy.exact(48))
        assert isinstance(r.surd_value, QScalar)
        assert r.surd_value.surd_exponent == 1
        assert float(r.surd_value) == pytest.approx(r.float_value, rel=1e-13)

    def test_float_mode_has_no_surd(self):
        assert c_of_q(Q_HALF, DEFAULT_POLICY).surd_value is None

    def test_methods_agree(self):
        for qv in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
            q = QParam(qv)
            a = c_of_q(q, DEFAULT_POLICY, method="interchanged_sum").float_value
            b = c_of_q(q, DEFAULT_POLICY, method="double_sum").float_value
            assert abs(a - b) < 1e-12

    def test_unknown_method_rejected(self):
        with pytest.raises(DomainError):
            c_of_q(Q_HALF, DEFAULT_POLICY, method="nope")

    def test_insufficient_budget_raises_instead_of_lying(self):
        q = QParam(Fraction(999, 1000))
        with pytest.raises(TruncationError):
            c_of_q(q, TruncationPolicy(max_terms=512))

    def test_classical_limit_approaches_sqrt_two_pi(self):
        gap_9 = abs(c_of_q(QParam(Fraction(9, 10)), DEFAULT_POLICY).float_value
                    - SQRT_TWO_PI)
        gap_99 = abs(c_of_q(QParam(Fraction(99, 100)), DEFAULT_POLICY).float_value
                     - SQRT_TWO_PI)
        assert gap_99 < gap_9


class TestMoments:
    def test_closed_form_is_double_factorial(self):
        assert moment_closed_form(0) == q_double_factorial(0)
        assert moment_closed_form(2) == q_bracket(1) * q_bracket(3)
        assert moment_closed_form(3) == q_bracket(1) * q_bracket(3) * q_bracket(5)

    def test_closed_form_values_at_half(self):
        assert moment_closed_form(2).eval(Q_HALF) == Fraction(7, 4)
        assert moment_closed_form(3).eval(Q_HALF) == Fraction(217, 64)

    @pytest.mark.parametrize("k", [0, 2, 4, 6])
    def test_quadrature_matches_closed_form(self, k):
        got = moment_by_integration(k, Q_HALF, DEFAULT_POLICY)
        want = float(moment_closed_form(k // 2).eval(Q_HALF))
        assert got == pytest.approx(want, abs=1e-10)

    @pytest.mark.parametrize("k", [1, 3, 5, 7])
    def test_odd_moments_vanish_exactly(self, k):
        assert moment_by_integration(k, Q_HALF, DEFAULT_POLICY) == 0.0

    def test_negative_order_rejected(self):
        with pytest.raises(DomainError):
            moment_by_integration(-1, Q_HALF, DEFAULT_POLICY)

    def test_exact_mode_returns_rational_close_to_closed_form(self):
        got = moment_by_integration(4, Q_HALF, TruncationPolicy.exact(128))
        gap = got - Fraction(7, 4)
        # truncated node sum, not the closed form; compare only as floats
        assert got != Fraction(7, 4)
        assert abs(float(gap)) < 1e-30

    def test_recursion_ratio_is_odd_bracket(self):
        prev = moment_by_integration(2, Q_HALF, DEFAULT_POLICY)
        curr = moment_by_integration(4, Q_HALF, DEFAULT_POLICY)
        assert curr / prev == pytest.approx(float(q_bracket(3).eval(Q_HALF)), abs=1e-10)

    def test_tiny_budget_near_classical_limit_raises(self):
        q = QParam(Fraction(999, 1000))
        with pytest.raises(TruncationError):
            moment_by_integration(4, q, TruncationPolicy(max_terms=64))

    @given(q_params, st.integers(min_value=0, max_value=3))
    @settings(max_examples=20, deadline=None)
    def test_even_moments_positive_and_increasing_in_order(self, q, n):
        lo = moment_by_integration(2 * n, q, DEFAULT_POLICY)
        hi = moment_by_integration(2 * n + 2, q, DEFAULT_POLICY)
        assert lo > 0
        # ratio is [2n+1]_q >= 1
        assert hi >= lo * 0.999
