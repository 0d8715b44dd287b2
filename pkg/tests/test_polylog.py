from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from reglab import INF, PadicField, RationalFunction, Unreachable, li2, lmod2, ltwo, padic_log
from reglab.polylog import ColemanExpression, constant_term_at, dilog_integrate, eval_expr

K = PadicField(7, 20, 2)
z = RationalFunction.z()


@st.composite
def reachable(draw):
    """A rational in a residue disc of 0, 1 or inf."""
    x = Fraction(7 * draw(st.integers(1, 200)), draw(st.sampled_from([1, 2, 3, 4, 5, 6, 8, 9])))
    kind = draw(st.sampled_from(["small", "large", "near1"]))
    return {"small": x, "large": 1 / x, "near1": 1 + x}[kind]


def test_li2_values(K):
    assert li2(0, K).value.is_zero()
    assert li2(7, K).value == K(oracles.LI2_7)


def test_li2_reflection_with_branch(K3):
    # li2(z) + li2(1 - z) = -log z log(1 - z), and log 7 = 3
    lhs = li2(7, K3).value + li2(-6, K3).value
    assert lhs == -K3(3) * K3(oracles.LOG_MINUS_6)


def test_ltwo_values(K3):
    assert ltwo(1, K3).value.is_zero()
    assert ltwo(INF, K3).value.is_zero()
    assert ltwo(7, K3).value + ltwo(Fraction(1, 7), K3).value == K3(9) / 2


def test_lmod2_values(K):
    assert lmod2(0, K).value.is_zero()
    assert lmod2(INF, K).value.is_zero()
    assert (lmod2(7, K).value + lmod2(Fraction(1, 7), K).value).is_zero()
    assert (lmod2(7, K).value + lmod2(-6, K).value).is_zero()


def test_unreachable_points_raise(K):
    with pytest.raises(Unreachable):
        li2(3, K)


def test_integrating_log_against_dlog_one_minus_z(K):
    # dlog(1 - z) = dz / (z - 1)
    out = dilog_integrate(ColemanExpression.log_of(K, z) * (1 / (z - 1)))
    assert (out - ColemanExpression.ltwo_of(K, z)).is_zero()


def test_integrating_log_against_dlog_z(K):
    out = dilog_integrate(ColemanExpression.log_of(K, z) * (1 / z))
    half_sq = (ColemanExpression.log_of(K, z) * ColemanExpression.log_of(K, z)).scale(K(1) / 2)
    assert (out - half_sq).is_zero()


def test_integrating_shifted_logs(K3):
    integrand = ColemanExpression.log_of(K3, z - 2) * (1 / (z - 5))
    out = dilog_integrate(integrand)
    assert (out.derivative() - integrand).is_zero()
    # log 3 log(1 - (z - 2)/3) + L2((z - 2)/3) differs from the output by a constant
    closed = (ColemanExpression.log_of(K3, 1 - (z - 2) / 3).scale(padic_log(K3(3)))
              + ColemanExpression.ltwo_of(K3, (z - 2) / 3))
    assert (out - closed).derivative().is_zero()


def test_ltwo_constant_terms(K3):
    assert constant_term_at(ColemanExpression.ltwo_of(K3, z), 0).is_zero()
    # at inf with t = 1/z: L2(3z) = log^2(3z)/2 - L2(t/3) and log(3z) = log 3 - log t
    l3 = padic_log(K3(3))
    assert constant_term_at(ColemanExpression.ltwo_of(K3, 3 * z), INF) == l3 * l3 / 2


def test_eval_rational(K):
    assert eval_expr(ColemanExpression.rational(K, 1 / (z - 2)), 3) == K(1)


@settings(max_examples=40, deadline=None)
@given(reachable())
def test_lmod2_inversion_and_reflection(x):
    L = lambda w: lmod2(w, K).value  # noqa: E731
    assert (L(x) + L(1 / x)).is_zero()
    assert (L(x) + L(1 - x)).is_zero()


@settings(max_examples=40, deadline=None)
@given(reachable())
def test_ltwo_inversion(x):
    lg = padic_log(K(x))
    assert ltwo(x, K).value + ltwo(1 / x, K).value == lg * lg / 2


small = st.builds(lambda k, d: Fraction(7 * k, d), st.integers(1, 200).filter(lambda k: k % 7),
                  st.sampled_from([1, 2, 3, 4, 5, 6, 8, 9]))


@settings(max_examples=25, deadline=None)
@given(small, small)
def test_multiplication_relation(x, y):
    L = lambda w: lmod2(w, K).value  # noqa: E731
    rhs = L(x) + L(y) + L(x * (1 - y) / (x - 1)) + L(y * (1 - x) / (y - 1))
    assert L(x * y) == rhs
