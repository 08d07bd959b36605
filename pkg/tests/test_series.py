from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harmdens import _backend, oracles
from harmdens import series as ser
from harmdens.errors import (CompositionDomainError, ParityError, PowerDomainError,
                             ReversionDomainError)
from harmdens.series import TruncatedSeries as TS


def S(*coeffs, parity="none"):
    return TS(coeffs, parity=parity)


def test_product_of_sinc(backend):
    sinc = S(1, 0, F(-1, 6), 0, F(1, 120), parity="even")
    assert sinc * sinc == S(1, 0, F(-1, 3), 0, F(2, 45))
    assert (sinc * sinc).parity == "even"


def test_add_zero_and_scale():
    s = S(1, 2, 3)
    assert s + TS.constant(0, 2) == s
    assert S(1, 0, 1) * F(3, 2) == S(F(3, 2), 0, F(3, 2))


def test_mixed_orders_truncate_to_smaller():
    assert (S(1, 1, 1, 1) + S(1, 1)).order == 1
    assert (S(1, 1, 1, 1) * S(1, 1, 1)).order == 2


def test_compose_examples(backend):
    assert ser.compose(ser.elementary("cos", 4), S(0, 0, 1, 0, 0)) == S(1, 0, 0, 0, F(-1, 2))
    s = S(1, 2, 3, 4)
    assert ser.compose(s, TS.identity(3)) == s
    got = ser.compose(ser.elementary("log1p", 4), S(0, 0, 1, 1, 0))
    assert got == S(0, 0, 1, 1, F(-1, 2))


def test_compose_needs_zero_constant():
    with pytest.raises(CompositionDomainError):
        ser.compose(S(1, 1), S(1, 1))


def test_revert_examples(backend):
    assert ser.revert(TS.identity(5)) == TS.identity(5)
    assert ser.revert(S(0, 1, 0, F(1, 6), parity="odd")) == S(0, 1, 0, F(-1, 6))
    assert ser.revert(S(0, 1, 0, F(1, 6))).parity == "none"


@pytest.mark.parametrize("bad", [S(1, 1, 1), S(0, 2, 1), S(0)])
def test_revert_domain(bad):
    with pytest.raises(ReversionDomainError):
        ser.revert(bad)


def test_pow_examples(backend):
    s = S(1, 0, -1, 0, F(2, 5), parity="even")
    assert ser.pow_q(s, F(-1, 3)) == S(1, 0, F(1, 3), 0, F(4, 45))
    assert ser.pow_q(s, 0) == TS.constant(1, 4)
    assert ser.pow_q(ser.pow_q(s, 2), F(1, 2)) == s
    assert s ** 3 == s * s * s


def test_pow_domain():
    with pytest.raises(PowerDomainError):
        ser.pow_q(S(2, 1), F(1, 2))
    with pytest.raises(PowerDomainError):
        ser.log(S(0, 1))
    with pytest.raises(CompositionDomainError):
        ser.exp(S(1, 1))


def test_calculus_examples():
    psi = S(1, 0, F(1, 2), 0, F(13, 72), parity="even")
    eta = ser.antiderivative(psi)
    assert eta == S(0, 1, 0, F(1, 6), 0, F(13, 360))
    assert eta.parity == "odd"
    assert ser.derivative(TS.constant(1, 3)) == S(0, 0, 0)
    assert ser.calculus(eta, "derivative") == psi


def test_elementary_examples():
    assert ser.elementary("sin", 5) == S(0, 1, 0, F(-1, 6), 0, F(1, 120))
    assert ser.elementary("cosh", 4) == S(1, 0, F(1, 2), 0, F(1, 24))
    assert ser.elementary("log1p", 3) == S(0, 1, F(-1, 2), F(1, 3))
    with pytest.raises(ValueError):
        ser.elementary("tan", 3)


def test_exp_log_inverse(backend):
    big = S(1, F(3, 7), F(-11, 5), F(2, 9), 5, F(-1, 13), 0, F(17, 3))
    assert ser.exp(ser.log(big)) == big
    assert ser.log(ser.exp(ser.elementary("sin", 9))) == ser.elementary("sin", 9)


def test_parity_validated():
    with pytest.raises(ParityError):
        S(1, 1, parity="even")
    with pytest.raises(ParityError):
        S(1, 0, 1, parity="odd")
    with pytest.raises(ParityError):
        S(1, 1).with_parity("even")
    assert S(0, 1, 0, 2).detect_parity() == "odd"
    assert S(0, 1, 0, 2).shift(1).parity == "none"
    assert S(0, 1, 0, 2, parity="odd").shift(-1).parity == "even"


def test_floats_rejected():
    with pytest.raises(TypeError):
        S(1, 0.5)
    assert S("1/3", 2)[0] == F(1, 3)


def test_evaluate_and_json():
    s = S(1, 0, F(-1, 6))
    assert s.evaluate(F(1, 2)) == F(23, 24)
    assert s.evaluate(0.5) == pytest.approx(23 / 24)
    doc = s.to_json()
    assert doc["coeffs"] == ["1", "0", "-1/6"]
    assert TS.from_json(doc) == s
    assert repr(ser.elementary("sin", 3)) == "TruncatedSeries(r - 1/6*r^3 + O(r^4), parity='odd')"


# -- properties ---------------------------------------------------------------

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def series_st(order=6, unit=False, zero=False):
    body = st.lists(rationals, min_size=order, max_size=order)
    if unit:
        return body.map(lambda cs: TS([1] + cs))
    if zero:
        return body.map(lambda cs: TS([0] + cs))
    return st.lists(rationals, min_size=order + 1, max_size=order + 1).map(TS)


@settings(max_examples=60, deadline=None)
@given(series_st(), series_st(), series_st())
def test_ring_axioms(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == TS.constant(0, a.order)
    assert a * TS.constant(1, a.order) == a


@settings(max_examples=40, deadline=None)
@given(series_st(unit=True), rationals, rationals)
def test_power_additivity(s, p, q):
    assert ser.pow_q(s, p) * ser.pow_q(s, q) == ser.pow_q(s, p + q)


@settings(max_examples=40, deadline=None)
@given(series_st(zero=True))
def test_revert_is_inverse(s):
    s = S(0, 1, *s.coeffs[2:])
    inv = ser.revert(s)
    assert ser.compose(s, inv) == TS.identity(s.order)
    assert ser.compose(inv, s) == TS.identity(s.order)
    assert ser.revert(inv) == s


@settings(max_examples=40, deadline=None)
@given(series_st(), series_st(zero=True))
def test_compose_homomorphism(a, inner):
    b = S(1, 2, 0, 3, 0, 0, 1)
    assert ser.compose(a * b, inner) == ser.compose(a, inner) * ser.compose(b, inner)


@settings(max_examples=30, deadline=None)
@given(series_st(unit=True), series_st(zero=True), rationals)
def test_kernels_match_brute_force(u, z, q):
    """Fast kernels against the schoolbook routines in ``oracles``."""
    n = u.order + 1
    assert list(ser.pow_q(u, q)) == oracles.binomial_pow(u.coeffs, q, n)
    assert list(ser.compose(u, z)) == oracles.power_compose(u.coeffs, z.coeffs, n)
    w = S(0, 1, *z.coeffs[2:])
    assert list(ser.revert(w)) == oracles.backsub_revert(w.coeffs, n)
    assert list(u * z) == oracles.naive_mul(u.coeffs, z.coeffs, n)


@pytest.mark.skipif("cython" not in _backend.BACKENDS, reason="extension not built")
@settings(max_examples=40, deadline=None)
@given(series_st(8, unit=True), series_st(8, zero=True), rationals)
def test_backends_agree(u, z, q):
    py, cy = _backend.BACKENDS["python"], _backend.BACKENDS["cython"]
    n = 9
    w = [F(0), F(1)] + list(z.coeffs[2:])
    assert py.mul(u.coeffs, z.coeffs, n) == cy.mul(u.coeffs, z.coeffs, n)
    assert py.compose(u.coeffs, z.coeffs, n) == cy.compose(u.coeffs, z.coeffs, n)
    assert py.pow_series(u.coeffs, q.numerator, q.denominator, n) == \
        cy.pow_series(u.coeffs, q.numerator, q.denominator, n)
    assert py.exp_series(z.coeffs, n) == cy.exp_series(z.coeffs, n)
    assert py.log_series(u.coeffs, n) == cy.log_series(u.coeffs, n)
    assert py.revert(w, n) == cy.revert(w, n)


def test_big_integers_survive_gmp_roundtrip(backend):
    huge = F(3 ** 200 + 1, 7 ** 90)
    s = S(1, huge, -huge)
    assert (s * s)[2] == 2 * -huge + huge * huge
