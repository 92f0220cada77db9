from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from corpus import (EPS0, N, W, g_corpus, log_monomial_samples, purely_infinite_samples,
                    supported)
from strategies import infinitesimal_nf, rational_nf
from surreals import ordinal as Ord
from surreals.core import NormalForm, length_of, monomial
from surreals.errors import (ApproximationFlagged, NonpositiveArgument,
                             NotExactlyRepresentable, UnsupportedHDomain)
from surreals.explog import (EXACT, EvalMode, check_length_bounds, decompose, exp,
                             exp_length_bound, exp_n, exp_residual, ln, ln_length_bound,
                             ln_monomial_length_bound, ln_n, rational_ln)

ZERO = NormalForm()
PI = purely_infinite_samples(100)
MONOMIALS = log_monomial_samples(100)


def test_decompose_examples():
    x = W * W + W * 3 + 5 + monomial(-1, Fraction(1, 2))
    d = decompose(x)
    assert (d.purely_infinite, d.real_part, d.infinitesimal) == (W * W + W * 3, 5, monomial(-1, Fraction(1, 2)))
    d = decompose(ZERO)
    assert (d.purely_infinite, d.real_part, d.infinitesimal) == (ZERO, 0, ZERO)
    assert decompose(monomial(Fraction(1, 2))).purely_infinite == monomial(Fraction(1, 2))


@given(rational_nf)
def test_decompose_recomposes(x):
    d = decompose(x)
    assert d.recompose() == x
    assert all(e > 0 for e in d.purely_infinite.exponents())
    assert all(e < 0 for e in d.infinitesimal.exponents())


def test_exp_examples():
    assert exp(W) == monomial(W)
    assert exp(ZERO) == N(1)
    got = exp(monomial(-1), EvalMode.order(2))
    assert got == N(1) + monomial(-1) + monomial(-2, Fraction(1, 2))
    assert got.approx


def test_ln_examples():
    assert ln(W) == monomial(monomial(-1))
    assert ln(monomial(W * W)) == W * W
    got = ln(N(1) + monomial(-1), EvalMode.order(2))
    assert got == monomial(-1) - monomial(-2, Fraction(1, 2))
    assert got.approx


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_iterated_ln_of_omega(n):
    assert ln_n(W, n) == monomial(monomial(-n))


def test_exp_n_undoes_ln_n():
    for n in range(1, 4):
        assert exp_n(ln_n(W, n), n) == W


def test_exact_mode_refusals():
    with pytest.raises(NotExactlyRepresentable):
        exp(W + 1)
    with pytest.raises(NotExactlyRepresentable):
        exp(monomial(-1))
    with pytest.raises(NotExactlyRepresentable):
        ln(W * 2)
    with pytest.raises(NotExactlyRepresentable):
        ln(W + 1)
    with pytest.raises(NonpositiveArgument):
        ln(ZERO)
    with pytest.raises(NonpositiveArgument):
        ln(-W, EvalMode.order(3))
    with pytest.raises(UnsupportedHDomain):
        ln(monomial(EPS0))


def test_flag_propagates_and_blocks_exact_mode():
    approx = exp(N(1), EvalMode.order(3))
    assert approx.approx
    with pytest.raises(ApproximationFlagged):
        exp(approx)
    with pytest.raises(ApproximationFlagged):
        ln(approx)
    assert ln(approx, EvalMode.order(3)).approx


def test_mode_validation():
    with pytest.raises(ValueError):
        EvalMode.order(0)
    assert str(EXACT) == "exact" and str(EvalMode.order(5)) == "truncated(5)"


def test_ln_exp_round_trip():
    for x in PI:
        assert ln(exp(x)) == x


def test_exp_ln_round_trip_on_monomials():
    for m in MONOMIALS:
        assert exp(ln(m)) == m


def test_exp_homomorphism():
    for x, y in zip(PI, purely_infinite_samples(100, seed=1)):
        assert exp(x + y) == exp(x) * exp(y)


def test_exp_monotone_exact():
    xs = sorted(PI[:40])
    ys = [exp(x) for x in xs]
    assert all(a < b for a, b in zip(ys, ys[1:]))


@settings(max_examples=25)
@given(st.sampled_from(PI[:30]), rational_nf, st.integers(1, 4))
def test_exp_monotone_truncated(x, y, k):
    # Taylor partial sums only increase on r >= 0, so keep the real part there
    mode = EvalMode.order(k)
    small = decompose(y)
    z = x + abs(small.real_part) + small.infinitesimal
    w = z + 1
    assert exp(z, mode) < exp(w, mode)


@given(infinitesimal_nf, st.integers(1, 5))
def test_exp_residual_bound(d, k):
    residual = exp_residual(d, k)
    if residual:
        assert residual.leading_exponent <= d.leading_exponent * (k + 1)


def test_exp_residual_exact_on_purely_infinite():
    for x in PI[:10]:
        assert exp_residual(x, 3) == ZERO


@pytest.mark.parametrize("r", [Fraction(1, 3), Fraction(2), Fraction(10), Fraction(7, 5), Fraction(1, 100)])
def test_rational_ln_close_to_float(r):
    assert abs(float(rational_ln(r, 30)) - math.log(r)) < 1e-6


def test_truncated_exp_not_monotone_on_negative_reals():
    mode = EvalMode.order(2)
    assert exp(N(-2), mode) > exp(N(-1), mode)


def test_rational_ln_uses_configured_constant():
    assert rational_ln(Fraction(4), 5, ln2=Fraction(7, 10)) == Fraction(7, 5)
    with pytest.raises(NonpositiveArgument):
        rational_ln(Fraction(0), 5)


def test_truncated_ln_inverts_truncated_exp_to_order():
    # ln(exp(d)) - d is pushed below the K-th power of d
    d = monomial(-1, Fraction(1, 2))
    for k in range(1, 5):
        mode = EvalMode.order(k)
        err = ln(exp(d, mode), mode) - d
        assert not err or err.leading_exponent <= d.leading_exponent * (k + 1)


def test_length_bound_formulas():
    assert exp_length_bound(Ord.ONE) == Ord.Ordinal.parse("w^(w^5)")
    assert ln_monomial_length_bound(Ord.OMEGA) == Ord.Ordinal.parse("w^(w^3*4)")
    assert ln_length_bound(Ord.Ordinal.parse("2")) == Ord.Ordinal.parse("w^(w^9)")


def test_length_bounds_on_corpus():
    seen = 0
    dyadic = purely_infinite_samples(40, seed=2, dyadic=True)
    logs = [ln(m) for m in log_monomial_samples(40, seed=2, dyadic=True)]
    for a in g_corpus() + dyadic + logs:
        report = check_length_bounds(a)
        assert all(report.values()), (str(a), report)
        seen += len(report)
    assert seen > 150


def test_length_of_exp_examples():
    assert length_of(exp(W)) == Ord.Ordinal.parse("w^w")
    assert Ord.compare(length_of(ln(W)), ln_monomial_length_bound(length_of(W))) <= 0
    assert supported(exp, W + Fraction(1, 2)) is None
