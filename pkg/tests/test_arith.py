from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from corpus import N
from strategies import dyadic_nf, infinitesimal_nf, rational_nf
from surreals import ordinal as Ord
from surreals.arith import (TruncationPolicy, conway_add, conway_mul, div_exact,
                            inv_truncated, inverse_residual, nf_add, nf_mul,
                            oracle_equivalence, sign_sequences)
from surreals.core import NormalForm, SignSeq, length_of, monomial, signseq_to_nf
from surreals.errors import DivisionByZero, InexactDivision, InputTooDeep

W = N("w")
S = SignSeq.parse
ZERO = NormalForm()


@pytest.mark.parametrize("x, y, expected", [
    (W + 1, N(-1), W),
    (monomial(Fraction(1, 2)), monomial(Fraction(1, 2), 2), monomial(Fraction(1, 2), 3)),
    (W * W + W, -(W * W) + 5, W + 5),
])
def test_add_examples(x, y, expected):
    assert nf_add(x, y) == expected


@pytest.mark.parametrize("x, y, expected", [
    (W + 1, W - 1, W * W - 1),
    (monomial(Fraction(1, 2)), monomial(Fraction(1, 2)), W),
    (W + 3, ZERO, ZERO),
])
def test_mul_examples(x, y, expected):
    assert nf_mul(x, y) == expected


@given(rational_nf, rational_nf, rational_nf)
def test_ring_axioms(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + ZERO == x and x * N(1) == x
    assert x - x == ZERO


@given(rational_nf, rational_nf)
def test_order_compatible_with_ring(x, y):
    one = N(1)
    if x < y:
        assert x + one < y + one
        assert x * W < y * W
        assert -y < -x


@given(rational_nf, st.sampled_from([N(2), W, monomial(-1, Fraction(-3, 5)), monomial(Fraction(1, 2), 7)]))
def test_exact_division_by_monomials(x, y):
    assert div_exact(x, y) * y == x


def test_division_errors():
    with pytest.raises(DivisionByZero):
        div_exact(W, ZERO)
    with pytest.raises(InexactDivision):
        div_exact(N(1), W + 1)
    with pytest.raises(DivisionByZero):
        inv_truncated(ZERO, 3)


def test_inv_truncated_examples():
    got = inv_truncated(N(1) - monomial(-1), TruncationPolicy(3))
    assert got == N(1) + monomial(-1) + monomial(-2) + monomial(-3)
    assert got.approx
    assert inverse_residual(N(1) - monomial(-1), got).leading_exponent == N(-4)
    assert inv_truncated(W, 5) == monomial(-1) and not inv_truncated(W, 5).approx
    assert inv_truncated(N(2), 1) == N(Fraction(1, 2))


@given(rational_nf.filter(bool), st.integers(1, 5))
def test_inv_truncated_residual_contract(x, k):
    y = inv_truncated(x, k)
    residual = inverse_residual(x, y)
    lead = x.terms[0]
    delta = (x * monomial(-x.leading_exponent, 1 / lead[1])) - 1
    if not delta:
        assert residual == ZERO
    else:
        assert residual.leading_exponent <= delta.leading_exponent * (k + 1)


@given(infinitesimal_nf)
def test_inverse_of_one_plus_infinitesimal_converges(d):
    # raising K only ever pushes the residual further down
    x = N(1) + d
    leads = [inverse_residual(x, inv_truncated(x, k)).leading_exponent for k in range(1, 5)]
    assert all(a > b for a, b in zip(leads, leads[1:]))


def test_policy_rejects_zero_order():
    with pytest.raises(ValueError):
        TruncationPolicy(0)


@pytest.mark.parametrize("x, y, op, expected", [
    ("+ -", "+ -", conway_add, "+"),
    ("+ - +", "()", conway_add, "+ - +"),
    ("+", "+", conway_add, "+^2"),
    ("+ -", "+^2", conway_mul, "+"),
    ("+ - -", "+", conway_mul, "+ - -"),
    ("-", "-", conway_mul, "+"),
])
def test_oracle_examples(x, y, op, expected):
    assert op(S(x), S(y)) == S(expected)


def test_oracle_depth_bound():
    with pytest.raises(InputTooDeep):
        conway_add(S("+^8"), S("+"))
    with pytest.raises(InputTooDeep):
        conway_mul(S("+^w"), S("+"))


def test_oracle_exhaustive_birthday_4():
    report = oracle_equivalence(4)
    for op in ("add", "mul"):
        assert report[op]["checked"] == 31 * 31
        assert report[op]["mismatches"] == []


def test_oracle_randomized_birthday_7():
    rng = random.Random(7)
    seqs = list(sign_sequences(7))
    pairs = [(rng.choice(seqs), rng.choice(seqs)) for _ in range(150)]
    report = oracle_equivalence(7, pairs=pairs)
    assert report["add"]["mismatches"] == [] and report["mul"]["mismatches"] == []


def test_oracle_is_deterministic():
    x, y = S("+ - + -"), S("- + + -")
    assert conway_mul(x, y) == conway_mul(x, y) == conway_mul(y, x)


def members_below(lam):
    pool = [N(1), N(Fraction(-3, 4)), W, W + 1, monomial(-1), monomial(Fraction(1, 2)),
            monomial(2, 3) - W, monomial(N("w")), monomial(N("w") + 1, -1), monomial(-N("w"), Fraction(1, 2))]
    return [x for x in pool if Ord.compare(length_of(x), lam) < 0]


@pytest.mark.parametrize("lam", ["w", "w^2", "w^w"])
def test_no_lt_closure_sampling(lam):
    lam = Ord.Ordinal.parse(lam)
    xs = members_below(lam)
    assert xs
    for x in xs:
        for y in xs:
            if Ord.is_additive(lam):
                assert Ord.compare(length_of(x + y), lam) < 0
            if Ord.is_multiplicative(lam):
                assert Ord.compare(length_of(x * y), lam) < 0


def test_w_squared_not_closed_under_products():
    # w^2 is additive but not multiplicative: w * w has length w^2
    lam = Ord.Ordinal.parse("w^2")
    assert Ord.compare(length_of(W), lam) < 0
    assert Ord.compare(length_of(W * W), lam) >= 0


@given(dyadic_nf, dyadic_nf)
def test_oracle_agrees_on_finite_samples(x, y):
    # finite values only: project onto the real part
    xr = NormalForm.of(x.terms[-1][1]) if x.terms and x.terms[-1][0] == NormalForm() else NormalForm()
    yr = NormalForm.of(y.terms[-1][1]) if y.terms and y.terms[-1][0] == NormalForm() else NormalForm()
    from surreals.core import nf_to_signseq
    sx, sy = nf_to_signseq(xr), nf_to_signseq(yr)
    if sx.length.finite_value <= 7 and sy.length.finite_value <= 7:
        assert signseq_to_nf(conway_add(sx, sy)) == xr + yr
