"""Field operations on normal forms, truncated inversion and the Conway oracle.

Normal-form arithmetic is formal: sums merge terms by exponent, products
convolve with surreal addition of exponents.  The oracle works on finite sign
sequences only and uses nothing but the genetic definitions with canonical
options, so it is an independent check on the formal path.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key, lru_cache

from .core import (MINUS, PLUS, NormalForm, SignSeq, ZERO, as_exponent,
                   compare, compare_exponents, exp_value, monomial,
                   signseq_to_nf)
from .errors import DivisionByZero, InexactDivision, InputTooDeep

_by_exponent_desc = cmp_to_key(lambda s, t: compare_exponents(t[0], s[0]))


def _collect(pairs, approx: bool) -> NormalForm:
    acc = {}
    for e, r in pairs:
        acc[e] = acc.get(e, Fraction(0)) + r
    terms = sorted(((e, r) for e, r in acc.items() if r), key=_by_exponent_desc)
    return NormalForm(tuple(terms), approx)


def nf_add(x: NormalForm, y: NormalForm) -> NormalForm:
    return _collect(itertools.chain(x.terms, y.terms), x.approx or y.approx)


def nf_neg(x: NormalForm) -> NormalForm:
    return -x


def nf_sub(x: NormalForm, y: NormalForm) -> NormalForm:
    return nf_add(x, -y)


def exponent_sum(e, f):
    if isinstance(e, NormalForm) and not e.terms:
        return f
    if isinstance(f, NormalForm) and not f.terms:
        return e
    return as_exponent(nf_add(exp_value(e), exp_value(f)))


def nf_mul(x: NormalForm, y: NormalForm) -> NormalForm:
    pairs = ((exponent_sum(e, f), r * s) for e, r in x.terms for f, s in y.terms)
    return _collect(pairs, x.approx or y.approx)


def scale(x: NormalForm, q) -> NormalForm:
    q = Fraction(q)
    if not q:
        return NormalForm((), x.approx)
    return NormalForm(tuple((e, r * q) for e, r in x.terms), x.approx)


def nf_pow(x: NormalForm, n: int) -> NormalForm:
    """x**n for a natural number n, by repeated squaring."""
    if n < 0:
        raise ValueError("negative powers need inv_truncated or div_exact")
    result, base = NormalForm.of(1), x
    while n:
        if n & 1:
            result = nf_mul(result, base)
        base = nf_mul(base, base)
        n >>= 1
    return result


def div_exact(x: NormalForm, y: NormalForm) -> NormalForm:
    """x / y when y is a single term r*w^b; anything else has infinite support."""
    if not y.terms:
        raise DivisionByZero("division by zero")
    if len(y.terms) != 1:
        raise InexactDivision(f"{y} is not a monomial times a rational; use inv_truncated")
    e, r = y.terms[0]
    return nf_mul(x, monomial(-exp_value(e), 1 / r))


@dataclass(frozen=True)
class TruncationPolicy:
    max_terms: int = 4

    def __post_init__(self):
        if self.max_terms < 1:
            raise ValueError("truncation order K must be at least 1")


def split_leading(x: NormalForm):
    """x = r * w^a * (1 + delta) with delta infinitesimal; returns (r, a, delta)."""
    e, r = x.terms[0]
    a = exp_value(e)
    delta = nf_sub(nf_mul(x, monomial(-a, 1 / r)), NormalForm.of(1))
    return r, a, delta


def inv_truncated(x: NormalForm, K: TruncationPolicy | int = TruncationPolicy()) -> NormalForm:
    """Order-K inverse via the geometric series in the infinitesimal part."""
    k = K.max_terms if isinstance(K, TruncationPolicy) else int(K)
    if k < 1:
        raise ValueError("truncation order K must be at least 1")
    if not x.terms:
        raise DivisionByZero("inverse of zero")
    r, a, delta = split_leading(x)
    series = NormalForm.of(1)
    power = NormalForm.of(1)
    neg = -delta
    for _ in range(k):
        power = nf_mul(power, neg)
        series = nf_add(series, power)
    out = nf_mul(monomial(-a, 1 / r), series)
    return out.flagged(bool(delta) or x.approx)


def inverse_residual(x: NormalForm, approx_inverse: NormalForm) -> NormalForm:
    return nf_sub(nf_mul(x, approx_inverse), NormalForm.of(1)).flagged(False)


# ----------------------------------------------------------------------------
# Conway oracle on finite sign sequences (tuples of +1/-1)
# ----------------------------------------------------------------------------

DEFAULT_BIRTHDAY_BOUND = 7


def _tcmp(x: tuple, y: tuple) -> int:
    n = min(len(x), len(y))
    for i in range(n):
        if x[i] != y[i]:
            return 1 if x[i] > y[i] else -1
    a = x[n] if len(x) > n else 0
    b = y[n] if len(y) > n else 0
    return (a > b) - (a < b)


def _above(s: tuple) -> tuple:
    beta = 0
    while beta < len(s) and s[beta] == PLUS:
        beta += 1
    return (PLUS,) * (beta if beta < len(s) else beta + 1)


def _below(s: tuple) -> tuple:
    return tuple(-t for t in _above(tuple(-t for t in s)))


def _simplest(left: list, right: list) -> tuple:
    lo = max(left, key=cmp_to_key(_tcmp)) if left else None
    hi = min(right, key=cmp_to_key(_tcmp)) if right else None
    if lo is None and hi is None:
        return ()
    if hi is None:
        return _above(lo)
    if lo is None:
        return _below(hi)
    if _tcmp(lo, hi) >= 0:
        raise AssertionError("oracle produced an invalid cut")
    p = 0
    while p < len(lo) and p < len(hi) and lo[p] == hi[p]:
        p += 1
    a = lo[p] if p < len(lo) else 0
    b = hi[p] if p < len(hi) else 0
    if a == MINUS and b == PLUS:
        return lo[:p]
    if a == 0:
        return lo + (PLUS,) + _below(hi[p + 1:])
    return hi + (MINUS,) + _above(lo[p + 1:])


def _options(x: tuple):
    lows = [x[:i] for i in range(len(x)) if x[i] == PLUS]
    highs = [x[:i] for i in range(len(x)) if x[i] == MINUS]
    return lows, highs


def _neg(x: tuple) -> tuple:
    return tuple(-s for s in x)


@lru_cache(maxsize=None)
def _cadd(x: tuple, y: tuple) -> tuple:
    if y < x:
        return _cadd(y, x)
    xl, xr = _options(x)
    yl, yr = _options(y)
    left = [_cadd(a, y) for a in xl] + [_cadd(x, b) for b in yl]
    right = [_cadd(a, y) for a in xr] + [_cadd(x, b) for b in yr]
    return _simplest(left, right)


def _csub(x: tuple, y: tuple) -> tuple:
    return _cadd(x, _neg(y))


@lru_cache(maxsize=None)
def _cmul(x: tuple, y: tuple) -> tuple:
    if y < x:
        return _cmul(y, x)
    xl, xr = _options(x)
    yl, yr = _options(y)

    def opt(a, b):
        # a*y + x*b - a*b
        return _csub(_cadd(_cmul(a, y), _cmul(x, b)), _cmul(a, b))

    left = [opt(a, b) for a in xl for b in yl] + [opt(a, b) for a in xr for b in yr]
    right = [opt(a, b) for a in xl for b in yr] + [opt(a, b) for a in xr for b in yl]
    return _simplest(left, right)


def _check_depth(x: SignSeq, bound: int) -> tuple:
    if not x.is_finite or x.length.finite_value > bound:
        raise InputTooDeep(f"{x} is beyond the oracle birthday bound {bound}")
    return x.signs()


def conway_add(x: SignSeq, y: SignSeq, bound: int = DEFAULT_BIRTHDAY_BOUND) -> SignSeq:
    return SignSeq.from_signs(_cadd(_check_depth(x, bound), _check_depth(y, bound)))


def conway_mul(x: SignSeq, y: SignSeq, bound: int = DEFAULT_BIRTHDAY_BOUND) -> SignSeq:
    return SignSeq.from_signs(_cmul(_check_depth(x, bound), _check_depth(y, bound)))


def conway_neg(x: SignSeq) -> SignSeq:
    return -x


def sign_sequences(max_length: int):
    """Every finite sign sequence of length at most max_length, shortest first."""
    for n in range(max_length + 1):
        for signs in itertools.product((MINUS, PLUS), repeat=n):
            yield SignSeq.from_signs(signs)


def oracle_equivalence(max_birthday: int = 5, ops=("add", "mul"), pairs=None) -> dict:
    """Compare oracle and normal-form results; returns counts and mismatches per op.

    ``pairs`` overrides the exhaustive enumeration (used for randomized runs).
    """
    if pairs is None:
        seqs = list(sign_sequences(max_birthday))
        pairs = list(itertools.product(seqs, seqs))
    bound = max(max_birthday, DEFAULT_BIRTHDAY_BOUND)
    report = {}
    for op in ops:
        oracle, formal = {"add": (conway_add, nf_add), "mul": (conway_mul, nf_mul)}[op]
        bad = []
        for x, y in pairs:
            got = signseq_to_nf(oracle(x, y, bound))
            want = formal(signseq_to_nf(x), signseq_to_nf(y))
            if compare(got, want):
                bad.append((str(x), str(y), str(got), str(want)))
        report[op] = {"checked": len(pairs), "mismatches": bad}
    return report


__all__ = [
    "nf_add", "nf_sub", "nf_neg", "nf_mul", "nf_pow", "scale", "div_exact",
    "TruncationPolicy", "split_leading", "inv_truncated", "inverse_residual",
    "conway_add", "conway_mul", "conway_neg", "sign_sequences", "oracle_equivalence",
    "DEFAULT_BIRTHDAY_BOUND", "ZERO",
]
