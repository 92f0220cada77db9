"""exp and ln on normal forms.

Exact mode covers the structurally exact fragment: exp of purely infinite
numbers and ln of monomials.  Truncated mode multiplies in partial sums for
the real and infinitesimal parts and flags the result as an approximation.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from . import ordinal as O
from .arith import nf_add, nf_mul, nf_sub, scale, split_leading
from .core import NormalForm, ZERO, exp_value, length_of, monomial
from .errors import (ApproximationFlagged, NonpositiveArgument,
                     NotExactlyRepresentable)
from .gh import g_map, h_map
from .ordinal import Ordinal

# ln 2 to 30 decimal places; the truncated ln uses it for range reduction
LN2 = Fraction("0.693147180559945309417232121458")


@dataclass(frozen=True)
class EvalMode:
    truncated: bool = False
    K: int = 4
    ln2: Fraction = LN2

    def __post_init__(self):
        if self.K < 1:
            raise ValueError("truncation order K must be at least 1")

    @classmethod
    def exact(cls) -> EvalMode:
        return cls(False)

    @classmethod
    def order(cls, K: int, ln2: Fraction = LN2) -> EvalMode:
        return cls(True, K, ln2)

    def __str__(self):
        return f"truncated({self.K})" if self.truncated else "exact"


EXACT = EvalMode.exact()


@dataclass(frozen=True)
class Decomposition:
    purely_infinite: NormalForm
    real_part: Fraction
    infinitesimal: NormalForm

    def recompose(self) -> NormalForm:
        return nf_add(nf_add(self.purely_infinite, NormalForm.of(self.real_part)), self.infinitesimal)


def decompose(x: NormalForm) -> Decomposition:
    big, real, small = [], Fraction(0), []
    for e, r in x.terms:
        a = exp_value(e)
        if a > 0:
            big.append((e, r))
        elif a < 0:
            small.append((e, r))
        else:
            real = r
    return Decomposition(NormalForm(tuple(big)), real, NormalForm(tuple(small)))


def exp_purely_infinite(x: NormalForm) -> NormalForm:
    """exp x = w^(sum r_i w^g(a_i))."""
    exponent = ZERO
    for e, r in x.terms:
        exponent = nf_add(exponent, monomial(g_map(exp_value(e)), r))
    return monomial(exponent)


def exp_series(x: NormalForm, K: int) -> NormalForm:
    """sum_{k<=K} x^k/k!"""
    total, power = NormalForm.of(1), NormalForm.of(1)
    for k in range(1, K + 1):
        power = nf_mul(power, x)
        total = nf_add(total, scale(power, Fraction(1, factorial(k))))
    return total


def log1p_series(d: NormalForm, K: int) -> NormalForm:
    """sum_{1<=k<=K} (-1)^(k-1) d^k/k"""
    total, power = ZERO, NormalForm.of(1)
    for k in range(1, K + 1):
        power = nf_mul(power, d)
        total = nf_add(total, scale(power, Fraction((-1) ** (k - 1), k)))
    return total


def _rational_exp(r: Fraction, K: int) -> Fraction:
    return sum((r ** k / factorial(k) for k in range(K + 1)), Fraction(0))


def _rational_log1p(u: Fraction, K: int) -> Fraction:
    return sum((Fraction((-1) ** (k - 1), k) * u ** k for k in range(1, K + 1)), Fraction(0))


def rational_ln(r: Fraction, K: int, ln2: Fraction = LN2) -> Fraction:
    """Approximate ln r: reduce r = 2^j u with 2/3 <= u <= 4/3, then an order-K series."""
    if r <= 0:
        raise NonpositiveArgument(f"ln({r})")
    u, j = Fraction(r), 0
    while u > Fraction(4, 3):
        u /= 2
        j += 1
    while u < Fraction(2, 3):
        u *= 2
        j -= 1
    return j * ln2 + _rational_log1p(u - 1, K)


def exp(x: NormalForm, mode: EvalMode = EXACT) -> NormalForm:
    if x.approx and not mode.truncated:
        raise ApproximationFlagged(f"exp of the approximate value {x} in exact mode")
    parts = decompose(x)
    head = exp_purely_infinite(parts.purely_infinite)
    if not parts.real_part and not parts.infinitesimal:
        return head.flagged(x.approx)
    if not mode.truncated:
        raise NotExactlyRepresentable(
            f"exp({x}) has a nonzero real or infinitesimal part; use truncated mode")
    real = NormalForm.of(_rational_exp(parts.real_part, mode.K))
    small = exp_series(parts.infinitesimal, mode.K)
    return nf_mul(nf_mul(head, real), small).flagged(True)


def ln_monomial(a: NormalForm) -> NormalForm:
    """ln w^a = sum r_i w^h(a_i)."""
    out = ZERO
    for e, r in a.terms:
        out = nf_add(out, monomial(h_map(exp_value(e)), r))
    return out


def ln(x: NormalForm, mode: EvalMode = EXACT) -> NormalForm:
    if x <= 0:
        raise NonpositiveArgument(f"ln needs a positive argument, got {x}")
    if x.approx and not mode.truncated:
        raise ApproximationFlagged(f"ln of the approximate value {x} in exact mode")
    r0, a0, delta = split_leading(x)
    head = ln_monomial(a0)
    if r0 == 1 and not delta:
        return head.flagged(x.approx)
    if not mode.truncated:
        raise NotExactlyRepresentable(
            f"ln({x}) is exact only for monomials w^a; use truncated mode")
    out = head
    if r0 != 1:
        out = nf_add(out, NormalForm.of(rational_ln(r0, mode.K, mode.ln2)))
    out = nf_add(out, log1p_series(delta, mode.K))
    return out.flagged(True)


def ln_n(x: NormalForm, n: int, mode: EvalMode = EXACT) -> NormalForm:
    for _ in range(n):
        x = ln(x, mode)
    return x


def exp_n(x: NormalForm, n: int, mode: EvalMode = EXACT) -> NormalForm:
    for _ in range(n):
        x = exp(x, mode)
    return x


def exp_residual(x: NormalForm, K: int) -> NormalForm:
    """exp(x, K) * exp(-x, K) - 1, computed exactly."""
    mode = EvalMode.order(K)
    return nf_sub(nf_mul(exp(x, mode), exp(-x, mode)), NormalForm.of(1)).flagged(False)


# Length bounds for exp/ln, evaluated with natural (commutative) operations.

def _nat(*xs) -> Ordinal:
    out = O.ONE
    for x in xs:
        out = O.nat_mul(out, x if isinstance(x, Ordinal) else Ordinal.of(x))
    return out


def exp_length_bound(l: Ordinal) -> Ordinal:
    """w^(w^(2l + 3))"""
    return O.omega_power(O.omega_power(O.nat_add(_nat(2, l), Ordinal.of(3))))


def ln_monomial_length_bound(l: Ordinal) -> Ordinal:
    """w^(4 w l l)"""
    return O.omega_power(_nat(4, O.OMEGA, l, l))


def ln_length_bound(l: Ordinal) -> Ordinal:
    """w^(w^(3l + 3))"""
    return O.omega_power(O.omega_power(O.nat_add(_nat(3, l), Ordinal.of(3))))


def check_length_bounds(a: NormalForm) -> dict:
    """Which exp/ln length bounds hold at a (only those whose value is exact)."""
    l = length_of(a)
    out = {}
    try:
        out["exp"] = O.compare(length_of(exp(a)), exp_length_bound(l)) <= 0
    except Exception:  # exact exp undefined here
        pass
    try:
        out["ln_omega"] = O.compare(length_of(ln(monomial(a))), ln_monomial_length_bound(l)) <= 0
    except Exception:
        pass
    if a > 0:
        try:
            out["ln"] = O.compare(length_of(ln(a)), ln_length_bound(l)) <= 0
        except Exception:
            pass
    return out


__all__ = [
    "EvalMode", "EXACT", "Decomposition", "decompose", "exp", "ln", "ln_n", "exp_n",
    "ln_monomial", "exp_purely_infinite", "exp_series", "log1p_series", "rational_ln",
    "exp_residual", "exp_length_bound", "ln_monomial_length_bound", "ln_length_bound",
    "check_length_bounds", "LN2",
]
