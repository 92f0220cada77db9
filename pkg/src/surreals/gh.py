"""The omega map, Archimedean classes, and Gonshor's g and h on a supported fragment.

Both maps dispatch over closed forms.  Each closed form has a syntactic
applicability test on normal forms; every applicable branch is evaluated and
the answers must agree (a disagreement is a bug, not a user error).  Finite
sign sequences also go through the bracket recursion, which doubles as the
cross-check for the closed forms.

Inputs outside every branch raise ``UnsupportedGDomain``/``UnsupportedHDomain``
instead of guessing.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from functools import lru_cache

from . import ordinal as O
from .arith import nf_add, nf_sub
from .core import (MINUS, PLUS, NormalForm, SignSeq, exp_value, from_ordinal,
                   longest_greater_prefix, monomial, nf_to_signseq, plus_count,
                   signseq_to_nf, simplest_in_interval, to_ordinal)
from .errors import (BranchDisagreement, PositiveRequired, UnsupportedGDomain,
                     UnsupportedHDomain, ZeroArgument)
from .ordinal import Eps, Ordinal

ONE = NormalForm.of(1)


class ArchRelation(enum.Enum):
    much_less = "<<"
    comparable = "~"
    much_greater = ">>"


def omega_pow(a: NormalForm) -> NormalForm:
    return monomial(a)


def arch_exponent(x: NormalForm) -> NormalForm:
    if not x.terms:
        raise ZeroArgument("arch_exponent(0) is undefined")
    return x.leading_exponent


def arch_rel(x: NormalForm, y: NormalForm) -> ArchRelation:
    a, b = arch_exponent(x), arch_exponent(y)
    if a > b:
        return ArchRelation.much_greater
    if a < b:
        return ArchRelation.much_less
    return ArchRelation.comparable


# ----------------------------------------------------------------------------
# shape predicates
# ----------------------------------------------------------------------------

def eps_nf(k: int) -> NormalForm:
    return NormalForm(((Eps(k), Fraction(1)),))


def _power_of_two_exponent(r: Fraction):
    """n with r == 2**-n (n >= 0), else None."""
    if r <= 0 or r.numerator != 1 or r > 1:
        return None
    d = r.denominator
    if d & (d - 1):
        return None
    return d.bit_length() - 1


def _is_dyadic(r: Fraction) -> bool:
    return not (r.denominator & (r.denominator - 1))


def negated_ordinal(x: NormalForm):
    """b with x == -b for an ordinal b, else None."""
    neg = -x
    return to_ordinal(neg) if neg.is_ordinal else None


def eps_plus_real(x: NormalForm):
    """(k, s) with x == eps_k + s for a rational s, else None."""
    if not x.terms or not isinstance(x.terms[0][0], Eps) or x.terms[0][1] != 1:
        return None
    k = x.terms[0][0].k
    rest = NormalForm(x.terms[1:])
    if not rest.is_real:
        return None
    return k, rest.real_value


def bounded_below_eps(x: NormalForm, j: int) -> bool:
    """Some ordinal alpha with x < alpha < eps_j exists."""
    if x <= 0:
        return True
    e = x.terms[0][0]
    if isinstance(e, Eps):
        return e.k < j
    return bounded_below_eps(e, j)


def _max_eps(x: NormalForm) -> int:
    best = -1
    for e, _ in x.terms:
        if isinstance(e, Eps):
            best = max(best, e.k)
        else:
            best = max(best, _max_eps(e))
    return best


def in_sandwich(b: NormalForm) -> bool:
    """Syntactic form of the sandwich hypotheses under which g(b) = b."""
    if b <= 0:
        return False
    if b.leading_exponent > -1 and bounded_below_eps(b, 0):
        return True
    for i in range(_max_eps(b) + 1):
        d = nf_sub(b, eps_nf(i))
        if d > 0 and d.leading_exponent > 0 and bounded_below_eps(b, i + 1):
            return True
    return False


# ----------------------------------------------------------------------------
# g
# ----------------------------------------------------------------------------

def _g_ordinal(a: NormalForm):
    if not a.is_ordinal:
        return None
    o = to_ordinal(a)
    head = o.terms[0]
    if isinstance(head[0], Eps) and head[1] == 1:
        rest = Ordinal(o.terms[1:])
        if rest.is_finite:
            return from_ordinal(O.add(o, O.ONE))
    return a


def _g_infinitesimal_monomial(a: NormalForm):
    if len(a.terms) != 1:
        return None
    n = _power_of_two_exponent(a.terms[0][1])
    b = negated_ordinal(a.leading_exponent)
    if n is None or b is None:
        return None
    return nf_add(-from_ordinal(b), NormalForm.of(Fraction(1, 2 ** n)))


def _g_eps_plus(a: NormalForm):
    found = eps_plus_real(a)
    if found is None:
        return None
    k, s = found
    if s < 0 or not _is_dyadic(s):
        return None
    return nf_add(a, ONE)


def _g_sandwich(a: NormalForm):
    return a if in_sandwich(a) else None


def _g_omega_power(a: NormalForm):
    # w^c with every positive prefix of w^c above it: only c = -beta qualifies
    if not a.is_monomial:
        return None
    beta = negated_ordinal(a.leading_exponent)
    if beta is None:
        return None
    c = SignSeq(((MINUS, beta),))
    shorter = longest_greater_prefix(c)
    if shorter is not None:
        return -from_ordinal(shorter.length)
    return nf_add(-from_ordinal(beta), ONE)


def _g_bracket(a: NormalForm):
    seq = nf_to_signseq(a) if _dyadic_coefficients(a) else None
    if seq is None or not seq.is_finite:
        return None
    return _g_finite(seq.signs())


def _dyadic_coefficients(x: NormalForm) -> bool:
    for e, r in x.terms:
        if not _is_dyadic(r):
            return False
        if isinstance(e, NormalForm) and not _dyadic_coefficients(e):
            return False
    return True


@lru_cache(maxsize=None)
def _g_finite(signs: tuple) -> NormalForm:
    """g(x) = <c(x), g(x') | g(x'')> for a positive dyadic x given by its signs."""
    x = signseq_to_nf(SignSeq.from_signs(signs))
    left = [nf_to_signseq(arch_exponent(x))]
    right = []
    for i in range(1, len(signs)):
        target = left if signs[i] == PLUS else right
        target.append(nf_to_signseq(_g_finite(signs[:i])))
    low = max(left)
    high = min(right) if right else None
    return signseq_to_nf(simplest_in_interval(low, high))


G_BRANCHES = (
    ("ordinal", _g_ordinal),
    ("infinitesimal-monomial", _g_infinitesimal_monomial),
    ("eps-plus-dyadic", _g_eps_plus),
    ("sandwich", _g_sandwich),
    ("omega-power", _g_omega_power),
    ("bracket", _g_bracket),
)


def _agree(name: str, x: NormalForm, results: list) -> NormalForm:
    first_branch, value = results[0]
    for branch, other in results[1:]:
        if other != value:
            raise BranchDisagreement(
                f"{name}({x}): branch {first_branch} gives {value}, {branch} gives {other}")
    return value


def g_branches(a: NormalForm) -> list:
    """(branch name, value) for every closed form applicable to a."""
    out = []
    for branch, fn in G_BRANCHES:
        v = fn(a)
        if v is not None:
            out.append((branch, v))
    return out


@lru_cache(maxsize=None)
def g_map(a: NormalForm) -> NormalForm:
    if a <= 0:
        raise PositiveRequired(f"g is defined on positive numbers only, got {a}")
    results = g_branches(a)
    if not results:
        raise UnsupportedGDomain(f"g({a}) is outside the supported fragment")
    return _agree("g", a, results)


# ----------------------------------------------------------------------------
# h
# ----------------------------------------------------------------------------

def _h_negated_ordinal(b: NormalForm):
    a = negated_ordinal(b)
    if a is None:
        return None
    return monomial(-nf_add(from_ordinal(a), ONE))


def _h_ordinal_minus_dyadic(b: NormalForm):
    """Inverse of g(2^-n w^-a) = -a + 2^-n."""
    if b.terms and b.terms[-1][0] != NormalForm() and exp_value(b.terms[-1][0]) < 0:
        return None
    infinite = NormalForm(tuple(t for t in b.terms if exp_value(t[0]) > 0))
    c = nf_sub(b, infinite)
    if not c.is_real:
        return None
    c = c.real_value
    floor = c.numerator // c.denominator
    if c == floor:
        m, frac = 1 - floor, Fraction(1)
    else:
        m, frac = -floor, c - floor
    n = _power_of_two_exponent(frac)
    if n is None or m < 0:
        return None
    a = nf_add(-infinite, NormalForm.of(m))
    if not a.is_ordinal:
        return None
    return monomial(-a, frac)


def _h_ordinal(b: NormalForm):
    if not b.is_ordinal or not b:
        return None
    o = to_ordinal(b)
    head = o.terms[0]
    if isinstance(head[0], Eps) and head[1] == 1:
        rest = Ordinal(o.terms[1:])
        if rest.is_finite:
            if not rest:
                raise UnsupportedHDomain(f"h({b}): an epsilon number is not an ordinal value of g")
            return from_ordinal(o.pred())
    return b


def _h_eps_plus(b: NormalForm):
    found = eps_plus_real(b)
    if found is None:
        return None
    k, t = found
    if t < 1 or not _is_dyadic(t):
        return None
    return nf_sub(b, ONE)


def _h_sandwich(b: NormalForm):
    return b if in_sandwich(b) else None


def _h_bracket(b: NormalForm):
    if not b.is_real or not _is_dyadic(b.real_value):
        return None
    return _h_finite(nf_to_signseq(b).signs())


def _decode_h(seq: SignSeq) -> NormalForm:
    """Normal form of (+, -^(w*m + j), finite tail); the only shape h of a dyadic takes."""
    if seq.is_finite:
        return signseq_to_nf(seq)
    runs = seq.runs
    if len(runs) >= 2 and runs[0] == (PLUS, O.ONE) and runs[1][0] == MINUS:
        count = runs[1][1]
        tail = SignSeq(runs[2:])
        if tail.is_finite and len(count.terms) <= 2 and all(
                not isinstance(e, Eps) and e in (O.ONE, O.ZERO) for e, _ in count.terms):
            m = count.terms[0][1] if count.terms[0][0] == O.ONE else 0
            j = count.terms[-1][1] if count.terms[-1][0] == O.ZERO else 0
            t = signseq_to_nf(SignSeq(((PLUS, O.ONE), (MINUS, Ordinal.of(j)))) + tail)
            return t * monomial(-m)
    raise UnsupportedHDomain(f"cannot read {seq} back as a normal form")


@lru_cache(maxsize=None)
def _h_finite(signs: tuple) -> NormalForm:
    """h(b) = <0, h(b') | h(b''), w^b/n> for a dyadic b given by its signs."""
    b = signseq_to_nf(SignSeq.from_signs(signs))
    left = [SignSeq()]
    right = []
    for i in range(len(signs)):
        target = left if signs[i] == PLUS else right
        target.append(nf_to_signseq(h_map(signseq_to_nf(SignSeq.from_signs(signs[:i])))))
    # z below w^b/n for every n: below w^b followed by w^(|b|_+ + 1) minuses, or extending it
    wb = nf_to_signseq(monomial(b))
    cap = wb.append(MINUS, O.omega_power(O.add(plus_count(nf_to_signseq(b)), O.ONE)))
    low = max(left)
    huge = O.omega_power(O.nat_add(O.nat_add(low.length, cap.length), O.ONE))
    bound = cap.append(PLUS, huge)
    candidates = right + [bound]
    high = min(candidates)
    z = simplest_in_interval(low, high)
    return _decode_h(z)


H_BRANCHES = (
    ("negated-ordinal", _h_negated_ordinal),
    ("ordinal-minus-dyadic", _h_ordinal_minus_dyadic),
    ("ordinal", _h_ordinal),
    ("eps-plus-dyadic", _h_eps_plus),
    ("sandwich", _h_sandwich),
    ("bracket", _h_bracket),
)


def h_branches(b: NormalForm) -> list:
    out = []
    for branch, fn in H_BRANCHES:
        v = fn(b)
        if v is not None:
            out.append((branch, v))
    return out


@lru_cache(maxsize=None)
def h_map(b: NormalForm) -> NormalForm:
    results = h_branches(b)
    if not results:
        raise UnsupportedHDomain(f"h({b}) is outside the supported fragment")
    return _agree("h", b, results)


__all__ = [
    "ArchRelation", "omega_pow", "arch_exponent", "arch_rel", "g_map", "h_map",
    "g_branches", "h_branches", "in_sandwich", "bounded_below_eps", "eps_nf",
]
