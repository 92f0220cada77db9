"""Ordinals below epsilon_omega in Cantor normal form.

An ordinal is a tuple of ``(exponent, coefficient)`` pairs with strictly
decreasing exponents and positive integer coefficients.  An exponent is
either another :class:`Ordinal` or an :class:`Eps` atom; ``Eps(k)`` stands
for the fixed point epsilon_k = omega^epsilon_k, so the ordinal epsilon_k is
the one-term sum ``((Eps(k), 1),)``.  An exponent equal to some epsilon_k is
always stored as the atom, which keeps the representation canonical:
two ordinals are equal iff their term tuples are equal.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering
from typing import Union

from .errors import NotAnEpsilonNumber, OrdinalOverflow, ParseError

DEFAULT_EPS_CEILING = 8


@dataclass(frozen=True, order=False)
class Eps:
    """The epsilon-number atom epsilon_k, used only in exponent position."""

    k: int

    def __repr__(self):
        return f"Eps({self.k})"


Exponent = Union["Ordinal", Eps]


@total_ordering
@dataclass(frozen=True, eq=True)
class Ordinal:
    terms: tuple = ()

    # -- construction -----------------------------------------------------
    @classmethod
    def of(cls, n: int) -> Ordinal:
        if n < 0:
            raise ValueError("ordinals are non-negative")
        return cls(((ZERO_TERMS_EXP, n),)) if n else cls()

    @classmethod
    def parse(cls, text: str) -> Ordinal:
        return _OrdinalParser(text).parse()

    # -- predicates -------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _is_zero_exp(self.terms[0][0]))

    @property
    def finite_value(self) -> int:
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    @property
    def is_successor(self) -> bool:
        return bool(self.terms) and _is_zero_exp(self.terms[-1][0])

    @property
    def is_limit(self) -> bool:
        return bool(self.terms) and not self.is_successor

    @property
    def eps_index(self):
        """k if this ordinal is exactly epsilon_k, else None."""
        if len(self.terms) == 1 and isinstance(self.terms[0][0], Eps) and self.terms[0][1] == 1:
            return self.terms[0][0].k
        return None

    @property
    def leading_exponent(self) -> Ordinal:
        return exp_value(self.terms[0][0])

    def pred(self) -> Ordinal:
        if not self.is_successor:
            raise ValueError(f"{self} is not a successor")
        n = self.terms[-1][1]
        head = self.terms[:-1]
        return Ordinal(head + (((ZERO_TERMS_EXP, n - 1),) if n > 1 else ()))

    def max_eps(self) -> int:
        """Largest epsilon index mentioned anywhere in the notation, or -1."""
        best = -1
        for e, _ in self.terms:
            best = max(best, e.k if isinstance(e, Eps) else e.max_eps())
        return best

    # -- order ------------------------------------------------------------
    def __lt__(self, other):
        if not isinstance(other, Ordinal):
            return NotImplemented
        return compare(self, other) < 0

    # -- arithmetic (standard, non-commutative) ---------------------------
    def __add__(self, other):
        return add(self, _coerce(other))

    def __radd__(self, other):
        return add(_coerce(other), self)

    def __mul__(self, other):
        return mul(self, _coerce(other))

    def __rmul__(self, other):
        return mul(_coerce(other), self)

    def __pow__(self, other):
        return power(self, _coerce(other))

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Ordinal({render(self)!r})"


ZERO_TERMS_EXP = Ordinal()
ZERO = Ordinal()
ONE = Ordinal(((ZERO_TERMS_EXP, 1),))
OMEGA = Ordinal(((ONE, 1),))


def _coerce(x) -> Ordinal:
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int):
        return Ordinal.of(x)
    raise TypeError(f"cannot use {x!r} as an ordinal")


def _is_zero_exp(e) -> bool:
    return isinstance(e, Ordinal) and not e.terms


def eps(k: int, ceiling: int = DEFAULT_EPS_CEILING) -> Ordinal:
    if k < 0:
        raise ValueError("epsilon index must be a natural number")
    if k > ceiling:
        raise OrdinalOverflow(f"eps_{k} is above the notation ceiling eps_{ceiling}")
    return Ordinal(((Eps(k), 1),))


def exp_value(e: Exponent) -> Ordinal:
    """The ordinal denoted by an exponent slot."""
    return Ordinal(((e, 1),)) if isinstance(e, Eps) else e


def as_exponent(x: Ordinal) -> Exponent:
    k = x.eps_index
    return Eps(k) if k is not None else x


def omega_power(x: Ordinal, coefficient: int = 1) -> Ordinal:
    """omega^x * coefficient; omega^epsilon_k collapses to epsilon_k."""
    if coefficient == 0:
        return ZERO
    return Ordinal(((as_exponent(x), coefficient),))


# -- comparison ---------------------------------------------------------------

def compare_exponents(e: Exponent, f: Exponent) -> int:
    if isinstance(e, Eps) and isinstance(f, Eps):
        return (e.k > f.k) - (e.k < f.k)
    if isinstance(e, Eps) or isinstance(f, Eps):
        # the non-atom side is structurally smaller, so this terminates
        return compare(exp_value(e), exp_value(f))
    return compare(e, f)


def compare(a: Ordinal, b: Ordinal) -> int:
    for (e, n), (f, m) in zip(a.terms, b.terms):
        c = compare_exponents(e, f)
        if c:
            return c
        if n != m:
            return 1 if n > m else -1
    return (len(a.terms) > len(b.terms)) - (len(a.terms) < len(b.terms))


# -- standard arithmetic ------------------------------------------------------

def add(a: Ordinal, b: Ordinal) -> Ordinal:
    if not b.terms:
        return a
    lead, count = b.terms[0]
    kept = []
    for e, n in a.terms:
        c = compare_exponents(e, lead)
        if c > 0:
            kept.append((e, n))
        elif c == 0:
            kept.append((e, n + count))
            return Ordinal(tuple(kept) + b.terms[1:])
        else:
            break
    return Ordinal(tuple(kept) + b.terms)


def mul(a: Ordinal, b: Ordinal) -> Ordinal:
    if not a.terms or not b.terms:
        return ZERO
    a0, n0 = a.terms[0]
    result = ZERO
    for e, m in b.terms:
        if _is_zero_exp(e):
            piece = Ordinal(((a0, n0 * m),) + a.terms[1:])
        else:
            piece = omega_power(add(exp_value(a0), exp_value(e)), m)
        result = add(result, piece)
    return result


def left_sub(a: Ordinal, b: Ordinal) -> Ordinal:
    """The unique c with a + c = b; requires a <= b."""
    i = 0
    while i < len(a.terms) and i < len(b.terms) and a.terms[i] == b.terms[i]:
        i += 1
    if i == len(a.terms):
        return Ordinal(b.terms[i:])
    if i == len(b.terms):
        raise ValueError(f"left_sub: {a} > {b}")
    (e, n), (f, m) = a.terms[i], b.terms[i]
    c = compare_exponents(e, f)
    if c < 0:
        return Ordinal(b.terms[i:])
    if c == 0 and n < m:
        return Ordinal(((f, m - n),) + b.terms[i + 1:])
    raise ValueError(f"left_sub: {a} > {b}")


def _split_finite(b: Ordinal):
    if b.is_successor:
        return Ordinal(b.terms[:-1]), b.terms[-1][1]
    return b, 0


def power(a: Ordinal, b: Ordinal) -> Ordinal:
    if not b.terms:
        return ONE
    if not a.terms:
        return ZERO
    if a == ONE:
        return ONE
    infinite, k = _split_finite(b)
    if a.is_finite:
        n = a.finite_value
        if not infinite.terms:
            return Ordinal.of(n ** k)
        # n^(omega*c) = omega^c
        quotient = Ordinal(tuple((as_exponent(left_sub(ONE, exp_value(e))), m) for e, m in infinite.terms))
        return mul(omega_power(quotient), Ordinal.of(n ** k))
    head = omega_power(mul(a.leading_exponent, infinite)) if infinite.terms else ONE
    tail, base = ONE, a
    while k:
        if k & 1:
            tail = mul(tail, base)
        base = mul(base, base)
        k >>= 1
    return mul(head, tail)


# -- natural (Hessenberg) arithmetic -----------------------------------------

def nat_add(a: Ordinal, b: Ordinal) -> Ordinal:
    merged = list(a.terms)
    for f, m in b.terms:
        for i, (e, n) in enumerate(merged):
            c = compare_exponents(e, f)
            if c == 0:
                merged[i] = (e, n + m)
                break
            if c < 0:
                merged.insert(i, (f, m))
                break
        else:
            merged.append((f, m))
    return Ordinal(tuple(merged))


def nat_mul(a: Ordinal, b: Ordinal) -> Ordinal:
    result = ZERO
    for e, n in a.terms:
        for f, m in b.terms:
            result = nat_add(result, omega_power(nat_add(exp_value(e), exp_value(f)), n * m))
    return result


# -- classification ------------------------------------------------------------

def is_additive(x: Ordinal) -> bool:
    return len(x.terms) == 1 and x.terms[0][1] == 1


def is_multiplicative(x: Ordinal) -> bool:
    if not is_additive(x):
        return False
    e = x.terms[0][0]
    return isinstance(e, Eps) or (bool(e.terms) and is_additive(e))


def is_epsilon(x: Ordinal) -> bool:
    return x.eps_index is not None


def classify(x: Ordinal) -> tuple:
    """(is_additive, is_multiplicative, is_epsilon) for x >= 1."""
    if not x.terms:
        raise ValueError("classification needs an ordinal >= 1")
    return is_additive(x), is_multiplicative(x), is_epsilon(x)


def canonical_prefix(lam: Ordinal, n: int) -> list:
    """First n elements of the canonical sequence converging to an epsilon number."""
    k = lam.eps_index
    if k is None:
        raise NotAnEpsilonNumber(f"{lam} is not an epsilon number")
    out = []
    if k == 0:
        current = OMEGA
        for _ in range(n):
            out.append(current)
            current = omega_power(current)
        return out
    base = eps(k - 1, ceiling=k)
    current = base
    for _ in range(n):
        out.append(current)
        current = power(base, current)
    return out


def monoid_bound(alpha: Ordinal) -> Ordinal:
    """omega^(alpha hat): order-type bound for the monoid generated by a set of type alpha."""
    hat = Ordinal(tuple(
        (as_exponent(add(exp_value(e), ONE)) if isinstance(e, Eps) else e, n)
        for e, n in alpha.terms
    ))
    return omega_power(hat)


# -- text syntax -----------------------------------------------------------------

def _render_exponent(e: Exponent) -> str:
    if isinstance(e, Eps):
        return f"eps_{e.k}"
    s = render(e)
    if e.is_finite or s == "w":
        return s
    return f"({s})"


def render(x: Ordinal) -> str:
    if not x.terms:
        return "0"
    parts = []
    for e, n in x.terms:
        if _is_zero_exp(e):
            parts.append(str(n))
            continue
        if isinstance(e, Eps):
            base = f"eps_{e.k}"
        elif e == ONE:
            base = "w"
        else:
            base = f"w^{_render_exponent(e)}"
        parts.append(base if n == 1 else f"{base}*{n}")
    return " + ".join(parts)


_TOKEN = re.compile(r"\s*(?:(eps_(\d+))|(\d+)|(w)|([()+*^]))")


class _OrdinalParser:
    def __init__(self, text: str, ceiling: int = DEFAULT_EPS_CEILING):
        self.text = text
        self.ceiling = ceiling
        self.tokens = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError(f"unexpected {text[pos:].strip()[:1]!r}", pos + 1)
            self.tokens.append((m.group(0).strip(), m.start(0) + len(m.group(0)) - len(m.group(0).lstrip()) + 1))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def take(self, expected=None):
        if self.i >= len(self.tokens):
            raise ParseError("unexpected end of input", len(self.text) + 1, expected)
        tok, col = self.tokens[self.i]
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r}, got {tok!r}", col, expected)
        self.i += 1
        return tok

    def parse(self) -> Ordinal:
        value = self.sum()
        if self.i != len(self.tokens):
            tok, col = self.tokens[self.i]
            raise ParseError(f"unexpected {tok!r}", col)
        return value

    def sum(self) -> Ordinal:
        value = self.product()
        while self.peek() == "+":
            self.take()
            value = add(value, self.product())
        return value

    def product(self) -> Ordinal:
        value = self.power()
        while self.peek() == "*":
            self.take()
            value = mul(value, self.power())
        return value

    def power(self) -> Ordinal:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            return power(base, self.power())
        return base

    def atom(self) -> Ordinal:
        tok = self.take()
        if tok == "(":
            value = self.sum()
            self.take(")")
            return value
        if tok == "w":
            return OMEGA
        if tok.startswith("eps_"):
            return eps(int(tok[4:]), self.ceiling)
        if tok.isdigit():
            return Ordinal.of(int(tok))
        raise ParseError(f"unexpected {tok!r}", self.tokens[self.i - 1][1])
