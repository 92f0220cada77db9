"""Surreal numbers as finite Hahn normal forms and as run-length sign sequences.

:class:`NormalForm` is the primary representation: a finite sum of terms
``r * w^a`` with rational ``r`` and strictly decreasing surreal exponents
``a``.  An exponent slot holds either a NormalForm or an :class:`Eps` atom
(for the fixed points epsilon_k = w^epsilon_k).

:class:`SignSeq` is the derived representation used for simplicity, length
and the Conway bracket.  Runs carry ordinal counts, so transfinite sign
sequences are fine as long as they are finite lists of runs.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Iterable, Optional, Union

from . import ordinal as O
from .errors import (InvalidCut, NonDyadicCoefficient, ParseError,
                     UnsupportedTransfinite)
from .ordinal import Eps, Ordinal

PLUS, MINUS = 1, -1


def _sign(q) -> int:
    return (q > 0) - (q < 0)


# ----------------------------------------------------------------------------
# NormalForm
# ----------------------------------------------------------------------------

@total_ordering
@dataclass(frozen=True)
class NormalForm:
    terms: tuple = ()
    # set on order-truncated results; ignored by equality and hashing
    approx: bool = field(default=False, compare=False)

    @classmethod
    def of(cls, value) -> NormalForm:
        if isinstance(value, NormalForm):
            return value
        if isinstance(value, Ordinal):
            return from_ordinal(value)
        q = Fraction(value)
        return cls(((ZERO_EXP, q),)) if q else cls()

    def __bool__(self):
        return bool(self.terms)

    def __lt__(self, other):
        if not isinstance(other, NormalForm):
            other = NormalForm.of(other)
        return compare(self, other) < 0

    def __eq__(self, other):
        if isinstance(other, NormalForm):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, Ordinal)):
            return self.terms == NormalForm.of(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(self.terms)

    def __neg__(self):
        return NormalForm(tuple((e, -r) for e, r in self.terms), self.approx)

    def __add__(self, other):
        from .arith import nf_add
        return nf_add(self, NormalForm.of(other))

    __radd__ = __add__

    def __sub__(self, other):
        from .arith import nf_add
        return nf_add(self, -NormalForm.of(other))

    def __rsub__(self, other):
        return NormalForm.of(other) - self

    def __mul__(self, other):
        from .arith import nf_mul
        return nf_mul(self, NormalForm.of(other))

    __rmul__ = __mul__

    # -- shape ------------------------------------------------------------
    @property
    def is_real(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and is_zero_exp(self.terms[0][0]))

    @property
    def real_value(self) -> Fraction:
        if not self.is_real:
            raise ValueError(f"{self} is not a real number")
        return self.terms[0][1] if self.terms else Fraction(0)

    @property
    def is_monomial(self) -> bool:
        """A single term with coefficient 1, i.e. w^a for some a."""
        return len(self.terms) == 1 and self.terms[0][1] == 1

    @property
    def leading_exponent(self) -> NormalForm:
        return exp_value(self.terms[0][0])

    @property
    def leading_coefficient(self) -> Fraction:
        return self.terms[0][1]

    @property
    def eps_index(self):
        if len(self.terms) == 1 and isinstance(self.terms[0][0], Eps) and self.terms[0][1] == 1:
            return self.terms[0][0].k
        return None

    @property
    def is_ordinal(self) -> bool:
        for e, r in self.terms:
            if r <= 0 or r.denominator != 1:
                return False
            if isinstance(e, NormalForm) and not e.is_ordinal:
                return False
        return True

    def exponents(self) -> list:
        return [exp_value(e) for e, _ in self.terms]

    def flagged(self, approx: bool = True) -> NormalForm:
        return NormalForm(self.terms, approx)

    def __str__(self):
        return render_text(self)

    def __repr__(self):
        return f"NormalForm({render_text(self)!r})"


ZERO_EXP = NormalForm()
ZERO = NormalForm()
ONE = NormalForm(((ZERO_EXP, Fraction(1)),))

NFExponent = Union[NormalForm, Eps]


def is_zero_exp(e) -> bool:
    return isinstance(e, NormalForm) and not e.terms


def exp_value(e: NFExponent) -> NormalForm:
    return NormalForm(((e, Fraction(1)),)) if isinstance(e, Eps) else e


def as_exponent(x: NormalForm) -> NFExponent:
    k = x.eps_index
    return Eps(k) if k is not None else NormalForm(x.terms)


def monomial(a, coefficient=1) -> NormalForm:
    """coefficient * w^a as a one-term normal form."""
    r = Fraction(coefficient)
    if not r:
        return ZERO
    return NormalForm(((as_exponent(NormalForm.of(a)), r),))


def make(pairs: Iterable) -> NormalForm:
    """Normal form from (exponent, coefficient) pairs in any order; merges duplicates."""
    from .arith import nf_add
    out = ZERO
    for a, r in pairs:
        out = nf_add(out, monomial(a, r))
    return out


def from_ordinal(x: Ordinal) -> NormalForm:
    return NormalForm(tuple(
        (e if isinstance(e, Eps) else from_ordinal(e), Fraction(n)) for e, n in x.terms
    ))


def to_ordinal(x: NormalForm) -> Ordinal:
    if not x.is_ordinal:
        raise ValueError(f"{x} is not an ordinal")
    return Ordinal(tuple(
        (e if isinstance(e, Eps) else to_ordinal(e), int(r)) for e, r in x.terms
    ))


def compare_exponents(e: NFExponent, f: NFExponent) -> int:
    if isinstance(e, Eps) and isinstance(f, Eps):
        return (e.k > f.k) - (e.k < f.k)
    if isinstance(e, Eps) or isinstance(f, Eps):
        return compare(exp_value(e), exp_value(f))
    return compare(e, f)


def compare(x: NormalForm, y: NormalForm) -> int:
    """Sign of x - y, read off the first differing term."""
    for (e, r), (f, s) in zip(x.terms, y.terms):
        c = compare_exponents(e, f)
        if c > 0:
            return _sign(r)
        if c < 0:
            return -_sign(s)
        if r != s:
            return _sign(r - s)
    n, m = len(x.terms), len(y.terms)
    if n > m:
        return _sign(x.terms[m][1])
    if m > n:
        return -_sign(y.terms[n][1])
    return 0


# ----------------------------------------------------------------------------
# SignSeq
# ----------------------------------------------------------------------------

def _ord(c) -> Ordinal:
    return Ordinal.of(c) if isinstance(c, int) else c


@total_ordering
@dataclass(frozen=True)
class SignSeq:
    """Run-length sign sequence; ``runs`` is a tuple of (sign, Ordinal count)."""

    runs: tuple = ()

    def __post_init__(self):
        merged = []
        for s, c in self.runs:
            c = _ord(c)
            if s not in (PLUS, MINUS):
                raise ValueError(f"bad sign {s!r}")
            if not c:
                continue
            if merged and merged[-1][0] == s:
                merged[-1] = (s, O.add(merged[-1][1], c))
            else:
                merged.append((s, c))
        object.__setattr__(self, "runs", tuple(merged))

    @classmethod
    def from_signs(cls, signs: Iterable) -> SignSeq:
        return cls(tuple((PLUS if s in (1, "+") else MINUS, 1) for s in signs))

    @classmethod
    def ordinal(cls, alpha: Ordinal) -> SignSeq:
        return cls(((PLUS, alpha),))

    @classmethod
    def parse(cls, text: str) -> SignSeq:
        return parse_signseq(text)

    def __bool__(self):
        return bool(self.runs)

    def __lt__(self, other):
        return ss_compare(self, other) < 0

    def __neg__(self):
        return SignSeq(tuple((-s, c) for s, c in self.runs))

    def __add__(self, other):
        """Juxtaposition."""
        return SignSeq(self.runs + other.runs)

    @property
    def length(self) -> Ordinal:
        total = O.ZERO
        for _, c in self.runs:
            total = O.add(total, c)
        return total

    @property
    def is_finite(self) -> bool:
        return all(c.is_finite for _, c in self.runs)

    def signs(self) -> tuple:
        """Explicit sign tuple; finite sequences only."""
        if not self.is_finite:
            raise UnsupportedTransfinite("sequence is transfinite")
        return tuple(s for s, c in self.runs for _ in range(c.finite_value))

    def append(self, sign: int, count=1) -> SignSeq:
        return SignSeq(self.runs + ((sign, _ord(count)),))

    def prefix(self, n) -> SignSeq:
        n = _ord(n)
        out = []
        for s, c in self.runs:
            if not n:
                break
            if O.compare(n, c) <= 0:
                out.append((s, n))
                n = O.ZERO
                break
            out.append((s, c))
            n = O.left_sub(c, n)
        if n:
            raise ValueError("prefix longer than the sequence")
        return SignSeq(tuple(out))

    def drop(self, n) -> SignSeq:
        """The part after the first n positions."""
        n = _ord(n)
        for i, (s, c) in enumerate(self.runs):
            if O.compare(n, c) < 0:
                return SignSeq(((s, O.left_sub(n, c)),) + self.runs[i + 1:])
            n = O.left_sub(c, n)
        if n:
            raise ValueError("drop longer than the sequence")
        return SignSeq()

    def __str__(self):
        return render_signseq(self)

    def __repr__(self):
        return f"SignSeq({render_signseq(self)!r})"


def lcp(x: SignSeq, y: SignSeq):
    """(common prefix length, next sign of x, next sign of y); 0 marks the blank."""
    p = O.ZERO
    i = j = 0
    cx = x.runs[0][1] if x.runs else None
    cy = y.runs[0][1] if y.runs else None
    while i < len(x.runs) and j < len(y.runs):
        sx, sy = x.runs[i][0], y.runs[j][0]
        if sx != sy:
            break
        m = cx if O.compare(cx, cy) <= 0 else cy
        p = O.add(p, m)
        cx, cy = O.left_sub(m, cx), O.left_sub(m, cy)
        if not cx:
            i += 1
            cx = x.runs[i][1] if i < len(x.runs) else None
        if not cy:
            j += 1
            cy = y.runs[j][1] if j < len(y.runs) else None
    nx = x.runs[i][0] if i < len(x.runs) else 0
    ny = y.runs[j][0] if j < len(y.runs) else 0
    return p, nx, ny


def ss_compare(x: SignSeq, y: SignSeq) -> int:
    """Lexicographic order with - < blank < +."""
    _, a, b = lcp(x, y)
    return (a > b) - (a < b)


def is_prefix(x: SignSeq, y: SignSeq) -> bool:
    """x is an initial segment of y (simpler than or equal to y)."""
    _, a, _ = lcp(x, y)
    return a == 0


def plus_count(x: SignSeq) -> Ordinal:
    total = O.ZERO
    for s, c in x.runs:
        if s == PLUS:
            total = O.add(total, c)
    return total


def _simplest_above(s: SignSeq) -> SignSeq:
    if s.runs and s.runs[0][0] == PLUS:
        beta, more = s.runs[0][1], len(s.runs) > 1
    else:
        beta, more = O.ZERO, bool(s.runs)
    return SignSeq(((PLUS, beta if more else O.add(beta, O.ONE)),))


def _simplest_below(s: SignSeq) -> SignSeq:
    return -_simplest_above(-s)


def simplest_in_interval(low: Optional[SignSeq], high: Optional[SignSeq]) -> SignSeq:
    """Simplest z with low < z < high; None means unbounded on that side."""
    if low is None and high is None:
        return SignSeq()
    if high is None:
        return _simplest_above(low)
    if low is None:
        return _simplest_below(high)
    p, a, b = lcp(low, high)
    if not a < b:
        raise InvalidCut(f"{low} is not below {high}")
    if a == MINUS and b == PLUS:
        return low.prefix(p)
    if a == 0:
        return low.append(PLUS) + _simplest_below(high.drop(O.add(p, O.ONE)))
    return high.append(MINUS) + _simplest_above(low.drop(O.add(p, O.ONE)))


def simplest_between(left: Iterable[SignSeq], right: Iterable[SignSeq]) -> SignSeq:
    """The simplest number strictly between two finite sets of sign sequences."""
    left, right = list(left), list(right)
    low = max(left) if left else None
    high = min(right) if right else None
    if low is not None and high is not None and not low < high:
        raise InvalidCut(f"left option {low} is not below right option {high}")
    return simplest_in_interval(low, high)


def longest_greater_prefix(c: SignSeq) -> Optional[SignSeq]:
    """Longest prefix of c that is greater than c, or None when there is none."""
    for i in range(len(c.runs) - 1, -1, -1):
        s, d = c.runs[i]
        if s == MINUS:
            if not d.is_successor:
                return None
            return SignSeq(c.runs[:i] + ((MINUS, d.pred()),))
    return None


# ----------------------------------------------------------------------------
# Conversions
# ----------------------------------------------------------------------------

def dyadic_signs(r: Fraction) -> tuple:
    """Finite sign expansion of a dyadic rational, as a tuple of +1/-1."""
    r = Fraction(r)
    if r.denominator & (r.denominator - 1):
        raise NonDyadicCoefficient(f"{r} is not dyadic")
    if r < 0:
        return tuple(-s for s in dyadic_signs(-r))
    if r == 0:
        return ()
    n = r.numerator // r.denominator
    if r == n:
        return (PLUS,) * n
    out = [PLUS] * (n + 1) + [MINUS]
    current, delta = Fraction(2 * n + 1, 2), Fraction(1, 4)
    while current != r:
        if r > current:
            out.append(PLUS)
            current += delta
        else:
            out.append(MINUS)
            current -= delta
        delta /= 2
    return tuple(out)


def _omega_power_runs(a: SignSeq) -> list:
    """Runs of w^a: a plus, then w^(p+1) copies of each sign of a (p = pluses so far)."""
    out = [(PLUS, O.ONE)]
    p = O.ZERO
    for s, c in a.runs:
        if s == PLUS:
            # sum over t < c of w^((p+t)+1) is w^(p+c)
            out.append((PLUS, O.omega_power(O.add(p, c))))
            p = O.add(p, c)
        else:
            out.append((MINUS, O.mul(O.omega_power(O.add(p, O.ONE)), c)))
    return out


def exponent_signseq(e: NFExponent) -> SignSeq:
    if isinstance(e, Eps):
        return SignSeq(((PLUS, O.eps(e.k, ceiling=e.k)),))
    return nf_to_signseq(e)


def _reduce(a: SignSeq, earlier: list) -> SignSeq:
    """Drop the minuses of a that sit inside a prefix shared with an earlier exponent."""
    m = O.ZERO
    for b in earlier:
        p, _, _ = lcp(a, b)
        if O.compare(p, m) > 0:
            m = p
    if not m:
        return a
    head = a.prefix(m)
    kept = tuple((s, c) for s, c in head.runs if s == PLUS)
    return SignSeq(kept) + a.drop(m)


@lru_cache(maxsize=None)
def nf_to_signseq(x: NormalForm) -> SignSeq:
    """Sign expansion of a normal form with dyadic coefficients."""
    runs = []
    earlier = []
    previous_coef = None
    for e, r in x.terms:
        if r.denominator & (r.denominator - 1):
            raise NonDyadicCoefficient(f"coefficient {r} is not dyadic")
        a = exponent_signseq(e)
        reduced = _reduce(a, earlier)
        if earlier and previous_coef is not None and previous_coef.denominator & (previous_coef.denominator - 1):
            # Non-dyadic predecessor clause; unreachable because such coefficients are refused above.
            raise NonDyadicCoefficient(f"coefficient {previous_coef} is not dyadic")
        earlier.append(a)
        previous_coef = r
        term = _omega_power_runs(reduced)
        scale = O.omega_power(plus_count(reduced))
        tail = dyadic_signs(abs(r))[1:]
        term.extend((s, scale) for s in tail)
        if r < 0:
            term = [(-s, c) for s, c in term]
        runs.extend(term)
    return SignSeq(tuple(runs))


def signseq_to_nf(x: SignSeq) -> NormalForm:
    """Dyadic value of a finite sign sequence."""
    if not x.is_finite:
        raise UnsupportedTransfinite(f"cannot parse transfinite sequence {x} into a normal form")
    signs = x.signs()
    if not signs:
        return ZERO
    v = Fraction(0)
    i = 0
    while i < len(signs) and signs[i] == signs[0]:
        v += signs[0]
        i += 1
    delta = Fraction(1, 2)
    for s in signs[i:]:
        v += s * delta
        delta /= 2
    return NormalForm.of(v)


def length_of(x: NormalForm) -> Ordinal:
    return nf_to_signseq(x).length


def ordinal_length(x) -> Ordinal:
    """Length of a NormalForm, an Ordinal (itself) or a SignSeq."""
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, SignSeq):
        return x.length
    return length_of(x)


# ----------------------------------------------------------------------------
# Text and JSON formats
# ----------------------------------------------------------------------------

def _render_exp(e: NFExponent) -> str:
    if isinstance(e, Eps):
        return f"eps_{e.k}"
    if e.is_real and e.real_value.denominator == 1 and e.real_value >= 0:
        return str(e.real_value)
    s = render_text(e)
    return s if s == "w" else f"({s})"


def _render_term(e: NFExponent, r: Fraction) -> str:
    if is_zero_exp(e):
        return str(r)
    if isinstance(e, Eps):
        base = f"eps_{e.k}"
    elif e == ONE:
        base = "w"
    else:
        base = f"w^{_render_exp(e)}"
    if r == 1:
        return base
    if r == -1:
        return f"-{base}"
    if r < 0:
        return f"-{base}*{-r}"
    return f"{base}*{r}"


def render_text(x: NormalForm) -> str:
    if not x.terms:
        body = "0"
    else:
        parts = [_render_term(*x.terms[0])]
        for e, r in x.terms[1:]:
            if r < 0:
                parts.append(" - " + _render_term(e, -r))
            else:
                parts.append(" + " + _render_term(e, r))
        body = "".join(parts)
    return "~" + body if x.approx else body


def _exp_to_json(e: NFExponent):
    if isinstance(e, Eps):
        return {"eps": e.k}
    if e.is_real and e.real_value.denominator == 1:
        return str(e.real_value)
    return nf_to_json(e)


def nf_to_json(x: NormalForm) -> dict:
    out = {"terms": [{"exp": _exp_to_json(e), "coef": str(r)} for e, r in x.terms]}
    if x.approx:
        out["approx"] = True
    return out


def _exp_from_json(obj) -> NFExponent:
    if isinstance(obj, str):
        return as_exponent(NormalForm.of(Fraction(obj)))
    if isinstance(obj, int):
        return as_exponent(NormalForm.of(obj))
    if "eps" in obj:
        return Eps(int(obj["eps"]))
    return as_exponent(nf_from_json(obj))


def nf_from_json(obj) -> NormalForm:
    if isinstance(obj, str):
        obj = json.loads(obj)
    terms = []
    for t in obj["terms"]:
        r = Fraction(t["coef"])
        if not r:
            raise ValueError("zero coefficient in normal form")
        terms.append((_exp_from_json(t["exp"]), r))
    for (e, _), (f, _) in zip(terms, terms[1:]):
        if compare_exponents(e, f) <= 0:
            raise ValueError("exponents must be strictly decreasing")
    return NormalForm(tuple(terms), bool(obj.get("approx", False)))


def render_signseq(x: SignSeq) -> str:
    if not x.runs:
        return "()"
    parts = []
    for s, c in x.runs:
        text = str(c)
        if not (c.is_finite or text == "w" or text.startswith("eps_") and " " not in text):
            text = f"({text})"
        parts.append(("+" if s == PLUS else "-") + "^" + text)
    return " ".join(parts)


def parse_signseq(text: str) -> SignSeq:
    """Parse ``+^1 -^w +^(w+1)``; a bare sign counts once, ``()`` is empty."""
    s = text.strip()
    if s in ("", "()"):
        return SignSeq()
    runs = []
    i = 0
    while i < len(s):
        ch = s[i]
        if ch.isspace():
            i += 1
            continue
        if ch not in "+-":
            raise ParseError(f"expected a sign, got {ch!r}", i + 1, "+ or -")
        sign = PLUS if ch == "+" else MINUS
        i += 1
        if i < len(s) and s[i] == "^":
            i += 1
            if i < len(s) and s[i] == "(":
                depth, j = 0, i
                while j < len(s):
                    depth += {"(": 1, ")": -1}.get(s[j], 0)
                    if depth == 0:
                        break
                    j += 1
                if depth:
                    raise ParseError("unbalanced parenthesis", i + 1, ")")
                count = Ordinal.parse(s[i + 1:j])
                i = j + 1
            else:
                j = i
                while j < len(s) and not s[j].isspace():
                    j += 1
                if j == i:
                    raise ParseError("missing run count", i + 1, "ordinal")
                count = Ordinal.parse(s[i:j])
                i = j
        else:
            count = O.ONE
        if not count:
            raise ParseError("run counts must be positive", i, "positive ordinal")
        runs.append((sign, count))
    return SignSeq(tuple(runs))
