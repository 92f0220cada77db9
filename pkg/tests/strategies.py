"""Hypothesis strategies for normal forms."""
from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from surreals.core import NormalForm, as_exponent

dyadic = st.builds(
    lambda n, k: Fraction(n, 2 ** k),
    st.integers(-12, 12).filter(bool),
    st.integers(0, 3),
)

rational = st.builds(
    lambda n, d: Fraction(n, d),
    st.integers(-9, 9).filter(bool),
    st.integers(1, 9),
)


def _series(exponents, coefficients, max_terms=4):
    @st.composite
    def build(draw):
        es = draw(st.lists(exponents, max_size=max_terms, unique=True))
        terms = sorted(((as_exponent(e), draw(coefficients)) for e in es),
                       key=lambda t: NormalForm(((t[0], 1),)), reverse=True)
        return NormalForm(tuple(terms))
    return build()


real_exponents = st.sampled_from([NormalForm.of(q) for q in
                                  (0, 1, 2, 3, -1, -2, Fraction(1, 2), Fraction(-1, 2), Fraction(3, 4))])

# exponents that are themselves series, so nested structure gets exercised
nested_exponents = st.one_of(real_exponents, _series(real_exponents, dyadic, 2))

dyadic_nf = _series(nested_exponents, dyadic)
rational_nf = _series(nested_exponents, rational)
infinitesimal_nf = _series(st.sampled_from([NormalForm.of(q) for q in (-1, -2, -3, Fraction(-1, 2))]),
                           rational, 3).filter(bool)
