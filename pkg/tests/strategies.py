"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from wildram.ff_algebra import PerfPoly

primes = st.sampled_from([2, 3, 5])


@st.composite
def perf_polys(draw, p=None, variables=("u", "v", "y"), max_terms=4, max_num=6, max_depth=2, integral=False):
    """Random PerfPoly with nonnegative Z[1/p] exponents."""
    if p is None:
        p = draw(primes)
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        mono = {}
        for v in variables:
            num = draw(st.integers(0, max_num))
            depth = 0 if integral else draw(st.integers(0, max_depth))
            if num:
                mono[v] = Fraction(num, p**depth)
        c = draw(st.integers(1, p - 1))
        key = tuple(sorted(mono.items()))
        terms[key] = (terms.get(key, 0) + c) % p
    return PerfPoly(p, {k: c for k, c in terms.items() if c})


@st.composite
def laurent_characters(draw, p=None, max_terms=3, max_pole=6, max_ydeg=3):
    """Text of a Laurent polynomial in x over F_p[y] with a pole along x = 0."""
    if p is None:
        p = draw(primes)
    n = draw(st.integers(1, max_terms))
    parts = []
    for _ in range(n):
        c = draw(st.integers(1, p - 1))
        a = draw(st.integers(0, max_ydeg))
        b = draw(st.integers(1, max_pole))
        parts.append(f"{c}*y^{a}/x^{b}")
    return p, " + ".join(parts)
