"""Hypothesis strategies for matrices and vectors."""

from fractions import Fraction

from hypothesis import strategies as st

from maxcore.matrix import TropicalMatrix, TropicalVector
from maxcore.semiring import EPS, MAX_MIN, canon

E = EPS

rationals = st.builds(lambda p, q: canon(Fraction(p, q)), st.integers(-9, 9), st.integers(1, 3))
entries = st.one_of(st.just(EPS), rationals, rationals)


@st.composite
def maxplus_matrices(draw, min_n=1, max_n=4, entry=entries):
    n = draw(st.integers(min_n, max_n))
    rows = draw(st.lists(st.lists(entry, min_size=n, max_size=n), min_size=n, max_size=n))
    return TropicalMatrix(rows)


@st.composite
def maxplus_vectors(draw, n, nonzero=True):
    v = draw(st.lists(entries, min_size=n, max_size=n))
    if nonzero and all(x is EPS for x in v):
        v[draw(st.integers(0, n - 1))] = draw(rationals)
    return TropicalVector(v)


maxmin_values = st.sampled_from([0, Fraction(1, 5), Fraction(2, 5), Fraction(3, 5), Fraction(4, 5), 1])


@st.composite
def maxmin_matrices(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    rows = draw(st.lists(st.lists(maxmin_values, min_size=n, max_size=n), min_size=n, max_size=n))
    return TropicalMatrix(rows, MAX_MIN)

integer_entries = st.one_of(st.just(EPS), st.integers(-5, 5))
