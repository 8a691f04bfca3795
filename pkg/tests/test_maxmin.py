from fractions import Fraction

import pytest
from hypothesis import given

from maxcore.matrix import TropicalMatrix, TropicalVector, mat_power, span_contains, span_equal
from maxcore.maxmin import maxmin_core, maxmin_fixed_point_check, maxmin_power_periodicity
from maxcore.semiring import MAX_MIN, SemiringError

from .strategies import maxmin_matrices

F = Fraction


def mm(rows):
    return TropicalMatrix(rows, MAX_MIN)


def test_identity_core():
    core = maxmin_core(TropicalMatrix.identity(3, MAX_MIN))
    assert core.threshold == 1 and core.period == 1
    assert len(core.extremals) == 3


def test_swap_core():
    A = mm([[0, 1], [1, 0]])
    assert A @ A == TropicalMatrix.identity(2, MAX_MIN)
    core = maxmin_core(A)
    assert (core.threshold, core.period) == (1, 2)
    assert set(core.extremals) == {TropicalVector([0, 1], MAX_MIN), TropicalVector([1, 0], MAX_MIN)}


def test_constant_core():
    c = F(2, 5)
    A = mm([[c] * 3 for _ in range(3)])
    assert A @ A == A
    core = maxmin_core(A)
    assert core.period == 1 and list(core.extremals) == [TropicalVector([c] * 3, MAX_MIN)]


def test_fixed_point_check():
    A = mm([[F(1, 2), 1, 0], [0, F(1, 5), 1], [1, 0, 0]])
    core = maxmin_core(A)
    assert maxmin_fixed_point_check(core, A)
    Ap = mat_power(A, core.period)
    assert Ap @ TropicalVector.zero(3, MAX_MIN) == TropicalVector.zero(3, MAX_MIN)


def test_perturbed_vector_is_not_fixed():
    A = mm([[0, F(1, 2)], [F(1, 2), 0]])
    core = maxmin_core(A)
    z = TropicalVector([1, 0], MAX_MIN)
    assert mat_power(A, core.period) @ z != z


def test_rejects_maxplus(M):
    with pytest.raises(SemiringError):
        maxmin_core(M([[0]]))


@given(maxmin_matrices(max_n=5))
def test_threshold_and_period_are_minimal(A):
    T, p = maxmin_power_periodicity(A)
    P = [None] + [mat_power(A, t) for t in range(1, T + p + 1)]
    assert P[T + p] == P[T]
    assert all(P[T + q] != P[T] for q in range(1, p))
    assert T == 1 or P[T - 1 + p] != P[T - 1]


@given(maxmin_matrices(max_n=5))
def test_span_chain_constant_from_threshold(A):
    core = maxmin_core(A)
    assert maxmin_fixed_point_check(core, A)
    prev = None
    for t in range(1, core.threshold + core.period + 1):
        cols = mat_power(A, t).columns()
        cols = [c for c in cols if not c.is_zero()]
        if prev is not None and cols:
            assert span_contains(prev, cols)
        if t >= core.threshold and core.extremals.vectors:
            assert span_equal(cols, core.extremals.vectors)
        prev = cols
