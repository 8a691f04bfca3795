"""Core of a max-min (fuzzy) matrix.

Max-min powers only ever contain entries of the original matrix (and the
bottom 0), so the power sequence is ultimately periodic with growth 1.  Once
``A^{T+p} = A^T`` the nested column spans are constant from ``T`` on and the
core is simply the span of ``A^T``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matrix import GeneratingSet, TropicalMatrix, TropicalVector, column_span, mat_mul, mat_power
from .semiring import MAX_MIN, SemiringError


@dataclass(frozen=True)
class MaxMinCore:
    threshold: int
    period: int
    extremals: GeneratingSet


def _require_maxmin(A: TropicalMatrix) -> None:
    if A.semiring is not MAX_MIN:
        raise SemiringError(f"expected a max-min matrix, got {A.semiring.name}")


def maxmin_power_periodicity(A: TropicalMatrix) -> tuple:
    """``(T, p)`` with ``A^{T+p} = A^T``, both minimal."""
    _require_maxmin(A)
    seen = {A: 1}
    P = A
    t = 1
    while True:
        P = mat_mul(P, A)
        t += 1
        if P in seen:
            return seen[P], t - seen[P]
        seen[P] = t


def maxmin_core(A: TropicalMatrix) -> MaxMinCore:
    """Threshold, period and scaled-free extremal generators of the core."""
    T, p = maxmin_power_periodicity(A)
    return MaxMinCore(T, p, column_span(mat_power(A, T)))


def maxmin_fixed_point_check(core: MaxMinCore, A: TropicalMatrix) -> bool:
    """Every extremal ``z`` satisfies ``A^p z = z``."""
    _require_maxmin(A)
    Ap = mat_power(A, core.period)
    return all(Ap @ z == z for z in core.extremals)


def maxmin_fixed_point(A: TropicalMatrix, z: TropicalVector, period: int) -> bool:
    return mat_power(A, period) @ z == z
