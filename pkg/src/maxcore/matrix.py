"""Exact tropical matrices and vectors, residuated solving and max cones.

Matrices and vectors store only their non-bottom entries (``dict`` keyed by
index), so the graph of a matrix is literally its sparsity pattern.  All
indices are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .semiring import (
    EPS,
    MAX_PLUS,
    Mode,
    Semiring,
    SemiringError,
    canon,
    format_scalar,
    parse_scalar,
)


class DimensionError(ValueError):
    pass


class Divergent(ArithmeticError):
    """Kleene star requested for a matrix with a cycle heavier than one."""


def _coerce(value, s: Semiring):
    if value is None or value is EPS:
        if s.mode is not Mode.MAX_PLUS and value is EPS:
            raise ValueError(f"EPS is not in the carrier of {s.name}")
        return s.zero
    if isinstance(value, str):
        return parse_scalar(value, s)
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass int, Fraction or 'p/q'")
    value = canon(Fraction(value)) if not isinstance(value, int) else value
    if not s.contains(value):
        raise ValueError(f"{value!r} is outside the carrier of {s.name}")
    return value


class TropicalVector:
    """Immutable vector over a semiring; bottom entries are not stored."""

    __slots__ = ("n", "semiring", "_d", "_hash")

    def __init__(self, entries: Sequence, semiring: Semiring = MAX_PLUS):
        d = {}
        for i, v in enumerate(entries):
            v = _coerce(v, semiring)
            if not semiring.is_zero(v):
                d[i] = v
        self._init(len(entries), semiring, d)

    def _init(self, n, semiring, d):
        self.n = n
        self.semiring = semiring
        self._d = d
        self._hash = None

    @classmethod
    def _from_dict(cls, n: int, d: dict, semiring: Semiring = MAX_PLUS) -> "TropicalVector":
        v = cls.__new__(cls)
        v._init(n, semiring, d)
        return v

    @classmethod
    def zero(cls, n: int, semiring: Semiring = MAX_PLUS) -> "TropicalVector":
        return cls._from_dict(n, {}, semiring)

    @classmethod
    def unit(cls, n: int, i: int, semiring: Semiring = MAX_PLUS) -> "TropicalVector":
        return cls._from_dict(n, {i: semiring.one}, semiring)

    def __getitem__(self, i: int):
        if not 0 <= i < self.n:
            raise IndexError(i)
        return self._d.get(i, self.semiring.zero)

    def __len__(self):
        return self.n

    def __iter__(self) -> Iterator:
        z = self.semiring.zero
        return (self._d.get(i, z) for i in range(self.n))

    @property
    def entries(self) -> tuple:
        return tuple(self)

    @property
    def support(self) -> frozenset:
        return frozenset(self._d)

    def is_zero(self) -> bool:
        return not self._d

    def norm(self):
        """Largest entry (bottom for the zero vector)."""
        return max(self._d.values()) if self._d else self.semiring.zero

    def is_integer(self) -> bool:
        return all(Fraction(v).denominator == 1 for v in self._d.values())

    def shift(self, c) -> "TropicalVector":
        """Tropical scalar multiple ``c (x) self``."""
        s = self.semiring
        if s.is_zero(c):
            return TropicalVector.zero(self.n, s)
        return TropicalVector._from_dict(self.n, {i: s.mul(c, v) for i, v in self._d.items()}, s)

    def __or__(self, other: "TropicalVector") -> "TropicalVector":
        """Tropical sum (componentwise max)."""
        _check_same(self, other)
        d = dict(self._d)
        for i, v in other._d.items():
            w = d.get(i)
            if w is None or v > w:
                d[i] = v
        return TropicalVector._from_dict(self.n, d, self.semiring)

    def __le__(self, other: "TropicalVector") -> bool:
        _check_same(self, other)
        od = other._d
        return all(i in od and v <= od[i] for i, v in self._d.items())

    def __eq__(self, other):
        if not isinstance(other, TropicalVector):
            return NotImplemented
        return self.n == other.n and self.semiring == other.semiring and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._d.items())))
        return self._hash

    def __repr__(self):
        return "TropicalVector([" + ", ".join(format_scalar(v) for v in self) + "])"

    def to_strings(self) -> list:
        return [format_scalar(v) for v in self]


def _check_same(a, b):
    if a.n != b.n:
        raise DimensionError(f"dimension mismatch: {a.n} vs {b.n}")
    if a.semiring != b.semiring:
        raise SemiringError(f"semiring mismatch: {a.semiring.name} vs {b.semiring.name}")


class TropicalMatrix:
    """Immutable square matrix over a semiring.

    ``rows[i]`` maps column index ``j`` to the non-bottom entry ``a_ij``; it is
    also the out-adjacency of node ``i`` in the weighted digraph of the matrix.
    """

    __slots__ = ("n", "semiring", "rows", "_hash")

    def __init__(self, rows: Sequence[Sequence], semiring: Semiring = MAX_PLUS):
        n = len(rows)
        out = []
        for r in rows:
            if len(r) != n:
                raise DimensionError("matrix must be square")
            d = {}
            for j, v in enumerate(r):
                v = _coerce(v, semiring)
                if not semiring.is_zero(v):
                    d[j] = v
            out.append(d)
        self._init(n, semiring, tuple(out))

    def _init(self, n, semiring, rows):
        self.n = n
        self.semiring = semiring
        self.rows = rows
        self._hash = None

    @classmethod
    def _from_rows(cls, rows: Sequence[dict], semiring: Semiring = MAX_PLUS) -> "TropicalMatrix":
        m = cls.__new__(cls)
        m._init(len(rows), semiring, tuple(rows))
        return m

    @classmethod
    def identity(cls, n: int, semiring: Semiring = MAX_PLUS) -> "TropicalMatrix":
        return cls._from_rows([{i: semiring.one} for i in range(n)], semiring)

    @classmethod
    def zero(cls, n: int, semiring: Semiring = MAX_PLUS) -> "TropicalMatrix":
        return cls._from_rows([{} for _ in range(n)], semiring)

    @classmethod
    def from_columns(cls, columns: Sequence[TropicalVector]) -> "TropicalMatrix":
        n = columns[0].n
        if len(columns) != n:
            raise DimensionError("need exactly n columns")
        rows = [{} for _ in range(n)]
        for j, c in enumerate(columns):
            for i, v in c._d.items():
                rows[i][j] = v
        return cls._from_rows(rows, columns[0].semiring)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i].get(j, self.semiring.zero)

    def column(self, j: int) -> TropicalVector:
        return TropicalVector._from_dict(
            self.n, {i: r[j] for i, r in enumerate(self.rows) if j in r}, self.semiring
        )

    def columns(self) -> list:
        cols = [{} for _ in range(self.n)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                cols[j][i] = v
        return [TropicalVector._from_dict(self.n, c, self.semiring) for c in cols]

    def row(self, i: int) -> TropicalVector:
        return TropicalVector._from_dict(self.n, dict(self.rows[i]), self.semiring)

    def edges(self) -> Iterator[tuple]:
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                yield i, j, v

    def to_lists(self) -> list:
        z = self.semiring.zero
        return [[r.get(j, z) for j in range(self.n)] for r in self.rows]

    def to_strings(self) -> list:
        return [[format_scalar(v) for v in row] for row in self.to_lists()]

    def has_zero_column(self) -> bool:
        seen = set()
        for r in self.rows:
            seen.update(r)
        return len(seen) < self.n

    def is_integer(self) -> bool:
        return all(Fraction(v).denominator == 1 for _, _, v in self.edges())

    def shift(self, c) -> "TropicalMatrix":
        """``c (x) A``: multiply every entry by the scalar ``c``."""
        s = self.semiring
        if s.is_zero(c):
            return TropicalMatrix.zero(self.n, s)
        return TropicalMatrix._from_rows([{j: s.mul(c, v) for j, v in r.items()} for r in self.rows], s)

    def restrict(self, nodes: Iterable[int]) -> "TropicalMatrix":
        """Keep the principal submatrix on ``nodes`` (full size, bottom elsewhere)."""
        keep = set(nodes)
        return TropicalMatrix._from_rows(
            [{j: v for j, v in r.items() if j in keep} if i in keep else {} for i, r in enumerate(self.rows)],
            self.semiring,
        )

    def permuted(self, perm: Sequence[int]) -> "TropicalMatrix":
        """Matrix with rows and columns listed in the order ``perm``."""
        pos = {old: new for new, old in enumerate(perm)}
        return TropicalMatrix._from_rows(
            [{pos[j]: v for j, v in self.rows[old].items()} for old in perm], self.semiring
        )

    def __matmul__(self, other):
        if isinstance(other, TropicalMatrix):
            return mat_mul(self, other)
        if isinstance(other, TropicalVector):
            return mat_vec(self, other)
        return NotImplemented

    def __or__(self, other: "TropicalMatrix") -> "TropicalMatrix":
        _check_same(self, other)
        rows = []
        for r1, r2 in zip(self.rows, other.rows):
            d = dict(r1)
            for j, v in r2.items():
                w = d.get(j)
                if w is None or v > w:
                    d[j] = v
            rows.append(d)
        return TropicalMatrix._from_rows(rows, self.semiring)

    def __pow__(self, t: int) -> "TropicalMatrix":
        return mat_power(self, t)

    def __eq__(self, other):
        if not isinstance(other, TropicalMatrix):
            return NotImplemented
        return self.n == other.n and self.semiring == other.semiring and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(frozenset(r.items()) for r in self.rows))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(row) for row in self.to_strings())
        return f"TropicalMatrix[{self.semiring.name}]({body})"


# -- products -------------------------------------------------------------


def mat_mul(A: TropicalMatrix, B: TropicalMatrix) -> TropicalMatrix:
    """Tropical product ``(A (x) B)_ij = max_k a_ik (x) b_kj``."""
    _check_same(A, B)
    mul = A.semiring.mul
    brows = B.rows
    out = []
    for r in A.rows:
        d = {}
        for k, a in r.items():
            for j, b in brows[k].items():
                v = mul(a, b)
                w = d.get(j)
                if w is None or v > w:
                    d[j] = v
        out.append(d)
    return TropicalMatrix._from_rows(out, A.semiring)


def mat_vec(A: TropicalMatrix, x: TropicalVector) -> TropicalVector:
    _check_same(A, x)
    mul = A.semiring.mul
    xd = x._d
    d = {}
    for i, r in enumerate(A.rows):
        best = None
        for j, a in r.items():
            if j in xd:
                v = mul(a, xd[j])
                if best is None or v > best:
                    best = v
        if best is not None:
            d[i] = best
    return TropicalVector._from_dict(A.n, d, A.semiring)


def mat_power(A: TropicalMatrix, t: int) -> TropicalMatrix:
    """``A^t`` by repeated squaring (``t >= 0``; ``A^0`` is the identity)."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    result = None
    base = A
    while t:
        if t & 1:
            result = base if result is None else mat_mul(result, base)
        t >>= 1
        if t:
            base = mat_mul(base, base)
    return TropicalMatrix.identity(A.n, A.semiring) if result is None else result


def mat_power_iterated(A: TropicalMatrix, t: int) -> TropicalMatrix:
    """``A^t`` by ``t - 1`` successive products; a cross-check for :func:`mat_power`."""
    if t < 1:
        raise ValueError("t must be positive")
    P = A
    for _ in range(t - 1):
        P = mat_mul(P, A)
    return P


def powers(A: TropicalMatrix, tmax: int) -> Iterator[TropicalMatrix]:
    """Yield ``A^1, ..., A^tmax``."""
    P = A
    for t in range(1, tmax + 1):
        yield P
        if t < tmax:
            P = mat_mul(P, A)


def kleene_star(A: TropicalMatrix) -> TropicalMatrix:
    """``A* = I (+) A (+) A^2 (+) ...`` via all-pairs relaxation.

    Raises :class:`Divergent` if some cycle has weight above the semiring one
    (in max-plus: a cycle of positive weight).
    """
    s = A.semiring
    mul = s.mul
    one = s.one
    n = A.n
    S = [dict(r) for r in A.rows]
    for k in range(n):
        Sk = S[k]
        for i in range(n):
            Si = S[i]
            a = Si.get(k)
            if a is None:
                continue
            for j, b in Sk.items():
                v = mul(a, b)
                w = Si.get(j)
                if w is None or v > w:
                    Si[j] = v
        if k in Sk and Sk[k] > one:
            raise Divergent("Kleene star diverges: a cycle is heavier than the semiring one")
    for i in range(n):
        if i in S[i] and S[i][i] > one:
            raise Divergent("Kleene star diverges: a cycle is heavier than the semiring one")
        S[i][i] = one
    return TropicalMatrix._from_rows(S, s)


# -- residuation and cones -------------------------------------------------


def _as_columns(M) -> list:
    if isinstance(M, TropicalMatrix):
        return M.columns()
    if isinstance(M, GeneratingSet):
        return list(M.vectors)
    return list(M)


def principal_solution(M, b: TropicalVector) -> TropicalVector:
    """Greatest ``x`` with ``M (x) x <= b`` (``M`` a matrix or a list of columns).

    Rows where a column has a bottom entry impose no constraint on that
    column's coefficient; a column that is entirely bottom gets coefficient
    bottom.  The result has one entry per column.
    """
    cols = _as_columns(M)
    s = b.semiring
    bd = b._d
    d = {}
    for j, g in enumerate(cols):
        _check_same(g, b)
        if not g._d:
            continue
        best = None
        for i, gi in g._d.items():
            bi = bd.get(i)
            if bi is None:
                best = None
                break
            if s.mode is Mode.MAX_PLUS:
                r = bi - gi
            elif s.mode is Mode.MAX_TIMES:
                r = canon(Fraction(bi) / gi)
            else:
                r = s.one if gi <= bi else bi
            if best is None or r < best:
                best = r
        else:
            if best is not None:
                d[j] = best
    return TropicalVector._from_dict(len(cols), d, s)


def combine(columns: Sequence[TropicalVector], coeffs: TropicalVector) -> TropicalVector:
    """Max-linear combination ``(+)_j coeffs_j (x) columns_j``."""
    if not columns:
        raise DimensionError("no columns to combine")
    s = columns[0].semiring
    mul = s.mul
    d = {}
    for j, c in coeffs._d.items():
        for i, g in columns[j]._d.items():
            v = mul(c, g)
            w = d.get(i)
            if w is None or v > w:
                d[i] = v
    return TropicalVector._from_dict(columns[0].n, d, s)


def span_certificate(v: TropicalVector, G) -> TropicalVector | None:
    """Coefficients ``x`` with ``G (x) x = v``, or ``None`` if ``v`` is outside the span."""
    cols = _as_columns(G)
    if v.is_zero():
        return TropicalVector.zero(len(cols), v.semiring)
    if not cols:
        return None
    x = principal_solution(cols, v)
    return x if combine(cols, x) == v else None


def span_membership(v: TropicalVector, G) -> bool:
    """Whether ``v`` is a max-linear combination of the vectors of ``G``."""
    return span_certificate(v, G) is not None


def span_contains(G1, G2) -> bool:
    """``span(G2) <= span(G1)``."""
    cols = _as_columns(G1)
    return all(span_membership(v, cols) for v in _as_columns(G2))


def span_equal(G1, G2) -> bool:
    return span_contains(G1, G2) and span_contains(G2, G1)


def scale_vector(v: TropicalVector) -> TropicalVector:
    """Normalize ``v`` so that its largest entry equals the semiring one.

    Max-min vectors are returned unchanged: there scalar multiplication
    truncates and cannot raise the maximum.
    """
    if v.is_zero():
        raise ValueError("cannot scale the zero vector")
    s = v.semiring
    m = v.norm()
    if s.mode is Mode.MAX_PLUS:
        if m == 0:
            return v
        return TropicalVector._from_dict(v.n, {i: x - m for i, x in v._d.items()}, s)
    if s.mode is Mode.MAX_TIMES:
        return TropicalVector._from_dict(v.n, {i: canon(Fraction(x) / m) for i, x in v._d.items()}, s)
    return v


def proportional(u: TropicalVector, v: TropicalVector) -> bool:
    if u.is_zero() or v.is_zero():
        return u.is_zero() and v.is_zero()
    return scale_vector(u) == scale_vector(v)


@dataclass(frozen=True)
class GeneratingSet:
    """Finite set of scaled, pairwise non-proportional vectors spanning a max cone."""

    vectors: tuple
    n: int
    semiring: Semiring = MAX_PLUS

    @classmethod
    def of(cls, vectors: Iterable[TropicalVector], n: int | None = None, semiring: Semiring | None = None):
        vs = list(vectors)
        if n is None:
            if not vs:
                raise ValueError("dimension needed for an empty generating set")
            n = vs[0].n
        semiring = semiring or (vs[0].semiring if vs else MAX_PLUS)
        seen = {}
        for v in vs:
            if v.n != n:
                raise DimensionError("generators of different dimension")
            if v.is_zero():
                continue
            sv = scale_vector(v)
            seen.setdefault(sv, None)
        return cls(tuple(seen), n, semiring)

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __contains__(self, v):
        return span_membership(v, self.vectors)


def extremal_reduction(G) -> GeneratingSet:
    """Minimal generating subset of ``span(G)`` (its extremals, scaled)."""
    if isinstance(G, GeneratingSet):
        gs = G
    elif isinstance(G, TropicalMatrix):
        gs = GeneratingSet.of(G.columns(), G.n, G.semiring)
    else:
        gs = GeneratingSet.of(G)
    kept = list(gs.vectors)
    i = 0
    while i < len(kept):
        others = kept[:i] + kept[i + 1 :]
        if others and span_membership(kept[i], others):
            kept.pop(i)
        else:
            i += 1
    return GeneratingSet(tuple(kept), gs.n, gs.semiring)


def column_span(A: TropicalMatrix) -> GeneratingSet:
    """Extremals of the column span of ``A``."""
    return extremal_reduction(A)
