"""Matrix documents: a whitespace text format and a JSON format.

Text format::

    # comments and blank lines are ignored
    maxplus 3 optional label words
    0    -inf  1/2
    -inf 0     3
    2    -inf  -inf

JSON format::

    {"semiring": "maxplus", "n": 3, "entries": [["0", "-inf", "1/2"], ...], "label": "..."}

Both parse into a :class:`MatrixDocument` and serialize back losslessly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .matrix import TropicalMatrix
from .semiring import MAX_PLUS, MAX_TIMES, Semiring, canon, format_scalar, parse_scalar, semiring_by_name


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        loc = f"line {line}, col {col}: " if line is not None else ""
        super().__init__(loc + message)
        self.line = line
        self.col = col


@dataclass(frozen=True)
class MatrixDocument:
    semiring: Semiring
    n: int
    entries: tuple
    label: str | None = None

    @property
    def matrix(self) -> TropicalMatrix:
        return TropicalMatrix([list(r) for r in self.entries], self.semiring)

    @classmethod
    def from_matrix(cls, A: TropicalMatrix, label: str | None = None) -> "MatrixDocument":
        return cls(A.semiring, A.n, tuple(tuple(r) for r in A.to_lists()), label)

    def to_text(self) -> str:
        head = f"{self.semiring.name} {self.n}"
        if self.label:
            head += " " + self.label
        rows = [" ".join(format_scalar(x) for x in r) for r in self.entries]
        return "\n".join([head, *rows]) + "\n"

    def to_json(self) -> dict:
        d = {
            "semiring": self.semiring.name,
            "n": self.n,
            "entries": [[format_scalar(x) for x in r] for r in self.entries],
        }
        if self.label:
            d["label"] = self.label
        return d


def _tokens(line: str):
    """Yield ``(col, token)`` pairs, 1-based columns."""
    col = 0
    for part in line.split():
        col = line.index(part, col)
        yield col + 1, part
        col += len(part)


def parse_text(text: str) -> MatrixDocument:
    lines = [(k + 1, ln.split("#", 1)[0]) for k, ln in enumerate(text.splitlines())]
    lines = [(k, ln) for k, ln in lines if ln.strip()]
    if not lines:
        raise ParseError("empty document")
    lno, head = lines[0]
    toks = list(_tokens(head))
    if len(toks) < 2:
        raise ParseError("header must be 'semiring n'", lno, 1)
    try:
        s = semiring_by_name(toks[0][1])
    except ValueError as exc:
        raise ParseError(str(exc), lno, toks[0][0]) from exc
    try:
        n = int(toks[1][1])
        if n < 1:
            raise ValueError
    except ValueError:
        raise ParseError(f"dimension must be a positive integer, got {toks[1][1]!r}", lno, toks[1][0]) from None
    label = head[toks[2][0] - 1 :].strip() if len(toks) > 2 else None
    body = lines[1:]
    if len(body) != n:
        where = body[n][0] if len(body) > n else (body[-1][0] if body else lno)
        raise ParseError(f"expected {n} rows, found {len(body)}", where, 1)
    rows = []
    for k, ln in body:
        toks = list(_tokens(ln))
        if len(toks) != n:
            raise ParseError(f"expected {n} entries, found {len(toks)}", k, 1)
        row = []
        for col, tok in toks:
            try:
                row.append(parse_scalar(tok, s))
            except ValueError as exc:
                raise ParseError(str(exc), k, col) from None
        rows.append(tuple(row))
    return MatrixDocument(s, n, tuple(rows), label)


def parse_json(data) -> MatrixDocument:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    try:
        s = semiring_by_name(data.get("semiring", "maxplus"))
        entries = data["entries"]
        n = int(data.get("n", len(entries)))
    except (KeyError, ValueError, AttributeError) as exc:
        raise ParseError(f"invalid matrix document: {exc}") from None
    if len(entries) != n or any(len(r) != n for r in entries):
        raise ParseError(f"entries must form an {n}x{n} array")
    rows = []
    for i, r in enumerate(entries):
        row = []
        for j, x in enumerate(r):
            try:
                row.append(parse_scalar(str(x), s))
            except ValueError as exc:
                raise ParseError(f"entry [{i}][{j}]: {exc}") from None
        rows.append(tuple(row))
    return MatrixDocument(s, n, tuple(rows), data.get("label"))


def parse_document(text: str) -> MatrixDocument:
    """Dispatch on the first non-blank character: ``{`` means JSON."""
    return parse_json(text) if text.lstrip().startswith("{") else parse_text(text)


def load(path) -> MatrixDocument:
    return parse_document(Path(path).read_text())


def to_maxplus(A: TropicalMatrix, base: int = 2) -> TropicalMatrix:
    """Exact logarithm of a max-times matrix whose positive entries are integer
    powers of ``base``; raises ``ValueError`` otherwise."""
    if A.semiring is MAX_PLUS:
        return A
    if A.semiring is not MAX_TIMES:
        raise ValueError(f"no exact translation from {A.semiring.name} to maxplus")
    rows = []
    for r in A.rows:
        row = {}
        for j, v in r.items():
            k = exact_log(v, base)
            if k is None:
                raise ValueError(f"entry {v} is not an integer power of {base}")
            row[j] = k
        rows.append(row)
    return TropicalMatrix._from_rows(rows, MAX_PLUS)


def exact_log(v, base: int = 2):
    v = Fraction(v)
    if v <= 0:
        return None
    k = 0
    while v.denominator == 1 and v.numerator % base == 0 and v != 1:
        v /= base
        k += 1
    while v.numerator == 1 and v.denominator % base == 0:
        v *= base
        k -= 1
    return k if v == 1 else None


def exact_exp(v, base: int = 2):
    """``base ** v`` when it is rational (``v`` integer), else ``None``."""
    v = canon(v)
    if not isinstance(v, int):
        return None
    return canon(Fraction(base) ** v)
