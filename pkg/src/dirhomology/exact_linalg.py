"""Exact sparse linear algebra over the rationals and prime fields.

Matrices are stored as ``{(row, col): value}`` with no explicit zeros.
Rational scalars are :class:`fractions.Fraction` (arbitrary precision);
prime-field scalars are plain ints in ``[0, p)``.

Elimination is row-by-row insertion into an echelon form whose pivot rows
are kept normalized (leading entry 1). Rows are inserted sparsest first,
which keeps fill-in low on boundary matrices with a handful of +-1 entries
per column.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping


class ShapeError(ValueError):
    pass


class FieldError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """``FieldSpec()`` is Q; ``FieldSpec(p)`` is GF(p)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if isinstance(self.p, bool) or not isinstance(self.p, int):
                raise FieldError(f"characteristic must be an int, got {self.p!r}")
            if not (self.p < 2**31 and _is_prime(self.p)):
                raise FieldError(f"{self.p} is not a prime below 2^31")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Accepts ``q``/``Q``/``rationals`` or ``gfP``/``GF(P)``/``P``."""
        t = text.strip().lower().replace("(", "").replace(")", "")
        if t in ("q", "qq", "rationals", "rational"):
            return cls(None)
        if t.startswith("gf"):
            t = t[2:]
        elif t.startswith("f"):
            t = t[1:]
        try:
            return cls(int(t))
        except ValueError:
            raise FieldError(f"unknown field {text!r}") from None

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"GF({self.p})"

    def __str__(self) -> str:
        return self.name

    def coerce(self, x):
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldError(f"{x} has no image in {self.name}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def zero(self):
        return Fraction(0) if self.p is None else 0

    def one(self):
        return Fraction(1) if self.p is None else 1

    def inv(self, x):
        if self.p is None:
            return 1 / x
        return pow(x, -1, self.p)

    def neg(self, x):
        return -x if self.p is None else (-x) % self.p


Q = FieldSpec()


class SparseMatrix:
    """Immutable sparse matrix over a :class:`FieldSpec`."""

    __slots__ = ("rows", "cols", "field", "_entries")

    def __init__(self, rows: int, cols: int, entries: Mapping | None = None, field: FieldSpec = Q):
        if rows < 0 or cols < 0:
            raise ShapeError(f"negative shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self.field = field
        clean = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise ShapeError(f"entry ({i}, {j}) outside {rows}x{cols}")
            v = field.coerce(v)
            if v:
                clean[(i, j)] = v
        self._entries = clean

    @classmethod
    def _trusted(cls, rows, cols, entries, field):
        m = cls.__new__(cls)
        m.rows, m.cols, m.field, m._entries = rows, cols, field, entries
        return m

    @classmethod
    def from_dense(cls, data: Iterable[Iterable], field: FieldSpec = Q, cols: int | None = None):
        data = [list(r) for r in data]
        ncols = cols if cols is not None else (len(data[0]) if data else 0)
        entries = {(i, j): v for i, r in enumerate(data) for j, v in enumerate(r) if v}
        return cls(len(data), ncols, entries, field)

    @classmethod
    def identity(cls, n: int, field: FieldSpec = Q):
        return cls._trusted(n, n, {(i, i): field.one() for i in range(n)}, field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldSpec = Q):
        return cls._trusted(rows, cols, {}, field)

    @classmethod
    def from_columns(cls, rows: int, columns: Iterable[Mapping], field: FieldSpec = Q):
        """Build from a sequence of ``{row: value}`` column dicts."""
        entries = {}
        n = 0
        for j, col in enumerate(columns):
            n = j + 1
            for i, v in col.items():
                entries[(i, j)] = v
        return cls(rows, n, entries, field)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> dict:
        return dict(self._entries)

    @property
    def nnz(self) -> int:
        return len(self._entries)

    def __getitem__(self, key):
        return self._entries.get(key, self.field.zero())

    def is_zero(self) -> bool:
        return not self._entries

    def row_dicts(self) -> list[dict]:
        out: list[dict] = [{} for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def column_dicts(self) -> list[dict]:
        out: list[dict] = [{} for _ in range(self.cols)]
        for (i, j), v in self._entries.items():
            out[j][i] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix._trusted(
            self.cols, self.rows, {(j, i): v for (i, j), v in self._entries.items()}, self.field
        )

    def to_dense(self) -> list[list]:
        z = self.field.zero()
        out = [[z] * self.cols for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def over(self, field: FieldSpec) -> "SparseMatrix":
        """The same entries mapped into another field (e.g. integers mod p)."""
        return SparseMatrix(self.rows, self.cols, self._entries, field)

    def hstack(self, other: "SparseMatrix") -> "SparseMatrix":
        if other.rows != self.rows:
            raise ShapeError("hstack needs equal row counts")
        _check_field(self, other)
        e = dict(self._entries)
        e.update({(i, j + self.cols): v for (i, j), v in other._entries.items()})
        return SparseMatrix._trusted(self.rows, self.cols + other.cols, e, self.field)

    def __matmul__(self, other):
        return multiply(self, other)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.field == other.field
            and self._entries == other._entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.field, frozenset(self._entries.items())))

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz}, field={self.field.name})"


def _check_field(a: SparseMatrix, b: SparseMatrix):
    if a.field != b.field:
        raise FieldError(f"field mismatch: {a.field.name} vs {b.field.name}")


def multiply(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    _check_field(a, b)
    p = a.field.p
    b_rows = b.row_dicts()
    acc: dict = {}
    for (i, k), av in a._entries.items():
        for j, bv in b_rows[k].items():
            acc[(i, j)] = acc.get((i, j), 0) + av * bv
    if p is None:
        out = {k: v for k, v in acc.items() if v}
    else:
        out = {}
        for k, v in acc.items():
            v %= p
            if v:
                out[k] = v
    return SparseMatrix._trusted(a.rows, b.cols, out, a.field)


# -- elimination ---------------------------------------------------------------


def _reduce_into(row: dict, pivots: dict, p: int | None) -> int | None:
    """Reduce ``row`` in place against normalized pivot rows.

    Returns the new leading column if the row survives, else None.
    """
    while row:
        c = min(row)
        piv = pivots.get(c)
        if piv is None:
            return c
        f = row[c]
        if p is None:
            for j, v in piv.items():
                nv = row.get(j, 0) - f * v
                if nv:
                    row[j] = nv
                else:
                    row.pop(j, None)
        else:
            for j, v in piv.items():
                nv = (row.get(j, 0) - f * v) % p
                if nv:
                    row[j] = nv
                else:
                    row.pop(j, None)
    return None


def _echelon(m: SparseMatrix) -> dict:
    """Pivot column -> normalized pivot row (leading coefficient 1)."""
    field = m.field
    p = field.p
    pivots: dict = {}
    rows = [r for r in m.row_dicts() if r]
    rows.sort(key=len)
    for row in rows:
        lead = _reduce_into(row, pivots, p)
        if lead is None:
            continue
        inv = field.inv(row[lead])
        if p is None:
            pivots[lead] = {j: v * inv for j, v in row.items()}
        else:
            pivots[lead] = {j: v * inv % p for j, v in row.items()}
    return pivots


def rank(m: SparseMatrix) -> int:
    # eliminate along the shorter side
    if m.cols < m.rows:
        m = m.transpose()
    return len(_echelon(m))


def rref(m: SparseMatrix) -> dict:
    """Reduced row echelon form as ``{pivot_col: row_dict}``."""
    p = m.field.p
    pivots = _echelon(m)
    order = sorted(pivots)
    for c in reversed(order):
        prow = pivots[c]
        for c2 in order:
            if c2 >= c:
                break
            r = pivots[c2]
            f = r.get(c)
            if not f:
                continue
            for j, v in prow.items():
                nv = r.get(j, 0) - f * v
                if p is not None:
                    nv %= p
                if nv:
                    r[j] = nv
                else:
                    r.pop(j, None)
    return pivots


def null_space(m: SparseMatrix) -> SparseMatrix:
    """Canonical basis of the right kernel, one basis vector per column.

    For each non-pivot column ``f`` of the reduced row echelon form (in
    increasing order) the basis vector has a 1 at ``f``, zeros at the other
    free coordinates, and the forced values at pivot coordinates.
    """
    field = m.field
    pivots = rref(m)
    free = [j for j in range(m.cols) if j not in pivots]
    free_index = {f: k for k, f in enumerate(free)}
    entries = {(f, k): field.one() for f, k in free_index.items()}
    for c, row in pivots.items():
        for j, v in row.items():
            if j != c:
                entries[(c, free_index[j])] = field.neg(v)
    return SparseMatrix._trusted(m.cols, len(free), entries, field)
