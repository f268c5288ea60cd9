"""Exact linear algebra over the rationals.

Everything here works on :class:`Matrix`, an immutable matrix of
:class:`fractions.Fraction` entries.  Zero-row and zero-column matrices are
legal and behave as expected (``Matrix.zeros(0, 3) @ Matrix.zeros(3, 2)`` is a
``0 x 2`` matrix).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Scalar = Fraction
_ZERO = Fraction(0)
_ONE = Fraction(1)


def _frac(x) -> Fraction:
    return x if type(x) is Fraction else Fraction(x)


class Matrix:
    """Immutable ``rows x cols`` matrix with exact rational entries."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, rows: int, cols: int, data: Sequence[Sequence] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.rows = rows
        self.cols = cols
        if data is None:
            self._data = tuple((_ZERO,) * cols for _ in range(rows))
        else:
            if len(data) != rows or any(len(r) != cols for r in data):
                raise ValueError(f"data does not have shape {rows}x{cols}")
            self._data = tuple(tuple(_frac(x) for x in r) for r in data)
        self._hash = None

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        return cls(len(columns), rows, [list(c) for c in columns]).T

    @classmethod
    def _raw(cls, rows: int, cols: int, data: tuple) -> "Matrix":
        # trusted constructor: data already a tuple of tuples of Fraction
        m = cls.__new__(cls)
        m.rows, m.cols, m._data, m._hash = rows, cols, data, None
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(n, n, tuple(
            tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def column(cls, entries: Sequence) -> "Matrix":
        return cls(len(entries), 1, [[x] for x in entries])

    # -- access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._data)

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self._data for x in r)

    def flat(self) -> list[Fraction]:
        return [x for r in self._data for x in r]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self._data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    # -- arithmetic -------------------------------------------------------

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(self.cols, self.rows, tuple(zip(*self._data)) if self.rows
                           else tuple(() for _ in range(self.cols)))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        # row-by-row accumulation touching only nonzero entries of both factors
        orows = [[(j, y) for j, y in enumerate(r) if y] for r in other._data]
        out = []
        for r in self._data:
            acc = [_ZERO] * other.cols
            for k, x in enumerate(r):
                if x:
                    if x == 1:
                        for j, y in orows[k]:
                            acc[j] += y
                    else:
                        for j, y in orows[k]:
                            acc[j] += x * y
            out.append(tuple(acc))
        return Matrix._raw(self.rows, other.cols, tuple(out))

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in addition")
        return Matrix._raw(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)))

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.rows, self.cols, tuple(tuple(-a for a in r) for r in self._data))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = _frac(c)
        return Matrix._raw(self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self._data))

    def apply(self, vec: Sequence) -> list[Fraction]:
        return [sum((a * b for a, b in zip(r, vec)), _ZERO) for r in self._data]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw(len(rows), len(cols), tuple(
            tuple(self._data[i][j] for j in cols) for i in rows))

    def select_columns(self, cols: Sequence[int]) -> "Matrix":
        return self.submatrix(range(self.rows), cols)

    def select_rows(self, rows: Sequence[int]) -> "Matrix":
        return self.submatrix(rows, range(self.cols))


def hstack(blocks: Sequence[Matrix], rows: int | None = None) -> Matrix:
    if not blocks:
        return Matrix.zeros(rows or 0, 0)
    r = blocks[0].rows
    if any(b.rows != r for b in blocks):
        raise ValueError("hstack: row counts differ")
    cols = sum(b.cols for b in blocks)
    data = tuple(tuple(x for b in blocks for x in b._data[i]) for i in range(r))
    return Matrix._raw(r, cols, data)


def vstack(blocks: Sequence[Matrix], cols: int | None = None) -> Matrix:
    if not blocks:
        return Matrix.zeros(0, cols or 0)
    c = blocks[0].cols
    if any(b.cols != c for b in blocks):
        raise ValueError("vstack: column counts differ")
    return Matrix._raw(sum(b.rows for b in blocks), c,
                       tuple(r for b in blocks for r in b._data))


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = [[_ZERO] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            out[r0 + i][c0:c0 + b.cols] = b._data[i]
        r0 += b.rows
        c0 += b.cols
    return Matrix._raw(rows, cols, tuple(tuple(r) for r in out))


# -- elimination ------------------------------------------------------------

def _rref_rows(rows: list[list[Fraction]], ncols: int, stop_col: int | None = None):
    """In-place reduced row echelon form; returns the pivot column list.

    Pivots are searched only in columns ``< stop_col`` (all by default), which
    lets callers reduce an augmented matrix without pivoting on the augment.
    """
    limit = ncols if stop_col is None else stop_col
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(limit):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        inv = 1 / prow[c]
        if inv != 1:
            prow = [x * inv if x else x for x in prow]
            rows[r] = prow
        nz = [k for k in range(c, ncols) if prow[k]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    ri = rows[i]
                    for k in nz:
                        ri[k] -= f * prow[k]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    rows = [list(r) for r in m._data]
    pivots = _rref_rows(rows, m.cols)
    return Matrix._raw(m.rows, m.cols, tuple(tuple(r) for r in rows)), pivots


def _integer_row(entries: dict[int, Fraction]) -> dict[int, int]:
    den = 1
    for x in entries.values():
        den = lcm(den, x.denominator)
    return {k: int(x * den) for k, x in entries.items() if x}


def sparse_rank(rows: Iterable[dict[int, Fraction | int]]) -> int:
    """Rank of a matrix given as sparse rows ``{column: value}``.

    Fraction-free elimination on integer rows, reducing each row by its
    content, so no rational arithmetic happens in the inner loop.
    """
    pivots: dict[int, dict[int, int]] = {}
    for raw in rows:
        row = _integer_row({k: _frac(v) for k, v in raw.items()})
        while row:
            c = min(row)
            p = pivots.get(c)
            if p is None:
                pivots[c] = row
                break
            a, b = row[c], p[c]
            new = {k: v * b for k, v in row.items()}
            for k, v in p.items():
                x = new.get(k, 0) - a * v
                if x:
                    new[k] = x
                else:
                    new.pop(k, None)
            g = 0
            for v in new.values():
                g = gcd(g, v)
                if g == 1:
                    break
            row = {k: v // g for k, v in new.items()} if g > 1 else new
    return len(pivots)


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return sparse_rank({j: x for j, x in enumerate(r) if x} for r in m._data)


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of ``{x : m x = 0}`` (a ``cols x nullity`` matrix)."""
    rows = [list(r) for r in m._data]
    pivots = _rref_rows(rows, m.cols)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    basis = []
    for f in free:
        v = [_ZERO] * m.cols
        v[f] = _ONE
        for i, p in enumerate(pivots):
            v[p] = -rows[i][f]
        basis.append(v)
    return Matrix.from_columns(basis, m.cols) if basis else Matrix.zeros(m.cols, 0)


def solve(m: Matrix, b: Matrix | Sequence) -> Matrix | None:
    """Particular solution of ``m x = b``, or ``None`` if inconsistent.

    ``b`` may be a single column (sequence) or a matrix with several columns;
    free variables are set to zero.
    """
    if not isinstance(b, Matrix):
        b = Matrix.column(list(b))
    if b.rows != m.rows:
        raise ValueError("solve: right-hand side has the wrong number of rows")
    rows = [list(r) + list(s) for r, s in zip(m._data, b._data)]
    ncols = m.cols + b.cols
    pivots = _rref_rows(rows, ncols, stop_col=m.cols)
    for i in range(len(pivots), m.rows):
        if any(rows[i][m.cols:]):
            return None
    x = [[_ZERO] * b.cols for _ in range(m.cols)]
    for i, p in enumerate(pivots):
        x[p] = rows[i][m.cols:]
    return Matrix(m.cols, b.cols, x)


def cokernel_projection(m: Matrix) -> Matrix:
    """Surjection ``q`` (``(rows - rank) x rows``) with ``q @ m == 0``."""
    return kernel_basis(m.T).T


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    x = solve(m, Matrix.identity(m.rows))
    if x is None or rank(m) != m.rows:
        raise ZeroDivisionError("matrix is singular")
    return x


def left_inverse(k: Matrix) -> Matrix:
    """``L`` with ``L @ k == I`` for ``k`` of full column rank."""
    if k.cols == 0:
        return Matrix.zeros(0, k.rows)
    _, piv = rref(k.T)
    if len(piv) != k.cols:
        raise ValueError("left_inverse: matrix does not have full column rank")
    square_inv = inverse(k.select_rows(piv))
    out = [[_ZERO] * k.rows for _ in range(k.cols)]
    for jj, r in enumerate(piv):
        for i in range(k.cols):
            out[i][r] = square_inv[i, jj]
    return Matrix(k.cols, k.rows, out)


def right_inverse(q: Matrix) -> Matrix:
    """``R`` with ``q @ R == I`` for ``q`` of full row rank."""
    return left_inverse(q.T).T


def column_space_basis(m: Matrix) -> Matrix:
    """Independent columns of ``m`` spanning its column space."""
    _, piv = rref(m)
    return m.select_columns(piv)


def complement_basis(sub: Matrix, dim: int) -> list[int]:
    """Standard basis indices completing the columns of ``sub`` to a basis of ``Q^dim``."""
    chosen: list[int] = []
    current = sub
    r = rank(sub) if sub.cols else 0
    for k in range(dim):
        if r == dim:
            break
        e = Matrix.column([_ONE if i == k else _ZERO for i in range(dim)])
        trial = hstack([current, e]) if current.cols else e
        rr = rank(trial)
        if rr > r:
            chosen.append(k)
            current, r = trial, rr
    return chosen


def span_contains(basis_vectors: Iterable[Sequence], target_vectors: Iterable[Sequence], length: int) -> bool:
    """Whether every target vector lies in the span of ``basis_vectors``."""
    base = [list(v) for v in basis_vectors]
    tgt = [list(v) for v in target_vectors]
    if not tgt:
        return True
    r0 = rank(Matrix(len(base), length, base)) if base else 0
    return rank(Matrix(len(base) + len(tgt), length, base + tgt)) == r0


def integer_matrix(m: Matrix) -> list[list[int]]:
    if not m.is_integral():
        raise ValueError("matrix has non-integer entries")
    return [[int(x) for x in r] for r in m._data]
