"""Exact dense linear algebra over the rationals.

Everything runs on ``fractions.Fraction``; no rounding ever happens.  The
matrices here are the substrate for all Hom/solve computations in the rest
of the package, so the inner loops skip zero entries aggressively (the
matrices we meet are mostly zeros and ones).

Matrices are immutable by convention: no method mutates ``self`` and
callers must not modify ``data`` after construction.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _coerce_row(row: Iterable) -> list[Fraction]:
    return [x if type(x) is Fraction else Fraction(x) for x in row]


class RatMatrix:
    """Dense row-major matrix of rationals."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Optional[Sequence[Sequence]] = None):
        self.rows = rows
        self.cols = cols
        if data is None:
            self.data = [[_ZERO] * cols for _ in range(rows)]
        else:
            self.data = [_coerce_row(r) for r in data]
            if len(self.data) != rows or any(len(r) != cols for r in self.data):
                raise ValueError("data shape does not match (rows, cols)")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        m = cls(n, n)
        for i in range(n):
            m.data[i][i] = _ONE
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RatMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows)

    @classmethod
    def column(cls, vec: Sequence) -> "RatMatrix":
        return cls(len(vec), 1, [[x] for x in vec])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: Optional[int] = None) -> "RatMatrix":
        if not cols:
            return cls(nrows or 0, 0)
        nrows = len(cols[0])
        return cls(nrows, len(cols), [[c[i] for c in cols] for i in range(nrows)])

    # -- basic structure ------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RatMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __repr__(self) -> str:
        if self.rows == 0 or self.cols == 0:
            return f"RatMatrix({self.rows}x{self.cols})"
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"RatMatrix([{body}])"

    def is_zero(self) -> bool:
        return all(not x for row in self.data for x in row)

    def copy(self) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols, [row[:] for row in self.data])

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows, [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def column_vec(self, j: int) -> list[Fraction]:
        return [row[j] for row in self.data]

    def columns(self) -> list[list[Fraction]]:
        return [self.column_vec(j) for j in range(self.cols)]

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "RatMatrix":
        return RatMatrix(
            len(row_idx), len(col_idx),
            [[self.data[i][j] for j in col_idx] for i in row_idx],
        )

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in addition")
        return RatMatrix(self.rows, self.cols,
                         [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)])

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in subtraction")
        return RatMatrix(self.rows, self.cols,
                         [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)])

    def __neg__(self) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols, [[-a for a in row] for row in self.data])

    def scaled(self, c) -> "RatMatrix":
        c = c if type(c) is Fraction else Fraction(c)
        if not c:
            return RatMatrix.zeros(self.rows, self.cols)
        return RatMatrix(self.rows, self.cols, [[c * a for a in row] for row in self.data])

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        out = [[_ZERO] * other.cols for _ in range(self.rows)]
        odata = other.data
        for i, arow in enumerate(self.data):
            orow = out[i]
            for k, a in enumerate(arow):
                if a:
                    brow = odata[k]
                    if a == 1:
                        for j, b in enumerate(brow):
                            if b:
                                orow[j] = orow[j] + b
                    else:
                        for j, b in enumerate(brow):
                            if b:
                                orow[j] = orow[j] + a * b
        return RatMatrix(self.rows, other.cols, out)

    def apply(self, vec: Sequence[Fraction]) -> list[Fraction]:
        """Matrix times column vector, as plain lists."""
        out = [_ZERO] * self.rows
        for i, row in enumerate(self.data):
            acc = _ZERO
            for a, v in zip(row, vec):
                if a and v:
                    acc += a * v
            out[i] = acc
        return out

    # -- elimination ----------------------------------------------------

    def _gauss_jordan(self, aug: int = 0) -> tuple[list[list[Fraction]], list[int]]:
        """Reduced row echelon of a working copy.

        Pivots are only chosen in the first ``cols - aug`` columns, so the
        last ``aug`` columns ride along as an augmented part.
        Returns (reduced rows, pivot column list).
        """
        m = [row[:] for row in self.data]
        nrows, ncols = self.rows, self.cols
        limit = ncols - aug
        pivots: list[int] = []
        r = 0
        for c in range(limit):
            pr = -1
            for i in range(r, nrows):
                if m[i][c]:
                    pr = i
                    break
            if pr < 0:
                continue
            if pr != r:
                m[r], m[pr] = m[pr], m[r]
            prow = m[r]
            piv = prow[c]
            if piv != 1:
                inv = _ONE / piv
                for j in range(c, ncols):
                    if prow[j]:
                        prow[j] = prow[j] * inv
            for i in range(nrows):
                if i != r:
                    f = m[i][c]
                    if f:
                        row = m[i]
                        row[c] = _ZERO
                        for j in range(c + 1, ncols):
                            p = prow[j]
                            if p:
                                row[j] = row[j] - f * p
            pivots.append(c)
            r += 1
            if r == nrows:
                break
        return m, pivots

    def rref(self) -> tuple["RatMatrix", int, list[int]]:
        """Reduced row echelon form, rank, and pivot columns."""
        m, pivots = self._gauss_jordan()
        return RatMatrix(self.rows, self.cols, m), len(pivots), pivots

    def rank(self) -> int:
        return self.rref()[1]

    def kernel_basis(self) -> "RatMatrix":
        """Basis of the right null space, one basis vector per column."""
        red, rank, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in set(pivots)]
        cols = []
        for f in free:
            v = [_ZERO] * self.cols
            v[f] = _ONE
            for i, p in enumerate(pivots):
                a = red.data[i][f]
                if a:
                    v[p] = -a
            cols.append(v)
        return RatMatrix.from_columns(cols, nrows=self.cols)

    def column_space_basis(self) -> tuple["RatMatrix", list[int]]:
        """Pivot columns of the original matrix, and their indices."""
        _, _, pivots = self.rref()
        return self.submatrix(range(self.rows), pivots), pivots

    def solve(self, rhs: "RatMatrix") -> Optional["RatMatrix"]:
        """Some X with self @ X = rhs, or None if the system is inconsistent.

        Free variables are set to zero, so the answer is deterministic.
        """
        if self.rows != rhs.rows:
            raise ValueError("shape mismatch in solve")
        aug = RatMatrix(self.rows, self.cols + rhs.cols,
                        [a + b for a, b in zip(self.data, rhs.data)])
        red, pivots = aug._gauss_jordan(aug=rhs.cols)
        nc = self.cols
        for i in range(len(pivots), self.rows):
            if any(red[i][nc + j] for j in range(rhs.cols)):
                return None
        x = [[_ZERO] * rhs.cols for _ in range(nc)]
        for i, p in enumerate(pivots):
            x[p] = red[i][nc:]
        return RatMatrix(nc, rhs.cols, x)

    def inverse(self) -> Optional["RatMatrix"]:
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        x = self.solve(RatMatrix.identity(self.rows))
        if x is None:
            return None
        # solve() found pivots for every column iff the rank is full
        if (self @ x) != RatMatrix.identity(self.rows):
            return None
        return x

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows


def hstack(mats: Sequence[RatMatrix]) -> RatMatrix:
    mats = list(mats)
    if not mats:
        return RatMatrix.zeros(0, 0)
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise ValueError("hstack row mismatch")
    data = [sum((m.data[i] for m in mats), []) for i in range(rows)]
    return RatMatrix(rows, sum(m.cols for m in mats), data)


def vstack(mats: Sequence[RatMatrix]) -> RatMatrix:
    mats = list(mats)
    if not mats:
        return RatMatrix.zeros(0, 0)
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise ValueError("vstack column mismatch")
    data = [row[:] for m in mats for row in m.data]
    return RatMatrix(sum(m.rows for m in mats), cols, data)


def block_diag(mats: Sequence[RatMatrix]) -> RatMatrix:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = RatMatrix.zeros(rows, cols)
    r = c = 0
    for m in mats:
        for i, row in enumerate(m.data):
            orow = out.data[r + i]
            for j, x in enumerate(row):
                if x:
                    orow[c + j] = x
        r += m.rows
        c += m.cols
    return out


class EchelonSpace:
    """A growing subspace of Q^n kept in reduced row-echelon form.

    Used for image spans, closure computations and membership tests.
    """

    __slots__ = ("n", "rows", "pivots")

    def __init__(self, n: int):
        self.n = n
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, vec: Sequence[Fraction]) -> list[Fraction]:
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            a = v[p]
            if a:
                for j in range(p, self.n):
                    r = row[j]
                    if r:
                        v[j] = v[j] - a * r
        return v

    def contains(self, vec: Sequence[Fraction]) -> bool:
        return not any(self._reduce(vec))

    def add(self, vec: Sequence[Fraction]) -> bool:
        """Insert vec's span; returns True if the rank grew."""
        v = self._reduce(vec)
        p = -1
        for j, x in enumerate(v):
            if x:
                p = j
                break
        if p < 0:
            return False
        piv = v[p]
        if piv != 1:
            inv = _ONE / piv
            v = [x * inv if x else x for x in v]
        # back-substitute into existing rows to stay fully reduced
        for row in self.rows:
            a = row[p]
            if a:
                for j in range(p, self.n):
                    x = v[j]
                    if x:
                        row[j] = row[j] - a * x
        where = 0
        while where < len(self.pivots) and self.pivots[where] < p:
            where += 1
        self.rows.insert(where, v)
        self.pivots.insert(where, p)
        return True

    def add_matrix_columns(self, m: RatMatrix) -> None:
        for j in range(m.cols):
            self.add(m.column_vec(j))

    def basis_matrix(self) -> RatMatrix:
        """Basis as columns of an n x rank matrix."""
        return RatMatrix.from_columns(self.rows, nrows=self.n)
