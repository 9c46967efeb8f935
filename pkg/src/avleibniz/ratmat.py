"""Exact rational matrices and the linear-algebra kernel.

Scalars are :class:`fractions.Fraction`.  Matrices keep only their nonzero
entries, row by row, which keeps the cochain differentials (very sparse at
every size we handle) cheap to multiply and eliminate.

>>> A = RatMatrix.from_rows([[1, 2], [2, 4]])
>>> R, pivots = rref(A)
>>> R.to_rows(), pivots
([[Fraction(1, 1), Fraction(2, 1)], [Fraction(0, 1), Fraction(0, 1)]], [0])
>>> kernel_basis(A)
[(Fraction(-2, 1), Fraction(1, 1))]
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Fraction",
    "RatMatrix",
    "as_rational",
    "format_rational",
    "rref",
    "rank",
    "kernel_basis",
    "solve",
    "inverse",
]


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction.

    Floats are rejected: they would silently smuggle rounding into exact code.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE"):
            raise ValueError(f"not a rational literal: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot read {type(value).__name__} as an exact rational")


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class RatMatrix:
    """Immutable rows x cols matrix over Q with sparse row storage."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, rows: int, cols: int, data: dict[int, dict[int, Fraction]] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.rows = rows
        self.cols = cols
        clean: dict[int, dict[int, Fraction]] = {}
        for r, row in (data or {}).items():
            if not 0 <= r < rows:
                raise IndexError(f"row {r} out of range for {rows} rows")
            kept = {}
            for c, v in row.items():
                if not 0 <= c < cols:
                    raise IndexError(f"column {c} out of range for {cols} columns")
                if v:
                    kept[c] = v if isinstance(v, Fraction) else as_rational(v)
            if kept:
                clean[r] = kept
        self._data = clean
        self._hash = None

    # construction

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RatMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else (cols or 0)
        data = {}
        for r, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged matrix rows")
            data[r] = {c: as_rational(v) for c, v in enumerate(row) if v != 0}
        return cls(nrows, ncols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, {i: {i: Fraction(1)} for i in range(n)})

    @classmethod
    def diag(cls, values: Iterable) -> "RatMatrix":
        vals = [as_rational(v) for v in values]
        return cls(len(vals), len(vals), {i: {i: v} for i, v in enumerate(vals)})

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "RatMatrix":
        data: dict[int, dict[int, Fraction]] = {}
        for c, col in enumerate(columns):
            for r, v in enumerate(col):
                if v:
                    data.setdefault(r, {})[c] = as_rational(v)
        return cls(rows, len(columns), data)

    @classmethod
    def block(cls, blocks: Sequence[Sequence["RatMatrix"]]) -> "RatMatrix":
        """Assemble a block matrix; every block row / column must line up."""
        heights = [row[0].rows for row in blocks]
        widths = [b.cols for b in blocks[0]]
        data: dict[int, dict[int, Fraction]] = {}
        r0 = 0
        for bi, row in enumerate(blocks):
            c0 = 0
            for bj, b in enumerate(row):
                if b.rows != heights[bi] or b.cols != widths[bj]:
                    raise ValueError("misaligned blocks")
                for r, c, v in b.items():
                    data.setdefault(r0 + r, {})[c0 + c] = v
                c0 += widths[bj]
            r0 += heights[bi]
        return cls(sum(heights), sum(widths), data)

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        r, c = key
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(key)
        return self._data.get(r, {}).get(c, Fraction(0))

    def row(self, r: int) -> dict[int, Fraction]:
        """Nonzero entries of row r (read-only view)."""
        return self._data.get(r, {})

    def items(self) -> Iterator[tuple[int, int, Fraction]]:
        for r in sorted(self._data):
            row = self._data[r]
            for c in sorted(row):
                yield r, c, row[c]

    def nnz(self) -> int:
        return sum(len(row) for row in self._data.values())

    def to_rows(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for r, c, v in self.items():
            out[r][c] = v
        return out

    def column(self, c: int) -> tuple[Fraction, ...]:
        return tuple(self._data.get(r, {}).get(c, Fraction(0)) for r in range(self.rows))

    def is_zero(self) -> bool:
        return not self._data

    def first_nonzero(self) -> tuple[int, int, Fraction] | None:
        """First nonzero entry in column-major order (column, then row)."""
        best = None
        for r, row in self._data.items():
            c = min(row)
            if best is None or (c, r) < (best[1], best[0]):
                best = (r, c, row[c])
        return best

    # arithmetic

    def _check_same_shape(self, other: "RatMatrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same_shape(other)
        data = {r: dict(row) for r, row in self._data.items()}
        for r, row in other._data.items():
            target = data.setdefault(r, {})
            for c, v in row.items():
                target[c] = target.get(c, 0) + v
        return RatMatrix(self.rows, self.cols, data)

    def __neg__(self) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols, {r: {c: -v for c, v in row.items()} for r, row in self._data.items()})

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self + (-other)

    def scale(self, s) -> "RatMatrix":
        s = as_rational(s)
        return RatMatrix(self.rows, self.cols, {r: {c: s * v for c, v in row.items()} for r, row in self._data.items()})

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        data = {}
        odata = other._data
        for r, row in self._data.items():
            acc: dict[int, Fraction] = {}
            for k, a in row.items():
                orow = odata.get(k)
                if orow is None:
                    continue
                for c, b in orow.items():
                    acc[c] = acc.get(c, 0) + a * b
            data[r] = acc
        return RatMatrix(self.rows, other.cols, data)

    def apply(self, vector: Sequence) -> tuple[Fraction, ...]:
        if len(vector) != self.cols:
            raise ValueError(f"vector of length {len(vector)} for {self.cols} columns")
        out = [Fraction(0)] * self.rows
        for r, row in self._data.items():
            out[r] = sum((v * vector[c] for c, v in row.items()), Fraction(0))
        return tuple(out)

    def transpose(self) -> "RatMatrix":
        data: dict[int, dict[int, Fraction]] = {}
        for r, c, v in self.items():
            data.setdefault(c, {})[r] = v
        return RatMatrix(self.cols, self.rows, data)

    def hstack(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix.block([[self, other]])

    # identity

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, tuple(self.items())))
        return self._hash

    def __repr__(self) -> str:
        if self.rows * self.cols <= 64:
            body = [[format_rational(v) for v in row] for row in self.to_rows()]
            return f"RatMatrix({body})"
        return f"RatMatrix(<{self.rows}x{self.cols}, nnz={self.nnz()}>)"


def _reduce(rows: Iterable[dict[int, Fraction]]) -> dict[int, dict[int, Fraction]]:
    """Fully reduced pivot rows keyed by pivot column.

    Rows are absorbed one at a time; the basis is kept in reduced form, so a
    pivot row never carries another pivot's column.
    """
    pivots: dict[int, dict[int, Fraction]] = {}
    for src in rows:
        row = dict(src)
        for pc in [c for c in row if c in pivots]:
            f = row.get(pc)
            if not f:
                continue
            for c, v in pivots[pc].items():
                nv = row.get(c, 0) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        if not row:
            continue
        lead = min(row)
        inv = 1 / row[lead]
        row = {c: v * inv for c, v in row.items()}
        for prow in pivots.values():
            f = prow.get(lead)
            if f:
                for c, v in row.items():
                    nv = prow.get(c, 0) - f * v
                    if nv:
                        prow[c] = nv
                    else:
                        del prow[c]
        pivots[lead] = row
    return pivots


def rref(A: RatMatrix) -> tuple[RatMatrix, list[int]]:
    """Reduced row-echelon form and the (increasing) pivot columns."""
    pivots = _reduce(A.row(r) for r in range(A.rows))
    order = sorted(pivots)
    return RatMatrix(A.rows, A.cols, {i: pivots[c] for i, c in enumerate(order)}), order


def rank(A: RatMatrix) -> int:
    return len(_reduce(A.row(r) for r in range(A.rows)))


def kernel_basis(A: RatMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of {v : A v = 0}, one vector per free column, in column order."""
    pivots = _reduce(A.row(r) for r in range(A.rows))
    free = [c for c in range(A.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * A.cols
        v[f] = Fraction(1)
        for pc, prow in pivots.items():
            x = prow.get(f)
            if x:
                v[pc] = -x
        basis.append(tuple(v))
    return basis


def solve(A: RatMatrix, b: Sequence) -> tuple[Fraction, ...] | None:
    """Some x with A x = b (free variables set to zero), or None if b is not in the column space."""
    if len(b) != A.rows:
        raise ValueError(f"right-hand side of length {len(b)} for {A.rows} rows")
    n = A.cols
    aug = []
    for r in range(A.rows):
        row = dict(A.row(r))
        br = as_rational(b[r])
        if br:
            row[n] = br
        aug.append(row)
    pivots = _reduce(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for pc, prow in pivots.items():
        x[pc] = prow.get(n, Fraction(0))
    return tuple(x)


def inverse(A: RatMatrix) -> RatMatrix:
    if A.rows != A.cols:
        raise ValueError("only square matrices have inverses")
    n = A.rows
    aug = A.hstack(RatMatrix.identity(n))
    pivots = _reduce(aug.row(r) for r in range(n))
    if sorted(pivots) != list(range(n)):
        raise ValueError("matrix is singular")
    return RatMatrix(n, n, {r: {c - n: v for c, v in pivots[r].items() if c >= n} for r in range(n)})
