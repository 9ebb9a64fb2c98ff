"""Dense exact linear algebra over a Field.

Row reduction uses the first nonzero entry in column order as pivot
(deterministic; no numerical concerns over exact fields).  Quotient bases
are the unit vectors at non-pivot columns, listed by ascending column
index; this is the canonical basis convention used by every downstream
module, so certificates are reproducible bit for bit.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from .errors import DimensionMismatchError, ShapeError
from .fields import Field


class Matrix:
    """Immutable dense matrix of raw scalar values."""

    __slots__ = ("field", "nrows", "ncols", "entries")

    def __init__(self, field: Field, entries: Iterable[Iterable], ncols: int | None = None):
        rows = tuple(tuple(row) for row in entries)
        if rows:
            width = len(rows[0])
            if any(len(row) != width for row in rows):
                raise ShapeError("ragged rows in matrix")
            if ncols is not None and ncols != width:
                raise ShapeError(f"declared {ncols} columns, rows have {width}")
            ncols = width
        elif ncols is None:
            ncols = 0
        self.field = field
        self.entries = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, [[field.one if i == j else field.zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, [[field.zero] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        cols = [tuple(c) for c in columns]
        if cols:
            nrows = len(cols[0])
        elif nrows is None:
            nrows = 0
        return cls(field, [[c[i] for c in cols] for i in range(nrows)], len(cols))

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, zip(*self.entries), self.nrows) if self.nrows else Matrix(self.field, [], 0)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise DimensionMismatchError("matrix product over different fields")
        if self.ncols != other.nrows:
            raise DimensionMismatchError(f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
        f = self.field
        ot = other.transpose().entries
        return Matrix(
            f,
            [[_dot(f, row, col) for col in ot] for row in self.entries],
            other.ncols,
        )

    def apply(self, vector: Sequence) -> tuple:
        """Matrix-vector product."""
        if len(vector) != self.ncols:
            raise DimensionMismatchError("vector length does not match column count")
        f = self.field
        return tuple(_dot(f, row, vector) for row in self.entries)

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row-echelon form and the pivot columns."""
        f = self.field
        rows = [list(r) for r in self.entries]
        pivots: list[int] = []
        r = 0
        for c in range(self.ncols):
            pivot_row = next((i for i in range(r, self.nrows) if not f.is_zero(rows[i][c])), None)
            if pivot_row is None:
                continue
            rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
            inv = f.inv(rows[r][c])
            rows[r] = [f.mul(inv, x) for x in rows[r]]
            for i in range(self.nrows):
                if i != r and not f.is_zero(rows[i][c]):
                    factor = rows[i][c]
                    rows[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == self.nrows:
                break
        return Matrix(f, rows, self.ncols), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def is_zero(self) -> bool:
        f = self.field
        return all(f.is_zero(x) for row in self.entries for x in row)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.ncols == other.ncols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.field, self.ncols, self.entries))

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, {self.entries!r})"


def _dot(f: Field, u: Sequence, v: Sequence):
    acc = f.zero
    for x, y in zip(u, v):
        if not (f.is_zero(x) or f.is_zero(y)):
            acc = f.add(acc, f.mul(x, y))
    return acc


class Subspace:
    """A subspace of K^n, stored as a reduced-echelon row basis."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field: Field, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        rows = [tuple(v) for v in vectors]
        if any(len(v) != ambient_dim for v in rows):
            raise DimensionMismatchError("vector length does not match ambient dimension")
        reduced, pivots = Matrix(field, rows, ambient_dim).rref()
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = reduced.entries[: len(pivots)]
        self.pivots = pivots

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, vector: Sequence) -> tuple:
        """Normal form of a vector modulo this subspace.

        Subtracts the unique pivot-column multiples; the result is
        supported on non-pivot columns and is zero iff the vector lies in
        the subspace.
        """
        f = self.field
        v = list(vector)
        if len(v) != self.ambient_dim:
            raise DimensionMismatchError("vector length does not match ambient dimension")
        for row, p in zip(self.basis, self.pivots):
            c = v[p]
            if not f.is_zero(c):
                v = [f.sub(x, f.mul(c, y)) for x, y in zip(v, row)]
        return tuple(v)

    def contains(self, vector: Sequence) -> bool:
        f = self.field
        return all(f.is_zero(x) for x in self.reduce(vector))

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __repr__(self):
        return f"Subspace(dim {self.dim} of K^{self.ambient_dim})"


def subspace_sum_dim(spaces: Sequence[Subspace]) -> int:
    """dim of the sum of the given subspaces (rank of the stacked bases)."""
    if not spaces:
        return 0
    ambient = spaces[0].ambient_dim
    field = spaces[0].field
    for s in spaces:
        if s.ambient_dim != ambient or s.field != field:
            raise DimensionMismatchError("subspace sum over mismatched ambients")
    stacked = [row for s in spaces for row in s.basis]
    return Matrix(field, stacked, ambient).rank()


def quotient_basis(ambient_dim: int, sub: Subspace) -> list[tuple]:
    """Coset representatives for K^n / sub: unit vectors at non-pivot columns,
    in ascending column order."""
    if sub.ambient_dim != ambient_dim:
        raise DimensionMismatchError("subspace ambient does not match")
    f = sub.field
    pivot_set = set(sub.pivots)
    reps = []
    for c in range(ambient_dim):
        if c not in pivot_set:
            reps.append(tuple(f.one if i == c else f.zero for i in range(ambient_dim)))
    return reps
