"""Exact rational linear algebra on small dense matrices.

Deterministic Gauss-Jordan elimination with first-nonzero pivoting.  Kernel
bases are returned in reduced row echelon form, so equal kernels always yield
identical bases.  Everything here is a pure function on immutable values,
safe to call concurrently, and never leaves exact arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

from .scalars import format_rational, parse_rational

__all__ = [
    "Mat",
    "rref",
    "rank",
    "kernel_basis",
    "solve_affine",
    "det",
    "mat_inverse",
    "dot",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"matrix entries must be int or Fraction, not {type(x).__name__}")


class Mat:
    """Immutable dense matrix over the rationals, stored as row tuples."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: Optional[int] = None):
        data = tuple(tuple(_frac(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            for row in data:
                if len(row) != width:
                    raise ValueError("rows of unequal length")
            if ncols is not None and ncols != width:
                raise ValueError(f"ncols={ncols} does not match row length {width}")
            ncols = width
        elif ncols is None:
            raise ValueError("a matrix with no rows needs an explicit ncols")
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "nrows", len(data))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.ncols))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(x) for x in row) for row in self.rows)
        return f"Mat[{self.nrows}x{self.ncols}]({body})"

    def row(self, i: int) -> Tuple[Fraction, ...]:
        return self.rows[i]

    def col(self, j: int) -> Tuple[Fraction, ...]:
        return tuple(row[j] for row in self.rows)

    def transpose(self) -> "Mat":
        return Mat(
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            ncols=self.nrows,
        )

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
        cols = other.transpose().rows
        return Mat(
            [[dot(row, col) for col in cols] for row in self.rows],
            ncols=other.ncols,
        )

    def apply(self, vec: Sequence[Fraction]) -> Tuple[Fraction, ...]:
        """Matrix times column vector."""
        if len(vec) != self.ncols:
            raise ValueError("vector length does not match column count")
        return tuple(dot(row, vec) for row in self.rows)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.rows for x in row)

    @staticmethod
    def identity(n: int) -> "Mat":
        return Mat([[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(nrows: int, ncols: int) -> "Mat":
        return Mat([[_ZERO] * ncols for _ in range(nrows)], ncols=ncols)

    @staticmethod
    def vstack(*mats: "Mat") -> "Mat":
        if not mats:
            raise ValueError("vstack of nothing")
        ncols = mats[0].ncols
        for m in mats:
            if m.ncols != ncols:
                raise ValueError("vstack with differing column counts")
        rows = [row for m in mats for row in m.rows]
        return Mat(rows, ncols=ncols)

    @staticmethod
    def from_columns(cols: Sequence[Sequence[Fraction]]) -> "Mat":
        if not cols:
            raise ValueError("need at least one column")
        height = len(cols[0])
        return Mat([[_frac(c[i]) for c in cols] for i in range(height)], ncols=len(cols))

    def to_strings(self) -> list:
        """Nested lists of "p/q" strings, the JSON wire format."""
        return [[format_rational(x) for x in row] for row in self.rows]

    @classmethod
    def from_strings(cls, rows: Sequence[Sequence[str]], ncols: Optional[int] = None) -> "Mat":
        return cls([[parse_rational(s) for s in row] for row in rows], ncols=ncols)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise ValueError("dot of vectors with different lengths")
    total = _ZERO
    for a, b in zip(u, v):
        if a and b:
            total += a * b
    return total


def _rref_rows(rows: Sequence[Sequence[Fraction]], ncols: int):
    """Gauss-Jordan on a copy; returns (reduced rows, pivot column indices)."""
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots = []
    pr = 0
    for pc in range(ncols):
        pivot_row = None
        for r in range(pr, nrows):
            if m[r][pc] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        if pivot_row != pr:
            m[pr], m[pivot_row] = m[pivot_row], m[pr]
        pv = m[pr][pc]
        if pv != 1:
            m[pr] = [x / pv for x in m[pr]]
        prow = m[pr]
        for r in range(nrows):
            if r == pr:
                continue
            f = m[r][pc]
            if f:
                mr = m[r]
                for c in range(pc, ncols):
                    if prow[c]:
                        mr[c] -= f * prow[c]
                mr[pc] = _ZERO
        pivots.append(pc)
        pr += 1
        if pr == nrows:
            break
    return m, pivots


def rref(m: Mat):
    """Reduced row echelon form and the tuple of pivot columns."""
    reduced, pivots = _rref_rows(m.rows, m.ncols)
    return Mat(reduced, ncols=m.ncols), tuple(pivots)


def rank(m: Mat) -> int:
    """Rank over the rationals, computed exactly."""
    _, pivots = _rref_rows(m.rows, m.ncols)
    return len(pivots)


def kernel_basis(m: Mat) -> Mat:
    """Basis of {v : m @ v = 0} as matrix rows, in reduced echelon form.

    The row count is always ncols - rank(m); a full-rank square input yields
    a matrix with zero rows.
    """
    reduced, pivots = _rref_rows(m.rows, m.ncols)
    pivot_set = set(pivots)
    free = [c for c in range(m.ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [_ZERO] * m.ncols
        v[f] = _ONE
        for r, pc in enumerate(pivots):
            v[pc] = -reduced[r][f]
        basis.append(v)
    if not basis:
        return Mat([], ncols=m.ncols)
    canonical, _ = _rref_rows(basis, m.ncols)
    return Mat(canonical, ncols=m.ncols)


def solve_affine(m: Mat, b: Sequence[Fraction]):
    """One exact solution of m x = b plus the kernel basis, or None if inconsistent.

    Inconsistency is a valid return value, not an error.
    """
    if len(b) != m.nrows:
        raise ValueError("right-hand side length must equal the row count")
    augmented = [list(row) + [_frac(x)] for row, x in zip(m.rows, b)]
    if not augmented:
        # No equations: everything solves.
        return tuple([_ZERO] * m.ncols), kernel_basis(m)
    reduced, pivots = _rref_rows(augmented, m.ncols + 1)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [_ZERO] * m.ncols
    for r, pc in enumerate(pivots):
        x[pc] = reduced[r][m.ncols]
    return tuple(x), kernel_basis(m)


def det(m: Mat) -> Fraction:
    """Determinant by fraction Gauss elimination with partial pivoting on order."""
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    n = m.nrows
    a = [list(row) for row in m.rows]
    result = _ONE
    for c in range(n):
        pivot_row = None
        for r in range(c, n):
            if a[r][c] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            return _ZERO
        if pivot_row != c:
            a[c], a[pivot_row] = a[pivot_row], a[c]
            result = -result
        pv = a[c][c]
        result *= pv
        for r in range(c + 1, n):
            f = a[r][c]
            if f:
                f = f / pv
                for cc in range(c, n):
                    a[r][cc] -= f * a[c][cc]
    return result


def mat_inverse(m: Mat) -> Mat:
    """Exact inverse of a square matrix; raises ValueError when singular."""
    if m.nrows != m.ncols:
        raise ValueError("inverse of a non-square matrix")
    n = m.nrows
    augmented = [
        list(row) + [_ONE if i == j else _ZERO for j in range(n)]
        for i, row in enumerate(m.rows)
    ]
    reduced, pivots = _rref_rows(augmented, 2 * n)
    if list(pivots) != list(range(n)):
        raise ValueError("matrix is singular")
    return Mat([row[n:] for row in reduced], ncols=n)
