"""Projective point configurations and rational normal curves.

A configuration of n points in projective d-space is a (d+1) x n exact
rational matrix with nonzero columns, read up to column scaling and left
multiplication by invertible matrices.  This module provides Veronese
parametrizations, curve fitting through d+3 points in linearly general
position, exact curve-membership tests, and a projective-equivalence
decision procedure.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

from .exactlin import Mat, det, dot, kernel_basis, mat_inverse, rank, solve_affine
from .scalars import INF, Infinity, Param, format_rational, parse_rational

__all__ = [
    "ProjPoint",
    "Configuration",
    "RncParam",
    "DegeneratePosition",
    "IndeterminateEquivalence",
    "veronese_point",
    "veronese_config",
    "fit_rnc",
    "on_rnc",
    "proj_equivalent",
]


class DegeneratePosition(ValueError):
    """Input points violate the linearly-general-position requirement."""


class IndeterminateEquivalence(Exception):
    """The equivalence system is too degenerate to certify a yes/no answer."""


class ProjPoint:
    """A point of projective space: a nonzero coordinate vector up to scale."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable):
        cs = tuple(Fraction(x) for x in coords)
        if not cs or all(x == 0 for x in cs):
            raise ValueError("projective point needs a nonzero coordinate vector")
        object.__setattr__(self, "coords", cs)

    def __setattr__(self, name, value):
        raise AttributeError("ProjPoint is immutable")

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def normalized(self) -> Tuple[Fraction, ...]:
        """Scale so the first nonzero coordinate equals 1 (serialization form)."""
        for x in self.coords:
            if x != 0:
                return tuple(c / x for c in self.coords)
        raise AssertionError("unreachable: zero vector")

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return len(self.coords) == len(other.coords) and self.normalized() == other.normalized()

    def __hash__(self) -> int:
        return hash(self.normalized())

    def __repr__(self) -> str:
        return "(" + " : ".join(format_rational(x) for x in self.coords) + ")"


def _parallel_nonzero(u: Sequence[Fraction], v: Sequence[Fraction]) -> bool:
    """True when two nonzero vectors are proportional with a nonzero scalar."""
    iu = next((i for i, x in enumerate(u) if x != 0), None)
    iv = next((i for i, x in enumerate(v) if x != 0), None)
    if iu is None or iv is None or iu != iv:
        return False
    a, b = u[iu], v[iv]
    return all(x * b == y * a for x, y in zip(u, v))


class Configuration:
    """An ordered n-tuple of points in P^d, stored as matrix columns."""

    __slots__ = ("d", "n", "matrix")

    def __init__(self, d: int, n: int, matrix: Mat):
        if d < 1:
            raise ValueError("ambient dimension must be at least 1")
        if n < 1:
            raise ValueError("need at least one point")
        if matrix.nrows != d + 1 or matrix.ncols != n:
            raise ValueError(f"matrix must be {(d + 1)}x{n}, got {matrix.nrows}x{matrix.ncols}")
        for j in range(n):
            if all(matrix.rows[i][j] == 0 for i in range(d + 1)):
                raise ValueError(f"column {j + 1} is zero")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name, value):
        raise AttributeError("Configuration is immutable")

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Fraction]]) -> "Configuration":
        mat = Mat.from_columns(columns)
        return cls(mat.nrows - 1, mat.ncols, mat)

    def column(self, i: int) -> Tuple[Fraction, ...]:
        """Coordinate vector of the i-th point (0-based)."""
        return self.matrix.col(i)

    def point(self, i: int) -> ProjPoint:
        return ProjPoint(self.column(i))

    def points(self) -> List[ProjPoint]:
        return [self.point(i) for i in range(self.n)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Configuration)
            and (self.d, self.n) == (other.d, other.n)
            and self.matrix == other.matrix
        )

    def __hash__(self) -> int:
        return hash((self.d, self.n, self.matrix))

    def __repr__(self) -> str:
        return f"Configuration(d={self.d}, n={self.n})"

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "columns": [
                [format_rational(x) for x in ProjPoint(self.column(i)).normalized()]
                for i in range(self.n)
            ],
        }

    @classmethod
    def from_json(cls, payload: dict) -> "Configuration":
        d, n = payload["d"], payload["n"]
        cols = [[parse_rational(s) for s in col] for col in payload["columns"]]
        if len(cols) != n:
            raise ValueError("column count does not match n")
        if any(len(c) != d + 1 for c in cols):
            raise ValueError("column height does not match d+1")
        return cls(d, n, Mat.from_columns(cols))


def veronese_point(d: int, t: Param) -> ProjPoint:
    """The degree-d power map: t to (1, t, ..., t^d); infinity to (0, ..., 0, 1)."""
    if d < 1:
        raise ValueError("degree must be at least 1")
    if isinstance(t, Infinity):
        return ProjPoint([0] * d + [1])
    coords = [Fraction(1)]
    for _ in range(d):
        coords.append(coords[-1] * t)
    return ProjPoint(coords)


def veronese_config(d: int, ts: Sequence[Param]) -> Configuration:
    """Configuration of points on the standard rational normal curve of degree d."""
    seen = set()
    for t in ts:
        key = ("inf",) if isinstance(t, Infinity) else ("q", Fraction(t))
        if key in seen:
            raise ValueError(f"duplicate parameter {t!r}")
        seen.add(key)
    columns = [veronese_point(d, t).coords for t in ts]
    return Configuration(d, len(ts), Mat.from_columns(columns))


class RncParam:
    """A parametrized rational normal curve: t maps to frame @ (1, t, ..., t^d).

    The frame is an invertible (d+1) x (d+1) matrix; `parameters` records the
    parameter values of the points the curve was fitted through.
    """

    def __init__(self, frame: Mat, parameters: Tuple[Param, ...]):
        if frame.nrows != frame.ncols:
            raise ValueError("frame must be square")
        self.frame = frame
        self.parameters = tuple(parameters)
        seen = set()
        for t in self.parameters:
            key = "inf" if isinstance(t, Infinity) else Fraction(t)
            if key in seen:
                raise ValueError("parameters must be pairwise distinct")
            seen.add(key)

    @property
    def d(self) -> int:
        return self.frame.nrows - 1

    @cached_property
    def _frame_inverse(self) -> Mat:
        return mat_inverse(self.frame)

    def point_at(self, t: Param) -> ProjPoint:
        return ProjPoint(self.frame.apply(veronese_point(self.d, t).coords))

    def parameter_of(self, point: Sequence[Fraction]) -> Optional[Param]:
        """The parameter value hitting `point`, or None when off the curve.

        Solves from the first two normalized coordinates and verifies the
        remaining ones exactly.
        """
        y = self._frame_inverse.apply(tuple(Fraction(x) for x in point))
        d = self.d
        if y[0] != 0:
            t = y[1] / y[0]
            power = y[0]
            for k in range(1, d + 1):
                power *= t
                if y[k] != power:
                    return None
            return t
        if all(y[k] == 0 for k in range(d)) and y[d] != 0:
            return INF
        return None

    def contains(self, point: Sequence[Fraction]) -> bool:
        return self.parameter_of(point) is not None


def _general_position_failure(points: Sequence[ProjPoint]) -> str:
    d = points[0].dim
    for subset in itertools.combinations(range(len(points)), d + 1):
        m = Mat.from_columns([points[i].coords for i in subset])
        if rank(m) < d + 1:
            return "points " + ", ".join(str(i + 1) for i in subset) + " fail to span"
    return ""


def fit_rnc(points: Sequence[ProjPoint]) -> RncParam:
    """The unique parametrized rational normal curve through d+3 general points.

    The projectivity taking points 1..d+2 to the coordinate simplex plus unit
    point is computed first; writing the image of the last point as
    (a_1 : ... : a_{d+1}) with all a_i nonzero and pairwise distinct, the
    normalized curve is x_i(t) = a_i * prod_{j != i} (a_j t + 1).  It passes
    through the unit point at t = infinity, the last point at t = 0, and the
    i-th coordinate point at t = -1/a_i.
    """
    if not points:
        raise ValueError("no points given")
    d = points[0].dim
    if d < 1:
        raise ValueError("ambient dimension must be at least 1")
    if len(points) != d + 3:
        raise ValueError(f"need exactly d+3 = {d + 3} points, got {len(points)}")
    if any(p.dim != d for p in points):
        raise ValueError("points live in different projective spaces")

    base = Mat.from_columns([points[j].coords for j in range(d + 1)])
    if rank(base) < d + 1:
        raise DegeneratePosition(_general_position_failure(points) or "first d+1 points are dependent")
    solved = solve_affine(base, points[d + 1].coords)
    assert solved is not None
    coeffs, _ = solved
    if any(c == 0 for c in coeffs):
        raise DegeneratePosition(_general_position_failure(points) or "point d+2 lies in a face of the simplex")
    # frame_to_simplex sends points 1..d+1 to e_i and point d+2 to (1, ..., 1)
    scaled = Mat.from_columns(
        [[x * coeffs[j] for x in base.col(j)] for j in range(d + 1)]
    )
    to_simplex = mat_inverse(scaled)
    a = to_simplex.apply(points[d + 2].coords)
    if any(x == 0 for x in a):
        raise DegeneratePosition(_general_position_failure(points) or "last point lies in a coordinate hyperplane")
    if len(set(a)) != len(a):
        raise DegeneratePosition(_general_position_failure(points) or "last point has repeated simplex coordinates")

    # Row i of the coefficient matrix expands a_i * prod_{j != i} (a_j t + 1).
    coeff_rows = []
    for i in range(d + 1):
        poly = [Fraction(1)]
        for j in range(d + 1):
            if j == i:
                continue
            poly = _poly_mul(poly, [Fraction(1), a[j]])
        row = [a[i] * c for c in poly] + [Fraction(0)] * (d + 1 - len(poly))
        coeff_rows.append(row)
    frame = scaled @ Mat(coeff_rows)
    params: List[Param] = [Fraction(-1) / x for x in a]
    params.append(INF)
    params.append(Fraction(0))
    return RncParam(frame, tuple(params))


def _poly_mul(p: List[Fraction], q: List[Fraction]) -> List[Fraction]:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, pi in enumerate(p):
        if pi:
            for j, qj in enumerate(q):
                if qj:
                    out[i + j] += pi * qj
    return out


def on_rnc(config: Configuration) -> bool:
    """True when every point lies on the curve through the first d+3 points."""
    d, n = config.d, config.n
    if n < d + 3:
        raise ValueError(f"need n >= d+3 = {d + 3} points")
    curve = fit_rnc([config.point(i) for i in range(d + 3)])
    return all(curve.contains(config.column(i)) for i in range(n))


# ---------------------------------------------------------------------------
# Projective equivalence
# ---------------------------------------------------------------------------


def _is_frame(config: Configuration, subset: Sequence[int]) -> bool:
    """Every d+1 of the selected d+2 columns must be independent."""
    d = config.d
    cols = [config.column(i) for i in subset]
    for skip in range(len(subset)):
        m = Mat.from_columns([c for j, c in enumerate(cols) if j != skip])
        if det(m) == 0:
            return False
    return True


_FRAME_SEARCH_CAP = 2000


def _find_frame(config: Configuration) -> Optional[Tuple[int, ...]]:
    d, n = config.d, config.n
    if n < d + 2:
        return None
    for count, subset in enumerate(itertools.combinations(range(n), d + 2)):
        if count >= _FRAME_SEARCH_CAP:
            return None
        if _is_frame(config, subset):
            return subset
    return None


def _normalize_by_frame(config: Configuration, subset: Sequence[int]) -> Mat:
    """Left-multiply so the frame columns become the simplex plus unit point."""
    d = config.d
    base = Mat.from_columns([config.column(i) for i in subset[: d + 1]])
    solved = solve_affine(base, config.column(subset[d + 1]))
    assert solved is not None
    coeffs, _ = solved
    scaled = Mat.from_columns([[x * coeffs[j] for x in base.col(j)] for j in range(d + 1)])
    return mat_inverse(scaled) @ config.matrix


def _minor_equation_rows(a: Configuration, b: Configuration) -> Mat:
    """Linear system in the entries of A from det [A a_i | b_i] minors = 0."""
    d, n = a.d, a.n
    width = (d + 1) * (d + 1)
    rows = []
    for i in range(n):
        ai = a.column(i)
        bi = b.column(i)
        for r in range(d + 1):
            for s in range(r + 1, d + 1):
                row = [Fraction(0)] * width
                # (A a_i)_r * b_i[s] - (A a_i)_s * b_i[r] = 0
                for c in range(d + 1):
                    if ai[c]:
                        row[r * (d + 1) + c] += ai[c] * bi[s]
                        row[s * (d + 1) + c] -= ai[c] * bi[r]
                rows.append(row)
    return Mat(rows, ncols=width)


def _as_square(vec: Sequence[Fraction], size: int) -> Mat:
    return Mat([vec[i * size : (i + 1) * size] for i in range(size)])


def _equivalence_by_minors(a: Configuration, b: Configuration) -> bool:
    d = a.d
    size = d + 1
    system = _minor_equation_rows(a, b)
    space = kernel_basis(system)
    k = space.nrows
    if k == 0:
        return False
    if k == 1:
        return det(_as_square(space.row(0), size)) != 0
    # Solution space of dimension >= 2: probe deterministic combinations for
    # an invertible element; give up with Indeterminate if none is found.
    candidates: List[Tuple[Fraction, ...]] = [space.row(i) for i in range(k)]
    running = [Fraction(0)] * (size * size)
    for i in range(k):
        running = [x + y for x, y in zip(running, space.row(i))]
        candidates.append(tuple(running))
    for lam in range(1, size * k + 3):
        combo = [Fraction(0)] * (size * size)
        power = Fraction(1)
        for i in range(k):
            combo = [x + power * y for x, y in zip(combo, space.row(i))]
            power *= lam
        candidates.append(tuple(combo))
    for vec in candidates:
        if any(x != 0 for x in vec) and det(_as_square(vec, size)) != 0:
            return True
    raise IndeterminateEquivalence(
        f"solution space has dimension {k} and no invertible element was found"
    )


def proj_equivalent(a: Configuration, b: Configuration) -> bool:
    """Decide whether some projectivity takes each a_i to b_i up to scale.

    Equality of shapes is required, and both configurations must span.
    Special-position inputs whose minor system leaves an undecidable search
    raise IndeterminateEquivalence.
    """
    if (a.d, a.n) != (b.d, b.n):
        raise ValueError("configurations must share (d, n)")
    d, n = a.d, a.n
    if rank(a.matrix) < d + 1 or rank(b.matrix) < d + 1:
        raise ValueError("configurations must span the ambient space")
    if n == d + 1:
        # Spanning simplices are all equivalent.
        return True
    frame = _find_frame(a)
    if frame is not None:
        if not _is_frame(b, frame):
            return False
        na = _normalize_by_frame(a, frame)
        nb = _normalize_by_frame(b, frame)
        return all(
            _parallel_nonzero(na.col(i), nb.col(i)) for i in range(n)
        )
    return _equivalence_by_minors(a, b)
