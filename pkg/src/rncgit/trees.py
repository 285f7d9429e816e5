"""Stable dual trees of pointed rational curves and their induced geometry.

A stable tree records, for each component of a nodal curve of arithmetic
genus zero, the exact coordinates of its marked points and nodes.  Three
constructions live here:

* `limit_config` maps the tree to a point configuration by computing the
  global sections of a degree-d line bundle whose degree is split across
  components by a degree partition; components of degree zero get
  contracted to a single image point.
* `semistable_partitions` enumerates degree partitions and keeps those whose
  configuration is not unstable for a given linearization.
* `degree_map_solve` counts (and constructs) the maps of total degree e from
  a maximally degenerate tree to projective space that are linear on
  components and satisfy one linear-subspace incidence per mark.  For
  generic constraints the count is one; the construction proceeds by
  repeatedly absorbing a leaf component, either contracting it (when the two
  mark constraints meet) or spending one unit of degree on the unique line
  through a forced point meeting both constraints (when they are skew).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .configs import Configuration, proj_equivalent
from .exactlin import Mat, kernel_basis, rank, solve_affine
from .gitstab import Linearization, StabilityVerdict, Stability, semistability
from .scalars import INF, Infinity, Param, format_param, parse_param

__all__ = [
    "TreePoint",
    "StableTree",
    "SubspaceConstraint",
    "PiecewiseMap",
    "SectionSpaceDimension",
    "PoleAtMark",
    "NonGenericConstraints",
    "limit_config",
    "default_aux",
    "aux_independence_check",
    "semistable_partitions",
    "degree_compositions",
    "degree_map_solve",
]


class SectionSpaceDimension(Exception):
    """The solved section space does not have the expected dimension."""


class PoleAtMark(ValueError):
    """An auxiliary point collides with a special point on its component."""


class NonGenericConstraints(Exception):
    """An intersection or decomposition did not have its generic dimension."""


@dataclass(frozen=True)
class TreePoint:
    """A special point on one component: a mark ("mark:3") or a node ("edge:e1")."""

    label: str
    coord: Param

    @property
    def is_mark(self) -> bool:
        return self.label.startswith("mark:")

    @property
    def is_edge(self) -> bool:
        return self.label.startswith("edge:")

    @property
    def mark_index(self) -> int:
        if not self.is_mark:
            raise ValueError(f"{self.label} is not a mark")
        return int(self.label.split(":", 1)[1])

    @property
    def edge_id(self) -> str:
        if not self.is_edge:
            raise ValueError(f"{self.label} is not a node")
        return self.label.split(":", 1)[1]


def _coord_key(t: Param):
    return "inf" if isinstance(t, Infinity) else Fraction(t)


class StableTree:
    """Dual tree of a stable pointed rational curve with exact coordinates.

    Every vertex carries at least three special points with pairwise distinct
    coordinates, every mark 1..n appears exactly once, and every edge id
    appears exactly once on each of its two endpoint vertices.
    """

    __slots__ = ("vertices", "edges")

    def __init__(
        self,
        vertices: Sequence[Sequence[TreePoint]],
        edges: Sequence[Tuple[str, int, int]],
    ):
        verts = tuple(tuple(points) for points in vertices)
        eds = tuple((str(e[0]), int(e[1]), int(e[2])) for e in edges)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", eds)
        self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("StableTree is immutable")

    def _validate(self) -> None:
        r = len(self.vertices)
        if r == 0:
            raise ValueError("tree needs at least one component")
        if len(self.edges) != r - 1:
            raise ValueError("a tree on r vertices has exactly r-1 edges")
        edge_ids = [e[0] for e in self.edges]
        if len(set(edge_ids)) != len(edge_ids):
            raise ValueError("edge ids must be distinct")
        # connectivity
        adjacency: Dict[int, List[int]] = {v: [] for v in range(r)}
        for eid, a, b in self.edges:
            if not (0 <= a < r and 0 <= b < r) or a == b:
                raise ValueError(f"edge {eid} has invalid endpoints")
            adjacency[a].append(b)
            adjacency[b].append(a)
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != r:
            raise ValueError("edges do not connect the components")
        # per-vertex checks and label bookkeeping
        marks: Dict[int, int] = {}
        edge_points: Dict[str, List[int]] = {}
        for v, points in enumerate(self.vertices):
            if len(points) < 3:
                raise ValueError(f"component {v} carries fewer than 3 special points")
            coords = set()
            for p in points:
                key = _coord_key(p.coord)
                if key in coords:
                    raise ValueError(f"repeated coordinate on component {v}")
                coords.add(key)
                if p.is_mark:
                    if p.mark_index in marks:
                        raise ValueError(f"mark {p.mark_index} appears twice")
                    marks[p.mark_index] = v
                elif p.is_edge:
                    edge_points.setdefault(p.edge_id, []).append(v)
                else:
                    raise ValueError(f"unknown label {p.label!r}")
        n = len(marks)
        if set(marks) != set(range(1, n + 1)):
            raise ValueError("marks must be exactly 1..n")
        for eid, a, b in self.edges:
            if sorted(edge_points.get(eid, [])) != sorted([a, b]):
                raise ValueError(f"edge {eid} must appear exactly once on each endpoint")
        for eid in edge_points:
            if eid not in set(edge_ids):
                raise ValueError(f"node label edge:{eid} has no matching edge")

    @property
    def r(self) -> int:
        return len(self.vertices)

    @property
    def n(self) -> int:
        return sum(1 for pts in self.vertices for p in pts if p.is_mark)

    def mark_position(self, index: int) -> Tuple[int, Param]:
        for v, points in enumerate(self.vertices):
            for p in points:
                if p.is_mark and p.mark_index == index:
                    return v, p.coord
        raise KeyError(f"no mark {index}")

    def edge_coord(self, edge_id: str, vertex: int) -> Param:
        for p in self.vertices[vertex]:
            if p.is_edge and p.edge_id == edge_id:
                return p.coord
        raise KeyError(f"edge {edge_id} has no point on component {vertex}")

    def special_coords(self, vertex: int) -> List[Param]:
        return [p.coord for p in self.vertices[vertex]]

    def is_maximally_degenerate(self) -> bool:
        return all(len(points) == 3 for points in self.vertices)

    def to_json(self) -> dict:
        return {
            "vertices": [
                {"points": [{"label": p.label, "coord": format_param(p.coord)} for p in pts]}
                for pts in self.vertices
            ],
            "edges": [[eid, a, b] for eid, a, b in self.edges],
        }

    @classmethod
    def from_json(cls, payload: dict) -> "StableTree":
        vertices = [
            [TreePoint(p["label"], parse_param(p["coord"])) for p in v["points"]]
            for v in payload["vertices"]
        ]
        edges = [(e[0], e[1], e[2]) for e in payload["edges"]]
        return cls(vertices, edges)


# ---------------------------------------------------------------------------
# Limit configurations
# ---------------------------------------------------------------------------

def _basis_value(t: Param, q: Fraction) -> Fraction:
    """Value of the rational function 1/(x - q) at x = t, with 1/(inf - q) = 0."""
    if isinstance(t, Infinity):
        return Fraction(0)
    return 1 / (t - q)


def _check_aux(tree: StableTree, degrees: Sequence[int], aux: Sequence[Sequence[Fraction]]) -> None:
    if len(degrees) != tree.r or len(aux) != tree.r:
        raise ValueError("degree partition and aux lists must have one entry per component")
    if any(dv < 0 for dv in degrees):
        raise ValueError("component degrees must be nonnegative")
    for v in range(tree.r):
        points = aux[v]
        if len(points) != degrees[v]:
            raise ValueError(f"component {v} needs {degrees[v]} auxiliary points, got {len(points)}")
        special = {_coord_key(c) for c in tree.special_coords(v)}
        seen = set()
        for q in points:
            if isinstance(q, Infinity):
                raise ValueError("auxiliary points must be finite")
            key = Fraction(q)
            if key in special:
                raise PoleAtMark(
                    f"auxiliary point {q} collides with a special point on component {v}"
                )
            if key in seen:
                raise ValueError(f"repeated auxiliary point {q} on component {v}")
            seen.add(key)


def limit_config(
    tree: StableTree,
    degrees: Sequence[int],
    aux: Sequence[Sequence[Fraction]],
) -> Configuration:
    """Image configuration of the marks under the map induced by a degree
    partition and a compatible auxiliary divisor.

    On component v the sections live in span{1} + span{1/(x - q)} over the
    d_v auxiliary points q on v; one value-matching equation per edge glues
    the components.  The glued space has dimension d+1 and evaluating a
    basis of it at the marks yields the configuration.  Components of degree
    zero are contracted: all their marks share a column.
    """
    _check_aux(tree, degrees, aux)
    d = sum(degrees)
    if d < 1:
        raise ValueError("total degree must be at least 1")
    r = tree.r
    offsets = []
    width = 0
    for v in range(r):
        offsets.append(width)
        width += 1 + degrees[v]

    def eval_block(v: int, t: Param, coeffs: Sequence[Fraction]) -> Fraction:
        value = coeffs[offsets[v]]
        for j, q in enumerate(aux[v]):
            c = coeffs[offsets[v] + 1 + j]
            if c:
                value += c * _basis_value(t, q)
        return value

    rows = []
    for eid, a, b in tree.edges:
        row = [Fraction(0)] * width
        ta = tree.edge_coord(eid, a)
        tb = tree.edge_coord(eid, b)
        row[offsets[a]] += 1
        for j, q in enumerate(aux[a]):
            row[offsets[a] + 1 + j] += _basis_value(ta, q)
        row[offsets[b]] -= 1
        for j, q in enumerate(aux[b]):
            row[offsets[b] + 1 + j] -= _basis_value(tb, q)
        rows.append(row)
    constraints = Mat(rows, ncols=width)
    sections = kernel_basis(constraints)
    if sections.nrows != d + 1:
        raise SectionSpaceDimension(
            f"glued section space has dimension {sections.nrows}, expected {d + 1}"
        )

    columns = []
    for i in range(1, tree.n + 1):
        v, t = tree.mark_position(i)
        columns.append([eval_block(v, t, sections.row(k)) for k in range(d + 1)])
    return Configuration(d, tree.n, Mat.from_columns(columns))


def default_aux(tree: StableTree, degrees: Sequence[int]) -> List[List[Fraction]]:
    """Deterministic auxiliary divisor: on each component, the smallest
    nonnegative integers avoiding the special-point coordinates."""
    out: List[List[Fraction]] = []
    for v in range(tree.r):
        special = {_coord_key(c) for c in tree.special_coords(v)}
        chosen: List[Fraction] = []
        candidate = 0
        while len(chosen) < degrees[v]:
            q = Fraction(candidate)
            if q not in special:
                chosen.append(q)
            candidate += 1
        out.append(chosen)
    return out


def _span_coordinates(config: Configuration) -> Mat:
    """Columns rewritten in the basis of their own span: the nonzero rows of
    the reduced echelon form express each column against the pivot columns."""
    from .exactlin import rref

    reduced, pivots = rref(config.matrix)
    return Mat([reduced.row(i) for i in range(len(pivots))], ncols=config.n)


def aux_independence_check(
    tree: StableTree,
    degrees: Sequence[int],
    aux_one: Sequence[Sequence[Fraction]],
    aux_two: Sequence[Sequence[Fraction]],
) -> bool:
    """The configuration depends only on the degree partition: two compatible
    auxiliary divisors must yield projectively equivalent configurations.

    Degenerate partitions can produce marks that do not span the ambient
    space (the image curve spans, the marks need not); equivalence is then
    decided inside the common span, where any projectivity between the spans
    extends to the ambient space.
    """
    first = limit_config(tree, degrees, aux_one)
    second = limit_config(tree, degrees, aux_two)
    rank_one = rank(first.matrix)
    rank_two = rank(second.matrix)
    if rank_one != rank_two:
        return False
    if rank_one == first.d + 1:
        return proj_equivalent(first, second)
    if rank_one == 1:
        return True  # both are a single repeated point
    reduced_one = Configuration(rank_one - 1, first.n, _span_coordinates(first))
    reduced_two = Configuration(rank_two - 1, second.n, _span_coordinates(second))
    return proj_equivalent(reduced_one, reduced_two)


def degree_compositions(total: int, parts: int):
    """All ways to write `total` as an ordered sum of `parts` nonnegative
    integers, lexicographically."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in degree_compositions(total - head, parts - 1):
            yield (head,) + tail


def semistable_partitions(
    tree: StableTree, lin: Linearization
) -> List[Tuple[Tuple[int, ...], StabilityVerdict]]:
    """Degree partitions whose limit configuration is not unstable for `lin`,
    using the deterministic auxiliary divisor.  Off the walls exactly one
    partition survives and it is stable; on walls several strictly
    semistable partitions may be returned."""
    if lin.n != tree.n:
        raise ValueError("linearization and tree disagree on the number of marks")
    results = []
    for degrees in degree_compositions(lin.d, tree.r):
        config = limit_config(tree, degrees, default_aux(tree, degrees))
        verdict = semistability(config, lin)
        if verdict.status is not Stability.UNSTABLE:
            results.append((degrees, verdict))
    return results


def edge_cut_degree_criterion(
    tree: StableTree, lin: Linearization, degrees: Sequence[int]
) -> bool:
    """Combinatorial surrogate for the geometric selector: for every edge and
    each side of the cut, a side of weight > m must carry total degree >= m.
    Equivalently each side's degree is at least ceil(weight) - 1."""
    adjacency: Dict[int, List[Tuple[str, int]]] = {v: [] for v in range(tree.r)}
    for eid, a, b in tree.edges:
        adjacency[a].append((eid, b))
        adjacency[b].append((eid, a))
    for cut_eid, ca, cb in tree.edges:
        # collect the component set on the `ca` side of the cut
        side = {ca}
        stack = [ca]
        while stack:
            v = stack.pop()
            for eid, w in adjacency[v]:
                if eid != cut_eid and w not in side:
                    side.add(w)
                    stack.append(w)
        for vertices in (side, set(range(tree.r)) - side):
            weight = Fraction(0)
            degree = 0
            for v in vertices:
                degree += degrees[v]
                for p in tree.vertices[v]:
                    if p.is_mark:
                        weight += lin.x[p.mark_index - 1]
            bound = weight.numerator // weight.denominator
            if weight.denominator == 1:
                bound -= 1
            if degree < bound:
                return False
    return True


# ---------------------------------------------------------------------------
# Counting degree-e maps with incidence constraints
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubspaceConstraint:
    """An incidence condition: the image of mark `index` must lie in the
    subspace spanned by the rows of `span`."""

    index: int
    span: Mat

    @property
    def codim(self) -> int:
        return self.span.ncols - self.span.nrows

    def __post_init__(self):
        if self.span.nrows < 1 or self.span.nrows > self.span.ncols:
            raise ValueError("span must have between 1 and d+1 rows")
        if rank(self.span) != self.span.nrows:
            raise ValueError("span rows must be independent")


class _Space:
    """A linear subspace carried through the recursion, with both a spanning
    row basis and (lazily) its defining equations."""

    __slots__ = ("span", "_equations")

    def __init__(self, span: Mat):
        self.span = span
        self._equations = None

    @property
    def dim(self) -> int:
        return self.span.nrows

    @property
    def codim(self) -> int:
        return self.span.ncols - self.span.nrows

    @property
    def equations(self) -> Mat:
        if self._equations is None:
            self._equations = kernel_basis(self.span)
        return self._equations

    def contains(self, vec: Sequence[Fraction]) -> bool:
        return all(x == 0 for x in self.equations.apply(vec))


def _intersect(a: _Space, b: _Space) -> _Space:
    stacked = Mat.vstack(a.equations, b.equations)
    return _Space(kernel_basis(stacked))


def _sum_space(a: _Space, b: _Space) -> _Space:
    from .exactlin import rref

    stacked = Mat.vstack(a.span, b.span)
    reduced, pivots = rref(stacked)
    rows = [reduced.row(i) for i in range(len(pivots))]
    return _Space(Mat(rows, ncols=stacked.ncols))


def _hom_pair(t: Param) -> Tuple[Fraction, Fraction]:
    """Homogeneous coordinates (s, t) of a parameter on the line."""
    if isinstance(t, Infinity):
        return (Fraction(0), Fraction(1))
    return (Fraction(1), Fraction(t))


def _vanishing_form(t: Param) -> Tuple[Fraction, Fraction]:
    """Coefficients (c_s, c_t) of a linear form vanishing at the parameter."""
    s0, t0 = _hom_pair(t)
    return (-t0, s0)


def _form_value(form: Tuple[Fraction, Fraction], t: Param) -> Fraction:
    s0, t0 = _hom_pair(t)
    return form[0] * s0 + form[1] * t0


def _line_matrix(
    t_u: Param,
    t_v: Param,
    t_w: Param,
    u: Sequence[Fraction],
    v: Sequence[Fraction],
) -> Mat:
    """The (d+1) x 2 matrix of the unique degree-1 map sending t_u to [u],
    t_v to [v], and t_w to [u + v], acting on homogeneous (s, t)."""
    form_u = _vanishing_form(t_u)
    form_v = _vanishing_form(t_v)
    cu = _form_value(form_u, t_w)
    cv = _form_value(form_v, t_w)
    # map(s, t) = form_v(s,t) * cu * u  +  form_u(s,t) * cv * v
    col_s = [form_v[0] * cu * x + form_u[0] * cv * y for x, y in zip(u, v)]
    col_t = [form_v[1] * cu * x + form_u[1] * cv * y for x, y in zip(u, v)]
    return Mat.from_columns([col_s, col_t])


def _eval_line(matrix: Mat, t: Param) -> Tuple[Fraction, ...]:
    s0, t0 = _hom_pair(t)
    return tuple(row[0] * s0 + row[1] * t0 for row in matrix.rows)


def _decompose(
    a: _Space, b: _Space, target: Sequence[Fraction]
) -> Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]:
    """Unique splitting target = u + v with u in a and v in b (a, b skew)."""
    columns = [a.span.row(i) for i in range(a.dim)] + [b.span.row(i) for i in range(b.dim)]
    system = Mat.from_columns(columns)
    solved = solve_affine(system, target)
    if solved is None:
        raise NonGenericConstraints("forced point does not lie in the span of the two constraints")
    coeffs, kernel = solved
    if kernel.nrows != 0:
        raise NonGenericConstraints("constraint spaces are not skew; decomposition not unique")
    size = a.span.ncols
    u = [Fraction(0)] * size
    for i in range(a.dim):
        c = coeffs[i]
        if c:
            row = a.span.row(i)
            for j in range(size):
                u[j] += c * row[j]
    v = [x - y for x, y in zip(target, u)]
    if all(x == 0 for x in u) or all(x == 0 for x in v):
        raise NonGenericConstraints("forced point lies inside one of the two constraints")
    return tuple(u), tuple(v)


def _solve_base(
    vid: int,
    points: Sequence[Tuple[str, Param]],
    spaces: Dict[str, _Space],
    e: int,
    d: int,
):
    labels = sorted(p[0] for p in points)
    coords = {lbl: t for lbl, t in points}
    if e == 0:
        stacked = Mat.vstack(*[spaces[lbl].equations for lbl in labels])
        point = kernel_basis(stacked)
        if point.nrows != 1:
            raise NonGenericConstraints(
                f"triple intersection has dimension {point.nrows}, expected a single point"
            )
        z = point.row(0)
        return {vid: ("point", z)}, {lbl: z for lbl in labels}
    if e != 1:
        raise NonGenericConstraints("a single component cannot carry degree above 1")
    # Degree one: find a skew pair among the three constraints, then the
    # unique point of the third space lying in their joint span.
    for a_lbl, b_lbl, c_lbl in (
        (labels[0], labels[1], labels[2]),
        (labels[0], labels[2], labels[1]),
        (labels[1], labels[2], labels[0]),
    ):
        sa, sb, sc = spaces[a_lbl], spaces[b_lbl], spaces[c_lbl]
        if _intersect(sa, sb).dim != 0:
            continue
        columns = (
            [sc.span.row(i) for i in range(sc.dim)]
            + [tuple(-x for x in sa.span.row(i)) for i in range(sa.dim)]
            + [tuple(-x for x in sb.span.row(i)) for i in range(sb.dim)]
        )
        combos = kernel_basis(Mat.from_columns(columns))
        if combos.nrows != 1:
            raise NonGenericConstraints(
                f"expected a unique incidence solution, found a {combos.nrows}-dimensional family"
            )
        gamma = combos.row(0)
        w = [Fraction(0)] * (d + 1)
        for i in range(sc.dim):
            if gamma[i]:
                row = sc.span.row(i)
                for j in range(d + 1):
                    w[j] += gamma[i] * row[j]
        if all(x == 0 for x in w):
            raise NonGenericConstraints("incidence solution degenerates to zero")
        u, v = _decompose(sa, sb, w)
        matrix = _line_matrix(coords[a_lbl], coords[b_lbl], coords[c_lbl], u, v)
        images = {a_lbl: tuple(u), b_lbl: tuple(v), c_lbl: tuple(w)}
        return {vid: ("line", matrix)}, images
    raise NonGenericConstraints("no skew pair among the three final constraints")


def _recurse(
    verts: Dict[int, List[Tuple[str, Param]]],
    edges: Dict[str, Tuple[int, int]],
    spaces: Dict[str, _Space],
    e: int,
    d: int,
    counter: itertools.count,
):
    if len(verts) == 1:
        (vid, points), = verts.items()
        return _solve_base(vid, points, spaces, e, d)

    def edge_count(points):
        return sum(1 for lbl, _ in points if lbl.startswith("edge:"))

    leaf = min(v for v, pts in verts.items() if edge_count(pts) == 1)
    points = verts[leaf]
    edge_label = next(lbl for lbl, _ in points if lbl.startswith("edge:"))
    eid = edge_label.split(":", 1)[1]
    mark_points = sorted((lbl, t) for lbl, t in points if not lbl.startswith("edge:"))
    (la, ta), (lb, tb) = mark_points
    t_node = next(t for lbl, t in points if lbl == edge_label)
    a_end, b_end = edges[eid]
    neighbor = b_end if a_end == leaf else a_end
    t_attach = next(t for lbl, t in verts[neighbor] if lbl == edge_label)

    space_a, space_b = spaces[la], spaces[lb]
    meet = _intersect(space_a, space_b)

    virtual = f"virt:{next(counter)}"
    new_verts = {v: list(pts) for v, pts in verts.items() if v != leaf}
    new_verts[neighbor] = [
        (virtual, t) if lbl == edge_label else (lbl, t) for lbl, t in new_verts[neighbor]
    ]
    new_edges = {k: v for k, v in edges.items() if k != eid}

    if meet.dim > 0:
        expected = (d + 1) - space_a.codim - space_b.codim
        if meet.dim != expected:
            raise NonGenericConstraints(
                f"constraints for marks {la} and {lb} meet in dimension {meet.dim}, "
                f"generic is {max(expected, 0)}"
            )
        new_spaces = dict(spaces)
        new_spaces[virtual] = meet
        vertex_maps, images = _recurse(new_verts, new_edges, new_spaces, e, d, counter)
        z = images[virtual]
        vertex_maps[leaf] = ("point", z)
        images[la] = z
        images[lb] = z
        return vertex_maps, images

    if e == 0:
        raise NonGenericConstraints("skew constraints encountered with no degree left")
    union = _sum_space(space_a, space_b)
    new_spaces = dict(spaces)
    new_spaces[virtual] = union
    vertex_maps, images = _recurse(new_verts, new_edges, new_spaces, e - 1, d, counter)
    w = images[virtual]
    u, v = _decompose(space_a, space_b, w)
    vertex_maps[leaf] = ("line", _line_matrix(ta, tb, t_node, u, v))
    images[la] = u
    images[lb] = v
    return vertex_maps, images


@dataclass(frozen=True)
class PiecewiseMap:
    """A map to P^d that is constant or linear on each component.

    `contractions` sends component indices to image points; `linear_parts`
    sends the degree-one components to (d+1) x 2 matrices acting on the
    homogeneous parameter (s, t).  `mark_images` records the image of every
    mark, and the total degree is the number of linear components.
    """

    contractions: Dict[int, Tuple[Fraction, ...]]
    linear_parts: Dict[int, Mat]
    mark_images: Dict[int, Tuple[Fraction, ...]]

    @property
    def degree(self) -> int:
        return len(self.linear_parts)

    def image_at(self, vertex: int, t: Param) -> Tuple[Fraction, ...]:
        if vertex in self.contractions:
            return self.contractions[vertex]
        return _eval_line(self.linear_parts[vertex], t)


def degree_map_solve(
    tree: StableTree,
    e: int,
    constraints: Sequence[SubspaceConstraint],
) -> List[PiecewiseMap]:
    """All degree-e maps from a maximally degenerate tree to P^d, linear on
    components, taking each mark into its constraint subspace.

    Requires every component to carry exactly three special points and the
    constraint codimensions to sum to (d+1)(e+1) - 1 with e <= d.  For
    generic constraints the returned list has exactly one entry; degenerate
    intersections raise NonGenericConstraints.
    """
    if not tree.is_maximally_degenerate():
        raise ValueError("every component must have exactly 3 special points")
    n = tree.n
    indices = sorted(c.index for c in constraints)
    if indices != list(range(1, n + 1)):
        raise ValueError("need exactly one constraint per mark 1..n")
    d = constraints[0].span.ncols - 1
    if any(c.span.ncols != d + 1 for c in constraints):
        raise ValueError("constraints live in different ambient spaces")
    if not 0 <= e <= d:
        raise ValueError(f"need 0 <= e <= d, got e={e}, d={d}")
    total_codim = sum(c.codim for c in constraints)
    expected = (d + 1) * (e + 1) - 1
    if total_codim != expected:
        raise ValueError(
            f"constraint codimensions sum to {total_codim}, must be (d+1)(e+1)-1 = {expected}"
        )

    spaces = {f"mark:{c.index}": _Space(c.span) for c in constraints}
    verts: Dict[int, List[Tuple[str, Param]]] = {
        v: [(p.label, p.coord) for p in pts] for v, pts in enumerate(tree.vertices)
    }
    edges = {eid: (a, b) for eid, a, b in tree.edges}
    vertex_maps, images = _recurse(verts, edges, spaces, e, d, itertools.count())

    contractions: Dict[int, Tuple[Fraction, ...]] = {}
    linear_parts: Dict[int, Mat] = {}
    for v, (kind, data) in vertex_maps.items():
        if kind == "point":
            contractions[v] = tuple(data)
        else:
            linear_parts[v] = data
    mark_images = {
        i: tuple(images[f"mark:{i}"]) for i in range(1, n + 1)
    }
    result = PiecewiseMap(contractions, linear_parts, mark_images)

    # Exact self-verification: incidences and node agreement.
    for c in constraints:
        space = _Space(c.span)
        if not space.contains(result.mark_images[c.index]):
            raise NonGenericConstraints(
                f"constructed map violates the constraint at mark {c.index}"
            )
    for eid, a, b in tree.edges:
        pa = result.image_at(a, tree.edge_coord(eid, a))
        pb = result.image_at(b, tree.edge_coord(eid, b))
        if not _proportional(pa, pb):
            raise NonGenericConstraints(f"components disagree at node {eid}")
    if result.degree != e:
        raise NonGenericConstraints(
            f"constructed map has degree {result.degree}, expected {e}"
        )
    return [result]


def _proportional(u: Sequence[Fraction], v: Sequence[Fraction]) -> bool:
    iu = next((i for i, x in enumerate(u) if x != 0), None)
    iv = next((i for i, x in enumerate(v) if x != 0), None)
    if iu is None or iv is None:
        return False
    if iu != iv:
        return False
    return all(x * v[iu] == y * u[iu] for x, y in zip(u, v))
