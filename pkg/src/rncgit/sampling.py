"""Seeded random generators for property-style drivers.

Everything is driven by an explicit random.Random instance so identical seeds
reproduce identical objects byte for byte.
"""

from __future__ import annotations

import heapq
import random
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .configs import Configuration, _find_frame
from .exactlin import Mat, rank
from .gitstab import Linearization, walls
from .scalars import INF, Infinity, Param
from .trees import StableTree, SubspaceConstraint, TreePoint

__all__ = [
    "random_rational",
    "distinct_rationals",
    "random_configuration",
    "random_linearization",
    "random_stable_tree",
    "random_max_degenerate_tree",
    "random_degree_partition",
    "random_aux",
    "random_subspace",
    "random_codim_vector",
    "random_constraints",
]


def random_rational(rng: random.Random, lo: int = -9, hi: int = 9, max_den: int = 4) -> Fraction:
    den = rng.randint(1, max_den)
    num = rng.randint(lo * den, hi * den)
    return Fraction(num, den)


def distinct_rationals(rng: random.Random, count: int, lo: int = -20, hi: int = 20) -> List[Fraction]:
    seen = set()
    out: List[Fraction] = []
    while len(out) < count:
        q = random_rational(rng, lo, hi)
        if q not in seen:
            seen.add(q)
            out.append(q)
    return out


def random_configuration(rng: random.Random, d: int, n: int, tries: int = 200) -> Configuration:
    """A full-rank configuration with a projective frame among its columns."""
    for _ in range(tries):
        mat = Mat([[rng.randint(-9, 9) for _ in range(n)] for _ in range(d + 1)])
        if any(all(mat.rows[i][j] == 0 for i in range(d + 1)) for j in range(n)):
            continue
        if rank(mat) < d + 1:
            continue
        config = Configuration(d, n, mat)
        if n >= d + 2 and _find_frame(config) is None:
            continue
        return config
    raise RuntimeError("failed to sample a general-position configuration")


def random_linearization(
    rng: random.Random, d: int, n: int, off_walls: bool = True, tries: int = 500
) -> Linearization:
    """A hypersimplex weight vector, by default avoiding every wall.

    Draws are blended exactly toward the uniform vector when a coordinate
    exceeds 1, so thin corners of the hypersimplex (d+1 close to n) still
    sample quickly.
    """
    uniform = Fraction(d + 1, n)
    for _ in range(tries):
        raw = [Fraction(rng.randint(1, 50)) for _ in range(n)]
        total = sum(raw, Fraction(0))
        weights = [x * (d + 1) / total for x in raw]
        top = max(weights)
        if top > 1:
            # convex blend with the uniform point keeps the sum at d+1
            lam = (1 - uniform) / (top - uniform) * Fraction(9, 10)
            weights = [lam * x + (1 - lam) * uniform for x in weights]
        lin = Linearization(d, n, tuple(weights))
        if off_walls and walls(lin):
            continue
        return lin
    raise RuntimeError("failed to sample a linearization")


def _random_tree_shape(rng: random.Random, r: int, max_degree: Optional[int] = None, tries: int = 300):
    """Random labelled tree on r vertices as an edge list, optionally with a
    degree cap."""
    for _ in range(tries):
        if r == 1:
            return []
        if r == 2:
            edges = [(0, 1)]
        else:
            prufer = [rng.randrange(r) for _ in range(r - 2)]
            degree = [1] * r
            for v in prufer:
                degree[v] += 1
            leaves = [v for v in range(r) if degree[v] == 1]
            heapq.heapify(leaves)
            edges = []
            for v in prufer:
                leaf = heapq.heappop(leaves)
                edges.append((leaf, v))
                degree[v] -= 1
                if degree[v] == 1:
                    heapq.heappush(leaves, v)
            edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
        if max_degree is not None:
            deg = [0] * r
            for a, b in edges:
                deg[a] += 1
                deg[b] += 1
            if any(x > max_degree for x in deg):
                continue
        return edges
    raise RuntimeError("failed to sample a tree shape")


def _assemble_tree(
    rng: random.Random,
    r: int,
    edges: Sequence[Tuple[int, int]],
    marks_per_vertex: Sequence[int],
    allow_inf: bool = False,
) -> StableTree:
    degree = [0] * r
    for a, b in edges:
        degree[a] += 1
        degree[b] += 1
    points_per_vertex: List[List[TreePoint]] = [[] for _ in range(r)]
    coords_used: List[set] = [set() for _ in range(r)]

    def fresh_coord(v: int) -> Param:
        if allow_inf and "inf" not in coords_used[v] and rng.random() < 0.15:
            coords_used[v].add("inf")
            return INF
        while True:
            q = random_rational(rng, -8, 8, max_den=3)
            if q not in coords_used[v]:
                coords_used[v].add(q)
                return q

    edge_list = []
    for idx, (a, b) in enumerate(edges):
        eid = f"e{idx}"
        edge_list.append((eid, a, b))
        points_per_vertex[a].append(TreePoint(f"edge:{eid}", fresh_coord(a)))
        points_per_vertex[b].append(TreePoint(f"edge:{eid}", fresh_coord(b)))
    mark = 1
    assignment = []
    for v in range(r):
        assignment.extend([v] * marks_per_vertex[v])
    rng.shuffle(assignment)
    for v in assignment:
        points_per_vertex[v].append(TreePoint(f"mark:{mark}", fresh_coord(v)))
        mark += 1
    return StableTree(points_per_vertex, edge_list)


def random_stable_tree(
    rng: random.Random, n: int, r: int, allow_inf: bool = False
) -> StableTree:
    """A stable tree with r components and marks 1..n in random positions."""
    if n + 2 * (r - 1) < 3 * r:
        raise ValueError("not enough marks to stabilize that many components")
    edges = _random_tree_shape(rng, r)
    degree = [0] * r
    for a, b in edges:
        degree[a] += 1
        degree[b] += 1
    needed = [max(0, 3 - degree[v]) for v in range(r)]
    spare = n - sum(needed)
    marks = list(needed)
    for _ in range(spare):
        marks[rng.randrange(r)] += 1
    return _assemble_tree(rng, r, edges, marks, allow_inf=allow_inf)


def random_max_degenerate_tree(rng: random.Random, n: int, allow_inf: bool = False) -> StableTree:
    """A stable tree in which every component has exactly three special points."""
    if n < 3:
        raise ValueError("need at least three marks")
    r = n - 2
    edges = _random_tree_shape(rng, r, max_degree=3)
    degree = [0] * r
    for a, b in edges:
        degree[a] += 1
        degree[b] += 1
    marks = [3 - degree[v] for v in range(r)]
    return _assemble_tree(rng, r, edges, marks, allow_inf=allow_inf)


def random_degree_partition(rng: random.Random, r: int, d: int) -> Tuple[int, ...]:
    cuts = sorted(rng.randint(0, d) for _ in range(r - 1))
    parts = []
    prev = 0
    for c in cuts:
        parts.append(c - prev)
        prev = c
    parts.append(d - prev)
    return tuple(parts)


def random_aux(rng: random.Random, tree: StableTree, degrees: Sequence[int]) -> List[List[Fraction]]:
    """A random auxiliary divisor compatible with the degree partition."""
    out: List[List[Fraction]] = []
    for v in range(tree.r):
        special = {t for t in tree.special_coords(v) if not isinstance(t, Infinity)}
        chosen: List[Fraction] = []
        guard = 0
        while len(chosen) < degrees[v]:
            q = random_rational(rng, -15, 15, max_den=3)
            if q not in special and q not in chosen:
                chosen.append(q)
            guard += 1
            if guard > 10000:
                raise RuntimeError("aux sampling stalled")
        out.append(chosen)
    return out


def random_subspace(rng: random.Random, d: int, codim: int, tries: int = 100) -> Mat:
    """Spanning rows of a random subspace of the stated codimension."""
    dim = d + 1 - codim
    if dim < 1:
        raise ValueError("codimension too large")
    for _ in range(tries):
        mat = Mat([[rng.randint(-9, 9) for _ in range(d + 1)] for _ in range(dim)])
        if rank(mat) == dim:
            return mat
    raise RuntimeError("failed to sample a subspace")


def random_codim_vector(rng: random.Random, n: int, d: int, e: int, tries: int = 1000) -> List[int]:
    """n codimensions in 0..d summing to (d+1)(e+1)-1."""
    total = (d + 1) * (e + 1) - 1
    if total > n * d:
        raise ValueError("codimension budget cannot be met")
    for _ in range(tries):
        vec = [0] * n
        remaining = total
        for i in range(n - 1):
            hi = min(d, remaining)
            lo = max(0, remaining - (n - 1 - i) * d)
            vec[i] = rng.randint(lo, hi)
            remaining -= vec[i]
        vec[n - 1] = remaining
        if 0 <= vec[n - 1] <= d:
            rng.shuffle(vec)
            return vec
    raise RuntimeError("failed to sample codimensions")


def random_constraints(
    rng: random.Random, tree: StableTree, d: int, e: int
) -> List[SubspaceConstraint]:
    """One random subspace constraint per mark, with codimensions summing to
    (d+1)(e+1)-1."""
    codims = random_codim_vector(rng, tree.n, d, e)
    return [
        SubspaceConstraint(i + 1, random_subspace(rng, d, codims[i]))
        for i in range(tree.n)
    ]


def solve_maps_with_retries(rng: random.Random, tree: StableTree, d: int, e: int, retries: int = 30):
    """Draw random constraints until the solver accepts them as generic.

    Returns (constraints, maps).  Small integer draws do occasionally produce
    special incidences, which the solver rejects; a bounded number of fresh
    draws is the intended remedy.
    """
    from .trees import NonGenericConstraints, degree_map_solve

    last: Optional[NonGenericConstraints] = None
    for _ in range(retries):
        constraints = random_constraints(rng, tree, d, e)
        try:
            return constraints, degree_map_solve(tree, e, constraints)
        except NonGenericConstraints as exc:
            last = exc
    raise RuntimeError(f"no generic constraint draw after {retries} tries: {last}")
