"""Intersection tables of the level bundles against symmetric boundary curves,
the contracted-curve families, and the machine check that the GIT polarization
rays match the conformal-blocks rays.

The symmetric curve class of a four-leg partition is recorded as its vector of
degrees against D_k for k = 2..floor(n/2); that space has dimension
rho = floor(n/2) - 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exactlin import Mat, rank
from .fcurves import SymPartition, cont2_predicate, enumerate_sym_fcurves, fakhruddin_degree

__all__ = [
    "DivisibilityViolated",
    "AgssFamily",
    "TheoremReport",
    "rho",
    "sym_curve_vector",
    "intersection_matrix",
    "contracted_set",
    "agss_family",
    "verify_theorem_cb",
]


class DivisibilityViolated(ValueError):
    """The contracted-family recipe needs (d+1) to divide n."""


def rho(n: int) -> int:
    """Dimension of the symmetric curve-class space: floor(n/2) - 1."""
    return n // 2 - 1


def sym_curve_vector(n: int, sizes: SymPartition) -> Tuple[int, ...]:
    """Degrees (D_k . F) for k = 2..floor(n/2); length rho."""
    return tuple(fakhruddin_degree(n, k, sizes) for k in range(2, n // 2 + 1))


def intersection_matrix(n: int) -> Tuple[List[SymPartition], List[List[int]]]:
    """Rows indexed by k = 2..floor(n/2), columns by the symmetric curves in
    lexicographic order; entry (k, F) is the intersection degree."""
    if n < 4:
        raise ValueError("need n >= 4")
    partitions = enumerate_sym_fcurves(n)
    rows = [
        [fakhruddin_degree(n, k, sizes) for sizes in partitions]
        for k in range(2, n // 2 + 1)
    ]
    return partitions, rows


def contracted_set(n: int, k: int) -> List[SymPartition]:
    """Symmetric curves with zero intersection against the level-k bundle."""
    return [sizes for sizes in enumerate_sym_fcurves(n) if fakhruddin_degree(n, k, sizes) == 0]


def _leg_curve(n: int, a: int, b: int, c: int) -> Optional[SymPartition]:
    """Sorted sizes of the partition (a, b, c, n-a-b-c), or None when the
    fourth block would be empty."""
    rest = n - a - b - c
    if rest < 1:
        return None
    x, y, z, w = sorted((a, b, c, rest))
    return (x, y, z, w)


@dataclass(frozen=True)
class AgssFamily:
    """The rho - 1 independent contracted curves exhibited for the divisible
    case q = n/(d+1).

    Curves with two singleton legs F_{i,1,1} are taken at indices i with
    q not dividing i+1 (these satisfy the floor criterion); the two-q-leg
    curves F_{i,q,q} fill in the complementary indices (they satisfy the
    ceil criterion), with the last one dropped.
    """

    n: int
    d: int
    q: int
    curves: Tuple[SymPartition, ...]


def agss_family(n: int, d: int) -> AgssFamily:
    if n < 4 or d < 1:
        raise ValueError(f"need n >= 4 and d >= 1, got d={d}, n={n}")
    if n % (d + 1) != 0:
        raise DivisibilityViolated(f"(d+1) = {d + 1} does not divide n = {n}")
    if d > rho(n):
        raise ValueError(f"need d <= floor(n/2)-1, got d={d}, n={n}")
    q = n // (d + 1)
    singleton_curves: List[SymPartition] = []
    two_q_indexed: List[Tuple[int, Optional[SymPartition]]] = []
    for i in range(1, rho(n) + 1):
        if (i + 1) % q != 0:
            curve = _leg_curve(n, i, 1, 1)
            assert curve is not None
            singleton_curves.append(curve)
        else:
            two_q_indexed.append((i, _leg_curve(n, i, q, q)))
    # The last two-q-leg curve (largest index) is dropped; if its fourth block
    # would be empty it never was a curve, and the removal is vacuous.
    two_q_curves: List[SymPartition] = []
    if two_q_indexed:
        for i, curve in two_q_indexed[:-1]:
            assert curve is not None, f"non-final two-q curve at i={i} is invalid"
            two_q_curves.append(curve)
    curves = tuple(singleton_curves + two_q_curves)
    if len(set(curves)) != len(curves):
        raise AssertionError("family contains a repeated curve class")
    if len(curves) != rho(n) - 1:
        raise AssertionError(
            f"family has {len(curves)} curves, expected rho-1 = {rho(n) - 1}"
        )
    return AgssFamily(n, d, q, curves)


def _vectors_rank(n: int, curves: Sequence[SymPartition]) -> int:
    if not curves:
        return 0
    return rank(Mat([list(sym_curve_vector(n, c)) for c in curves], ncols=rho(n)))


def _greedy_full_rank_curves(n: int) -> List[SymPartition]:
    """A deterministic choice of curves whose degree vectors reach full rank."""
    target = rho(n)
    chosen: List[SymPartition] = []
    current = 0
    for sizes in enumerate_sym_fcurves(n):
        candidate = chosen + [sizes]
        r = _vectors_rank(n, candidate)
        if r > current:
            chosen = candidate
            current = r
            if current == target:
                break
    return chosen


@dataclass(frozen=True)
class TheoremReport:
    """Outcome of the ray-matching consistency check for one (n, d).

    Failed clauses are falsifications recorded in the report, not exceptions.
    Clauses tied to the divisible-case family are None when (d+1) does not
    divide n.
    """

    n: int
    d: int
    rho: int
    contracted_matches_predicate: bool
    family_curves: Optional[Tuple[SymPartition, ...]]
    family_contained: Optional[bool]
    family_rank: Optional[int]
    family_rank_expected: Optional[int]
    full_rank_curves: Tuple[SymPartition, ...]
    full_rank_achieved: int

    @property
    def passed(self) -> bool:
        clauses = [self.contracted_matches_predicate, self.full_rank_achieved == self.rho]
        if self.family_contained is not None:
            clauses.append(self.family_contained)
        if self.family_rank is not None:
            clauses.append(self.family_rank == self.family_rank_expected)
        return all(clauses)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "rho": self.rho,
            "contracted_matches_predicate": self.contracted_matches_predicate,
            "family_curves": [list(c) for c in self.family_curves] if self.family_curves is not None else None,
            "family_contained": self.family_contained,
            "family_rank": self.family_rank,
            "family_rank_expected": self.family_rank_expected,
            "full_rank_curves": [list(c) for c in self.full_rank_curves],
            "full_rank_achieved": self.full_rank_achieved,
            "passed": self.passed,
        }


def verify_theorem_cb(n: int, d: int) -> TheoremReport:
    """Consistency report for one (n, d):

    (a) the zero set of the level-(d+1) degree formula equals the symmetric
        contraction predicate's set, exactly;
    (b) in the divisible case, every family curve lies in both sets;
    (c) in the divisible case, the family's degree vectors have rank rho-1;
    (d) some rho curves achieve the full rank rho, certifying that the degree
        vectors are a faithful coordinate system.
    """
    if not 1 <= d <= rho(n):
        raise ValueError(f"need 1 <= d <= floor(n/2)-1, got d={d}, n={n}")
    k = d + 1
    contracted = set(contracted_set(n, k))
    predicate = {
        sizes for sizes in enumerate_sym_fcurves(n) if cont2_predicate(n, k, sizes) is not None
    }
    clause_a = contracted == predicate

    family_curves = None
    family_contained = None
    family_rank = None
    family_rank_expected = None
    if n % (d + 1) == 0:
        family = agss_family(n, d)
        family_curves = family.curves
        family_contained = all(c in contracted and c in predicate for c in family.curves)
        family_rank = _vectors_rank(n, family.curves)
        family_rank_expected = rho(n) - 1

    full_rank_curves = _greedy_full_rank_curves(n)
    full_rank_achieved = _vectors_rank(n, full_rank_curves)

    return TheoremReport(
        n=n,
        d=d,
        rho=rho(n),
        contracted_matches_predicate=clause_a,
        family_curves=family_curves,
        family_contained=family_contained,
        family_rank=family_rank,
        family_rank_expected=family_rank_expected,
        full_rank_curves=tuple(full_rank_curves),
        full_rank_achieved=full_rank_achieved,
    )
