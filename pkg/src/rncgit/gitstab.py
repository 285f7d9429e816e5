"""Linearizations, the hypersimplex, GIT stability, and contraction predicates.

A linearization assigns a positive rational weight to each of the n points,
normalized so the weights sum to d+1; the space of effective linearizations
is the hypersimplex of weight vectors with 0 < x_i <= 1.  A configuration is
semistable when no proper linear subspace carries more weight than its
projective dimension plus one, and stable when the inequality is always
strict.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .configs import Configuration
from .exactlin import Mat, _rref_rows
from .fcurves import (
    ContractionCertificate,
    CertificateKind,
    FPartition,
    cont2_predicate,
)
from .scalars import format_rational

__all__ = [
    "Linearization",
    "OutOfHypersimplex",
    "DimensionMismatch",
    "Stability",
    "Witness",
    "StabilityVerdict",
    "make_linearization",
    "symmetric_linearization",
    "semistability",
    "walls",
    "cont_predicate",
    "symcont_predicate",
    "hassett_contracted",
]


class OutOfHypersimplex(ValueError):
    """Weight vector violates a hypersimplex constraint; the message names it."""


class DimensionMismatch(ValueError):
    """Configuration and linearization disagree on (d, n)."""


@dataclass(frozen=True)
class Linearization:
    """Weight vector x in the hypersimplex: 0 < x_i <= 1 and sum x_i = d+1."""

    d: int
    n: int
    x: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.d < 1:
            raise OutOfHypersimplex("d must be at least 1")
        if len(self.x) != self.n:
            raise OutOfHypersimplex(f"expected {self.n} weights, got {len(self.x)}")
        for i, xi in enumerate(self.x):
            if xi <= 0:
                raise OutOfHypersimplex(f"x_{i + 1} = {format_rational(xi)} violates x_i > 0")
            if xi > 1:
                raise OutOfHypersimplex(f"x_{i + 1} = {format_rational(xi)} violates max{{x_i}} <= 1")
        total = sum(self.x, Fraction(0))
        if total != self.d + 1:
            raise OutOfHypersimplex(
                f"sum of weights is {format_rational(total)}, must equal d+1 = {self.d + 1}"
            )

    def weight_of(self, indices: Sequence[int]) -> Fraction:
        """Total weight of a set of 0-based point indices."""
        return sum((self.x[i] for i in indices), Fraction(0))

    def to_json(self) -> dict:
        return {"d": self.d, "n": self.n, "x": [format_rational(v) for v in self.x]}


def make_linearization(d: int, n: int, x: Sequence[Fraction]) -> Linearization:
    return Linearization(d, n, tuple(Fraction(v) for v in x))


def symmetric_linearization(d: int, n: int) -> Linearization:
    """The unique permutation-invariant linearization x_i = (d+1)/n."""
    w = Fraction(d + 1, n)
    return Linearization(d, n, tuple([w] * n))


class Stability(Enum):
    STABLE = "stable"
    STRICTLY_SEMISTABLE = "strictly-semistable"
    UNSTABLE = "unstable"


@dataclass(frozen=True)
class Witness:
    """A proper subspace realizing a non-strict inequality.

    `indices` lists (1-based) all points lying in the subspace, `dimension`
    is its projective dimension, and `weight` the total weight it carries.
    """

    indices: Tuple[int, ...]
    dimension: int
    weight: Fraction

    def to_json(self) -> dict:
        return {
            "indices": list(self.indices),
            "dimension": self.dimension,
            "weight": format_rational(self.weight),
        }


@dataclass(frozen=True)
class StabilityVerdict:
    status: Stability
    witness: Optional[Witness]

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "witness": self.witness.to_json() if self.witness else None,
        }


def _members_of_span(reduced_rows, pivots, columns) -> List[int]:
    """Indices of all columns lying in the row space of a reduced matrix."""
    members = []
    for idx, col in enumerate(columns):
        v = list(col)
        for r, pc in zip(reduced_rows, pivots):
            f = v[pc]
            if f:
                for c in range(len(v)):
                    if r[c]:
                        v[c] -= f * r[c]
        if all(x == 0 for x in v):
            members.append(idx)
    return members


def semistability(config: Configuration, lin: Linearization) -> StabilityVerdict:
    """GIT verdict of a weighted configuration.

    Every proper subspace spanned by configuration points is enumerated via
    independent point subsets of size <= d; the weight it carries (over all
    points lying in it, not just the spanning ones) must stay at most its
    projective dimension plus one.  A weight-maximal violating subspace is
    always spanned by the points it contains, so this enumeration decides
    the full quantifier over subspaces.
    """
    if (config.d, config.n) != (lin.d, lin.n):
        raise DimensionMismatch(
            f"configuration is (d={config.d}, n={config.n}) but linearization is "
            f"(d={lin.d}, n={lin.n})"
        )
    d, n = config.d, config.n
    columns = [config.column(i) for i in range(n)]
    equality_witness: Optional[Witness] = None
    seen_spans = set()
    for size in range(1, min(d, n) + 1):
        for subset in itertools.combinations(range(n), size):
            reduced, pivots = _rref_rows([columns[i] for i in subset], d + 1)
            if len(pivots) < size:
                continue  # dependent: same span already visited at lower size
            reduced = reduced[: len(pivots)]
            signature = tuple(tuple(row) for row in reduced)
            if signature in seen_spans:
                continue
            seen_spans.add(signature)
            members = _members_of_span(reduced, pivots, columns)
            weight = lin.weight_of(members)
            dim = size - 1
            if weight > dim + 1:
                witness = Witness(tuple(i + 1 for i in members), dim, weight)
                return StabilityVerdict(Stability.UNSTABLE, witness)
            if weight == dim + 1 and equality_witness is None:
                equality_witness = Witness(tuple(i + 1 for i in members), dim, weight)
    if equality_witness is not None:
        return StabilityVerdict(Stability.STRICTLY_SEMISTABLE, equality_witness)
    return StabilityVerdict(Stability.STABLE, None)


def walls(lin: Linearization) -> List[Tuple[Tuple[int, ...], int]]:
    """All pairs (I, k) of a proper nonempty subset and 1 <= k <= d with
    the weights over I summing exactly to k.  Empty output means the
    linearization sits in the interior of a chamber.

    Subsets are reported 1-based, ordered by size then lexicographically.
    """
    result: List[Tuple[Tuple[int, ...], int]] = []
    n, d = lin.n, lin.d
    for size in range(1, n):
        for subset in itertools.combinations(range(n), size):
            total = lin.weight_of(subset)
            if total.denominator == 1 and 1 <= total <= d:
                result.append((tuple(i + 1 for i in subset), int(total)))
    return result


def cont_predicate(lin: Linearization, partition: FPartition) -> Optional[ContractionCertificate]:
    """Certificate that the four-leg boundary curve is contracted for `lin`.

    Integers alpha_j >= 0 with sum d and leg weight >= alpha_j exist exactly
    when the block-weight floors sum to at least d; the returned vector is
    the lexicographically smallest valid one.
    """
    if partition.n != lin.n:
        raise DimensionMismatch("partition and linearization disagree on n")
    d = lin.d
    weights = [lin.weight_of([i - 1 for i in block]) for block in partition.blocks]
    floors = [int(w) for w in weights]  # int() truncates toward zero; weights > 0
    if sum(floors) < d:
        return None
    alpha = []
    assigned = 0
    for j in range(4):
        tail_capacity = sum(floors[j + 1 :])
        aj = max(0, d - assigned - tail_capacity)
        alpha.append(aj)
        assigned += aj
    assert assigned == d and all(a <= f for a, f in zip(alpha, floors))
    return ContractionCertificate(CertificateKind.ALPHA, tuple(alpha))


def symcont_predicate(n: int, d: int, sizes: Sequence[int]) -> Optional[ContractionCertificate]:
    """Symmetric-linearization contraction test on leg sizes n_1 <= ... <= n_4.

    With all weights equal to (d+1)/n the alpha family exists iff
    sum floor(n_j (d+1)/n) >= d, and the beta family iff
    sum ceil(n_j (d+1)/n) <= d+2.  The bounds agree with the conformal-blocks
    contraction test at level k = d+1, so this delegates to it.
    """
    if not 1 <= d <= n - 3:
        raise ValueError(f"need 1 <= d <= n-3, got d={d}, n={n}")
    return cont2_predicate(n, d + 1, sizes)


def hassett_contracted(lin: Linearization, partition: FPartition) -> bool:
    """True when the weighted-pointed-curve contraction collapses this curve:
    after moving the weight-maximal block last, the other three blocks carry
    total weight at most 1."""
    if partition.n != lin.n:
        raise DimensionMismatch("partition and linearization disagree on n")
    weights = sorted(lin.weight_of([i - 1 for i in block]) for block in partition.blocks)
    return weights[0] + weights[1] + weights[2] <= 1
