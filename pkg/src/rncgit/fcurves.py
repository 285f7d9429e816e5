"""F-curve combinatorics and the intersection formula for the conformal-blocks
line bundles on the moduli space of stable n-pointed rational curves.

A four-block partition of the marks determines a one-dimensional boundary
class; only the block sizes matter for the symmetric theory.  The level-one
bundle indexed by k pairs with such a curve through a closed-form residue
computation, and the contraction test has an exact floor/ceil criterion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, List, NamedTuple, Optional, Sequence, Tuple

__all__ = [
    "FPartition",
    "CertificateKind",
    "ContractionCertificate",
    "Residues",
    "enumerate_sym_fcurves",
    "residue_vector",
    "fakhruddin_degree",
    "cont2_predicate",
    "dk_symmetry_check",
]

SymPartition = Tuple[int, int, int, int]


@dataclass(frozen=True)
class FPartition:
    """A partition of the marks {1, ..., n} into four nonempty blocks."""

    blocks: Tuple[FrozenSet[int], ...]

    def __post_init__(self):
        if len(self.blocks) != 4:
            raise ValueError("need exactly four blocks")
        if any(not b for b in self.blocks):
            raise ValueError("blocks must be nonempty")
        union = set()
        total = 0
        for b in self.blocks:
            union |= b
            total += len(b)
        n = total
        if len(union) != total or union != set(range(1, n + 1)):
            raise ValueError("blocks must partition {1, ..., n}")

    @classmethod
    def of(cls, *blocks: Sequence[int]) -> "FPartition":
        return cls(tuple(frozenset(b) for b in blocks))

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    def sizes(self) -> SymPartition:
        a, b, c, d = sorted(len(x) for x in self.blocks)
        return (a, b, c, d)


class CertificateKind(Enum):
    ALPHA = "alpha-family"
    BETA = "beta-family"
    GENERAL = "general"


@dataclass(frozen=True)
class ContractionCertificate:
    """Witness that a boundary curve is contracted.

    Alpha certificates sum to the total curve degree; beta certificates have
    all entries positive and sum to the degree plus two.
    """

    kind: CertificateKind
    vector: Tuple[int, int, int, int]

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "vector": list(self.vector)}


class Residues(NamedTuple):
    nu: Tuple[int, int, int, int]
    nu_max: int
    nu_min: int


def _check_sizes(n: int, sizes: Sequence[int]) -> SymPartition:
    t = tuple(sizes)
    if len(t) != 4:
        raise ValueError("need four block sizes")
    if any(s < 1 for s in t):
        raise ValueError("block sizes must be positive")
    if list(t) != sorted(t):
        raise ValueError("block sizes must be sorted ascending")
    if sum(t) != n:
        raise ValueError(f"block sizes must sum to n = {n}")
    return t  # type: ignore[return-value]


def enumerate_sym_fcurves(n: int) -> List[SymPartition]:
    """All sorted four-part positive partitions of n, in lexicographic order."""
    if n < 4:
        raise ValueError("need n >= 4")
    out = []
    for a in range(1, n // 4 + 1):
        for b in range(a, (n - a) // 3 + 1):
            for c in range(b, (n - a - b) // 2 + 1):
                d = n - a - b - c
                if d >= c:
                    out.append((a, b, c, d))
    return out


def residue_vector(n: int, k: int, sizes: Sequence[int]) -> Residues:
    """The residues k*n_j mod n together with their extremes."""
    nu = tuple((k * s) % n for s in sizes)
    return Residues(nu, max(nu), min(nu))  # type: ignore[arg-type]


def fakhruddin_degree(n: int, k: int, sizes: Sequence[int]) -> int:
    """Intersection degree of the level-one bundle D_k with a symmetric
    boundary curve of the given leg sizes.

    With nu_j = k*n_j mod n: the degree is nu_min when the residues sum to 2n
    and nu_max + nu_min <= n; it is n - nu_max when they sum to 2n and
    nu_max + nu_min >= n; and 0 otherwise.  The two branches agree on the
    overlap.
    """
    if not 2 <= k <= n - 2:
        raise ValueError(f"need 2 <= k <= n-2, got k={k}, n={n}")
    t = _check_sizes(n, sizes)
    nu, nu_max, nu_min = residue_vector(n, k, t)
    if sum(nu) != 2 * n:
        return 0
    if nu_max + nu_min <= n:
        return nu_min
    return n - nu_max


def _lex_smallest_sorted(lo: Sequence[int], hi: Sequence[int], total: int) -> Optional[Tuple[int, ...]]:
    """Lexicographically smallest ascending 4-tuple v with lo_j <= v_j <= hi_j
    and sum(v) = total, or None."""
    for v1 in range(lo[0], hi[0] + 1):
        for v2 in range(max(v1, lo[1]), hi[1] + 1):
            for v3 in range(max(v2, lo[2]), hi[2] + 1):
                v4 = total - v1 - v2 - v3
                if v4 < max(v3, lo[3]):
                    continue
                if v4 > hi[3]:
                    continue
                return (v1, v2, v3, v4)
    return None


def cont2_predicate(n: int, k: int, sizes: Sequence[int]) -> Optional[ContractionCertificate]:
    """Contraction certificate for the level-k bundle on a symmetric curve.

    An alpha certificate (sum k-1, leg sizes n_j >= n*alpha_j/k) exists iff
    sum floor(n_j*k/n) >= k-1; a beta certificate (entries >= 1, sum k+1,
    n_j <= n*beta_j/k) exists iff sum ceil(n_j*k/n) <= k+1.  When both
    families exist the beta one is returned; within a family the vector is
    the lexicographically smallest valid one.
    """
    if not 2 <= k <= n - 2:
        raise ValueError(f"need 2 <= k <= n-2, got k={k}, n={n}")
    t = _check_sizes(n, sizes)
    ceils = [-((-s * k) // n) for s in t]
    if sum(ceils) <= k + 1:
        vec = _lex_smallest_sorted(ceils, [k + 1] * 4, k + 1)
        assert vec is not None
        return ContractionCertificate(CertificateKind.BETA, vec)
    floors = [(s * k) // n for s in t]
    if sum(floors) >= k - 1:
        vec = _lex_smallest_sorted([0, 0, 0, 0], floors, k - 1)
        assert vec is not None
        return ContractionCertificate(CertificateKind.ALPHA, vec)
    return None


def dk_symmetry_check(n: int) -> bool:
    """Exhaustively verify the level symmetry D_k = D_{n-k} on every
    symmetric boundary curve."""
    if n < 4:
        raise ValueError("need n >= 4")
    partitions = enumerate_sym_fcurves(n)
    for k in range(2, n - 1):
        for sizes in partitions:
            if fakhruddin_degree(n, k, sizes) != fakhruddin_degree(n, n - k, sizes):
                return False
    return True
