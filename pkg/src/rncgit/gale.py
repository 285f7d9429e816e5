"""The Gale transform on point configurations and its curve-duality witnesses.

The transform sends an n-point configuration in P^d to one in P^{n-d-2} by
taking the orthogonal complement (kernel) of its coordinate matrix; it is
involutive up to projectivity and column scaling.  For points on a rational
normal curve the dual is certified independently through the classical
interpolation weights lambda_i = 1 / prod_{j != i} (t_i - t_j), whose power
sums vanish up to exponent n-2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .configs import Configuration, on_rnc, proj_equivalent, veronese_config, veronese_point
from .exactlin import Mat, kernel_basis, rank
from .gitstab import Linearization
from .scalars import format_rational

__all__ = [
    "RankDeficient",
    "DegenerateDual",
    "GoppaWeights",
    "gale_transform",
    "goppa_weights",
    "goppa_witness",
    "self_association_matrix",
    "gale_involution_check",
    "dual_linearization",
]


class RankDeficient(ValueError):
    """Configuration matrix does not have full row rank."""


class DegenerateDual(ValueError):
    """Some dual point would be the zero vector."""


def gale_transform(config: Configuration) -> Configuration:
    """The dual configuration in P^{n-d-2} whose matrix rows span the kernel
    of the input's coordinate matrix."""
    d, n = config.d, config.n
    if n < d + 3:
        raise ValueError(f"need n >= d+3 = {d + 3} points")
    if rank(config.matrix) < d + 1:
        raise RankDeficient("configuration matrix must have full rank d+1")
    dual_matrix = kernel_basis(config.matrix)
    for j in range(n):
        if all(dual_matrix.rows[i][j] == 0 for i in range(dual_matrix.nrows)):
            raise DegenerateDual(f"dual point {j + 1} is undefined (zero kernel column)")
    return Configuration(n - d - 2, n, dual_matrix)


@dataclass(frozen=True)
class GoppaWeights:
    """Interpolation weights for distinct parameters: lambda_i is the
    reciprocal of prod_{j != i} (t_i - t_j).  On construction the vanishing
    of the power sums sum_i lambda_i t_i^p for 0 <= p <= n-2 is verified."""

    ts: Tuple[Fraction, ...]
    lambdas: Tuple[Fraction, ...]

    def __post_init__(self):
        n = len(self.ts)
        power = list(self.lambdas)
        for p in range(n - 1):
            if sum(power, Fraction(0)) != 0:
                raise AssertionError(f"power sum at exponent {p} does not vanish")
            power = [w * t for w, t in zip(power, self.ts)]

    def to_json(self) -> dict:
        return {
            "ts": [format_rational(t) for t in self.ts],
            "lambdas": [format_rational(w) for w in self.lambdas],
        }


def goppa_weights(ts: Sequence[Fraction]) -> GoppaWeights:
    params = tuple(Fraction(t) for t in ts)
    if len(set(params)) != len(params):
        raise ValueError("parameters must be pairwise distinct")
    if len(params) < 2:
        raise ValueError("need at least two parameters")
    lambdas = []
    for i, ti in enumerate(params):
        prod = Fraction(1)
        for j, tj in enumerate(params):
            if j != i:
                prod *= ti - tj
        lambdas.append(1 / prod)
    return GoppaWeights(params, tuple(lambdas))


def goppa_witness(
    ts: Sequence[Fraction], d: int
) -> Tuple[Configuration, Configuration, bool]:
    """Configuration on the degree-d curve, its weighted dual on the degree
    n-d-2 curve, and an exactness flag.

    The flag requires M G^T = 0 exactly, agreement of the weighted dual with
    the kernel-basis dual up to projectivity and column scaling, and that the
    dual itself lies on a rational normal curve.
    """
    n = len(ts)
    if n < d + 3:
        raise ValueError(f"need at least d+3 = {d + 3} parameters")
    weights = goppa_weights(ts)
    source = veronese_config(d, weights.ts)
    dual_dim = n - d - 2
    columns = []
    for w, t in zip(weights.lambdas, weights.ts):
        point = veronese_point(dual_dim, t).coords
        columns.append([w * x for x in point])
    weighted_dual = Configuration(dual_dim, n, Mat.from_columns(columns))
    product = source.matrix @ weighted_dual.matrix.transpose()
    ok = product.is_zero()
    ok = ok and proj_equivalent(weighted_dual, gale_transform(source))
    ok = ok and on_rnc(weighted_dual)
    return source, weighted_dual, ok


def self_association_matrix(ts: Sequence[Fraction]) -> Mat:
    """The m x m symmetric matrix sum_i lambda_i v(t_i) v(t_i)^T for 2m
    parameters and the degree m-1 power map; the zero matrix certifies that
    the configuration is its own Gale dual up to the column scales lambda_i."""
    n = len(ts)
    if n < 2 or n % 2 != 0:
        raise ValueError("need an even number (at least 2) of parameters")
    m = n // 2
    weights = goppa_weights(ts)
    rows = [[Fraction(0)] * m for _ in range(m)]
    for w, t in zip(weights.lambdas, weights.ts):
        point = veronese_point(m - 1, t).coords if m > 1 else (Fraction(1),)
        for a in range(m):
            for b in range(m):
                rows[a][b] += w * point[a] * point[b]
    return Mat(rows, ncols=m)


def gale_involution_check(config: Configuration) -> bool:
    """Applying the transform twice returns the input up to projectivity and
    column scaling."""
    return proj_equivalent(gale_transform(gale_transform(config)), config)


def dual_linearization(lin: Linearization) -> Linearization:
    """The hypersimplex identification pairing dual quotients: weights map to
    1 - x_i, which sum to (n-d-2)+1.  Defined only when every x_i < 1."""
    dual_weights = tuple(1 - x for x in lin.x)
    return Linearization(lin.n - lin.d - 2, lin.n, dual_weights)
