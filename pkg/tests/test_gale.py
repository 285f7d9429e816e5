import random
from fractions import Fraction as F

import pytest

from rncgit.configs import Configuration, on_rnc, proj_equivalent, veronese_config
from rncgit.exactlin import Mat, rank
from rncgit.gale import (
    DegenerateDual,
    RankDeficient,
    dual_linearization,
    gale_involution_check,
    gale_transform,
    goppa_weights,
    goppa_witness,
    self_association_matrix,
)
from rncgit.gitstab import Linearization, make_linearization
from rncgit.sampling import distinct_rationals, random_configuration


def test_gale_transform_orthogonal():
    m = veronese_config(1, [F(0), F(1), F(2), F(3)])
    g = gale_transform(m)
    assert g.d == 1 and g.n == 4
    assert (m.matrix @ g.matrix.transpose()).is_zero()
    assert rank(g.matrix) == 2


def test_gale_transform_rejects_rank_deficient():
    cols = [[F(1), F(0), F(0)], [F(0), F(1), F(0)], [F(1), F(1), F(0)], [F(1), F(2), F(0)], [F(1), F(3), F(0)], [F(2), F(3), F(0)]]
    with pytest.raises((RankDeficient, ValueError)):
        gale_transform(Configuration.from_columns(cols))


def test_gale_involution_veronese():
    for d, params in [(1, [F(0), F(1), F(2), F(3)]), (2, [F(0), F(1), F(2), F(3), F(5), F(-1)])]:
        assert gale_involution_check(veronese_config(d, params))


def test_gale_involution_random_configurations():
    rng = random.Random(71)
    for _ in range(25):
        n = rng.randint(4, 10)
        d = rng.randint(1, n - 3)
        config = random_configuration(rng, d, n)
        try:
            assert gale_involution_check(config)
        except DegenerateDual:
            continue  # dual point undefined for this draw; not an involution failure


def test_gale_of_veronese_lies_on_curve():
    config = veronese_config(2, [F(0), F(1), F(2), F(3), F(4), F(5), F(7)])
    dual = gale_transform(config)
    assert on_rnc(dual)


def test_gale_column_permutation_equivariance():
    rng = random.Random(13)
    config = veronese_config(2, [F(0), F(1), F(2), F(3), F(5), F(-2), F(9)])
    perm = list(range(config.n))
    rng.shuffle(perm)
    permuted = Configuration.from_columns([config.column(i) for i in perm])
    g_direct = gale_transform(permuted)
    g_permuted = Configuration.from_columns([gale_transform(config).column(i) for i in perm])
    assert proj_equivalent(g_direct, g_permuted)


def test_goppa_weights_example():
    w = goppa_weights([F(0), F(1), F(2), F(3)])
    assert w.lambdas == (F(-1, 6), F(1, 2), F(-1, 2), F(1, 6))


def test_goppa_weights_power_sums_vanish():
    ts = [F(0), F(1), F(-1), F(1, 2), F(3)]
    w = goppa_weights(ts)
    for p in range(len(ts) - 1):
        assert sum(l * t**p for l, t in zip(w.lambdas, w.ts)) == 0


def test_goppa_witness_example():
    source, dual, ok = goppa_witness([F(0), F(1), F(2), F(3)], 1)
    assert ok
    assert (source.matrix @ dual.matrix.transpose()).is_zero()


def test_goppa_witness_boundary_dimension():
    # d = n-3 puts the dual on a line
    ts = [F(0), F(1), F(2), F(3), F(5), F(8)]
    source, dual, ok = goppa_witness(ts, 3)
    assert dual.d == 1 and ok


def test_goppa_witness_random():
    rng = random.Random(37)
    for _ in range(20):
        n = rng.randint(4, 10)
        d = rng.randint(1, n - 3)
        ts = distinct_rationals(rng, n)
        _, _, ok = goppa_witness(ts, d)
        assert ok


def test_self_association_examples():
    assert self_association_matrix([F(0), F(1), F(2), F(3)]).is_zero()
    assert self_association_matrix([F(k) for k in range(6)]).is_zero()
    m1 = self_association_matrix([F(0), F(1)])
    assert m1.nrows == 1 and m1.is_zero()


def test_self_association_random_even_lists():
    rng = random.Random(91)
    for _ in range(20):
        m = rng.randint(1, 8)
        ts = distinct_rationals(rng, 2 * m)
        assert self_association_matrix(ts).is_zero()


def test_self_association_odd_rejected():
    with pytest.raises(ValueError):
        self_association_matrix([F(0), F(1), F(2)])


def test_dual_linearization():
    lin = make_linearization(1, 5, [F(1, 2), F(1, 2), F(1, 4), F(1, 4), F(1, 2)])
    dual = dual_linearization(lin)
    assert dual.d == 5 - 1 - 2 and dual.n == 5
    assert sum(dual.x, F(0)) == dual.d + 1
    with pytest.raises(ValueError):
        dual_linearization(make_linearization(2, 4, [F(1), F(1), F(1, 2), F(1, 2)]))
