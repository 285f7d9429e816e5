import random
from fractions import Fraction as F

import pytest

from rncgit.configs import Configuration, veronese_config
from rncgit.exactlin import Mat, det
from rncgit.fcurves import FPartition
from rncgit.gitstab import (
    DimensionMismatch,
    Linearization,
    OutOfHypersimplex,
    Stability,
    cont_predicate,
    hassett_contracted,
    make_linearization,
    semistability,
    symcont_predicate,
    symmetric_linearization,
    walls,
)
from rncgit.sampling import random_linearization
from oracles import brute_partitions_of_set, exhaustive_stability, search_alpha, search_beta, search_general_alpha


def test_symmetric_linearization_values():
    lin = symmetric_linearization(1, 4)
    assert lin.x == (F(1, 2), F(1, 2), F(1, 2), F(1, 2))


def test_make_linearization_valid():
    make_linearization(2, 4, [F(1), F(1), F(1, 2), F(1, 2)])


def test_make_linearization_rejects_large_weight():
    with pytest.raises(OutOfHypersimplex) as err:
        make_linearization(1, 4, [F(5, 4), F(1, 4), F(1, 4), F(1, 4)])
    assert "x_1" in str(err.value)


def test_make_linearization_rejects_bad_sum():
    with pytest.raises(OutOfHypersimplex):
        make_linearization(1, 4, [F(1, 4)] * 4)


def test_stability_generic_veronese_stable():
    v = veronese_config(1, [F(k) for k in range(5)])
    verdict = semistability(v, symmetric_linearization(1, 5))
    assert verdict.status is Stability.STABLE
    assert verdict.witness is None


def test_stability_strictly_semistable_pair():
    cfg = Configuration.from_columns([[1, 0], [1, 0], [0, 1], [1, 1]])
    verdict = semistability(cfg, symmetric_linearization(1, 4))
    assert verdict.status is Stability.STRICTLY_SEMISTABLE
    assert verdict.witness.indices == (1, 2)
    assert verdict.witness.dimension == 0
    assert verdict.witness.weight == 1


def test_stability_unstable_triple_point():
    cfg = Configuration.from_columns([[1, 0], [1, 0], [1, 0], [1, 1]])
    verdict = semistability(cfg, symmetric_linearization(1, 4))
    assert verdict.status is Stability.UNSTABLE
    assert verdict.witness.weight == F(3, 2)
    assert verdict.witness.weight > verdict.witness.dimension + 1


def test_stability_dimension_mismatch():
    cfg = Configuration.from_columns([[1, 0], [0, 1], [1, 1], [1, 2]])
    with pytest.raises(DimensionMismatch):
        semistability(cfg, symmetric_linearization(1, 5))


def test_stability_agrees_with_exhaustive_oracle():
    rng = random.Random(17)
    checked = 0
    while checked < 25:
        d = rng.choice([1, 2])
        n = rng.randint(4, 6)
        cols = []
        for _ in range(n):
            col = [F(rng.randint(-2, 2)) for _ in range(d + 1)]
            if not any(col):
                col[rng.randrange(d + 1)] = F(1)
            cols.append(col)
        cfg = Configuration.from_columns(cols)
        lin = symmetric_linearization(d, n) if rng.random() < 0.5 else random_linearization(rng, d, n, off_walls=False)
        verdict = semistability(cfg, lin)
        assert verdict.status.value == exhaustive_stability(cfg, lin)
        checked += 1


def test_stability_invariances():
    rng = random.Random(29)
    v = veronese_config(2, [F(0), F(1), F(2), F(-1), F(3), F(1, 2)])
    lin = random_linearization(rng, 2, 6, off_walls=False)
    base = semistability(v, lin).status
    # permute columns together with weights
    perm = list(range(6))
    rng.shuffle(perm)
    permuted = Configuration.from_columns([v.column(i) for i in perm])
    permuted_lin = Linearization(2, 6, tuple(lin.x[i] for i in perm))
    assert semistability(permuted, permuted_lin).status == base
    # rescale columns
    rescaled = Configuration.from_columns(
        [[F(rng.choice([1, 2, 3, -1])) * x for x in v.column(i)] for i in range(6)]
    )
    assert semistability(rescaled, lin).status == base
    # left multiplication by an invertible matrix
    g = Mat([[1, 1, 0], [0, 1, 0], [2, 0, 1]])
    assert det(g) != 0
    moved = Configuration(2, 6, g @ v.matrix)
    assert semistability(moved, lin).status == base


def test_walls_symmetric_n4():
    found = walls(symmetric_linearization(1, 4))
    assert len(found) == 6
    assert all(len(subset) == 2 and k == 1 for subset, k in found)


def test_walls_symmetric_n6():
    found = walls(symmetric_linearization(1, 6))
    # exactly the 3-subsets reach integer weight 1
    assert len(found) == 20
    assert all(len(subset) == 3 and k == 1 for subset, k in found)


def test_walls_generic_empty():
    lin = make_linearization(1, 4, [F(9, 10), F(11, 20), F(1, 4), F(3, 10)])
    assert walls(lin) == []


def test_walls_match_direct_enumeration():
    import itertools

    rng = random.Random(3)
    lin = random_linearization(rng, 2, 6, off_walls=False)
    expected = []
    for size in range(1, 6):
        for subset in itertools.combinations(range(6), size):
            s = sum((lin.x[i] for i in subset), F(0))
            if s.denominator == 1 and 1 <= s <= 2:
                expected.append((tuple(i + 1 for i in subset), int(s)))
    assert walls(lin) == expected


def test_cont_predicate_examples():
    lin = symmetric_linearization(1, 6)
    cert = cont_predicate(lin, FPartition.of([1], [2], [3], [4, 5, 6]))
    assert cert is not None and cert.vector == (0, 0, 0, 1)
    lin5 = symmetric_linearization(1, 5)
    assert cont_predicate(lin5, FPartition.of([1], [2], [3], [4, 5])) is None


def test_cont_predicate_weight_d_tail():
    # a block of weight >= d always certifies (take (0, 0, 0, d))
    lin = make_linearization(2, 6, [F(3, 10)] * 3 + [F(7, 10)] * 3)
    part = FPartition.of([1], [2], [3], [4, 5, 6])
    assert lin.weight_of([3, 4, 5]) >= 2
    cert = cont_predicate(lin, part)
    assert cert is not None and sum(cert.vector) == 2


def test_cont_predicate_agrees_with_literal_search():
    rng = random.Random(41)
    for _ in range(60):
        n = rng.randint(4, 8)
        d = rng.randint(1, min(4, n - 3))
        lin = random_linearization(rng, d, n, off_walls=False)
        parts = list(brute_partitions_of_set(n))
        partition = FPartition(parts[rng.randrange(len(parts))])
        weights = [lin.weight_of([i - 1 for i in b]) for b in partition.blocks]
        expected = search_general_alpha(d, weights)
        got = cont_predicate(lin, partition)
        assert (got is not None) == (expected is not None)


def test_symcont_examples():
    assert symcont_predicate(6, 1, (1, 1, 1, 3)).vector == (0, 0, 0, 1)
    assert symcont_predicate(6, 1, (1, 1, 2, 2)) is None
    cert = symcont_predicate(8, 3, (2, 2, 2, 2))
    assert cert.kind.value == "beta-family" and cert.vector == (1, 1, 1, 2)


def test_symcont_agrees_with_literal_search():
    from rncgit.fcurves import enumerate_sym_fcurves

    for n in range(4, 13):
        for d in range(1, n - 2):
            if d > n - 3:
                continue
            for sizes in enumerate_sym_fcurves(n):
                got = symcont_predicate(n, d, sizes)
                alpha = search_alpha(n, d + 1, sizes)
                beta = search_beta(n, d + 1, sizes)
                assert (got is not None) == (alpha is not None or beta is not None), (n, d, sizes)


def test_cont_matches_symcont_for_symmetric_weights():
    from rncgit.fcurves import enumerate_sym_fcurves

    for n in range(4, 10):
        for d in range(1, n - 2):
            lin = symmetric_linearization(d, n)
            for sizes in enumerate_sym_fcurves(n):
                blocks = []
                start = 1
                for s in sizes:
                    blocks.append(list(range(start, start + s)))
                    start += s
                partition = FPartition.of(*blocks)
                sym = symcont_predicate(n, d, sizes)
                general = cont_predicate(lin, partition)
                if sym is not None and sym.kind.value == "alpha-family":
                    assert general is not None
                if general is not None:
                    assert sym is not None  # alpha half implies symmetric contraction


def test_hassett_examples():
    lin6 = symmetric_linearization(1, 6)
    assert hassett_contracted(lin6, FPartition.of([1], [2], [3], [4, 5, 6]))
    lin26 = symmetric_linearization(2, 6)
    assert not hassett_contracted(lin26, FPartition.of([1], [2], [3, 4], [5, 6]))


def test_hassett_implies_cont():
    rng = random.Random(59)
    for _ in range(200):
        n = rng.randint(4, 9)
        d = rng.randint(1, n - 3)
        lin = random_linearization(rng, d, n, off_walls=False)
        parts = list(brute_partitions_of_set(n))
        partition = FPartition(parts[rng.randrange(len(parts))])
        if hassett_contracted(lin, partition):
            assert cont_predicate(lin, partition) is not None
