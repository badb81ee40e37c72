from fractions import Fraction
from math import comb

import pytest

from cblab.weights import (BundleSpec, LevelWeight, Weight, casimir, dual, enumerate_level_weights,
                           pluss, scale_bundle, scale_weight)


def test_partition_and_coords_agree():
    w = Weight.from_coords((1, 0, 2))
    assert w.parts == (3, 2, 2, 0)
    assert w.coords == (1, 0, 2)
    assert w.r == 3 and w.level() == 3


def test_invalid_partitions_rejected():
    with pytest.raises(ValueError):
        Weight((1, 2, 0))
    with pytest.raises(ValueError):
        Weight((2, 1))


def test_level_weight_bound():
    LevelWeight(Weight((2, 0)), 2)
    with pytest.raises(ValueError):
        LevelWeight(Weight((3, 0)), 2)


@pytest.mark.parametrize("r,level", [(1, 4), (2, 3), (3, 2), (4, 3)])
def test_enumeration_count(r, level):
    ws = enumerate_level_weights(r, level)
    assert len(ws) == comb(level + r, r)
    assert len(set(ws)) == len(ws)
    assert all(w.level() <= level for w in ws)


def test_dual_reverses_coords():
    for w in enumerate_level_weights(3, 3):
        assert dual(w).coords == tuple(reversed(w.coords))
        assert dual(dual(w)) == w


def test_sl2_casimir():
    for a in range(8):
        assert casimir(Weight((a, 0))) == Fraction(a * (a + 2), 2)


def test_casimir_dual_invariant():
    for w in enumerate_level_weights(3, 3):
        assert casimir(w) == casimir(dual(w))


def test_pluss_permutes_level_weights():
    for r, level in [(1, 3), (2, 2), (3, 2)]:
        ws = enumerate_level_weights(r, level)
        for j in range(r + 1):
            img = {pluss(w, j, level) for w in ws}
            assert img == set(ws)
        for w in ws:
            assert pluss(w, r + 1, level) == w


def test_scaling():
    w = Weight((2, 1, 0))
    assert scale_weight(w, 3).parts == (6, 3, 0)
    spec = BundleSpec(2, 2, 0, [w, w, dual(w)])
    s3 = scale_bundle(spec, 3)
    assert s3.level == 6 and s3.weights[0].parts == (6, 3, 0)
    assert scale_bundle(spec, 0).level == 0


def test_spec_json_round_trip():
    spec = BundleSpec(2, 3, 1, [Weight((2, 1, 0)), Weight((3, 0, 0))])
    assert BundleSpec.from_json(spec.to_json()) == spec


def test_spec_validation():
    with pytest.raises(ValueError):
        BundleSpec(1, 1, 0, [Weight((2, 0))])
    with pytest.raises(ValueError):
        BundleSpec(1, 1, 0, [Weight((1, 1, 0))])
