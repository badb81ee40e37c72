import json

import pytest

from cblab.fusion import (FusionCache, complement, fuse3, fuse3_sl2_oracle, fusion_basis,
                          fusion_product, lr_coefficient, lr_product, quantum_product,
                          rim_hook_reduce)
from cblab.weights import Weight, dual, enumerate_level_weights


def test_sl2_oracle_exhaustive_small_levels():
    count = 0
    for level in range(7):
        for a in range(level + 1):
            for b in range(level + 1):
                for c in range(level + 1):
                    assert fuse3((a, 0), (b, 0), (c, 0), level) == fuse3_sl2_oracle(a, b, c, level)
                    count += 1
    assert count == sum((l + 1) ** 3 for l in range(7))


def test_littlewood_richardson_known():
    # s_21 * s_21
    assert lr_coefficient((2, 1), (2, 1), (3, 2, 1)) == 2
    assert lr_coefficient((2, 1), (2, 1), (4, 2)) == 1
    assert lr_coefficient((2, 1), (2, 1), (2, 2, 1, 1)) == 1
    assert lr_coefficient((2, 1), (2, 1), (3, 3)) == 1
    assert lr_coefficient((2, 1), (2, 1), (5, 1)) == 0
    assert sum(lr_product((2, 1), (2, 1), 9).values()) == 8


def test_littlewood_richardson_dimension_count():
    # sum over rho of c * f^rho = binom(|rho|, |lam|) f^lam f^mu, checked for s_1^n
    prod = {(): 1}
    for _ in range(4):
        nxt = {}
        for lam, c in prod.items():
            for rho, d in lr_product(lam, (1,), 5).items():
                nxt[rho] = nxt.get(rho, 0) + c * d
        prod = nxt
    assert sum(c * c for c in prod.values()) == 24


def test_rim_hook_reduction():
    # Gr(2, 4): k = 2, n = 4
    assert rim_hook_reduce((2, 1), 2, 4) == (1, (2, 1), 0)
    assert rim_hook_reduce((3, 1), 2, 4) == (1, (0, 0), 1)
    assert rim_hook_reduce((3, 0), 2, 4) is None


def test_quantum_cohomology_gr24():
    # sigma_1^2 = sigma_2 + sigma_11 and sigma_1 * sigma_21 = sigma_22 + q
    assert quantum_product((1,), (1,), 1, 2).terms == {((2, 0), 0): 1, ((1, 1), 0): 1}
    assert quantum_product((1,), (2, 1), 1, 2).terms == {((2, 2), 0): 1, ((0, 0), 1): 1}
    assert quantum_product((2,), (2,), 1, 2).terms == {((2, 2), 0): 1}


def test_fusion_product_matches_fuse3():
    for r, level in [(1, 4), (2, 3), (3, 2), (2, 1)]:
        ws = enumerate_level_weights(r, level)
        for a in ws:
            for b in ws:
                prod = fusion_product(a, b, level)
                for c in ws:
                    assert prod.get(dual(c), 0) == fuse3(a, b, c, level)


def test_fusion_symmetry_and_unit():
    ws = enumerate_level_weights(2, 3)
    zero = Weight.zero(2)
    for a in ws:
        assert fusion_product(zero, a, 3) == {a: 1}
        for b in ws:
            for c in ws:
                n = fuse3(a, b, c, 3)
                assert n == fuse3(b, c, a, 3) == fuse3(dual(a), dual(b), dual(c), 3)


def test_fusion_associativity():
    level = 2
    ws = enumerate_level_weights(3, level)

    def times(vec, w):
        out = {}
        for x, c in vec.items():
            for y, d in fusion_product(x, w, level).items():
                out[y] = out.get(y, 0) + c * d
        return out

    for a in ws[:6]:
        for b in ws:
            for c in ws[:5]:
                left = times(times({a: 1}, b), c)
                right = {}
                for y, d in fusion_product(b, c, level).items():
                    for z, e in fusion_product(a, y, level).items():
                        right[z] = right.get(z, 0) + d * e
                assert left == right


def test_level_one_simple_currents():
    # at level one, sl_{r+1} fusion is the group ring of Z/(r+1)
    for r in (2, 3, 4):
        ws = enumerate_level_weights(r, 1)
        for a in ws:
            for b in ws:
                prod = fusion_product(a, b, 1)
                assert sum(prod.values()) == 1


def test_complement_is_box_complement():
    assert complement((2, 1), 2, 3) == (2, 1)
    assert complement((3, 0), 2, 3) == (3, 0)


def test_fusion_basis():
    assert fusion_basis(2, 2) == enumerate_level_weights(2, 2)


def test_cache_round_trip(tmp_path):
    path = tmp_path / "fusion.jsonl"
    cache = FusionCache(path)
    a, b, c = Weight((2, 1, 0)), Weight((1, 0, 0)), Weight((2, 0, 0))
    val = fuse3(a, b, c, 3, cache=cache)
    cache.flush()
    again = FusionCache(path)
    assert len(again) == 1
    assert fuse3(a, b, c, 3, cache=again) == val
    lines = path.read_text().splitlines()
    assert int(json.loads(lines[0])["N"]) == val


def test_cache_conflict_raises(tmp_path):
    path = tmp_path / "fusion.jsonl"
    cache = FusionCache(path)
    fuse3((1, 0), (1, 0), (0, 0), 1, cache=cache)
    cache.flush()
    rec = json.loads(path.read_text().splitlines()[0])
    rec["N"] = str(int(rec["N"]) + 1)
    with path.open("a") as fh:
        fh.write(json.dumps(rec) + "\n")
    with pytest.raises(ValueError):
        FusionCache(path)


def test_input_validation():
    with pytest.raises(ValueError):
        fuse3((3, 0), (1, 0), (1, 0), 2)
    with pytest.raises(ValueError):
        fuse3((1, 0), (1, 0, 0), (1, 0), 2)
