"""Acceptance criteria. Each test records one PASS/FAIL line (printed in the
terminal summary) and then asserts the criterion exactly as stated."""

import random
import time
from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from cblab import families
from cblab.chern import c1_fvector, c1_genus1, deg_m04, deg_m04_parts, paper_table, r_genus1
from cblab.fusion import fuse3, fuse3_sl2_oracle
from cblab.hypotheses import check_precisQ
from cblab.picard import DivisorClassSmall, decompose_m3, hyperelliptic_m3, to_nonadjacent_basis_n5
from cblab.ranks import (boundary_strata, rank, rank_by_doubling, rank_caterpillar,
                         rank_sequence, restriction_data)
from cblab.reproduce import M3_RELATIONS, M21_RELATIONS, VERONESE_BASIS
from cblab.scaling import (anomaly_m2_closed, anomaly_m2_level1, binom, classify, elliptic_sum,
                           identity_coeffs_closed, identity_coeffs_conjectural,
                           identity_coeffs_general, verify_identity)
from cblab.weights import BundleSpec, dual, enumerate_level_weights, pluss, scale_bundle

F = Fraction


def fmt(x):
    if isinstance(x, dict):
        return "{" + ", ".join(f"{k}: {fmt(v)}" for k, v in x.items()) + "}"
    if isinstance(x, (list, tuple)):
        return "(" + ", ".join(fmt(v) for v in x) + ")"
    return str(x)


def combine(table, coeffs):
    total = None
    for m, c in coeffs.items():
        total = c * table[m] if total is None else total + c * table[m]
    return total


# -- numbered criteria ---------------------------------------------------------------

def test_c01_m2_counterexample(criterion):
    t0 = time.perf_counter()
    terms = {(a, b): deg_m04_parts([(a, 0), (a, 0), (b, 0), (b, 0)], 2)
             for a in range(3) for b in range(3)}
    nonzero = sorted(v for v in terms.values() if v)
    lhs = sum(terms.values())
    sums_ok = all(
        sum(rank(BundleSpec(1, m, 0, families.sl2(a, a, b, b)))
            for a in range(m + 1) for b in range(m + 1)) == (m + 3) * (m + 2) * (m + 1) // 6
        for m in range(1, 6))
    ell = elliptic_sum(2)
    dt = time.perf_counter() - t0
    ok = (lhs == 4 and nonzero == [1, 1, 2] and binom(5, 4) == 5 and sums_ok
          and ell == F(-19, 12) and dt < 10)
    criterion("1 M2 counterexample", ok,
              f"sum deg = {lhs} (terms {nonzero}) vs C(5,4) = 5; rank sums ok: {sums_ok}; "
              f"elliptic = {ell}; {dt:.2f}s < 10s")
    assert ok


def test_c02_m2_anomaly(criterion):
    t0 = time.perf_counter()
    vals = [anomaly_m2_level1(m) for m in range(2, 8)]
    dt = time.perf_counter() - t0
    alphas, betas = [a for a, _ in vals], [b for _, b in vals]
    closed = [anomaly_m2_closed(m) for m in range(2, 8)]
    ok = alphas == [0] * 6 and betas == [1, 4, 11, 24, 46, 80] and betas == closed and dt < 60
    criterion("2 M2 anomaly", ok, f"alpha = {fmt(alphas)}, beta = {fmt(betas)}, "
                                  f"closed forms {fmt(closed)}; {dt:.2f}s < 60s")
    assert ok


def test_c03_m05_scroll(criterion):
    t0 = time.perf_counter()
    spec = families.scroll_m05()
    classes = {m: c1_fvector(scale_bundle(spec, m)) for m in range(1, 5)}
    basis = {m: to_nonadjacent_basis_n5(c) for m, c in classes.items()}
    expect = {m: (0, c, 0, c, c) for m, c in zip(range(1, 5), (2, 9, 24, 50))}
    coeffs = identity_coeffs_general(5, 3)
    resid = verify_identity(classes, coeffs, 4)
    dt = time.perf_counter() - t0
    ok = basis == expect and coeffs(4) == (10, -10, 5) and resid.is_zero() and dt < 120
    criterion("3 M05 scroll", ok, f"basis {fmt([basis[m] for m in range(1, 5)])}; "
                                  f"coefficients {fmt(coeffs(4))}; "
                                  f"residual zero: {resid.is_zero()}; {dt:.2f}s < 120s")
    assert ok


def test_c04_m05_veronese(criterion):
    t0 = time.perf_counter()
    spec = families.veronese_m05()
    classes = {m: c1_fvector(scale_bundle(spec, m)) for m in range(1, 6)}
    basis = {m: to_nonadjacent_basis_n5(c) for m, c in classes.items()}
    coeffs = identity_coeffs_general(6, 4)
    resid = verify_identity(classes, coeffs, 5)
    dt = time.perf_counter() - t0
    ok = (basis == VERONESE_BASIS and coeffs(5) == (-15, 20, -15, 6) and resid.is_zero()
          and dt < 300)
    criterion("4 M05 Veronese", ok, f"five basis vectors match: {basis == VERONESE_BASIS}; "
                                    f"coefficients {fmt(coeffs(5))}; "
                                    f"residual zero: {resid.is_zero()}; {dt:.2f}s < 300s")
    assert ok


def test_c05_m04_projective(criterion):
    bad, n = [], 0
    for r in range(1, 8):
        for i in range(1, (r + 1) // 4 + 1):
            spec = families.projective_m04(r, i)
            d = 2 * i
            c1 = c1_fvector(spec)
            if deg_m04(spec) != d * (d + 1) // 2:
                bad.append((r, i, 1, "deg V"))
            for m in range(1, 4):
                sm = scale_bundle(spec, m)
                n += 1
                if rank(sm) != binom(d + m, m):
                    bad.append((r, i, m, "rank"))
                if deg_m04(sm) != binom(m + d, d + 1) * binom(d + 1, 2):
                    bad.append((r, i, m, "deg"))
                if not (binom(m + d, d + 1) * c1 - c1_fvector(sm)).is_zero():
                    bad.append((r, i, m, "c1"))
    ok = not bad and n > 0
    criterion("5 M04 projective", ok, f"{n} (r, i, m) cases, failures: {bad or 'none'}")
    assert ok


def test_c06_quadric(criterion):
    t0 = time.perf_counter()
    spec = families.quadric_m05()
    seq = rank_sequence(spec, 5)  # d = 3 needs d + 3 samples
    ranks_ok = list(seq.values[:4]) == [2 * binom(m + 2, 3) + binom(m + 2, 2) for m in range(4)]
    rep = classify(seq)
    cls_ok = (rep.d, rep.D, rep.Delta) == (3, 2, 0) and rep.candidates == ["quadric"]
    closed = identity_coeffs_closed("quadric", 3)
    lit = all(identity_coeffs_general(6, 2)(m) == closed(m) for m in range(1, 9))
    rk1 = all(identity_coeffs_general(seq.values[1], 2)(m) == closed(m) for m in range(1, 9))
    d4 = all(identity_coeffs_general(6, 2)(m) == identity_coeffs_closed("quadric", 4)(m)
             for m in range(1, 9))
    dt = time.perf_counter() - t0
    ok = ranks_ok and cls_ok and lit and dt < 600
    criterion("6 quadric", ok,
              f"ranks ok: {ranks_ok}; classify {(rep.d, rep.D, rep.Delta, rep.candidates)}; "
              f"general(R=6,D=2) == quadric d=3: {lit} (R=6 equals quadric d=4: {d4}; "
              f"R = rk V[1] = {seq.values[1]} equals d=3: {rk1}); {dt:.2f}s < 600s")
    assert ok


def test_c07_sl2_oracle(criterion):
    t0 = time.perf_counter()

    def sweep(max_level):
        n = bad = 0
        for level in range(max_level + 1):
            for a in range(level + 1):
                for b in range(level + 1):
                    for c in range(level + 1):
                        n += 1
                        got = fuse3((a, 0), (b, 0), (c, 0), level)
                        bad += got != fuse3_sl2_oracle(a, b, c, level)
        return n, bad

    n6, bad6 = sweep(6)
    # levels <= 6 hold only 784 triples; the sweep continues to level 13 (11025 triples)
    n13, bad13 = sweep(13)
    dt = time.perf_counter() - t0
    ok = bad6 == 0 and bad13 == 0 and n13 > 10 ** 4 and dt < 10
    criterion("7 sl2 oracle", ok, f"level <= 6: {n6} triples, {bad6} mismatches; level <= 13: "
                                  f"{n13} triples, {bad13} mismatches; {dt:.2f}s < 10s")
    assert ok


def test_c08_m3_coble(criterion):
    table = paper_table("M3", "coble-quartic").entries
    H, d1 = hyperelliptic_m3(), DivisorClassSmall("M3", (0, 0, 1))
    fails = []
    for coeffs, (a, b) in M3_RELATIONS:
        lhs = combine(table, coeffs)
        if lhs != a * H + b * d1:
            got = decompose_m3(lhs)
            fails.append(f"m={max(coeffs)}: expected {a}H+{b}d1, table gives {got[0]}H+{got[1]}d1")
    ok = not fails
    criterion("8 M3 Coble quartic", ok,
              f"{len(M3_RELATIONS) - len(fails)}/{len(M3_RELATIONS)} relations hold; "
              + ("; ".join(fails) if fails else "all hold"))
    assert ok


def test_c09_m2_coble_cubic(criterion):
    table = paper_table("M2", "coble-cubic").entries
    coeffs = identity_coeffs_conjectural("coble-cubic")
    d1 = DivisorClassSmall("M2", (0, 0, 1))
    # D_m = c1(V[m]) - predicted, as written out for m = 4, 5
    D = {m: -verify_identity(table, coeffs, m) for m in (2, 4, 5)}
    printed = {2: 9, 4: 279, 5: 1020}
    # D_2 is printed without its defining expression; either orientation is accepted
    d2_ok = D[2] in (9 * d1, -9 * d1)
    ok = d2_ok and D[4] == 279 * d1 and D[5] == 1020 * d1
    criterion("9 M2 Coble cubic", ok,
              "; ".join(f"D_{m} = {D[m]} (printed {printed[m]} delta_1)" for m in (2, 4, 5)))
    assert ok


def test_c10_m21_two_quadrics(criterion):
    table = paper_table("M21", "two-quadrics").entries
    zero = DivisorClassSmall("M21", (0, 0, 0, 0))
    rel_ok = [combine(table, c) == zero for c in M21_RELATIONS]
    coeffs = identity_coeffs_conjectural("two-quadrics")
    exp = {3: (-16, 6, 0), 5: (225, -70, 6), 6: (1036, -315, 21), 7: (3080, -924, 56)}
    co_ok = all(coeffs(m) == tuple(F(x) for x in v) for m, v in exp.items())
    ok = all(rel_ok) and co_ok
    criterion("10 M21 two quadrics", ok, f"relations vanish: {rel_ok}; coefficients match: {co_ok}")
    assert ok


def test_c11_m11_twisted_cubic(criterion):
    d, bad = 3, []
    coeffs = identity_coeffs_closed("p1o3")
    for k in range(1, 4):
        classes = {}
        for m in range(1, 5):
            rk = r_genus1(2 * k * m, m * (d + 2 * k))
            deg = c1_genus1(2 * k * m, m * (d + 2 * k))
            if rk != d * m + 1 or rank(scale_bundle(families.twisted_cubic(d, k), m)) != rk:
                bad.append((k, m, "rank"))
            if deg != F(-m * (d * m + 1) * (k + d), 12):
                bad.append((k, m, "deg"))
            classes[m] = DivisorClassSmall("M11", (deg,))
        for m in range(1, 5):
            if not verify_identity(classes, coeffs, m).is_zero():
                bad.append((k, m, "identity"))
    ok = not bad
    criterion("11 M11 twisted cubic", ok, f"k <= 3, m <= 4, failures: {bad or 'none'}")
    assert ok


def test_c12_hypotheses(criterion):
    rep = check_precisQ(families.m2_level1(), 6)
    ex_ok = (not rep.passed) and rep.first_failure() == "Delta_1,{}: socle degree 2 != 1"
    proj = {(r, i): check_precisQ(families.projective_m04(r, i), 2 * i + 2).passed
            for r in range(3, 8) for i in range(1, (r + 1) // 4 + 1)}
    m1n = {(k, n): check_precisQ(families.m1n_family(k, n), 6).passed
           for k in (1, 2) for n in range(1, 5)}
    ok = ex_ok and all(proj.values()) and all(m1n.values())
    criterion("12 hypothesis suite", ok,
              f"M2 level one: {rep.first_failure()}; projective pass {sum(proj.values())}/"
              f"{len(proj)}; M1n pass {sum(m1n.values())}/{len(m1n)}")
    assert ok


# -- property-based criteria -----------------------------------------------------------

def test_p1_generator_equivalence(criterion):
    pairs = [(("quadric", d), d + 2, 2) for d in range(1, 7)]
    pairs += [(("veronese", None), 6, 4), (("scroll12", None), 5, 3), (("p1o3", None), 4, 3)]
    bad = [k for (k, R, D) in pairs
           if any(identity_coeffs_general(R, D)(m) != identity_coeffs_closed(k[0], k[1])(m)
                  for m in range(1, 11))]
    ok = not bad
    criterion("P1 generator equivalence", ok, f"{len(pairs)} closed forms vs general elimination "
                                              f"for m <= 10; failures: {bad or 'none'}")
    assert ok


def _npts(g):
    return {0: [4, 5], 1: [1, 2, 3], 2: [0, 1, 2]}[g]


@st.composite
def specs(draw, genera=(0, 1, 2)):
    r = draw(st.integers(1, 3))
    level = draw(st.integers(1, 3 if r < 3 else 2))
    g = draw(st.sampled_from(genera))
    n = draw(st.sampled_from(_npts(g)))
    ws = enumerate_level_weights(r, level)
    weights = draw(st.lists(st.sampled_from(ws), min_size=n, max_size=n))
    return BundleSpec(r, level, g, weights)


SETTINGS = settings(max_examples=100, deadline=None, derandomize=True,
                    suppress_health_check=[HealthCheck.too_slow])


def _run_property(criterion, cid, prop, label):
    seen = []

    @SETTINGS
    @given(specs())
    def inner(spec):
        seen.append(spec)
        prop(spec)

    try:
        inner()
        ok, why = len(seen) >= 100, ""
    except AssertionError as exc:
        ok, why = False, f"; falsified: {exc}"
    criterion(cid, ok, f"{label} on {len(seen)} random specs{why}")
    assert ok


def test_p2_conservation(criterion):
    def prop(spec):
        rk = rank(spec)
        for stratum in boundary_strata(spec.genus, spec.n):
            total = sum(a * b for _, a, b in restriction_data(spec, stratum))
            assert total == rk, f"{spec} at {stratum}: {total} != {rk}"

    _run_property(criterion, "P2 factorization conservation", prop, "sum of r1*r2 equals rank")


def test_p3_plussing_permutation(criterion):
    def prop(spec):
        rk = rank(spec)
        rng = random.Random(hash(spec))
        ws = list(spec.weights)
        if ws:
            js = [rng.randrange(spec.r + 1) for _ in ws]
            js[-1] = (-sum(js[:-1])) % (spec.r + 1)
            plussed = [pluss(w, j, spec.level) for w, j in zip(ws, js)]
            assert rank(spec.with_weights(plussed)) == rk, f"plussing {spec} by {js}"
            rng.shuffle(ws)
            assert rank(spec.with_weights(ws)) == rk, f"permuting {spec}"

    _run_property(criterion, "P3 plussing and permutation invariance", prop,
                  "ranks invariant under plussing (sum j = 0 mod r+1) and permutation")


def test_p4_tree_shape(criterion):
    def prop(spec):
        rk = rank(spec)
        assert rank_by_doubling(spec) == rk, f"doubling route differs on {spec}"
        if spec.genus == 0:
            assert rank_caterpillar(spec) == rk, f"caterpillar differs on {spec}"

    _run_property(criterion, "P4 tree-shape independence", prop,
                  "balanced, caterpillar and doubling routes agree")


def test_p5_dual_invariance(criterion):
    def prop(spec):
        ws = list(spec.weights)
        if len(ws) >= 3:
            a, b, c = ws[:3]
            assert fuse3(a, b, c, spec.level) == fuse3(dual(a), dual(b), dual(c), spec.level)
        if spec.genus == 0 and len(ws) == 4:
            assert deg_m04(spec) == deg_m04(spec.with_weights([dual(w) for w in ws]))

    _run_property(criterion, "P5 dual invariance", prop, "fuse3 and deg_m04 invariant under duals")
