"""Named bundles used throughout the reproduction suite."""

from __future__ import annotations

from .weights import BundleSpec, Weight


def sl2(*a):
    return [Weight((x, 0)) for x in a]


def scroll_m05() -> BundleSpec:
    """V(sl_2, {2w1^4, 4w1}, 5) on M_{0,5}: (S(1,2), O(1)) rank scaling."""
    return BundleSpec(1, 5, 0, sl2(2, 2, 2, 2, 4))


def veronese_m05() -> BundleSpec:
    """V(sl_2, {w1, 3w1, 4w1, 4w1, 6w1}, 8) on M_{0,5}: Veronese-surface rank scaling."""
    return BundleSpec(1, 8, 0, sl2(1, 3, 4, 4, 6))


def quadric_m05() -> BundleSpec:
    """sl_4 level 7 on M_{0,5}: quadric rank scaling with d = 3."""
    return BundleSpec(3, 7, 0, [Weight.from_coords(c) for c in
                                ((1, 3, 1), (3, 1, 1), (2, 1, 2), (7, 0, 0), (0, 0, 7))])


def projective_m04(r: int, i: int) -> BundleSpec:
    """V(sl_{r+1}, {(w_i + w_{r+1-i})^4}, 2) on M_{0,4}; projective scaling of dimension 2i."""
    if not (1 <= i and 2 * i <= r + 1):
        raise ValueError("need 1 <= i <= (r+1)/2")
    c = [0] * r
    c[i - 1] += 1
    c[r - i] += 1
    w = Weight.from_coords(c)
    return BundleSpec(r, 2, 0, [w] * 4)


def m1n_family(k: int, n: int) -> BundleSpec:
    """V(sl_2, {a w1, ((2k+1) w1)^{n-1}}, 2k+1) on M_{1,n}, a = 2k for odd n, 1 for even n.

    Rank sequence m + 1 in both cases.
    """
    if n < 1:
        raise ValueError("n >= 1")
    first = 2 * k if n % 2 else 1
    return BundleSpec(1, 2 * k + 1, 1, sl2(first, *([2 * k + 1] * (n - 1))))


def twisted_cubic(d: int, k: int) -> BundleSpec:
    """V(sl_2, {2k w1}, d+2k) on M_{1,1}; rank scaling dm+1."""
    return BundleSpec(1, d + 2 * k, 1, sl2(2 * k))


def m2_level1() -> BundleSpec:
    """V(sl_2, {}, 1) on M_2."""
    return BundleSpec(1, 1, 2, [])


def coble_quartic_bundle() -> BundleSpec:
    return BundleSpec(1, 1, 3, [])


def coble_cubic_bundle() -> BundleSpec:
    return BundleSpec(2, 1, 2, [])


def two_quadrics_bundle() -> BundleSpec:
    return BundleSpec(1, 2, 2, sl2(2))
