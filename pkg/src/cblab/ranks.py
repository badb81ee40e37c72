"""Ranks of conformal-blocks bundles through factorization."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .fusion import fusion_product_raw
from .weights import BundleSpec, Weight, dual, enumerate_level_weights, scale_bundle


def _zero(k):
    return (0,) * k


def _dual_parts(p):
    return tuple(p[0] - p[len(p) - 1 - i] for i in range(len(p)))


def multiply(v: dict, w: dict, level: int) -> dict:
    """Product of two elements of the fusion ring (dicts keyed by part tuples)."""
    out = defaultdict(int)
    for a, x in v.items():
        for b, y in w.items():
            for c, z in fusion_product_raw(a, b, level).items():
                out[c] += x * y * z
    return {c: z for c, z in out.items() if z}


def tensor_vector(parts_list, k: int, level: int) -> dict:
    """Decomposition of the fusion product of the given weights (caterpillar order)."""
    v = {_zero(k): 1}
    for p in parts_list:
        v = multiply(v, {tuple(p): 1}, level)
        if not v:
            break
    return v


def pair(v: dict, w: dict) -> int:
    """Number of vacua in v (x) w."""
    return sum(x * w.get(_dual_parts(a), 0) for a, x in v.items())


@lru_cache(maxsize=None)
def handle_element(k: int, level: int) -> tuple:
    """sum over mu of mu (x) mu*, stored as a sorted tuple of items."""
    h = defaultdict(int)
    for mu in enumerate_level_weights(k - 1, level):
        for c, z in fusion_product_raw(mu.parts, dual(mu).parts, level).items():
            h[c] += z
    return tuple(sorted(h.items()))


def _rank0(parts_list, k, level):
    n = len(parts_list)
    if n == 0:
        return 1
    if n == 1:
        return int(all(x == 0 for x in parts_list[0]))
    if n == 2:
        return int(parts_list[1] == _dual_parts(parts_list[0]))
    # balanced split keeps the intermediate vectors small
    ps = sorted(parts_list)
    half = n // 2
    left = tensor_vector(ps[:half], k, level)
    if not left:
        return 0
    right = tensor_vector(ps[half:], k, level)
    return pair(left, right)


def _vector(spec: BundleSpec) -> dict:
    k = spec.r + 1
    v = tensor_vector([w.parts for w in spec.weights], k, spec.level)
    if spec.genus:
        h = dict(handle_element(k, spec.level))
        for _ in range(spec.genus):
            v = multiply(v, h, spec.level)
    return v


def rank(spec: BundleSpec) -> int:
    if spec.level == 0:
        return 1
    if spec.genus == 0:
        return _rank0([w.parts for w in spec.weights], spec.r + 1, spec.level)
    return _vector(spec).get(_zero(spec.r + 1), 0)


def rank_caterpillar(spec: BundleSpec) -> int:
    """Genus-0 rank by a single left-to-right chain, read off at the vacuum."""
    if spec.genus:
        raise ValueError("genus 0 only")
    k = spec.r + 1
    return tensor_vector([w.parts for w in spec.weights], k, spec.level).get(_zero(k), 0)


def rank_by_doubling(spec: BundleSpec) -> int:
    """Literal genus reduction: sum over mu_1..mu_g of genus-0 ranks with mu_i, mu_i*."""
    if spec.genus == 0:
        return rank(spec)
    P = enumerate_level_weights(spec.r, spec.level)
    total = 0

    def rec(extra, g):
        nonlocal total
        if g == 0:
            total += rank(spec.with_weights(spec.weights + tuple(extra), genus=0))
            return
        for mu in P:
            rec(extra + [mu, dual(mu)], g - 1)

    rec([], spec.genus)
    return total


@dataclass(frozen=True)
class RankSequence:
    spec: BundleSpec
    values: tuple[int, ...]

    def __getitem__(self, m):
        return self.values[m]

    def __len__(self):
        return len(self.values)


def rank_sequence(spec: BundleSpec, M: int) -> RankSequence:
    if M < 1:
        raise ValueError("M must be >= 1")
    vals = [1] + [rank(scale_bundle(spec, m)) for m in range(1, M + 1)]
    return RankSequence(spec, tuple(vals))


# -- boundary strata ---------------------------------------------------------

@dataclass(frozen=True)
class BoundaryStratum:
    """Separating (g1, J) or irreducible.  J uses 1-based marked-point labels."""

    kind: str
    g1: int = 0
    J: frozenset = frozenset()

    @classmethod
    def separating(cls, g1, J):
        return cls("separating", g1, frozenset(J))

    @classmethod
    def irreducible(cls):
        return cls("irreducible")

    def label(self):
        if self.kind == "irreducible":
            return "irr"
        return f"{self.g1},{{{','.join(map(str, sorted(self.J)))}}}"

    def __str__(self):
        return "Delta_" + self.label()


def _stable(g, npts):
    return 2 * g - 2 + npts > 0


def canonical_stratum(g: int, n: int, st: BoundaryStratum) -> BoundaryStratum:
    if st.kind == "irreducible":
        return st
    comp = frozenset(range(1, n + 1)) - st.J
    a = (st.g1, tuple(sorted(st.J)))
    b = (g - st.g1, tuple(sorted(comp)))
    return st if a <= b else BoundaryStratum.separating(g - st.g1, comp)


def validate_stratum(g: int, n: int, st: BoundaryStratum):
    if st.kind == "irreducible":
        if g < 1:
            raise ValueError("no irreducible boundary in genus 0")
        return
    if st.kind != "separating":
        raise ValueError(f"unknown stratum kind {st.kind!r}")
    if not st.J <= frozenset(range(1, n + 1)):
        raise ValueError(f"J={sorted(st.J)} is not a subset of 1..{n}")
    if not 0 <= st.g1 <= g:
        raise ValueError("g1 out of range")
    if not (_stable(st.g1, len(st.J) + 1) and _stable(g - st.g1, n - len(st.J) + 1)):
        raise ValueError(f"{st} is not a stable boundary stratum of M_{g},{n}")


def boundary_strata(g: int, n: int) -> list[BoundaryStratum]:
    out = set()
    pts = range(1, n + 1)
    for g1 in range(g + 1):
        for size in range(n + 1):
            for J in combinations(pts, size):
                st = BoundaryStratum.separating(g1, J)
                try:
                    validate_stratum(g, n, st)
                except ValueError:
                    continue
                out.add(canonical_stratum(g, n, st))
    res = sorted(out, key=lambda s: (s.g1, len(s.J), sorted(s.J)))
    if g >= 1:
        res.append(BoundaryStratum.irreducible())
    return res


def restriction_data(spec: BundleSpec, stratum: BoundaryStratum) -> list[tuple[Weight, int, int]]:
    validate_stratum(spec.genus, spec.n, stratum)
    P = enumerate_level_weights(spec.r, spec.level)
    out = []
    if stratum.kind == "irreducible":
        for mu in P:
            rk = rank(spec.with_weights(spec.weights + (mu, dual(mu)), genus=spec.genus - 1))
            if rk:
                out.append((mu, rk, 1))
        return out
    inside = tuple(spec.weights[i - 1] for i in sorted(stratum.J))
    outside = tuple(w for i, w in enumerate(spec.weights, 1) if i not in stratum.J)
    g2 = spec.genus - stratum.g1
    for mu in P:
        r1 = rank(spec.with_weights(inside + (mu,), genus=stratum.g1))
        if not r1:
            continue
        r2 = rank(spec.with_weights(outside + (dual(mu),), genus=g2))
        if r2:
            out.append((mu, r1, r2))
    return out
