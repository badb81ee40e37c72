"""First Chern classes: degrees on M_{0,4}, F-curve pairings on M_{0,n},
genus-one closed forms, and tabulated classes on M_2, M_3 and M_{2,1}."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .fusion import fusion_product_raw
from .picard import DivisorClassM0n, DivisorClassSmall, fcurves
from .ranks import tensor_vector
from .weights import BundleSpec, Weight, casimir


def _dual_parts(p):
    return tuple(p[0] - p[len(p) - 1 - i] for i in range(len(p)))


@lru_cache(maxsize=None)
def _casimir(p):
    return casimir(Weight(p))


@lru_cache(maxsize=200_000)
def _deg04(ws, level):
    a, b, c, d = ws
    k = len(a)
    sum_c = sum(_casimir(p) for p in ws)
    rk = 0
    boundary = Fraction(0)
    for (x, y), (z, w) in (((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))):
        left = fusion_product_raw(x, y, level)
        right = fusion_product_raw(z, w, level)
        # left[kappa] = N(x, y, kappa*); pairing with right at kappa* sums over mu = kappa*
        part = 0
        tot = 0
        for kappa, n1 in left.items():
            n2 = right.get(_dual_parts(kappa), 0)
            if n2:
                part += _casimir(kappa) * n1 * n2
                tot += n1 * n2
        boundary += part
        if rk == 0:
            rk = tot
    val = (rk * sum_c - boundary) / (2 * (level + k))
    if val.denominator != 1:
        raise ArithmeticError(f"non-integral degree {val} for {ws} at level {level}")
    return int(val)


def deg_m04(spec: BundleSpec) -> int:
    """Degree of V on M_{0,4} = P^1."""
    if spec.genus != 0 or spec.n != 4:
        raise ValueError("deg_m04 needs g = 0 and n = 4")
    if spec.level == 0:
        return 0
    ws = tuple(sorted(w.parts for w in spec.weights))
    return _deg04(ws, spec.level)


def deg_m04_parts(ws, level) -> int:
    return _deg04(tuple(sorted(ws)), level)


def c1_fvector(spec: BundleSpec) -> DivisorClassM0n:
    """Pairings of c_1(V) with every F-curve of M_{0,n}."""
    if spec.genus != 0 or spec.n < 4:
        raise ValueError("c1_fvector needs g = 0 and n >= 4")
    k = spec.r + 1
    level = spec.level
    parts = [w.parts for w in spec.weights]
    pairing = {}
    for F in fcurves(spec.n):
        # block vectors: mu_j -> rank of V(lambda(N_j) + {mu_j*}) = mult. of mu_j in (x)lambda(N_j)
        vecs = [tensor_vector([parts[i - 1] for i in block], k, level) for block in F]
        total = 0
        for combo in product(*(sorted(v.items()) for v in vecs)):
            mult = 1
            for _, z in combo:
                mult *= z
            total += mult * deg_m04_parts([mu for mu, _ in combo], level)
        pairing[F] = total
    return DivisorClassM0n(spec.n, pairing)


# -- genus one ---------------------------------------------------------------

def r_genus1(mu: int, m: int) -> int:
    """Rank of V(sl_2, mu w_1, m) on M_{1,1}."""
    if not 0 <= mu <= m:
        raise ValueError("need 0 <= mu <= m")
    return 0 if mu % 2 else m + 1 - mu


def c1_genus1(mu: int, m: int) -> Fraction:
    """Degree of V(sl_2, mu w_1, m) on M_{1,1}."""
    if not 0 <= mu <= m:
        raise ValueError("need 0 <= mu <= m")
    if mu % 2:
        return Fraction(0)
    return -Fraction(mu * mu - 3 * m * mu + 2 * m * m - mu + 2 * m, 24)


# -- tabulated classes -------------------------------------------------------

@dataclass(frozen=True)
class PaperTable:
    space: str
    family: str
    entries: dict  # m -> DivisorClassSmall

    def __getitem__(self, m):
        return self.entries[m]


F = Fraction

# c_1(V[m]) for V(sl_2, {}, m) on M_3 in (lambda, delta_irr, delta_1)
_M3_QUARTIC = {
    1: (4, -1, 0),
    2: (27, -8, -3),
    3: (108, -37, -16),
    4: (329, -128, -64),
    5: (840, -366, -192),
    6: (1890, -912, -502),
    7: (3864, -2046, -1152),
    8: (7326, -4224, -2438),
    9: (13068, -8151, -4752),
}

# c_1(V[m]) for V(sl_3, {}, m) on M_2 in (lambda, delta_0, delta_1)
_M2_CUBIC = {
    1: (9, -2, 0),
    2: (0, -11, 9),
    3: (332, -94, -34),
    4: (1152, -361, -153),
    5: (3330, -964, -738),
}

# c_1(V[m]) for V(sl_2, {2m w_1}, 2m) on M_{2,1} in (lambda, psi_1, delta_irr, delta_1)
_M21_QUADRICS = {
    1: (F(9, 2), 3, F(-5, 4), F(-3, 2)),
    2: (19, 19, -7, -8),
    3: (F(99, 2), 66, F(-91, 4), F(-51, 2)),
    4: (102, 170, F(-281, 5), F(-312, 5)),
    5: (F(365, 2), 365, F(-469, 4), F(-259, 2)),
    6: (297, 693, -218, -240),
    7: (F(903, 2), 1204, F(-1491, 4), F(-819, 2)),
}

_TABLES = {
    ("M3", "coble-quartic"): _M3_QUARTIC,
    ("M2", "coble-cubic"): _M2_CUBIC,
    ("M21", "two-quadrics"): _M21_QUADRICS,
}

TABLE_BUNDLES = {
    # (algebra, weights, level) of V = V[1]
    "coble-quartic": ("sl_2", (), 1),
    "coble-cubic": ("sl_3", (), 1),
    "two-quadrics": ("sl_2", ("2w_1",), 2),
}


def paper_table(space: str, family: str) -> PaperTable:
    try:
        raw = _TABLES[(space, family)]
    except KeyError:
        raise KeyError(f"no table for ({space}, {family})") from None
    return PaperTable(space, family, {m: DivisorClassSmall(space, c) for m, c in raw.items()})


def table_for(family: str) -> PaperTable:
    for (space, fam) in _TABLES:
        if fam == family:
            return paper_table(space, fam)
    raise KeyError(family)
