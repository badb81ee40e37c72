"""Rank-scaling classification and first Chern class scaling identities."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable

from .chern import c1_genus1, deg_m04_parts, r_genus1
from .picard import decompose_m3, m2_solve


def binom(n: int, k: int) -> int:
    """C(n, k), zero when n < 0 or k is outside 0..n."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


class InconclusiveError(ValueError):
    pass


@dataclass
class ScalingReport:
    d: int
    D: int
    Delta: int
    candidates: list
    samples: tuple
    coefficients: object = None
    residual: object = None

    def to_json(self):
        out = {"d": self.d, "D": self.D, "Delta": self.Delta,
               "candidates": list(self.candidates),
               "samples": [str(x) for x in self.samples]}
        return out


def _differences(vals):
    return [b - a for a, b in zip(vals, vals[1:])]


def polynomial_degree(vals):
    """Smallest d whose (d+1)-th differences vanish, with at least two of them."""
    rows = [list(vals)]
    while len(rows[-1]) > 2:
        nxt = _differences(rows[-1])
        if all(x == 0 for x in nxt):
            d = len(rows) - 1
            return d, rows[d][0]
        rows.append(nxt)
    raise InconclusiveError(
        f"{len(vals)} samples are not consistent with a polynomial of degree <= {len(vals) - 3}")


def _is_veronese_hilbert(vals):
    return all(v == (m + 1) * (2 * m + 1) for m, v in enumerate(vals))


def classify(seq) -> ScalingReport:
    """Interpolate m -> rk V[m] and read off dimension, degree and Delta."""
    vals = tuple(seq.values if hasattr(seq, "values") else seq)
    if vals[0] != 1:
        raise ValueError("rank sequences start with f(0) = 1")
    if len(vals) < 2:
        raise InconclusiveError("need at least f(0), f(1)")
    d, D = polynomial_degree(vals)
    Delta = d + D - vals[1]
    if Delta != 0:
        cands = ["not minimal degree"]
    elif D == 1:
        cands = ["projective"]
    elif D == 2:
        cands = ["quadric"]
        if d == 1:
            cands.append("rational normal curve of degree 2")
    elif d == 1:
        cands = [f"rational normal curve of degree {D}"]
    elif d == 2 and D == 4 and _is_veronese_hilbert(vals):
        cands = ["Veronese surface", "cone over quartic rational normal curve", "scroll S(1,3)"]
    else:
        cands = [f"scroll S(a_1..a_{d}) with sum {D}"]
    return ScalingReport(d, D, Delta, cands, vals)


# -- identity coefficients ---------------------------------------------------

@dataclass
class IdentityCoefficients:
    """c_1(V[m]) = sum_j beta_j(m) c_1(V[j]) over j in `indices` (plus an anomaly)."""

    kind: str
    indices: tuple
    fn: Callable = field(repr=False)
    anomaly_support: tuple = ()

    @property
    def D(self):
        return len(self.indices)

    def __call__(self, m: int) -> tuple:
        return tuple(Fraction(x) for x in self.fn(m))

    def as_dict(self, m):
        return dict(zip(self.indices, self(m)))


def identity_coeffs_general(R: int, D: int) -> IdentityCoefficients:
    """Coefficients from eliminating the auxiliary bundles W_2..W_D."""
    if R < 1 or D < 1:
        raise ValueError("need R >= 1 and D >= 1")

    def a(m):
        s = binom(m + R - 1, R)
        for i in range(2, D + 1):
            s += (-1) ** (i - 1) * (i - 1) * binom(D, i) * binom(m - i + R - 1, R)
        return Fraction(s)

    def w(i, m):
        return Fraction((-1) ** i * binom(m - i + R - 1, R - 1))

    # W_j as vectors over c_1(V[1..D]), solved triangularly at m = j
    W = {}
    for j in range(2, D + 1):
        vec = [Fraction(0)] * D
        vec[j - 1] += 1
        vec[0] -= a(j)
        for i in range(2, j):
            c = w(i, j)
            if c:
                vec = [x - c * y for x, y in zip(vec, W[i])]
        lead = w(j, j)
        W[j] = [x / lead for x in vec]

    def beta(m):
        vec = [Fraction(0)] * D
        vec[0] = a(m)
        for i in range(2, D + 1):
            c = w(i, m)
            if c:
                vec = [x + c * y for x, y in zip(vec, W[i])]
        return vec

    return IdentityCoefficients(f"general(R={R},D={D})", tuple(range(1, D + 1)), beta)


def _quadric(d):
    def f(m):
        b1 = binom(m + d + 1, d + 2) - binom(m + d - 1, d + 2) - (d + 3) * binom(m + d - 1, d + 1)
        return (b1, binom(m + d - 1, d + 1))
    return f


def _veronese(m):
    A1 = (-7 * binom(m + 3, 5) + 20 * binom(m + 2, 5) - 23 * binom(m + 1, 5)
          - 6 * binom(m + 3, 6) + 8 * binom(m + 2, 6) - 3 * binom(m + 1, 6) + binom(m + 5, 6))
    A2 = binom(m + 3, 5) - 6 * binom(m + 2, 5) + 15 * binom(m + 1, 5)
    A3 = binom(m + 2, 5) - 6 * binom(m + 1, 5)
    A4 = binom(m + 1, 5)
    return (A1, A2, A3, A4)


def _scroll12(m):
    A1 = (binom(m + 4, 5) - 6 * binom(m + 2, 4) + 12 * binom(m + 1, 4)
          - 3 * binom(m + 2, 5) + 2 * binom(m + 1, 5))
    A2 = binom(m + 2, 4) - 5 * binom(m + 1, 4)
    A3 = binom(m + 1, 4)
    return (A1, A2, A3)


def _p1o3(m):
    A1 = (binom(m + 3, 4) - 5 * binom(m + 1, 3) - 3 * binom(m + 1, 4)
          + 8 * binom(m, 3) + 2 * binom(m, 4))
    A2 = binom(m + 1, 3) - 4 * binom(m, 3)
    A3 = binom(m, 3)
    return (A1, A2, A3)


CLOSED_KINDS = ("quadric", "veronese", "scroll12", "p1o3")
CONJECTURAL_KINDS = ("coble-quartic", "coble-cubic", "two-quadrics")


def identity_coeffs_closed(kind: str, d: int | None = None) -> IdentityCoefficients:
    if kind == "quadric":
        if d is None or d < 1:
            raise ValueError("quadric needs its dimension d >= 1")
        return IdentityCoefficients(f"quadric({d})", (1, 2), _quadric(d))
    if kind == "veronese":
        return IdentityCoefficients(kind, (1, 2, 3, 4), _veronese)
    if kind == "scroll12":
        return IdentityCoefficients(kind, (1, 2, 3), _scroll12)
    if kind == "p1o3":
        return IdentityCoefficients(kind, (1, 2, 3), _p1o3)
    raise ValueError(f"unknown closed-form kind {kind!r}")


def _coble_quartic(m):
    return (binom(7 + m, m - 1) - binom(m + 3, 8) - 165 * binom(m + 3, 7), binom(m + 3, 7))


def _coble_cubic(m):
    return (binom(m + 8, 9) + binom(m + 5, 9) - 55 * binom(m + 5, 8), binom(m + 5, 8))


def _two_quadrics(m):
    return (Fraction((m - 4) * (m - 2) * m * (m + 1) * (7 * m - 5), 12),
            binom(m + 3, 5) - 21 * binom(m + 1, 5), binom(m + 1, 5))


def identity_coeffs_conjectural(kind: str) -> IdentityCoefficients:
    if kind == "coble-quartic":
        return IdentityCoefficients(kind, (1, 4), _coble_quartic, ("H", "delta_1"))
    if kind == "coble-cubic":
        return IdentityCoefficients(kind, (1, 3), _coble_cubic, ("delta_1",))
    if kind == "two-quadrics":
        return IdentityCoefficients(kind, (1, 2, 4), _two_quadrics, ())
    raise ValueError(f"unknown conjectural kind {kind!r}")


def identity_coeffs(kind: str, **kw) -> IdentityCoefficients:
    if kind in CLOSED_KINDS:
        return identity_coeffs_closed(kind, kw.get("d"))
    if kind in CONJECTURAL_KINDS:
        return identity_coeffs_conjectural(kind)
    if kind == "general":
        return identity_coeffs_general(kw["R"], kw["D"])
    raise ValueError(f"unknown identity kind {kind!r}")


def predicted_class(classes, coeffs: IdentityCoefficients, m: int):
    total = None
    for j, b in coeffs.as_dict(m).items():
        term = b * classes[j]
        total = term if total is None else total + term
    return total


def verify_identity(classes, coeffs: IdentityCoefficients, m: int):
    """Residual (predicted - actual); zero means the identity holds."""
    missing = [j for j in coeffs.indices + (m,) if j not in classes]
    if missing:
        raise KeyError(f"classes missing for m in {sorted(set(missing))}")
    return predicted_class(classes, coeffs, m) - classes[m]


def split_anomaly(resid, support):
    """Coefficients of resid over the anomaly support, or None if it is not in their span."""
    if not support:
        return {} if resid.is_zero() else None
    if tuple(support) == ("H", "delta_1"):
        ab = decompose_m3(resid)
        return None if ab is None else dict(zip(support, ab))
    if tuple(support) == ("delta_1",):
        d = resid.as_dict(normalized=True)
        if any(v for k, v in d.items() if k != "delta_1"):
            return None
        return {"delta_1": d["delta_1"]}
    raise ValueError(f"unsupported anomaly support {support}")


# -- the level-one sl_2 anomaly on M_2 ---------------------------------------

def pigtail_sum(m: int) -> int:
    """sum over 0 <= a, b <= m of deg V(sl_2, {a, a, b, b}, m) on M_{0,4}."""
    return sum(deg_m04_parts([(a, 0), (a, 0), (b, 0), (b, 0)], m)
               for a in range(m + 1) for b in range(m + 1))


def elliptic_sum(m: int) -> Fraction:
    """sum over mu of r_mu c_{mu*} for V(sl_2, mu, m) on M_{1,1}."""
    return sum((r_genus1(mu, m) * c1_genus1(mu, m) for mu in range(m + 1)), Fraction(0))


def anomaly_m2_level1(m: int) -> tuple:
    """(alpha(m), beta(m)) with D_m = alpha Delta_0 + beta Delta_{1,empty}."""
    if m < 1:
        raise ValueError("m >= 1")
    scale = binom(m + 3, 4)
    pig = scale * pigtail_sum(1) - pigtail_sum(m)
    ell = scale * elliptic_sum(1) - elliptic_sum(m)
    return m2_solve(pig, ell)


def anomaly_m2_closed(m: int) -> Fraction:
    s, odd = divmod(m, 2)
    if odd:
        return Fraction(s * (s + 1) ** 2 * (s + 2), 3)
    return Fraction(s * (s + 1) * (2 * s * s + 2 * s - 1), 6)

