"""Divisor classes: F-curve pairing vectors on M_{0,n} and fixed bases on
M_{1,1}, M_2, M_3 and M_{2,1}."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .linalg import solve

FCurve = tuple  # tuple of 4 sorted tuples, ordered by smallest element


@lru_cache(maxsize=None)
def _fcurves(n):
    out = []

    def rec(i, blocks):
        if i > n:
            if len(blocks) == 4:
                out.append(tuple(tuple(b) for b in blocks))
            return
        # prune: remaining points must be able to fill the missing blocks
        if 4 - len(blocks) > n - i + 1:
            return
        for b in blocks:
            b.append(i)
            rec(i + 1, blocks)
            b.pop()
        if len(blocks) < 4:
            blocks.append([i])
            rec(i + 1, blocks)
            blocks.pop()

    rec(1, [])
    return tuple(out)


def fcurves(n: int) -> list[FCurve]:
    """All partitions of {1..n} into four blocks."""
    if n < 4:
        raise ValueError("F-curves need n >= 4")
    return list(_fcurves(n))


def pair_boundary_fcurve(I, F: FCurve, n: int | None = None) -> int:
    """Intersection number of delta_I with the F-curve F."""
    if n is None:
        n = sum(len(b) for b in F)
    I = frozenset(I)
    Ic = frozenset(range(1, n + 1)) - I
    if not 2 <= len(I) <= n - 2:
        raise ValueError("boundary divisor needs 2 <= |I| <= n-2")
    blocks = [frozenset(b) for b in F]
    for S in (I, Ic):
        for a, b in combinations(blocks, 2):
            if S == a | b:
                return 1
    for S in (I, Ic):
        for b in blocks:
            if S == b and len(b) >= 2:
                return -1
    return 0


@dataclass(frozen=True)
class DivisorClassM0n:
    """A class on M_{0,n} recorded by its pairings with every F-curve."""

    n: int
    pairing: dict = field(hash=False)

    def __post_init__(self):
        p = {F: Fraction(self.pairing.get(F, 0)) for F in fcurves(self.n)}
        extra = set(self.pairing) - set(p)
        if extra:
            raise ValueError(f"unknown F-curves {sorted(extra)}")
        object.__setattr__(self, "pairing", p)

    @classmethod
    def zero(cls, n):
        return cls(n, {})

    @classmethod
    def boundary(cls, n, I):
        return cls(n, {F: pair_boundary_fcurve(I, F, n) for F in fcurves(n)})

    def _check(self, other):
        if not isinstance(other, DivisorClassM0n) or other.n != self.n:
            raise ValueError("divisor classes live on different spaces")

    def __add__(self, other):
        self._check(other)
        return DivisorClassM0n(self.n, {F: v + other.pairing[F] for F, v in self.pairing.items()})

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, c):
        c = Fraction(c)
        return DivisorClassM0n(self.n, {F: c * v for F, v in self.pairing.items()})

    def __neg__(self):
        return (-1) * self

    def __eq__(self, other):
        return isinstance(other, DivisorClassM0n) and self.n == other.n and \
            self.pairing == other.pairing

    def is_zero(self):
        return not any(self.pairing.values())

    def values(self):
        return [self.pairing[F] for F in fcurves(self.n)]


NONADJACENT_N5 = ((1, 3), (1, 4), (2, 4), (2, 5), (3, 5))


def to_nonadjacent_basis_n5(c: DivisorClassM0n) -> tuple:
    """Coordinates (x13, x14, x24, x25, x35) with c = sum x_B delta_B."""
    if c.n != 5:
        raise ValueError("the nonadjacent basis is for n = 5")
    Fs = fcurves(5)
    A = [[pair_boundary_fcurve(B, F, 5) for B in NONADJACENT_N5] for F in Fs]
    b = [c.pairing[F] for F in Fs]
    return tuple(solve(A, b))


def from_nonadjacent_basis_n5(x) -> DivisorClassM0n:
    out = DivisorClassM0n.zero(5)
    for B, xb in zip(NONADJACENT_N5, x):
        out = out + Fraction(xb) * DivisorClassM0n.boundary(5, B)
    return out


# -- small genus -------------------------------------------------------------

SPACES = {
    "M11": ("deg",),
    "M2": ("lambda", "delta_irr", "delta_1"),
    "M3": ("lambda", "delta_irr", "delta_1"),
    "M21": ("lambda", "psi_1", "delta_irr", "delta_1"),
}
# spaces where lambda = delta_irr/10 + delta_1/5 holds
_MUMFORD = {"M2", "M21"}


@dataclass(frozen=True)
class DivisorClassSmall:
    space: str
    coords: tuple

    def __post_init__(self):
        if self.space not in SPACES:
            raise ValueError(f"unknown space {self.space!r}")
        c = tuple(Fraction(x) for x in self.coords)
        if len(c) != len(SPACES[self.space]):
            raise ValueError(f"{self.space} needs coordinates {SPACES[self.space]}")
        object.__setattr__(self, "coords", c)

    @classmethod
    def make(cls, space, **kw):
        names = SPACES[space]
        unknown = set(kw) - set(names)
        if unknown:
            raise ValueError(f"unknown coordinates {sorted(unknown)} on {space}")
        return cls(space, tuple(kw.get(x, 0) for x in names))

    @property
    def basis(self):
        return SPACES[self.space]

    def normalized(self) -> tuple:
        """Coordinates after eliminating lambda where the Mumford relation applies."""
        if self.space not in _MUMFORD:
            return self.coords
        d = dict(zip(self.basis, self.coords))
        lam = d.pop("lambda")
        d["delta_irr"] += lam / 10
        d["delta_1"] += lam / 5
        return tuple(d.values())

    def normalized_basis(self):
        return tuple(b for b in self.basis if not (self.space in _MUMFORD and b == "lambda"))

    def _check(self, other):
        if not isinstance(other, DivisorClassSmall) or other.space != self.space:
            raise ValueError("divisor classes live on different spaces")

    def __add__(self, other):
        self._check(other)
        coords = tuple(a + b for a, b in zip(self.coords, other.coords))
        return DivisorClassSmall(self.space, coords)

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, c):
        c = Fraction(c)
        return DivisorClassSmall(self.space, tuple(c * a for a in self.coords))

    def __neg__(self):
        return (-1) * self

    def __eq__(self, other):
        return isinstance(other, DivisorClassSmall) and other.space == self.space and \
            self.normalized() == other.normalized()

    def __hash__(self):
        return hash((self.space, self.normalized()))

    def is_zero(self):
        return not any(self.normalized())

    def as_dict(self, normalized=False):
        if normalized:
            return dict(zip(self.normalized_basis(), self.normalized()))
        return dict(zip(self.basis, self.coords))

    def __str__(self):
        return _fmt_combination(self.as_dict(normalized=self.space in _MUMFORD))


def _fmt_combination(d):
    parts = []
    for name, c in d.items():
        if c:
            parts.append(f"{c}*{name}")
    return " + ".join(parts) or "0"


def hyperelliptic_m3() -> DivisorClassSmall:
    """H = 9 lambda - delta_irr - 3 delta_1 on M_3."""
    return DivisorClassSmall("M3", (9, -1, -3))


def decompose_m3(c: DivisorClassSmall) -> tuple:
    """Write c = a H + b delta_1 if possible; returns (a, b) or None."""
    if c.space != "M3":
        raise ValueError("expected a class on M3")
    lam, dirr, d1 = c.coords
    a = lam / 9
    if dirr != -a:
        return None
    return a, d1 + 3 * a


# M_2: pairings of (Delta_0, Delta_{1,empty}) with the pigtail and elliptic F-curves
M2_PAIRING = ((Fraction(-2), Fraction(1)), (Fraction(1), Fraction(-1, 12)))


def m2_solve(pigtail, elliptic) -> tuple:
    """Coefficients (a, b) of a Delta_0 + b Delta_{1,empty} with the given F-pairings."""
    x = solve([list(r) for r in M2_PAIRING], [Fraction(pigtail), Fraction(elliptic)])
    return tuple(x)
