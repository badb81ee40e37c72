"""Dominant integral weights of sl(r+1) in partition form, and bundle specs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb


@dataclass(frozen=True, order=True)
class Weight:
    """Weight of sl(r+1) stored as r+1 non-increasing parts with last part 0."""

    parts: tuple[int, ...]

    def __post_init__(self):
        p = tuple(int(x) for x in self.parts)
        object.__setattr__(self, "parts", p)
        if len(p) < 2:
            raise ValueError("need at least two parts (r >= 1)")
        if p[-1] != 0:
            raise ValueError(f"last part must be 0: {p}")
        if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
            raise ValueError(f"parts must be non-increasing: {p}")

    @property
    def r(self) -> int:
        return len(self.parts) - 1

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def coords(self) -> tuple[int, ...]:
        """Fundamental-weight coordinates c_1..c_r."""
        p = self.parts
        return tuple(p[j] - p[j + 1] for j in range(self.r))

    @classmethod
    def from_coords(cls, coords) -> Weight:
        c = list(coords)
        parts = [sum(c[j:]) for j in range(len(c))] + [0]
        return cls(tuple(parts))

    @classmethod
    def zero(cls, r: int) -> Weight:
        return cls((0,) * (r + 1))

    @classmethod
    def fundamental(cls, r: int, i: int, mult: int = 1) -> Weight:
        """mult * omega_i (omega_0 is the zero weight)."""
        c = [0] * r
        if i % (r + 1):
            c[i % (r + 1) - 1] = mult
        return cls.from_coords(c)

    def level(self) -> int:
        """Smallest level admitting this weight, (lambda, theta) = parts[0]."""
        return self.parts[0]

    def __str__(self):
        terms = []
        for j, c in enumerate(self.coords, 1):
            if c:
                terms.append(f"w{j}" if c == 1 else f"{c}w{j}")
        return "+".join(terms) or "0"


@dataclass(frozen=True)
class LevelWeight:
    weight: Weight
    level: int

    def __post_init__(self):
        if self.level < 0:
            raise ValueError("level must be non-negative")
        if self.weight.parts[0] > self.level:
            raise ValueError(f"{self.weight.parts} exceeds level {self.level}")

    @property
    def parts(self):
        return self.weight.parts


@dataclass(frozen=True)
class BundleSpec:
    """The data (sl_{r+1}, weights, level) on M_{g,n}."""

    r: int
    level: int
    genus: int
    weights: tuple[Weight, ...]

    def __post_init__(self):
        ws = tuple(w if isinstance(w, Weight) else Weight(tuple(w)) for w in self.weights)
        object.__setattr__(self, "weights", ws)
        if self.r < 1:
            raise ValueError("r must be >= 1")
        if self.level < 0 or self.genus < 0:
            raise ValueError("level and genus must be non-negative")
        for w in ws:
            if w.r != self.r:
                raise ValueError(f"weight {w.parts} is not a weight of sl({self.r + 1})")
            if w.parts[0] > self.level:
                raise ValueError(f"weight {w.parts} exceeds level {self.level}")

    @property
    def n(self) -> int:
        return len(self.weights)

    def with_weights(self, weights, genus=None) -> BundleSpec:
        return BundleSpec(self.r, self.level, self.genus if genus is None else genus,
                          tuple(weights))

    def to_json(self) -> dict:
        return {"r": self.r, "level": self.level, "genus": self.genus, "n": self.n,
                "weights": [list(w.parts) for w in self.weights]}

    @classmethod
    def from_json(cls, d: dict) -> BundleSpec:
        ws = tuple(Weight(tuple(w)) for w in d["weights"])
        if "n" in d and d["n"] != len(ws):
            raise ValueError(f"n={d['n']} but {len(ws)} weights given")
        return cls(int(d["r"]), int(d["level"]), int(d.get("genus", 0)), ws)


def enumerate_level_weights(r: int, level: int) -> list[Weight]:
    """All weights with parts[0] <= level, ordered by |lambda| then lexicographically."""
    return list(_level_weights(r, level))


@lru_cache(maxsize=None)
def _level_weights(r, level):
    out = []

    def rec(prefix, cap, left):
        if left == 0:
            out.append(Weight(tuple(prefix) + (0,)))
            return
        for x in range(cap + 1):
            rec(prefix + [x], x, left - 1)

    rec([], level, r)
    out.sort(key=lambda w: (w.size, w.parts))
    assert len(out) == comb(level + r, r)
    return tuple(out)


def dual(w: Weight) -> Weight:
    p = w.parts
    k = len(p)
    return Weight(tuple(p[0] - p[k - 1 - i] for i in range(k)))


def scale_weight(w: Weight, m: int) -> Weight:
    return Weight(tuple(m * x for x in w.parts))


def scale_bundle(spec: BundleSpec, m: int) -> BundleSpec:
    if m < 0:
        raise ValueError("scale factor must be non-negative")
    return BundleSpec(spec.r, spec.level * m, spec.genus,
                      tuple(scale_weight(w, m) for w in spec.weights))


def pluss(w: Weight, j: int, level: int) -> Weight:
    """Rotate the affine Dynkin diagram j steps (sigma_1 iterated j times)."""
    if w.parts[0] > level:
        raise ValueError("weight exceeds level")
    p = w.parts
    for _ in range(j % len(p)):
        q = (level,) + p[:-1]
        p = tuple(x - q[-1] for x in q)
    return Weight(p)


def casimir(w: Weight) -> Fraction:
    """(lambda, lambda + 2 rho) with (theta, theta) = 2."""
    p = w.parts
    r = len(p) - 1
    s = sum(x * (x + r + 2 - 2 * i) for i, x in enumerate(p, 1))
    return Fraction(s) - Fraction(w.size ** 2, r + 1)
