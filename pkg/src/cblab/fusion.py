"""Level-l fusion coefficients of sl(r+1) from the small quantum cohomology of
Gr(r+1, r+1+l): classical Littlewood-Richardson products followed by rim-hook
reduction.

Partitions are plain tuples. Inside the engine they are padded with zeros to
exactly k = r+1 rows.
"""

from __future__ import annotations

import json
import os
import threading
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from .weights import Weight, enumerate_level_weights


def _pad(p, k):
    p = tuple(int(x) for x in p)
    while p and p[-1] == 0:
        p = p[:-1]
    if len(p) > k:
        return None
    return p + (0,) * (k - len(p))


def _strip(p):
    p = tuple(p)
    while p and p[-1] == 0:
        p = p[:-1]
    return p


# -- classical Littlewood-Richardson ----------------------------------------

def _label_rows(shape, prev, j, count, k):
    """Ways to add `count` copies of label j (0-based) to `shape` as a horizontal
    strip in rows j..k-1, keeping the reverse reading word a lattice word.

    prev[i] is the number of (j-1)-labels in rows <= i.  Yields (new shape,
    cumulative counts of label j by row).
    """
    out = []
    new = list(shape)
    cum = [0] * k

    def rec(i, left, running):
        if i == k:
            if left == 0:
                out.append((tuple(new), tuple(cum)))
            return
        if i < j:
            rec(i + 1, left, 0)
            return
        cap = left
        if i > 0:
            cap = min(cap, shape[i - 1] - shape[i])
        if j > 0:
            # lattice: labels j in rows <= i cannot exceed labels j-1 in rows < i
            cap = min(cap, prev[i - 1] - running)
        for a in range(cap, -1, -1):
            new[i] = shape[i] + a
            cum[i] = running + a
            rec(i + 1, left - a, running + a)
        new[i] = shape[i]
        cum[i] = 0

    rec(0, count, 0)
    return out


@lru_cache(maxsize=200_000)
def _lr_product(lam, mu, k):
    states = {(lam, None): 1}
    for j, mj in enumerate(mu):
        nxt = defaultdict(int)
        for (shape, prev), c in states.items():
            for st in _label_rows(shape, prev, j, mj, k):
                nxt[st] += c
        states = nxt
    out = defaultdict(int)
    for (shape, _), c in states.items():
        out[shape] += c
    return dict(out)


def lr_product(lam, mu, k: int) -> dict:
    """s_lam * s_mu in k variables, as {rho (padded to k rows): c}."""
    a, b = _pad(lam, k), _pad(mu, k)
    if a is None or b is None:
        return {}
    # fewer labels is cheaper: put the smaller partition in the content slot
    if sum(b) > sum(a):
        a, b = b, a
    return _lr_product(a, _strip(b), k)


def lr_coefficient(lam, mu, rho, k: int | None = None) -> int:
    if k is None:
        k = max(len(_strip(lam)), len(_strip(mu)), len(_strip(rho)), 1)
    rr = _pad(rho, k)
    if rr is None or sum(rr) != sum(lam) + sum(mu):
        return 0
    return lr_product(lam, mu, k).get(rr, 0)


# -- quantum product ---------------------------------------------------------

def rim_hook_reduce(rho, k: int, nn: int):
    """Reduce a partition with <= k rows modulo border strips of size nn.

    Returns (sign, reduced partition, number of strips) or None if the result
    is not a partition.
    """
    beta = [rho[i] + k - 1 - i for i in range(k)]
    seen = set(beta)
    sign, d = 1, 0
    while True:
        b = max(beta)
        if b < nn:
            break
        nb = b - nn
        if nb in seen:
            return None
        height = 1 + sum(1 for x in beta if nb < x < b)
        if (k - height) % 2:
            sign = -sign
        seen.discard(b)
        seen.add(nb)
        beta[beta.index(b)] = nb
        d += 1
    beta.sort(reverse=True)
    return sign, tuple(beta[i] - (k - 1 - i) for i in range(k)), d


@dataclass
class QuantumProduct:
    r: int
    level: int
    terms: dict = field(default_factory=dict)  # (partition, degree) -> int

    def coefficient(self, nu, d: int) -> int:
        return self.terms.get((_pad(nu, self.r + 1), d), 0)


@lru_cache(maxsize=200_000)
def _qprod(lam, mu, k, level):
    nn = k + level
    out = defaultdict(int)
    for rho, c in lr_product(lam, mu, k).items():
        red = rim_hook_reduce(rho, k, nn)
        if red is None:
            continue
        sign, nu, d = red
        out[(nu, d)] += sign * c
    return {key: v for key, v in out.items() if v}


def _check_box(p, k, level):
    q = _pad(p, k)
    if q is None or (q and q[0] > level):
        raise ValueError(f"partition {tuple(p)} does not fit the {k}x{level} box")
    return q


def quantum_product(lam, mu, r: int, level: int) -> QuantumProduct:
    k = r + 1
    a, b = _check_box(lam, k, level), _check_box(mu, k, level)
    return QuantumProduct(r, level, dict(_qprod(a, b, k, level)))


def _tau(kappa, level):
    """sigma_(level) * sigma_kappa = q^e sigma_tau(kappa); returns (tau, e)."""
    if kappa[-1] == 0:
        return (level,) + kappa[:-1], 0
    return tuple(x - 1 for x in kappa), 1


def _tau_inv(rho, level):
    if rho[0] == level:
        return rho[1:] + (0,), 0
    return tuple(x + 1 for x in rho), 1


def complement(nu, k, level):
    return tuple(level - nu[k - 1 - i] for i in range(k))


# -- fusion coefficients -----------------------------------------------------

def _parts(w):
    return w.parts if isinstance(w, Weight) else tuple(w)


def _fuse3_raw(a, b, c, k, level):
    total = sum(a) + sum(b) + sum(c)
    if total % k:
        return 0
    M = total // k
    s = M - level
    if s < 0:
        kappa = tuple(M - c[k - 1 - i] for i in range(k))
        if kappa[-1] < 0:
            return 0
        return lr_product(a, b, k).get(kappa, 0)
    # coefficient of q^s sigma_{c^vee} in sigma_a * sigma_b * sigma_(l)^s
    target, e = complement(c, k, level), 0
    for _ in range(s):
        target, de = _tau_inv(target, level)
        e += de
    if e > s:
        return 0
    return _qprod(a, b, k, level).get((target, s - e), 0)


def fuse3(lam, mu, nu, level: int, cache: FusionCache | None = None) -> int:
    """Rank of V(sl_{r+1}, {lam, mu, nu}, level) on M_{0,3}."""
    a, b, c = _parts(lam), _parts(mu), _parts(nu)
    k = len(a)
    if len(b) != k or len(c) != k:
        raise ValueError("weights of different rank")
    for p in (a, b, c):
        if p[0] > level:
            raise ValueError(f"weight {p} exceeds level {level}")
    key = tuple(sorted((a, b, c)))
    cache = cache if cache is not None else default_cache()
    if cache is not None:
        hit = cache.get(k - 1, level, key)
        if hit is not None:
            return hit
    val = _fuse3_raw(*key, k, level)
    if cache is not None:
        cache.put(k - 1, level, key, val)
    return val


def fuse3_sl2_oracle(a: int, b: int, c: int, level: int) -> int:
    if (a + b + c) % 2:
        return 0
    return int(abs(a - b) <= c <= min(a + b, 2 * level - a - b))


@lru_cache(maxsize=500_000)
def _fusion_product(a, b, level):
    k = len(a)
    out = {}
    for (kappa, d), c in _qprod(a, b, k, level).items():
        # sigma_(l) acts as a simple current; walk it forward until the d-th
        # degree-0 step.  The endpoint is the complement of the third weight.
        cur, zeros = kappa, 0
        while zeros < d:
            cur, e = _tau(cur, level)
            zeros += 1 - e
        nu = tuple(x - cur[-1] for x in cur)
        out[nu] = out.get(nu, 0) + c
    return out


def fusion_product(lam, mu, level: int) -> dict:
    """lam (x) mu in the level-l fusion ring, as {Weight: multiplicity}.

    The multiplicity of kappa is fuse3(lam, mu, dual(kappa)).
    """
    a, b = _parts(lam), _parts(mu)
    if a > b:
        a, b = b, a
    return {Weight(p): c for p, c in _fusion_product(a, b, level).items()}


def fusion_product_raw(a, b, level):
    """Same as fusion_product on raw part tuples; results shared, do not mutate."""
    if a > b:
        a, b = b, a
    return _fusion_product(a, b, level)


def fusion_basis(r: int, level: int) -> list[Weight]:
    return enumerate_level_weights(r, level)


# -- persistent cache --------------------------------------------------------

class FusionCache:
    """JSON-lines memo of fuse3 values keyed by (r, level, sorted triple)."""

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path else None
        self._mem: dict = {}
        self._pending: list = []
        self._lock = threading.Lock()
        if self.path and self.path.exists():
            self._load()

    def _load(self):
        with open(self.path) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                rec = json.loads(line)
                key = (rec["r"], rec["l"], tuple(sorted(
                    (tuple(rec["a"]), tuple(rec["b"]), tuple(rec["c"])))))
                val = int(rec["N"])
                old = self._mem.get(key)
                if old is not None and old != val:
                    raise ValueError(f"conflicting cache records for {key}: {old} vs {val}")
                self._mem[key] = val

    def __len__(self):
        return len(self._mem)

    def get(self, r, level, triple):
        return self._mem.get((r, level, triple))

    def put(self, r, level, triple, val):
        key = (r, level, triple)
        with self._lock:
            if key not in self._mem:
                self._mem[key] = val
                self._pending.append(key)

    def flush(self):
        if not self.path:
            return
        with self._lock:
            if not self._pending:
                return
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a") as fh:
                for key in self._pending:
                    fh.write(_record(key, self._mem[key]) + "\n")
            self._pending.clear()

    def compact(self):
        """Rewrite the file with one record per key."""
        if not self.path:
            return
        with self._lock:
            tmp = self.path.with_suffix(self.path.suffix + ".tmp")
            with open(tmp, "w") as fh:
                for key in sorted(self._mem):
                    fh.write(_record(key, self._mem[key]) + "\n")
            os.replace(tmp, self.path)
            self._pending.clear()


def _record(key, val):
    r, level, (a, b, c) = key
    return json.dumps({"r": r, "l": level, "a": list(a), "b": list(b), "c": list(c),
                       "N": str(val)})


_default: list = []


def default_cache() -> FusionCache | None:
    if not _default:
        path = os.environ.get("CBLAB_CACHE")
        _default.append(FusionCache(path) if path else None)
    return _default[0]


def set_default_cache(cache: FusionCache | None):
    _default[:] = [cache]
