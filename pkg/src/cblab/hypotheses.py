"""Boundary hypotheses for extending geometric interpretations: Delta-invariant
zero rank scaling, free restriction data, quasi rank one factorization, and
socle scaling of matching degree."""

from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import matrix_rank
from .ranks import (BoundaryStratum, boundary_strata, rank, rank_sequence,
                    restriction_data)
from .scaling import InconclusiveError, ScalingReport, classify
from .weights import BundleSpec, Weight, dual, scale_bundle, scale_weight


def is_free(data) -> bool:
    """Affine independence of the weights (fundamental coordinates)."""
    ws = [d[0] if isinstance(d, tuple) else d for d in data]
    if not ws:
        raise ValueError("restriction data must be nonempty")
    ws = [w.weight if hasattr(w, "weight") else w for w in ws]
    rows = [list(w.coords) + [1] for w in ws]
    return matrix_rank(rows) == len(rows)


def is_quasi_rank_one(data) -> bool:
    return sum(1 for _, r1, r2 in data if r1 * r2 > 1) <= 1


@dataclass
class SocleResult:
    mu: Weight
    product: int
    report: ScalingReport | None
    passed: bool
    reason: str = ""

    def to_json(self):
        return {"mu": list(self.mu.parts), "product": self.product,
                "report": self.report.to_json() if self.report else None,
                "pass": self.passed, "reason": self.reason}


def socle_sequence(spec: BundleSpec, stratum: BoundaryStratum, mu: Weight, M: int) -> tuple:
    vals = [1]
    for m in range(1, M + 1):
        sm = scale_bundle(spec, m)
        mm = scale_weight(mu, m)
        if stratum.kind == "irreducible":
            vals.append(rank(sm.with_weights(sm.weights + (mm, dual(mm)), genus=spec.genus - 1)))
            continue
        inside = tuple(sm.weights[i - 1] for i in sorted(stratum.J))
        outside = tuple(w for i, w in enumerate(sm.weights, 1) if i not in stratum.J)
        r1 = rank(sm.with_weights(inside + (mm,), genus=stratum.g1))
        r2 = rank(sm.with_weights(outside + (dual(mm),), genus=spec.genus - stratum.g1))
        vals.append(r1 * r2)
    return tuple(vals)


def socle_check(spec: BundleSpec, stratum: BoundaryStratum, parent: ScalingReport, M: int,
                data=None) -> SocleResult | None:
    """Scaling of the unique restriction factor of rank > 1, if there is one."""
    if data is None:
        data = restriction_data(spec, stratum)
    big = [(mu, r1 * r2) for mu, r1, r2 in data if r1 * r2 > 1]
    if not big:
        return None
    if len(big) > 1:
        raise ValueError("socle needs quasi rank one factorization")
    mu, prod = big[0]
    seq = socle_sequence(spec, stratum, mu, M)
    try:
        rep = classify(seq)
    except InconclusiveError as exc:
        return SocleResult(mu, prod, None, False, f"socle sequence inconclusive: {exc}")
    if rep.Delta != 0:
        return SocleResult(mu, prod, rep, False, f"socle Delta = {rep.Delta} != 0")
    if rep.D != parent.D:
        return SocleResult(mu, prod, rep, False, f"socle degree {rep.D} != {parent.D}")
    return SocleResult(mu, prod, rep, True)


@dataclass
class StratumReport:
    stratum: BoundaryStratum
    data: list
    free: bool
    quasi_rank_one: bool
    socle: SocleResult | None
    conserved: bool
    failure: str | None = None

    @property
    def passed(self):
        return self.failure is None

    def to_json(self):
        return {"stratum": str(self.stratum),
                "data": [{"mu": list(mu.parts), "rank1": r1, "rank2": r2}
                         for mu, r1, r2 in self.data],
                "free": self.free, "quasi_rank_one": self.quasi_rank_one,
                "socle": self.socle.to_json() if self.socle else None,
                "conserved": self.conserved,
                "verdict": "pass" if self.passed else f"fail: {self.failure}"}


@dataclass
class HypothesisReport:
    spec: BundleSpec
    parent: ScalingReport | None
    strata: list = field(default_factory=list)
    failure: str | None = None

    @property
    def passed(self):
        return self.failure is None and all(s.passed for s in self.strata)

    def first_failure(self):
        if self.failure:
            return self.failure
        for s in self.strata:
            if not s.passed:
                return f"{s.stratum}: {s.failure}"
        return None

    def to_json(self):
        return {"spec": self.spec.to_json(),
                "parent": self.parent.to_json() if self.parent else None,
                "strata": [s.to_json() for s in self.strata],
                "verdict": "pass" if self.passed else f"fail: {self.first_failure()}"}


def check_stratum(spec, stratum, parent, M) -> StratumReport:
    data = restriction_data(spec, stratum)
    total = sum(r1 * r2 for _, r1, r2 in data)
    conserved = total == rank(spec)
    if not conserved:
        raise AssertionError(f"factorization at {stratum} gives {total}, rank is {rank(spec)}")
    free = is_free(data) if data else True
    qr1 = is_quasi_rank_one(data)
    socle = None
    failure = None
    if not free:
        failure = "restriction data not free"
    elif not qr1:
        failure = "factorization not quasi rank one"
    else:
        socle = socle_check(spec, stratum, parent, M, data)
        if socle is not None and not socle.passed:
            failure = socle.reason
    return StratumReport(stratum, data, free, qr1, socle, conserved, failure)


def check_precisQ(spec: BundleSpec, M: int = 6) -> HypothesisReport:
    """Check all four boundary hypotheses at every boundary stratum."""
    if spec.genus > 2:
        raise ValueError("boundary strata are supported for genus <= 2")
    if spec.genus == 0 and spec.n < 4:
        raise ValueError("M_{0,n} has no boundary for n < 4")
    try:
        parent = classify(rank_sequence(spec, M))
    except InconclusiveError as exc:
        return HypothesisReport(spec, None, [], f"rank sequence inconclusive: {exc}")
    rep = HypothesisReport(spec, parent)
    if parent.Delta != 0:
        rep.failure = f"rank scaling has Delta = {parent.Delta}"
    for st in boundary_strata(spec.genus, spec.n):
        rep.strata.append(check_stratum(spec, st, parent, M))
    return rep
