"""Command-line driver."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import fusion
from .chern import c1_fvector, deg_m04, paper_table
from .fusion import FusionCache, fuse3
from .hypotheses import check_precisQ
from .picard import DivisorClassM0n, DivisorClassSmall, to_nonadjacent_basis_n5
from .ranks import rank, rank_sequence
from .reproduce import CASES, run_case
from .scaling import (CLOSED_KINDS, CONJECTURAL_KINDS, InconclusiveError, anomaly_m2_level1,
                      classify, identity_coeffs, identity_coeffs_general, split_anomaly,
                      verify_identity)
from .weights import BundleSpec, scale_bundle

EXIT_OK, EXIT_MISMATCH, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


# -- serialization -------------------------------------------------------------

def encode(x):
    """Numbers become strings ("p/q" for proper rationals), recursively."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, dict):
        if "r" in x and "weights" in x:
            return x  # bundle specs stay in their input form
        return {(k if isinstance(k, str) else json.dumps(encode(k))): encode(v)
                for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [encode(v) for v in x]
    if isinstance(x, (DivisorClassM0n, DivisorClassSmall)):
        return encode_class(x)
    if hasattr(x, "to_json"):
        return encode(x.to_json())
    if isinstance(x, (set, frozenset)):
        return [encode(v) for v in sorted(x)]
    return str(x)


def parse_rational(s) -> Fraction:
    return Fraction(s)


def encode_class(c):
    if isinstance(c, DivisorClassM0n):
        return [{"blocks": [list(b) for b in F], "value": encode(v)} for F, v in c.pairing.items()]
    return {"space": c.space, "coords": encode(c.as_dict())}


def decode_class(obj):
    if isinstance(obj, list):
        pairing = {tuple(tuple(b) for b in rec["blocks"]): Fraction(rec["value"]) for rec in obj}
        n = sum(len(b) for b in next(iter(pairing)))
        return DivisorClassM0n(n, pairing)
    coords = {k: Fraction(v) for k, v in obj["coords"].items()}
    return DivisorClassSmall.make(obj["space"], **coords)


def _flatten(prefix, x, out):
    if isinstance(x, dict):
        for k, v in x.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(x, list) and x and all(not isinstance(v, (dict, list)) for v in x):
        out.append((prefix, " ".join(str(v) for v in x)))
    elif isinstance(x, list):
        for i, v in enumerate(x):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append((prefix, x))


def render(payload, fmt, rows=None) -> str:
    data = encode(payload)
    if fmt == "json":
        return json.dumps(data, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        if rows:
            rows = encode(rows)
            w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
        else:
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["key", "value"])
            flat = []
            _flatten("", data, flat)
            w.writerows(flat)
        return buf.getvalue().rstrip("\n")
    flat = []
    _flatten("", data, flat)
    return "\n".join(f"{k}: {v}" for k, v in flat)


# -- argument helpers --------------------------------------------------------------

def load_spec(text: str) -> BundleSpec:
    if text == "-":
        text = sys.stdin.read()
    elif not text.lstrip().startswith("{"):
        p = Path(text)
        if not p.exists():
            raise UsageError(f"spec {text!r} is neither JSON nor an existing file")
        text = p.read_text()
    try:
        return BundleSpec.from_json(json.loads(text))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"malformed spec JSON: {exc}") from exc


def _parse_values(s):
    try:
        return [int(x) for x in s.replace(",", " ").split()]
    except ValueError as exc:
        raise UsageError(f"bad value list {s!r}") from exc


def _classify_auto(spec, max_m=None):
    """Classify with as many samples as needed (up to 12) unless max_m is given."""
    if max_m is not None:
        return classify(rank_sequence(spec, max_m))
    last = None
    for M in range(4, 13):
        try:
            return classify(rank_sequence(spec, M))
        except InconclusiveError as exc:
            last = exc
    raise last


def _coefficients(args, spec=None):
    if args.kind == "auto":
        if spec is None:
            raise UsageError("--kind auto needs a spec")
        rep = _classify_auto(spec, getattr(args, "max_m", None))
        if rep.Delta != 0:
            raise UsageError(f"rank scaling has Delta = {rep.Delta}; no identity to generate")
        return identity_coeffs_general(rep.samples[1], rep.D), rep
    if args.kind == "general":
        if args.R is None or args.D is None:
            raise UsageError("--kind general needs --R and --D")
        return identity_coeffs_general(args.R, args.D), None
    if args.kind == "quadric" and args.d is None:
        raise UsageError("--kind quadric needs --d")
    return identity_coeffs(args.kind, d=args.d), None


# -- subcommands ---------------------------------------------------------------------

def cmd_rank(args):
    spec = load_spec(args.spec)
    return {"spec": spec.to_json(), "rank": rank(spec)}, EXIT_OK, None


def cmd_rank_seq(args):
    spec = load_spec(args.spec)
    seq = rank_sequence(spec, args.max_m)
    rows = [{"m": m, "rank": v} for m, v in enumerate(seq.values)]
    return {"spec": spec.to_json(), "values": list(seq.values)}, EXIT_OK, rows


def cmd_fuse(args):
    spec = load_spec(args.spec)
    if spec.n != 3 or spec.genus != 0:
        raise UsageError("fuse needs a genus-0 spec with three weights")
    a, b, c = spec.weights
    return {"spec": spec.to_json(), "N": fuse3(a, b, c, spec.level)}, EXIT_OK, None


def cmd_deg04(args):
    spec = load_spec(args.spec)
    return {"spec": spec.to_json(), "deg": deg_m04(spec)}, EXIT_OK, None


def cmd_c1(args):
    spec = load_spec(args.spec)
    if spec.genus != 0 or spec.n < 4:
        raise UsageError("c1 needs a genus-0 spec with n >= 4")
    c = c1_fvector(spec)
    if args.basis5:
        if spec.n != 5:
            raise UsageError("--basis5 needs n = 5")
        x = to_nonadjacent_basis_n5(c)
        basis = dict(zip(("d13", "d14", "d24", "d25", "d35"), x))
        return {"spec": spec.to_json(), "basis": basis}, EXIT_OK, [basis]
    rows = [{"blocks": " | ".join(",".join(map(str, b)) for b in F), "value": v}
            for F, v in c.pairing.items()]
    return {"spec": spec.to_json(), "fvector": c}, EXIT_OK, rows


def cmd_classify(args):
    if args.values:
        rep = classify(_parse_values(args.values))
    elif args.spec:
        rep = _classify_auto(load_spec(args.spec), args.max_m)
    else:
        raise UsageError("classify needs a spec or --values")
    return rep.to_json(), EXIT_OK, None


def cmd_identity(args):
    spec = load_spec(args.spec) if args.spec else None
    coeffs, rep = _coefficients(args, spec)
    ms = args.m
    rows = [{"m": m, **{f"beta_{j}": b for j, b in coeffs.as_dict(m).items()}} for m in ms]
    out = {"kind": coeffs.kind, "indices": list(coeffs.indices),
           "coefficients": {str(m): list(coeffs(m)) for m in ms}}
    if coeffs.anomaly_support:
        out["anomaly_support"] = list(coeffs.anomaly_support)
    if rep is not None:
        out["scaling"] = rep.to_json()
    return out, EXIT_OK, rows


def cmd_verify(args):
    if args.table:
        table = {"coble-quartic": ("M3", "coble-quartic"), "coble-cubic": ("M2", "coble-cubic"),
                 "two-quadrics": ("M21", "two-quadrics")}[args.table]
        classes = paper_table(*table).entries
        coeffs = identity_coeffs(args.table)
    else:
        if not args.spec:
            raise UsageError("verify needs a spec or --table")
        spec = load_spec(args.spec)
        if spec.genus != 0 or spec.n < 4:
            raise UsageError("verify from a spec needs genus 0 and n >= 4 (use --table otherwise)")
        coeffs, _ = _coefficients(args, spec)
        need = sorted(set(coeffs.indices) | set(args.m))
        classes = {j: c1_fvector(scale_bundle(spec, j)) for j in need}
    results = []
    code = EXIT_OK
    for m in args.m:
        resid = verify_identity(classes, coeffs, m)
        entry = {"m": m, "holds": resid.is_zero()}
        if isinstance(resid, DivisorClassM0n) and resid.n == 5:
            entry["residual"] = dict(zip(("d13", "d14", "d24", "d25", "d35"),
                                         to_nonadjacent_basis_n5(resid)))
        elif isinstance(resid, DivisorClassSmall):
            entry["residual"] = resid.as_dict(normalized=True)
        else:
            entry["residual"] = resid
        if coeffs.anomaly_support:
            # residual = -(anomaly); the identity holds up to classes in the support
            split = split_anomaly(resid, coeffs.anomaly_support)
            entry["holds"] = split is not None
            if split is not None:
                entry["anomaly"] = {k: -v for k, v in split.items()}
        if not entry["holds"]:
            entry["marker"] = "counterexample"
            code = EXIT_MISMATCH
        results.append(entry)
    rows = [{"m": e["m"], "holds": e["holds"]} for e in results]
    return {"kind": coeffs.kind, "results": results}, code, rows


def cmd_hypotheses(args):
    spec = load_spec(args.spec)
    rep = check_precisQ(spec, args.max_m)
    rows = [{"stratum": str(s.stratum), "free": s.free, "quasi_rank_one": s.quasi_rank_one,
             "verdict": "pass" if s.passed else s.failure} for s in rep.strata]
    return rep.to_json(), EXIT_OK, rows


def cmd_anomaly(args):
    rows = []
    for m in args.m:
        a, b = anomaly_m2_level1(m)
        rows.append({"m": m, "alpha": a, "beta": b})
    return {"anomalies": rows}, EXIT_OK, rows


def cmd_reproduce(args):
    ids = sorted(CASES) if args.case == "all" else [args.case]
    for cid in ids:
        if cid not in CASES:
            raise UsageError(f"unknown case id {cid!r}; known: {', '.join(CASES)}")
    if args.jobs > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(run_case, ids))
    else:
        results = [run_case(cid) for cid in ids]
    code = EXIT_OK
    for r in results:
        if r["status"] == "counterexample":
            r["marker"] = "counterexample"
        elif r["status"] == "mismatch":
            r["marker"] = "MISMATCH with tabulated values"
        if r["status"] != "reproduced":
            code = EXIT_MISMATCH
    rows = [{"id": r["id"], "status": r["status"],
             "checks_passed": sum(c["ok"] for c in r["checks"]),
             "checks": len(r["checks"])} for r in results]
    payload = results[0] if len(results) == 1 else {"cases": results}
    return payload, code, rows


def cmd_cache(args):
    cache = FusionCache(args.path)
    if args.compact:
        cache.compact()
    return {"path": str(args.path), "records": len(cache), "compacted": bool(args.compact)}, \
        EXIT_OK, None


# -- parser --------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="cblab",
                                description="Ranks and first Chern classes of sl(r+1) "
                                            "conformal-blocks bundles.")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cache", default=None, help="fusion cache file (JSON lines)")
    # the same flags are accepted after the subcommand too
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    common.add_argument("--cache", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)
    _add = sub.add_parser
    sub.add_parser = lambda *a, **k: _add(*a, parents=[common], **k)

    def with_spec(name, helptext, optional=False):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("spec", nargs="?" if optional else None,
                       help="bundle spec as JSON, a path to a JSON file, or - for stdin")
        return s

    s = with_spec("rank", "rank of a bundle")
    s.set_defaults(func=cmd_rank)
    s = with_spec("rank-seq", "ranks of the scaled bundles V[0..M]")
    s.add_argument("--max-m", type=int, required=True)
    s.set_defaults(func=cmd_rank_seq)
    s = with_spec("fuse", "three-point fusion coefficient")
    s.set_defaults(func=cmd_fuse)
    s = with_spec("deg04", "degree on M_{0,4}")
    s.set_defaults(func=cmd_deg04)
    s = with_spec("c1", "first Chern class on M_{0,n}")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--fcurves", action="store_true", help="F-curve pairings (default)")
    g.add_argument("--basis5", action="store_true", help="nonadjacent basis on M_{0,5}")
    s.set_defaults(func=cmd_c1)
    s = with_spec("classify", "dimension, degree and Delta of the rank scaling", optional=True)
    s.add_argument("--values", help="rank values f(0), f(1), ... (comma separated)")
    s.add_argument("--max-m", type=int, default=None)
    s.set_defaults(func=cmd_classify)

    kinds = ("auto", "general") + CLOSED_KINDS + CONJECTURAL_KINDS
    for name, func, helptext in (("identity", cmd_identity, "scaling-identity coefficients"),
                                 ("verify", cmd_verify, "residual of a scaling identity")):
        s = with_spec(name, helptext, optional=True)
        s.add_argument("--kind", choices=kinds, default="auto")
        s.add_argument("--m", type=int, nargs="+", required=True)
        s.add_argument("--R", type=int)
        s.add_argument("--D", type=int)
        s.add_argument("--d", type=int, help="dimension for --kind quadric")
        s.add_argument("--max-m", type=int, default=None)
        if name == "verify":
            s.add_argument("--table", choices=CONJECTURAL_KINDS,
                           help="use the tabulated classes of a small-genus family")
        s.set_defaults(func=func)

    s = with_spec("hypotheses", "boundary hypotheses at every stratum")
    s.add_argument("--max-m", type=int, default=6)
    s.set_defaults(func=cmd_hypotheses)
    s = sub.add_parser("anomaly-m2", help="anomaly of V(sl_2, 1) on M_2")
    s.add_argument("--m", type=int, nargs="+", required=True)
    s.set_defaults(func=cmd_anomaly)
    s = sub.add_parser("reproduce", help="run a reproduction case")
    s.add_argument("case", help="case id or 'all': " + ", ".join(CASES))
    s.set_defaults(func=cmd_reproduce)
    s = sub.add_parser("cache", help="inspect or compact a fusion cache file")
    s.add_argument("path")
    s.add_argument("--compact", action="store_true")
    s.set_defaults(func=cmd_cache)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    cache = None
    try:
        if args.cache:
            cache = FusionCache(args.cache)
            fusion.set_default_cache(cache)
        else:
            cache = fusion.default_cache()  # CBLAB_CACHE, if set
        payload, code, rows = args.func(args)
    except (UsageError, ValueError, KeyError, InconclusiveError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    finally:
        if cache is not None:
            cache.flush()
    print(render(payload, args.format, rows), file=out)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
