"""Command-line front end.

Exit status: 0 success, 1 error (or a failed check), 2 invalid input or
non-generic weights, 3 the Hausel comparison came out refuted.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import os
import sys
import tempfile
from fractions import Fraction

from . import __version__
from .errors import ParHiggsError, ValidationError
from .exactalg import LaurentPoly
from .symcurve import sym_poincare
from .weights import default_weights, load_weights

log = logging.getLogger("parhiggs")

CACHE_ENV = "PARHIGGS_CACHE_DIR"
EXIT_OK, EXIT_ERROR, EXIT_INVALID, EXIT_REFUTED = 0, 1, 2, 3


# ---------------------------------------------------------------------------
# serialization

def poly_payload(poly):
    """JSON-ready form of a polynomial; big integers stay decimal strings."""
    return {
        "poincare": [{"deg": k, "coeff": str(c)} for k, c in poly.items()],
        "degree": poly.degree,
        "euler_char": str(poly(-1)),
    }


def poly_from_payload(data):
    return LaurentPoly({e["deg"]: int(e["coeff"]) for e in data["poincare"]})


def _json_text(obj):
    return json.dumps(obj, indent=2) + "\n"


def _csv_text(rows, header):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def render_poly_result(payload, fmt):
    if fmt == "json":
        return _json_text(payload)
    poly = poly_from_payload(payload)
    parts = payload.get("breakdown")
    if fmt == "csv":
        if parts is None:
            return _csv_text([(e["deg"], e["coeff"]) for e in payload["poincare"]],
                             ("degree", "coefficient"))
        rows = [(name, e["deg"], e["coeff"]) for name, part in parts.items()
                for e in part["poincare"]]
        rows += [("total", e["deg"], e["coeff"]) for e in payload["poincare"]]
        return _csv_text(rows, ("part", "degree", "coefficient"))
    if parts is None:
        return str(poly) + "\n"
    lines = ["%s: %s" % (name, poly_from_payload(part)) for name, part in parts.items()]
    lines.append("total: %s" % poly)
    return "\n".join(lines) + "\n"


def render_records(payload, fmt):
    rows = payload["records"]
    if fmt == "json":
        return _json_text(payload)
    if fmt == "csv":
        header = list(rows[0]) if rows else []
        return _csv_text([[_cell(r[h]) for h in header] for r in rows], header)
    return "".join(" ".join("%s=%s" % (k, _cell(v)) for k, v in r.items()) + "\n" for r in rows) \
        or "(none)\n"


def _cell(v):
    return json.dumps(v) if isinstance(v, (list, dict)) else str(v)


def _frac(x):
    return str(Fraction(x))


# ---------------------------------------------------------------------------
# cache

def _cache_key(command, params):
    blob = json.dumps({"cmd": command, "params": params, "version": __version__},
                      sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def cache_get_or_compute(command, params, compute):
    """Return the payload for (command, params), through the on-disk cache
    when PARHIGGS_CACHE_DIR is set."""
    root = os.environ.get(CACHE_ENV)
    if not root:
        return compute()
    key = _cache_key(command, params)
    path = os.path.join(root, key + ".json")
    try:
        with open(path, encoding="utf-8") as fh:
            entry = json.load(fh)
        if entry.get("key") == key and "payload" in entry:
            return entry["payload"]
        log.warning("cache entry %s is malformed; recomputing", path)
    except FileNotFoundError:
        pass
    except (OSError, ValueError) as exc:
        log.warning("cache entry %s unreadable (%s); recomputing", path, exc)
    payload = compute()
    os.makedirs(root, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=root, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump({"key": key, "payload": payload}, fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return payload


# ---------------------------------------------------------------------------
# subcommands

def _higgs_params(args):
    from .higgs3 import HiggsParams
    w = load_weights(args.weights) if args.weights else None
    return HiggsParams(args.genus, args.points, args.degree, w)


def cmd_higgs(args):
    from .higgs3 import FIXED, NONFIXED, breakdown, higgs3_total
    params = _higgs_params(args)
    mode = FIXED if args.fixed else NONFIXED
    pdict = {"genus": params.g, "points": params.n, "degree": params.delta,
             "fixed": args.fixed, "weights": params.weights.to_json()}

    def compute():
        total = higgs3_total(params, mode)
        payload = {"params": pdict}
        payload.update(poly_payload(total))
        if args.breakdown:
            parts = breakdown(params, mode)
            payload["breakdown"] = {k: poly_payload(v) for k, v in parts.items() if k != "total"}
        return payload

    key = dict(pdict, breakdown=args.breakdown)
    return EXIT_OK, render_poly_result(cache_get_or_compute("higgs", key, compute), args.format)


def cmd_bundles(args):
    from .higgs3 import FIXED, NONFIXED, bundles3_poincare
    params = _higgs_params(args)
    mode = FIXED if args.fixed else NONFIXED
    pdict = {"genus": params.g, "points": params.n, "degree": params.delta,
             "fixed": args.fixed}

    def compute():
        payload = {"params": pdict}
        payload.update(poly_payload(bundles3_poincare(params, mode)))
        return payload

    return EXIT_OK, render_poly_result(cache_get_or_compute("bundles", pdict, compute), args.format)


def _triple_spec(args, need_sigma=True):
    from .triples import TripleSpec
    w = load_weights(args.weights) if args.weights else default_weights(args.points)
    if w.n != args.points:
        raise ValidationError("weight file has %d points, --points is %d" % (w.n, args.points))
    sigma = Fraction(args.sigma) if need_sigma else Fraction(0)
    return TripleSpec(args.genus, w, args.d1, args.d2, sigma)


def _parse_sigma(text):
    from .weights import parse_rational
    try:
        return parse_rational(text)
    except ValidationError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def cmd_triples(args):
    from .triples import triples_poincare
    spec = _triple_spec(args)
    pdict = {"genus": spec.g, "points": spec.n, "d1": spec.d1, "d2": spec.d2,
             "sigma": _frac(spec.sigma), "fixed": args.fixed, "weights": spec.weights.to_json()}

    def compute():
        payload = {"params": pdict}
        payload.update(poly_payload(triples_poincare(spec, fixed_det=args.fixed)))
        return payload

    return EXIT_OK, render_poly_result(cache_get_or_compute("triples", pdict, compute), args.format)


def cmd_walls(args):
    from .triples import critical_values, sigma_range
    spec = _triple_spec(args, need_sigma=False)
    lo, hi = sigma_range(spec)
    records = [{
        "sigma_c": _frac(w.sigma_c), "d_M": w.d_M, "eps": list(w.eps),
        "s1": w.s1, "s2": w.s2, "s3": w.s3, "w_plus": w.w_plus, "w_minus": w.w_minus,
        "N": w.N, "delta": str(w.delta),
    } for w in critical_values(spec)]
    payload = {"params": {"genus": spec.g, "points": spec.n, "d1": spec.d1, "d2": spec.d2,
                          "weights": spec.weights.to_json(),
                          "sigma_m": _frac(lo), "sigma_M": _frac(hi)},
               "records": records}
    return EXIT_OK, render_records(payload, args.format)


def cmd_strata(args):
    from .higgs3 import enumerate_111, enumerate_type12
    params = _higgs_params(args)
    recs = enumerate_111(params) if args.type == "111" else enumerate_type12(params, args.type)
    keep = ("type", "d1", "varpi", "index", "m", "m1", "m2", "s1", "s2", "s0")
    records = []
    for r in recs:
        row = {k: getattr(r, k) for k in keep if getattr(r, k) is not None}
        row["varpi"] = [list(v) if isinstance(v, tuple) else v for v in r.varpi]
        row["poincare"] = str(r.poincare)
        records.append(row)
    payload = {"params": {"genus": params.g, "points": params.n, "degree": params.delta,
                          "type": args.type}, "records": records}
    return EXIT_OK, render_records(payload, args.format)


def cmd_symprod(args):
    if args.power < 0:
        raise ValidationError("--power must be nonnegative")
    payload = {"params": {"genus": args.genus, "power": args.power}}
    payload.update(poly_payload(sym_poincare(args.genus, args.power)))
    return EXIT_OK, render_poly_result(payload, args.format)


def _check_hausel(g, n):
    from .hauselcheck import REFUTED, compare
    rep = compare(g, n)
    return (EXIT_REFUTED if rep.status == REFUTED else EXIT_OK), str(rep), rep.to_json()


def _check_euler(g, n):
    from .higgs3 import FIXED, HiggsParams, higgs3_total
    chi = higgs3_total(HiggsParams(g, n), FIXED)(-1)
    if g == 0:
        # the vanishing is only claimed for g >= 1; record the value
        return EXIT_OK, "euler g=0 n=%d: chi(fixed) = %d (recorded, no claim at g=0)" % (n, chi), \
            {"genus": g, "points": n, "euler_char": str(chi), "status": "RECORDED"}
    status = "OK" if chi == 0 else "FAILED"
    code = EXIT_OK if chi == 0 else EXIT_ERROR
    return code, "euler g=%d n=%d: chi(fixed) = %d %s" % (g, n, chi, status), \
        {"genus": g, "points": n, "euler_char": str(chi), "status": status}


def _check_oracle(g, n):
    from . import higgs3 as h
    p = h.HiggsParams(g, n)
    results = {}
    for mode in (h.NONFIXED, h.INVARIANT, h.VARIANT):
        results["111/" + mode] = h.stratum_sum_111(p, mode) == h.contribution_111(p, mode)
    for mode in (h.NONFIXED, h.FIXED):
        results["12/" + mode] = h.stratum_sum_type12(p, "12", mode) == h.contribution_12(p, mode)
        results["21/" + mode] = h.stratum_sum_type12(p, "21", mode) == h.contribution_21(p, mode)
        results["3/" + mode] = h.bundles3_strata_sum(p, mode) == h.bundles3_poincare(p, mode)
    ok = all(results.values())
    text = "\n".join("oracle g=%d n=%d %s: %s" % (g, n, k, "OK" if v else "MISMATCH")
                     for k, v in results.items())
    return (EXIT_OK if ok else EXIT_ERROR), text, {"genus": g, "points": n, "results": results}


SUITES = {"hausel": _check_hausel, "euler": _check_euler, "oracle": _check_oracle}


def cmd_check(args):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    code, texts, data = EXIT_OK, [], {}
    for name in names:
        c, text, obj = SUITES[name](args.genus, args.points)
        code = max(code, c)
        texts.append(text)
        data[name] = obj
    if args.format == "json":
        return code, _json_text({"suite": args.suite, "exit": code, "checks": data})
    return code, "\n".join(texts) + "\n"


# ---------------------------------------------------------------------------
# argument parsing

def build_parser():
    p = argparse.ArgumentParser(prog="parhiggs", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt=("text", "json", "csv")):
        sp.add_argument("--genus", type=int, required=True)
        sp.add_argument("--format", choices=fmt, default="text")

    def points(sp):
        sp.add_argument("--points", type=int, required=True)

    sp = sub.add_parser("higgs", help="Poincaré polynomial of the rank-3 moduli space")
    common(sp), points(sp)
    sp.add_argument("--degree", type=int, default=1)
    sp.add_argument("--fixed", action="store_true")
    sp.add_argument("--breakdown", action="store_true")
    sp.add_argument("--weights")
    sp.set_defaults(func=cmd_higgs)

    sp = sub.add_parser("bundles", help="rank-3 parabolic bundles")
    common(sp), points(sp)
    sp.add_argument("--degree", type=int, default=1)
    sp.add_argument("--fixed", action="store_true")
    sp.add_argument("--weights")
    sp.set_defaults(func=cmd_bundles)

    sp = sub.add_parser("triples", help="parabolic triples at one sigma")
    common(sp), points(sp)
    sp.add_argument("--d1", type=int, required=True)
    sp.add_argument("--d2", type=int, required=True)
    sp.add_argument("--sigma", type=_parse_sigma, required=True)
    sp.add_argument("--fixed", action="store_true")
    sp.add_argument("--weights")
    sp.set_defaults(func=cmd_triples)

    sp = sub.add_parser("walls", help="critical values of sigma")
    common(sp), points(sp)
    sp.add_argument("--d1", type=int, required=True)
    sp.add_argument("--d2", type=int, required=True)
    sp.add_argument("--weights")
    sp.set_defaults(func=cmd_walls)

    sp = sub.add_parser("strata", help="critical strata of one type")
    common(sp), points(sp)
    sp.add_argument("--type", choices=("111", "12", "21"), required=True)
    sp.add_argument("--degree", type=int, default=1)
    sp.add_argument("--weights")
    sp.set_defaults(func=cmd_strata)

    sp = sub.add_parser("symprod", help="symmetric product of the curve")
    common(sp)
    sp.add_argument("--power", type=int, required=True)
    sp.set_defaults(func=cmd_symprod)

    sp = sub.add_parser("check", help="consistency checks")
    common(sp, fmt=("text", "json")), points(sp)
    sp.add_argument("--suite", choices=("hausel", "euler", "oracle", "all"), required=True)
    sp.set_defaults(func=cmd_check)
    return p


def run(argv=None):
    """Returns (exit status, stdout text, stderr text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_INVALID
        return code, "", ""
    try:
        code, out = args.func(args)
        return code, out, ""
    except ValidationError as exc:
        return EXIT_INVALID, "", _json_text(_error(exc))
    except (ParHiggsError, ArithmeticError, OSError, ValueError) as exc:
        return EXIT_ERROR, "", _json_text(_error(exc))


def _error(exc):
    return {"error": type(exc).__name__, "message": str(exc)}


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="parhiggs: %(levelname)s: %(message)s")
    code, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
