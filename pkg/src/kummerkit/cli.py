"""Command-line entry point. Every subcommand prints one JSON document.

Exit status: 0 on success, 1 for invalid input, 2 when an internal
consistency check fails.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .boundary import (
    build_default_graph,
    closed_form_a,
    default_horizontal,
    graph_from_json,
    solve_boundary,
)
from .curves import humbert_scan, hit_to_json, verify_bw_configuration
from .deformations import deformation_table
from .errors import ConsistencyError, InvalidInput, KummerKitError
from .exact_algebra import GF, fraction_str, roots_mod_p
from .frobenius import (
    Genus2Curve,
    classify_reduction,
    count_points,
    frobenius_summary,
    rm_discriminant,
    weil_ok,
)
from .humbert import (
    HumbertClass,
    case_formula,
    class_to_json,
    classify_delta,
    scaling_family,
)
from .kummer_plane import WeierstrassSet, build_plane, plane_to_json

log = logging.getLogger("kummerkit")


def _ints(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.replace(" ", "").split(",") if tok]
    except ValueError as exc:
        raise InvalidInput(f"expected comma-separated integers, got {text!r}") from exc


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return fraction_str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, float):
        raise ConsistencyError("no-floats", f"floating point value {obj!r} in output")
    if hasattr(obj, "value") and hasattr(obj, "p"):
        return obj.value
    return obj


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def frobenius_report(C: Genus2Curve) -> dict:
    n1, n2 = count_points(C, 1), count_points(C, 2)
    if not weil_ok(C.p, C.p + 1 - n1, n2):
        raise ConsistencyError("weil-bounds", f"n1={n1}, n2={n2} for p={C.p}")
    s = frobenius_summary(n1, n2, C.p)
    if s.predicted_counts() != (n1, n2):
        raise ConsistencyError("count-round-trip")
    rm = rm_discriminant(s)
    label, disc = classify_reduction(s)
    return {
        "p": C.p, "f": C.int_coeffs,
        "n1": n1, "n2": n2, "s1": s.s1, "s2": s.s2,
        "charpoly": list(s.charpoly),
        "ordinary": s.ordinary,
        "rm_disc": rm.to_json()["value"],
        "rm": rm.to_json(),
        "classification": label,
    }


def cmd_frobenius(args) -> dict:
    return frobenius_report(Genus2Curve.from_text(args.p, args.f))


def cmd_plane(args) -> dict:
    cfg = build_plane(WeierstrassSet(args.p, tuple(_ints(args.lambdas))))
    return plane_to_json(cfg)


def scan_report(cfg, first_only=False) -> dict:
    h = HumbertClass.of("I", 1, 6)
    res = humbert_scan(cfg, first_only=first_only)
    hits = []
    for hit in res.hits:
        report = verify_bw_configuration(hit.conic, h, cfg)
        recheck = [hit.conic(cfg.points[pr]) == 0 for pr in hit.pairs]
        if not all(recheck) or not hit.contacts.tangent:
            raise ConsistencyError("conic-recheck", f"hit {hit.pairs} fails substitution")
        hits.append(hit_to_json(hit, report))
    return {"p": cfg.p, "lambdas": [x.value for x in cfg.lambdas],
            "class": class_to_json(h), "stats": res.stats, "hits": hits}


def cmd_conic_search(args) -> dict:
    cfg = build_plane(WeierstrassSet(args.p, tuple(_ints(args.lambdas))))
    return scan_report(cfg, first_only=not args.all)


def cmd_classify(args) -> dict:
    out = {"delta": args.delta,
           "classes": [class_to_json(h) for h in classify_delta(args.delta)]}
    for h in out["classes"]:
        if case_formula(h["case"], h["d"], h["k"]) != args.delta:
            raise ConsistencyError("humbert-round-trip")
    if args.scaling:
        out["scaling"] = {str(m): [class_to_json(h) for h in hs]
                          for m, hs in scaling_family(args.delta, args.scaling).items()}
    return out


def cmd_deform(args) -> dict:
    if args.m < 1:
        raise InvalidInput("m must be >= 1")
    table = deformation_table(args.m)
    if not table["theorem_check"]["all_even"]:
        raise ConsistencyError("higher-order-nodes", f"odd part among admissible profiles for m={args.m}")
    return table


def boundary_report(g, h=None) -> dict:
    if h is None:
        h = default_horizontal(g)
    sol = solve_boundary(g, h)
    out = {
        "labels": list(g.labels),
        "gram": [list(r) for r in g.gram],
        "h": list(h),
        "a": sol.a, "b": sol.b, "c": list(sol.c),
        "coeffs": list(sol.coeffs),
        "kernel": list(sol.kernel),
        "consistency": True,
        "conflicts": list(g.conflicts),
    }
    if g.follows_bullet_pattern() and tuple(h) == default_horizontal(g):
        cf = closed_form_a(g)
        if cf != sol.a:
            raise ConsistencyError("closed-form-a", f"solver a={sol.a}, closed form {cf}")
        out["closed_form_a"] = cf
    else:
        out["closed_form_a"] = None
    return out


def cmd_boundary(args) -> dict:
    if args.gram:
        g = graph_from_json(Path(args.gram).read_text())
    else:
        mult = _ints(args.mult) if args.mult else None
        g = build_default_graph(args.chain, args.q12, mult)
    h = None
    if args.h:
        h = json.loads(Path(args.h).read_text())
        if not isinstance(h, list) or not all(isinstance(x, int) for x in h):
            raise InvalidInput("horizontal data must be a JSON list of integers")
    return boundary_report(g, h)


def weierstrass_values(C: Genus2Curve):
    """Six finite Weierstrass values when f splits over F_p, else None.

    For deg f = 5 the point at infinity is moved to 0 by x -> 1/(x - a).
    """
    roots = roots_mod_p(C.f)
    if len(roots) != C.f.degree:
        return None
    F = GF(C.p)
    lams = [r for r, _ in roots]
    if C.f.degree == 6:
        return tuple(lams)
    a = next(x for x in F.elements() if x not in lams)
    return tuple(1 / (l - a) for l in lams) + (F.zero,)


def run_pipeline(p: int, f_text: str) -> dict:
    C = Genus2Curve.from_text(p, f_text)
    stages: dict = {}
    frob = frobenius_report(C)
    stages["frobenius"] = {"status": "ok", **frob}

    tw = frobenius_report(C.twist())
    if tw["s1"] != -frob["s1"] or tw["s2"] != frob["s2"] or tw["ordinary"] != frob["ordinary"]:
        raise ConsistencyError("twist-invariance", f"twist gives s1={tw['s1']}, s2={tw['s2']}")
    stages["twist"] = {"status": "ok", "s1": tw["s1"], "s2": tw["s2"]}

    disc = frob["rm"]["disc"]
    if disc > 0:
        classes = classify_delta(disc)
        stages["humbert"] = {"status": "ok", "delta": disc,
                             "classes": [class_to_json(h) for h in classes]}
    else:
        stages["humbert"] = {"status": "skipped", "reason": f"discriminant {disc} is not positive"}

    lams = weierstrass_values(C)
    if lams is None:
        stages["plane"] = {"status": "skipped", "reason": "f does not split over F_p"}
        stages["conic_search"] = {"status": "skipped", "reason": "no Kummer plane"}
    else:
        cfg = build_plane(WeierstrassSet(p, lams))
        stages["plane"] = {"status": "ok", **plane_to_json(cfg)}
        stages["conic_search"] = {"status": "ok", **scan_report(cfg)}
    return {"p": p, "f": C.int_coeffs, "stages": stages}


def cmd_pipeline(args) -> dict:
    return run_pipeline(args.p, args.f)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kummerkit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    parser.add_argument("--out", help="write JSON here instead of stdout")
    parser.add_argument("--json", action="store_true", help="JSON output (the default and only mode)")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("frobenius", help="point counts and Frobenius data of y^2 = f(x)")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--f", required=True, help='ascending coefficients, e.g. "0,1,0,0,0,1"')
    sp.set_defaults(func=cmd_frobenius)

    sp = sub.add_parser("plane", help="Kummer plane from six Weierstrass values")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--lambdas", required=True)
    sp.set_defaults(func=cmd_plane)

    sp = sub.add_parser("conic-search", help="scan for Humbert conics")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--lambdas", required=True)
    sp.add_argument("--all", action="store_true", help="report every hit, not just the first")
    sp.set_defaults(func=cmd_conic_search)

    sp = sub.add_parser("classify", help="case I-IV representations of a discriminant")
    sp.add_argument("--delta", type=int, required=True)
    sp.add_argument("--scaling", type=int, default=0, metavar="M")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("deform", help="admissible deformations of y^2 = x^(2m)")
    sp.add_argument("--m", type=int, required=True)
    sp.set_defaults(func=cmd_deform)

    sp = sub.add_parser("boundary", help="boundary coefficients on the special fiber")
    sp.add_argument("--chain", type=int, default=1, metavar="R")
    sp.add_argument("--q12", type=int, default=0)
    sp.add_argument("--mult", help="fiber multiplicities, comma separated")
    sp.add_argument("--gram", help='JSON file {"labels", "gram", "mult"}')
    sp.add_argument("--h", help="JSON list with the horizontal intersections")
    sp.set_defaults(func=cmd_boundary)

    sp = sub.add_parser("pipeline", help="run every stage on one curve")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--f", required=True)
    sp.set_defaults(func=cmd_pipeline)
    return parser


def run(argv=None) -> tuple[int, dict]:
    status, doc, _ = _run(argv)
    return status, doc


def _run(argv):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    random.seed(args.seed)
    try:
        doc = _jsonable(args.func(args))
        status = 0
    except ConsistencyError as exc:
        doc = {"error": "consistency", "check": exc.check, "message": str(exc)}
        status = 2
    except (KummerKitError, ValueError, ZeroDivisionError, OSError) as exc:
        doc = {"error": "invalid-input", "message": str(exc)}
        status = 1
    return status, doc, args.out


def main(argv=None) -> int:
    status, doc, out = _run(argv)
    text = json.dumps(doc, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
