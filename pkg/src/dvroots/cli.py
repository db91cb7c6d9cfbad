"""Command-line front end.

Subcommands: polygon, regular, count, roots, disc, verify.  Output is a
human-readable summary by default or a stable JSON report with --json; all
failures exit with code 1 and a JSON error object {code, message, detail} on
stdout, and `verify` exits with code 2 when the pipeline and the oracle
disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .errors import Error, NotRegular
from .fields import MODE_LAURENT, MODE_PADIC, FieldContext
from .hensel import discriminant_valuation, find_roots
from .newton import edge_root_data, lower_edges, newton_polygon
from .oracle import DEFAULT_BUDGET, check_bounds, count_roots_oracle, equivalence_agreement
from .parsing import parse_coefficient, parse_poly
from .polynomials import Poly
from .regularity import count_roots, is_regular
from .resultants import resultant
from .svg import polygon_svg


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dvroots",
        description="Count and compute polynomial roots over Q_p and F_q((t)).",
    )
    parser.add_argument("--version", action="version", version=f"dvroots {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, needs_poly=True):
        if needs_poly:
            p.add_argument("poly", nargs="?", help="polynomial expression")
        p.add_argument("--p", type=int, help="residue characteristic (prime)")
        p.add_argument(
            "--mode", choices=(MODE_PADIC, MODE_LAURENT), default=None,
            help="base field kind (default padic)",
        )
        p.add_argument("--rdeg", type=int, default=None,
                       help="residue degree f for laurent mode (default 1)")
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.add_argument("--in", dest="infile", metavar="FILE",
                       help="read the polynomial and field from a JSON file")

    p_polygon = sub.add_parser("polygon", help="Newton polygon and lower edges")
    add_common(p_polygon)
    p_polygon.add_argument("--svg", metavar="FILE", help="write an SVG drawing")

    p_regular = sub.add_parser("regular", help="regularity verdict per edge")
    add_common(p_regular)

    p_count = sub.add_parser("count", help="exact number of roots in K*")
    add_common(p_count)

    p_roots = sub.add_parser("roots", help="compute the roots in K")
    add_common(p_roots)
    p_roots.add_argument("--precision", type=int, default=10,
                         help="digits/residual target (default 10)")
    p_roots.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                         help="max residue evaluations per scan")

    p_disc = sub.add_parser("disc", help="Res(f, f') and its valuation")
    add_common(p_disc)

    p_verify = sub.add_parser("verify", help="cross-check pipeline against the oracle")
    add_common(p_verify)
    p_verify.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                          help="max residue evaluations per scan")
    p_verify.add_argument("--n", type=int, default=None,
                          help="override the modulus exponent N")

    return parser


def _load_input(args):
    field_spec = {}
    poly_source = args.poly
    terms = None
    if args.infile:
        with open(args.infile, "r", encoding="utf-8") as handle:
            data = json.load(handle)
        field_spec = data.get("field", {})
        terms = data.get("terms")
        if poly_source is None and isinstance(data.get("poly"), str):
            poly_source = data["poly"]
    mode = args.mode or field_spec.get("mode") or MODE_PADIC
    p = args.p if args.p is not None else field_spec.get("p")
    if p is None:
        raise Error("no prime given: use --p or an input file with a field spec")
    f = args.rdeg if args.rdeg is not None else field_spec.get("f", 1)
    ctx = FieldContext(mode, p, f)
    if terms is not None:
        pairs = [(int(k), parse_coefficient(str(c), ctx)) for k, c in terms]
        poly = Poly.from_pairs(ctx, pairs)
    elif poly_source is not None:
        poly = parse_poly(poly_source, ctx)
    else:
        raise Error("no polynomial given: pass an expression or --in FILE")
    return ctx, poly


def _fr(x):
    """Exact rational (or valuation) as a stable string."""
    return str(x)


def _edge_report(edge):
    count, root_val = edge_root_data(edge)
    return {
        "left": [edge.left[0], _fr(edge.left[1])],
        "right": [edge.right[0], _fr(edge.right[1])],
        "slope": _fr(edge.slope),
        "length": edge.length,
        "support_on_edge": [[p[0], _fr(p[1])] for p in edge.support_on_edge],
        "root_valuation": _fr(root_val),
        "closure_root_count": count,
    }


def _cmd_polygon(args, ctx, poly):
    polygon = newton_polygon(poly)
    edges = lower_edges(polygon)
    report = {
        "field": repr(ctx),
        "support": [[p[0], _fr(p[1])] for p in polygon.support],
        "vertices": [[p[0], _fr(p[1])] for p in polygon.lower_vertices],
        "edges": [_edge_report(e) for e in edges],
    }
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as handle:
            handle.write(polygon_svg(polygon))
        report["svg"] = args.svg
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print(f"Newton polygon over {report['field']}")
        print(f"  support:  {report['support']}")
        print(f"  vertices: {report['vertices']}")
        for e in report["edges"]:
            print(
                f"  edge {e['left']} -> {e['right']}: slope {e['slope']}, "
                f"length {e['length']}, roots of valuation {e['root_valuation']}: "
                f"{e['closure_root_count']}"
            )
        if args.svg:
            print(f"  svg written to {args.svg}")
    return 0


def _regularity_report_json(report):
    return {
        "regular": report.regular,
        "edges": [
            {
                "edge": _edge_report(v.edge),
                "ok": v.ok,
                "failure": v.failure,
            }
            for v in report.per_edge
        ],
    }


def _cmd_regular(args, ctx, poly):
    report = is_regular(poly)
    payload = _regularity_report_json(report)
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(f"regular: {report.regular}")
        for v in report.per_edge:
            status = "ok" if v.ok else f"FAIL ({v.failure})"
            print(f"  edge slope {v.edge.slope}, length {v.edge.length}: {status}")
    return 0


def _count_report(result):
    return {
        "zero_root_multiplicity": result.zero_root_multiplicity,
        "per_slope": [
            {"root_valuation": _fr(v), "count": c} for v, c in result.per_slope
        ],
        "total_nonzero": result.total_nonzero,
        "bound": result.bound,
    }


def _cmd_count(args, ctx, poly):
    result = count_roots(poly)
    payload = _count_report(result)
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(f"roots in K*: {result.total_nonzero} (bound {result.bound})")
        print(f"zero root multiplicity: {result.zero_root_multiplicity}")
        for v, c in result.per_slope:
            print(f"  valuation {v}: {c}")
    return 0


def _root_report(root):
    return {
        "valuation": root.valuation,
        "digits": root.digits(),
        "precision_digits": root.value.precision(),
        "residual_valuation": root.residual_valuation,
    }


def _cmd_roots(args, ctx, poly):
    result = find_roots(poly, args.precision, budget=args.budget)
    payload = {
        "zero_root_multiplicity": result.zero_root_multiplicity,
        "roots": [_root_report(r) for r in result.roots],
    }
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(f"zero root multiplicity: {result.zero_root_multiplicity}")
        if not result.roots:
            print("no nonzero roots in K")
        for r in result.roots:
            digits = " ".join(str(d) for d in r.digits(args.precision))
            print(
                f"  root with valuation {r.valuation}: digits [{digits}] "
                f"(residual >= {r.residual_valuation})"
            )
    return 0


def _cmd_disc(args, ctx, poly):
    info = discriminant_valuation(poly)
    payload = {"resultant": repr(info.resultant), "valuation": info.valuation}
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(f"Res(f, f') = {payload['resultant']}")
        print(f"r = v(Res(f, f')) = {info.valuation}")
    return 0


def _normalize_for_oracle(poly):
    """Monic integral polynomial with the same number of roots in K."""
    from .hensel import _monicize

    shifted = poly
    content = poly.content_valuation()
    if content:
        shifted = poly.scaled(poly.ctx.uniformizer_pow(-content))
    if shifted.degree == 0:
        return shifted
    monic, _ = _monicize(shifted)
    return monic


def _cmd_verify(args, ctx, poly):
    pipeline = count_roots(poly)
    normalized = _normalize_for_oracle(poly)
    oracle_count = count_roots_oracle(normalized, budget=args.budget, N=args.n)
    bounds = check_bounds(normalized, budget=args.budget, N=args.n)
    agreement = equivalence_agreement(normalized, budget=args.budget, N=args.n)
    pipeline_total = pipeline.total_nonzero + (1 if pipeline.zero_root_multiplicity else 0)
    agree = (
        oracle_count == pipeline_total and bounds.all_pass and agreement
    )
    payload = {
        "oracle_count": oracle_count,
        "pipeline_nonzero": pipeline.total_nonzero,
        "zero_root_multiplicity": pipeline.zero_root_multiplicity,
        "pipeline_count": pipeline_total,
        "bounds": {
            "r": bounds.r,
            "N": bounds.N,
            "residue_roots": bounds.residue_root_count,
            "checks": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "observed": c.observed,
                    "limit": c.limit,
                }
                for c in bounds.checks
            ],
        },
        "equivalence_agreement": agreement,
        "agree": agree,
    }
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(f"pipeline count (K* + zero root): {pipeline_total}")
        print(f"oracle count: {oracle_count}")
        print(f"bound checks: {'pass' if bounds.all_pass else 'FAIL'}")
        print(f"equivalence agreement: {agreement}")
        print(f"verdict: {'agree' if agree else 'DISAGREE'}")
    return 0 if agree else 2


_HANDLERS = {
    "polygon": _cmd_polygon,
    "regular": _cmd_regular,
    "count": _cmd_count,
    "roots": _cmd_roots,
    "disc": _cmd_disc,
    "verify": _cmd_verify,
}


def _error_payload(exc):
    detail = {}
    if isinstance(exc, NotRegular):
        detail = _regularity_report_json(exc.report)
    elif hasattr(exc, "detail"):
        detail = getattr(exc, "detail") or {}
    code = exc.code if isinstance(exc, Error) else type(exc).__name__
    return {"code": code, "message": str(exc), "detail": detail}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        ctx, poly = _load_input(args)
        return _HANDLERS[args.command](args, ctx, poly)
    except Error as exc:
        print(json.dumps(_error_payload(exc)))
        return 1
    except (ValueError, OSError) as exc:
        print(json.dumps(_error_payload(exc)))
        return 1


if __name__ == "__main__":
    sys.exit(main())
