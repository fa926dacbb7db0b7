"""Command-line front end: graph catalog, invariant reports, bound curves,
figure presets, and oracle-sandwich verification.

Graph specs use a small grammar:

    K:q                  complete graph
    C:m                  cycle
    kneser:c,a           disjointness graph of a-subsets of {1..c}
    sum:a1xK1+acxKc      disjoint union of cliques
    pow:SPEC,r           strong r-th power of an inner spec
    file:PATH            edge list ("p <n>" line, then "e <u> <v>" lines)

Exit codes: 0 success, 1 verification failure, 2 usage/parse error,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from dataclasses import dataclass

from graphcap.automorphisms import is_edge_transitive, is_vertex_transitive
from graphcap.caps import AUTOMORPHISM_VERTEX_CAP, SPECTRUM_VERTEX_CAP
from graphcap.delsarte import a_lp1
from graphcap.errors import (
    CapExceeded,
    GraphSpecError,
    GraphcapError,
    NonConstantC,
    SolveTimeout,
)
from graphcap.graphs import Graph, clique_sum, complete, cycle, from_edge_list, kneser, strong_power
from graphcap.invariants import (
    caro_wei,
    chromatic_number,
    clique_number,
    exact_alpha_power,
    fractional_chromatic,
    gv_sphere_count,
    independence_number,
    max_independent_set,
    theta_star_fractional,
)
from graphcap.rates import RateCurve, best_envelope
from graphcap.spectral import adjacency_spectrum, eigenspace_constants

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_CAP = 3


@dataclass
class ParsedSpec:
    graph: Graph
    vertex_transitive: bool | None  # None = unknown
    clique_sum_terms: list[tuple[int, int]] | None


_SUM_TERM = re.compile(r"^(\d+)xK(\d+)$")


def parse_graph_spec(spec: str, offset: int = 0) -> ParsedSpec:
    spec = spec.strip()
    if not spec:
        raise GraphSpecError("empty graph spec", offset)
    head, sep, rest = spec.partition(":")
    if not sep:
        raise GraphSpecError(f"expected 'kind:args', got {spec!r}", offset)
    args_at = offset + len(head) + 1
    try:
        if head == "K":
            return ParsedSpec(complete(int(rest)), True, None)
        if head == "C":
            return ParsedSpec(cycle(int(rest)), True, None)
        if head == "kneser":
            c_str, _, a_str = rest.partition(",")
            if not a_str:
                raise GraphSpecError("kneser needs two parameters c,a", args_at)
            return ParsedSpec(kneser(int(c_str), int(a_str)), True, None)
        if head == "sum":
            terms = []
            for piece in rest.split("+"):
                m = _SUM_TERM.match(piece.strip())
                if not m:
                    raise GraphSpecError(f"bad clique term {piece!r}", args_at)
                terms.append((int(m.group(1)), int(m.group(2))))
            sizes = {size for _, size in terms}
            return ParsedSpec(clique_sum(terms), len(sizes) == 1, terms)
        if head == "pow":
            inner_str, comma, r_str = rest.rpartition(",")
            if not comma:
                raise GraphSpecError("pow needs 'pow:SPEC,r'", args_at)
            inner = parse_graph_spec(inner_str, offset=args_at)
            try:
                r = int(r_str)
            except ValueError:
                raise GraphSpecError(f"bad power {r_str!r}", args_at + len(inner_str) + 1)
            return ParsedSpec(strong_power(inner.graph, r), inner.vertex_transitive, None)
        if head == "file":
            return ParsedSpec(from_edge_list(rest), None, None)
    except GraphSpecError:
        raise
    except (ValueError, OSError) as exc:
        raise GraphSpecError(str(exc), args_at)
    raise GraphSpecError(f"unknown graph kind {head!r}", offset)


# ---------------------------------------------------------------------------
# info


def cmd_info(args) -> int:
    parsed = parse_graph_spec(args.spec)
    g = parsed.graph
    out = args.out
    print(f"spec: {args.spec}", file=out)
    print(f"label: {g.label}", file=out)
    print(f"vertices: {g.n}", file=out)
    print(f"edges: {g.num_edges}", file=out)
    try:
        witness = max_independent_set(g, timeout=args.timeout)
        print(f"alpha: {len(witness)} (witness {witness})", file=out)
        print(f"omega: {clique_number(g, timeout=args.timeout)}", file=out)
        print(f"chi: {chromatic_number(g, timeout=args.timeout)}", file=out)
    except SolveTimeout as exc:
        print(f"alpha/omega/chi: timed out ({exc})", file=out)
    try:
        chi_f = fractional_chromatic(g)
        theta_s = theta_star_fractional(g)
        print(f"chi*: {chi_f}", file=out)
        print(f"theta*: {theta_s}", file=out)
    except SolveTimeout as exc:
        print(f"chi*/theta*: enumeration capped ({exc})", file=out)
    print(f"caro-wei: {caro_wei(g)}", file=out)
    if g.n <= AUTOMORPHISM_VERTEX_CAP:
        print(f"vertex-transitive: {is_vertex_transitive(g)}", file=out)
        print(f"edge-transitive: {is_edge_transitive(g)}", file=out)
    else:
        print(f"vertex-transitive: not checked (cap {AUTOMORPHISM_VERTEX_CAP})", file=out)
    if g.n <= SPECTRUM_VERTEX_CAP:
        spectrum = adjacency_spectrum(g)
        shown = ", ".join(f"{v:.6f}" for v in spectrum[:12])
        if len(spectrum) > 12:
            shown += ", ..."
        print(f"spectrum: [{shown}]", file=out)
        if g.num_edges:
            try:
                sd = eigenspace_constants(g)
                print(f"theta_L: {sd.theta_l:.9f}", file=out)
                print(
                    f"q': {sd.q_prime:.9f} (edge constant {sd.c_const:.9f}, "
                    f"bottom multiplicity {sd.multiplicity_min})",
                    file=out,
                )
            except NonConstantC as exc:
                print(f"theta_L: unavailable ({exc})", file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# curve


def _delta_grid(lo: float, hi: float, step: float) -> list[float]:
    if not (0.0 <= lo < hi <= 1.0) or step <= 0:
        raise ValueError("need 0 <= delta-min < delta-max <= 1 and step > 0")
    count = int(round((hi - lo) / step))
    grid = [lo + i * step for i in range(count + 1)]
    if grid[-1] > hi + 1e-12:
        grid.pop()
    grid[-1] = min(grid[-1], hi)
    return grid


def _write_svg(curve: RateCurve, path: str, log_base: float):
    width, height, margin = 640, 440, 56
    points = curve.points
    if not points:
        raise ValueError("nothing to plot")
    scale = math.log(log_base)
    xs = [p.delta for p in points]
    ys = [p.rate_nats / scale for p in points]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = 0.0, max(ys) * 1.05 or 1.0

    def sx(x):
        return margin + (x - x_lo) / (x_hi - x_lo or 1.0) * (width - 2 * margin)

    def sy(y):
        return height - margin - (y - y_lo) / (y_hi - y_lo or 1.0) * (height - 2 * margin)

    palette = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" stroke="black"/>',
        f'<text x="{width // 2}" y="{height - 12}" font-size="13">delta</text>',
        f'<text x="12" y="{height // 2}" font-size="13" transform="rotate(-90 12 {height // 2})">'
        f"rate (log base {log_base:g})</text>",
    ]
    for i, prov in enumerate(curve.provenances()):
        series = curve.series(prov)
        color = palette[i % len(palette)]
        coords = " ".join(f"{sx(p.delta):.2f},{sy(p.rate_nats / scale):.2f}" for p in series)
        dash = "" if series[0].kind == "lower" else ' stroke-dasharray="6 3"'
        parts.append(f'<polyline fill="none" stroke="{color}"{dash} points="{coords}"/>')
        parts.append(
            f'<text x="{width - margin - 150}" y="{margin + 16 * i}" font-size="12" '
            f'fill="{color}">{prov} ({series[0].kind})</text>'
        )
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts) + "\n")


def cmd_curve(args) -> int:
    parsed = parse_graph_spec(args.spec)
    rules = [r.strip() for r in args.rules.split(",") if r.strip()]
    if not rules:
        raise GraphSpecError("no rules requested", 0)
    grid = _delta_grid(args.delta_min, args.delta_max, args.step)
    curve = best_envelope(
        parsed.graph,
        grid,
        rules,
        assume_vertex_transitive=parsed.vertex_transitive,
        clique_sum_terms=parsed.clique_sum_terms,
        spec_resolver=lambda spec: parse_graph_spec(spec).graph,
        timeout=args.timeout,
    )
    for note in curve.notes:
        print(f"warning: {note}", file=sys.stderr)
    if not curve.provenances():
        print("error: no applicable rules", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "csv":
        payload = curve.to_csv(args.log_base)
    elif args.format == "json":
        payload = curve.to_json(args.log_base)
    else:
        _write_svg(curve, args.output, args.log_base)
        print(f"wrote {args.output}", file=sys.stderr)
        return EXIT_OK
    if args.output == "-":
        args.out.write(payload)
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(payload)
        print(f"wrote {args.output}", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    parsed = parse_graph_spec(args.spec)
    g = parsed.graph
    out = args.out
    slack = 1e-9
    try:
        alpha = independence_number(g, timeout=args.timeout)
    except SolveTimeout:
        print("cannot verify: base independence number timed out", file=out)
        return EXIT_CAP
    spectral = None
    lp_note = ""
    if g.num_edges:
        try:
            spectral = eigenspace_constants(g)
        except NonConstantC as exc:
            lp_note = f"LP side skipped: {exc}"
        except CapExceeded as exc:
            lp_note = f"LP side skipped: {exc}"
    else:
        lp_note = "LP side skipped: graph has no edges"
    if lp_note:
        print(lp_note, file=out)

    failures = 0
    capped = 0
    print(f"{'n':>3} {'d':>3} {'gv-lower':>14} {'alpha':>8} {'lp-upper':>16}", file=out)
    for n in range(1, args.max_n + 1):
        for d in range(0, n + 1):
            try:
                exact = exact_alpha_power(
                    g, n, d, timeout=args.timeout, max_vertices=args.max_vertices
                )
            except (CapExceeded, SolveTimeout) as exc:
                print(f"{n:>3} {d:>3} skipped: {exc}", file=out)
                capped += 1
                continue
            gv = gv_sphere_count(g, alpha, n, d)
            row_ok = gv <= exact + slack
            upper_txt = ""
            if spectral is not None and d >= 1:
                upper = spectral.theta_l**n * a_lp1(n, d, spectral.q_prime).objective
                row_ok = row_ok and exact <= upper * (1 + 1e-12) + slack
                upper_txt = f"{upper:>16.6f}"
            print(f"{n:>3} {d:>3} {gv:>14.6f} {exact:>8} {upper_txt}", file=out)
            if not row_ok:
                failures += 1
                print(f"    SANDWICH VIOLATED at n={n}, d={d}", file=out)
    if failures:
        print(f"{failures} violation(s)", file=out)
        return EXIT_VERIFY_FAILED
    if capped:
        print(f"all computed sandwiches hold; {capped} instance(s) skipped on caps", file=out)
        return EXIT_CAP
    print("all sandwiches hold", file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# figure presets


def cmd_figure(args) -> int:
    if args.name != "pentagon":
        raise GraphSpecError(f"unknown figure preset {args.name!r}", 0)
    parsed = parse_graph_spec("C:5")
    grid = _delta_grid(0.0, 1.0, 0.001)
    curve = best_envelope(
        parsed.graph,
        grid,
        ["vt", "power:2", "lp"],
        assume_vertex_transitive=True,
    )
    csv_path = f"{args.output_prefix}.csv"
    svg_path = f"{args.output_prefix}.svg"
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(curve.to_csv(args.log_base))
    _write_svg(curve, svg_path, args.log_base)
    print(f"wrote {csv_path} and {svg_path}", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphcap",
        description="Bounds on the rate-distance tradeoff for codes in "
        "distance-truncated strong graph powers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_info = sub.add_parser("info", help="invariant report for a graph spec")
    p_info.add_argument("spec")
    p_info.add_argument("--timeout", type=float, default=30.0)

    p_curve = sub.add_parser("curve", help="rate-bound curves over a delta grid")
    p_curve.add_argument("spec")
    p_curve.add_argument(
        "--rules",
        default="vt,frac,lp",
        help="comma list: vt, frac, lp, power:R, cover, homlift:SPEC, sumclique-gv, sumclique-lp",
    )
    p_curve.add_argument("--delta-min", type=float, default=0.0)
    p_curve.add_argument("--delta-max", type=float, default=1.0)
    p_curve.add_argument("--step", type=float, default=0.01)
    p_curve.add_argument("--log-base", type=float, default=2.0)
    p_curve.add_argument("--format", choices=["csv", "json", "svg"], default="csv")
    p_curve.add_argument("--output", default="-")
    p_curve.add_argument("--timeout", type=float, default=60.0)

    p_verify = sub.add_parser("verify", help="oracle sandwich checks at small n")
    p_verify.add_argument("spec")
    p_verify.add_argument("--max-n", type=int, default=3)
    p_verify.add_argument("--timeout", type=float, default=30.0, help="per-instance budget (s)")
    p_verify.add_argument("--max-vertices", type=int, default=None)

    p_figure = sub.add_parser("figure", help="pinned figure reproductions")
    p_figure.add_argument("name")
    p_figure.add_argument("--output-prefix", default="pentagon")
    p_figure.add_argument("--log-base", type=float, default=2.0)

    return parser


def run(argv: list[str] | None = None, out=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.out = out if out is not None else sys.stdout
    handlers = {
        "info": cmd_info,
        "curve": cmd_curve,
        "verify": cmd_verify,
        "figure": cmd_figure,
    }
    try:
        return handlers[args.command](args)
    except GraphSpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapExceeded, SolveTimeout) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GraphcapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAILED


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
