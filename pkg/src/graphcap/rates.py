"""Closed-form rate functions and the composition rules that combine them
into lower/upper envelopes for the rate-distance tradeoff of a graph.

All rates are handled internally in nats; conversion to a display base is a
presentation concern of the callers. Every bound function is zero at and
beyond its Plotkin point and equals log of the full-space size at delta = 0.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from graphcap.automorphisms import find_homomorphism, is_vertex_transitive
from graphcap.caps import AUTOMORPHISM_VERTEX_CAP
from graphcap.errors import CapExceeded, NonConstantC
from graphcap.graphs import Graph, strong_power
from graphcap.invariants import (
    chromatic_number,
    clique_number,
    fractional_chromatic,
    independence_number,
    theta_star_fractional,
)
from graphcap.spectral import SpectralData, eigenspace_constants

LOWER = "lower"
UPPER = "upper"


def entropy_hq(q: float, x: float) -> float:
    """q-ary entropy in nats: x log(q-1) - x log x - (1-x) log(1-x)."""
    if q <= 1:
        raise ValueError(f"entropy needs q > 1, got {q}")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"entropy argument must lie in [0,1], got {x}")
    total = x * math.log(q - 1) if x > 0.0 else 0.0
    if 0.0 < x < 1.0:
        total += -x * math.log(x) - (1.0 - x) * math.log(1.0 - x)
    return total


def plotkin_point(q: float) -> float:
    return 1.0 - 1.0 / q


def r_gv(q: float, delta: float) -> float:
    """Sphere-covering lower-bound rate: log q - H_q(delta), zero past Plotkin."""
    if q <= 1:
        raise ValueError(f"need q > 1, got {q}")
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"delta must lie in [0,1], got {delta}")
    if delta >= plotkin_point(q):
        return 0.0
    return math.log(q) - entropy_hq(q, delta)


def r_lp1(q: float, delta: float) -> float:
    """First linear-programming upper-bound rate, zero at and past Plotkin."""
    if q <= 1:
        raise ValueError(f"need q > 1, got {q}")
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"delta must lie in [0,1], got {delta}")
    if delta >= plotkin_point(q):
        return 0.0
    inner = ((q - 1.0) - (q - 2.0) * delta - 2.0 * math.sqrt((q - 1.0) * delta * (1.0 - delta))) / q
    inner = min(max(inner, 0.0), plotkin_point(q))  # absorb roundoff at the ends
    return entropy_hq(q, inner)


@dataclass(frozen=True)
class RatePoint:
    delta: float
    rate_nats: float
    kind: str  # LOWER or UPPER
    provenance: str


@dataclass
class RateCurve:
    graph_label: str
    points: list[RatePoint] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def provenances(self) -> list[str]:
        seen: dict[str, None] = {}
        for p in self.points:
            seen.setdefault(p.provenance, None)
        return list(seen)

    def series(self, provenance: str) -> list[RatePoint]:
        return sorted((p for p in self.points if p.provenance == provenance), key=lambda p: p.delta)

    def envelope(self, kind: str) -> dict[float, RatePoint]:
        """Pointwise best bound of the given kind: max of lowers, min of uppers."""
        best: dict[float, RatePoint] = {}
        for p in self.points:
            if p.kind != kind:
                continue
            cur = best.get(p.delta)
            if cur is None:
                best[p.delta] = p
            elif kind == LOWER and p.rate_nats > cur.rate_nats:
                best[p.delta] = p
            elif kind == UPPER and p.rate_nats < cur.rate_nats:
                best[p.delta] = p
        return best

    def to_csv(self, log_base: float = 2.0) -> str:
        scale = math.log(log_base)
        lines = ["delta,bound,kind,rate"]
        for p in sorted(self.points, key=lambda p: (p.delta, p.provenance)):
            lines.append(f"{p.delta:.6f},{p.provenance},{p.kind},{p.rate_nats / scale:.12g}")
        return "\n".join(lines) + "\n"

    def to_json(self, log_base: float = 2.0) -> str:
        scale = math.log(log_base)
        payload = {
            "schema": 1,
            "graph": self.graph_label,
            "log_base": log_base,
            "notes": self.notes,
            "points": [
                {
                    "delta": p.delta,
                    "bound": p.provenance,
                    "kind": p.kind,
                    "rate": p.rate_nats / scale,
                }
                for p in sorted(self.points, key=lambda p: (p.delta, p.provenance))
            ],
        }
        return json.dumps(payload, indent=2)


# ---------------------------------------------------------------------------
# individual bounds


def lower_bound_vt(g: Graph, delta: float, alpha: int | None = None) -> RatePoint:
    """log alpha + R_GV(|V|/alpha, delta) for a vertex-transitive graph."""
    if alpha is None:
        alpha = independence_number(g)
    if alpha == g.n:  # edgeless: the whole space is a code at every distance
        return RatePoint(delta, math.log(g.n), LOWER, "edgeless")
    q = g.n / alpha
    return RatePoint(delta, math.log(alpha) + r_gv(q, delta), LOWER, "vt-GV")


def upper_bound_lp(g: Graph, delta: float, spectral: SpectralData | None = None) -> RatePoint:
    """log theta + R_LP1(|V|/theta, delta); requires the edge-constant gate."""
    if g.num_edges == 0:
        raise ValueError("converse bound requires at least one edge")
    if spectral is None:
        spectral = eigenspace_constants(g)  # raises NonConstantC when inapplicable
    theta = spectral.theta_l
    return RatePoint(delta, math.log(theta) + r_lp1(spectral.q_prime, delta), UPPER, "LP-converse")


def hom_lift_bound(
    g: Graph,
    h: Graph,
    delta: float,
    rate_h: RatePoint,
    hom: Sequence[int] | None = None,
) -> RatePoint:
    """Lift a lower bound along a homomorphism g -> h: add log(|V(g)|/|V(h)|)."""
    if rate_h.kind != LOWER:
        raise ValueError("homomorphism lifting applies to lower bounds")
    if hom is None:
        hom = find_homomorphism(g, h)
        if hom is None:
            raise ValueError(f"no homomorphism from {g.label or 'G'} to {h.label or 'H'}")
    else:
        from graphcap.automorphisms import is_homomorphism

        if not is_homomorphism(g, h, hom):
            raise ValueError("supplied witness is not a homomorphism")
    rate = math.log(g.n / h.n) + rate_h.rate_nats
    return RatePoint(delta, rate, LOWER, f"hom-lift:{h.label or 'H'}")


def fractional_coloring_bound(
    g: Graph, delta: float, chi_frac: Fraction | None = None
) -> RatePoint:
    """log(|V|/chi*) + R_GV(chi*, delta); valid for every graph."""
    if chi_frac is None:
        chi_frac = fractional_chromatic(g)
    if chi_frac == 1:  # edgeless
        return RatePoint(delta, math.log(g.n), LOWER, "edgeless")
    q = float(chi_frac)
    return RatePoint(delta, math.log(g.n / q) + r_gv(q, delta), LOWER, "frac-GV")


def power_sandwich(
    g: Graph,
    r: int,
    delta: float,
    lower_r: Callable[[float], float] | None,
    upper_r: Callable[[float], float] | None,
) -> tuple[RatePoint | None, RatePoint | None]:
    """Transfer bounds from the strong r-th power back to the base graph.

    ``lower_r``/``upper_r`` bound the power graph's rate as functions of
    delta. The lower transfer evaluates at r*delta (clamped to 1, where every
    lower bound in this module is zero or the capacity floor), the upper at
    delta itself.
    """
    if r < 1:
        raise ValueError("power must be >= 1")
    lower = None
    if lower_r is not None:
        lower = RatePoint(delta, lower_r(min(r * delta, 1.0)) / r, LOWER, f"power:r={r}")
    upper = None
    if upper_r is not None:
        upper = RatePoint(delta, upper_r(delta) / r, UPPER, f"power:r={r}")
    return lower, upper


def _clique_cover_params(g: Graph) -> tuple[int, int]:
    """Check the tight-cover hypotheses exactly; return (alpha, clique size)."""
    omega = clique_number(g)
    chi = chromatic_number(g)
    if omega != chi:
        raise ValueError(f"clique cover rule needs omega == chi, got {omega} != {chi}")
    theta_star = theta_star_fractional(g)
    if theta_star * omega != g.n:
        raise ValueError(
            f"clique cover rule needs theta* x omega == |V|: {theta_star} x {omega} != {g.n}"
        )
    return int(theta_star), omega


def clique_cover_rate(
    g: Graph,
    delta: float,
    kc_lower: Callable[[float], float] | None = None,
    kc_upper: Callable[[float], float] | None = None,
) -> tuple[RatePoint, RatePoint]:
    """Exact reduction to the clique when a tight uniform clique cover exists.

    Hypotheses checked exactly: omega = chi = c and theta* x omega = |V|.
    Refuses (ValueError) when they fail rather than emitting a weaker bound.
    """
    alpha, c = _clique_cover_params(g)
    if c == 1:  # edgeless: the clique factor contributes nothing
        base = math.log(alpha)
        return (
            RatePoint(delta, base, LOWER, "cover:K1"),
            RatePoint(delta, base, UPPER, "cover:K1"),
        )
    if kc_lower is None:
        kc_lower = lambda dd: r_gv(c, dd)  # noqa: E731
    if kc_upper is None:
        kc_upper = lambda dd: r_lp1(c, dd)  # noqa: E731
    base = math.log(alpha)
    prov = f"cover:K{c}"
    return (
        RatePoint(delta, base + kc_lower(delta), LOWER, prov),
        RatePoint(delta, base + kc_upper(delta), UPPER, prov),
    )


def _golden_max(fn: Callable[[float], float], lo: float, hi: float, tol: float) -> tuple[float, float]:
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    x1 = b - inv_phi * (b - a)
    x2 = a + inv_phi * (b - a)
    f1, f2 = fn(x1), fn(x2)
    while b - a > tol:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + inv_phi * (b - a)
            f2 = fn(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - inv_phi * (b - a)
            f1 = fn(x1)
    mid = 0.5 * (a + b)
    return mid, fn(mid)


def sum_of_cliques_rate(
    a1: int,
    c: int,
    ac: int,
    delta: float,
    rate_kc: Callable[[float], float],
    kind: str,
    grid_step: float = 1e-3,
    refine_tol: float = 1e-9,
) -> tuple[RatePoint, float]:
    """Rate of a1 K_1 + ac K_c via the split-fraction maximization.

    Maximizes H_q(lambda) + lambda * rate_kc(delta/lambda) over the split
    fraction lambda (the rate term is zero whenever delta/lambda reaches 1,
    matching the complete blocks of the decomposition). Returns the bound
    point and the maximizing lambda.
    """
    if a1 < 1 or ac < 1 or c < 1:
        raise ValueError("clique counts and size must be positive")
    if kind not in (LOWER, UPPER):
        raise ValueError(f"unknown bound kind {kind!r}")
    q = ac / a1 + 1.0

    def phi(lam: float) -> float:
        if lam <= 0.0:
            return 0.0
        u = min(delta / lam, 1.0) if delta > 0.0 else 0.0
        return entropy_hq(q, lam) + lam * rate_kc(u)

    best_lam, best_val = 0.0, phi(0.0)
    steps = int(round(1.0 / grid_step))
    for i in range(steps + 1):
        lam = min(i * grid_step, 1.0)
        val = phi(lam)
        if val > best_val:
            best_lam, best_val = lam, val
    lo = max(0.0, best_lam - grid_step)
    hi = min(1.0, best_lam + grid_step)
    lam_star, val_star = _golden_max(phi, lo, hi, refine_tol)
    if val_star < best_val:
        lam_star, val_star = best_lam, best_val
    prov = "sumclique-GV" if kind == LOWER else "sumclique-LP"
    return RatePoint(delta, math.log(a1) + val_star, kind, prov), lam_star


def sum_of_cliques_params(terms: Sequence[tuple[int, int]]) -> tuple[int, int, int]:
    """Extract (a1, c, ac) from clique-sum terms of the shape a1 K_1 + ac K_c."""
    counts: dict[int, int] = {}
    for mult, size in terms:
        counts[size] = counts.get(size, 0) + mult
    if set(counts) == {1} or 1 not in counts or len(counts) != 2:
        raise ValueError("rule needs cliques of exactly two sizes, one of them 1")
    c = next(size for size in counts if size != 1)
    return counts[1], c, counts[c]


# ---------------------------------------------------------------------------
# envelope assembly


def best_envelope(
    g: Graph,
    delta_grid: Iterable[float],
    rules: Sequence[str],
    *,
    assume_vertex_transitive: bool | None = None,
    clique_sum_terms: Sequence[tuple[int, int]] | None = None,
    spec_resolver: Callable[[str], Graph] | None = None,
    timeout: float | None = None,
) -> RateCurve:
    """Evaluate the requested composition rules over a delta grid.

    Inapplicable rules are skipped with a human-readable note instead of
    failing the whole job.
    """
    grid = [float(d) for d in delta_grid]
    curve = RateCurve(graph_label=g.label or "G")
    emitters: list[tuple[str, str, Callable[[float], float]]] = []

    def vt_known() -> bool | None:
        if assume_vertex_transitive is not None:
            return assume_vertex_transitive
        if g.n <= AUTOMORPHISM_VERTEX_CAP:
            return is_vertex_transitive(g)
        return None

    alpha_cache: dict[int, int] = {}

    def alpha_of(graph: Graph, key: int) -> int:
        if key not in alpha_cache:
            alpha_cache[key] = independence_number(graph, timeout=timeout)
        return alpha_cache[key]

    for rule in rules:
        name, _, arg = rule.partition(":")
        try:
            if name == "vt":
                vt = vt_known()
                if vt is None:
                    raise ValueError("vertex-transitivity unknown above predicate cap")
                if not vt:
                    raise ValueError("graph is not vertex-transitive")
                alpha = alpha_of(g, 0)
                if alpha == g.n:
                    emitters.append(("edgeless", LOWER, lambda dd: math.log(g.n)))
                else:
                    q = g.n / alpha
                    base = math.log(alpha)
                    emitters.append(("vt-GV", LOWER, lambda dd, q=q, b=base: b + r_gv(q, dd)))
            elif name == "frac":
                chi_frac = fractional_chromatic(g)
                if chi_frac == 1:
                    emitters.append(("edgeless", LOWER, lambda dd: math.log(g.n)))
                else:
                    q = float(chi_frac)
                    base = math.log(g.n / q)
                    emitters.append(("frac-GV", LOWER, lambda dd, q=q, b=base: b + r_gv(q, dd)))
            elif name == "lp":
                spectral = eigenspace_constants(g)
                theta = spectral.theta_l
                qp = spectral.q_prime
                base = math.log(theta)
                emitters.append(("LP-converse", UPPER, lambda dd, q=qp, b=base: b + r_lp1(q, dd)))
            elif name == "power":
                r = int(arg or "2")
                if r < 1:
                    raise ValueError(f"bad power {arg!r}")
                vt = vt_known()
                if vt is None or not vt:
                    raise ValueError("power rule needs a vertex-transitive base graph")
                power = strong_power(g, r)
                alpha_r = alpha_of(power, r)
                prov = f"power:r={r}"
                if alpha_r == power.n:
                    low = lambda dd, m=power.n: math.log(m)  # noqa: E731
                else:
                    qr = power.n / alpha_r
                    br = math.log(alpha_r)
                    low = lambda dd, q=qr, b=br: b + r_gv(q, dd)  # noqa: E731
                emitters.append(
                    (prov, LOWER, lambda dd, f=low, r=r: f(min(r * dd, 1.0)) / r)
                )
                try:
                    spectral_r = eigenspace_constants(power)
                    upr = lambda dd, s=spectral_r: math.log(s.theta_l) + r_lp1(s.q_prime, dd)  # noqa: E731
                    emitters.append((prov, UPPER, lambda dd, f=upr, r=r: f(dd) / r))
                except NonConstantC as exc:
                    curve.notes.append(f"power:r={r} upper side skipped: {exc}")
            elif name == "cover":
                alpha, c = _clique_cover_params(g)
                base = math.log(alpha)
                prov = f"cover:K{c}"
                if c == 1:
                    emitters.append((prov, LOWER, lambda dd, b=base: b))
                    emitters.append((prov, UPPER, lambda dd, b=base: b))
                else:
                    emitters.append((prov, LOWER, lambda dd, b=base, c=c: b + r_gv(c, dd)))
                    emitters.append((prov, UPPER, lambda dd, b=base, c=c: b + r_lp1(c, dd)))
            elif name == "homlift":
                if spec_resolver is None:
                    raise ValueError("no graph-spec resolver supplied for homlift")
                target = spec_resolver(arg)
                hom = find_homomorphism(g, target)
                if hom is None:
                    raise ValueError(f"no homomorphism into {target.label}")
                alpha_h = independence_number(target, timeout=timeout)
                shift = math.log(g.n / target.n)
                prov = f"hom-lift:{target.label or 'H'}"
                if alpha_h == target.n:
                    fn = lambda dd, s=shift, m=target.n: s + math.log(m)  # noqa: E731
                else:
                    qh = target.n / alpha_h
                    bh = math.log(alpha_h)
                    fn = lambda dd, s=shift, q=qh, b=bh: s + b + r_gv(q, dd)  # noqa: E731
                emitters.append((prov, LOWER, fn))
            elif name in ("sumclique-gv", "sumclique-lp"):
                if clique_sum_terms is None:
                    raise ValueError("graph was not built as a sum of cliques")
                a1, c, ac = sum_of_cliques_params(clique_sum_terms)
                if name == "sumclique-gv":
                    kc = lambda dd, c=c: r_gv(c, dd)  # noqa: E731
                    kind = LOWER
                else:
                    kc = lambda dd, c=c: r_lp1(c, dd)  # noqa: E731
                    kind = UPPER

                def sum_fn(dd, a1=a1, c=c, ac=ac, kc=kc, kind=kind):
                    point, _ = sum_of_cliques_rate(a1, c, ac, dd, kc, kind)
                    return point.rate_nats

                prov = "sumclique-GV" if kind == LOWER else "sumclique-LP"
                emitters.append((prov, kind, sum_fn))
            else:
                raise ValueError(f"unknown rule {rule!r}")
        except (ValueError, NonConstantC, CapExceeded) as exc:
            curve.notes.append(f"rule {rule!r} skipped: {exc}")

    for prov, kind, fn in emitters:
        for dd in grid:
            curve.points.append(RatePoint(dd, fn(dd), kind, prov))
    return curve
