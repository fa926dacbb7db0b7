"""Closed-form rate functions and composition rules."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphcap.errors import NonConstantC
from graphcap.graphs import clique_sum, complete, cycle, graph_from_edges, kneser, strong_power
from graphcap.rates import (
    LOWER,
    UPPER,
    RatePoint,
    best_envelope,
    clique_cover_rate,
    entropy_hq,
    fractional_coloring_bound,
    hom_lift_bound,
    lower_bound_vt,
    power_sandwich,
    r_gv,
    r_lp1,
    sum_of_cliques_rate,
    upper_bound_lp,
)


def path(n):
    return graph_from_edges(n, [(i, i + 1) for i in range(n - 1)])


def mp_r_gv(q, delta):
    """Oracle: recompute through mpmath at 50 digits."""
    import mpmath as mp

    with mp.workdps(50):
        q, delta = mp.mpf(q), mp.mpf(delta)
        if delta >= 1 - 1 / q:
            return 0.0
        h = delta * mp.log(q - 1) - delta * mp.log(delta) - (1 - delta) * mp.log(1 - delta)
        return float(mp.log(q) - h)


def mp_r_lp1(q, delta):
    import mpmath as mp

    with mp.workdps(50):
        q, delta = mp.mpf(q), mp.mpf(delta)
        if delta >= 1 - 1 / q:
            return 0.0
        x = ((q - 1) - (q - 2) * delta - 2 * mp.sqrt((q - 1) * delta * (1 - delta))) / q
        h = x * mp.log(q - 1) - x * mp.log(x) - (1 - x) * mp.log(1 - x)
        return float(h)


QS = (2.0, 2.5, math.sqrt(5), 3.0, 10 / 3)


class TestEntropy:
    def test_binary_maximum(self):
        assert entropy_hq(2, 0.5) == math.log(2)

    def test_endpoints(self):
        for q in QS:
            assert entropy_hq(q, 0.0) == 0.0
            assert entropy_hq(q, 1.0) == pytest.approx(math.log(q - 1), abs=1e-12)

    def test_value_at_plotkin_is_log_q(self):
        assert entropy_hq(2.5, 0.6) == pytest.approx(math.log(2.5), abs=1e-12)
        for q in QS:
            assert entropy_hq(q, 1 - 1 / q) == pytest.approx(math.log(q), abs=1e-12)

    def test_domain(self):
        with pytest.raises(ValueError):
            entropy_hq(1.0, 0.5)
        with pytest.raises(ValueError):
            entropy_hq(2.0, 1.5)


class TestClosedFormRates:
    def test_gv_plotkin_exact_zero(self):
        for q in QS:
            assert r_gv(q, 1 - 1 / q) == 0.0
            assert r_gv(q, 1.0) == 0.0

    def test_gv_at_zero(self):
        for q in QS:
            assert r_gv(q, 0.0) == pytest.approx(math.log(q), abs=1e-12)

    def test_gv_against_high_precision(self):
        for q in QS:
            for delta in (0.05, 0.11, 0.2, 0.3):
                assert r_gv(q, delta) == pytest.approx(mp_r_gv(q, delta), abs=1e-12)

    def test_lp1_plotkin_exact_zero(self):
        for q in QS:
            assert r_lp1(q, 1 - 1 / q) == 0.0

    def test_lp1_at_zero(self):
        for q in QS:
            assert r_lp1(q, 0.0) == pytest.approx(math.log(q), abs=1e-12)

    def test_lp1_against_high_precision(self):
        for q in QS:
            for delta in (0.05, 0.2, 0.3):
                assert r_lp1(q, delta) == pytest.approx(mp_r_lp1(q, delta), abs=1e-11)

    def test_lp1_binary_inner_form(self):
        # for q = 2 the argument reduces to 1/2 - sqrt(delta(1-delta))
        delta = 0.3
        assert r_lp1(2, delta) == pytest.approx(
            entropy_hq(2, 0.5 - math.sqrt(delta * (1 - delta))), abs=1e-12
        )

    @given(st.floats(0.0, 1.0), st.sampled_from(QS))
    @settings(max_examples=200)
    def test_nonnegative_and_monotone_region(self, delta, q):
        assert r_gv(q, delta) >= 0.0
        assert r_lp1(q, delta) >= 0.0

    def test_continuity_at_plotkin(self):
        for q in QS:
            p = 1 - 1 / q
            eps = 1e-9
            assert r_gv(q, p - eps) < 1e-6
            assert r_lp1(q, p - eps) < 1e-3  # square-root cusp, looser scale

    def test_monotone_nonincreasing(self):
        for q in QS:
            grid = [i / 500 for i in range(501)]
            gv = [r_gv(q, d) for d in grid]
            lp = [r_lp1(q, d) for d in grid]
            assert all(a >= b - 1e-12 for a, b in zip(gv, gv[1:]))
            assert all(a >= b - 1e-12 for a, b in zip(lp, lp[1:]))


class TestCompositionRules:
    def test_vt_lower_pentagon(self):
        for delta in (0.0, 0.1, 0.3, 0.7):
            pt = lower_bound_vt(cycle(5), delta)
            assert pt.rate_nats == pytest.approx(math.log(2) + r_gv(2.5, delta), abs=1e-12)
            assert pt.kind == LOWER

    def test_vt_lower_kneser(self):
        for c, a in ((5, 2), (7, 3)):
            g = kneser(c, a)
            k = math.comb(c - 1, a - 1)
            pt = lower_bound_vt(g, 0.2)
            assert pt.rate_nats == pytest.approx(math.log(k) + r_gv(c / a, 0.2), abs=1e-9)

    def test_vt_lower_at_zero_is_log_v(self):
        for g in (cycle(5), complete(3), kneser(5, 2)):
            assert lower_bound_vt(g, 0.0).rate_nats == pytest.approx(math.log(g.n), abs=1e-9)

    def test_vt_lower_edgeless(self):
        pt = lower_bound_vt(graph_from_edges(4, []), 0.7)
        assert pt.rate_nats == pytest.approx(math.log(4))

    def test_lp_upper_pentagon(self):
        for delta in (0.0, 0.25, 0.6):
            pt = upper_bound_lp(cycle(5), delta)
            expected = 0.5 * math.log(5) + r_lp1(math.sqrt(5), delta)
            assert pt.rate_nats == pytest.approx(expected, abs=1e-9)
            assert pt.kind == UPPER

    def test_lp_upper_clique_reduces_to_hamming(self):
        for q in (2, 3):
            for delta in (0.1, 0.4):
                pt = upper_bound_lp(complete(q), delta)
                assert pt.rate_nats == pytest.approx(r_lp1(q, delta), abs=1e-9)

    def test_lp_upper_refuses_nonconstant(self):
        with pytest.raises(NonConstantC):
            upper_bound_lp(strong_power(cycle(5), 2), 0.3)

    def test_endpoint_consistency(self):
        # at delta = 1 the bounds collapse to the capacity endpoints
        assert lower_bound_vt(cycle(5), 1.0).rate_nats == pytest.approx(math.log(2))
        assert upper_bound_lp(cycle(5), 1.0).rate_nats == pytest.approx(
            math.log(math.sqrt(5)), abs=1e-9
        )

    def test_hom_lift(self):
        base = lower_bound_vt(complete(3), 0.2)
        lifted = hom_lift_bound(cycle(5), complete(3), 0.2, base)
        assert lifted.rate_nats == pytest.approx(math.log(5 / 3) + base.rate_nats, abs=1e-12)
        same = hom_lift_bound(cycle(5), cycle(5), 0.2, lower_bound_vt(cycle(5), 0.2))
        assert same.rate_nats == pytest.approx(lower_bound_vt(cycle(5), 0.2).rate_nats)

    def test_hom_lift_no_map(self):
        with pytest.raises(ValueError):
            hom_lift_bound(cycle(5), complete(2), 0.2, lower_bound_vt(complete(2), 0.2))

    def test_fractional_bound(self):
        for delta in (0.0, 0.2, 0.5):
            pt = fractional_coloring_bound(cycle(5), delta)
            assert pt.rate_nats == pytest.approx(
                lower_bound_vt(cycle(5), delta).rate_nats, abs=1e-12
            )
        pt = fractional_coloring_bound(path(3), 0.2)
        assert pt.rate_nats == pytest.approx(math.log(3 / 2) + r_gv(2, 0.2), abs=1e-12)
        for q in (2, 4):
            assert fractional_coloring_bound(complete(q), 0.1).rate_nats == pytest.approx(
                r_gv(q, 0.1), abs=1e-12
            )

    def test_power_sandwich_pentagon_formula(self):
        sq = strong_power(cycle(5), 2)
        lower_fn = lambda u: lower_bound_vt(sq, u, alpha=5).rate_nats  # noqa: E731
        for delta in (0.0, 0.1, 0.3, 0.45, 0.8):
            low, up = power_sandwich(cycle(5), 2, delta, lower_fn, None)
            expected = 0.5 * math.log(5) + 0.5 * r_gv(5, min(2 * delta, 1.0))
            assert low.rate_nats == pytest.approx(expected, abs=1e-12)
            assert up is None

    def test_power_sandwich_identity(self):
        fn = lambda u: lower_bound_vt(cycle(5), u).rate_nats  # noqa: E731
        low, _ = power_sandwich(cycle(5), 1, 0.3, fn, None)
        assert low.rate_nats == pytest.approx(fn(0.3))

    def test_power_sandwich_k2(self):
        k4 = strong_power(complete(2), 2)
        fn = lambda u: lower_bound_vt(k4, u, alpha=1).rate_nats  # noqa: E731
        low, _ = power_sandwich(complete(2), 2, 0.2, fn, None)
        assert low.rate_nats == pytest.approx(0.5 * r_gv(4, 0.4), abs=1e-12)

    def test_clique_cover_disjoint_cliques(self):
        g = clique_sum([(3, 2)])  # 3 K_2
        low, up = clique_cover_rate(g, 0.2)
        assert low.rate_nats == pytest.approx(math.log(3) + r_gv(2, 0.2), abs=1e-12)
        assert up.rate_nats == pytest.approx(math.log(3) + r_lp1(2, 0.2), abs=1e-12)

    def test_clique_cover_even_cycle(self):
        low, up = clique_cover_rate(cycle(6), 0.3)
        assert low.rate_nats == pytest.approx(math.log(3) + r_gv(2, 0.3), abs=1e-12)

    def test_clique_cover_refuses_pentagon(self):
        with pytest.raises(ValueError):
            clique_cover_rate(cycle(5), 0.2)


class TestSumOfCliques:
    def test_attains_log2_at_quarter(self):
        pt, lam = sum_of_cliques_rate(1, 2, 1, 0.25, lambda u: r_gv(2, u), LOWER)
        assert pt.rate_nats == pytest.approx(math.log(2), abs=1e-9)
        assert lam == pytest.approx(0.5, abs=1e-6)

    def test_total_space_at_zero(self):
        for a1, c, ac in ((1, 2, 1), (2, 3, 4), (3, 2, 2), (1, 5, 1)):
            pt, _ = sum_of_cliques_rate(a1, c, ac, 0.0, lambda u: r_gv(c, u), LOWER)
            assert pt.rate_nats == pytest.approx(math.log(a1 + ac * c), abs=1e-6)

    def test_upper_reaches_log2_near_0257(self):
        val_before, _ = sum_of_cliques_rate(1, 2, 1, 0.25, lambda u: r_lp1(2, u), UPPER)
        val_after, _ = sum_of_cliques_rate(1, 2, 1, 0.26, lambda u: r_lp1(2, u), UPPER)
        assert val_before.rate_nats > math.log(2) + 1e-6
        assert val_after.rate_nats == pytest.approx(math.log(2), abs=1e-9)

    def test_kind_validation(self):
        with pytest.raises(ValueError):
            sum_of_cliques_rate(1, 2, 1, 0.2, lambda u: 0.0, "sideways")


class TestEnvelope:
    def test_pentagon_rules(self):
        grid = [round(0.05 * i, 2) for i in range(21)]
        curve = best_envelope(
            cycle(5), grid, ["vt", "power:2", "lp"], assume_vertex_transitive=True
        )
        assert set(curve.provenances()) == {"vt-GV", "power:r=2", "LP-converse"}
        lower = curve.envelope(LOWER)
        upper = curve.envelope(UPPER)
        for dd in grid:
            assert lower[dd].rate_nats <= upper[dd].rate_nats + 1e-9
        assert lower[0.0].rate_nats == pytest.approx(math.log(5), abs=1e-9)
        assert upper[0.0].rate_nats == pytest.approx(math.log(5), abs=1e-9)
        assert any(note.startswith("power:r=2 upper side skipped") for note in curve.notes)

    def test_clique_envelope_is_hamming_pair(self):
        grid = [0.0, 0.2, 0.4]
        curve = best_envelope(complete(3), grid, ["vt", "lp"], assume_vertex_transitive=True)
        for p in curve.points:
            if p.provenance == "vt-GV":
                assert p.rate_nats == pytest.approx(r_gv(3, p.delta), abs=1e-12)
            else:
                assert p.rate_nats == pytest.approx(r_lp1(3, p.delta), abs=1e-9)

    def test_inapplicable_rules_noted(self):
        curve = best_envelope(path(3), [0.1], ["vt", "cover", "frac"])
        assert curve.provenances() == ["frac-GV"]
        assert len(curve.notes) == 2

    def test_monotone_along_grid(self):
        grid = [round(0.02 * i, 2) for i in range(51)]
        curve = best_envelope(cycle(5), grid, ["vt", "lp"], assume_vertex_transitive=True)
        for prov in curve.provenances():
            series = curve.series(prov)
            assert all(
                a.rate_nats >= b.rate_nats - 1e-12 for a, b in zip(series, series[1:])
            )

    def test_continuity_on_grid(self):
        step = 0.002
        grid = [round(step * i, 3) for i in range(501)]
        curve = best_envelope(cycle(5), grid, ["vt", "lp"], assume_vertex_transitive=True)
        # coarse Lipschitz check away from endpoints, explicit at Plotkin
        for prov in curve.provenances():
            series = curve.series(prov)
            for a, b in zip(series, series[1:]):
                if 0.01 < a.delta < 0.99:
                    assert abs(a.rate_nats - b.rate_nats) < 60 * step

    def test_csv_shape(self):
        curve = best_envelope(complete(2), [0.0, 0.5], ["vt", "lp"], assume_vertex_transitive=True)
        text = curve.to_csv(2.0)
        lines = text.strip().splitlines()
        assert lines[0] == "delta,bound,kind,rate"
        assert len(lines) == 1 + 2 * 2
        # rate at delta 0 in bits is 1
        assert any(line == "0.000000,vt-GV,lower,1" for line in lines)

    def test_json_schema(self):
        import json

        curve = best_envelope(complete(2), [0.0], ["vt"], assume_vertex_transitive=True)
        payload = json.loads(curve.to_json())
        assert payload["schema"] == 1
        assert payload["points"][0]["bound"] == "vt-GV"

    def test_sumclique_envelope(self):
        curve = best_envelope(
            clique_sum([(1, 1), (1, 2)]),
            [0.0, 0.25],
            ["sumclique-gv", "sumclique-lp"],
            clique_sum_terms=[(1, 1), (1, 2)],
        )
        lower = curve.envelope(LOWER)
        assert lower[0.25].rate_nats == pytest.approx(math.log(2), abs=1e-9)
        assert lower[0.0].rate_nats == pytest.approx(math.log(3), abs=1e-6)
