"""Exact invariants: independence, cliques, colorings, fractional LPs, and
the counting bounds, each checked against independent brute-force oracles."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphcap.graphs import complete, cycle, graph_from_edges, kneser, power_graph
from graphcap.invariants import (
    caro_wei,
    chromatic_number,
    clique_number,
    exact_alpha_power,
    fractional_chromatic,
    gv_sphere_count,
    independence_number,
    max_independent_set,
    maximal_independent_sets,
    theta_star_fractional,
    vt_counting_bound,
)
from tests.test_graphs import small_graphs


def path(n):
    return graph_from_edges(n, [(i, i + 1) for i in range(n - 1)])


def brute_force_alpha(g, upper=None):
    """Oracle: exhaustive subset scan, increasing size until none found."""
    best = 0
    limit = upper if upper is not None else g.n
    for k in range(1, limit + 1):
        found = False
        for combo in itertools.combinations(range(g.n), k):
            if all(not g.has_edge(u, v) for u, v in itertools.combinations(combo, 2)):
                found = True
                break
        if not found:
            break
        best = k
    return best


class TestIndependenceNumber:
    def test_c5(self):
        assert independence_number(cycle(5)) == 2

    def test_petersen(self):
        g = kneser(5, 2)
        assert independence_number(g) == 4
        assert brute_force_alpha(g) == 4

    def test_witness_is_independent_and_maximum(self):
        for g in (cycle(5), cycle(6), kneser(5, 2), complete(4), path(4)):
            witness = max_independent_set(g)
            assert len(witness) == independence_number(g)
            assert all(not g.has_edge(u, v) for u, v in itertools.combinations(witness, 2))

    def test_power_k2_5_2(self):
        g = power_graph(complete(2), 5, 2)
        assert independence_number(g) == 4
        # oracle: no 5-subset of words is pairwise >2 apart, but a 4-subset is
        assert brute_force_alpha(g, upper=5) == 4

    @given(small_graphs(max_n=7))
    @settings(max_examples=40, deadline=None)
    def test_matches_subset_scan(self, g):
        assert independence_number(g) == brute_force_alpha(g)

    def test_bipartite_shortcut_agrees_with_branch_and_bound(self):
        for g in (cycle(6), power_graph(complete(2), 3, 1), path(5)):
            assert independence_number(g, use_shortcuts=True) == independence_number(
                g, use_shortcuts=False
            )


class TestCliqueChromatic:
    def test_odd_cycle(self):
        assert clique_number(cycle(5)) == 2
        assert chromatic_number(cycle(5)) == 3

    def test_complete(self):
        assert clique_number(complete(4)) == 4
        assert chromatic_number(complete(4)) == 4

    def test_even_cycle(self):
        assert clique_number(cycle(4)) == 2
        assert chromatic_number(cycle(4)) == 2

    @given(small_graphs(max_n=6))
    @settings(max_examples=30, deadline=None)
    def test_chromatic_at_least_clique(self, g):
        assert chromatic_number(g) >= clique_number(g)

    def test_c5_square_needs_five_colors(self):
        assert chromatic_number(power_graph(cycle(5), 2, 2)) == 5


class TestFractionalChromatic:
    def test_c5(self):
        assert fractional_chromatic(cycle(5)) == Fraction(5, 2)

    def test_complete(self):
        for q in (2, 3, 5):
            assert fractional_chromatic(complete(q)) == q

    def test_c4_by_hand(self):
        # two disjoint edges cover C4: chi* = 2, and theta*(C4) = 2
        assert fractional_chromatic(cycle(4)) == 2
        assert theta_star_fractional(cycle(4)) == 2

    def test_path3(self):
        assert fractional_chromatic(path(3)) == 2

    def test_vertex_transitive_ratio(self):
        # chi* = |V|/alpha on vertex-transitive graphs
        for g in (complete(3), complete(5), cycle(4), cycle(5), cycle(7), kneser(5, 2)):
            assert fractional_chromatic(g) == Fraction(g.n, independence_number(g))

    def test_edgeless(self):
        assert fractional_chromatic(graph_from_edges(4, [])) == 1

    @given(small_graphs(max_n=6))
    @settings(max_examples=25, deadline=None)
    def test_sandwiched_between_omega_and_chi(self, g):
        chi_f = fractional_chromatic(g)
        assert clique_number(g) <= chi_f <= chromatic_number(g)

    def test_maximal_independent_sets_c5(self):
        sets = maximal_independent_sets(cycle(5))
        assert len(sets) == 5  # the five pairs {i, i+2}
        for mask in sets:
            members = [v for v in range(5) if mask >> v & 1]
            assert len(members) == 2


class TestCountingBounds:
    def test_caro_wei_examples(self):
        assert caro_wei(cycle(5)) == Fraction(5, 3)
        assert caro_wei(complete(7)) == 1
        assert caro_wei(graph_from_edges(7, [])) == 7

    @given(small_graphs(max_n=7))
    @settings(max_examples=40, deadline=None)
    def test_caro_wei_below_alpha(self, g):
        assert caro_wei(g) <= independence_number(g)

    def test_vt_bound_examples(self):
        c5 = cycle(5)
        assert vt_counting_bound(c5, [0, 2]) == 2
        assert vt_counting_bound(c5, [0]) == Fraction(5, 3)
        assert vt_counting_bound(complete(4), [0]) == 1

    def test_vt_bound_rejects_dependent_set(self):
        with pytest.raises(ValueError):
            vt_counting_bound(cycle(5), [0, 1])

    def test_gv_count_examples(self):
        assert gv_sphere_count(complete(2), 1, 5, 2) == pytest.approx(2.0)
        assert gv_sphere_count(cycle(5), 2, 3, 0) == pytest.approx(125.0)
        assert gv_sphere_count(cycle(5), 2, 2, 1) == pytest.approx(25.0 / 4.0)

    def test_gv_count_log_domain_matches_exact(self):
        # same formula through both evaluation paths
        from graphcap import graphs

        g = complete(2)
        exact = gv_sphere_count(g, 1, 200, 30)
        g300 = gv_sphere_count(g, 1, 300, 30)
        assert exact > 0 and g300 > 0

    def test_gv_count_validation(self):
        with pytest.raises(ValueError):
            gv_sphere_count(cycle(5), 0, 3, 1)
        with pytest.raises(ValueError):
            gv_sphere_count(cycle(5), 2, 3, 4)


class TestExactAlphaPower:
    def test_anchor_k2_3_1(self):
        g = power_graph(complete(2), 3, 1)
        assert exact_alpha_power(complete(2), 3, 1) == 4
        assert brute_force_alpha(g, upper=5) == 4

    def test_anchor_c5_2_2(self):
        g = power_graph(cycle(5), 2, 2)
        assert exact_alpha_power(cycle(5), 2, 2) == 5
        assert brute_force_alpha(g, upper=6) == 5

    def test_small_sandwich_gv_below_exact(self):
        for g in (complete(2), complete(3), cycle(4), cycle(5)):
            alpha = independence_number(g)
            for n in (1, 2):
                for d in range(0, n + 1):
                    exact = exact_alpha_power(g, n, d)
                    assert gv_sphere_count(g, alpha, n, d) <= exact + 1e-9

    def test_clique_cover_identity_small(self):
        for n in (1, 2, 3):
            for d in range(0, n + 1):
                assert exact_alpha_power(cycle(4), n, d) == 2**n * exact_alpha_power(
                    complete(2), n, d
                )
