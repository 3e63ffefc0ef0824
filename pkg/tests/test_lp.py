from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sparsedom import lp
from sparsedom.gen import gen_outerplanar, gen_planar, gen_triangle_free_planar
from sparsedom.general import ContractError, phase1
from sparsedom.graph import Graph, orient_min_out_degree
from sparsedom.k3t import phase2_k3t
from sparsedom.local import Color, RoundTrace, initial_states, red_set
from sparsedom.lp import (
    FractionalAssignment,
    LPConvergenceError,
    lp_iterations,
    phase3_lp,
    primal_dual_iterates,
    reduce_representatives,
    round_bansal_umboh,
    select_high_degree,
    solve_cover_lp_local,
)
from sparsedom.oracle import exact_lp_opt, gamma
from sparsedom.params import outerplanar, planar

from conftest import small_graphs


def residual_instance(g, preset):
    _, states = phase1(g, initial_states(g), preset.params)
    if preset.phase2 == "k3t":
        _, states, _ = phase2_k3t(g, states, preset)
    return states


class TestReduction:
    def test_twins(self):
        # 1 and 2 both see only the red vertex 0
        g = Graph(range(3), [(0, 1), (0, 2)])
        red = reduce_representatives(g, {0})
        assert red.graph.vertices == (0, 1)
        assert red.representatives == {1: frozenset({1, 2})}

    @given(small_graphs(max_n=10), st.data())
    def test_invariants_and_soundness(self, g, data):
        R = data.draw(st.sets(st.sampled_from(list(g.vertices))))
        red = reduce_representatives(g, R)
        h = red.graph
        assert set(R) <= set(h.vertices)
        for u in R:
            assert h.neighbors(u) & R == g.neighbors(u) & R
        seen = set()
        for v in h:
            if v not in R:
                nr = g.neighbors(v) & R
                assert nr and h.neighbors(v) == nr and nr not in seen
                seen.add(nr)
        # R-domination optimum is unchanged
        assert gamma(h, R) == gamma(g, R)

    def test_size_bound_on_planar(self):
        preset = planar()
        p = preset.params
        for seed in range(6):
            g = gen_planar(40, seed)
            states = residual_instance(g, preset)
            R = red_set(states)
            if not R:
                continue
            h = reduce_representatives(g, R).graph
            bound = (4**p.nabla1 + 2 * p.nabla1) * (preset.residual_cap + 1) * gamma(g, R)
            assert h.n <= bound


class TestHighDegree:
    def test_none_above_cap(self):
        assert select_high_degree(gen_planar(50, 0), 26040) == set()

    def test_star(self):
        g = Graph(range(6), [(0, i) for i in range(1, 6)])
        assert select_high_degree(g, 4) == {0}
        assert select_high_degree(g, Fraction(9, 2)) == {0}
        assert select_high_degree(g, 5) == set()


class TestSolver:
    def test_isolated(self):
        x = solve_cover_lp_local(Graph([0]), [0], Fraction(1), 0)
        assert x.values == {0: 1} and x.objective == 1

    def test_edge(self):
        eps = Fraction(1, 2)
        x = solve_cover_lp_local(Graph([0, 1], [(0, 1)]), [0, 1], eps, 1)
        assert x.is_feasible(Graph([0, 1], [(0, 1)]), [0, 1])
        assert x.objective <= 1 + eps

    def test_rounds_depend_only_on_degree_bound_and_eps(self):
        counts = set()
        for seed, n in [(0, 20), (1, 200)]:
            trace = RoundTrace()
            g = gen_planar(n, seed)
            solve_cover_lp_local(g, g.vertices, Fraction(1, 2), 100, trace)
            counts.add(trace.total)
        assert counts == {2 * lp_iterations(100, Fraction(1, 2)) + 1}

    def test_degree_contract(self):
        g = Graph(range(4), [(0, 1), (0, 2), (0, 3)])
        with pytest.raises(ContractError):
            solve_cover_lp_local(g, g.vertices, 1, 2)

    def test_unproven_target_raises(self, monkeypatch):
        # one iteration cannot certify a 1.01 factor on a star
        monkeypatch.setattr(lp, "lp_iterations", lambda max_degree, epsilon: 1)
        g = Graph(range(11), [(0, i) for i in range(1, 11)])
        with pytest.raises(LPConvergenceError):
            solve_cover_lp_local(g, g.vertices, Fraction(1, 100), 10)

    @settings(max_examples=40)
    @given(st.integers(0, 10**6), st.sampled_from([Fraction(1), Fraction(1, 2), Fraction(1, 5)]))
    def test_within_factor_of_exact(self, seed, eps):
        g = [gen_planar, gen_triangle_free_planar, gen_outerplanar][seed % 3](30, seed)
        rng = np.random.default_rng(seed)
        R = [v for v in g if rng.random() < 0.6] or [g.vertices[0]]
        x = solve_cover_lp_local(g, R, eps, g.max_degree())
        assert x.is_feasible(g, R)
        opt = exact_lp_opt(g, R)
        assert x.lower_bound <= opt <= x.objective <= (1 + eps) * opt

    @given(small_graphs(max_n=12), st.integers(1, 3))
    def test_iterates_are_local(self, g, k):
        # after k iterations x_u depends only on the radius-(2k+1) ball around u
        R = sorted(g.vertices)
        x_full, _ = primal_dual_iterates(g, R, k)
        for u in g:
            ball = g.induced_subgraph(g.distances_from(u, 2 * k + 2))
            x_ball, _ = primal_dual_iterates(ball, sorted(ball.vertices), k)
            assert x_ball[u] == pytest.approx(x_full[u], abs=1e-12)


class TestRounding:
    def test_single_vertex(self):
        g = Graph([0])
        H, U = round_bansal_umboh(g, [0], FractionalAssignment({0: Fraction(1)}), 3)
        assert H == {0} and U == set()

    def test_uniform_at_threshold(self):
        d = 2
        g = Graph(range(5), [(0, i) for i in range(1, 5)])
        x = FractionalAssignment({v: Fraction(1, 2 * d + 1) for v in g})
        H, _ = round_bansal_umboh(g, [0], x, d)
        assert H == set(g.vertices)

    def test_infeasible(self):
        g = Graph([0, 1], [(0, 1)])
        with pytest.raises(ContractError):
            round_bansal_umboh(g, [0, 1], FractionalAssignment({0: Fraction(1, 3)}), 1)

    def test_planar_factor(self):
        for seed in range(10):
            g = gen_planar(40, seed)
            x = solve_cover_lp_local(g, g.vertices, Fraction(1, 2), g.max_degree())
            d = orient_min_out_degree(g).max_out_degree
            assert d <= 3
            H, U = round_bansal_umboh(g, g.vertices, x, 3)
            assert g.dominates(H | U)
            assert len(H | U) <= 7 * x.objective


class TestPhase3:
    def test_no_red_left(self):
        g = Graph(range(3), [(0, 1), (0, 2)])
        states = initial_states(g)
        from sparsedom.local import recolor_after_selection

        states = recolor_after_selection(g, states, {0})
        trace = RoundTrace()
        d3, _, _ = phase3_lp(g, states, planar(), trace)
        assert d3 == set()
        full = RoundTrace()
        phase3_lp(gen_planar(30, 1), initial_states(gen_planar(30, 1)), planar(), full)
        assert trace.total == full.total

    def test_planar_bound(self):
        preset = planar()
        for seed in range(10):
            g = gen_planar(40, seed)
            states = residual_instance(g, preset)
            R = red_set(states)
            d3, after, report = phase3_lp(g, states, preset)
            assert all(s.color is not Color.RED for s in after.values())
            assert g.dominates(d3, R)
            gr = gamma(g, R)
            assert len(d3) <= 7 * (1 + preset.lp_epsilon) * gr + preset.epsilon / 2 * gr
            assert report.high_degree <= preset.epsilon / 2 * gr

    def test_restricted_class_uses_fifth_of_eps(self):
        preset = outerplanar()
        assert preset.lp_epsilon == Fraction(1, 5)
        g = gen_outerplanar(40, 3)
        states = residual_instance(g, preset)
        d3, _, report = phase3_lp(g, states, preset)
        assert report.orientation_degree == 2
        assert report.objective <= Fraction(6, 5) * exact_lp_opt(g.without_vertices([]), red_set(states))
