import math
import warnings

import pytest
from hypothesis import given

from sparsedom.gen import gen_outerplanar, gen_planar
from sparsedom.general import PromiseViolation, phase1
from sparsedom.graph import Graph
from sparsedom.greedy import greedy_bound, phase3_greedy
from sparsedom.k3t import phase2_k3t
from sparsedom.local import Color, RoundTrace, initial_states, max_residual_degree, recolor_after_selection, red_set
from sparsedom.oracle import gamma
from sparsedom.params import planar

from conftest import small_graphs


def test_star_picks_centre_first():
    g = Graph(range(6), [(0, i) for i in range(1, 6)])
    trace = RoundTrace()
    d3, states, log = phase3_greedy(g, initial_states(g), 5, trace)
    assert d3 == {0}
    assert states[0].color is Color.GREEN and not red_set(states)
    assert log.steps[0] == (5, 1, 6, 0)
    assert trace.total == 2 * 6


def test_no_red_still_charges_the_schedule():
    g = Graph(range(3), [(0, 1), (1, 2)])
    states = recolor_after_selection(g, initial_states(g), {1})
    trace = RoundTrace()
    d3, _, log = phase3_greedy(g, states, 4, trace)
    assert d3 == set() and trace.total == 10
    assert log.steps == []


def test_over_cap_warns_or_raises():
    g = Graph(range(5), [(0, i) for i in range(1, 5)])
    with pytest.warns(RuntimeWarning, match="exceeds the cap"):
        d3, _, log = phase3_greedy(g, initial_states(g), 2)
    assert d3 == {0} and log.steps[0][0] == 4
    with pytest.raises(PromiseViolation):
        phase3_greedy(g, initial_states(g), 2, strict=True)


@given(small_graphs(max_n=12))
def test_countdown_invariants(g):
    states = initial_states(g)
    cap = max_residual_degree(states)
    d3, after, log = phase3_greedy(g, states, cap, RoundTrace(), nabla0=3)
    assert g.dominates(d3)
    assert not red_set(after)
    # residual degrees only fall, and the counts in the log are consistent
    reds = [r for _, _, r, _ in log.steps]
    assert reds == sorted(reds, reverse=True)
    total = 0
    for i, p, r, r_after in reversed(log.steps):
        assert r_after <= r
        total += p
        assert total <= r


def test_planar_within_bound():
    preset = planar()
    bound = greedy_bound(3, preset.residual_cap)
    for seed in range(12):
        g = gen_planar(40, seed)
        _, states = phase1(g, initial_states(g), preset.params)
        _, states, _ = phase2_k3t(g, states, preset)
        R = red_set(states)
        d3, _, log = phase3_greedy(g, states, preset.residual_cap, nabla0=3)
        assert len(d3) <= bound * gamma(g, R)
        assert log.h2_violations == []


def test_outerplanar_residual_run():
    g = gen_outerplanar(40, 5)
    d3, _, _ = phase3_greedy(g, initial_states(g), max(9, g.max_degree()), nabla0=2)
    assert len(d3) <= greedy_bound(2, max(9, g.max_degree())) * gamma(g)


class TestBound:
    def test_planar_value(self):
        assert greedy_bound(3, 30) == pytest.approx(15.8377, abs=1e-4)

    def test_at_threshold(self):
        # ln(1) vanishes when delta_R = 3 nabla0
        assert greedy_bound(2, 6) == pytest.approx(7)
        assert greedy_bound(3, 9) == pytest.approx(10)

    def test_below_threshold(self):
        assert greedy_bound(3, 5) == 6

    def test_outerplanar(self):
        assert greedy_bound(2, 9) == pytest.approx(2 * math.log(11 / 5) + 7)
        assert greedy_bound(2, 9) == pytest.approx(8.577, abs=1e-3)


def test_huge_cap_is_charged_not_simulated():
    g = Graph(range(4), [(0, 1), (1, 2), (2, 3)])
    trace = RoundTrace()
    d3, _, log = phase3_greedy(g, initial_states(g), 10**9, trace)
    assert g.dominates(d3)
    assert trace.total == 2 * (10**9 + 1)
    assert len(log.steps) <= 3
