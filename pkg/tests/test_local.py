import pytest
from hypothesis import given, strategies as st

from sparsedom.gen import gen_planar
from sparsedom.general import phase1
from sparsedom.graph import Graph
from sparsedom.local import (
    Ball,
    Color,
    LocalityError,
    RoundTrace,
    initial_states,
    recolor_after_selection,
    red_set,
    run_ball_phase,
)
from sparsedom.params import planar
from sparsedom.pipeline import run_pipeline

from conftest import small_graphs

PATH = Graph([0, 1, 2], [(0, 1), (1, 2)])


def test_radius_zero_reads_only_self():
    seen = {}

    def program(ball):
        seen[ball.center] = ball.state(ball.center).residual_degree
        with pytest.raises(LocalityError):
            ball.state(1 - ball.center if ball.center < 2 else 1)
        return None

    trace = RoundTrace()
    run_ball_phase(PATH, initial_states(PATH), 0, program, trace)
    assert seen == {0: 1, 1: 2, 2: 1}
    assert trace.total == 0


def test_radius_one_on_path():
    sizes = {}

    def program(ball):
        sizes[ball.center] = len(ball.vertices)
        return None

    run_ball_phase(PATH, initial_states(PATH), 1, program)
    assert sizes == {0: 2, 1: 3, 2: 2}


@given(small_graphs(max_n=9), st.integers(0, 4))
def test_ball_is_exactly_the_distance_ball(g, r):
    for c in g:
        ball = Ball(g, initial_states(g), c, r)
        dist = g.distances_from(c, r)
        assert ball.vertices == frozenset(dist)
        for u in g:
            assert (u in ball) == (u in dist)
        for u in dist:
            # edges of the induced subgraph, never beyond the ball
            assert ball.neighbors(u) == frozenset(w for w in g.neighbors(u) if w in dist)


def test_outside_ball_fails_loudly():
    g = Graph(range(4), [(0, 1), (1, 2), (2, 3)])
    ball = Ball(g, initial_states(g), 0, 2)
    assert ball.neighbors(2) == frozenset({1})
    for call in (lambda: ball.state(3), lambda: ball.neighbors(3), lambda: ball.has_edge(2, 3)):
        with pytest.raises(LocalityError):
            call()


def test_snapshot_semantics():
    # every node copies the colour of its smallest neighbour; all read the old snapshot
    g = Graph(range(3), [(0, 1), (1, 2)])
    states = initial_states(g)
    states = recolor_after_selection(g, states, {0})

    def program(ball):
        nb = min(ball.neighbors(ball.center))
        return ball.state(ball.center).with_scratch(seen=ball.state(nb).color)

    out = run_ball_phase(g, states, 1, program)
    assert out[2].scratch["seen"] is Color.YELLOW  # 1 was YELLOW at phase start


def test_recolor_empty_selection_is_identity():
    g = gen_planar(20, 1)
    states = initial_states(g)
    trace = RoundTrace()
    assert recolor_after_selection(g, states, set(), trace) == states
    assert trace.total == 1


def test_recolor_star():
    g = Graph(range(5), [(0, i) for i in range(1, 5)])
    out = recolor_after_selection(g, initial_states(g), {0})
    assert out[0].color is Color.GREEN
    assert all(out[i].color is Color.YELLOW for i in range(1, 5))
    assert all(not st.residual for st in out.values())


@given(small_graphs(), st.data())
def test_recolor_residuals_match_definition(g, data):
    states = initial_states(g)
    for _ in range(3):
        sel = data.draw(st.sets(st.sampled_from(list(g.vertices)), max_size=3))
        states = recolor_after_selection(g, states, sel)
        red = red_set(states)
        for v, s in states.items():
            if s.color is Color.GREEN:
                assert not s.residual
            else:
                assert s.residual == g.neighbors(v) & red


def test_phase1_charges_two_plus_one():
    g = gen_planar(30, 2)
    trace = RoundTrace()
    phase1(g, initial_states(g), planar().params, trace)
    assert trace.by_phase() == {"phase1": 2, "phase1-recolor": 1}


def test_sequential_and_threaded_agree():
    g = gen_planar(300, 4)
    a = run_pipeline(g, planar(), "lp")
    b = run_pipeline(g, planar(), "lp", workers=4)
    assert a.to_json() == b.to_json()


def test_order_preserving_relabel_commutes():
    g = gen_planar(80, 9)
    mapping = {v: 3 * v + 7 for v in g}
    h = g.relabel(mapping)
    for phase3 in ("lp", "greedy"):
        a = run_pipeline(g, planar(), phase3)
        b = run_pipeline(h, planar(), phase3)
        assert {mapping[v] for v in a.dominating_set} == b.dominating_set
        assert a.trace == b.trace


def test_deterministic():
    g = gen_planar(200, 3)
    assert run_pipeline(g, planar()).to_json() == run_pipeline(g, planar()).to_json()


def test_round_totals_independent_of_n():
    totals = {run_pipeline(gen_planar(n, 0), planar(), "greedy").trace.total for n in (100, 400, 1600)}
    assert len(totals) == 1
