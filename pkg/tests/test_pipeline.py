from fractions import Fraction

import pytest

from sparsedom.gen import generate, g_gamma_m
from sparsedom.graph import Graph
from sparsedom.oracle import gamma
from sparsedom.params import get_preset, girth5_planar, outerplanar, planar
from sparsedom.pipeline import PhaseError, guarantee, run_pipeline


def test_edgeless_graph_goes_to_phase3():
    g = Graph(range(5))
    for phase3 in ("lp", "greedy"):
        res = run_pipeline(g, planar(), phase3)
        assert res.d1 == set() and res.d2 == set()
        assert res.d3 == set(range(5))
        assert res.dominates


def test_empty_graph():
    res = run_pipeline(Graph(), planar())
    assert res.size == 0 and res.dominates


def test_json_schema():
    g = generate("planar", 30, 2)
    out = run_pipeline(g, planar(), "greedy").to_json()
    for key in ("preset", "phase3", "epsilon", "n", "m", "D1", "D2", "D3", "size", "rounds", "dominates",
                "max_residual_after_phase2", "residual_cap", "residual_cap_ok", "warnings", "greedy_trace"):
        assert key in out
    assert out["D1"]["size"] == len(out["D1"]["members"])
    assert "lp" in run_pipeline(g, planar(), "lp").to_json()


def test_bad_phase3_name():
    with pytest.raises(ValueError):
        run_pipeline(Graph([0]), planar(), "exact")


def test_strict_promise_violation_names_phase():
    # K_{5,7} is not planar and breaks the partner-set promise
    g = Graph(range(12), [(a, 5 + b) for a in range(5) for b in range(7)])
    preset = get_preset("TRIANGLE_FREE_PLANAR")
    with pytest.raises(PhaseError) as info:
        run_pipeline(g, preset, strict=True)
    assert info.value.phase == "phase2"
    res = run_pipeline(g, preset)
    assert res.warnings and res.dominates


def test_g_gamma_m_runs():
    g = g_gamma_m(4, 20)
    res = run_pipeline(g, get_preset("GENERAL_BE(1)"), "greedy")
    assert res.dominates and res.d1 == set(range(24))


@pytest.mark.parametrize("cls,preset", [("planar", planar()), ("outerplanar", outerplanar()), ("girth5_planar", girth5_planar())])
def test_ratio_within_guarantee(cls, preset):
    for seed in range(5):
        g = generate(cls, 30, seed)
        opt = gamma(g)
        for phase3 in ("lp", "greedy"):
            res = run_pipeline(g, preset, phase3)
            assert res.dominates
            assert res.size <= guarantee(preset, phase3) * opt


def test_guarantee_values():
    assert guarantee(planar(), "lp") == 12
    assert guarantee(planar(), "greedy") == pytest.approx(19.84, abs=0.01)
    assert guarantee(girth5_planar(), "greedy") == 7
    assert guarantee(outerplanar(), "greedy") == pytest.approx(11.58, abs=0.01)
    assert guarantee(planar(Fraction(1, 2)), "lp") < 12
