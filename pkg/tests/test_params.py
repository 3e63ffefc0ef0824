from fractions import Fraction

import pytest

from sparsedom.params import ClassParams, general_be, get_preset, k3t_free, planar, preset_from_json


def test_derived_constants_planar_family():
    p = ClassParams(nabla1=3, nabla0=3, nn=2, s=3, t=3)
    assert (p.kappa, p.mu, p.nu) == (6, 72, 432)
    assert p.lam == Fraction(1, 6)
    assert p.dominator_budget == 3


def test_residual_bound_uses_nu():
    # kappa^(s-1) (t + s - 1 + (s-1) nu) with nu = 2 kappa^3
    p = ClassParams(nabla1=2, nabla0=2, nn=2, s=3, t=3)
    assert p.kappa == 4 and p.nu == 128
    assert p.delta_R == 16 * (3 + 2 + 2 * 128) == 4176
    assert p.sequence_threshold(2) == 4 * (3 + 1 + 128) == 528
    assert p.sequence_threshold(3) == 3


def test_gamma_cap_planar():
    # 4 * 3 * (4^3 + 2*3) * (30 + 1) / 1, evaluated directly
    assert planar().gamma_cap == 26040
    assert planar(epsilon=Fraction(1, 2)).gamma_cap == 52080


@pytest.mark.parametrize(
    "name, threshold, cap, factor",
    [
        ("PLANAR", 10, 30, 12),
        ("TRIANGLE_FREE_PLANAR", 7, 18, 9),
        ("BIPARTITE_PLANAR", 7, 18, 8),
        ("GIRTH5_PLANAR", None, 3, 7),
        ("OUTERPLANAR", None, 9, 9),
    ],
)
def test_presets(name, threshold, cap, factor):
    p = get_preset(name)
    assert p.common_neighbor_threshold == threshold
    assert p.residual_cap == cap
    assert p.guarantee_factor() == factor  # epsilon = 1
    assert (p.phase2 == "none") == (threshold is None)


def test_k3t_free_constants():
    p = k3t_free(2, 4)
    # nn = 3 by default, so 2nn - 1 = 5
    assert p.common_neighbor_threshold == 5 * 4 + 1
    assert p.residual_cap == 25 * 4 + 5
    assert p.guarantee_factor(1) == 5 * 3
    assert get_preset("k3t_free(2,4)").name == p.name


def test_general_be():
    p = general_be(1)
    assert p.params.s == p.params.t == 3
    assert p.phase2 == "general"
    assert get_preset("GENERAL_BE(1)").residual_cap == p.residual_cap


def test_preset_from_json():
    p = preset_from_json({"nabla1": 2, "nabla0": 2, "nn": 2, "s": 3, "t": 3, "epsilon": "1/2"})
    assert p.phase2 == "general" and p.epsilon == Fraction(1, 2)
    q = preset_from_json('{"name": "X", "nabla1": 3, "nabla0": 3, "nn": 2, "s": 3, "t": 3, "phase2": "k3t"}')
    assert q.common_neighbor_threshold == 10 and q.residual_cap == 30


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(nabla1=0, nabla0=0, nn=1, s=1, t=1),
        dict(nabla1=2, nabla0=3, nn=1, s=1, t=1),
        dict(nabla1=2, nabla0=2, nn=4, s=1, t=1),
        dict(nabla1=2, nabla0=2, nn=2, s=3, t=2),
        dict(nabla1=2, nabla0=2, nn=2, s=1, t=1, epsilon=0),
    ],
)
def test_validation(kwargs):
    with pytest.raises(ValueError):
        ClassParams(**kwargs)


def test_unknown_preset():
    with pytest.raises(KeyError):
        get_preset("TOROIDAL")
