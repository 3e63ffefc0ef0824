"""Phase 2 for K_{3,t}-free inputs: select every pair of vertices with many common residual neighbours."""

from __future__ import annotations

import warnings

from .general import PromiseViolation
from .graph import Graph
from .local import Color, RoundTrace, States, max_residual_degree, recolor_after_selection, run_ball_phase
from .params import ClassPreset


def common_residual_partners(ball, v: int, threshold: int) -> frozenset[int]:
    """B_v: every z != v sharing at least ``threshold`` RED neighbours with v.

    Such a z has a common neighbour with v, so it lies in the radius-2 ball.
    """
    mine = ball.state(v).residual
    if len(mine) < threshold:
        return frozenset()
    counts: dict[int, int] = {}
    for r in mine:
        for z in ball.neighbors(r):
            if z != v:
                counts[z] = counts.get(z, 0) + 1
    return frozenset(z for z, c in counts.items() if c >= threshold)


def phase2_k3t(
    g: Graph,
    states: States,
    preset: ClassPreset,
    trace: RoundTrace | None = None,
    strict: bool = False,
    workers=None,
):
    """Return ``(D2, states, partners)`` with ``partners[v] = B_v`` for every v in W.

    Charges 2 rounds for gathering and 1 for recolouring.
    """
    threshold = preset.common_neighbor_threshold
    if threshold is None:
        raise ValueError(f"preset {preset.name} has no Phase 2 threshold")

    def program(ball):
        b = common_residual_partners(ball, ball.center, threshold)
        if not b:
            return None
        return ball.state(ball.center).with_scratch(partners=b)

    marked = run_ball_phase(g, states, 2, program, trace, "phase2-k3t", workers=workers)
    partners = {v: st.scratch["partners"] for v, st in marked.items() if "partners" in st.scratch}

    if preset.max_b_size is not None:
        big = sorted(v for v, b in partners.items() if len(b) > preset.max_b_size)
        if big:
            msg = f"|B_v| > {preset.max_b_size} at {big[:5]}: input is outside the {preset.name} class"
            if strict:
                raise PromiseViolation(msg)
            warnings.warn(msg, RuntimeWarning, stacklevel=2)

    d2: set[int] = set()
    for v, b in partners.items():
        d2.add(v)
        d2 |= b
    return d2, recolor_after_selection(g, marked, d2, trace, "phase2-recolor"), partners


def residual_cap_check(states: States, preset: ClassPreset) -> tuple[bool, int]:
    """(max residual degree <= preset cap, observed max)."""
    worst = max_residual_degree(states)
    return worst <= preset.residual_cap, worst


def red_count(states: States) -> int:
    return sum(st.color is Color.RED for st in states.values())
