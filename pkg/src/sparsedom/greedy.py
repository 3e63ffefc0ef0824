"""Greedy Phase 3: a countdown over residual degrees that simulates max-degree greedy locally."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

from .general import PromiseViolation
from .graph import Graph
from .local import Color, RoundTrace, States, max_residual_degree, recolor_after_selection, red_set, run_ball_phase


class GreedyInvariantError(AssertionError):
    """The countdown invariant failed, which means a bug."""


def greedy_bound(nabla0: int, delta_R: int) -> float:
    """Approximation factor of greedy Phase 3 relative to the minimum R-dominating set.

    Below ``delta_R = 3 nabla0`` the logarithmic bound does not apply and
    ``delta_R + 1`` (every remaining red vertex dominates at most that many) is returned.
    """
    if delta_R < 3 * nabla0:
        return float(delta_R + 1)
    return nabla0 * math.log((2 * delta_R - 4 * nabla0 + 1) / (2 * nabla0 + 1)) + 3 * nabla0 + 1


@dataclass
class GreedyTrace:
    # (i, |P_i|, |R_i|, |R_{i-1}|): picks and red counts before and after iteration i.
    # Iterations where no non-green vertex has residual degree i are charged but not logged.
    steps: list[tuple[int, int, int, int]] = field(default_factory=list)
    h2_violations: list[int] = field(default_factory=list)

    def to_json(self) -> list[dict]:
        return [{"i": i, "picked": p, "red": r, "red_after": ra} for i, p, r, ra in self.steps]


def _elect(i: int):
    def program(ball):
        v = ball.center
        for u in sorted(ball.closed_neighbors(v)):
            if ball.state(u).color is not Color.GREEN and ball.state(u).residual_degree == i:
                return ball.state(v).with_scratch(dominator=u)
        return None

    return program


def phase3_greedy(
    g: Graph,
    states: States,
    cap: int,
    trace: RoundTrace | None = None,
    nabla0: int | None = None,
    strict: bool = False,
):
    """Returns ``(D3, states, GreedyTrace)``.

    For i = cap, ..., 0 every red vertex elects the smallest-id vertex of
    residual degree exactly i in its closed neighbourhood. Two rounds per
    value of i are charged whether or not anything happens.
    """
    start = cap
    observed = max_residual_degree(states)
    if observed > cap:
        msg = f"residual degree {observed} exceeds the cap {cap}: input is outside the promised class"
        if strict:
            raise PromiseViolation(msg)
        warnings.warn(msg, RuntimeWarning, stacklevel=2)
        start = observed

    log = GreedyTrace()
    d3: set[int] = set()
    i = start
    while i >= 0:
        top = max_residual_degree(states) if red_set(states) else -1
        if top < i:
            # nothing can be elected until i reaches top; charge the idle iterations in bulk
            idle = i - max(top, -1)
            if trace is not None:
                trace.charge("phase3-greedy-elect", idle)
                trace.charge("phase3-greedy-recolor", idle)
            i -= idle
            continue
        red = red_set(states)
        if trace is not None:
            trace.charge("phase3-greedy-elect", 1)
        votes = run_ball_phase(g, states, 1, _elect(i), None, nodes=red)
        picked = {u for v in red if (u := votes[v].scratch.get("dominator")) is not None}
        states = recolor_after_selection(g, states, picked, trace, "phase3-greedy-recolor")
        d3 |= picked
        log.steps.append((i, len(picked), len(red), len(red_set(states))))
        if i >= 1 and max_residual_degree(states) > i - 1:
            raise GreedyInvariantError(f"after iteration {i} a residual degree is still >= {i}")
        i -= 1

    if red_set(states):
        raise GreedyInvariantError("red vertices remain after the countdown")

    # total-h: picks in iterations j <= i never exceed |R_i|
    picked_up_to = 0
    for i, p, r, _ in reversed(log.steps):
        picked_up_to += p
        if picked_up_to > r:
            raise GreedyInvariantError(f"sum of |P_j| for j <= {i} exceeds |R_{i}|")
    if nabla0 is not None:
        for i, p, r, r_after in log.steps:
            if i > 2 * nabla0 and p * (i - 2 * nabla0) > nabla0 * (r - r_after):
                log.h2_violations.append(i)
    return d3, states, log
