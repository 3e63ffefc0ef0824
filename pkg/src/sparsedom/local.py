"""Round-synchronous LOCAL-model simulation.

A phase of ``r`` rounds is simulated by handing every node a read-only
view of its radius-``r`` ball, taken from one snapshot of all node states,
and applying all returned updates together at the end of the phase. In the
LOCAL model messages are unbounded, so gathering the ball is exactly what
``r`` rounds can achieve.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from types import MappingProxyType
from typing import Callable, Iterable, Mapping, Optional

from .graph import Graph


class Color(enum.Enum):
    RED = "red"  # still needs to be dominated
    YELLOW = "yellow"  # dominated, not selected
    GREEN = "green"  # selected


class LocalityError(KeyError):
    """A node program asked about a vertex outside its ball."""


_EMPTY = MappingProxyType({})


@dataclass(frozen=True)
class NodeState:
    color: Color
    residual: frozenset[int]  # N_R(v): neighbours that are still RED
    scratch: Mapping[str, object] = field(default=_EMPTY)

    @property
    def residual_degree(self) -> int:
        return len(self.residual)

    def with_scratch(self, **updates) -> "NodeState":
        merged = dict(self.scratch)
        merged.update(updates)
        return replace(self, scratch=MappingProxyType(merged))


States = Mapping[int, NodeState]


def initial_states(g: Graph) -> dict[int, NodeState]:
    """Every vertex RED; residual neighbourhood = full neighbourhood."""
    return {v: NodeState(Color.RED, g.neighbors(v)) for v in g}


def red_set(states: States) -> set[int]:
    return {v for v, st in states.items() if st.color is Color.RED}


def max_residual_degree(states: States) -> int:
    return max((st.residual_degree for st in states.values() if st.color is not Color.GREEN), default=0)


class Ball:
    """Read-only view of the radius-``radius`` ball around ``center``.

    Only the induced subgraph on vertices within distance ``radius`` and
    their state snapshots are reachable; anything else raises LocalityError.
    """

    __slots__ = ("_g", "_states", "center", "radius", "_members", "_dist")

    def __init__(self, g: Graph, states: States, center: int, radius: int):
        self._g = g
        self._states = states
        self.center = center
        self.radius = radius
        self._members: dict[int, bool] = {}
        self._dist: Optional[dict[int, int]] = None

    def __contains__(self, u: object) -> bool:
        hit = self._members.get(u)
        if hit is None:
            hit = self._compute_membership(u)
            self._members[u] = hit
        return hit

    def _compute_membership(self, u) -> bool:
        g, c, r = self._g, self.center, self.radius
        if u not in g:
            return False
        if u == c:
            return True
        if r == 0:
            return False
        if r == 1:
            return g.has_edge(c, u)
        if r == 2:
            return g.has_edge(c, u) or not g.neighbors(u).isdisjoint(g.neighbors(c))
        if self._dist is None:
            self._dist = g.distances_from(c, r)
        return u in self._dist

    def _require(self, u: int) -> None:
        if u not in self:
            raise LocalityError(f"vertex {u} is outside the radius-{self.radius} ball of {self.center}")

    @property
    def vertices(self) -> frozenset[int]:
        if self._dist is None:
            self._dist = self._g.distances_from(self.center, self.radius)
        return frozenset(self._dist)

    def distance(self, u: int) -> int:
        self._require(u)
        if self._dist is None:
            self._dist = self._g.distances_from(self.center, self.radius)
        return self._dist[u]

    def neighbors(self, u: int) -> frozenset[int]:
        """Neighbours of ``u`` inside the ball (edges of the induced subgraph)."""
        self._require(u)
        nbrs = self._g.neighbors(u)
        if self._interior(u):
            return nbrs
        return frozenset(w for w in nbrs if w in self)

    def _interior(self, u: int) -> bool:
        """Strictly inside the ball, so every neighbour is a member too."""
        c, r = self.center, self.radius
        if r >= 1 and u == c:
            return True
        if r >= 2 and self._g.has_edge(c, u):
            return True
        if r <= 2:
            return False
        if self._dist is None:
            self._dist = self._g.distances_from(c, r)
        return self._dist[u] < r

    def closed_neighbors(self, u: int) -> frozenset[int]:
        return self.neighbors(u) | {u}

    def has_edge(self, u: int, w: int) -> bool:
        self._require(u)
        self._require(w)
        return self._g.has_edge(u, w)

    def state(self, u: int) -> NodeState:
        self._require(u)
        return self._states[u]


@dataclass
class RoundTrace:
    """Per-phase communication rounds; the total is the locality budget of a run."""

    phases: list[tuple[str, int]] = field(default_factory=list)

    def charge(self, phase: str, rounds: int) -> None:
        if rounds < 0:
            raise ValueError("rounds must be non-negative")
        self.phases.append((phase, int(rounds)))

    @property
    def total(self) -> int:
        return sum(r for _, r in self.phases)

    def by_phase(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for name, r in self.phases:
            out[name] = out.get(name, 0) + r
        return out

    def to_json(self) -> dict:
        return {"phases": [{"phase": p, "rounds": r} for p, r in self.phases], "total": self.total}


NodeProgram = Callable[[Ball], Optional[NodeState]]


def run_ball_phase(
    g: Graph,
    states: States,
    radius: int,
    program: NodeProgram,
    trace: RoundTrace | None = None,
    phase: str = "ball-phase",
    nodes: Iterable[int] | None = None,
    workers: int | None = None,
) -> dict[int, NodeState]:
    """Run ``program`` at every node (or at ``nodes``) on its radius ball.

    ``program`` returns the node's new state, or None to keep it. All
    programs see the same snapshot; results are applied together. Charges
    ``radius`` rounds to ``trace``.
    """
    snapshot = dict(states)
    targets = sorted(g.vertices if nodes is None else nodes)

    def one(v: int):
        return program(Ball(g, snapshot, v, radius))

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, targets))
    else:
        results = [one(v) for v in targets]

    new_states = dict(snapshot)
    for v, res in zip(targets, results):
        if res is not None:
            new_states[v] = res
    if trace is not None:
        trace.charge(phase, radius)
    return new_states


def recolor_after_selection(
    g: Graph,
    states: States,
    selected: Iterable[int],
    trace: RoundTrace | None = None,
    phase: str = "recolor",
) -> dict[int, NodeState]:
    """Selected vertices turn GREEN, their RED neighbours YELLOW; residual sets are refreshed.

    One round: each vertex announces its new colour to its neighbours.
    """
    selected = set(selected)
    new_states = dict(states)
    if selected:
        newly_dominated: set[int] = set()
        for v in selected:
            if v not in g:
                raise KeyError(f"selected vertex {v} not in graph")
            newly_dominated.add(v)
            newly_dominated.update(g.neighbors(v))
        for v in newly_dominated:
            st = new_states[v]
            if v in selected:
                new_states[v] = replace(st, color=Color.GREEN, residual=frozenset())
            elif st.color is Color.RED:
                new_states[v] = replace(st, color=Color.YELLOW)
        # only vertices next to a colour change can lose residual neighbours
        touched = set(newly_dominated)
        for v in newly_dominated:
            touched.update(g.neighbors(v))
        for v in touched:
            st = new_states[v]
            if st.color is Color.GREEN:
                if st.residual:
                    new_states[v] = replace(st, residual=frozenset())
                continue
            res = frozenset(w for w in g.neighbors(v) if new_states[w].color is Color.RED)
            if res != st.residual:
                new_states[v] = replace(st, residual=res)
    if trace is not None:
        trace.charge(phase, 1)
    return new_states
