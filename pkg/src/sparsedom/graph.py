"""Immutable undirected simple graphs, edge-list I/O, orientations and structural predicates."""

from __future__ import annotations

import io
import json
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Mapping


class GraphFormatError(ValueError):
    """Raised for malformed edge-list input; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SearchAborted(RuntimeError):
    """A bounded search exceeded its resource cap. Never a wrong answer, always this."""


class Graph:
    """Undirected simple graph on non-negative integer ids.

    Vertex ids double as the LOCAL-model identifiers, so everything that
    breaks ties does so toward the smaller id.
    """

    __slots__ = ("_adj", "_vertices", "_m")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()):
        adj: dict[int, set[int]] = {}
        for v in vertices:
            v = int(v)
            if v < 0:
                raise ValueError(f"negative vertex id {v}")
            adj.setdefault(v, set())
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if u < 0 or v < 0:
                raise ValueError(f"negative vertex id in edge ({u}, {v})")
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        self._vertices = tuple(sorted(adj))
        self._adj = {v: frozenset(adj[v]) for v in self._vertices}
        self._m = sum(len(s) for s in self._adj.values()) // 2

    @classmethod
    def from_adjacency(cls, adjacency: Mapping[int, Iterable[int]]) -> "Graph":
        edges = [(u, v) for u, nbrs in adjacency.items() for v in nbrs if u < v]
        return cls(adjacency.keys(), edges)

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return self._m

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __iter__(self) -> Iterator[int]:
        return iter(self._vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._vertices, frozenset(self.edges())))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def closed_neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v] | {v}

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(s) for s in self._adj.values()), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, ())

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in self._vertices:
            for v in sorted(self._adj[u]):
                if u < v:
                    yield (u, v)

    def dominates(self, dominators: Iterable[int], targets: Iterable[int] | None = None) -> bool:
        """True iff every target (default: all vertices) lies in N[dominators]."""
        covered: set[int] = set()
        for d in dominators:
            covered.add(d)
            covered.update(self._adj[d])
        want = self._vertices if targets is None else targets
        return all(v in covered for v in want)

    def induced_subgraph(self, keep: Iterable[int]) -> "Graph":
        keep = set(keep)
        return Graph(keep, ((u, v) for u in keep for v in self._adj[u] if u < v and v in keep))

    def without_vertices(self, drop: Iterable[int]) -> "Graph":
        drop = set(drop)
        return self.induced_subgraph(v for v in self._vertices if v not in drop)

    def relabel(self, mapping: Mapping[int, int]) -> "Graph":
        return Graph((mapping[v] for v in self._vertices), ((mapping[u], mapping[v]) for u, v in self.edges()))

    def distances_from(self, source: int, radius: int | None = None) -> dict[int, int]:
        """BFS distances from ``source``, truncated at ``radius`` when given."""
        dist = {source: 0}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            du = dist[u]
            if radius is not None and du >= radius:
                continue
            for w in self._adj[u]:
                if w not in dist:
                    dist[w] = du + 1
                    queue.append(w)
        return dist

    # -- serialization -------------------------------------------------

    def to_edge_list(self) -> str:
        buf = io.StringIO()
        buf.write(f"# n={self.n} m={self.m}\n")
        for v in self._vertices:
            if not self._adj[v]:
                buf.write(f"v {v}\n")
        for u, v in self.edges():
            buf.write(f"{u} {v}\n")
        return buf.getvalue()

    def to_json(self) -> dict:
        return {"n": self.n, "vertices": list(self._vertices), "edges": [list(e) for e in self.edges()]}

    @classmethod
    def from_json(cls, obj: Mapping | str) -> "Graph":
        if isinstance(obj, str):
            obj = json.loads(obj)
        edges = [tuple(e) for e in obj["edges"]]
        vertices = obj.get("vertices")
        if vertices is None:
            vertices = range(int(obj["n"]))
        return cls(vertices, edges)


def load_edge_list(text: str | bytes | io.IOBase) -> Graph:
    """Parse the edge-list format: ``u v`` per line, ``# ...`` comments, ``v <id>`` isolated vertices."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    elif not isinstance(text, str):
        text = text.read()
        if isinstance(text, bytes):
            text = text.decode("utf-8")
    vertices: list[int] = []
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "v":
            if len(parts) != 2:
                raise GraphFormatError(f"expected 'v <id>', got {raw!r}", lineno)
            vertices.append(_parse_id(parts[1], lineno))
            continue
        if len(parts) != 2:
            raise GraphFormatError(f"expected two vertex ids, got {raw!r}", lineno)
        u, v = _parse_id(parts[0], lineno), _parse_id(parts[1], lineno)
        if u == v:
            raise GraphFormatError(f"self-loop {u} {v} rejected", lineno)
        edges.add((min(u, v), max(u, v)))
    return Graph(vertices, sorted(edges))


def _parse_id(token: str, lineno: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise GraphFormatError(f"not an integer: {token!r}", lineno) from None
    if value < 0:
        raise GraphFormatError(f"negative vertex id {value}", lineno)
    return value


def save_edge_list(g: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(g.to_edge_list())


def read_edge_list(path) -> Graph:
    with open(path) as fh:
        return load_edge_list(fh.read())


# -- orientations ------------------------------------------------------


@dataclass(frozen=True)
class Orientation:
    """One arc per edge. ``direction`` maps the sorted edge tuple to (tail, head)."""

    direction: Mapping[tuple[int, int], tuple[int, int]]
    max_out_degree: int

    def out_degrees(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for tail, _ in self.direction.values():
            out[tail] = out.get(tail, 0) + 1
        return out

    def out_neighbors(self, v: int) -> set[int]:
        return {h for t, h in self.direction.values() if t == v}


def degeneracy_order(g: Graph) -> tuple[list[int], int]:
    """Repeatedly strip a minimum-degree vertex (smallest id on ties).

    Returns the removal order and the degeneracy, i.e. the largest degree
    seen at removal time.
    """
    deg = {v: g.degree(v) for v in g}
    buckets: dict[int, set[int]] = {}
    for v, d in deg.items():
        buckets.setdefault(d, set()).add(v)
    removed: set[int] = set()
    order: list[int] = []
    degeneracy = 0
    d = 0
    for _ in range(g.n):
        d = max(d - 1, 0)
        while not buckets.get(d):
            d += 1
        v = min(buckets[d])
        buckets[d].remove(v)
        degeneracy = max(degeneracy, d)
        order.append(v)
        removed.add(v)
        for w in g.neighbors(v):
            if w not in removed:
                dw = deg[w]
                buckets[dw].remove(w)
                deg[w] = dw - 1
                buckets.setdefault(dw - 1, set()).add(w)
    return order, degeneracy


def orient_min_out_degree(g: Graph) -> Orientation:
    """Orientation of minimum possible maximum out-degree.

    Starts from the degeneracy orientation and lowers the target out-degree
    one step at a time; each step is a unit-capacity flow feasibility
    problem solved by augmenting (arc-reversing) paths from overloaded
    vertices to vertices with spare capacity. When some overloaded vertex
    cannot reach spare capacity, the set it reaches is closed under
    out-arcs and has more than ``target * |S|`` edges, so no orientation
    with that maximum exists.
    """
    order, _ = degeneracy_order(g)
    pos = {v: i for i, v in enumerate(order)}
    out: dict[int, set[int]] = {v: set() for v in g}
    for u, v in g.edges():
        # earlier-removed endpoint is the tail: out-degree <= degree at removal
        if pos[u] < pos[v]:
            out[u].add(v)
        else:
            out[v].add(u)

    best = {v: set(s) for v, s in out.items()}
    current_max = max((len(s) for s in out.values()), default=0)
    target = current_max - 1
    while target >= 0:
        if not _rebalance(out, target):
            break
        best = {v: set(s) for v, s in out.items()}
        current_max = max((len(s) for s in out.values()), default=0)
        target = current_max - 1

    direction = {}
    for t, heads in best.items():
        for h in heads:
            direction[(min(t, h), max(t, h))] = (t, h)
    return Orientation(direction, max((len(s) for s in best.values()), default=0))


def _rebalance(out: dict[int, set[int]], target: int) -> bool:
    """Reverse arc paths until every out-degree is <= target. Mutates ``out``; False if infeasible."""
    overloaded = sorted(v for v, s in out.items() if len(s) > target)
    for src in overloaded:
        while len(out[src]) > target:
            parent = {src: None}
            queue = deque([src])
            sink = None
            while queue and sink is None:
                u = queue.popleft()
                for w in sorted(out[u]):
                    if w in parent:
                        continue
                    parent[w] = u
                    if len(out[w]) < target:
                        sink = w
                        break
                    queue.append(w)
            if sink is None:
                return False
            w = sink
            while parent[w] is not None:
                u = parent[w]
                out[u].remove(w)
                out[w].add(u)
                w = u
    return True


def contains_biclique(g: Graph, s: int, t: int, cap: int = 5_000_000) -> bool:
    """Does K_{s,t} occur as a (not necessarily induced) subgraph?

    With t >= 1 the s-side shares a common neighbour, so it suffices to
    enumerate s-subsets of each neighbourhood and count common neighbours.
    Raises SearchAborted instead of guessing once ``cap`` subsets are exceeded.
    """
    if not 1 <= s <= t:
        raise ValueError("need 1 <= s <= t")
    if s == 1:
        return g.max_degree() >= t
    heavy = {w: sorted(v for v in g.neighbors(w) if g.degree(v) >= t) for w in g}
    work = sum(comb(len(nbrs), s) for nbrs in heavy.values())
    if work > cap:
        raise SearchAborted(f"biclique search needs {work} subsets (cap {cap})")
    seen: set[tuple[int, ...]] = set()
    for w in g:
        for S in combinations(heavy[w], s):
            if S in seen:
                continue
            seen.add(S)
            common = set(g.neighbors(S[0]))
            for x in S[1:]:
                common &= g.neighbors(x)
                if len(common) < t:
                    break
            if len(common) >= t:
                return True
    return False
