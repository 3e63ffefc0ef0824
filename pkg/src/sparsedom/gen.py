"""Seeded generators for the sparse classes the algorithm targets.

All generators return graphs on ids ``0..n-1`` with a random relabelling,
so that ids carry no structural information. Same arguments, same graph.
"""

from __future__ import annotations

import networkx as nx
import numpy as np

from .graph import Graph

DEFAULT_DELETE_P = 0.3


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def _finish(n: int, edges, rng: np.random.Generator, relabel: bool = True) -> Graph:
    perm = rng.permutation(n) if relabel else np.arange(n)
    return Graph(range(n), ((int(perm[u]), int(perm[v])) for u, v in edges))


def _thin(edges, p: float, rng: np.random.Generator):
    edges = sorted(edges)
    if p <= 0:
        return edges
    keep = rng.random(len(edges)) >= p
    return [e for e, k in zip(edges, keep) if k]


def _stacked_triangulation(n: int, rng: np.random.Generator) -> set[tuple[int, int]]:
    """Maximal planar graph: insert each new vertex into a uniformly random face."""
    if n <= 1:
        return set()
    if n == 2:
        return {(0, 1)}
    edges = {(0, 1), (0, 2), (1, 2)}
    faces = [(0, 1, 2), (0, 1, 2)]  # inner and outer face of the triangle
    for v in range(3, n):
        k = int(rng.integers(len(faces)))
        a, b, c = faces[k]
        faces[k] = (a, b, v)
        faces.append((a, c, v))
        faces.append((b, c, v))
        edges.update({(a, v), (b, v), (c, v)})
    return edges


def gen_planar(n: int, seed=None, p: float = DEFAULT_DELETE_P) -> Graph:
    """Random stacked triangulation on n vertices, each edge then deleted with probability p."""
    rng = _rng(seed)
    return _finish(n, _thin(_stacked_triangulation(n, rng), p, rng), rng)


def gen_triangle_free_planar(n: int, seed=None, p: float = DEFAULT_DELETE_P) -> Graph:
    """Subdivide every edge of a random planar graph once, trimmed to exactly n vertices.

    The base size grows until base vertices plus subdivision vertices reach
    n; surplus subdivision vertices are dropped, which only removes paths.
    """
    rng = _rng(seed)
    if n <= 2:
        return _finish(n, [(0, 1)] if n == 2 else [], rng)
    base = max(2, n // 4)
    while True:
        base_edges = _thin(_stacked_triangulation(base, rng), p, rng)
        if base + len(base_edges) >= n:
            break
        base += 1
    keep = sorted(rng.choice(len(base_edges), size=n - base, replace=False).tolist())
    edges = []
    for i, k in enumerate(keep):
        u, v = base_edges[k]
        mid = base + i
        edges += [(u, mid), (mid, v)]
    return _finish(n, edges, rng)


def gen_bipartite_planar(n: int, seed=None, p: float = DEFAULT_DELETE_P) -> Graph:
    """The first n cells of a near-square grid, each edge kept with probability 1 - p."""
    rng = _rng(seed)
    cols = max(1, int(np.ceil(np.sqrt(n))))
    edges = []
    for v in range(n):
        r, c = divmod(v, cols)
        if c + 1 < cols and v + 1 < n:
            edges.append((v, v + 1))
        if v + cols < n:
            edges.append((v, v + cols))
    return _finish(n, _thin(edges, p, rng), rng)


def _in_short_cycle(adj: dict[int, set[int]], u: int, v: int) -> bool:
    """Is edge uv on a cycle of length 3 or 4?"""
    nu = adj[u] - {v}
    nv = adj[v] - {u}
    if nu & nv:
        return True
    return any(adj[a] & nv - {a} for a in nu)


def gen_girth5_planar(n: int, seed=None, p: float = DEFAULT_DELETE_P) -> Graph:
    """Random planar graph with an edge removed from every cycle of length < 5.

    Deleting edges never creates cycles, so one pass over the edges in
    random order already reaches the fixpoint; it is rechecked anyway.
    """
    rng = _rng(seed)
    edges = _thin(_stacked_triangulation(n, rng), p, rng)
    adj: dict[int, set[int]] = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    changed = True
    while changed:
        changed = False
        order = rng.permutation(len(edges))
        survivors = []
        for k in order:
            u, v = edges[k]
            if v in adj[u] and _in_short_cycle(adj, u, v):
                adj[u].discard(v)
                adj[v].discard(u)
                changed = True
            elif v in adj[u]:
                survivors.append((u, v))
        edges = sorted(survivors)
    return _finish(n, edges, rng)


def gen_outerplanar(n: int, seed=None, p: float = DEFAULT_DELETE_P) -> Graph:
    """Random triangulated polygon (maximal outerplanar), then random edge deletions."""
    rng = _rng(seed)
    edges = {(min(i, (i + 1) % n), max(i, (i + 1) % n)) for i in range(n)} if n >= 3 else set()
    if n == 2:
        edges = {(0, 1)}
    stack = [list(range(n))] if n > 3 else []
    while stack:
        poly = stack.pop()
        if len(poly) <= 3:
            continue
        # the apex opposite the chord poly[0]-poly[-1]
        k = int(rng.integers(1, len(poly) - 1))
        a, b, c = poly[0], poly[k], poly[-1]
        for x, y in ((a, b), (b, c)):
            edges.add((min(x, y), max(x, y)))
        stack.append(poly[: k + 1])
        stack.append(poly[k:])
    return _finish(n, _thin(edges, p, rng), rng)


def g_gamma_m(gamma: int, m: int) -> Graph:
    """The two-level example graph with hubs v_i, centres w^j and connectors s_i^j.

    Ids: v_i = i-1, w^j = gamma+j-1, s_i^j = gamma+m+(j-1)*gamma+(i-1).
    Edges {v_1, w^j}, {w^j, s_i^j}, {v_i, s_i^j}. Not relabelled.
    """
    if gamma < 1 or m < 1:
        raise ValueError("gamma and m must be >= 1")

    def v(i):
        return i - 1

    def w(j):
        return gamma + j - 1

    def s(i, j):
        return gamma + m + (j - 1) * gamma + (i - 1)

    edges = []
    for j in range(1, m + 1):
        edges.append((v(1), w(j)))
        for i in range(1, gamma + 1):
            edges.append((w(j), s(i, j)))
            edges.append((v(i), s(i, j)))
    return Graph(range(gamma + m + gamma * m), edges)


def gen_sparse_er(n: int, d: float, seed=None) -> Graph:
    """Erdős–Rényi G(n, d/n)."""
    p = min(1.0, d / n) if n else 0.0
    h = nx.fast_gnp_random_graph(n, p, seed=None if seed is None else int(np.random.SeedSequence(seed).generate_state(1)[0]))
    return Graph(range(n), h.edges())


GENERATORS = {
    "planar": gen_planar,
    "triangle_free_planar": gen_triangle_free_planar,
    "bipartite_planar": gen_bipartite_planar,
    "girth5_planar": gen_girth5_planar,
    "outerplanar": gen_outerplanar,
}

# generator name for each planar-family preset
PRESET_CLASS = {
    "PLANAR": "planar",
    "TRIANGLE_FREE_PLANAR": "triangle_free_planar",
    "BIPARTITE_PLANAR": "bipartite_planar",
    "GIRTH5_PLANAR": "girth5_planar",
    "OUTERPLANAR": "outerplanar",
}


def generate(cls: str, n: int, seed=None, **kwargs) -> Graph:
    key = cls.strip().lower()
    if key in PRESET_CLASS.values():
        return GENERATORS[key](n, seed, **kwargs)
    if key.upper() in PRESET_CLASS:
        return GENERATORS[PRESET_CLASS[key.upper()]](n, seed, **kwargs)
    if key in ("er", "sparse_er"):
        return gen_sparse_er(n, kwargs.get("d", 3.0), seed)
    raise KeyError(f"unknown graph class {cls!r}")
