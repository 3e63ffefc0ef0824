"""Centralised exact references for desk-scale instances.

Nothing here is distributed. These are the yardsticks the tests and the
``verify``/``bench`` commands compare the LOCAL pipeline against.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Iterable

import networkx as nx

from .graph import Graph, SearchAborted

DEFAULT_BUDGET = 10**8


# -- minimum (R-)dominating set ------------------------------------------


def _components(masks_by_target: dict[int, list[int]], targets: list[int]) -> list[list[int]]:
    """Group targets that share a potential dominator."""
    parent = list(range(len(targets)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    owner: dict[int, int] = {}
    for i, t in enumerate(targets):
        for c in masks_by_target[t]:
            if c in owner:
                a, b = find(i), find(owner[c])
                if a != b:
                    parent[a] = b
            else:
                owner[c] = i
    groups: dict[int, list[int]] = {}
    for i, t in enumerate(targets):
        groups.setdefault(find(i), []).append(t)
    return list(groups.values())


class _Solver:
    """Branch and bound for set cover where sets are closed neighbourhoods."""

    def __init__(self, cover: dict[int, int], nbits: int, budget: int):
        self.full = (1 << nbits) - 1
        self.nbits = nbits
        # drop candidates whose coverage is contained in another's (keep smallest id)
        items = sorted(cover.items(), key=lambda kv: (-kv[1].bit_count(), kv[0]))
        kept: list[tuple[int, int]] = []
        for c, m in items:
            if m and not any(m | km == km for _, km in kept):
                kept.append((c, m))
        self.cands = kept
        self.by_bit = [[(c, m) for c, m in kept if m >> b & 1] for b in range(nbits)]
        self.budget = budget
        self.nodes = 0

    def lower_bound(self, covered: int) -> int:
        """Greedy packing of uncovered targets with pairwise disjoint dominator sets."""
        missing = self.full & ~covered
        blocked = 0
        count = 0
        while missing:
            b = (missing & -missing).bit_length() - 1
            missing &= missing - 1
            if blocked >> b & 1:
                continue
            count += 1
            for _, m in self.by_bit[b]:
                blocked |= m
        return count

    def greedy(self, covered: int) -> list[int]:
        chosen = []
        while covered != self.full:
            c, m = max(self.cands, key=lambda cm: ((cm[1] & ~covered).bit_count(), -cm[0]))
            chosen.append(c)
            covered |= m
        return chosen

    def solve(self) -> list[int]:
        self.best = self.greedy(0)
        self._search(0, [])
        return self.best

    def _search(self, covered: int, chosen: list[int]) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchAborted(f"dominating set search exceeded {self.budget} nodes")
        if covered == self.full:
            if len(chosen) < len(self.best):
                self.best = list(chosen)
            return
        if len(chosen) + self.lower_bound(covered) >= len(self.best):
            return
        missing = self.full & ~covered
        pivot, options = None, None
        m = missing
        while m:
            b = (m & -m).bit_length() - 1
            m &= m - 1
            opts = self.by_bit[b]
            if options is None or len(opts) < len(options):
                pivot, options = b, opts
                if len(opts) == 1:
                    break
        for c, mask in sorted(options, key=lambda cm: (-(cm[1] & missing).bit_count(), cm[0])):
            chosen.append(c)
            self._search(covered | mask, chosen)
            chosen.pop()


def exact_min_dominating_set(g: Graph, R: Iterable[int] | None = None, budget: int = DEFAULT_BUDGET) -> set[int]:
    """A minimum Z with R ⊆ N[Z] (R defaults to all vertices).

    Independent parts of the instance are solved separately; ``budget``
    limits the total number of branch nodes and raises SearchAborted.
    """
    targets = sorted(g.vertices if R is None else set(R))
    if not targets:
        return set()
    candidates = {t: sorted(g.closed_neighbors(t)) for t in targets}
    result: set[int] = set()
    spent = 0
    for group in _components(candidates, targets):
        bit = {t: i for i, t in enumerate(group)}
        cover: dict[int, int] = {}
        for t in group:
            for c in candidates[t]:
                cover[c] = cover.get(c, 0) | (1 << bit[t])
        solver = _Solver(cover, len(group), budget - spent)
        result.update(solver.solve())
        spent += solver.nodes
    return result


def gamma(g: Graph, R: Iterable[int] | None = None, budget: int = DEFAULT_BUDGET) -> int:
    return len(exact_min_dominating_set(g, R, budget))


# -- exact LP ----------------------------------------------------------------


def exact_lp_opt(g: Graph, R: Iterable[int] | None = None, max_pivots: int = 1_000_000, return_solution: bool = False):
    """Exact optimum of min Σ x_u subject to Σ_{u∈N[v]} x_u >= 1 for v in R, x >= 0.

    Solved through the packing dual max Σ y_v subject to
    Σ_{v∈N[u]∩R} y_v <= 1 for every u, y >= 0, whose slack basis is
    feasible, by a rational tableau simplex with Bland's rule. The upper
    bounds x_u <= 1 never bind at an optimum, so they are left out.

    With ``return_solution`` also returns the optimal primal x (read off
    the reduced costs of the slack columns) and dual y, both as Fractions.
    """
    rows_r = sorted(g.vertices if R is None else set(R))
    if not rows_r:
        return (Fraction(0), {}, {}) if return_solution else Fraction(0)
    cols_u = sorted({u for v in rows_r for u in g.closed_neighbors(v)})
    ny = len(rows_r)
    # tableau rows: one per primal variable u (dual constraint), columns y_0..y_{ny-1}, slacks
    ridx = {v: i for i, v in enumerate(rows_r)}
    nrows = len(cols_u)
    width = ny + nrows
    tab: list[dict[int, Fraction]] = []
    rhs: list[Fraction] = []
    for k, u in enumerate(cols_u):
        row = {ridx[v]: Fraction(1) for v in g.closed_neighbors(u) if v in ridx}
        row[ny + k] = Fraction(1)
        tab.append(row)
        rhs.append(Fraction(1))
    # objective row holds reduced costs c_j - z_j for maximisation
    obj: dict[int, Fraction] = {j: Fraction(1) for j in range(ny)}
    value = Fraction(0)
    basis = [ny + k for k in range(nrows)]

    for _ in range(max_pivots):
        entering = min((j for j, c in obj.items() if c > 0), default=None)
        if entering is None:
            break
        best = None
        for i, row in enumerate(tab):
            a = row.get(entering)
            if a is not None and a > 0:
                ratio = rhs[i] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            raise ArithmeticError("packing LP is unbounded, which cannot happen")
        i = best[1]
        prow = tab[i]
        a = prow[entering]
        if a != 1:
            prow = {j: c / a for j, c in prow.items()}
            tab[i] = prow
            rhs[i] /= a
        for k, row in enumerate(tab):
            if k != i:
                f = row.get(entering)
                if f:
                    for j, c in prow.items():
                        nv = row.get(j, 0) - f * c
                        if nv:
                            row[j] = nv
                        else:
                            row.pop(j, None)
                    rhs[k] -= f * rhs[i]
        f = obj.get(entering)
        if f:
            for j, c in prow.items():
                nv = obj.get(j, 0) - f * c
                if nv:
                    obj[j] = nv
                else:
                    obj.pop(j, None)
            value += f * rhs[i]
        basis[i] = entering
    else:
        raise SearchAborted(f"simplex exceeded {max_pivots} pivots")

    if not return_solution:
        return value
    y = {v: Fraction(0) for v in rows_r}
    for i, b in enumerate(basis):
        if b < ny:
            y[rows_r[b]] = rhs[i]
    x = {u: -obj.get(ny + k, Fraction(0)) for k, u in enumerate(cols_u)}
    return value, x, y


# -- density ---------------------------------------------------------------


def _max_excess(g: Graph, density: Fraction) -> tuple[Fraction, set[int]]:
    """max over S of |E(S)| - density * |S|, with a maximiser, by one min cut."""
    p, q = density.numerator, density.denominator
    net = nx.DiGraph()
    net.add_node("s")
    net.add_node("t")
    for k, (u, v) in enumerate(g.edges()):
        e = ("e", k)
        net.add_edge("s", e, capacity=q)
        net.add_edge(e, ("v", u))  # no capacity attribute means infinite
        net.add_edge(e, ("v", v))
    for v in g:
        net.add_edge(("v", v), "t", capacity=p)
    cut, (source_side, _) = nx.minimum_cut(net, "s", "t")
    chosen = {node[1] for node in source_side if isinstance(node, tuple) and node[0] == "v"}
    return Fraction(q * g.m - cut, q), chosen


def exact_nabla0(g: Graph) -> Fraction:
    """Maximum edge density |E(H)|/|V(H)| over subgraphs H, by Dinkelbach iteration on min cuts."""
    if g.m == 0:
        return Fraction(0)
    best = Fraction(g.m, g.n)
    while True:
        excess, chosen = _max_excess(g, best)
        if excess <= 0 or not chosen:
            return best
        sub = g.induced_subgraph(chosen)
        best = Fraction(sub.m, sub.n)


# -- structural certificates ----------------------------------------------


def to_networkx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges())
    return h


def is_planar(g: Graph) -> bool:
    return nx.check_planarity(to_networkx(g))[0]


def is_outerplanar(g: Graph) -> bool:
    """Outerplanar iff adding one vertex adjacent to everything keeps it planar."""
    h = to_networkx(g)
    apex = max(g.vertices, default=-1) + 1
    h.add_edges_from((apex, v) for v in g.vertices)
    return nx.check_planarity(h)[0]


def girth(g: Graph) -> float:
    """Length of a shortest cycle, ``inf`` for forests."""
    best = float("inf")
    for s in g:
        dist = {s: 0}
        parent = {s: None}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in g.neighbors(u):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def is_bipartite(g: Graph) -> bool:
    side: dict[int, int] = {}
    for s in g:
        if s in side:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if w not in side:
                    side[w] = 1 - side[u]
                    queue.append(w)
                elif side[w] == side[u]:
                    return False
    return True


def is_triangle_free(g: Graph) -> bool:
    return not any(g.neighbors(u) & g.neighbors(v) for u, v in g.edges())
