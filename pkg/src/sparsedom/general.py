"""Phases 1 and 2 of the general algorithm for graphs of bounded depth-1 minor density.

Phase 1 selects every vertex whose open neighbourhood needs more than
``2 nn - 1`` other dominators. Phase 2 follows domination sequences built
from pseudo-covers and selects their endpoints, which pushes every
residual degree below ``delta_R``.
"""

from __future__ import annotations

import logging
import warnings
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Protocol

from .graph import Graph, SearchAborted
from .local import Color, RoundTrace, States, max_residual_degree, recolor_after_selection, run_ball_phase
from .params import ClassParams

log = logging.getLogger(__name__)

DEFAULT_PSEUDOCOVER_CAP = 10_000_000


class ContractError(ValueError):
    """A documented precondition was violated by the caller."""


class PromiseViolation(RuntimeError):
    """The input broke a class promise the algorithm relies on (e.g. contains K_{s,t})."""


class Neighborhoods(Protocol):
    def neighbors(self, u: int) -> frozenset[int]: ...

    def closed_neighbors(self, u: int) -> frozenset[int]: ...


# -- Phase 1 -------------------------------------------------------------


def neighborhood_dominatable(ball: Neighborhoods, v: int, k: int) -> bool:
    """Is there A, |A| <= k, v not in A, with N(v) contained in N[A]?

    Exact bounded branching over the dominators of an uncovered neighbour.
    Every candidate lies in N^2[v], so a radius-2 ball is enough.
    """
    targets = sorted(ball.neighbors(v))
    if len(targets) <= k:
        return True  # every neighbour dominates itself
    if k <= 0:
        return False
    bit = {u: 1 << i for i, u in enumerate(targets)}
    full = (1 << len(targets)) - 1

    cover: dict[int, int] = {}
    for u in targets:
        for c in ball.closed_neighbors(u):
            if c != v:
                cover[c] = cover.get(c, 0) | bit[u]

    # drop duplicate and dominated coverage patterns
    masks = sorted(set(cover.values()), key=lambda m: (-m.bit_count(), m))
    kept: list[int] = []
    for m in masks:
        if not any(m | other == other for other in kept):
            kept.append(m)
    best = kept[0].bit_count()
    by_bit = {b: [m for m in kept if m & b] for b in bit.values()}

    failed: set[tuple[int, int]] = set()

    def search(covered: int, budget: int) -> bool:
        if covered == full:
            return True
        missing = full & ~covered
        if budget == 0 or missing.bit_count() > budget * best:
            return False
        if (covered, budget) in failed:
            return False
        # branch on the uncovered neighbour with the fewest useful dominators
        pivot = min(
            (1 << i for i in range(len(targets)) if missing >> i & 1),
            key=lambda b: len(by_bit[b]),
        )
        for m in by_bit[pivot]:
            if search(covered | m, budget - 1):
                return True
        failed.add((covered, budget))
        return False

    return search(0, k)


def phase1(g: Graph, states: States, params: ClassParams, trace: RoundTrace | None = None, workers=None):
    """Select D1 and recolour. Returns ``(D1, states)``; charges 2 + 1 rounds."""
    if any(st.color is not Color.RED for st in states.values()):
        raise ContractError("phase1 expects every vertex to be RED")
    k = params.dominator_budget

    def program(ball):
        v = ball.center
        if neighborhood_dominatable(ball, v, k):
            return None
        return ball.state(v).with_scratch(d1=True)

    marked = run_ball_phase(g, states, 2, program, trace, "phase1", workers=workers)
    d1 = {v for v, st in marked.items() if st.scratch.get("d1")}
    return d1, recolor_after_selection(g, marked, d1, trace, "phase1-recolor")


# -- pseudo-covers ---------------------------------------------------------


def _coverage(g: Neighborhoods, W: Iterable[int]) -> Counter:
    """|N[z] ∩ W| for every z with a nonzero value."""
    counts: Counter = Counter()
    for w in W:
        counts.update(g.closed_neighbors(w))
    return counts


def lambda_strong_vertices(g, W: Iterable[int], params: ClassParams) -> set[int]:
    """All z with |N[z] ∩ W| >= |W| / kappa, compared in exact integers."""
    W = frozenset(W)
    if not W:
        return set(g.vertices) if hasattr(g, "vertices") else set()
    kappa = params.kappa
    return {z for z, c in _coverage(g, W).items() if kappa * c >= len(W)}


def _strong_candidates(g, remaining: frozenset[int], params: ClassParams) -> list[int]:
    """Vertices that may extend a pseudo-cover whose uncovered part is ``remaining``."""
    kappa, mu = params.kappa, params.mu
    size = len(remaining)
    return sorted(z for z, c in _coverage(g, remaining).items() if c >= mu and kappa * c >= size)


def enumerate_pseudocovers(g, W: Iterable[int], params: ClassParams, cap: int = DEFAULT_PSEUDOCOVER_CAP) -> list[tuple[int, ...]]:
    """Every pseudo-cover of W, found by depth-first search over strong extensions.

    Raises SearchAborted when more than ``cap`` search nodes are needed.
    """
    W = frozenset(W)
    if len(W) < params.mu:
        raise ContractError(f"pseudo-covers are only enumerated for |W| >= mu = {params.mu}")
    kappa, nu = params.kappa, params.nu
    found: list[tuple[int, ...]] = []
    visited = 0

    def extend(prefix: tuple[int, ...], remaining: frozenset[int]) -> None:
        nonlocal visited
        visited += 1
        if visited > cap:
            raise SearchAborted(f"pseudo-cover enumeration exceeded {cap} search nodes")
        if len(remaining) <= nu:
            found.append(prefix)
        if len(prefix) == kappa:
            return
        for z in _strong_candidates(g, remaining, params):
            extend(prefix + (z,), remaining - g.closed_neighbors(z))

    extend((), W)
    return found


def is_pseudocover(g, W: Iterable[int], seq: Iterable[int], params: ClassParams) -> bool:
    """Recheck the four defining clauses directly."""
    W = set(W)
    seq = list(seq)
    if len(seq) > params.kappa:
        return False
    remaining = set(W)
    for z in seq:
        hit = len(g.closed_neighbors(z) & remaining)
        if hit * params.kappa < len(remaining) or hit < params.mu:
            return False
        remaining -= g.closed_neighbors(z)
    return len(remaining) <= params.nu


def pseudocover_from_cover(g, W: Iterable[int], Z: Iterable[int], params: ClassParams) -> tuple[int, ...]:
    """Turn a small cover Z of W into a pseudo-cover of W.

    Orders Z greedily by how much of the still-uncovered part each element
    hits (smallest id on ties), then keeps the longest prefix in which every
    element is lambda-strong and hits at least mu uncovered vertices.
    """
    W = frozenset(W)
    Z = set(Z)
    if len(W) < params.nu:
        raise ContractError(f"need |W| >= nu = {params.nu}")
    if len(Z) > params.kappa:
        raise ContractError(f"need |Z| <= kappa = {params.kappa}")
    covered = set()
    for z in Z:
        covered |= g.closed_neighbors(z)
    if not W <= covered:
        raise ContractError("Z does not dominate W")

    order: list[int] = []
    remaining = set(W)
    pool = set(Z)
    while pool:
        z = min(pool, key=lambda c: (-len(g.closed_neighbors(c) & remaining), c))
        order.append(z)
        pool.remove(z)
        remaining -= g.closed_neighbors(z)

    prefix: list[int] = []
    remaining = set(W)
    for z in order:
        hit = len(g.closed_neighbors(z) & remaining)
        if hit * params.kappa < len(remaining) or hit < params.mu:
            break
        prefix.append(z)
        remaining -= g.closed_neighbors(z)
    return tuple(prefix)


def pseudocover_members(g, residual: frozenset[int], params: ClassParams, cap: int = DEFAULT_PSEUDOCOVER_CAP) -> list[int]:
    """P(v): vertices occurring in some pseudo-cover of N_R(v); empty when |N_R(v)| <= mu."""
    if len(residual) <= params.mu:
        return []
    members = set()
    for cover in enumerate_pseudocovers(g, residual, params, cap):
        members.update(cover)
    return sorted(members)


# -- Phase 2 -------------------------------------------------------------


@dataclass(frozen=True)
class DominationSequence:
    vertices: tuple[int, ...]
    witnesses: tuple[frozenset[int], ...]


def maximal_domination_sequences(ball, v: int, params: ClassParams, cap: int = DEFAULT_PSEUDOCOVER_CAP):
    """All maximal domination sequences starting at v, using maximal witness sets.

    Taking B_1 = N_R(v_1) and B_i = N_R(v_i) ∩ B_{i-1} loses nothing: the
    size condition is monotone in B_{i-1}. Sequences are cut at length s,
    since a length-s sequence already exhibits a K_{s,t}; such cuts are
    returned separately so the caller can report the broken promise.
    """
    start = ball.state(v).residual
    if len(start) < params.sequence_threshold(1):
        return [], []
    s = params.s
    members_cache: dict[int, list[int]] = {}
    maximal: list[DominationSequence] = []
    cut: list[DominationSequence] = []

    def members(u: int) -> list[int]:
        if u not in members_cache:
            members_cache[u] = pseudocover_members(ball, ball.state(u).residual, params, cap)
        return members_cache[u]

    def extend(seq: tuple[int, ...], bs: tuple[frozenset[int], ...]) -> None:
        if len(seq) >= s:
            cut.append(DominationSequence(seq, bs))
            return
        i = len(seq) + 1
        need = params.sequence_threshold(i)
        grew = False
        for u in members(seq[-1]):
            if u in seq:
                continue
            b = bs[-1] & ball.state(u).residual
            if len(b) >= need:
                grew = True
                extend(seq + (u,), bs + (b,))
        if not grew:
            maximal.append(DominationSequence(seq, bs))

    extend((v,), (start,))
    return maximal, cut


def phase2(
    g: Graph,
    states: States,
    params: ClassParams,
    trace: RoundTrace | None = None,
    strict: bool = False,
    cap: int = DEFAULT_PSEUDOCOVER_CAP,
    workers=None,
):
    """Select the endpoints of all maximal domination sequences. Returns ``(D2, states)``.

    Gathering needs radius 2(s-1); reporting endpoints back to them costs
    another 2(s-1) rounds; then one recolouring round.
    """
    radius = 2 * (params.s - 1)

    def program(ball):
        maximal, cut = maximal_domination_sequences(ball, ball.center, params, cap)
        if not maximal and not cut:
            return None
        ends = frozenset(seq.vertices[-1] for seq in maximal + cut)
        return ball.state(ball.center).with_scratch(d2_nominate=ends, sequence_cut=bool(cut))

    marked = run_ball_phase(g, states, radius, program, trace, "phase2-gather", workers=workers)
    if trace is not None:
        trace.charge("phase2-notify", radius)
    d2: set[int] = set()
    cut_any = False
    for st in marked.values():
        d2 |= st.scratch.get("d2_nominate", frozenset())
        cut_any |= bool(st.scratch.get("sequence_cut"))
    if cut_any:
        msg = f"a domination sequence reached length s={params.s}: input contains K_{{{params.s},{params.t}}}"
        if strict:
            raise PromiseViolation(msg)
        warnings.warn(msg, RuntimeWarning, stacklevel=2)

    new_states = recolor_after_selection(g, marked, d2, trace, "phase2-recolor")
    bound = params.sequence_threshold(1)
    worst = max_residual_degree(new_states)
    if worst >= bound:
        msg = f"residual degree {worst} after phase 2 is not below {bound}"
        if strict:
            raise PromiseViolation(msg)
        warnings.warn(msg, RuntimeWarning, stacklevel=2)
    return d2, new_states
