"""LP-based Phase 3: representative reduction, high-degree removal, a local
covering-LP solver and threshold rounding against a low out-degree orientation.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np
import scipy.sparse as sp

from .general import ContractError
from .graph import Graph, orient_min_out_degree
from .local import Color, RoundTrace, States, recolor_after_selection, red_set
from .params import ClassPreset

MIN_LP_ITERATIONS = 64
_GRID = 2**40  # float iterates are snapped to this dyadic grid before exact repair


class LPConvergenceError(RuntimeError):
    """The local LP solver missed its (1 + eps) target within the charged rounds."""


@dataclass(frozen=True)
class FractionalAssignment:
    values: Mapping[int, Fraction]
    # certified lower bound on the LP optimum from the solver's dual iterate
    lower_bound: Fraction | None = None

    @property
    def objective(self) -> Fraction:
        return sum(self.values.values(), Fraction(0))

    def get(self, v: int) -> Fraction:
        return self.values.get(v, Fraction(0))

    def coverage(self, g: Graph, v: int) -> Fraction:
        return sum((self.get(u) for u in g.closed_neighbors(v)), Fraction(0))

    def is_feasible(self, g: Graph, R: Iterable[int]) -> bool:
        if any(not 0 <= x <= 1 for x in self.values.values()):
            return False
        return all(self.coverage(g, v) >= 1 for v in R)

    def to_json(self) -> str:
        return json.dumps({str(v): float(x) for v, x in sorted(self.values.items())})


@dataclass(frozen=True)
class ReducedInstance:
    graph: Graph
    R: frozenset[int]
    # kept non-R vertex -> all original vertices with the same N_R (itself included)
    representatives: Mapping[int, frozenset[int]]


def reduce_representatives(g: Graph, R: Iterable[int]) -> ReducedInstance:
    """Keep R, and one lowest-id vertex per distinct nonempty N_R among the rest."""
    R = frozenset(R)
    groups: dict[frozenset[int], list[int]] = {}
    for v in g:
        if v in R:
            continue
        nr = g.neighbors(v) & R
        if nr:
            groups.setdefault(nr, []).append(v)
    reps = {min(vs): frozenset(vs) for vs in groups.values()}
    edges = [(u, v) for u in R for v in g.neighbors(u) if v in R and u < v]
    for rep in reps:
        edges += [(rep, r) for r in g.neighbors(rep) & R]
    return ReducedInstance(Graph(R | reps.keys(), edges), R, reps)


def select_high_degree(g: Graph, gamma_cap) -> set[int]:
    """D3^1: every vertex of degree above ``gamma_cap``."""
    return {v for v in g if g.degree(v) > gamma_cap}


def lp_iterations(max_degree: int, epsilon) -> int:
    """Primal-dual iterations for degree bound ``max_degree``: max(64, r^2) with r = ceil(log(D+1) / log(1+eps))."""
    eps = float(epsilon)
    r = math.ceil(math.log(max_degree + 1) / math.log1p(eps)) if max_degree > 0 else 1
    return max(MIN_LP_ITERATIONS, r * r)


def lp_rounds(max_degree: int, epsilon) -> int:
    """Two exchanges per iteration plus one repair round."""
    return 2 * lp_iterations(max_degree, epsilon) + 1


def _cover_matrix(g: Graph, R: list[int], cols: list[int]) -> sp.csr_matrix:
    col = {u: i for i, u in enumerate(cols)}
    rows, cs = [], []
    for i, v in enumerate(R):
        for u in g.closed_neighbors(v):
            rows.append(i)
            cs.append(col[u])
    return sp.csr_matrix((np.ones(len(rows)), (rows, cs)), shape=(len(R), len(cols)))


def primal_dual_iterates(g: Graph, R: list[int], iterations: int) -> tuple[dict[int, float], dict[int, float]]:
    """Run the preconditioned primal-dual iteration; returns float (x, y) keyed by vertex."""
    cols = sorted({u for v in R for u in g.closed_neighbors(v)})
    A = _cover_matrix(g, R, cols)
    At = A.T.tocsr()
    tau = 1.0 / np.asarray(A.sum(axis=0)).ravel()  # 1 / |N[u] ∩ R|
    sigma = 1.0 / np.asarray(A.sum(axis=1)).ravel()  # 1 / |N[v]|
    x = np.zeros(len(cols))
    y = np.zeros(len(R))
    for _ in range(iterations):
        x_new = np.clip(x - tau * (1.0 - At @ y), 0.0, 1.0)
        y = np.maximum(0.0, y + sigma * (1.0 - A @ (2.0 * x_new - x)))
        x = x_new
    return dict(zip(cols, x.tolist())), dict(zip(R, y.tolist()))


def solve_cover_lp_local(
    g: Graph,
    R: Iterable[int],
    epsilon,
    max_degree: int,
    trace: RoundTrace | None = None,
    check: bool = True,
) -> FractionalAssignment:
    """Fractional R-dominating set within (1 + epsilon) of the LP optimum.

    Runs a fixed number of diagonally preconditioned primal-dual
    (Chambolle-Pock) iterations. Each iteration is two neighbour
    exchanges: vertices in R publish their dual value y_v, every vertex
    updates x_u from the y of its closed neighbourhood, then publishes x_u
    so that R-vertices can update y_v. Vectorised over the whole graph,
    but each update reads only the closed neighbourhood. A final round
    lets every under-covered v in R raise its own x_v by its deficit, in
    exact arithmetic, which makes the result feasible.

    The iteration count depends only on ``max_degree`` and ``epsilon``.
    With ``check`` the objective is compared against the lower bound
    certified by the dual iterate and LPConvergenceError is raised if the
    (1 + epsilon) target is not proven.
    """
    R = sorted(set(R))
    if g.max_degree() > max_degree:
        raise ContractError(f"graph has degree {g.max_degree()} > max_degree={max_degree}")
    eps = Fraction(epsilon)
    iterations = lp_iterations(max_degree, eps)
    if trace is not None:
        trace.charge("phase3-lp-solve", 2 * iterations + 1)
    if not R:
        return FractionalAssignment({}, Fraction(0))

    x, y = primal_dual_iterates(g, R, iterations)
    values = {u: Fraction(round(xu * _GRID), _GRID) for u, xu in x.items()}
    fa = FractionalAssignment(values)
    deficits = {v: 1 - fa.coverage(g, v) for v in R}
    for v, d in deficits.items():
        if d > 0:
            values[v] += d  # stays <= 1 because the coverage of v includes x_v

    yq = [Fraction(round(y[v] * _GRID), _GRID) for v in R]
    load: dict[int, Fraction] = {}
    for v, yv in zip(R, yq):
        for u in g.closed_neighbors(v):
            load[u] = load.get(u, Fraction(0)) + yv
    lower = sum(yq, Fraction(0)) - sum((max(Fraction(0), l - 1) for l in load.values()), Fraction(0))
    result = FractionalAssignment({u: xv for u, xv in values.items() if xv}, lower)
    if check and result.objective > (1 + eps) * lower:
        raise LPConvergenceError(
            f"objective {float(result.objective):.6f} not proven within 1+{eps} of the LP optimum "
            f"(dual bound {float(lower):.6f}) after {iterations} iterations"
        )
    return result


def round_bansal_umboh(g: Graph, R: Iterable[int], x: FractionalAssignment, d: int) -> tuple[set[int], set[int]]:
    """Return (H, U): H = {x_v >= 1/(2d+1)}, U = vertices of R not dominated by H.

    ``d`` must bound the out-degree of some orientation of ``g``; then
    |H ∪ U| <= (2d+1) Σ x_v, which is asserted together with domination.
    """
    R = set(R)
    if not x.is_feasible(g, R):
        raise ContractError("fractional assignment is not feasible for R")
    threshold = Fraction(1, 2 * d + 1)
    H = {v for v, xv in x.values.items() if xv >= threshold}
    covered = set(H)
    for h in H:
        covered |= g.neighbors(h)
    U = R - covered
    chosen = H | U
    if not g.dominates(chosen, R):
        raise AssertionError("rounded set does not dominate R")
    if len(chosen) > (2 * d + 1) * x.objective:
        raise AssertionError(f"rounded size {len(chosen)} exceeds (2d+1) * objective with d={d}")
    return H, U


@dataclass
class LPPhaseReport:
    reduced_n: int = 0
    high_degree: int = 0
    orientation_degree: int = 0
    objective: Fraction = Fraction(0)
    lower_bound: Fraction = Fraction(0)
    H: int = 0
    U: int = 0

    def to_json(self) -> dict:
        return {
            "reduced_n": self.reduced_n,
            "high_degree": self.high_degree,
            "orientation_degree": self.orientation_degree,
            "lp_objective": float(self.objective),
            "lp_lower_bound": float(self.lower_bound),
            "H": self.H,
            "U": self.U,
        }


def phase3_lp(g: Graph, states: States, preset: ClassPreset, trace: RoundTrace | None = None):
    """Returns ``(D3, states, report)``. The round schedule is the same for every input."""
    report = LPPhaseReport()
    R = red_set(states)
    if preset.take_residual:
        return set(R), recolor_after_selection(g, states, R, trace, "phase3-recolor"), report

    gamma_cap = preset.gamma_cap
    if trace is not None:
        trace.charge("phase3-reduce", 2)
    reduced = reduce_representatives(g, R)
    report.reduced_n = reduced.graph.n

    if trace is not None:
        trace.charge("phase3-high-degree", 1)
    d31 = select_high_degree(reduced.graph, gamma_cap)
    report.high_degree = len(d31)
    states = recolor_after_selection(g, states, d31, trace, "phase3-high-degree-recolor")
    rest = red_set(states)
    g2 = reduced.graph.without_vertices(d31)

    if preset.orientation_degree is not None:
        d = preset.orientation_degree
    else:
        d = orient_min_out_degree(g2).max_out_degree
    report.orientation_degree = d

    x = solve_cover_lp_local(g2, rest, preset.lp_epsilon, math.floor(gamma_cap), trace)
    report.objective = x.objective
    report.lower_bound = x.lower_bound or Fraction(0)

    if trace is not None:
        trace.charge("phase3-round", 1)
    H, U = round_bansal_umboh(g2, rest, x, d)
    report.H, report.U = len(H), len(U)
    d3 = d31 | H | U
    states = recolor_after_selection(g, states, H | U, trace, "phase3-recolor")
    if any(st.color is Color.RED for st in states.values()):
        raise AssertionError("phase 3 left a RED vertex")
    return d3, states, report
