"""End-to-end runs: Phase 1, a class-specific Phase 2, and one of the two Phase 3 variants."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Optional

from .general import PromiseViolation, phase1, phase2
from .graph import Graph
from .greedy import GreedyTrace, greedy_bound, phase3_greedy
from .k3t import phase2_k3t, residual_cap_check
from .local import RoundTrace, initial_states
from .lp import LPPhaseReport, phase3_lp
from .params import ClassPreset


class PhaseError(RuntimeError):
    """A phase raised; ``phase`` names which one."""

    def __init__(self, phase: str, cause: BaseException):
        super().__init__(f"{phase}: {type(cause).__name__}: {cause}")
        self.phase = phase
        self.cause = cause


@dataclass
class RunResult:
    preset: ClassPreset
    phase3: str
    n: int
    m: int
    d1: set[int]
    d2: set[int]
    d3: set[int]
    trace: RoundTrace
    dominates: bool
    max_residual_after_phase2: int
    residual_cap_ok: bool
    greedy_trace: Optional[GreedyTrace] = None
    lp_report: Optional[LPPhaseReport] = None
    warnings: list[str] = field(default_factory=list)

    @property
    def dominating_set(self) -> set[int]:
        return self.d1 | self.d2 | self.d3

    @property
    def size(self) -> int:
        return len(self.dominating_set)

    def to_json(self) -> dict:
        out = {
            "preset": self.preset.name,
            "phase3": self.phase3,
            "epsilon": str(self.preset.epsilon),
            "n": self.n,
            "m": self.m,
            "D1": {"size": len(self.d1), "members": sorted(self.d1)},
            "D2": {"size": len(self.d2), "members": sorted(self.d2)},
            "D3": {"size": len(self.d3), "members": sorted(self.d3)},
            "size": self.size,
            "rounds": self.trace.to_json(),
            "dominates": self.dominates,
            "max_residual_after_phase2": self.max_residual_after_phase2,
            "residual_cap": self.preset.residual_cap,
            "residual_cap_ok": self.residual_cap_ok,
            "warnings": self.warnings,
        }
        if self.greedy_trace is not None:
            out["greedy_trace"] = self.greedy_trace.to_json()
            out["greedy_h2_violations"] = self.greedy_trace.h2_violations
        if self.lp_report is not None:
            out["lp"] = self.lp_report.to_json()
        return out


def run_pipeline(g: Graph, preset: ClassPreset, phase3: str = "lp", strict: bool = False, workers: int | None = None) -> RunResult:
    """Run all three phases on ``g``. Errors are re-raised as PhaseError naming the phase."""
    if phase3 not in ("lp", "greedy"):
        raise ValueError("phase3 must be 'lp' or 'greedy'")
    trace = RoundTrace()
    states = initial_states(g)
    greedy_log = lp_report = None
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        phase = "phase1"
        try:
            d1, states = phase1(g, states, preset.params, trace, workers=workers)
            phase = "phase2"
            if preset.phase2 == "k3t":
                d2, states, _ = phase2_k3t(g, states, preset, trace, strict=strict, workers=workers)
            elif preset.phase2 == "general":
                d2, states = phase2(g, states, preset.params, trace, strict=strict, workers=workers)
            else:
                d2 = set()
            cap_ok, worst = residual_cap_check(states, preset)
            if not cap_ok:
                msg = f"max residual degree {worst} after phase 2 exceeds cap {preset.residual_cap}"
                if strict:
                    raise PromiseViolation(msg)
                warnings.warn(msg, RuntimeWarning)
            phase = "phase3"
            if phase3 == "lp":
                d3, states, lp_report = phase3_lp(g, states, preset, trace)
            else:
                d3, states, greedy_log = phase3_greedy(g, states, preset.residual_cap, trace, preset.params.nabla0, strict)
        except Exception as exc:
            raise PhaseError(phase, exc) from exc
    chosen = d1 | d2 | d3
    return RunResult(
        preset=preset,
        phase3=phase3,
        n=g.n,
        m=g.m,
        d1=d1,
        d2=d2,
        d3=d3,
        trace=trace,
        dominates=g.dominates(chosen),
        max_residual_after_phase2=worst,
        residual_cap_ok=cap_ok,
        greedy_trace=greedy_log,
        lp_report=lp_report,
        warnings=[str(w.message) for w in caught],
    )


def guarantee(preset: ClassPreset, phase3: str = "lp") -> float:
    """Worst-case ratio to the optimum for a full run with the given Phase 3."""
    if phase3 == "lp":
        return float(preset.guarantee_factor())
    # swap the Phase 3 share of the LP guarantee for the greedy factor
    if preset.take_residual:
        lp_share = preset.residual_cap + 1
        first_two = float(preset.guarantee_factor()) - lp_share
    else:
        d = preset.orientation_degree or preset.params.nabla0
        first_two = float(preset.guarantee_factor(0)) - (2 * d + 1)
    return first_two + greedy_bound(preset.params.nabla0, preset.residual_cap)
