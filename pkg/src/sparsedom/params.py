"""Class parameters, the constants derived from them, and the named class presets."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional


def _frac(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**9)
    return Fraction(x)


@dataclass(frozen=True)
class ClassParams:
    """Promises about the input class plus the approximation knob epsilon.

    ``nabla1`` bounds the density of depth-1 minors, ``nabla0`` the density
    of subgraphs, ``nn`` strictly exceeds the bipartite depth-1 minor
    density, and K_{s,t} is excluded as a subgraph. None of these can be
    checked locally; they are trusted.
    """

    nabla1: int
    nabla0: int
    nn: int
    s: int
    t: int
    epsilon: Fraction = Fraction(1)
    residual_cap_override: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "epsilon", _frac(self.epsilon))
        if self.nabla1 < 1:
            raise ValueError("nabla1 must be >= 1")
        if not 0 <= self.nabla0 <= self.nabla1:
            raise ValueError("need 0 <= nabla0 <= nabla1")
        if not 1 <= self.nn <= self.nabla1 + 1:
            raise ValueError("need 1 <= nn <= nabla1 + 1")
        if not 1 <= self.s <= self.t:
            raise ValueError("need 1 <= s <= t")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")

    @property
    def kappa(self) -> int:
        return max(2 * self.nabla0, 2 * self.nn)

    @property
    def lam(self) -> Fraction:
        return Fraction(1, self.kappa)

    @property
    def mu(self) -> int:
        return 2 * self.kappa**2

    @property
    def nu(self) -> int:
        return 2 * self.kappa**3

    @property
    def dominator_budget(self) -> int:
        """Phase 1 keeps v iff N(v) is dominated by this many other vertices."""
        return 2 * self.nn - 1

    def sequence_threshold(self, i: int) -> Fraction:
        """Minimum witness size |B_i| for position i (1-based) of a domination sequence."""
        k, s = self.kappa, self.s
        return Fraction(k) ** (s - i) * (self.t + s - i + (s - i) * self.nu)

    @property
    def delta_R(self) -> int:
        """Residual degree bound after Phase 2, with nu = 2 kappa^3 substituted."""
        if self.residual_cap_override is not None:
            return self.residual_cap_override
        return int(self.sequence_threshold(1))

    def gamma_cap(self, delta_R: int | None = None) -> Fraction:
        """Degree above which Phase 3 selects a vertex outright."""
        dr = self.delta_R if delta_R is None else delta_R
        n1 = self.nabla1
        return Fraction(4 * n1 * (4**n1 + 2 * n1) * (dr + 1)) / self.epsilon

    def with_epsilon(self, epsilon) -> "ClassParams":
        return ClassParams(self.nabla1, self.nabla0, self.nn, self.s, self.t, epsilon, self.residual_cap_override)

    def to_json(self) -> dict:
        return {
            "nabla1": self.nabla1,
            "nabla0": self.nabla0,
            "nn": self.nn,
            "s": self.s,
            "t": self.t,
            "epsilon": str(self.epsilon),
        }


@dataclass(frozen=True)
class ClassPreset:
    name: str
    params: ClassParams
    phase2: str  # "k3t", "general" or "none"
    common_neighbor_threshold: Optional[int]
    residual_cap: int
    # out-degree bound used by LP rounding; None means measure it on the reduced graph
    orientation_degree: Optional[int]
    lp_epsilon_divisor: int
    guarantee: Callable[[Fraction], Fraction] = field(compare=False)
    # Phase 3 (LP variant) picks all remaining red vertices instead of solving the LP
    take_residual: bool = False
    max_b_size: Optional[int] = None  # |B_v| bound the class implies, checked as a promise

    @property
    def epsilon(self) -> Fraction:
        return self.params.epsilon

    def guarantee_factor(self, epsilon=None) -> Fraction:
        return self.guarantee(self.params.epsilon if epsilon is None else _frac(epsilon))

    def with_epsilon(self, epsilon) -> "ClassPreset":
        return ClassPreset(
            self.name,
            self.params.with_epsilon(epsilon),
            self.phase2,
            self.common_neighbor_threshold,
            self.residual_cap,
            self.orientation_degree,
            self.lp_epsilon_divisor,
            self.guarantee,
            self.take_residual,
            self.max_b_size,
        )

    @property
    def gamma_cap(self) -> Fraction:
        return self.params.gamma_cap(self.residual_cap)

    @property
    def lp_epsilon(self) -> Fraction:
        return self.params.epsilon / self.lp_epsilon_divisor

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "params": self.params.to_json(),
            "phase2": self.phase2,
            "common_neighbor_threshold": self.common_neighbor_threshold,
            "residual_cap": self.residual_cap,
            "orientation_degree": self.orientation_degree,
            "lp_epsilon_divisor": self.lp_epsilon_divisor,
            "take_residual": self.take_residual,
        }


def _planar_family(name, nabla0, threshold, cap, d, divisor, guarantee, take_residual=False, max_b=None, epsilon=1):
    params = ClassParams(nabla1=3, nabla0=nabla0, nn=2, s=3, t=3, epsilon=epsilon, residual_cap_override=cap)
    phase2 = "none" if threshold is None else "k3t"
    return ClassPreset(name, params, phase2, threshold, cap, d, divisor, guarantee, take_residual, max_b)


def planar(epsilon=1) -> ClassPreset:
    # nn = 2 and (2nn - 1) t + 1 = 10, (2nn - 1)^2 t + (2nn - 1) = 30
    return _planar_family("PLANAR", 3, 10, 30, 3, 2, lambda e: 11 + e, max_b=3, epsilon=epsilon)


def triangle_free_planar(epsilon=1) -> ClassPreset:
    return _planar_family("TRIANGLE_FREE_PLANAR", 2, 7, 18, 2, 5, lambda e: 8 + e, max_b=3, epsilon=epsilon)


def bipartite_planar(epsilon=1) -> ClassPreset:
    return _planar_family("BIPARTITE_PLANAR", 2, 7, 18, 2, 5, lambda e: 7 + e, max_b=3, epsilon=epsilon)


def girth5_planar(epsilon=1) -> ClassPreset:
    return _planar_family("GIRTH5_PLANAR", 2, None, 3, 2, 5, lambda e: Fraction(7), take_residual=True, epsilon=epsilon)


def outerplanar(epsilon=1) -> ClassPreset:
    return _planar_family("OUTERPLANAR", 2, None, 9, 2, 5, lambda e: 8 + e, epsilon=epsilon)


def k3t_free(nabla1: int, t: int, nn: int | None = None, epsilon=1) -> ClassPreset:
    """K_{3,t}-free graphs with depth-1 minor density at most ``nabla1``."""
    if t < 3:
        raise ValueError("t must be >= 3")
    nn = nabla1 + 1 if nn is None else nn
    k = 2 * nn - 1
    cap = k * k * t + k
    params = ClassParams(nabla1=nabla1, nabla0=nabla1, nn=nn, s=3, t=t, epsilon=epsilon, residual_cap_override=cap)
    return ClassPreset(
        f"K3T_FREE({nabla1},{t})",
        params,
        "k3t",
        k * t + 1,
        cap,
        None,
        2,
        lambda e: (2 * nabla1 + 1) * (2 + e),
        max_b_size=k,
    )


def general_be(nabla1: int, epsilon=1) -> ClassPreset:
    """Bounded depth-1 minor density only; s = t = 2 nabla0 + 1."""
    s = 2 * nabla1 + 1
    params = ClassParams(nabla1=nabla1, nabla0=nabla1, nn=nabla1 + 1, s=s, t=s, epsilon=epsilon)
    return custom(f"GENERAL_BE({nabla1})", params)


def custom(name: str, params: ClassParams) -> ClassPreset:
    """General pipeline (domination-sequence Phase 2) for arbitrary parameters."""
    k = params.kappa
    n0 = params.nabla0
    return ClassPreset(
        name,
        params,
        "general",
        None,
        params.delta_R,
        None,
        2,
        lambda e: Fraction(2 * (n0 + 1) * (k ** (2 * params.s * k) + 2)),
    )


PRESETS = {
    "PLANAR": planar,
    "TRIANGLE_FREE_PLANAR": triangle_free_planar,
    "BIPARTITE_PLANAR": bipartite_planar,
    "GIRTH5_PLANAR": girth5_planar,
    "OUTERPLANAR": outerplanar,
}


def get_preset(name: str, epsilon=1) -> ClassPreset:
    """Look up a preset by name, e.g. ``PLANAR``, ``K3T_FREE(3,4)`` or ``GENERAL_BE(2)``."""
    key = name.strip().upper()
    if key in PRESETS:
        return PRESETS[key](epsilon=epsilon)
    if key.startswith("K3T_FREE(") and key.endswith(")"):
        args = [int(a) for a in key[len("K3T_FREE(") : -1].split(",")]
        return k3t_free(*args, epsilon=epsilon)
    if key.startswith("GENERAL_BE(") and key.endswith(")"):
        return general_be(int(key[len("GENERAL_BE(") : -1]), epsilon=epsilon)
    raise KeyError(f"unknown preset {name!r}")


def preset_from_json(obj) -> ClassPreset:
    """Custom preset from ``{"name", "nabla1", "nabla0", "nn", "s", "t", ["epsilon"], ["phase2", "threshold", "residual_cap"]}``."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    params = ClassParams(
        int(obj["nabla1"]),
        int(obj["nabla0"]),
        int(obj["nn"]),
        int(obj["s"]),
        int(obj["t"]),
        _frac(obj.get("epsilon", 1)),
    )
    name = obj.get("name", "CUSTOM")
    if obj.get("phase2", "general") == "k3t":
        k = 2 * params.nn - 1
        threshold = int(obj.get("threshold", k * params.t + 1))
        cap = int(obj.get("residual_cap", k * k * params.t + k))
        params = ClassParams(params.nabla1, params.nabla0, params.nn, params.s, params.t, params.epsilon, cap)
        n1 = params.nabla1
        return ClassPreset(name, params, "k3t", threshold, cap, None, 2, lambda e: (2 * n1 + 1) * (2 + e), max_b_size=k)
    return custom(name, params)
