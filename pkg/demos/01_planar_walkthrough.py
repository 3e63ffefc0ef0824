"""
A planar graph through the three phases
=======================================

Generate a small planar graph, run the pipeline, and look at what each
phase contributed and how many synchronous rounds it was charged.
"""

from sparsedom.gen import gen_planar
from sparsedom.oracle import gamma, is_planar
from sparsedom.params import planar
from sparsedom.pipeline import guarantee, run_pipeline

g = gen_planar(36, seed=4)
print(f"n={g.n} m={g.m} max degree={g.max_degree()} planar={is_planar(g)}")

preset = planar(epsilon=1)
print(f"preset {preset.name}: residual cap {preset.residual_cap}, degree cut {float(preset.gamma_cap):.0f}")

# Phase 1 takes vertices whose neighbourhood cannot be dominated by 3 others,
# Phase 2 takes vertices sharing many red neighbours, Phase 3 cleans up.
res = run_pipeline(g, preset, "lp")
for name, part in (("D1", res.d1), ("D2", res.d2), ("D3", res.d3)):
    print(f"{name}: {len(part):2d} {sorted(part)}")

opt = gamma(g)
print(f"|D| = {res.size}, optimum {opt}, ratio {res.size / opt:.2f}, guaranteed <= {guarantee(preset):.0f}")
print(f"residual degree after phase 2: {res.max_residual_after_phase2} (cap {preset.residual_cap})")

# the round count is a property of the preset, not of the graph
for phase, rounds in res.trace.by_phase().items():
    print(f"  {phase:28s} {rounds}")
print("total rounds", res.trace.total)
