"""
LP rounding against the greedy countdown
========================================

Both Phase 3 variants on each restricted planar class. The guarantees
differ a lot more than the observed sizes do.
"""

import statistics

from sparsedom.gen import generate
from sparsedom.oracle import gamma
from sparsedom.params import get_preset
from sparsedom.pipeline import guarantee, run_pipeline

CLASSES = {
    "planar": "PLANAR",
    "triangle_free_planar": "TRIANGLE_FREE_PLANAR",
    "bipartite_planar": "BIPARTITE_PLANAR",
    "girth5_planar": "GIRTH5_PLANAR",
    "outerplanar": "OUTERPLANAR",
}

print(f"{'preset':22s} {'lp mean':>8s} {'lp max':>7s} {'bound':>6s} {'greedy mean':>12s} {'greedy max':>10s} {'bound':>6s}")
for cls, name in CLASSES.items():
    preset = get_preset(name)
    ratios = {"lp": [], "greedy": []}
    for seed in range(25):
        g = generate(cls, 32, seed)
        opt = gamma(g)
        for phase3 in ratios:
            ratios[phase3].append(run_pipeline(g, preset, phase3).size / opt)
    lp, gr = ratios["lp"], ratios["greedy"]
    print(
        f"{name:22s} {statistics.mean(lp):8.2f} {max(lp):7.2f} {guarantee(preset, 'lp'):6.2f}"
        f" {statistics.mean(gr):12.2f} {max(gr):10.2f} {guarantee(preset, 'greedy'):6.2f}"
    )

# Greedy usually wins in practice; its price is a longer schedule.
g = generate("planar", 200, 1)
preset = get_preset("PLANAR")
print("rounds: lp", run_pipeline(g, preset, "lp").trace.total, "greedy", run_pipeline(g, preset, "greedy").trace.total)
