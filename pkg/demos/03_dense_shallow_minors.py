"""
When shallow minors are dense
=============================

G(gamma, m): gamma hubs, m extra vertices each joined to all hubs through
private subdivision vertices. Every extra vertex needs gamma dominators for
its neighbourhood, so with the planar thresholds Phase 1 grabs all of them.
The output still dominates; only the size guarantee is lost.
"""

import warnings

from sparsedom.gen import g_gamma_m
from sparsedom.general import neighborhood_dominatable
from sparsedom.oracle import gamma
from sparsedom.params import planar
from sparsedom.pipeline import run_pipeline

warnings.simplefilter("ignore")
preset = planar()

print(f"{'m':>4s} {'n':>6s} {'gamma':>6s} {'|D|':>5s} {'|D1|':>5s} dominates")
for m in (5, 10, 20, 40, 80):
    g = g_gamma_m(4, m)
    res = run_pipeline(g, preset, "greedy")
    print(f"{m:4d} {g.n:6d} {gamma(g):6d} {res.size:5d} {len(res.d1):5d} {res.dominates}")

# the extra vertex w = 4 needs all four hubs
g = g_gamma_m(4, 20)
print("N(w) dominatable by 3:", neighborhood_dominatable(g, 4, 3), "by 4:", neighborhood_dominatable(g, 4, 4))
