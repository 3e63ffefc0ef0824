"""Command line: ``sparsedom gen|run|verify|bench``.

Exit status is 0 when every produced set dominates its graph and no phase
raised; 1 when a set fails to dominate; 2 for usage or input errors; 3 when
a phase raised (the message names the phase); 4 when an oracle hit its budget.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path

from .graph import GraphFormatError, SearchAborted, read_edge_list, save_edge_list
from .gen import GENERATORS, PRESET_CLASS, generate
from .oracle import DEFAULT_BUDGET, exact_min_dominating_set
from .params import ClassPreset, get_preset, preset_from_json
from .pipeline import PhaseError, guarantee, run_pipeline

BENCH_COLUMNS = ["seed", "n", "m", "gamma", "alg_lp", "alg_greedy", "ratio_lp", "ratio_greedy", "rounds_lp", "rounds_greedy"]

EXIT_OK, EXIT_NOT_DOMINATING, EXIT_INPUT, EXIT_PHASE, EXIT_BUDGET = 0, 1, 2, 3, 4


def _epsilon(text: str) -> Fraction:
    try:
        eps = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if eps <= 0:
        raise argparse.ArgumentTypeError("epsilon must be positive")
    return eps


def _n_range(text: str) -> tuple[int, int]:
    for sep in (":", "-", ","):
        if sep in text:
            lo, hi = (int(p) for p in text.split(sep, 1))
            break
    else:
        lo = hi = int(text)
    if not 1 <= lo <= hi:
        raise argparse.ArgumentTypeError(f"bad size range {text!r}")
    return lo, hi


def _preset(args) -> ClassPreset:
    if getattr(args, "preset_file", None):
        obj = json.loads(Path(args.preset_file).read_text())
        obj.setdefault("epsilon", str(args.epsilon))
        return preset_from_json(obj)
    name = args.preset
    if name is None:
        cls = getattr(args, "cls", None)
        name = {v: k for k, v in PRESET_CLASS.items()}.get(cls, "PLANAR")
    return get_preset(name, epsilon=args.epsilon)


def _emit(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def cmd_gen(args) -> int:
    g = generate(args.cls, args.n, args.seed)
    if args.out:
        save_edge_list(g, args.out)
    else:
        sys.stdout.write(g.to_edge_list())
    return EXIT_OK


def cmd_run(args) -> int:
    g = read_edge_list(args.graph)
    result = run_pipeline(g, _preset(args), args.phase3, strict=args.strict)
    _emit(result.to_json(), args.out)
    return EXIT_OK if result.dominates else EXIT_NOT_DOMINATING


def _verify_one(g, preset: ClassPreset, phase3: str, strict: bool, budget: int, opt: int | None = None) -> dict:
    result = run_pipeline(g, preset, phase3, strict=strict)
    if opt is None:
        opt = len(exact_min_dominating_set(g, budget=budget))
    bound = guarantee(preset, phase3)
    ratio = result.size / opt if opt else (0.0 if result.size == 0 else float("inf"))
    return {
        "preset": preset.name,
        "phase3": phase3,
        "epsilon": str(preset.epsilon),
        "n": g.n,
        "m": g.m,
        "gamma": opt,
        "alg_size": result.size,
        "ratio": ratio,
        "bound": bound,
        "within_bound": ratio <= bound,
        "dominates": result.dominates,
        "rounds": result.trace.total,
    }


def cmd_verify(args) -> int:
    g = read_edge_list(args.graph)
    report = _verify_one(g, _preset(args), args.phase3, args.strict, args.budget)
    _emit(report, args.out)
    return EXIT_OK if report["dominates"] else EXIT_NOT_DOMINATING


def cmd_bench(args) -> int:
    import numpy as np

    preset = _preset(args)
    lo, hi = args.n
    rng = np.random.default_rng(args.seed)
    rows = []
    status = EXIT_OK
    for k in range(args.count):
        seed = args.seed * 1_000_003 + k
        n = int(rng.integers(lo, hi + 1))
        g = generate(args.cls, n, seed)
        try:
            lp = _verify_one(g, preset, "lp", args.strict, args.budget)
            gr = _verify_one(g, preset, "greedy", args.strict, args.budget, lp["gamma"])
        except SearchAborted as exc:
            print(f"seed {seed}: oracle aborted ({exc}); instance skipped", file=sys.stderr)
            continue
        if not (lp["dominates"] and gr["dominates"]):
            status = EXIT_NOT_DOMINATING
        rows.append(
            {
                "seed": seed,
                "n": g.n,
                "m": g.m,
                "gamma": lp["gamma"],
                "alg_lp": lp["alg_size"],
                "alg_greedy": gr["alg_size"],
                "ratio_lp": f"{lp['ratio']:.6f}",
                "ratio_greedy": f"{gr['ratio']:.6f}",
                "rounds_lp": lp["rounds"],
                "rounds_greedy": gr["rounds"],
            }
        )
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.DictWriter(fh, fieldnames=BENCH_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if args.out:
            fh.close()
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sparsedom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    classes = sorted(GENERATORS) + ["er"]

    def pipeline_flags(p, with_phase3=True):
        p.add_argument("--preset", help="PLANAR, TRIANGLE_FREE_PLANAR, BIPARTITE_PLANAR, GIRTH5_PLANAR, OUTERPLANAR, K3T_FREE(a,t) or GENERAL_BE(a)")
        p.add_argument("--preset-file", help="JSON file with a custom parameter set")
        p.add_argument("--epsilon", type=_epsilon, default=Fraction(1))
        p.add_argument("--strict", action="store_true", help="abort on class-promise violations")
        if with_phase3:
            p.add_argument("--phase3", choices=["lp", "greedy"], default="lp")

    p = sub.add_parser("gen", help="write a random graph of a class as an edge list")
    p.add_argument("--class", dest="cls", choices=classes, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("run", help="run the pipeline and write a JSON report")
    p.add_argument("graph")
    pipeline_flags(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("verify", help="run the pipeline and compare against the exact optimum")
    p.add_argument("graph")
    pipeline_flags(p)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="branch-node cap for the exact solver")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="batch verify on generated instances, CSV output")
    p.add_argument("--class", dest="cls", choices=classes, required=True)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--n", type=_n_range, default=(20, 40), help="size or range LO:HI")
    p.add_argument("--seed", type=int, default=0)
    pipeline_flags(p, with_phase3=False)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, OSError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PhaseError as exc:
        print(f"error in {exc}", file=sys.stderr)
        return EXIT_PHASE
    except SearchAborted as exc:
        print(f"error: oracle budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
