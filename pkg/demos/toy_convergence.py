"""PPO-Lagrangian against unconstrained PPO on the toy power-regulation task.

Runs ``bench`` for both algorithms over the seeds in ``configs/toy.yaml`` and
prints how close the final discounted energy cost is to the threshold and
how much tracking reward the constraint costs.

    python3 demos/toy_convergence.py [--out results/toy] [--iterations N]
"""

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from conloco.harness import load_config
from conloco.harness.bench import bench
from conloco.harness.metrics import final_value
from conloco.harness.reports import read_metrics_csv
from conloco.harness.toy import value_iteration_oracle

ROOT = Path(__file__).resolve().parents[1]


def convergence_summary(records, threshold, tail=10):
    """Seed means of the final constraint estimate and tracking reward."""
    out = {}
    for algo in ("ppo", "ppolag"):
        recs = [r for r in records if r.algorithm == algo]
        out[algo] = {
            "jc1": float(np.mean([final_value(r, "jc1", tail) for r in recs])),
            "reward": float(np.mean([final_value(r, "reward_mean", tail) for r in recs])),
            "seeds": len(recs),
        }
    lag, ppo = out["ppolag"], out["ppo"]
    out["cost_error"] = abs(lag["jc1"] - threshold) / threshold
    out["reward_ratio"] = lag["reward"] / ppo["reward"]
    out["passed"] = out["cost_error"] <= 0.1 and out["reward_ratio"] >= 0.9
    return out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--config", default=str(ROOT / "configs" / "toy.yaml"))
    p.add_argument("--out", default=str(ROOT / "results" / "toy"))
    p.add_argument("--iterations", type=int)
    p.add_argument("--reuse", action="store_true", help="read an existing metrics.csv")
    args = p.parse_args(argv)
    cfg = load_config(args.config)
    if args.iterations:
        cfg = replace(cfg, iterations=args.iterations)
    b_star = value_iteration_oracle(cfg.toy).b_star
    threshold = cfg.constraints[0].threshold
    print(f"oracle b* = {b_star:.6f}, threshold b = {threshold:.5f} ({threshold / b_star:.3f} b*)")
    metrics = Path(args.out) / "metrics.csv"
    if args.reuse and metrics.exists():
        records = read_metrics_csv(metrics)
    else:
        records = bench(cfg, ["ppo", "ppolag"], cfg.seeds, args.out)
    s = convergence_summary(records, threshold)
    for algo in ("ppo", "ppolag"):
        print(f"{algo:7s} final J_C1 {s[algo]['jc1']:.5f}  tracking reward {s[algo]['reward']:.5f}")
    print(f"PPO-Lag cost error {100 * s['cost_error']:.2f}% of b, "
          f"reward ratio {s['reward_ratio']:.4f}")
    return 0 if s["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
