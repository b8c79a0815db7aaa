"""Mirror-symmetry constraint on the planar biped with PPO-Lagrangian.

Benchmarks PPO-Lagrangian over five seeds on ``configs/biped_desk.yaml``
(mirror threshold b2 = 0.05) and reports, per seed, the batch-mean mirror
cost over the last 10 iterations.

    python3 demos/biped_mirror.py [--out results/biped_mirror] [--reuse]
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from conloco.harness import bench, load_config, read_metrics_csv
from conloco.harness.metrics import final_value

ROOT = Path(__file__).resolve().parents[1]


def mirror_summary(records, threshold, tail=10):
    rows = []
    for r in sorted(records, key=lambda r: r.seed):
        jc2 = r.column("jc2")
        rows.append({"seed": r.seed, "final_jc2": final_value(r, "jc2", tail),
                     "peak_jc2": float(np.max(jc2)) if jc2.size else float("nan"),
                     "iterations": int(jc2.size)})
    n_ok = sum(row["final_jc2"] < threshold for row in rows)
    return rows, n_ok


def progress(row):
    if row["iteration"] % 50 == 0:
        print(f"seed {row['seed']} it {row['iteration']} C2 {row['jc2']:.4f}", flush=True)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--config", default=str(ROOT / "configs" / "biped_desk.yaml"))
    p.add_argument("--out", default=str(ROOT / "results" / "biped_mirror"))
    p.add_argument("--reuse", action="store_true", help="read an existing metrics.csv")
    args = p.parse_args(argv)
    cfg = load_config(args.config)
    b2 = next(c.threshold for c in cfg.constraints if c.channel == 1)
    metrics = Path(args.out) / "metrics.csv"
    if args.reuse and metrics.exists():
        records = read_metrics_csv(metrics)
    else:
        records = bench(cfg, ["ppolag"], cfg.seeds, args.out, log=progress)
    rows, n_ok = mirror_summary(records, b2)
    for row in rows:
        print(f"seed {row['seed']}: final C2 {row['final_jc2']:.4f} "
              f"(peak {row['peak_jc2']:.4f}, {row['iterations']} iterations)")
    print(f"{n_ok}/{len(rows)} seeds below b2 = {b2}")
    return 0 if n_ok >= 4 else 1


if __name__ == "__main__":
    sys.exit(main())
