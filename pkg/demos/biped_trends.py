"""Energy-constrained walking on the planar biped: threshold search and baselines.

Stages, all with seed 0 on ``configs/biped_desk.yaml``:

1. linear search of the PPO-Lagrangian energy threshold over ``--grid`` with
   the stability criterion "smoothed episode length >= 0.9 of the horizon";
2. penalty-reward PPO over the energy penalty grid ``--mu``;
3. IPO with a small and a large barrier coefficient at the chosen threshold;
4. CRPO at the chosen threshold.

Every run keeps its metrics, checkpoints and a deterministic evaluation in
``<out>/<run>/`` and is skipped when those files already exist, so the
script can be interrupted and resumed.  The collected numbers go to
``<out>/trends.json``.

    python3 demos/biped_trends.py [--out results/biped]
"""

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from conloco.harness import evaluate, load_config, power_equivalent, train
from conloco.harness.reports import emit_reports, read_metrics_csv
from conloco.harness.search import (SweepRow, episode_length_criterion,
                                    with_energy_threshold)

ROOT = Path(__file__).resolve().parents[1]
MU_GRID = (-0.001, -0.01, -0.1, -0.03, -0.05, -0.08, -0.015, -0.02, -0.025)
EVAL_EPISODES = 10
EVAL_SEED = 12345


def run_cached(name, cfg, out, seed=0):
    """Train (or reload) one run and evaluate its final checkpoint."""
    d = out / name
    metrics, ckpt, ev = d / "metrics.csv", d / "checkpoint_final.json", d / "eval.json"
    if metrics.exists() and ckpt.exists():
        record = read_metrics_csv(metrics)[0]
    else:
        print(f"[{name}] training {cfg.optimizer.algorithm.value} for {cfg.iterations} iterations",
              flush=True)
        record = train(cfg, seed, d)
        emit_reports([record], d, (cfg.constraints[0].threshold, cfg.constraints[1].threshold))
        if record.status != "ok":
            print(f"[{name}] {record.status}", flush=True)
            return record, None
    if not ev.exists():
        summary = evaluate(ckpt, episodes=EVAL_EPISODES, seed=EVAL_SEED).as_dict()
        ev.write_text(json.dumps(summary, indent=1, sort_keys=True))
    return record, json.loads(ev.read_text())


def tail_mean(record, column, tail=10):
    return float(np.mean(record.column(column)[-tail:]))


def diff_variance(record, column="jc1", start=100):
    """Variance of the iteration-to-iteration change of a metrics column."""
    return float(np.var(np.diff(record.column(column)[start:])))


def run_summary(record, ev, horizon_steps):
    return {
        "status": record.status,
        "final_jc1": tail_mean(record, "jc1"),
        "final_jc2": tail_mean(record, "jc2"),
        "final_length": tail_mean(record, "episode_length") / horizon_steps,
        "jc1_diff_var": diff_variance(record),
        "eval": ev,
    }


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--config", default=str(ROOT / "configs" / "biped_desk.yaml"))
    p.add_argument("--out", default=str(ROOT / "results" / "biped"))
    p.add_argument("--grid", default="40,60,80,110,150")
    p.add_argument("--kappa", default="0.01,10", help="small,large IPO barrier coefficients")
    p.add_argument("--budget", type=int, help="iterations per run (default from config)")
    args = p.parse_args(argv)
    base = load_config(args.config)
    if args.budget:
        base = replace(base, iterations=args.budget)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    horizon = base.horizon_steps
    gamma_c = base.constraints[0].gamma_c
    criterion = episode_length_criterion(horizon, 0.9, window=10)
    result = {"config": str(args.config), "iterations": base.iterations,
              "horizon_steps": horizon, "window_steps": base.steps_per_env, "gamma_c": gamma_c}

    # 1. threshold search with PPO-Lagrangian
    grid = [float(g) for g in args.grid.split(",")]
    sweep, runs = [], {}
    for b in grid:
        cfg = with_energy_threshold(base.with_algorithm("ppolag"), b)
        rec, ev = run_cached(f"ppolag_b{b:g}", cfg, out)
        passed, detail = criterion(rec, b)
        sweep.append(SweepRow(b, bool(passed), detail))
        runs[f"ppolag_b{b:g}"] = run_summary(rec, ev, horizon)
        print(f"b={b:g}: passed={passed} {detail} eval={ev}", flush=True)
    chosen = next((r.threshold for r in sweep if r.passed), None)
    result["sweep"] = [{"threshold": r.threshold, "passed": r.passed, **r.detail} for r in sweep]
    result["chosen"] = chosen
    b_star = chosen if chosen is not None else grid[-1]
    result["comparison_threshold"] = b_star
    result["power_threshold"] = power_equivalent(b_star, gamma_c, base.steps_per_env)

    # 2. penalty-reward PPO baseline
    for mu in MU_GRID:
        opt = replace(base.optimizer, energy_penalty_scale=mu, mirror_loss_weight=0.1)
        cfg = replace(base, optimizer=opt).with_algorithm("ppo")
        rec, ev = run_cached(f"penalty_mu{mu:g}", cfg, out)
        passed, detail = criterion(rec, 0.0)
        runs[f"penalty_mu{mu:g}"] = dict(run_summary(rec, ev, horizon), mu=mu,
                                         stable=bool(passed), **detail)
        print(f"mu={mu:g}: stable={passed} {detail} eval={ev}", flush=True)

    # 3. IPO with a small and a large barrier coefficient
    small, large = (float(k) for k in args.kappa.split(","))
    for tag, k in (("small", small), ("large", large)):
        opt = replace(base.optimizer, kappa_ipo=(k, k))
        cfg = with_energy_threshold(replace(base, optimizer=opt).with_algorithm("ipo"), b_star)
        rec, ev = run_cached(f"ipo_kappa{k:g}", cfg, out)
        runs[f"ipo_{tag}"] = dict(run_summary(rec, ev, horizon), kappa=k)

    # 4. CRPO
    cfg = with_energy_threshold(base.with_algorithm("crpo"), b_star)
    rec, ev = run_cached(f"crpo_b{b_star:g}", cfg, out)
    runs["crpo"] = run_summary(rec, ev, horizon)
    runs["eco"] = runs[f"ppolag_b{b_star:g}"]

    result["runs"] = runs
    (out / "trends.json").write_text(json.dumps(result, indent=1, sort_keys=True))
    print(json.dumps({"chosen": chosen, "power_threshold": result["power_threshold"],
                      "eco_eval_power": runs["eco"]["eval"]["mean_power"] if runs["eco"]["eval"]
                      else None}))
    return 0


if __name__ == "__main__":
    sys.exit(main())
