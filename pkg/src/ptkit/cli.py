"""Command-line front end: adapt, run, theory, logz.

Every subcommand requires an explicit seed (no wall-clock seeding), writes its
artifacts into --out, and echoes the fully resolved configuration into
summary.json for provenance.  Exit codes: 0 success, 2 configuration error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

import numpy as np

from .adapt import adapt_schedule
from .core import Engine
from .errors import ConfigError, NumericalError
from .estimators import log_partition_ratio
from .exploration import ExplorationSpec
from .io import ensure_dir, write_csv, write_json
from .models import make_model
from .oracles import (
    ELEChainSpec,
    expected_round_trip,
    round_trip_rate_formula,
    simulate_ele_index,
    simulate_pdmp,
)
from .rng import StreamFamily
from .schedule import AnnealingSchedule

__all__ = ["main", "cmd_adapt", "cmd_run", "cmd_theory", "cmd_logz"]


@dataclass
class RunConfig:
    """Resolved options of one subcommand invocation."""

    command: str
    model: str | None = None
    scheme: str = "deo"
    chains: int | None = None
    cores: int | None = None
    scans: int = 1000
    tune: int = 1024
    nexpl: int = 1
    seed: int | None = None
    out: str = "."
    trace_index: bool = False
    schedule_file: str | None = None
    threads: int = 1
    swap_prob: str | None = None
    pdmp_rate: float | None = None
    pdmp_horizon: float = 1000.0
    extra: dict = field(default_factory=dict)

    def validate(self):
        if self.seed is None:
            raise ConfigError("--seed is required; wall-clock seeding is not supported")
        for name in ("scans", "tune", "nexpl", "threads"):
            if getattr(self, name) < 1:
                raise ConfigError(f"--{name} must be positive")
        if self.scheme not in ("deo", "seo"):
            raise ConfigError("--scheme must be deo or seo")

    def to_dict(self) -> dict:
        out = {
            "command": self.command,
            "model": self.model,
            "scheme": self.scheme,
            "chains": self.chains,
            "cores": self.cores,
            "scans": self.scans,
            "tune": self.tune,
            "nexpl": self.nexpl,
            "seed": self.seed,
            "out": self.out,
            "trace_index": self.trace_index,
            "schedule_file": self.schedule_file,
            "threads": self.threads,
        }
        if self.swap_prob is not None:
            out["swap_prob"] = self.swap_prob
        if self.pdmp_rate is not None:
            out["pdmp_rate"] = self.pdmp_rate
            out["pdmp_horizon"] = self.pdmp_horizon
        out.update(self.extra)
        return out


def _load_schedule(path: str) -> AnnealingSchedule:
    try:
        values = [float(line) for line in open(path) if line.strip()]
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read schedule file {path!r}: {exc}") from exc
    return AnnealingSchedule(values)


def _exploration(config: RunConfig, model) -> ExplorationSpec:
    spec = model.default_exploration()
    spec.n_expl = config.nexpl
    return spec


def _write_run_outputs(config: RunConfig, model, result):
    out = config.out
    ensure_dir(out)
    rows = []
    for scan, state in enumerate(result.target_samples, start=1):
        rows.append([scan] + model.state_to_row(state))
    width = len(rows[0]) - 1 if rows else 1
    write_csv(f"{out}/samples.csv",
              ["scan"] + [f"x{i}" for i in range(width)], rows)

    trip_rows = []
    counters = {}
    for machine, start, end in result.ledger.trip_records:
        k = counters.get(machine, 0)
        counters[machine] = k + 1
        trip_rows.append([machine, k, start, end])
    write_csv(f"{out}/trips.csv",
              ["machine", "trip_index", "start_scan", "end_scan"], trip_rows)

    if config.trace_index:
        trace_rows = []
        for scan, index, direction in result.index_trace:
            for j in range(index.size):
                trace_rows.append([scan, j, int(index[j]), int(direction[j])])
        write_csv(f"{out}/index_trace.csv",
                  ["scan", "machine", "index", "epsilon"], trace_rows)

    write_json(f"{out}/summary.json", {
        "config": config.to_dict(),
        "model_params": model.params(),
        "schedule": list(result.schedule.betas),
        "rejection_rates": list(result.rejection_rates()),
        "observed_tau": result.round_trip_rate,
        "total_trips": result.ledger.total_trips,
        "total_restarts": result.ledger.total_restarts,
        "logZ": log_partition_ratio(result.energy, result.schedule),
    })


def cmd_run(config: RunConfig) -> int:
    config.validate()
    if config.model is None:
        raise ConfigError("--model is required")
    model = make_model(config.model)
    if config.schedule_file is not None:
        schedule = _load_schedule(config.schedule_file)
    else:
        if config.chains is None:
            raise ConfigError("--chains or --schedule is required for run")
        schedule = AnnealingSchedule.uniform(config.chains)
    engine = Engine(
        model, schedule, config.scheme, StreamFamily(config.seed),
        exploration=_exploration(config, model), threads=config.threads,
    )
    result = engine.run(config.scans, collect_samples=True,
                        trace_index=config.trace_index)
    _write_run_outputs(config, model, result)
    return 0


def _adapt(config: RunConfig):
    if config.model is None:
        raise ConfigError("--model is required")
    if config.cores is None:
        raise ConfigError("--cores is required for adaptation")
    model = make_model(config.model)
    result = adapt_schedule(
        model, config.cores, config.tune, config.scans,
        scheme=config.scheme, seed=config.seed,
        exploration=_exploration(config, model), threads=config.threads,
    )
    return model, result


def cmd_adapt(config: RunConfig) -> int:
    config.validate()
    model, result = _adapt(config)
    out = config.out
    ensure_dir(out)

    sched_rows = []
    for diag in result.rounds:
        for chain, beta in enumerate(diag.schedule):
            sched_rows.append([diag.round_index, chain, float(beta)])
    final_round = result.rounds[-1].round_index + 1
    for chain, beta in enumerate(result.final_schedule):
        sched_rows.append([final_round, chain, float(beta)])
    write_csv(f"{out}/schedule.csv", ["round", "chain", "beta"], sched_rows)

    rej_rows = []
    for diag in result.rounds:
        betas = diag.schedule.betas
        for pair, rate in enumerate(diag.rejection_rates):
            rej_rows.append(
                [diag.round_index, pair, float(betas[pair]), float(betas[pair + 1]), float(rate)]
            )
    write_csv(f"{out}/rejections.csv",
              ["round", "pair", "beta_lo", "beta_hi", "rhat"], rej_rows)

    grid = np.linspace(0.0, 1.0, 1001)
    write_csv(f"{out}/barrier.csv",
              ["beta", "lambda_hat", "Lambda_hat"],
              zip(grid, result.barrier.derivative(grid), result.barrier.value(grid)))

    analytic = {}
    if model.has_analytic_barrier:
        # sampled closed forms ride along so plots can overlay them without
        # importing the engine
        analytic = {
            "analytic_lambda_grid": list(np.asarray(model.local_barrier(grid))),
            "analytic_Lambda_grid": list(np.asarray(model.cumulative_barrier(grid))),
        }

    summary = {
        "config": config.to_dict(),
        "model_params": model.params(),
        "Lambda_hat": result.barrier_total,
        "tau_bound": result.plan.tau_bound,
        "N_star": result.plan.n_star,
        "k_star": result.plan.k_star,
        "observed_tau": result.observed_round_trip_rate,
        "logZ": result.log_partition(),
        "analytic_barrier": model.has_analytic_barrier,
        **analytic,
        "rounds": [
            {
                "round": d.round_index,
                "n_scans": d.n_scans,
                "Lambda_hat": d.barrier_total,
                "mean_rejection": d.mean_rejection,
                "std_rejection": d.rejection_std,
                "logZ": d.log_partition,
            }
            for d in result.rounds
        ],
    }
    write_json(f"{out}/summary.json", summary)
    return 0


def cmd_logz(config: RunConfig) -> int:
    config.validate()
    model, result = _adapt(config)
    out = config.out
    ensure_dir(out)
    write_csv(f"{out}/logz.csv", ["round", "estimate"],
              [[d.round_index, d.log_partition] for d in result.rounds])
    write_json(f"{out}/summary.json", {
        "config": config.to_dict(),
        "model_params": model.params(),
        "Lambda_hat": result.barrier_total,
        "logZ": result.log_partition(),
        "logZ_true": (None if model.log_partition(1.0) is None
                      else float(model.log_partition(1.0))),
    })
    return 0


def cmd_theory(config: RunConfig) -> int:
    config.validate()
    out = config.out
    ensure_dir(out)
    rows = []
    if config.swap_prob is not None:
        if config.chains is None:
            raise ConfigError("--chains is required with --swap-prob")
        parts = [float(v) for v in config.swap_prob.split(",")]
        s = np.full(config.chains, parts[0]) if len(parts) == 1 else np.asarray(parts)
        for scheme in ("deo", "seo"):
            spec = ELEChainSpec(s, scheme)
            sim = simulate_ele_index(spec, config.scans, seed=config.seed)
            rows.append(["expected_trip", scheme, expected_round_trip(spec),
                         sim.mean_trip_length])
            rows.append(["tau", scheme, round_trip_rate_formula(spec),
                         sim.round_trip_rate])
    if config.pdmp_rate is not None:
        rate = float(config.pdmp_rate)
        path = simulate_pdmp(lambda w: rate, rate, config.pdmp_horizon,
                             seed=config.seed)
        gaps = path.interflip_times()
        rows.append(["pdmp_interflip_mean", "deo_limit", 1.0 / rate,
                     float(gaps.mean()) if gaps.size else float("nan")])
    if not rows:
        raise ConfigError("theory needs --swap-prob and/or --pdmp-rate")
    write_csv(f"{out}/theory.csv",
              ["quantity", "scheme", "theory", "simulated"], rows)
    write_json(f"{out}/summary.json", {"config": config.to_dict()})
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ptkit",
        description="Parallel tempering engine, schedule optimizer, and theory checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in [
        ("adapt", "tune the annealing schedule, then run planned sampling copies"),
        ("run", "run a fixed-schedule chain and emit samples and trip records"),
        ("theory", "compare closed-form trip statistics with simulation"),
        ("logz", "track the log normalizing-constant estimate across rounds"),
    ]:
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--model", help="model spec, e.g. gaussian:d=1,sigma0=1,sigma=0.5")
        p.add_argument("--scheme", default="deo", choices=["deo", "seo"])
        p.add_argument("--chains", type=int, help="number of schedule intervals N")
        p.add_argument("--cores", type=int, help="total core budget for adaptation")
        p.add_argument("--scans", type=int, default=1000,
                       help="sampling scans (or simulated scans for theory)")
        p.add_argument("--tune", type=int, default=1024, help="tuning scan budget")
        p.add_argument("--nexpl", type=int, default=1,
                       help="exploration kernel applications per scan")
        p.add_argument("--seed", type=int, required=False)
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--trace-index", action="store_true",
                       help="emit index_trace.csv (run only)")
        p.add_argument("--schedule", dest="schedule_file",
                       help="file with one annealing parameter per line")
        p.add_argument("--threads", type=int, default=1,
                       help="worker threads for exploration (results identical)")
        p.add_argument("--swap-prob", dest="swap_prob",
                       help="per-pair swap probability (scalar or comma list; theory)")
        p.add_argument("--pdmp-rate", dest="pdmp_rate", type=float,
                       help="constant direction-flip rate (theory)")
        p.add_argument("--pdmp-horizon", dest="pdmp_horizon", type=float,
                       default=1000.0)
    return parser


_COMMANDS = {"adapt": cmd_adapt, "run": cmd_run, "theory": cmd_theory, "logz": cmd_logz}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    config = RunConfig(
        command=args.command, model=args.model, scheme=args.scheme,
        chains=args.chains, cores=args.cores, scans=args.scans, tune=args.tune,
        nexpl=args.nexpl, seed=args.seed, out=args.out,
        trace_index=args.trace_index, schedule_file=args.schedule_file,
        threads=args.threads, swap_prob=args.swap_prob,
        pdmp_rate=args.pdmp_rate, pdmp_horizon=args.pdmp_horizon,
    )
    try:
        return _COMMANDS[args.command](config)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
