"""Command-line entry point.

Subcommands: ``simulate``, ``verify``, ``noncollapse``, ``sweep-mu0``.
Exit codes: 0 success, 1 config error, 2 runtime failure, 3 verification
failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import identities
from .config import ExperimentConfig, config_hash, parse_config
from .curves import (
    construct_curve,
    curvature_from_support,
    embed_support,
    isoperimetric_ratio,
)
from .errors import ConfigInvalid, ConvexityLost, NonFinite, PcflowError
from .flow import (
    FlowConfig,
    FlowState,
    estimated_extinction_time,
    run_flow,
)
from .noncollapse import mu_report
from .reporting import (
    write_json,
    write_mu0_csv,
    write_snapshot_svg,
    write_support_curve_csv,
    write_timeseries_csv,
)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUNTIME = 2
EXIT_VERIFY = 3


def _load(args) -> tuple[ExperimentConfig, Path, str]:
    text = Path(args.config).read_text()
    cfg = parse_config(text)
    if args.seed is not None:
        cfg = ExperimentConfig(**{**cfg.to_dict(), "seed": args.seed})
    outdir = Path(args.out or cfg.outputs or ".")
    outdir.mkdir(parents=True, exist_ok=True)
    return cfg, outdir, config_hash(cfg)


def _flow_setup(cfg: ExperimentConfig):
    curve = construct_curve(cfg.initial_curve, cfg.n)
    t_end = None
    if cfg.horizon is not None:
        key, val = next(iter(cfg.horizon.items()))
        t_end = (float(val) if key == "t_end"
                 else float(val) * estimated_extinction_time(curve, cfg.p))
    fc = FlowConfig(p=cfg.p, sigma=cfg.sigma, t_end=t_end,
                    monitor_every=cfg.monitor_every)
    return curve, fc


def cmd_simulate(cfg: ExperimentConfig, outdir: Path, cfg_hash: str) -> int:
    curve, fc = _flow_setup(cfg)
    rows: list[dict] = []
    counter = {"k": 0}

    def record(state: FlowState) -> None:
        k = counter["k"]
        counter["k"] = k + 1
        c = state.curve
        kappa = curvature_from_support(c)
        _, g = embed_support(c)
        rep = mu_report(g)
        rows.append({
            "t": state.t, "dt": state.last_dt, "area": g.area,
            "length": g.length, "isoperimetric": isoperimetric_ratio(g),
            "kappa_min": float(np.min(kappa)), "kappa_max": float(np.max(kappa)),
            "mu": rep.mu,
        })
        write_support_curve_csv(outdir / f"curve_{k}.csv", c, cfg_hash)
        write_snapshot_svg(g, outdir / f"curve_{k}.svg", report=rep,
                           cfg_hash=cfg_hash)
        write_json(outdir / f"noncollapse_{k}.json", rep.to_dict(), cfg_hash)

    state = FlowState(t=0.0, curve=curve)
    record(state)
    traj = run_flow(state, fc, monitors=[record])
    final = traj.snapshots[-1]
    if not rows or rows[-1]["t"] != final.t:
        record(final)
    write_timeseries_csv(outdir / "timeseries.csv", rows, cfg_hash)
    write_json(outdir / "summary.json", {
        "terminal_reason": traj.terminal_reason,
        "aborted": traj.aborted,
        "t_final": final.t,
        "steps": final.steps,
        "mu_final": rows[-1]["mu"],
    }, cfg_hash)
    return EXIT_RUNTIME if traj.aborted else EXIT_OK


def cmd_noncollapse(cfg: ExperimentConfig, outdir: Path, cfg_hash: str) -> int:
    curve = construct_curve(cfg.initial_curve, cfg.n)
    _, g = embed_support(curve)
    rep = mu_report(g, include_oracle=True)
    write_json(outdir / "noncollapse.json", rep.to_dict(), cfg_hash)
    write_snapshot_svg(g, outdir / "curve.svg", report=rep, cfg_hash=cfg_hash)
    return EXIT_OK


def cmd_verify(cfg: ExperimentConfig, outdir: Path, cfg_hash: str,
               inject_sign_error: bool = False) -> int:
    spec = cfg.initial_curve
    reports = []

    for variant in ("kappa_p", "kappa"):
        rep = identities.evolution_refinement_study(
            spec, cfg.p, variant=variant, base_n=64, levels=3,
            window_steps=30, sign_error=inject_sign_error)
        reports.append(rep.to_dict())

    rewrite_max = identities.rewrite_equivalence_sweep(1000, seed=cfg.seed)
    reports.append({
        "name": "rewrite_equivalence",
        "resolutions": [[1000, 0.0]],
        "residuals": [rewrite_max],
        "estimated_order": float("nan"),
        "pass": rewrite_max <= identities.TOLERANCES["tol_rewrite"],
    })

    trig_res = []
    for n in (cfg.n, 2 * cfg.n):
        trig_res.append(
            identities.trig_refined_profile(construct_curve(spec, n)))
    trig_ok = (trig_res[0] <= identities.TOLERANCES["ceil_trig"]
               and (trig_res[0] < 1e-13
                    or trig_res[0] / max(trig_res[1], 1e-300)
                    >= identities.TOLERANCES["factor_trig"]))
    reports.append({
        "name": "trig_identity",
        "resolutions": [[cfg.n, 0.0], [2 * cfg.n, 0.0]],
        "residuals": trig_res,
        "estimated_order": (float(np.log2(trig_res[0] / trig_res[1]))
                            if trig_res[1] > 0 else float("inf")),
        "pass": bool(trig_ok),
    })

    suite_pass = all(r["pass"] for r in reports)
    write_json(outdir / "verify.json", {"reports": reports, "pass": suite_pass},
               cfg_hash)
    return EXIT_OK if suite_pass else EXIT_VERIFY


def cmd_sweep_mu0(cfg: ExperimentConfig, outdir: Path, cfg_hash: str) -> int:
    if cfg.sweep is None:
        raise ConfigInvalid("sweep: section required for sweep-mu0")
    rows = identities.mu0_sweep(
        cfg.sweep["p_values"], cfg.sweep["family"], cfg.sweep["grid"],
        n=int(cfg.sweep.get("n", 128)),
        horizon_frac=float(cfg.sweep.get("horizon_frac", 0.5)),
        sigma=cfg.sigma,
    )
    write_mu0_csv(outdir / "mu0_sweep.csv", rows, cfg_hash)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pcflow",
        description="Power curvature flow lab: simulation, non-collapsing "
                    "monitoring, and identity verification.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("simulate", "verify", "noncollapse", "sweep-mu0"):
        sp = sub.add_parser(name)
        sp.add_argument("--config", required=True, help="JSON config path")
        sp.add_argument("--out", default=None, help="output directory")
        sp.add_argument("--seed", type=int, default=None,
                        help="override the config seed")
        if name == "verify":
            sp.add_argument("--inject-sign-error", action="store_true",
                            help="harness self-test: run the flow with the "
                                 "wrong sign and expect failure")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg, outdir, cfg_hash = _load(args)
    except (ConfigInvalid, ConvexityLost, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        if args.command == "simulate":
            return cmd_simulate(cfg, outdir, cfg_hash)
        if args.command == "noncollapse":
            return cmd_noncollapse(cfg, outdir, cfg_hash)
        if args.command == "verify":
            return cmd_verify(cfg, outdir, cfg_hash,
                              inject_sign_error=args.inject_sign_error)
        if args.command == "sweep-mu0":
            return cmd_sweep_mu0(cfg, outdir, cfg_hash)
        raise ConfigInvalid(f"unknown command {args.command}")
    except ConfigInvalid as exc:
        # Construction-stage failures (including non-convex initial data)
        # count as config errors.
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConvexityLost as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NonFinite, PcflowError, OSError) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
