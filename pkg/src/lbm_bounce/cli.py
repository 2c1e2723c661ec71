"""Command-line entry point: ``lbm-bounce <subcommand> --config <path> [--out <dir>] [--seed <n>]``."""
from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from . import benchmarks
from .analysis.closed_forms import closed_form_table
from .analysis.expansion import expand
from .analysis.reconcile import TOL, reconcile
from .analysis.tables import coefficient_table
from .config import SUBCOMMANDS, ConfigError, RunConfig, parse_config
from .lattice import ParameterError

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3


def _fmt(v: float) -> str:
    return f"{v:.15g}"


def run_poiseuille(cfg: RunConfig, out: Path) -> list[str]:
    r = benchmarks.run_poiseuille(cfg.params, cfg.scheme, cfg.bp, nx=cfg.nx, ny=cfg.ny, dp=cfg.dp,
                                  closure=cfg.closure, tol=cfg.tol, max_steps=cfg.max_steps)
    benchmarks.write_poiseuille_csv(out / "poiseuille_profile.csv", r)
    lines = [f"steps {r.steps}", f"max relative deviation {_fmt(r.max_deviation)}",
             f"column variation {_fmt(r.column_variation)}"]
    if cfg.dp != 0.0:
        lines.append("wall positions " + " ".join(_fmt(v) for v in r.roots))
    lines.append("EXACT within 1e-8" if r.exact else "NOT EXACT within 1e-8")
    return lines


def run_accordion(cfg: RunConfig, out: Path) -> list[str]:
    ap = benchmarks.AccordionParams(**cfg.accordion)
    template = cfg.params if cfg.s3_given else cfg.params.replace(s3=cfg.params.s4)
    study = benchmarks.accordion_convergence(cfg.mesh_sizes, ap, template, cfg.scheme, cfg.bp,
                                             scaling=cfg.scaling, tol=cfg.tol, max_steps=cfg.max_steps)
    benchmarks.write_accordion_csv(out / "accordion_convergence.csv", study)
    lines = []
    for (comp, ref), s in study.rates.items():
        lines.append(f"theta {comp} {ref} {s.theta:.4f} (fit residual {s.residual:.2e})")
    return lines


def analyze_rows(cfg: RunConfig) -> list[list[str]]:
    """Engine against closed form for every coefficient of the configured scheme."""
    res = expand(cfg.scheme, cfg.params, cfg.bp)
    rows = []
    for tilde in (False, True):
        engine = coefficient_table(res, tilde)
        printed = closed_form_table(cfg.scheme, cfg.params, cfg.bp, tilde)
        for name in list(printed) + sorted(set(engine) - set(printed)):
            e = engine.get(name, 0.0)
            if name not in printed:
                rows.append([name, _fmt(e), "", "", "MISSING"])
                continue
            c = printed[name]
            verdict = "PASS" if abs(e - c) <= TOL * max(1.0, abs(c)) else "FAIL"
            # the reported delta is that of the two printed columns, so the row reads consistently
            shown = abs(float(_fmt(e)) - float(_fmt(c)))
            rows.append([name, _fmt(e), _fmt(c), _fmt(shown), verdict])
    return rows


def run_analyze(cfg: RunConfig, out: Path) -> list[str]:
    rows = analyze_rows(cfg)
    with open(out / "coefficients.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["coefficient", "engine", "closed_form", "abs_delta", "verdict"])
        w.writerows(rows)
    counts = {v: sum(r[4] == v for r in rows) for v in ("PASS", "FAIL", "MISSING")}
    return [f"{cfg.scheme}: {counts['PASS']} pass, {counts['FAIL']} fail, {counts['MISSING']} missing"]


def run_reconcile(cfg: RunConfig, out: Path) -> list[str]:
    report = reconcile(draws=cfg.draws, seed=cfg.seed, lam=cfg.params.lam)
    (out / "reconcile.csv").write_text(report.to_csv())
    c = report.counts()
    lines = [f"{c['pass']}/{c['printed']} printed coefficients pass ({100 * report.pass_fraction:.1f}%),"
             f" {c['missing']} engine terms not printed"]
    lines += [f"{e.verdict} {e.scheme} {e.name}: {e.kind}" for e in report.failures()]
    return lines


RUNNERS = {"poiseuille": run_poiseuille, "accordion": run_accordion,
           "analyze": run_analyze, "reconcile": run_reconcile}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="lbm-bounce", description=__doc__)
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--config", required=True, type=Path)
    parser.add_argument("--out", default=Path("."), type=Path)
    parser.add_argument("--seed", type=int)
    args = parser.parse_args(argv)

    try:
        text = args.config.read_text()
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        cfg = parse_config(text, args.subcommand)
        if args.seed is not None:
            if not 0 <= args.seed < 2**64:
                raise ConfigError("--seed must be an unsigned 64-bit integer")
            cfg.seed = args.seed
        if args.subcommand == "accordion":
            benchmarks.AccordionParams(**cfg.accordion)
    except (ConfigError, ParameterError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    args.out.mkdir(parents=True, exist_ok=True)
    try:
        lines = RUNNERS[args.subcommand](cfg, args.out)
    except (benchmarks.ConvergenceError, FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ParameterError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    for line in lines:
        print(line)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
