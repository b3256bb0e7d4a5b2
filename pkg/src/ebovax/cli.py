"""Command-line front end.

Subcommands: simulate, solve, sweep, r0, compare. Configuration comes from
an optional flat key = value file (--config) overridden by flags. Exit
codes: 0 success, 2 configuration error, 3 solver non-convergence, 4 I/O
error.
"""

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import config as config_mod
from . import model, ocp, output, scenarios
from .errors import ConfigError, ConvergenceError, DomainError, GridMismatchError

_COMMON_FLAGS = ("scenario", "theta", "tf", "w1", "w2", "steps", "out_dir", "observed")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ebovax",
        description="Ebola transmission model with optimal vaccination control.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    specs = (
        ("simulate", "integrate the model without control"),
        ("solve", "solve one optimal-control problem"),
        ("sweep", "solve a list of endpoint problems (theta or w2 sweep)"),
        ("r0", "print both reproduction-number computations"),
        ("compare", "residuals of cumulative confirmed cases vs observed data"),
    )
    for name, help_text in specs:
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--scenario", help="preset name, e.g. unlimited or endpoint-10000")
        cmd.add_argument("--config", help="flat key = value configuration file")
        cmd.add_argument("--theta", help="constraint level (comma list for sweep)")
        cmd.add_argument("--tf", help="final time in days")
        cmd.add_argument("--w1", help="weight on infectious count")
        cmd.add_argument("--w2", help="weight on control effort (comma list for sweep)")
        cmd.add_argument("--steps", help="number of mesh intervals")
        cmd.add_argument("--out-dir", dest="out_dir", help="output directory (default .)")
        cmd.add_argument("--observed", help="observed-data CSV of day,cumulative_cases")
    return parser


def _out_dir(resolved):
    path = Path(resolved.out_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _write_run(resolved, label, summary, iterations, converged,
               states=None, control=None, solution=None):
    out = _out_dir(resolved)
    traj_path = out / f"{label}_trajectory.csv"
    if solution is not None:
        output.write_solution_csv(traj_path, solution)
        entries = output.summary_entries(
            summary, resolved.params, iterations, converged,
            theta=resolved.theta, k=solution.k, psi=solution.psi,
        )
    else:
        output.write_states_csv(traj_path, resolved.grid, states, control)
        entries = output.summary_entries(summary, resolved.params, iterations, converged)
    summary_path = out / f"{label}_summary.csv"
    output.write_summary(summary_path, entries)
    return traj_path, summary_path


def _solve_resolved(resolved):
    problem = ocp.OcpProblem(
        params=resolved.params,
        grid=resolved.grid,
        x0=resolved.x0,
        variant=resolved.kind,
        theta=resolved.theta,
    )
    if resolved.kind == ocp.ENDPOINT:
        return ocp.solve_endpoint(problem, options=resolved.options)
    if resolved.kind == ocp.MIXED:
        return ocp.solve_mixed(problem, options=resolved.options)
    return ocp.fbsm_solve(problem, options=resolved.options)


def _run_simulate(resolved):
    grid = resolved.grid
    traj = scenarios.simulate_uncontrolled(grid, resolved.params, resolved.x0)
    control = np.zeros(grid.n_steps + 1)
    cost_value = ocp.cost(traj, control, resolved.params.w1, resolved.params.w2)
    summary = scenarios.summarize_states(grid, traj.values, control, cost_value, resolved.params)
    traj_path, summary_path = _write_run(
        resolved, resolved.label, summary, iterations=0, converged=True,
        states=traj.values, control=control,
    )
    print(f"wrote {traj_path} and {summary_path}")
    return 0


def _run_solve(resolved):
    if resolved.kind == scenarios.SIMULATE:
        raise ConfigError(
            "solve needs a control problem; pass --scenario (e.g. unlimited) or variant",
            key="variant",
        )
    solution = _solve_resolved(resolved)
    summary = scenarios.summary_metrics(solution)
    traj_path, summary_path = _write_run(
        resolved, resolved.label, summary,
        iterations=solution.iterations, converged=solution.converged,
        solution=solution,
    )
    print(f"wrote {traj_path} and {summary_path}")
    print(f"cost {summary.cost:.6g}, total vaccines {summary.total_vaccines:.6g}, "
          f"iterations {solution.iterations}")
    return 0


def _run_sweep(cfg, theta_values, w2_values):
    if theta_values and w2_values:
        raise ConfigError("sweep over either theta or w2, not both", key="theta")
    if w2_values:
        label_col = "w2"
        values = w2_values
    else:
        label_col = "theta"
        values = theta_values or list(scenarios.ENDPOINT_SWEEP_THETAS)

    rows = []
    out_paths = []
    resolved = None
    for value in values:
        run_cfg = replace(cfg, variant=ocp.ENDPOINT)
        if label_col == "theta":
            run_cfg = replace(run_cfg, theta=value)
        else:
            run_cfg = replace(run_cfg, w2=value)
            if run_cfg.theta is None and run_cfg.scenario is None:
                run_cfg = replace(run_cfg, theta=10000.0)
        resolved = config_mod.resolve(run_cfg)
        solution = _solve_resolved(resolved)
        summary = scenarios.summary_metrics(solution)
        label = f"{label_col}-{value:g}"
        _write_run(resolved, label, summary,
                   iterations=solution.iterations, converged=solution.converged,
                   solution=solution)
        rows.append((value, summary.cost, summary.days_at_max_u,
                     summary.final_i, summary.total_vaccines))
        out_paths.append(label)

    sweep_path = _out_dir(resolved) / "sweep.csv"
    output.write_sweep_csv(sweep_path, label_col, rows)
    print(f"wrote {sweep_path} ({len(rows)} runs: {', '.join(out_paths)})")
    return 0


def _run_r0(resolved):
    closed = model.r0_closed(resolved.params)
    spectral = model.ngm_spectral(resolved.params)
    a11 = model.ngm_coefficients(resolved.params).a11
    discrepancy = model.r0_discrepancy(resolved.params)
    print(f"r0_closed,{output.fmt(closed)}")
    print(f"r0_spectral,{output.fmt(spectral)}")
    print(f"a11_tabulated,{output.fmt(a11)}")
    print(f"discrepancy,{output.fmt(discrepancy)}")
    if discrepancy > 1e-6:
        print("note,tabulated a11 disagrees with both computed values; r0_closed is canonical")
    return 0


def _run_compare(resolved):
    if resolved.observed is None:
        raise ConfigError("compare needs --observed (CSV of day,cumulative_cases)", key="observed")
    days, cases = output.read_observed(resolved.observed)
    if resolved.kind == scenarios.SIMULATE:
        states = scenarios.simulate_uncontrolled(resolved.grid, resolved.params, resolved.x0)
    else:
        states = _solve_resolved(resolved).states
    report = output.compare_observed(states, resolved.params, days, cases)
    print("day,observed,computed,residual")
    for day, obs, comp, res in zip(report.days, report.observed, report.computed, report.residuals):
        print(f"{output.fmt(day)},{output.fmt(obs)},{output.fmt(comp)},{output.fmt(res)}")
    print(f"l2,{output.fmt(report.l2)}")
    print(f"mae,{output.fmt(report.mae)}")
    return 0


def run(command, cfg, theta_values=None, w2_values=None):
    """Execute one subcommand on a parsed RunConfig; returns exit code 0."""
    if command == "sweep":
        return _run_sweep(cfg, theta_values, w2_values)
    resolved = config_mod.resolve(cfg)
    if command == "simulate":
        resolved = replace(resolved, kind=scenarios.SIMULATE, theta=None)
        return _run_simulate(resolved)
    if command == "solve":
        return _run_solve(resolved)
    if command == "r0":
        return _run_r0(resolved)
    if command == "compare":
        return _run_compare(resolved)
    raise ConfigError(f"unknown command '{command}'")


def _split_list(text, key):
    values = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            values.append(float(part))
        except ValueError:
            raise ConfigError(f"key '{key}' needs numbers, got {part!r}", key=key) from None
    if not values:
        raise ConfigError(f"key '{key}' needs at least one number", key=key)
    return values


def _main(argv):
    args = build_parser().parse_args(argv)
    file_text = Path(args.config).read_text(encoding="utf-8") if args.config else None

    overrides = {key: getattr(args, key) for key in _COMMON_FLAGS}
    theta_values = None
    w2_values = None
    if args.command == "sweep":
        if overrides.get("theta") is not None:
            theta_values = _split_list(overrides.pop("theta"), "theta")
            if len(theta_values) == 1:
                overrides["theta"] = repr(theta_values[0])
                theta_values = None if args.w2 is not None else theta_values
        if overrides.get("w2") is not None:
            w2_list = _split_list(overrides.pop("w2"), "w2")
            if len(w2_list) > 1:
                w2_values = w2_list
            else:
                overrides["w2"] = repr(w2_list[0])

    cfg = config_mod.parse_config(file_text, overrides)
    return run(args.command, cfg, theta_values=theta_values, w2_values=w2_values)


def main(argv=None):
    try:
        return _main(argv)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, GridMismatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"solver did not converge: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
