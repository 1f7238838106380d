"""Command-line front end.

Subcommands: simulate (time stepping with per-step field output),
sweep-beta (the stabilization sweep as a beta,tv table), stability
(per-mode criteria and eigenvalue reports), monotonicity (Schur-matrix
thresholds and verdicts), tv (total variation of a saved field CSV).

Exit codes: 0 success, 1 configuration or validation problems, 2 solver
failures (non-convergence, singular systems, inverted elements).
"""

import argparse
import os
import sys

from . import diagnostics, fieldio, monotonicity, stability, timestepper
from .config import build_config, parse_config_text
from .linsolve import SingularMatrix
from .mesh import ElementInversion, interval_mesh, unit_square_mesh
from .params import ModelParams, ValidationError
from .scenarios import get_scenario, scenario_names
from .timestepper import NonConvergence


def _add_config_flags(sub):
    sub.add_argument("--config", help="key = value config file")
    sub.add_argument("--rho", type=float)
    sub.add_argument("--mu", type=float)
    sub.add_argument("--lambda", type=float, dest="lam")
    sub.add_argument("--mu1", type=float)
    sub.add_argument("--mu2", type=float)
    sub.add_argument("--kappa", type=float)
    sub.add_argument("--alpha", type=float)
    sub.add_argument("--beta", type=float)
    sub.add_argument("--dt", type=float)
    sub.add_argument("--p0", type=float)
    sub.add_argument("--mesh-n", type=int, dest="mesh_n")
    sub.add_argument("--n-steps", type=int, dest="n_steps")
    sub.add_argument("--domain-mode", dest="domain_mode",
                     choices=("fixed", "moving"))
    sub.add_argument("--output-dir", dest="output_dir")
    sub.add_argument("--output-formats", dest="output_formats",
                     help="comma-separated subset of csv,vtk")
    sub.add_argument("--beta-list", dest="beta_list",
                     help="comma-separated ascending values")
    sub.add_argument("--scenario", choices=scenario_names())


_CONFIG_ATTRS = ("rho", "mu", "lam", "mu1", "mu2", "kappa", "alpha", "beta",
                 "dt", "p0", "mesh_n", "n_steps", "domain_mode", "output_dir",
                 "output_formats", "beta_list", "scenario")


def _gather_config(args):
    """File values (if any) overridden by explicitly given flags."""
    values = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            values = parse_config_text(fh.read(), origin=args.config)
    for attr in _CONFIG_ATTRS:
        flag = getattr(args, attr, None)
        if flag is None:
            continue
        if attr == "output_formats":
            flag = tuple(p.strip() for p in flag.split(",") if p.strip())
        elif attr == "beta_list":
            flag = tuple(float(p) for p in flag.split(",") if p.strip())
        values[attr] = flag
    return build_config(values)


def _fmt(value):
    return format(float(value), ".17g")


def _cmd_simulate(args):
    cfg = _gather_config(args)
    mesh = unit_square_mesh(cfg.mesh_n)
    state = timestepper.zero_state(mesh, p_value=cfg.params.p0)
    sources = get_scenario(cfg.scenario)
    os.makedirs(cfg.output_dir, exist_ok=True)

    counter = [0]

    def save(s):
        counter[0] += 1
        stem = os.path.join(cfg.output_dir, f"step_{counter[0]:04d}")
        if "csv" in cfg.output_formats:
            fieldio.write_field_csv(s, stem + ".csv")
        if "vtk" in cfg.output_formats:
            fieldio.write_field_vtk(s, stem + ".vtk")

    result = timestepper.run(state, cfg.params, sources,
                             n_steps=cfg.n_steps, observers=(save,),
                             domain_mode=cfg.domain_mode)
    iters = max(r.fixed_point_iters for r in result.reports)
    print(f"completed {cfg.n_steps} steps to t={result.state.t:g} "
          f"(max {iters} fixed-point passes); wrote {counter[0]} field sets "
          f"to {cfg.output_dir}")
    return 0


def _cmd_sweep_beta(args):
    cfg = _gather_config(args)
    if cfg.beta_list is None:
        raise ValidationError("sweep-beta needs beta_list (flag or config)")
    mesh = unit_square_mesh(cfg.mesh_n)
    rows = diagnostics.tv_sweep(cfg.params, cfg.beta_list, cfg.scenario,
                                mesh=mesh, n_steps=cfg.n_steps)
    lines = ["beta,tv"] + [f"{_fmt(b)},{_fmt(tv)}" for b, tv in rows]
    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    sys.stdout.write(text)
    return 0


def _cmd_stability(args):
    cfg = _gather_config(args)
    n = args.n
    params = cfg.params
    lines = ["kind,l,h,criterion1,criterion2,re_lambda1,re_lambda2,stable"]
    l_max = args.l_max if args.l_max is not None else n - 1
    if not 1 <= l_max <= n - 1:
        raise ValidationError(f"need 1 <= l_max <= {n - 1}, got {l_max}")
    for l in range(1, l_max + 1):
        c1, c2, ok = stability.continuous_criteria(l, params)
        lines.append(f"continuous,{l},0,{_fmt(c1)},{_fmt(c2)},,,{int(ok)}")
    for l in range(1, l_max + 1):
        rep = stability.semidiscrete_symbol(l, n, params)
        re1, re2 = rep.eig_real_parts
        lines.append(
            f"semidiscrete,{l},{_fmt(rep.h)},{_fmt(rep.criterion1)},"
            f"{_fmt(rep.criterion2)},{_fmt(re1)},{_fmt(re2)},{int(rep.stable)}")
    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    sys.stdout.write(text)
    return 0


def _cmd_monotonicity(args):
    params = ModelParams(rho=args.rho, mu1=args.mu_vis, mu2=0.0,
                         kappa=args.kappa, beta=args.beta, dt=args.dt)
    h = args.h
    if h <= 0.0:
        raise ValidationError(f"need h > 0, got {h}")
    n = max(2, round(1.0 / h))
    analysis = monotonicity.analyze_schur(interval_mesh(n), params)
    print(f"h = {_fmt(h)}")
    print(f"grid_n = {n}")
    print(f"nu = {_fmt(analysis.nu)}")
    print(f"h_critical = {_fmt(analysis.h_critical)}")
    print(f"beta_star = {_fmt(monotonicity.beta_star(h, params))}")
    print(f"h_within_critical = {int(h <= analysis.h_critical)}")
    print(f"is_A_m_matrix = {int(analysis.is_A_m_matrix)}")
    print(f"is_B_m_matrix = {int(analysis.is_B_m_matrix)}")
    return 0


def _cmd_tv(args):
    field = fieldio.grid_from_csv(args.field, column=args.column)
    print(_fmt(diagnostics.total_variation(field)))
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="poromorph",
        description="coupled tissue-growth solver and analysis tools")
    subs = parser.add_subparsers(dest="command", required=True)

    sim = subs.add_parser("simulate", help="run time steps, write fields")
    _add_config_flags(sim)
    sim.set_defaults(func=_cmd_simulate)

    sweep = subs.add_parser("sweep-beta",
                            help="one run per beta, tabulating pressure TV")
    _add_config_flags(sweep)
    sweep.add_argument("--output", help="also write the table to this file")
    sweep.set_defaults(func=_cmd_sweep_beta)

    stab = subs.add_parser("stability", help="per-mode stability report")
    _add_config_flags(stab)
    stab.add_argument("--n", type=int, default=20,
                      help="grid cells for the semidiscrete modes")
    stab.add_argument("--l-max", type=int, dest="l_max",
                      help="highest mode (default n-1)")
    stab.add_argument("--output", help="also write the table to this file")
    stab.set_defaults(func=_cmd_stability)

    mono = subs.add_parser("monotonicity",
                           help="Schur-matrix thresholds and verdicts")
    mono.add_argument("--h", type=float, required=True)
    mono.add_argument("--mu-vis", type=float, dest="mu_vis", default=2.0)
    mono.add_argument("--kappa", type=float, default=1e-2)
    mono.add_argument("--dt", type=float, default=0.1)
    mono.add_argument("--rho", type=float, default=1.0)
    mono.add_argument("--beta", type=float, default=0.0)
    mono.set_defaults(func=_cmd_monotonicity)

    tv = subs.add_parser("tv", help="total variation of a saved field CSV")
    tv.add_argument("field", help="path to a field CSV")
    tv.add_argument("--column", default="p")
    tv.set_defaults(func=_cmd_tv)
    return parser


def cli_dispatch(argv):
    """Run one CLI invocation; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        # ValidationError and ParseError both come through here
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (NonConvergence, SingularMatrix, ElementInversion) as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
