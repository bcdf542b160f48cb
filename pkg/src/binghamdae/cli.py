"""Command-line front end.

Subcommands::

    binghamdae run CONFIG            simulate, write CSV + summary (+ SVG)
    binghamdae paper {f1,f2,small,large}
    binghamdae verify CSV [--config CONFIG]
    binghamdae converge CONFIG --dt 4e-4 2e-4 1e-4
    binghamdae compare-naive [CONFIG]
    binghamdae sweep CONFIG --grid gamma=0.5,1,2 --grid x0=0.1,0.5

Exit codes: 0 success, 1 usage/parse, 2 validation, 3 numerical failure,
4 verification failure. Errors print one line ``error: <category>: <message>``
on stderr. Output goes to ``--out``, else ``$BINGHAMDAE_OUTDIR``, else the
current directory.
"""

from __future__ import annotations

import argparse
import itertools
import os
import sys
from pathlib import Path

from . import config as cfg
from .constitutive import Bingham, ConstitutiveError
from .filippov import check_inclusion
from .formats import (
    TrajectoryFormatError,
    format_report,
    read_trajectory_csv,
    write_trajectory_csv,
)
from .plotting import write_trajectory_svgs
from .scenarios import ScenarioId, divergence_report, naive_signum_simulate, summarize
from .stepper import NumericalError, convergence_study, residual_check, simulate
from .system import InconsistentInitError

OUTDIR_ENV = "BINGHAMDAE_OUTDIR"

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_NUMERICAL, EXIT_VERIFY = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, category, message, code):
        super().__init__(message)
        self.category = category
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", message, EXIT_USAGE)


def _outdir(args) -> Path:
    out = Path(args.out or os.environ.get(OUTDIR_ENV) or ".")
    out.mkdir(parents=True, exist_ok=True)
    return out


def _resolve(outdir: Path, configured, default: str) -> Path:
    path = Path(configured) if configured else Path(default)
    return path if path.is_absolute() else outdir / path


def _load(path) -> cfg.RunConfig:
    try:
        return cfg.load_config(path)
    except OSError as exc:
        raise CliError("io", str(exc), EXIT_USAGE) from None


def _certify(traj, forcing=None):
    report = residual_check(traj, forcing)
    items = {
        "max_momentum_residual": report.max_momentum_residual,
        "max_spring_residual": report.max_spring_residual,
        "max_constitutive_residual": report.max_constitutive_residual,
    }
    inclusion = None
    if isinstance(traj.law, Bingham):
        inclusion = check_inclusion(traj, forcing)
        items["inclusion_tol"] = inclusion.tol
        items["inclusion_max_distance"] = inclusion.max_distance
        items["inclusion_violations"] = len(inclusion.violations)
    return report, inclusion, items


def _simulate_and_write(conf: cfg.RunConfig, outdir: Path, stem: str, plots: bool):
    traj = simulate(conf.params, conf.law, conf.forcing, conf.initial_state(),
                    conf.dt, conf.t_end, max_steps=conf.max_steps)
    csv_path = _resolve(outdir, conf.csv_path, f"{stem}.csv")
    summary_path = _resolve(outdir, conf.summary_path, f"{stem}_summary.txt")
    write_trajectory_csv(traj, csv_path)
    summary = summarize(traj)
    _, _, checks = _certify(traj, conf.forcing)
    items = {"csv": str(csv_path), "n_nodes": len(traj.t), "dt": traj.dt}
    items.update(summary.as_dict())
    items.update(checks)
    summary_path.parent.mkdir(parents=True, exist_ok=True)
    summary_path.write_text(format_report(items))
    if plots:
        write_trajectory_svgs(traj, _resolve(outdir, conf.svg_dir, "plots"), stem)
    return traj, summary, items


def cmd_run(args) -> int:
    conf = _load(args.config)
    _, _, items = _simulate_and_write(conf, _outdir(args), args.stem, not args.no_plots)
    sys.stdout.write(format_report(items))
    return EXIT_OK


def cmd_paper(args) -> int:
    conf = cfg.paper_config(args.case)
    overrides = {}
    if args.t_end is not None:
        overrides["t_end"] = args.t_end
    if args.dt is not None:
        overrides["dt"] = args.dt
    conf = conf.with_overrides(**overrides)
    stem = args.stem or f"paper_{ScenarioId(args.case).value}"
    _, _, items = _simulate_and_write(conf, _outdir(args), stem, args.plots)
    sys.stdout.write(format_report(items))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.config:
        conf = _load(args.config)
        params, law, dt = conf.params, conf.law, conf.dt
    else:
        conf = cfg.parse_config("paper_defaults = true\n")
        params, law, dt = conf.params, conf.law, None
    try:
        traj = read_trajectory_csv(args.csv, params, law, dt=dt)
    except OSError as exc:
        raise CliError("io", str(exc), EXIT_USAGE) from None
    except TrajectoryFormatError as exc:
        raise CliError("parse", str(exc), EXIT_USAGE) from None
    report, inclusion, items = _certify(traj)
    sys.stdout.write(format_report(items))
    if not report.passes(args.residual_tol):
        step = report.worst_step_index + 1 if report.worst_step_index is not None else 0
        raise CliError(
            "verification",
            f"discrete residual {report.max_residual!r} > {args.residual_tol!r} at step {step}",
            EXIT_VERIFY,
        )
    if inclusion is not None:
        if args.tol is not None:
            inclusion = check_inclusion(traj, tol=args.tol)
        if inclusion.violations:
            step, dist = inclusion.violations[0]
            raise CliError(
                "verification",
                f"{len(inclusion.violations)} inclusion violations, first at step {step} "
                f"(distance {dist!r})",
                EXIT_VERIFY,
            )
    return EXIT_OK


def cmd_converge(args) -> int:
    conf = _load(args.config)
    rows = convergence_study(conf.params, conf.law, conf.forcing, conf.initial_state(),
                             conf.t_end, sorted(args.dt, reverse=True), dt_ref=args.dt_ref)
    lines = ["dt,error,observed_order"]
    for r in rows:
        order = "" if r.observed_order is None else repr(r.observed_order)
        lines.append(f"{r.dt!r},{r.error!r},{order}")
    text = "\n".join(lines) + "\n"
    (_outdir(args) / "convergence.csv").write_text(text)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_compare_naive(args) -> int:
    if args.config:
        conf = _load(args.config)
    else:
        conf = cfg.paper_config(args.case)
    if not isinstance(conf.law, Bingham):
        raise CliError("validation", "compare-naive needs a Bingham law", EXIT_VALIDATION)
    outdir = _outdir(args)
    init = conf.initial_state()
    dae = simulate(conf.params, conf.law, conf.forcing, init, conf.dt, conf.t_end,
                   max_steps=conf.max_steps)
    naive = naive_signum_simulate(conf.params, conf.law, conf.forcing, init.x, init.v,
                                  conf.dt, conf.t_end, coulomb=conf.naive_coulomb)
    write_trajectory_csv(dae, outdir / "dae.csv")
    write_trajectory_csv(naive, outdir / "naive.csv")
    report = divergence_report(dae, naive)
    report["diverged"] = report["naive_stick_fraction"] < report["dae_stick_fraction"]
    text = format_report(report)
    (outdir / "divergence.txt").write_text(text)
    sys.stdout.write(text)
    return EXIT_OK


def _parse_grid(specs):
    grid = []
    for spec in specs:
        key, sep, values = spec.partition("=")
        key = key.strip()
        if not sep or not values.strip():
            raise CliError("usage", f"bad --grid {spec!r}, expected key=v1,v2,...", EXIT_USAGE)
        if key not in cfg.KNOWN_KEYS:
            raise CliError("parse", f"unknown grid key {key!r}", EXIT_USAGE)
        grid.append((key, [v.strip() for v in values.split(",")]))
    return grid


def cmd_sweep(args) -> int:
    try:
        template = Path(args.config).read_text()
    except OSError as exc:
        raise CliError("io", str(exc), EXIT_USAGE) from None
    base = {key: value for key, (value, _) in cfg.parse_pairs(template).items()}
    grid = _parse_grid(args.grid)
    keys = [k for k, _ in grid]
    outdir = _outdir(args)
    index = ["point," + ",".join(keys) + ",csv,max_abs_x,final_x,rest_time,stick_fraction"]
    combos = list(itertools.product(*[vals for _, vals in grid]))
    for i, combo in enumerate(combos):
        pairs = dict(base)
        pairs.update(zip(keys, combo))
        for k in ("output.csv", "output.summary", "output.svg_dir"):
            pairs.pop(k, None)
        conf = cfg.parse_config("".join(f"{k} = {v}\n" for k, v in pairs.items()))
        stem = f"sweep_{i:04d}"
        _, summary, _ = _simulate_and_write(conf, outdir, stem, plots=False)
        rest = "" if summary.rest_time is None else repr(summary.rest_time)
        index.append(
            f"{i}," + ",".join(combo) + f",{stem}.csv,{summary.max_abs_x!r},"
            f"{summary.final_state.x!r},{rest},{summary.stick_fraction!r}"
        )
    text = "\n".join(index) + "\n"
    (outdir / "sweep_index.csv").write_text(text)
    sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="binghamdae", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def with_out(sp):
        sp.add_argument("--out", help=f"output directory (default ${OUTDIR_ENV} or .)")
        return sp

    sp = with_out(sub.add_parser("run", help="simulate a configuration"))
    sp.add_argument("config")
    sp.add_argument("--stem", default="trajectory")
    sp.add_argument("--no-plots", action="store_true")
    sp.set_defaults(func=cmd_run)

    sp = with_out(sub.add_parser("paper", help="run one of the reference cases"))
    sp.add_argument("case", choices=[s.value for s in ScenarioId])
    sp.add_argument("--t-end", type=float)
    sp.add_argument("--dt", type=float)
    sp.add_argument("--stem")
    sp.add_argument("--plots", action="store_true")
    sp.set_defaults(func=cmd_paper)

    sp = sub.add_parser("verify", help="certify a trajectory CSV")
    sp.add_argument("csv")
    sp.add_argument("--config", help="system description (default: reference parameters)")
    sp.add_argument("--tol", type=float, help="inclusion tolerance (default: scaled 1e-8)")
    sp.add_argument("--residual-tol", type=float, default=1e-10)
    sp.set_defaults(func=cmd_verify)

    sp = with_out(sub.add_parser("converge", help="self-convergence table"))
    sp.add_argument("config")
    sp.add_argument("--dt", type=float, nargs="+", required=True)
    sp.add_argument("--dt-ref", type=float)
    sp.set_defaults(func=cmd_converge)

    sp = with_out(sub.add_parser("compare-naive", help="DAE stepper vs signum ODE"))
    sp.add_argument("config", nargs="?")
    sp.add_argument("--case", default="small", choices=[s.value for s in ScenarioId])
    sp.set_defaults(func=cmd_compare_naive)

    sp = with_out(sub.add_parser("sweep", help="cartesian parameter sweep"))
    sp.add_argument("config")
    sp.add_argument("--grid", action="append", required=True, metavar="KEY=V1,V2,...")
    sp.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except CliError as exc:
        err = exc
    except cfg.ConfigParseError as exc:
        err = CliError("parse", str(exc), EXIT_USAGE)
    except (cfg.ConfigValidationError, ConstitutiveError, InconsistentInitError) as exc:
        err = CliError("validation", str(exc), EXIT_VALIDATION)
    except (NumericalError, ValueError) as exc:
        err = CliError("numerical", str(exc), EXIT_NUMERICAL)
    sys.stderr.write(f"error: {err.category}: {err}\n")
    return err.code


if __name__ == "__main__":
    sys.exit(main())
