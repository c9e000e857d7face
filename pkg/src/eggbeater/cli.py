"""Batch front end.

    eggbeater SUBCOMMAND [--config FILE] [--out DIR] [--format csv|json]
              [--threads K] [--seed S] [--set section.key=value]...

Subcommands: profiles, roots, fixed-points, census, indices, actions,
gaps, bounds, density, growth, validate.

Every subcommand writes its table atomically (CSV and/or JSON mirrors of
the same rows); the report paths for profiles, gaps, and bounds also
render figures next to the delimited output.  Identical configs and
seeds give byte-identical CSV/JSON regardless of thread count.  Exit
codes: 0 success, 1 validation failure, 2 numerical failure, 3 config
error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from . import __version__
from .actions import action_closed, action_exact, action_gap
from .bounds import (gap_sweep_and_fit, hofer_norm_bound, hofer_power_bound,
                     nondegeneracy_check)
from .config import RunConfig, load_config
from .errors import ConfigError, EggbeaterError, WordSyntaxError
from .orbits import (HomotopyClassSpec, SignPattern, TargetBox, census,
                     defect, density_experiment, growth_count,
                     solve_fixed_point, solve_profile_root, verify_expansion)
from .profiles import eval_h, eval_rho, profile_for
from .sympath import cz_index_closed, cz_index_pipeline
from .words import PowerCase, parse_word, power_word, to_even_form

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2
EXIT_CONFIG = 3


def _fmt(x) -> str:
    """Stable scalar formatting: repr for floats, plain for ints/strings."""
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def _vec(v) -> str:
    return " ".join(repr(float(c)) for c in np.atleast_1d(v))


def _signs(p: SignPattern) -> str:
    def s(t):
        return "".join("+" if v > 0 else "-" for v in t)
    return f"{s(p.sigma)}/{s(p.xi)}"


def _class_str(cls: HomotopyClassSpec) -> str:
    return (",".join(str(a) for a in cls.alphas) + ";"
            + ",".join(str(b) for b in cls.betas))


def _write_atomic(path: Path, data: bytes) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class Report:
    """Collects rows per table and writes the selected formats."""

    def __init__(self, cfg: RunConfig, out_dir: Path):
        self.cfg = cfg
        self.out_dir = out_dir
        self.tables: dict[str, tuple[list[str], list[list[str]]]] = {}

    def table(self, name: str, columns: list[str], rows: list[list]) -> None:
        self.tables[name] = (columns, [[_fmt(c) for c in row]
                                       for row in rows])

    def write(self) -> list[Path]:
        written = []
        for name, (columns, rows) in sorted(self.tables.items()):
            if "csv" in self.cfg.formats:
                buf = io.StringIO()
                writer = csv.writer(buf, lineterminator="\n")
                writer.writerow(columns)
                writer.writerows(rows)
                path = self.out_dir / f"{name}.csv"
                _write_atomic(path, buf.getvalue().encode())
                written.append(path)
            if "json" in self.cfg.formats:
                doc = {"meta": {"config": self.cfg.digest(),
                                "version": __version__},
                       "columns": columns, "rows": rows}
                path = self.out_dir / f"{name}.json"
                _write_atomic(path, (json.dumps(doc, indent=1,
                                                sort_keys=True)
                                     + "\n").encode())
                written.append(path)
        return written


def _even_form(cfg: RunConfig):
    _, core = to_even_form(cfg.parsed_word())
    if isinstance(core, PowerCase):
        raise ConfigError(
            f"word {cfg.word!r} reduces to a pure generator power; this "
            "subcommand needs an even-alternating core")
    return core


def _census_records(cfg: RunConfig, N: int):
    form = _even_form(cfg)
    params = cfg.params_for(N)
    cls = cfg.class_for(form.m, params)
    return form, params, cls, census(form, params, cls,
                                     threads=cfg.threads)


# ----------------------------------------------------------------------
# Subcommands.

def cmd_profiles(cfg: RunConfig, report: Report) -> int:
    params = cfg.params_for(cfg.sweep[0])
    e = params.epsilon
    rows = []
    for r in np.linspace(0.0, 1.2 * e, 481):
        r = float(r)
        rows.append([r, eval_rho(r, params, smoothed=False),
                     eval_rho(r, params, smoothed=True),
                     eval_h(r, params, smoothed=False),
                     eval_h(r, params, smoothed=True)])
    report.table("profiles",
                 ["r", "rho", "rho_smoothed", "h", "h_smoothed"], rows)
    from .plots import profile_figure
    profile_figure(params, report.out_dir / "profiles.png")
    return EXIT_OK


def cmd_roots(cfg: RunConfig, report: Report) -> int:
    params = cfg.params_for(cfg.sweep[0])
    _, c_peak = profile_for(params).peak()
    rows = []
    for frac in np.linspace(0.05, 0.95, 19):
        c = float(frac) * c_peak
        rows.append([c,
                     solve_profile_root(c, -1, params, smoothed=False),
                     solve_profile_root(c, 1, params, smoothed=False),
                     solve_profile_root(c, -1, params, smoothed=True),
                     solve_profile_root(c, 1, params, smoothed=True)])
    report.table("roots", ["c", "r_minus", "r_plus",
                           "r_minus_smoothed", "r_plus_smoothed"], rows)
    return EXIT_OK


def cmd_fixed_points(cfg: RunConfig, report: Report) -> int:
    rows = []
    for N in cfg.sweep:
        form = _even_form(cfg)
        params = cfg.params_for(N)
        cls = cfg.class_for(form.m, params)
        rec = solve_fixed_point(form, params, cls,
                                SignPattern.extremal(form))
        for j in range(rec.m):
            rows.append([N, _class_str(cls), j, _vec(rec.vs[j]),
                         _vec(rec.xs[j]), rec.residual,
                         rec.verify_by_iteration(), int(rec.supported)])
    report.table("fixed_points",
                 ["N", "class", "slot", "v", "x", "residual",
                  "step_error", "supported"], rows)
    return EXIT_OK


def cmd_census(cfg: RunConfig, report: Report) -> int:
    rows = []
    for N in cfg.sweep:
        _, params, cls, recs = _census_records(cfg, N)
        for rec in recs:
            rows.append([N, _class_str(cls), _signs(rec.signs),
                         _vec(rec.vs[0]), _vec(rec.xs[0]), rec.residual,
                         action_closed(rec).total, action_exact(rec).total,
                         cz_index_closed(rec).value])
    report.table("census",
                 ["N", "class", "signs", "v0", "x0", "residual",
                  "action_closed", "action_exact", "cz_index"], rows)
    return EXIT_OK


def cmd_indices(cfg: RunConfig, report: Report) -> int:
    rows = []
    for N in cfg.sweep:
        _, params, cls, recs = _census_records(cfg, N)
        for rec in recs:
            pipe = cz_index_pipeline(rec)
            closed = cz_index_closed(rec)
            rows.append([N, _class_str(cls), _signs(rec.signs),
                         pipe.value, closed.value,
                         int(pipe.doubled == closed.doubled)])
    report.table("indices",
                 ["N", "class", "signs", "cz_pipeline", "cz_closed",
                  "equal"], rows)
    return EXIT_OK


def cmd_actions(cfg: RunConfig, report: Report) -> int:
    rows = []
    for N in cfg.sweep:
        _, params, cls, recs = _census_records(cfg, N)
        for rec in recs:
            exact = action_exact(rec)
            closed = action_closed(rec)
            rows.append([N, _class_str(cls), _signs(rec.signs),
                         exact.total, closed.total,
                         abs(exact.total - closed.total)])
    report.table("actions",
                 ["N", "class", "signs", "action_exact", "action_closed",
                  "difference"], rows)
    return EXIT_OK


def cmd_gaps(cfg: RunConfig, report: Report) -> int:
    sweep = gap_sweep_and_fit(cfg.parsed_word(), cfg.n, cfg.epsilon,
                              cfg.sweep, class_rule=cfg.class_rule,
                              threads=cfg.threads)
    rows = [[N, D, sweep.fitted(N)]
            for N, D in zip(sweep.N_values, sweep.D_values)]
    report.table("gaps", ["N", "gap", "fitted"], rows)
    report.table("gaps_fit", ["slope", "intercept", "r2"],
                 [[sweep.fitted_slope, sweep.fitted_intercept,
                   sweep.fit_r2]])
    from .plots import gap_figure
    gap_figure(sweep.N_values, sweep.D_values, sweep.fitted_slope,
               sweep.fitted_intercept, report.out_dir / "gaps.png")
    return EXIT_OK


def cmd_bounds(cfg: RunConfig, report: Report) -> int:
    word = cfg.parsed_word()
    rows = []
    figure_data = {}
    for k in cfg.bound_ks:
        sweep = gap_sweep_and_fit(power_word(word, k), cfg.n, cfg.epsilon,
                                  cfg.sweep, class_rule="midrange-distinct",
                                  threads=cfg.threads)
        table = hofer_power_bound(k, sweep)
        figure_data[f"power k={k}"] = table.bounds
        for N, b in zip(table.N_values, table.bounds):
            rows.append(["power", f"k={k} k'={table.k_prime}", N, b])
    cert = hofer_norm_bound(word, cfg.n, cfg.epsilon, cfg.sweep,
                            class_rule=cfg.class_rule, threads=cfg.threads)
    figure_data[f"norm {cfg.word}"] = cert.bounds
    for N, b in zip(cert.N_values, cert.bounds):
        rows.append(["norm", f"{cfg.word} ({cert.kind})", N, b])
    report.table("bounds", ["kind", "which", "N", "bound"], rows)
    from .plots import bounds_figure
    bounds_figure(cfg.sweep, figure_data, report.out_dir / "bounds.png")
    return EXIT_OK


def cmd_density(cfg: RunConfig, report: Report) -> int:
    e = cfg.epsilon
    center = e / 3.5
    target = TargetBox(v_center=(center,) + (0.0,) * (cfg.n - 1),
                       x_center=(-center,) + (0.0,) * (cfg.n - 1),
                       radius=cfg.density_radius_factor * e)
    result = density_experiment(cfg.n, e, target, cfg.density_max_index)
    report.table("density",
                 ["found", "nu0", "orbit_slot", "pairs", "witness_v",
                  "witness_x", "radius"],
                 [[int(result.found), result.nu, result.orbit_slot,
                   result.pairs, _vec(result.witness_v) or "-",
                   _vec(result.witness_x) or "-", target.radius]])
    return EXIT_OK if result.found else EXIT_NUMERICAL


def cmd_growth(cfg: RunConfig, report: Report) -> int:
    params = cfg.params_for(cfg.sweep[0])
    rows = []
    for k in cfg.growth_ks:
        count = growth_count(params, k)
        rows.append([k, count, 4 ** k, int(count == 4 ** k)])
    report.table("growth", ["k", "count", "expected", "match"], rows)
    return EXIT_OK


def cmd_validate(cfg: RunConfig, report: Report) -> int:
    """Invariant suite over the configured model; deterministic output."""
    checks = []

    def check(name, passed, detail):
        checks.append([name, "pass" if passed else "FAIL", detail])

    params = cfg.params_for(cfg.sweep[0])
    r = np.linspace(0.0, 1.5 * params.epsilon, 977)
    rho = np.array([eval_rho(x, params) for x in r])
    check("profile_range", bool((rho >= 0).all() and (rho <= 1).all()),
          _fmt(float(rho.min())))
    check("profile_monotone", bool((np.diff(rho) <= 1e-15).all()),
          _fmt(float(np.diff(rho).max())))

    form = _even_form(cfg)
    worst_res, worst_step, all_counts, pipe_ok, act_diff = 0.0, 0.0, True, True, 0.0
    for N in cfg.sweep:
        _, p, cls, recs = _census_records(cfg, N)
        all_counts = all_counts and len(recs) == 4 ** form.m
        for rec in recs:
            worst_res = max(worst_res, rec.residual)
            worst_step = max(worst_step, rec.verify_by_iteration())
            pipe_ok = pipe_ok and (cz_index_pipeline(rec).doubled
                                   == cz_index_closed(rec).doubled)
            act_diff = max(act_diff, abs(action_exact(rec).total
                                         - action_closed(rec).total))
            z = rec.state()
            res = float(np.abs(defect(z, rec.form, p, rec.cls)).max())
            check_ok = abs(res - rec.residual) <= 1e-12
            if not check_ok:
                check(f"row_recheck_N{N}_{_signs(rec.signs)}", False,
                      _fmt(res))
    check("census_counts", all_counts, f"4^{form.m}")
    check("census_residual", worst_res <= cfg.residual_tol, _fmt(worst_res))
    check("step_iteration", worst_step <= 1e-8, _fmt(worst_step))
    check("index_pipeline_equals_closed", pipe_ok, "doubled equality")
    check("action_exact_vs_closed", act_diff <= 1e-12, _fmt(act_diff))

    rng = np.random.default_rng(cfg.seed)
    p0 = cfg.params_for(cfg.sweep[0])
    cls0 = cfg.class_for(form.m, p0)
    exp = verify_expansion(form, p0, cls0,
                           SignPattern.extremal(form), 200, rng)
    check("expansion_bound", exp.passed,
          f"{_fmt(exp.min_ratio)}>={_fmt(exp.bound)}")

    nd_ok = all(nondegeneracy_check(rec).passed
                for rec in _census_records(cfg, cfg.sweep[-1])[3])
    check("nondegenerate_monodromy", nd_ok, "det scale test")

    checks.sort(key=lambda row: row[0])
    report.table("validate", ["check", "status", "detail"], checks)
    failed = [c for c in checks if c[1] == "FAIL"]
    return EXIT_VALIDATION if failed else EXIT_OK


_COMMANDS = {
    "profiles": cmd_profiles,
    "roots": cmd_roots,
    "fixed-points": cmd_fixed_points,
    "census": cmd_census,
    "indices": cmd_indices,
    "actions": cmd_actions,
    "gaps": cmd_gaps,
    "bounds": cmd_bounds,
    "density": cmd_density,
    "growth": cmd_growth,
    "validate": cmd_validate,
}


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eggbeater",
        description="Linked twist map experiments: fixed points, indices, "
                    "action gaps, and Hofer-type lower bounds.")
    parser.add_argument("subcommand", choices=sorted(_COMMANDS))
    parser.add_argument("--config", default=None,
                        help="INI or JSON run configuration")
    parser.add_argument("--out", default=None, help="output directory")
    parser.add_argument("--format", default=None, choices=["csv", "json"],
                        help="restrict output to one format")
    parser.add_argument("--threads", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--set", dest="overrides", action="append",
                        default=[], metavar="SECTION.KEY=VALUE")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    overrides = list(args.overrides)
    if args.out is not None:
        overrides.append(f"output.directory={args.out}")
    if args.format is not None:
        overrides.append(f"output.formats={args.format}")
    if args.threads is not None:
        overrides.append(f"run.threads={args.threads}")
    if args.seed is not None:
        overrides.append(f"run.seed={args.seed}")
    try:
        cfg = load_config(args.config, overrides)
    except (ConfigError, WordSyntaxError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    report = Report(cfg, Path(cfg.out_dir))
    try:
        code = _COMMANDS[args.subcommand](cfg, report)
    except (ConfigError, WordSyntaxError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except EggbeaterError as exc:
        print(f"numerical failure in {args.subcommand}: {exc}",
              file=sys.stderr)
        return EXIT_NUMERICAL
    for path in report.write():
        print(path)
    return code


if __name__ == "__main__":
    sys.exit(main())
