"""Command-line front end.

Every command prints a small envelope (command echo plus input digests), a
table rounded to two decimals, and optionally writes one full-precision
``x,y`` series file per curve under ``--out``. Identical inputs and flags
produce byte-identical output. Exit codes: 0 success (an infeasible
analysis, e.g. a NEVER break-even, is still success and says so), 2 input
or validation error, 3 internal error.
"""

import hashlib
import sys
from pathlib import Path
from typing import Sequence

import click
import yaml

from . import catalog as cat
from . import depreciation as dep
from . import pareto as par
from . import provisioning as prov
from . import reports as rep
from .catalog import CarbonModelError, OperationalParams, PowerMode, TaskClass
from .embodied import ReplacedParts, partial_upgrade_embodied, server_embodied
from .operational import operational_carbon


def _fmt(value) -> str:
    if isinstance(value, float):
        if value == float("inf"):
            return "NEVER"
        return f"{value:.2f}"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if value is None:
        return "-"
    return str(value)


def _print_table(rows: Sequence[tuple[str, object]]) -> None:
    width = max(len(name) for name, _ in rows)
    for name, value in rows:
        click.echo(f"{name:<{width}}  {_fmt(value)}")


def _digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()[:12]


def _envelope(command: str, inputs: Sequence[Path], notes: Sequence[str] = ()) -> None:
    click.echo(f"# dccarbon {command}")
    for path in inputs:
        click.echo(f"# input {path} sha256={_digest(path)}")
    for note in notes:
        click.echo(f"# note {note}")


def _write_series(out_dir: str | None, name: str, header: str, points: Sequence[tuple[float, float]]) -> None:
    if out_dir is None:
        return
    directory = Path(out_dir)
    directory.mkdir(parents=True, exist_ok=True)
    lines = [header]
    lines += [f"{repr(float(x))},{repr(float(y))}" for x, y in sorted(points, key=lambda p: p[0])]
    (directory / f"{name}.csv").write_text("\n".join(lines) + "\n")


def _fail(err: Exception, code: int) -> None:
    click.echo(f"error: {err}", err=True)
    sys.exit(code)


class _Command(click.Command):
    """Command wrapper mapping model errors to exit 2 and crashes to 3."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except (CarbonModelError, click.ClickException, click.exceptions.Exit, click.exceptions.Abort):
            raise
        except Exception as err:  # pragma: no cover - defensive
            click.echo(f"internal error: {err}", err=True)
            sys.exit(3)


@click.group()
def main() -> None:
    """Data-center carbon modeling: embodied, operational, break-even."""


def _command(*args, **kwargs):
    kwargs.setdefault("cls", _Command)
    return main.command(*args, **kwargs)


def _load_catalog(path: str, factors_path: str | None):
    servers, factors, params = cat.load_catalog(path)
    if factors_path is not None:
        factors = cat.load_factors_file(factors_path)
    return servers, factors, params


def _pick_server(servers, name: str):
    for server in servers:
        if server.name == name:
            return server
    known = ", ".join(s.name for s in servers)
    raise cat.MissingDataError(f"no server named '{name}' in catalog (known: {known})")


def _with_p_factor(server, p_factor: float | None):
    if p_factor is None:
        return server
    return cat.ServerSpec(
        name=server.name,
        chips=server.chips,
        memories=server.memories,
        ic_package_count=server.ic_package_count,
        p_factor=p_factor,
        lifetime=server.lifetime,
    )


@_command()
@click.argument("catalog_file", type=click.Path())
@click.option("--server", "server_name", required=True, help="Server name from the catalog.")
@click.option("--factors", "factors_file", type=click.Path(), default=None, help="Override factors from this file.")
@click.option("--p-factor", type=float, default=None, help="Override the server's peripheral factor P.")
@click.option("--out", "out_dir", type=click.Path(), default=None, help="Directory for series files.")
def embodied(catalog_file, server_name, factors_file, p_factor, out_dir):
    """Embodied-carbon breakdown of one server."""
    try:
        servers, factors, _ = _load_catalog(catalog_file, factors_file)
        server = _with_p_factor(_pick_server(servers, server_name), p_factor)
        breakdown = server_embodied(server, factors)
    except CarbonModelError as err:
        _fail(err, 2)
        return
    inputs = [Path(catalog_file)] + ([Path(factors_file)] if factors_file else [])
    notes = [f"estimated die area: {s}/{c} = {a:g} mm^2" for s, c, a in cat.estimated_die_areas([server])]
    _envelope(f"embodied --server {server_name}", inputs, notes)
    _print_table(
        [
            ("server", server.name),
            ("chip_carbon", breakdown.chip_carbon),
            ("memory_carbon", breakdown.memory_carbon),
            ("package_carbon", breakdown.package_carbon),
            ("ic_total", breakdown.ic_total),
            ("p_factor", breakdown.p_factor_used),
            ("system_total", breakdown.system_total),
        ]
    )
    _write_series(
        out_dir,
        "embodied_breakdown",
        "component_index,kg_co2eq",
        list(enumerate([breakdown.chip_carbon, breakdown.memory_carbon, breakdown.package_carbon])),
    )


def _scenario_crossings(old_dev, new_dev, upgrade_year, horizon, out_dir):
    crossings = {}
    for method in (dep.Method.NONE, dep.Method.LINEAR, dep.Method.DDB):
        table = prov.scenario(old_dev, new_dev, upgrade_year, horizon, method)
        crossings[method] = table.crossing_years
        if out_dir is not None:
            for label, points in table.series().items():
                _write_series(out_dir, f"{label}_{method.value.lower()}", "year,cumulative_kg_co2eq", points)
    return crossings


@_command()
@click.argument("catalog_file", type=click.Path(), required=False)
@click.argument("profiles_file", type=click.Path(), required=False)
@click.option("--old", "old_name", default=None, help="Incumbent server name.")
@click.option("--new", "new_name", default=None, help="Candidate server name.")
@click.option("--app", "app_name", default=None, help="Application profile driving the throughput ratio.")
@click.option("--task-class", type=click.Choice([t.value for t in TaskClass]), default=None, help="Aggregate improvement over this task class instead of one app.")
@click.option("--measured-power", is_flag=True, help="Use measured GPU power instead of TDP.")
@click.option("--p-factor", type=float, default=None, help="Override P on both servers.")
@click.option("--sunk-policy", type=click.Choice(["incremental", "full", "none"]), default="incremental", show_default=True)
@click.option("--region", default=None, help="Carbon-intensity region key override.")
@click.option("--util", type=float, default=None, help="Utilization override in [0, 1].")
@click.option("--p-sweep", "p_sweep_list", default=None, help="Comma-separated P values to sweep.")
@click.option("--old-embodied", type=float, default=None, help="Direct mode: keep-side embodied kg.")
@click.option("--new-embodied", type=float, default=None, help="Direct mode: upgrade embodied kg.")
@click.option("--old-op", type=float, default=None, help="Direct mode: keep-side op rate kg/yr.")
@click.option("--new-op", type=float, default=None, help="Direct mode: upgrade op rate kg/yr.")
@click.option("--improvement", type=float, default=1.0, show_default=True, help="Direct mode: throughput_new / throughput_old.")
@click.option("--lifetime", type=float, default=5.0, show_default=True, help="Lifetime for the within-lifetime verdict (years).")
@click.option("--upgrade-year", type=int, default=None, help="Also report calendar-scenario crossings with the upgrade at the start of this year.")
@click.option("--horizon", type=int, default=12, show_default=True, help="Scenario horizon in years.")
@click.option("--out", "out_dir", type=click.Path(), default=None)
def breakeven(
    catalog_file,
    profiles_file,
    old_name,
    new_name,
    app_name,
    task_class,
    measured_power,
    p_factor,
    sunk_policy,
    region,
    util,
    p_sweep_list,
    old_embodied,
    new_embodied,
    old_op,
    new_op,
    improvement,
    lifetime,
    upgrade_year,
    horizon,
    out_dir,
):
    """Break-even of upgrading OLD to NEW, throughput-matched.

    Either give a catalog + profiles with --old/--new and --app (or
    --task-class), or give --old-embodied/--new-embodied/--old-op/--new-op
    directly (already throughput-normalized; --improvement defaults to 1).
    """
    policy = prov.SunkPolicy(sunk_policy.upper())
    direct = old_embodied is not None or new_embodied is not None
    inputs: list[Path] = []
    try:
        if direct:
            if None in (old_embodied, new_embodied, old_op, new_op):
                raise cat.ValidationError("direct mode needs --old-embodied, --new-embodied, --old-op and --new-op")
            base = prov.BreakEvenInput(
                old_embodied=old_embodied,
                new_embodied=new_embodied,
                old_op=old_op,
                new_op=new_op,
                improvement=improvement,
                lifetime=lifetime,
                sunk_policy=policy,
            )
            label = "direct"
        else:
            if catalog_file is None or profiles_file is None or old_name is None or new_name is None:
                raise cat.ValidationError("workload mode needs CATALOG PROFILES --old and --new")
            servers, factors, params = _load_catalog(catalog_file, None)
            inputs = [Path(catalog_file), Path(profiles_file)]
            profiles = cat.load_profiles(profiles_file, known_systems=[s.name for s in servers])
            old = _with_p_factor(_pick_server(servers, old_name), p_factor)
            new = _with_p_factor(_pick_server(servers, new_name), p_factor)
            params = OperationalParams(
                utilization=params.utilization if util is None else util,
                idle_fraction=params.idle_fraction,
                region=params.region if region is None else region,
                horizon=params.horizon,
                power_mode=PowerMode.MEASURED if measured_power else PowerMode.TDP,
            )
            if app_name is not None:
                matches = [p for p in profiles if p.application == app_name]
                if not matches:
                    raise cat.MissingDataError(f"no profile for application '{app_name}' in {profiles_file}")
                profile = matches[0]
                ratio = None
                label = app_name
            else:
                klass = TaskClass(task_class) if task_class else None
                ratio = prov.group_improvement(profiles, old_name, new_name, klass)
                candidates = [
                    p
                    for p in profiles
                    if (klass is None or p.task_class is klass) and p.has_entry(old_name) and p.has_entry(new_name)
                ]
                profile = candidates[0]
                label = f"task-class {task_class}" if task_class else "overall"
                if measured_power:
                    raise cat.ValidationError("--measured-power needs a single --app (group aggregation mixes measurements)")
            base = prov.BreakEvenInput(
                old_embodied=partial_upgrade_embodied(old, ReplacedParts.mainboard(old), factors),
                new_embodied=partial_upgrade_embodied(new, ReplacedParts.mainboard(new), factors),
                old_op=operational_carbon(old, params, factors, profile),
                new_op=operational_carbon(new, params, factors, profile),
                improvement=ratio if ratio is not None else (profile.entry_for(new_name).throughput / profile.entry_for(old_name).throughput),
                lifetime=new.lifetime,
                sunk_policy=policy,
            )
        result = prov.break_even(base)

        crossings = None
        if upgrade_year is not None:
            scale_old, scale_new = prov.throughput_match(1.0, base.improvement)
            years = max(1, round(base.lifetime))
            old_dev = prov.DeviceCost(
                embodied=scale_old * base.old_embodied,
                op_per_year=scale_old * base.old_op,
                lifetime=years,
            )
            new_dev = prov.DeviceCost(
                embodied=scale_new * base.new_embodied,
                op_per_year=scale_new * base.new_op,
                lifetime=years,
            )
            crossings = _scenario_crossings(old_dev, new_dev, upgrade_year, horizon, out_dir)

        sweep_rows = None
        if p_sweep_list is not None:
            p_values = [float(v) for v in p_sweep_list.split(",") if v.strip() != ""]
            sweep_rows = [(p, r.breakeven_years) for p, r in zip(p_values, prov.p_sweep(base, p_values))]
    except CarbonModelError as err:
        _fail(err, 2)
        return

    _envelope(f"breakeven {label}", inputs)
    rows = [
        ("improvement", base.improvement),
        ("carbon_tax", result.carbon_tax),
        ("yearly_gain", result.yearly_gain),
        ("breakeven_years", result.breakeven_years),
        ("within_lifetime", result.within_lifetime),
    ]
    _print_table(rows)
    if result.never:
        click.echo("breakeven: NEVER")
    elif crossings is not None:
        click.echo(
            f"breakeven: {crossings[dep.Method.NONE]:.2f} y (NONE) / {crossings[dep.Method.LINEAR]:.2f} y (LINEAR)"
        )
        click.echo(f"breakeven: {crossings[dep.Method.DDB]:.2f} y (DDB)")
    else:
        click.echo(f"breakeven: {result.breakeven_years:.2f} y")
    if sweep_rows is not None:
        for p, years in sweep_rows:
            click.echo(f"p={p:g}: {_fmt(years)}")
        _write_series(out_dir, "breakeven_vs_p", "p_factor,breakeven_years", sweep_rows)


@_command()
@click.argument("total", type=float)
@click.argument("lifetime", type=int)
@click.option("--method", type=click.Choice(["none", "linear", "ddb"]), default="linear", show_default=True)
@click.option("--variant", type=click.Choice(["sl-switch", "final-writeoff"]), default="sl-switch", show_default=True)
@click.option("--salvage", type=float, default=0.0, show_default=True)
@click.option("--out", "out_dir", type=click.Path(), default=None)
def depreciate(total, lifetime, method, variant, salvage, out_dir):
    """Per-year depreciation schedule for TOTAL kg over LIFETIME years."""
    try:
        sched = dep.schedule(
            total,
            lifetime,
            dep.Method(method.upper()),
            salvage=salvage,
            ddb_variant=dep.DdbVariant(variant.upper().replace("-", "_")),
        )
    except CarbonModelError as err:
        _fail(err, 2)
        return
    _envelope(f"depreciate {total:g} {lifetime}", [])
    _print_table(
        [("method", sched.method.value), ("total", sched.total), ("salvage", sched.salvage)]
        + [(f"year_{i}", amount) for i, amount in enumerate(sched.amounts, start=1)]
    )
    _write_series(out_dir, "schedule", "year,kg_co2eq", [(float(i), a) for i, a in enumerate(sched.amounts, start=1)])


def _device_from_mapping(raw: dict, where: str) -> prov.DeviceCost:
    missing = {"embodied", "op_per_year", "lifetime"} - set(raw)
    if missing:
        raise cat.ValidationError(f"{where}: missing field(s) {sorted(missing)}")
    return prov.DeviceCost(
        embodied=float(raw["embodied"]),
        op_per_year=float(raw["op_per_year"]),
        lifetime=int(raw["lifetime"]),
    )


@_command()
@click.option("--preset", type=click.Path(), default=None, help="YAML preset with old/new devices and scenario settings.")
@click.option("--old-embodied", type=float, default=None)
@click.option("--old-op", type=float, default=None)
@click.option("--old-lifetime", type=int, default=5, show_default=True)
@click.option("--new-embodied", type=float, default=None)
@click.option("--new-op", type=float, default=None)
@click.option("--new-lifetime", type=int, default=5, show_default=True)
@click.option("--upgrade-year", type=int, default=None, help="Upgrade at the start of this year (year 1 = incumbent's first).")
@click.option("--horizon", type=int, default=None, help="Years simulated.")
@click.option("--method", type=click.Choice(["none", "linear", "ddb"]), default=None)
@click.option("--variant", type=click.Choice(["sl-switch", "final-writeoff"]), default="sl-switch", show_default=True)
@click.option("--out", "out_dir", type=click.Path(), default=None)
def scenario(preset, old_embodied, old_op, old_lifetime, new_embodied, new_op, new_lifetime, upgrade_year, horizon, method, variant, out_dir):
    """Cumulative keep-vs-upgrade curves over a calendar horizon."""
    inputs = []
    try:
        if preset is not None:
            path = Path(preset)
            if not path.exists():
                raise cat.ParseError(f"preset file not found: {path}")
            inputs.append(path)
            try:
                doc = yaml.safe_load(path.read_text())
            except yaml.YAMLError as err:
                raise cat.ParseError(f"{path}: not valid YAML: {err}") from None
            if not isinstance(doc, dict):
                raise cat.ParseError(f"{path}: preset must be a mapping")
            old_dev = _device_from_mapping(doc.get("old", {}), f"{path}: old")
            new_dev = _device_from_mapping(doc.get("new", {}), f"{path}: new")
            upgrade_year = int(doc.get("upgrade_year", upgrade_year or 1))
            horizon = int(doc.get("horizon", horizon or 10))
            method_value = str(doc.get("method", method or "none")).upper()
        else:
            if None in (old_embodied, old_op, new_embodied, new_op, upgrade_year, horizon, method):
                raise cat.ValidationError(
                    "scenario needs --preset or all of --old-embodied --old-op --new-embodied --new-op --upgrade-year --horizon --method"
                )
            old_dev = prov.DeviceCost(embodied=old_embodied, op_per_year=old_op, lifetime=old_lifetime)
            new_dev = prov.DeviceCost(embodied=new_embodied, op_per_year=new_op, lifetime=new_lifetime)
            method_value = method.upper()
        try:
            chosen = dep.Method(method_value)
        except ValueError:
            raise cat.ValidationError(f"method '{method_value}' is not one of NONE, LINEAR, DDB") from None
        table = prov.scenario(
            old_dev,
            new_dev,
            upgrade_year,
            horizon,
            chosen,
            ddb_variant=dep.DdbVariant(variant.upper().replace("-", "_")),
        )
    except CarbonModelError as err:
        _fail(err, 2)
        return
    _envelope(f"scenario method={table.method.value} upgrade_year={table.upgrade_year}", inputs)
    rows = [
        ("method", table.method.value),
        ("upgrade_year", table.upgrade_year),
        ("horizon", table.horizon),
        ("keep_total", table.keep_cumulative[-1]),
        ("upgrade_total", table.upgrade_cumulative[-1]),
        ("crossing_years", table.crossing_years),
    ]
    _print_table(rows)
    if table.crossing_years is None:
        click.echo("crossing: none within horizon")
    else:
        click.echo(f"crossing: {table.crossing_years:.2f} y")
    for label, points in table.series().items():
        _write_series(out_dir, label, "year,cumulative_kg_co2eq", points)


@_command()
@click.argument("profiles_file", type=click.Path())
@click.option("--app", "app_name", required=True)
@click.option("--system", "system_name", default=None, help="Extract this system's front.")
@click.option("--old", "old_name", default=None, help="Improvement mode: incumbent system.")
@click.option("--new", "new_name", default=None, help="Improvement mode: candidate system.")
@click.option("--deadline", type=float, default=None, help="p99 latency deadline in ms.")
@click.option("--cutoff", type=float, default=par.DISPLAY_LATENCY_CUTOFF_MS, show_default=True, help="Display latency cutoff in ms (presentation only).")
@click.option("--out", "out_dir", type=click.Path(), default=None)
def pareto(profiles_file, app_name, system_name, old_name, new_name, deadline, cutoff, out_dir):
    """Pareto front of latency-throughput samples, or a constrained improvement."""
    try:
        profiles = cat.load_profiles(profiles_file)
        matches = [p for p in profiles if p.application == app_name]
        if not matches:
            raise cat.MissingDataError(f"no profile for application '{app_name}' in {profiles_file}")
        profile = matches[0]
        if (system_name is None) == (old_name is None and new_name is None):
            raise cat.ValidationError("give either --system, or --old and --new")

        if system_name is not None:
            points = par.entry_points(profile.entry_for(system_name))
            if not points:
                raise cat.MissingDataError(f"entry '{system_name}' has no latency samples")
            front = par.pareto_front(points)
            shown = par.presentation_front(front, cutoff)
            best = None if deadline is None else par.max_throughput_under_deadline(front, deadline)
            _envelope(f"pareto {app_name} --system {system_name}", [Path(profiles_file)])
            rows = [("points", len(points)), ("front_size", len(front)), ("shown_below_cutoff", len(shown))]
            if deadline is not None:
                rows.append(("deadline_ms", deadline))
                rows.append(("max_throughput", best))
            _print_table(rows)
            if deadline is not None and best is None:
                click.echo("no feasible point")
            _write_series(out_dir, "front", "p99_latency_ms,throughput_ips", [(p.p99_latency, p.throughput) for p in shown])
            feasible = [] if deadline is None else [(p.p99_latency, p.throughput) for p in front if p.p99_latency <= deadline]
            if deadline is not None:
                _write_series(out_dir, "feasible", "p99_latency_ms,throughput_ips", feasible)
        else:
            if old_name is None or new_name is None:
                raise cat.ValidationError("improvement mode needs both --old and --new")
            unconstrained = par.constrained_improvement(profile, old_name, new_name, None)
            constrained = None if deadline is None else par.constrained_improvement(profile, old_name, new_name, deadline)
            _envelope(f"pareto {app_name} {old_name}->{new_name}", [Path(profiles_file)])
            rows = [("unconstrained_improvement", unconstrained)]
            if deadline is not None:
                rows.append(("deadline_ms", deadline))
                rows.append(("constrained_improvement", constrained))
            _print_table(rows)
    except CarbonModelError as err:
        _fail(err, 2)
        return


@_command()
@click.argument("reports_file", type=click.Path())
@click.option("--x", "x_column", required=True, type=click.Choice(sorted(rep.ROW_FIELD_BY_COLUMN)), help="Predictor column.")
@click.option("--y", "y_column", default="embodied_total_kg", show_default=True, type=click.Choice(sorted(rep.ROW_FIELD_BY_COLUMN)))
@click.option("--split", "do_split", is_flag=True, help="Also fit two trendlines.")
@click.option("--out", "out_dir", type=click.Path(), default=None)
def regress(reports_file, x_column, y_column, do_split, out_dir):
    """Fit embodied carbon against a configuration column."""
    try:
        rows = rep.load_report_rows(reports_file)
        points, used, total = rep.xy_points(rows, rep.ROW_FIELD_BY_COLUMN[x_column], rep.ROW_FIELD_BY_COLUMN[y_column])
        fit = rep.ols_fit(points)
        split_result = rep.two_line_split(points) if do_split else None
    except CarbonModelError as err:
        _fail(err, 2)
        return
    _envelope(f"regress {x_column}", [Path(reports_file)])
    table = [
        ("rows_used", used),
        ("rows_total", total),
        ("slope", fit.slope),
        ("intercept", fit.intercept),
        ("r_squared", fit.r_squared),
    ]
    if split_result is not None:
        labels, (fit_a, fit_b) = split_result
        table += [
            ("group_a_n", labels.count(0)),
            ("group_a_slope", fit_a.slope),
            ("group_a_r_squared", fit_a.r_squared),
            ("group_b_n", labels.count(1)),
            ("group_b_slope", fit_b.slope),
            ("group_b_r_squared", fit_b.r_squared),
            ("combined_ss_res", fit_a.ss_res + fit_b.ss_res),
            ("single_ss_res", fit.ss_res),
        ]
    _print_table(table)
    _write_series(out_dir, "points", f"{x_column},{y_column}", points)
    if split_result is not None:
        labels, _ = split_result
        for group in (0, 1):
            series = [p for p, lab in zip(points, labels) if lab == group]
            _write_series(out_dir, f"group_{'ab'[group]}", f"{x_column},{y_column}", series)


@_command()
@click.argument("file_a", type=click.Path())
@click.argument("file_b", type=click.Path())
@click.option("--out", "out_dir", type=click.Path(), default=None)
def gap(file_a, file_b, out_dir):
    """Per-category gap between two breakdown reports (ratios are B/A)."""
    try:
        a = rep.load_breakdown(file_a)
        b = rep.load_breakdown(file_b)
        report = rep.gap_report(a, b)
    except CarbonModelError as err:
        _fail(err, 2)
        return
    _envelope(f"gap {a.label} vs {b.label}", [Path(file_a), Path(file_b)])
    width = max(len(name) for name, *_ in report.rows) if report.rows else 8
    for name, va, vb, ratio in report.rows:
        click.echo(f"{name:<{width}}  {va:.2f}  {vb:.2f}  x{ratio:.2f}")
    for name, value in report.only_in_a:
        click.echo(f"{name}  {value:.2f}  (omitted by {report.label_b})")
    for name, value in report.only_in_b:
        click.echo(f"{name}  {value:.2f}  (omitted by {report.label_a})")
    _print_table(
        [
            ("total_a", report.total_a),
            ("total_b", report.total_b),
            ("overall_ratio", report.overall_ratio),
        ]
    )
    if out_dir is not None:
        directory = Path(out_dir)
        directory.mkdir(parents=True, exist_ok=True)
        lines = ["category,a_kg_co2eq,b_kg_co2eq"]
        for name, va, vb, _ in report.rows:
            lines.append(f"{name},{repr(va)},{repr(vb)}")
        for name, value in report.only_in_a:
            lines.append(f"{name},{repr(value)},")
        for name, value in report.only_in_b:
            lines.append(f"{name},,{repr(value)}")
        (directory / "gap.csv").write_text("\n".join(lines) + "\n")


@_command()
@click.option("--total", type=float, required=True, help="Embodied total, kg.")
@click.option("--lifetime", type=int, default=5, show_default=True)
@click.option("--method", type=click.Choice(["none", "linear", "ddb"]), default="linear", show_default=True)
@click.option("--variant", type=click.Choice(["sl-switch", "final-writeoff"]), default="sl-switch", show_default=True)
@click.option("--salvage", type=float, default=0.0, show_default=True)
@click.option("--release-year", type=int, required=True)
@click.option("--year", "query_year", type=int, required=True)
@click.option("--op", "op_rate", type=float, default=None, help="Yearly operational carbon to add, kg/yr.")
@click.option("--throughput", type=float, default=None, help="Throughput (ips) for per-inference attribution.")
@click.option("--util", type=float, default=0.3, show_default=True)
@click.option("--out", "out_dir", type=click.Path(), default=None)
def attribute(total, lifetime, method, variant, salvage, release_year, query_year, op_rate, throughput, util, out_dir):
    """Embodied carbon attributed to one calendar year of a device's life."""
    try:
        sched = dep.schedule(
            total,
            lifetime,
            dep.Method(method.upper()),
            salvage=salvage,
            ddb_variant=dep.DdbVariant(variant.upper().replace("-", "_")),
        )
        share = dep.year_share(sched, release_year, query_year)
        rows = [
            ("method", sched.method.value),
            ("release_year", release_year),
            ("query_year", query_year),
            ("year_share", share),
        ]
        if op_rate is not None:
            rows.append(("yearly_operational", op_rate))
            rows.append(("year_total", share + op_rate))
        if throughput is not None:
            params = OperationalParams(utilization=util)
            per_inf = dep.per_inference_carbon(share, op_rate or 0.0, throughput, params)
            rows.append(("per_inference_kg", f"{per_inf:.6e}"))
    except CarbonModelError as err:
        _fail(err, 2)
        return
    _envelope(f"attribute {method} {query_year}", [])
    _print_table(rows)
    _write_series(
        out_dir,
        "attribution",
        "year,kg_co2eq",
        [(float(release_year + i), amount) for i, amount in enumerate(sched.amounts)],
    )


if __name__ == "__main__":
    main()
