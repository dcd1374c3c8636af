import re

import pytest
from click.testing import CliRunner

from dccarbon.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def run(runner, args):
    return runner.invoke(main, args, catch_exceptions=False)


def table_value(output, name):
    for line in output.splitlines():
        match = re.match(rf"^{re.escape(name)}\s+(\S+)$", line)
        if match:
            return match.group(1)
    raise AssertionError(f"no row '{name}' in:\n{output}")


def test_embodied_reports_published_board_total(runner, data_dir):
    result = run(runner, ["embodied", str(data_dir / "catalog.yaml"), "--server", "a10g-board"])
    assert result.exit_code == 0
    rows = [l for l in result.output.splitlines() if not l.startswith("#")]
    assert rows[-1].startswith("system_total")
    assert table_value(result.output, "system_total") == "108.30"


def test_embodied_p_zero_override(runner, data_dir):
    result = run(runner, ["embodied", str(data_dir / "catalog.yaml"), "--server", "a10g-board", "--p-factor", "0"])
    assert result.exit_code == 0
    assert table_value(result.output, "ic_total") == table_value(result.output, "system_total")


def test_embodied_echoes_estimated_die_areas(runner, data_dir):
    result = run(runner, ["embodied", str(data_dir / "catalog.yaml"), "--server", "system2"])
    assert "# note estimated die area: system2/epyc-7r32" in result.output


def test_missing_factors_file_exits_2(runner, data_dir):
    result = runner.invoke(
        main,
        ["embodied", str(data_dir / "catalog.yaml"), "--server", "a10g-board", "--factors", "absent.yaml"],
    )
    assert result.exit_code == 2
    assert "absent.yaml" in result.output


def test_missing_catalog_exits_2(runner):
    result = runner.invoke(main, ["embodied", "nope.yaml", "--server", "x"])
    assert result.exit_code == 2
    assert "nope.yaml" in result.output


def test_breakeven_direct_preset_reports_both_conventions(runner):
    args = [
        "breakeven",
        "--old-embodied", "124", "--new-embodied", "167",
        "--old-op", "182", "--new-op", "135",
        "--upgrade-year", "4", "--horizon", "12",
    ]
    result = run(runner, args)
    assert result.exit_code == 0
    match = re.search(r"breakeven: ([\d.]+) y \(NONE\) / ([\d.]+) y \(LINEAR\)", result.output)
    assert match, result.output
    assert abs(float(match.group(1)) - 6.6) <= 0.1
    assert abs(float(match.group(2)) - 4.3) <= 0.1


def test_breakeven_nlp_group_never(runner, data_dir):
    result = run(
        runner,
        [
            "breakeven", str(data_dir / "catalog.yaml"), str(data_dir / "profiles.csv"),
            "--old", "system1", "--new", "system2", "--task-class", "NLP",
        ],
    )
    assert result.exit_code == 0
    assert "breakeven: NEVER" in result.output


def test_breakeven_p_sweep_series_monotone(runner, data_dir, tmp_path):
    out = tmp_path / "series"
    result = run(
        runner,
        [
            "breakeven", str(data_dir / "catalog.yaml"), str(data_dir / "profiles.csv"),
            "--old", "system3", "--new", "system4", "--app", "persimmon-8b",
            "--p-sweep", "0,1.3,2.3,6.6,12.4", "--out", str(out),
        ],
    )
    assert result.exit_code == 0
    lines = (out / "breakeven_vs_p.csv").read_text().splitlines()
    assert lines[0] == "p_factor,breakeven_years"
    years = [float(line.split(",")[1]) for line in lines[1:]]
    assert years == sorted(years)
    assert len(years) == 5


def test_breakeven_requires_complete_direct_inputs(runner):
    result = runner.invoke(main, ["breakeven", "--old-embodied", "5"])
    assert result.exit_code == 2


def test_depreciate_ddb_head(runner):
    result = run(runner, ["depreciate", "10000", "5", "--method", "ddb"])
    assert table_value(result.output, "year_1") == "4000.00"
    assert table_value(result.output, "year_2") == "2400.00"


def test_depreciate_single_year(runner):
    result = run(runner, ["depreciate", "777", "1", "--method", "ddb"])
    assert table_value(result.output, "year_1") == "777.00"


def test_depreciate_linear_rows_equal(runner, tmp_path):
    out = tmp_path / "s"
    result = run(runner, ["depreciate", "100", "4", "--method", "linear", "--out", str(out)])
    values = {table_value(result.output, f"year_{i}") for i in range(1, 5)}
    assert values == {"25.00"}
    series = (out / "schedule.csv").read_text().splitlines()
    assert series[0] == "year,kg_co2eq"
    assert len(series) == 5


def test_scenario_preset(runner, data_dir):
    result = run(runner, ["scenario", "--preset", str(data_dir / "upgrade_persimmon.yaml")])
    assert result.exit_code == 0
    crossing = float(table_value(result.output, "crossing_years"))
    assert abs(crossing - 6.55) <= 0.01


def test_scenario_flags_linear(runner, tmp_path):
    out = tmp_path / "curves"
    result = run(
        runner,
        [
            "scenario", "--old-embodied", "124", "--old-op", "182",
            "--new-embodied", "167", "--new-op", "135",
            "--upgrade-year", "4", "--horizon", "10", "--method", "linear", "--out", str(out),
        ],
    )
    crossing = float(table_value(result.output, "crossing_years"))
    assert abs(crossing - 4.29) <= 0.01
    keep = (out / "keep.csv").read_text().splitlines()
    upgrade = (out / "upgrade_year4.csv").read_text().splitlines()
    assert keep[0] == upgrade[0] == "year,cumulative_kg_co2eq"
    assert len(keep) == len(upgrade) == 11


def test_pareto_front_and_deadline(runner, data_dir, tmp_path):
    out = tmp_path / "front"
    result = run(
        runner,
        [
            "pareto", str(data_dir / "resnet50_latency.csv"), "--app", "resnet50",
            "--system", "system1", "--deadline", "20", "--out", str(out),
        ],
    )
    assert table_value(result.output, "max_throughput") == "250.00"
    front_lines = (out / "front.csv").read_text().splitlines()
    assert front_lines[0] == "p99_latency_ms,throughput_ips"
    latencies = [float(line.split(",")[0]) for line in front_lines[1:]]
    assert latencies == sorted(latencies)
    assert max(latencies) <= 150.0  # presentation cutoff


def test_pareto_infeasible_deadline_still_succeeds(runner, data_dir, tmp_path):
    out = tmp_path / "front"
    result = run(
        runner,
        [
            "pareto", str(data_dir / "resnet50_latency.csv"), "--app", "resnet50",
            "--system", "system1", "--deadline", "2", "--out", str(out),
        ],
    )
    assert result.exit_code == 0
    assert "no feasible point" in result.output
    assert (out / "feasible.csv").read_text() == "p99_latency_ms,throughput_ips\n"


def test_pareto_improvement_mode(runner, data_dir):
    result = run(
        runner,
        [
            "pareto", str(data_dir / "resnet50_latency.csv"), "--app", "resnet50",
            "--old", "system1", "--new", "system2", "--deadline", "20",
        ],
    )
    assert table_value(result.output, "unconstrained_improvement") == "1.46"
    assert table_value(result.output, "constrained_improvement") == "2.08"


def test_regress_split(runner, data_dir):
    result = run(
        runner,
        ["regress", str(data_dir / "vendor" / "vendor_reports.csv"), "--x", "hdd_quantity"],
    )
    assert float(table_value(result.output, "r_squared")) >= 0.99
    result = run(
        runner,
        ["regress", str(data_dir / "vendor" / "vendor_reports.csv"), "--x", "ssd_quantity", "--split"],
    )
    r2 = sorted([float(table_value(result.output, "group_a_r_squared")), float(table_value(result.output, "group_b_r_squared"))])
    assert r2[1] >= 0.9 and r2[0] <= 0.5
    assert float(table_value(result.output, "combined_ss_res")) < float(table_value(result.output, "single_ss_res"))


def test_gap_overall_ratio(runner, data_dir):
    result = run(
        runner,
        ["gap", str(data_dir / "gap" / "act_r740.csv"), str(data_dir / "gap" / "paia_r740.csv")],
    )
    assert table_value(result.output, "overall_ratio") == "2.26"
    assert "x7.58" in result.output


def test_attribute_ddb_2023(runner):
    result = run(
        runner,
        [
            "attribute", "--total", "168.4", "--lifetime", "5", "--method", "ddb",
            "--release-year", "2023", "--year", "2023", "--op", "289.9",
        ],
    )
    assert table_value(result.output, "year_share") == "67.36"
    assert table_value(result.output, "year_total") == "357.26"


def test_outputs_are_deterministic(runner, data_dir, tmp_path):
    args = [
        "breakeven", str(data_dir / "catalog.yaml"), str(data_dir / "profiles.csv"),
        "--old", "system3", "--new", "system4", "--app", "persimmon-8b",
        "--p-sweep", "0,6.6",
    ]
    first = run(runner, args)
    second = run(runner, args)
    assert first.output == second.output

    out_a, out_b = tmp_path / "a", tmp_path / "b"
    split_args = ["regress", str(data_dir / "vendor" / "vendor_reports.csv"), "--x", "ssd_quantity", "--split"]
    first = run(runner, split_args + ["--out", str(out_a)])
    second = run(runner, split_args + ["--out", str(out_b)])
    assert first.output == second.output
    for name in ("points.csv", "group_a.csv", "group_b.csv"):
        assert (out_a / name).read_bytes() == (out_b / name).read_bytes()


def test_series_files_full_precision(runner, tmp_path):
    out = tmp_path / "s"
    run(runner, ["depreciate", "10000", "3", "--method", "ddb", "--out", str(out)])
    lines = (out / "schedule.csv").read_text().splitlines()[1:]
    amounts = [float(line.split(",")[1]) for line in lines]
    assert sum(amounts) == pytest.approx(10000.0, rel=1e-12)
