import textwrap

import pytest

from dccarbon import (
    CarbonFactors,
    ChipKind,
    MemoryKind,
    MissingDataError,
    OperationalParams,
    ParseError,
    ValidationError,
    load_catalog,
    load_profiles,
    save_catalog,
    save_profiles,
)

MINIMAL_CATALOG = textwrap.dedent(
    """
    servers:
      - name: box
        lifetime: 5
        p_factor: 6.6
        ic_package_count: 1.22
        chips:
          - {name: cpu0, kind: CPU, process_node: 14, die_area: 456, tdp: 145, release_year: 2016, fraction: 0.22}
          - {name: gpu0, kind: GPU, process_node: 12, die_area: 815, tdp: 300, release_year: 2017}
        memories:
          - {kind: DRAM, capacity: 61, quantity: 1}
    factors:
      cpa_by_node: {14: 0.0127, 12: 0.0149}
      cpc_by_kind: {DRAM: 0.0013}
    params:
      utilization: 0.3
      region: NY
    """
)


def write(tmp_path, text, name="catalog.yaml"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_load_minimal_catalog(tmp_path):
    servers, factors, params = load_catalog(write(tmp_path, MINIMAL_CATALOG))
    assert len(servers) == 1
    box = servers[0]
    assert box.chips[0].fraction == 0.22
    assert box.chips[0].kind is ChipKind.CPU
    assert box.ic_package_count == 1.22
    assert factors.cpc_by_kind[MemoryKind.DRAM] == 0.0013
    assert factors.ci_by_region["NY"] == 0.188  # defaults merged in
    assert params.utilization == 0.3


def test_missing_die_area_rejected(tmp_path):
    bad = MINIMAL_CATALOG.replace("die_area: 456, ", "")
    with pytest.raises(ValidationError, match="die_area required"):
        load_catalog(write(tmp_path, bad))


def test_out_of_range_utilization_rejected(tmp_path):
    bad = MINIMAL_CATALOG.replace("utilization: 0.3", "utilization: 1.3")
    with pytest.raises(ValidationError, match="utilization"):
        load_catalog(write(tmp_path, bad))


def test_unknown_process_node_reported_at_load(tmp_path):
    bad = MINIMAL_CATALOG.replace("cpa_by_node: {14: 0.0127, 12: 0.0149}", "cpa_by_node: {14: 0.0127}")
    with pytest.raises(MissingDataError, match="process node 12"):
        load_catalog(write(tmp_path, bad))


def test_unknown_memory_kind_reported_at_load(tmp_path):
    bad = MINIMAL_CATALOG.replace("cpc_by_kind: {DRAM: 0.0013}", "cpc_by_kind: {SSD: 0.006}")
    with pytest.raises(MissingDataError, match="DRAM"):
        load_catalog(write(tmp_path, bad))


def test_fraction_above_one_rejected(tmp_path):
    bad = MINIMAL_CATALOG.replace("fraction: 0.22", "fraction: 1.5")
    with pytest.raises(ValidationError, match="fraction"):
        load_catalog(write(tmp_path, bad))


def test_malformed_yaml_is_parse_error(tmp_path):
    with pytest.raises(ParseError):
        load_catalog(write(tmp_path, "servers: [unclosed"))
    with pytest.raises(ParseError, match="not found"):
        load_catalog(tmp_path / "nope.yaml")


def test_catalog_round_trip(tmp_path, data_dir):
    servers, factors, params = load_catalog(data_dir / "catalog.yaml")
    out = tmp_path / "echo.yaml"
    save_catalog(out, servers, factors, params)
    servers2, factors2, params2 = load_catalog(out)
    assert servers2 == servers
    assert factors2 == factors
    assert params2 == params


def test_zero_ci_rejected_in_files_allowed_in_memory(tmp_path):
    bad = MINIMAL_CATALOG.replace(
        "cpc_by_kind: {DRAM: 0.0013}",
        "cpc_by_kind: {DRAM: 0.0013}\n  ci_by_region: {ZZ: 0.0}",
    )
    with pytest.raises(ValidationError, match="ci_by_region"):
        load_catalog(write(tmp_path, bad))
    assert CarbonFactors(ci_by_region={"green": 0.0}).ci("green") == 0.0


PROFILE_HEADER = "application,task_class,system,throughput_ips,measured_gpu_power_w,p99_latency_ms\n"


def test_profiles_grouped_by_application(tmp_path):
    path = tmp_path / "p.csv"
    path.write_text(PROFILE_HEADER + "bert-b,NLP,system3,19.5,,\nbert-b,NLP,system4,45.9,,\n")
    profiles = load_profiles(path)
    assert len(profiles) == 1
    assert [e.system for e in profiles[0].entries] == ["system3", "system4"]
    assert profiles[0].entry_for("system4").throughput == 45.9


def test_empty_profile_file(tmp_path):
    path = tmp_path / "p.csv"
    path.write_text("")
    assert load_profiles(path) == []
    path.write_text(PROFILE_HEADER)
    assert load_profiles(path) == []


def test_negative_throughput_rejected(tmp_path):
    path = tmp_path / "p.csv"
    path.write_text(PROFILE_HEADER + "bert-b,NLP,system3,-1,,\n")
    with pytest.raises(ValidationError, match="throughput"):
        load_profiles(path)


def test_unknown_system_rejected(tmp_path):
    path = tmp_path / "p.csv"
    path.write_text(PROFILE_HEADER + "bert-b,NLP,mystery,19.5,,\n")
    with pytest.raises(ValidationError, match="unknown system name 'mystery'"):
        load_profiles(path, known_systems=["system3"])
    assert load_profiles(path)[0].entries[0].system == "mystery"  # unchecked without the list


def test_conflicting_task_class_rejected(tmp_path):
    path = tmp_path / "p.csv"
    path.write_text(PROFILE_HEADER + "bert-b,NLP,system3,19.5,,\nbert-b,CV,system4,45.9,,\n")
    with pytest.raises(ValidationError, match="conflicting task_class"):
        load_profiles(path)


def test_duplicate_headline_rejected(tmp_path):
    path = tmp_path / "p.csv"
    path.write_text(PROFILE_HEADER + "x,CV,s,10,,\nx,CV,s,11,,\n")
    with pytest.raises(ValidationError, match="duplicate headline"):
        load_profiles(path)


def test_latency_rows_become_samples(tmp_path):
    path = tmp_path / "p.csv"
    path.write_text(PROFILE_HEADER + "x,CV,s,100,,10\nx,CV,s,180,,25\n")
    entry = load_profiles(path)[0].entries[0]
    assert entry.latency_samples == ((10.0, 100.0), (25.0, 180.0))
    assert entry.throughput == 180.0  # headline falls back to best sample


def test_profile_round_trip(tmp_path, data_dir):
    for source in ("profiles.csv", "resnet50_latency.csv"):
        profiles = load_profiles(data_dir / source)
        out = tmp_path / f"echo_{source}"
        save_profiles(out, profiles)
        assert load_profiles(out) == profiles


def test_wrong_header_is_parse_error(tmp_path):
    path = tmp_path / "p.csv"
    path.write_text("app,task,sys\nx,CV,s\n")
    with pytest.raises(ParseError, match="header"):
        load_profiles(path)


def test_params_defaults():
    params = OperationalParams()
    assert params.utilization == 0.3
    assert params.idle_fraction == 0.10
    with pytest.raises(ValidationError):
        OperationalParams(utilization=-0.1)
    with pytest.raises(ValidationError):
        OperationalParams(idle_fraction=1.2)
