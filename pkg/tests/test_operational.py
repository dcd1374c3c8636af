import random

import pytest

from dccarbon import (
    CarbonFactors,
    ChipKind,
    ChipSpec,
    MemoryKind,
    MemorySpec,
    MissingDataError,
    OperationalParams,
    PowerMode,
    PowerModel,
    ProfileEntry,
    ServerSpec,
    TaskClass,
    ValidationError,
    WorkloadProfile,
    operational_carbon,
    power_model,
    ssd_operational_energy,
    tdp_power,
    yearly_energy,
)

HOURS = 8760.0


def measured_params(**kwargs):
    return OperationalParams(power_mode=PowerMode.MEASURED, **kwargs)


def test_tdp_power_model_system2(fleet):
    servers, _, params = fleet
    pm = power_model(servers["system2"], params)
    assert pm.p_act == pytest.approx(322.4)  # 280 W * 0.08 + 300 W
    assert pm.p_idle == pytest.approx(0.10 * 322.4)


def test_measured_power_model_system1(fleet, profiles):
    servers, _, _ = fleet
    opt = [p for p in profiles if p.application == "opt-2.7b"][0]
    pm = power_model(servers["system1"], measured_params(), opt)
    # GPU term replaced by the 116.2 W reading; CPU stays at allocated TDP.
    assert pm.p_act == pytest.approx(145 * 0.22 + 116.2)
    assert pm.p_idle == pytest.approx(0.10 * tdp_power(servers["system1"]))
    assert pm.source is PowerMode.MEASURED


def test_measured_mode_requires_measurement(fleet):
    servers, _, _ = fleet
    profile = WorkloadProfile("x", TaskClass.CV, (ProfileEntry("system1", 10.0),))
    with pytest.raises(MissingDataError, match="measured_gpu_power"):
        power_model(servers["system1"], measured_params(), profile)
    with pytest.raises(MissingDataError, match="no profile"):
        power_model(servers["system1"], measured_params())


def test_no_chips_means_zero_power():
    server = ServerSpec("empty", chips=(), ic_package_count=0.0)
    pm = power_model(server, OperationalParams())
    assert pm.p_act == 0.0 and pm.p_idle == 0.0


def test_yearly_energy_full_utilization():
    pm = PowerModel(p_act=100.0, p_idle=10.0)
    assert yearly_energy(pm, OperationalParams(utilization=1.0)) == pytest.approx(100 * HOURS / 1000)


def test_yearly_energy_util_independent_when_powers_equal():
    pm = PowerModel(p_act=50.0, p_idle=50.0)
    values = {yearly_energy(pm, OperationalParams(utilization=u)) for u in (0.0, 0.3, 0.7, 1.0)}
    assert len({round(v, 9) for v in values}) == 1
    assert values.pop() == pytest.approx(50 * HOURS / 1000)


def test_yearly_energy_delta_oracle():
    # 68.1 W of extra active power over a fully utilized year is 596.6 kWh.
    params = OperationalParams(utilization=1.0)
    delta = yearly_energy(PowerModel(390.5, 0.0), params) - yearly_energy(PowerModel(322.4, 0.0), params)
    assert delta == pytest.approx(68.1 * HOURS / 1000, rel=1e-9)
    assert delta == pytest.approx(596.6, abs=0.05)


def test_operational_carbon_gain_matches_reported_value():
    params = OperationalParams(utilization=1.0, region="NY")
    factors = CarbonFactors()
    server_old = ServerSpec("old", chips=(ChipSpec("g", ChipKind.GPU, 8, 628, 390.5, 2021),))
    server_new = ServerSpec("new", chips=(ChipSpec("g", ChipKind.GPU, 8, 628, 322.4, 2021),))
    gain = operational_carbon(server_old, params, factors) - operational_carbon(server_new, params, factors)
    assert gain == pytest.approx(112.15, abs=0.5)


def test_operational_carbon_zero_ci():
    factors = CarbonFactors(ci_by_region={"green": 0.0})
    server = ServerSpec("s", chips=(ChipSpec("g", ChipKind.GPU, 8, 628, 300, 2021),))
    assert operational_carbon(server, OperationalParams(region="green"), factors) == 0.0


def test_operational_carbon_region_ratio(fleet):
    servers, factors, _ = fleet
    ny = operational_carbon(servers["system3"], OperationalParams(region="NY"), factors)
    tx = operational_carbon(servers["system3"], OperationalParams(region="TX"), factors)
    assert ny / tx == pytest.approx(0.188 / 0.438, rel=1e-12)


def test_operational_carbon_unknown_region(fleet):
    servers, factors, _ = fleet
    with pytest.raises(MissingDataError, match="region 'nowhere'"):
        operational_carbon(servers["system3"], OperationalParams(region="nowhere"), factors)


def test_ssd_operational_energy():
    assert ssd_operational_energy(MemorySpec(MemoryKind.SSD, 1000.0)) == pytest.approx(0.86)
    assert ssd_operational_energy(MemorySpec(MemoryKind.SSD, 32000.0)) == pytest.approx(27.52)
    assert ssd_operational_energy(MemorySpec(MemoryKind.SSD, 0.0)) == 0.0
    assert ssd_operational_energy(MemorySpec(MemoryKind.SSD, 500.0, quantity=4)) == pytest.approx(1.72)
    with pytest.raises(ValidationError, match="SSD"):
        ssd_operational_energy(MemorySpec(MemoryKind.HDD, 1000.0))


def test_carbon_linear_in_ci_and_affine_in_utilization():
    rng = random.Random(404)
    server = ServerSpec("s", chips=(ChipSpec("g", ChipKind.GPU, 8, 628, 300, 2021),))
    for _ in range(50):
        ci = rng.uniform(0.01, 1.0)
        k = rng.uniform(0.1, 10.0)
        low = operational_carbon(server, OperationalParams(region="r"), CarbonFactors(ci_by_region={"r": ci}))
        high = operational_carbon(server, OperationalParams(region="r"), CarbonFactors(ci_by_region={"r": ci * k}))
        assert high == pytest.approx(k * low, rel=1e-12)
    # affine in utilization: equal increments in util give equal increments in carbon
    factors = CarbonFactors(ci_by_region={"NY": 0.188})
    c = [operational_carbon(server, OperationalParams(utilization=u), factors) for u in (0.2, 0.4, 0.6)]
    assert c[2] - c[1] == pytest.approx(c[1] - c[0], rel=1e-9)


def test_measured_gpu_term_never_exceeds_measurement():
    rng = random.Random(505)
    for _ in range(100):
        gpu_tdp = rng.uniform(100, 400)
        cpu_tdp = rng.uniform(50, 300)
        fraction = rng.uniform(0.05, 1.0)
        measurement = rng.uniform(20, gpu_tdp)
        server = ServerSpec(
            "s",
            chips=(
                ChipSpec("cpu", ChipKind.CPU, 14, 456, cpu_tdp, 2016, fraction),
                ChipSpec("gpu", ChipKind.GPU, 8, 628, gpu_tdp, 2021),
            ),
        )
        profile = WorkloadProfile("x", TaskClass.CV, (ProfileEntry("s", 10.0, measured_gpu_power=measurement),))
        pm = power_model(server, measured_params(), profile)
        assert pm.p_act - cpu_tdp * fraction == pytest.approx(measurement, rel=1e-12)


def test_tdp_mode_ignores_profiles(fleet, profiles):
    servers, _, params = fleet
    opt = [p for p in profiles if p.application == "opt-2.7b"][0]
    assert power_model(servers["system1"], params, opt) == power_model(servers["system1"], params)


def test_power_model_invariant():
    with pytest.raises(ValidationError, match="p_idle"):
        PowerModel(p_act=10.0, p_idle=20.0)
