"""Operational-carbon model: power, yearly energy and grid intensity.

The system is modeled with two modes: active at ``p_act`` for a
``utilization`` fraction of the year and idle at ``p_idle`` for the rest.
Yearly energy is (p_act*util + p_idle*(1-util)) * 8760 h, and operational
carbon is energy times the regional grid carbon intensity.
"""

from dataclasses import dataclass

from .catalog import (
    CarbonFactors,
    ChipKind,
    MemoryKind,
    MemorySpec,
    MissingDataError,
    OperationalParams,
    PowerMode,
    ServerSpec,
    ValidationError,
    WorkloadProfile,
)

HOURS_PER_YEAR = 8760.0

#: Yearly SSD energy draw, kWh per TB per year (drive-vendor estimate).
SSD_KWH_PER_TB_YEAR = 0.86


@dataclass(frozen=True)
class PowerModel:
    """Active/idle power pair for one server, in watts."""

    p_act: float
    p_idle: float
    source: PowerMode = PowerMode.TDP

    def __post_init__(self) -> None:
        if self.p_act < 0 or self.p_idle < 0:
            raise ValidationError("power must be >= 0")
        if self.p_idle > self.p_act:
            raise ValidationError(f"p_idle ({self.p_idle} W) must not exceed p_act ({self.p_act} W)")


def tdp_power(server: ServerSpec) -> float:
    """Allocated TDP of the server: sum of tdp * fraction over chips."""
    return float(sum(c.tdp * c.fraction for c in server.chips))


def power_model(
    server: ServerSpec,
    params: OperationalParams,
    profile: WorkloadProfile | None = None,
) -> PowerModel:
    """Build the power model for a server under the configured power mode.

    TDP mode uses allocated TDP for every chip. MEASURED mode replaces the
    GPU TDP contribution with the profile's measured GPU power for this
    server, while CPUs stay at allocated TDP (CPU utilization is near-full
    under inference serving, so TDP remains representative). Idle power is
    always ``idle_fraction`` of the TDP-mode active power, since only active
    power is measured.
    """
    tdp_total = tdp_power(server)
    p_idle = params.idle_fraction * tdp_total
    if params.power_mode is PowerMode.TDP:
        return PowerModel(p_act=tdp_total, p_idle=p_idle, source=PowerMode.TDP)

    if profile is None:
        raise MissingDataError(f"server '{server.name}': MEASURED power requested but no profile given")
    entry = profile.entry_for(server.name)
    if entry.measured_gpu_power is None:
        raise MissingDataError(
            f"profile '{profile.application}' entry '{server.name}' carries no measured_gpu_power_w"
        )
    gpu_tdp = sum(c.tdp * c.fraction for c in server.chips if c.kind is ChipKind.GPU)
    p_act = tdp_total - gpu_tdp + entry.measured_gpu_power
    return PowerModel(p_act=p_act, p_idle=p_idle, source=PowerMode.MEASURED)


def yearly_energy(pm: PowerModel, params: OperationalParams) -> float:
    """Energy over one year in kWh."""
    watts = pm.p_act * params.utilization + pm.p_idle * (1.0 - params.utilization)
    return watts * HOURS_PER_YEAR / 1000.0


def operational_carbon(
    server: ServerSpec,
    params: OperationalParams,
    factors: CarbonFactors,
    profile: WorkloadProfile | None = None,
) -> float:
    """Operational carbon rate of a server, kg CO2eq per year."""
    pm = power_model(server, params, profile)
    return yearly_energy(pm, params) * factors.ci(params.region)


def ssd_operational_energy(mem: MemorySpec) -> float:
    """Yearly energy of an SSD population, kWh (0.86 kWh per TB per year)."""
    if mem.kind is not MemoryKind.SSD:
        raise ValidationError(f"ssd_operational_energy applies to SSDs, not {mem.kind.value}")
    return SSD_KWH_PER_TB_YEAR * (mem.capacity / 1000.0) * mem.quantity
