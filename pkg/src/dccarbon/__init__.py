"""Data-center carbon modeling: embodied and operational carbon, depreciation
of embodied cost over device lifetimes, throughput-matched break-even
analysis, Pareto throughput-latency fronts and vendor-report statistics."""

from .catalog import (
    CarbonFactors,
    CarbonModelError,
    ChipKind,
    ChipSpec,
    MemoryKind,
    MemorySpec,
    MissingDataError,
    OperationalParams,
    ParseError,
    PowerMode,
    ProfileEntry,
    ServerSpec,
    TaskClass,
    ValidationError,
    WorkloadProfile,
    load_catalog,
    load_factors_file,
    load_profiles,
    save_catalog,
    save_profiles,
)
from .depreciation import (
    DdbVariant,
    DepreciationSchedule,
    Method,
    early_retirement_writeoff,
    per_inference_carbon,
    schedule,
    year_share,
)
from .embodied import (
    EmbodiedBreakdown,
    ReplacedParts,
    chip_carbon,
    memory_carbon,
    partial_upgrade_embodied,
    server_embodied,
)
from .operational import (
    PowerModel,
    operational_carbon,
    power_model,
    ssd_operational_energy,
    tdp_power,
    yearly_energy,
)
from .pareto import (
    TradeoffPoint,
    constrained_improvement,
    max_throughput_under_deadline,
    pareto_front,
)
from .provisioning import (
    NEVER,
    BreakEvenInput,
    BreakEvenResult,
    DeviceCost,
    ScenarioTable,
    SunkPolicy,
    break_even,
    group_improvement,
    p_sweep,
    scenario,
    throughput_match,
    workload_break_even,
)
from .reports import (
    BreakdownReport,
    GapReport,
    LineFit,
    ReportRow,
    gap_report,
    load_breakdown,
    load_report_rows,
    ols_fit,
    two_line_split,
    xy_points,
)

__version__ = "0.1.0"

__all__ = [
    "BreakdownReport",
    "BreakEvenInput",
    "BreakEvenResult",
    "CarbonFactors",
    "CarbonModelError",
    "ChipKind",
    "ChipSpec",
    "DdbVariant",
    "DepreciationSchedule",
    "DeviceCost",
    "EmbodiedBreakdown",
    "GapReport",
    "LineFit",
    "MemoryKind",
    "MemorySpec",
    "Method",
    "MissingDataError",
    "NEVER",
    "OperationalParams",
    "ParseError",
    "PowerMode",
    "PowerModel",
    "ProfileEntry",
    "ReplacedParts",
    "ReportRow",
    "ScenarioTable",
    "ServerSpec",
    "SunkPolicy",
    "TaskClass",
    "TradeoffPoint",
    "ValidationError",
    "WorkloadProfile",
    "break_even",
    "chip_carbon",
    "constrained_improvement",
    "early_retirement_writeoff",
    "gap_report",
    "group_improvement",
    "load_breakdown",
    "load_catalog",
    "load_factors_file",
    "load_profiles",
    "load_report_rows",
    "max_throughput_under_deadline",
    "memory_carbon",
    "ols_fit",
    "operational_carbon",
    "p_sweep",
    "pareto_front",
    "partial_upgrade_embodied",
    "per_inference_carbon",
    "power_model",
    "save_catalog",
    "save_profiles",
    "scenario",
    "schedule",
    "server_embodied",
    "ssd_operational_energy",
    "tdp_power",
    "throughput_match",
    "two_line_split",
    "workload_break_even",
    "xy_points",
    "year_share",
]
