"""Throughput-matched break-even analysis and upgrade-scenario simulation.

Comparing a slower incumbent with a faster candidate only makes sense at
equal delivered throughput, so the slower side is scaled up as a whole
before costs are compared. The upgrade pays an upfront embodied "carbon
tax" and recovers it through a lower yearly operational rate; break-even is
tax / yearly gain. Calendar scenarios replay the same comparison on a
whole-year grid with optional depreciation of the embodied amounts.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .catalog import (
    CarbonFactors,
    MissingDataError,
    OperationalParams,
    ServerSpec,
    TaskClass,
    ValidationError,
    WorkloadProfile,
)
from .depreciation import DdbVariant, Method, early_retirement_writeoff, schedule, year_share
from .embodied import ReplacedParts, partial_upgrade_embodied
from .operational import operational_carbon

#: Break-even time of an upgrade that never pays for itself.
NEVER = math.inf


class SunkPolicy(str, Enum):
    """How much of the incumbent's embodied carbon the keep strategy pays.

    INCREMENTAL charges only the extra capacity bought to match throughput
    ((scale - 1) * embodied); FULL charges the whole scaled fleet; NONE
    treats all incumbent hardware as sunk.
    """

    INCREMENTAL = "INCREMENTAL"
    FULL = "FULL"
    NONE = "NONE"


@dataclass(frozen=True)
class BreakEvenInput:
    """Costs of keeping vs. upgrading, before throughput normalization.

    ``improvement`` is throughput_new / throughput_old. Embodied values are
    kg CO2eq, operational rates kg CO2eq per year.
    """

    old_embodied: float
    new_embodied: float
    old_op: float
    new_op: float
    improvement: float = 1.0
    lifetime: float = 5.0
    sunk_policy: SunkPolicy = SunkPolicy.INCREMENTAL

    def __post_init__(self) -> None:
        if self.improvement <= 0:
            raise ValidationError("improvement must be > 0")
        if self.old_embodied < 0 or self.new_embodied < 0:
            raise ValidationError("embodied costs must be >= 0")
        if self.old_op < 0 or self.new_op < 0:
            raise ValidationError("operational rates must be >= 0")
        if self.lifetime <= 0:
            raise ValidationError("lifetime must be > 0")


@dataclass(frozen=True)
class BreakEvenResult:
    """Outcome of a break-even comparison.

    ``breakeven_years`` is ``NEVER`` (infinity) when the yearly gain is not
    positive, and 0 when the upgrade is no more expensive upfront.
    """

    carbon_tax: float  # kg CO2eq at decision time, upgrade minus keep
    yearly_gain: float  # kg CO2eq per year, keep rate minus upgrade rate
    breakeven_years: float
    within_lifetime: bool

    @property
    def never(self) -> bool:
        return math.isinf(self.breakeven_years)


def throughput_match(throughput_old: float, throughput_new: float) -> tuple[float, float]:
    """Fleet scale factors making both sides deliver equal throughput.

    The slower side is scaled by faster/slower; the faster side stays at 1.
    Scales multiply that side's embodied and operational costs.
    """
    if throughput_old <= 0 or throughput_new <= 0:
        raise ValidationError("throughputs must be > 0")
    if throughput_new >= throughput_old:
        return throughput_new / throughput_old, 1.0
    return 1.0, throughput_old / throughput_new


def break_even(inp: BreakEvenInput) -> BreakEvenResult:
    """Break-even time between keeping the incumbent and upgrading.

    Both strategies are normalized to the same throughput via
    :func:`throughput_match`; the keep strategy's embodied charge follows
    the sunk policy, the upgrade always pays the full (scaled) purchase.
    """
    scale_old, scale_new = throughput_match(1.0, inp.improvement)
    if inp.sunk_policy is SunkPolicy.INCREMENTAL:
        keep_embodied = (scale_old - 1.0) * inp.old_embodied
    elif inp.sunk_policy is SunkPolicy.FULL:
        keep_embodied = scale_old * inp.old_embodied
    else:
        keep_embodied = 0.0
    carbon_tax = scale_new * inp.new_embodied - keep_embodied
    yearly_gain = scale_old * inp.old_op - scale_new * inp.new_op
    if yearly_gain <= 0:
        years = NEVER
    elif carbon_tax <= 0:
        years = 0.0
    else:
        years = carbon_tax / yearly_gain
    return BreakEvenResult(
        carbon_tax=carbon_tax,
        yearly_gain=yearly_gain,
        breakeven_years=years,
        within_lifetime=years <= inp.lifetime,
    )


def p_sweep(base: BreakEvenInput, p_values: Sequence[float]) -> list[BreakEvenResult]:
    """Break-even results over a sweep of the peripheral factor P.

    ``base`` carries IC-only embodied costs (the P = 0 values); each sweep
    point scales both embodied sides by (1 + P) while operational rates stay
    fixed. Results are returned in the order of ``p_values``.
    """
    results = []
    for p in p_values:
        if p < 0:
            raise ValidationError("p values must be >= 0")
        scaled = BreakEvenInput(
            old_embodied=(1.0 + p) * base.old_embodied,
            new_embodied=(1.0 + p) * base.new_embodied,
            old_op=base.old_op,
            new_op=base.new_op,
            improvement=base.improvement,
            lifetime=base.lifetime,
            sunk_policy=base.sunk_policy,
        )
        results.append(break_even(scaled))
    return results


def group_improvement(
    profiles: Iterable[WorkloadProfile],
    old_system: str,
    new_system: str,
    task_class: TaskClass | None = None,
    mean: str = "geometric",
) -> float:
    """Aggregate throughput improvement of ``new_system`` over ``old_system``.

    Applications lacking an entry for either system are skipped. The default
    aggregation is the geometric mean, which is scale-consistent for ratios;
    pass ``mean="arithmetic"`` to average ratios directly.
    """
    ratios = []
    for profile in profiles:
        if task_class is not None and profile.task_class is not task_class:
            continue
        if profile.has_entry(old_system) and profile.has_entry(new_system):
            ratios.append(profile.entry_for(new_system).throughput / profile.entry_for(old_system).throughput)
    if not ratios:
        label = task_class.value if task_class is not None else "any"
        raise MissingDataError(f"no application profiled on both '{old_system}' and '{new_system}' (task class {label})")
    if mean == "geometric":
        return math.exp(sum(math.log(r) for r in ratios) / len(ratios))
    if mean == "arithmetic":
        return sum(ratios) / len(ratios)
    raise ValidationError(f"mean must be 'geometric' or 'arithmetic', got '{mean}'")


def workload_break_even(
    old: ServerSpec,
    new: ServerSpec,
    profile: WorkloadProfile,
    factors: CarbonFactors,
    params: OperationalParams,
    sunk_policy: SunkPolicy = SunkPolicy.INCREMENTAL,
    improvement: float | None = None,
) -> BreakEvenResult:
    """Break-even of a mainboard upgrade under one application's profile.

    The embodied comparison covers only the replaced mainboard (chips and
    packages; storage is reused). Operational rates follow ``params`` and,
    in MEASURED mode, the profile's GPU power readings. ``improvement``
    overrides the profile's throughput ratio (e.g. with a group aggregate);
    the within-lifetime verdict uses the new device's lifetime.
    """
    if improvement is None:
        improvement = profile.entry_for(new.name).throughput / profile.entry_for(old.name).throughput
    return break_even(
        BreakEvenInput(
            old_embodied=partial_upgrade_embodied(old, ReplacedParts.mainboard(old), factors),
            new_embodied=partial_upgrade_embodied(new, ReplacedParts.mainboard(new), factors),
            old_op=operational_carbon(old, params, factors, profile),
            new_op=operational_carbon(new, params, factors, profile),
            improvement=improvement,
            lifetime=new.lifetime,
            sunk_policy=sunk_policy,
        )
    )


@dataclass(frozen=True)
class DeviceCost:
    """A device as the scenario simulator sees it: embodied total, yearly
    operational rate (both already throughput-normalized) and lifetime."""

    embodied: float  # kg CO2eq
    op_per_year: float  # kg CO2eq / year
    lifetime: int  # years

    def __post_init__(self) -> None:
        if self.embodied < 0 or self.op_per_year < 0:
            raise ValidationError("device costs must be >= 0")
        if self.lifetime < 1:
            raise ValidationError("device lifetime must be >= 1 year")


@dataclass(frozen=True)
class ScenarioTable:
    """Cumulative carbon of the keep and upgrade strategies on a year grid.

    ``years[i]`` is the end of calendar year i+1 relative to the incumbent's
    release; ``crossing_years`` interpolates where the upgrade curve meets
    the keep curve, or is None if it never does within the horizon.
    """

    years: tuple[int, ...]
    keep_cumulative: tuple[float, ...]
    upgrade_cumulative: tuple[float, ...]
    upgrade_year: int
    horizon: int
    method: Method
    crossing_years: float | None

    def series(self) -> dict[str, list[tuple[float, float]]]:
        """(x, y) series per strategy, for plotting or file emission."""
        return {
            "keep": [(float(y), v) for y, v in zip(self.years, self.keep_cumulative)],
            f"upgrade_year{self.upgrade_year}": [(float(y), v) for y, v in zip(self.years, self.upgrade_cumulative)],
        }


def _crossing(years: Sequence[int], keep: Sequence[float], upgrade: Sequence[float], upgrade_year: int) -> float | None:
    # diff < 0 while the upgrade is still paying off its tax; the crossing
    # is where diff returns to zero, interpolated within the year grid.
    went_behind = False
    prev_diff = 0.0
    for year, k, u in zip(years, keep, upgrade):
        diff = k - u
        if year >= upgrade_year and not went_behind and diff >= 0:
            return float(upgrade_year - 1)  # tax <= 0: never fell behind
        if diff < 0:
            went_behind = True
        elif went_behind:
            if diff == prev_diff:
                return float(year)
            return (year - 1) + (-prev_diff) / (diff - prev_diff)
        prev_diff = diff
    return None


def scenario(
    old_device: DeviceCost,
    new_device: DeviceCost,
    upgrade_year: int,
    horizon: int,
    method: Method,
    ddb_variant: DdbVariant = DdbVariant.SL_SWITCH,
) -> ScenarioTable:
    """Simulate keep vs. upgrade-at-start-of-year-``upgrade_year``.

    Year 1 is the incumbent's first year of service. The keep strategy
    charges the incumbent's depreciation plus its operational rate every
    year. The upgrade strategy is identical through year upgrade_year - 1,
    then charges the incumbent's early-retirement write-off, the new
    device's own schedule and the new operational rate. Method NONE charges
    full embodied totals in the purchase years.
    """
    if horizon < 1:
        raise ValidationError("horizon must be >= 1 year")
    if not 1 <= upgrade_year <= horizon:
        raise ValidationError(f"upgrade_year must be in [1, horizon], got {upgrade_year}")

    old_sched = schedule(old_device.embodied, old_device.lifetime, method, ddb_variant=ddb_variant)
    new_sched = schedule(new_device.embodied, new_device.lifetime, method, ddb_variant=ddb_variant)
    writeoff = early_retirement_writeoff(old_sched, 1, upgrade_year)

    years = tuple(range(1, horizon + 1))
    keep_cum: list[float] = []
    upgrade_cum: list[float] = []
    keep_total = 0.0
    upgrade_total = 0.0
    for year in years:
        keep_total += year_share(old_sched, 1, year) + old_device.op_per_year
        if year < upgrade_year:
            upgrade_charge = year_share(old_sched, 1, year) + old_device.op_per_year
        else:
            upgrade_charge = year_share(new_sched, upgrade_year, year) + new_device.op_per_year
            if year == upgrade_year:
                upgrade_charge += writeoff
        upgrade_total += upgrade_charge
        keep_cum.append(keep_total)
        upgrade_cum.append(upgrade_total)

    return ScenarioTable(
        years=years,
        keep_cumulative=tuple(keep_cum),
        upgrade_cumulative=tuple(upgrade_cum),
        upgrade_year=upgrade_year,
        horizon=horizon,
        method=method,
        crossing_years=_crossing(years, keep_cum, upgrade_cum, upgrade_year),
    )
