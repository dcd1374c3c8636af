"""Depreciation of embodied carbon over a device lifetime.

Spreads a device's embodied carbon across its useful life the way asset
accounting spreads purchase cost: evenly (linear), front-loaded at rate
2/lifetime on the declining book value (double-declining balance), or not
at all (the full total charged in year one). Whatever the method, charged
amounts plus any early-retirement write-off always sum to total - salvage.
"""

from dataclasses import dataclass
from enum import Enum

from .catalog import OperationalParams, ValidationError

SECONDS_PER_YEAR = 31_536_000.0


class Method(str, Enum):
    NONE = "NONE"
    LINEAR = "LINEAR"
    DDB = "DDB"


class DdbVariant(str, Enum):
    #: Switch to straight-line on remaining book value once straight-line
    #: charges more than declining balance (standard accounting practice).
    SL_SWITCH = "SL_SWITCH"
    #: Charge the whole remaining book value in the final year.
    FINAL_WRITEOFF = "FINAL_WRITEOFF"


@dataclass(frozen=True)
class DepreciationSchedule:
    """Per-year embodied-carbon amounts for one device."""

    method: Method
    total: float  # kg CO2eq
    lifetime: int  # years
    salvage: float  # kg CO2eq left un-depreciated
    amounts: tuple[float, ...]
    ddb_variant: DdbVariant = DdbVariant.SL_SWITCH


def _ddb_amounts(total: float, lifetime: int, salvage: float, variant: DdbVariant) -> list[float]:
    rate = 2.0 / lifetime
    book = total
    amounts: list[float] = []
    switched_sl = 0.0
    for year in range(1, lifetime + 1):
        remaining_years = lifetime - year + 1
        if switched_sl:
            charge = min(switched_sl, book - salvage)
        elif variant is DdbVariant.FINAL_WRITEOFF and year == lifetime:
            charge = book - salvage
        else:
            charge = min(book * rate, book - salvage)
            if variant is DdbVariant.SL_SWITCH:
                straight = (book - salvage) / remaining_years
                if straight >= charge:
                    switched_sl = straight
                    charge = straight
        amounts.append(charge)
        book -= charge
    # Declining balance never reaches zero on its own; fold the residual
    # into the last year so the schedule conserves total - salvage.
    if book - salvage != 0.0:
        amounts[-1] += book - salvage
    return amounts


def schedule(
    total: float,
    lifetime: int,
    method: Method,
    salvage: float = 0.0,
    ddb_variant: DdbVariant = DdbVariant.SL_SWITCH,
) -> DepreciationSchedule:
    """Distribute ``total`` over ``lifetime`` whole years.

    LINEAR charges (total - salvage)/lifetime each year. DDB charges
    2/lifetime of the declining book value, resolved to exactly
    total - salvage by the chosen variant. NONE charges everything in year
    one.
    """
    if lifetime < 1:
        raise ValidationError("lifetime must be >= 1 year")
    if total < 0:
        raise ValidationError("total must be >= 0")
    if not 0 <= salvage <= total:
        raise ValidationError(f"salvage must be in [0, total], got {salvage}")
    depreciable = total - salvage
    if method is Method.NONE:
        amounts = [depreciable] + [0.0] * (lifetime - 1)
    elif method is Method.LINEAR:
        amounts = [depreciable / lifetime] * lifetime
    elif method is Method.DDB:
        amounts = [depreciable] if lifetime == 1 else _ddb_amounts(total, lifetime, salvage, ddb_variant)
    else:
        raise ValidationError(f"unknown depreciation method {method}")
    return DepreciationSchedule(
        method=method,
        total=total,
        lifetime=lifetime,
        salvage=salvage,
        amounts=tuple(amounts),
        ddb_variant=ddb_variant,
    )


def year_share(sched: DepreciationSchedule, release_year: int, query_year: int) -> float:
    """Embodied carbon attributed to ``query_year`` for a device released
    in ``release_year``; zero outside the lifetime window."""
    index = query_year - release_year
    if 0 <= index < sched.lifetime:
        return sched.amounts[index]
    return 0.0


def early_retirement_writeoff(sched: DepreciationSchedule, release_year: int, retire_year: int) -> float:
    """Remaining un-depreciated carbon when the device is retired at the
    start of ``retire_year``.

    Years ``release_year .. retire_year - 1`` have already been charged; the
    rest of the book value is charged at retirement so that lifetime totals
    are conserved. Retirement at or beyond the end of life returns zero.
    """
    if retire_year < release_year:
        raise ValidationError(f"retirement year {retire_year} precedes release year {release_year}")
    charged_years = min(retire_year - release_year, sched.lifetime)
    charged = sum(sched.amounts[:charged_years])
    return (sched.total - sched.salvage) - charged


def per_inference_carbon(
    year_share: float,
    yearly_operational: float,
    throughput: float,
    params: OperationalParams,
) -> float:
    """Carbon per inference: one year's embodied share plus operational
    carbon, divided by the inferences served that year.

    The system serves requests only while active, so the yearly inference
    count is throughput * utilization * seconds per year.
    """
    if throughput <= 0:
        raise ValidationError("throughput must be > 0")
    inferences = throughput * params.utilization * SECONDS_PER_YEAR
    if inferences == 0:
        raise ValidationError("utilization 0 serves no inferences")
    return (year_share + yearly_operational) / inferences
