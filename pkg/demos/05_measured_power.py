"""TDP vs measured power: the break-even verdict can hinge on it.

Datasheets quote thermal design power, but a model that saturates one GPU
subsystem while others idle can draw far less. Swapping measured GPU power
into the operational model shrinks the power gap between generations, and
with it the yearly carbon gain that pays back the upgrade tax.
"""

from pathlib import Path

from dccarbon import (
    OperationalParams,
    PowerMode,
    load_catalog,
    load_profiles,
    power_model,
    workload_break_even,
)

DATA = Path(__file__).parent / "data"

servers, factors, params = load_catalog(DATA / "catalog.yaml")
by_name = {s.name: s for s in servers}
profiles = {p.application: p for p in load_profiles(DATA / "profiles.csv", known_systems=by_name)}

measured = OperationalParams(
    utilization=params.utilization,
    idle_fraction=params.idle_fraction,
    region=params.region,
    horizon=params.horizon,
    power_mode=PowerMode.MEASURED,
)

for app in ("opt-2.7b", "resnet101"):
    profile = profiles[app]
    print(f"\n{app}: upgrade system1 -> system2")
    print(f"{'power model':<12} {'p_act old':>10} {'p_act new':>10} {'gain kg/yr':>11} {'break-even':>11}")
    for label, p in [("TDP", params), ("measured", measured)]:
        pm_old = power_model(by_name["system1"], p, profile)
        pm_new = power_model(by_name["system2"], p, profile)
        result = workload_break_even(by_name["system1"], by_name["system2"], profile, factors, p)
        years = "NEVER" if result.never else f"{result.breakeven_years:.2f} y"
        print(f"{label:<12} {pm_old.p_act:>9.1f}W {pm_new.p_act:>9.1f}W {result.yearly_gain:>11.1f} {years:>11}")

print("\nFor opt-2.7b the old GPU measures 116 W against a 300 W datasheet:")
print("under measured power the newer system saves little or nothing per")
print("year, and the upgrade tax may never be recovered.")
