"""How the peripheral factor moves the upgrade break-even point.

A mainboard upgrade pays an embodied "carbon tax" now to save operational
carbon every year. Tools that model only the CPU and GPU dies ((1+P) = 1)
report tiny taxes and sub-year break-evens; accounting for the mainboard,
chassis, PSU and fans scales the tax by (1+P) and can push the break-even
past the planned lifetime.
"""

from pathlib import Path

from dccarbon import (
    BreakEvenInput,
    ReplacedParts,
    SunkPolicy,
    load_catalog,
    load_profiles,
    operational_carbon,
    p_sweep,
    partial_upgrade_embodied,
)

DATA = Path(__file__).parent / "data"

servers, factors, params = load_catalog(DATA / "catalog.yaml")
by_name = {s.name: s for s in servers}
profiles = {p.application: p for p in load_profiles(DATA / "profiles.csv", known_systems=by_name)}

old, new = by_name["system3"], by_name["system4"]
profile = profiles["persimmon-8b"]
improvement = profile.entry_for(new.name).throughput / profile.entry_for(old.name).throughput

# Strip the servers to P = 0 so the sweep controls the whole (1+P) scaling.
def ic_mainboard(server):
    return partial_upgrade_embodied(server, ReplacedParts.mainboard(server), factors) / (1 + server.p_factor)

base = BreakEvenInput(
    old_embodied=ic_mainboard(old),
    new_embodied=ic_mainboard(new),
    old_op=operational_carbon(old, params, factors),
    new_op=operational_carbon(new, params, factors),
    improvement=improvement,
    lifetime=new.lifetime,
    sunk_policy=SunkPolicy.INCREMENTAL,
)

print(f"upgrade {old.name} -> {new.name} for {profile.application} (r = {improvement:.2f})")
print(f"{'(1+P)':>6} {'tax kg':>8} {'gain kg/yr':>11} {'break-even':>11} {'within life?':>13}")
for p, result in zip([0.0, 1.3, 2.3, 5.81, 6.6, 12.4], p_sweep(base, [0.0, 1.3, 2.3, 5.81, 6.6, 12.4])):
    years = "NEVER" if result.never else f"{result.breakeven_years:.2f} y"
    print(f"{1 + p:>6.2f} {result.carbon_tax:>8.1f} {result.yearly_gain:>11.1f} {years:>11} {str(result.within_lifetime):>13}")

print("\nThe yearly gain never changes; only the upfront tax grows with (1+P),")
print("so the break-even time is proportional to it once the tax is positive.")
