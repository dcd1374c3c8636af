"""The application decides whether an upgrade is worth it.

Break-even analysis is throughput-matched: if the new system is 1.32x
faster on vision models, the kept fleet must grow 1.32x to compare fairly.
Different task classes see very different speedups from the same hardware
swap, so the same upgrade can pay off in a year for one workload and never
pay off for another.
"""

from pathlib import Path

from dccarbon import TaskClass, group_improvement, load_catalog, load_profiles, workload_break_even

DATA = Path(__file__).parent / "data"

servers, factors, params = load_catalog(DATA / "catalog.yaml")
by_name = {s.name: s for s in servers}
profiles = load_profiles(DATA / "profiles.csv", known_systems=by_name)

for old_name, new_name in [("system1", "system2"), ("system3", "system4")]:
    print(f"\nupgrade {old_name} -> {new_name}")
    print(f"{'group':<8} {'improvement':>12} {'break-even':>12}")
    anchor = next(p for p in profiles if p.has_entry(old_name) and p.has_entry(new_name))
    for label, klass in [("overall", None), ("CV", TaskClass.CV), ("NLP", TaskClass.NLP), ("LLM", TaskClass.LLM)]:
        r = group_improvement(profiles, old_name, new_name, klass)
        result = workload_break_even(by_name[old_name], by_name[new_name], anchor, factors, params, improvement=r)
        years = "NEVER" if result.never else f"{result.breakeven_years:.2f} y"
        print(f"{label:<8} {r:>11.2f}x {years:>12}")

print("\nThe NLP group actually ran slower on the newer pair (0.94x), so no")
print("embodied tax can ever be recovered: the upgrade never breaks even.")
