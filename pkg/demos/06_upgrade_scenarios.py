"""Calendar-year upgrade scenarios with depreciated embodied carbon.

Keep the deployed fleet, or swap it for the newer generation at the start
of year 4? Without depreciation the swap shows up as a cliff in the year of
purchase and the curves cross at 6.55 years. Depreciating embodied carbon
(and charging the retired fleet's remaining book value at replacement)
smooths the curves and pulls the crossing to 4.29 years, while lifetime
totals stay identical across methods.
"""

from pathlib import Path

from dccarbon import DeviceCost, Method, scenario

OLD = DeviceCost(embodied=124.0, op_per_year=182.0, lifetime=5)
NEW = DeviceCost(embodied=167.0, op_per_year=135.0, lifetime=5)
UPGRADE_YEAR, HORIZON = 4, 10

tables = {method: scenario(OLD, NEW, UPGRADE_YEAR, HORIZON, method) for method in Method}

print(f"upgrade at start of year {UPGRADE_YEAR}, horizon {HORIZON} years\n")
print(f"{'method':<8} {'crossing':>9} {'keep total':>11} {'upgrade total':>14}")
for method, table in tables.items():
    cross = "none" if table.crossing_years is None else f"{table.crossing_years:.2f} y"
    print(f"{method.value:<8} {cross:>9} {table.keep_cumulative[-1]:>11.1f} {table.upgrade_cumulative[-1]:>14.1f}")

print("\ncumulative carbon by year (NONE method):")
table = tables[Method.NONE]
print(f"{'year':>4} {'keep':>8} {'upgrade':>8}")
for year, keep, upgrade in zip(table.years, table.keep_cumulative, table.upgrade_cumulative):
    marker = "  <- purchase cliff" if year == UPGRADE_YEAR else ""
    print(f"{year:>4} {keep:>8.0f} {upgrade:>8.0f}{marker}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out = Path(__file__).parent / "output"
    out.mkdir(exist_ok=True)
    fig, axes = plt.subplots(1, 3, figsize=(12, 3.5), sharey=True)
    for ax, (method, table) in zip(axes, tables.items()):
        ax.plot(table.years, table.keep_cumulative, marker="o", label="keep")
        ax.plot(table.years, table.upgrade_cumulative, marker="s", label=f"upgrade @ y{UPGRADE_YEAR}")
        if table.crossing_years is not None:
            ax.axvline(table.crossing_years, linestyle=":", color="gray")
        ax.set_title(f"{method.value} (cross {table.crossing_years:.2f} y)" if table.crossing_years else method.value)
        ax.set_xlabel("year")
    axes[0].set_ylabel("cumulative kg CO2eq")
    axes[0].legend()
    fig.tight_layout()
    fig.savefig(out / "upgrade_scenarios.png", dpi=150)
    print(f"\nwrote {out / 'upgrade_scenarios.png'}")
except ImportError:
    print("\n(matplotlib not installed; skipping the plot)")
