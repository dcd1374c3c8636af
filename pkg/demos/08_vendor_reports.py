"""What vendor carbon reports will and won't support statistically.

Product carbon footprint reports are the natural calibration source for
embodied models, but the data is uneven: fields go missing, one vendor
mixes drive generations in a single column, and different estimation tools
disagree per component. Three probes below: a clean linear trend (HDD
count), a mixed population that only splits into two trendlines (SSD
count), and a category-by-category gap report between two tools' views of
the same server.
"""

from pathlib import Path

from dccarbon import gap_report, load_breakdown, load_report_rows, ols_fit, two_line_split, xy_points

DATA = Path(__file__).parent / "data"

rows = load_report_rows(DATA / "vendor" / "vendor_reports.csv")
print(f"loaded {len(rows)} vendor report rows")

points, used, total = xy_points(rows, "hdd_quantity")
fit = ols_fit(points)
print(f"\nHDD count vs embodied kg ({used}/{total} rows usable):")
print(f"  slope {fit.slope:.1f} kg/drive, R^2 = {fit.r_squared:.3f}  (a clean linear story)")

points, used, total = xy_points(rows, "ssd_quantity")
single = ols_fit(points)
labels, (fit_a, fit_b) = two_line_split(points)
print(f"\nSSD count vs embodied kg ({used}/{total} rows usable):")
print(f"  one line:  R^2 = {single.r_squared:.3f}  (no linear story at all)")
print(f"  two lines: R^2 = {fit_b.r_squared:.3f} on {labels.count(1)} rows, {fit_a.r_squared:.3f} on {labels.count(0)} rows")
print(f"  combined residual sum of squares drops {single.ss_res / (fit_a.ss_res + fit_b.ss_res):.1f}x:")
print("  the vendor is mixing at least two SSD populations in one column.")

act = load_breakdown(DATA / "gap" / "act_r740.csv")
paia = load_breakdown(DATA / "gap" / "paia_r740.csv")
report = gap_report(act, paia)
print(f"\nper-category gap, {report.label_a} vs {report.label_b} (same rack server):")
for name, a, b, ratio in report.rows:
    print(f"  {name:<14} {a:>8.2f} {b:>8.2f}  x{ratio:.2f}")
for name, value in report.only_in_b:
    print(f"  {name:<14} {'-':>8} {value:>8.2f}  (omitted by {report.label_a})")
print(f"  {'total':<14} {report.total_a:>8.2f} {report.total_b:>8.2f}  x{report.overall_ratio:.2f}")
print("\nThe die-only view underestimates the mainboard complex 7.6x and the")
print("whole system 2.26x; that multiple is exactly the (1+P) factor the")
print("embodied model exposes.")
