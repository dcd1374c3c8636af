"""Spreading embodied carbon over a device's life, and why the method matters.

Linear depreciation charges the same share every year; double-declining
balance (DDB) front-loads at rate 2/lifetime on the remaining book value.
For a buyer choosing between an already-deployed 2020 board and a brand-new
2023 board, the method decides which system looks greener in 2023: linear
attribution favors the new board, DDB bills the new board for its fresh
manufacturing footprint and flips the choice.
"""

from dccarbon import Method, schedule, year_share

print("A 10,000 kg device over 5 years:")
print(f"{'year':>4} {'linear':>8} {'ddb':>8}")
linear = schedule(10000, 5, Method.LINEAR)
ddb = schedule(10000, 5, Method.DDB)
for i, (a, b) in enumerate(zip(linear.amounts, ddb.amounts), start=1):
    print(f"{i:>4} {a:>8.0f} {b:>8.0f}")

# Fleet choice in 2023: an a10g board released in 2020 (throughput-matched
# fleet scale 1.75) against a new rtx5000ada board. Embodied totals are the
# calibration values from the catalog; operational rates are measured-power
# case-study inputs.
a10g_embodied, rtx_embodied = 108.3, 168.4
a10g_op, rtx_op = 179.5, 289.9
scale = 1.75

print("\n2023 attribution for the two candidate fleets (kg CO2eq):")
print(f"{'method':<8} {'a10g share':>11} {'a10g total':>11} {'rtx share':>10} {'rtx total':>10} {'greener':>8}")
for method in (Method.LINEAR, Method.DDB):
    a10g_share = year_share(schedule(a10g_embodied, 5, method), 2020, 2023)
    rtx_share = year_share(schedule(rtx_embodied, 5, method), 2023, 2023)
    a10g_total = scale * (a10g_share + a10g_op)
    rtx_total = rtx_share + rtx_op
    winner = "a10g" if a10g_total < rtx_total else "rtx"
    print(f"{method.value:<8} {a10g_share:>11.2f} {a10g_total:>11.1f} {rtx_share:>10.2f} {rtx_total:>10.1f} {winner:>8}")

print("\nLinear attribution makes the new board look better; DDB charges it")
print("for being new and keeps the depreciated 2020 fleet in front.")
