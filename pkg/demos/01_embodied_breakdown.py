"""Embodied carbon of a GPU server, bottom up.

Walks the component model: dies (carbon per mm^2 of silicon), storage
(carbon per GB), IC packages (fixed cost each), then the (1+P) scaling that
lifts the IC total to a whole system with mainboard, chassis, PSU and fans.
The two bare GPU boards at the end reproduce the calibration targets the
shipped CPA table was back-solved from: 108.3 and 168.4 kg CO2eq.
"""

from pathlib import Path

from dccarbon import load_catalog, server_embodied

DATA = Path(__file__).parent / "data"

servers, factors, params = load_catalog(DATA / "catalog.yaml")

print(f"{'server':<18} {'chips':>8} {'memory':>8} {'packages':>9} {'ic_total':>9} {'(1+P)':>6} {'system':>9}")
for server in servers:
    b = server_embodied(server, factors)
    print(
        f"{server.name:<18} {b.chip_carbon:>8.2f} {b.memory_carbon:>8.2f} {b.package_carbon:>9.2f}"
        f" {b.ic_total:>9.2f} {1 + b.p_factor_used:>6.2f} {b.system_total:>9.2f}"
    )

print()
print("Peripheral components dominate: without the (1+P) factor a GPU board")
print("looks like ~14 kg of silicon; as a deployable system it is ~108 kg.")

a10g = server_embodied(next(s for s in servers if s.name == "a10g-board"), factors)
rtx = server_embodied(next(s for s in servers if s.name == "rtx5000ada-board"), factors)
print(f"\na10g-board       whole-system total: {a10g.system_total:.1f} kg CO2eq")
print(f"rtx5000ada-board whole-system total: {rtx.system_total:.1f} kg CO2eq")
