"""Embodied-carbon model: dies, memories, IC packages and whole servers.

A chip's embodied carbon is proportional to die area (CPA coefficient), a
memory device's to capacity (CPC coefficient), and each IC package carries a
fixed cost. Peripheral components (mainboard PWB, risers, chassis, PSU,
fans) are folded in by scaling the IC total with (1 + P).
"""

from dataclasses import dataclass

from .catalog import (
    CarbonFactors,
    ChipSpec,
    MemorySpec,
    MissingDataError,
    ServerSpec,
    ValidationError,
)


@dataclass(frozen=True)
class EmbodiedBreakdown:
    """Embodied carbon of a server, split by component class (kg CO2eq)."""

    chip_carbon: float
    memory_carbon: float
    package_carbon: float
    ic_total: float
    system_total: float
    p_factor_used: float


def chip_carbon(chip: ChipSpec, factors: CarbonFactors) -> float:
    """CPA(node) * die_area * fraction, in kg CO2eq.

    The allocation fraction scales the embodied share linearly: a quarter of
    a die carries a quarter of its manufacturing carbon.
    """
    return factors.cpa(chip.process_node) * chip.die_area * chip.fraction


def memory_carbon(mem: MemorySpec, factors: CarbonFactors) -> float:
    """CPC(kind) * capacity * quantity, in kg CO2eq."""
    return factors.cpc(mem.kind) * mem.capacity * mem.quantity


def server_embodied(server: ServerSpec, factors: CarbonFactors) -> EmbodiedBreakdown:
    """Whole-server embodied carbon: (1 + P) * (chips + memories + packages)."""
    try:
        chips = float(sum(chip_carbon(c, factors) for c in server.chips))
    except MissingDataError as err:
        raise MissingDataError(f"server '{server.name}': {err}") from None
    try:
        memories = float(sum(memory_carbon(m, factors) for m in server.memories))
    except MissingDataError as err:
        raise MissingDataError(f"server '{server.name}': {err}") from None
    packages = factors.package_cost * server.ic_package_count
    ic_total = chips + memories + packages
    return EmbodiedBreakdown(
        chip_carbon=chips,
        memory_carbon=memories,
        package_carbon=packages,
        ic_total=ic_total,
        system_total=(1.0 + server.p_factor) * ic_total,
        p_factor_used=server.p_factor,
    )


@dataclass(frozen=True)
class ReplacedParts:
    """Selection of server components swapped out in a partial upgrade.

    ``chips`` names replaced dies, ``package_count`` counts replaced IC
    packages (fractional counts mirror fractional chip allocations) and
    ``memory_indices`` indexes into ``server.memories`` for replaced storage.
    """

    chips: tuple[str, ...] = ()
    package_count: float = 0.0
    memory_indices: tuple[int, ...] = ()

    @classmethod
    def mainboard(cls, server: ServerSpec) -> "ReplacedParts":
        """Every chip and package, no storage: the mainboard-swap upgrade."""
        return cls(chips=tuple(c.name for c in server.chips), package_count=server.ic_package_count)

    @classmethod
    def everything(cls, server: ServerSpec) -> "ReplacedParts":
        return cls(
            chips=tuple(c.name for c in server.chips),
            package_count=server.ic_package_count,
            memory_indices=tuple(range(len(server.memories))),
        )


def partial_upgrade_embodied(server: ServerSpec, replaced: ReplacedParts, factors: CarbonFactors) -> float:
    """Embodied carbon of only the replaced components, scaled by (1 + P).

    Components outside the selection (typically reused SSD/HDD/DRAM)
    contribute nothing. An empty selection is an error: nothing is replaced.
    """
    if not replaced.chips and replaced.package_count == 0 and not replaced.memory_indices:
        raise ValidationError(f"server '{server.name}': empty replacement selection")
    if replaced.package_count < 0:
        raise ValidationError(f"server '{server.name}': package_count must be >= 0")
    if replaced.package_count > server.ic_package_count:
        raise ValidationError(
            f"server '{server.name}': cannot replace {replaced.package_count} packages, server has {server.ic_package_count}"
        )
    total = factors.package_cost * replaced.package_count
    for name in replaced.chips:
        total += chip_carbon(server.chip(name), factors)
    for idx in replaced.memory_indices:
        if not 0 <= idx < len(server.memories):
            raise ValidationError(f"server '{server.name}': memory index {idx} out of range")
        total += memory_carbon(server.memories[idx], factors)
    return (1.0 + server.p_factor) * total
