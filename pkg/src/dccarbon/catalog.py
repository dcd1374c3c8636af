"""Input data model: hardware catalogs, carbon factors and workload profiles.

A catalog is a single YAML document with top-level sections ``servers``,
``factors`` and ``params``. Workload profiles are CSV files with the header::

    application,task_class,system,throughput_ips,measured_gpu_power_w,p99_latency_ms

where the last two columns may be empty per row. A row without a latency
value sets the entry's headline throughput (and, optionally, its measured
GPU power); rows with a latency value contribute (p99 latency, throughput)
operating points to the entry's sample list. An entry that has only latency
rows takes its best sampled throughput as headline.

Everything loaded from a file is validated on the way in: file-level
validation enforces the strict invariants (positive areas, capacities,
utilization bounds), so accepted catalogs never feed missing or out-of-range
values into downstream arithmetic. In-memory construction is slightly more
permissive (zero die area or capacity is allowed) so boundary cases can be
probed directly through the API.

Loaded objects are immutable and safe to share across threads.
"""

import csv
from dataclasses import dataclass, field, asdict
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping

import yaml


class CarbonModelError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(CarbonModelError):
    """A file could not be read or does not match its schema."""


class ValidationError(CarbonModelError):
    """A field value violates an invariant; the message names the field."""


class MissingDataError(CarbonModelError):
    """A lookup failed: unknown factor key, system name or absent measurement."""


class ChipKind(str, Enum):
    CPU = "CPU"
    GPU = "GPU"


class MemoryKind(str, Enum):
    SSD = "SSD"
    HDD = "HDD"
    DRAM = "DRAM"


class PowerMode(str, Enum):
    TDP = "TDP"
    MEASURED = "MEASURED"


class TaskClass(str, Enum):
    CV = "CV"
    NLP = "NLP"
    LLM = "LLM"


#: Grid carbon intensity defaults, kg CO2eq per kWh, by US state.
DEFAULT_CI_BY_REGION = {"AZ": 0.395, "CA": 0.234, "TX": 0.438, "NY": 0.188}

#: Default embodied cost of one IC package, kg CO2eq.
DEFAULT_PACKAGE_COST = 0.15


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ValidationError(message)


@dataclass(frozen=True)
class ChipSpec:
    """A CPU or GPU die allocated (possibly fractionally) to a server.

    ``fraction`` is the share of the physical chip assigned to this server
    (e.g. the allocated vCPU share on a cloud instance); it scales the chip's
    embodied carbon and TDP proportionally. ``estimated`` flags a die area
    that is a placeholder rather than vendor data.
    """

    name: str
    kind: ChipKind
    process_node: int  # nm
    die_area: float  # mm^2
    tdp: float  # W
    release_year: int
    fraction: float = 1.0
    estimated: bool = False

    def __post_init__(self) -> None:
        _require(bool(self.name), "chip name must be non-empty")
        _require(self.process_node > 0, f"chip '{self.name}': process_node must be > 0")
        _require(self.die_area >= 0, f"chip '{self.name}': die_area must be >= 0")
        _require(self.tdp >= 0, f"chip '{self.name}': tdp must be >= 0")
        _require(0 < self.fraction <= 1, f"chip '{self.name}': fraction must be in (0, 1]")


@dataclass(frozen=True)
class MemorySpec:
    """An SSD/HDD/DRAM population: per-device capacity in GB and a count."""

    kind: MemoryKind
    capacity: float  # GB
    quantity: int = 1

    def __post_init__(self) -> None:
        _require(self.capacity >= 0, f"memory {self.kind.value}: capacity must be >= 0")
        _require(self.quantity >= 1, f"memory {self.kind.value}: quantity must be >= 1")


@dataclass(frozen=True)
class ServerSpec:
    """A server: chips, memory devices, IC package count and (1+P) scaling.

    ``p_factor`` is P, the peripheral-component factor; whole-system embodied
    carbon is (1+P) times the IC total. ``ic_package_count`` may be
    fractional so catalogs can encode allocated package shares alongside
    fractional chip allocations.
    """

    name: str
    chips: tuple[ChipSpec, ...]
    memories: tuple[MemorySpec, ...] = ()
    ic_package_count: float = 0.0
    p_factor: float = 0.0
    lifetime: float = 5.0  # years

    def __post_init__(self) -> None:
        _require(bool(self.name), "server name must be non-empty")
        object.__setattr__(self, "chips", tuple(self.chips))
        object.__setattr__(self, "memories", tuple(self.memories))
        _require(self.ic_package_count >= 0, f"server '{self.name}': ic_package_count must be >= 0")
        _require(self.p_factor >= 0, f"server '{self.name}': p_factor must be >= 0")
        _require(self.lifetime > 0, f"server '{self.name}': lifetime must be > 0")

    def chip(self, name: str) -> ChipSpec:
        for c in self.chips:
            if c.name == name:
                return c
        raise MissingDataError(f"server '{self.name}' has no chip named '{name}'")


@dataclass(frozen=True)
class CarbonFactors:
    """Embodied and grid carbon coefficients.

    ``cpa_by_node`` maps a process node (nm) to kg CO2eq per mm^2 of die;
    ``cpc_by_kind`` maps a memory kind to kg CO2eq per GB; ``package_cost``
    is kg CO2eq per IC package; ``ci_by_region`` maps region keys to grid
    carbon intensity in kg CO2eq per kWh.
    """

    cpa_by_node: Mapping[int, float] = field(default_factory=dict)
    cpc_by_kind: Mapping[MemoryKind, float] = field(default_factory=dict)
    package_cost: float = DEFAULT_PACKAGE_COST
    ci_by_region: Mapping[str, float] = field(default_factory=lambda: dict(DEFAULT_CI_BY_REGION))

    def __post_init__(self) -> None:
        object.__setattr__(self, "cpa_by_node", dict(self.cpa_by_node))
        object.__setattr__(self, "cpc_by_kind", dict(self.cpc_by_kind))
        object.__setattr__(self, "ci_by_region", dict(self.ci_by_region))
        for node, v in self.cpa_by_node.items():
            _require(v > 0, f"cpa_by_node[{node}] must be > 0")
        for kind, v in self.cpc_by_kind.items():
            _require(v > 0, f"cpc_by_kind[{kind.value}] must be > 0")
        _require(self.package_cost > 0, "package_cost must be > 0")
        for region, v in self.ci_by_region.items():
            # Zero is meaningful here: a fully renewable grid.
            _require(v >= 0, f"ci_by_region[{region}] must be >= 0")

    def cpa(self, node: int) -> float:
        try:
            return self.cpa_by_node[node]
        except KeyError:
            raise MissingDataError(f"no CPA factor for process node {node} nm") from None

    def cpc(self, kind: MemoryKind) -> float:
        try:
            return self.cpc_by_kind[kind]
        except KeyError:
            raise MissingDataError(f"no CPC factor for memory kind {kind.value}") from None

    def ci(self, region: str) -> float:
        try:
            return self.ci_by_region[region]
        except KeyError:
            raise MissingDataError(f"no carbon intensity for region '{region}'") from None


@dataclass(frozen=True)
class OperationalParams:
    """Knobs for the operational-carbon model.

    ``utilization`` is the fraction of time spent in active mode;
    ``idle_fraction`` expresses idle power as a fraction of TDP-mode active
    power. ``power_mode`` selects TDP or measured GPU power.
    """

    utilization: float = 0.3
    idle_fraction: float = 0.10
    region: str = "NY"
    horizon: float = 5.0  # years
    power_mode: PowerMode = PowerMode.TDP

    def __post_init__(self) -> None:
        _require(0 <= self.utilization <= 1, "utilization must be in [0, 1]")
        _require(0 <= self.idle_fraction <= 1, "idle_fraction must be in [0, 1]")
        _require(self.horizon > 0, "horizon must be > 0")


@dataclass(frozen=True)
class ProfileEntry:
    """One system's measurements for an application.

    ``latency_samples`` holds (p99 latency ms, throughput ips) operating
    points from a concurrency sweep; empty when only headline throughput was
    recorded.
    """

    system: str
    throughput: float  # inferences/second
    measured_gpu_power: float | None = None  # W
    latency_samples: tuple[tuple[float, float], ...] = ()

    def __post_init__(self) -> None:
        _require(self.throughput > 0, f"entry '{self.system}': throughput must be > 0")
        if self.measured_gpu_power is not None:
            _require(self.measured_gpu_power > 0, f"entry '{self.system}': measured_gpu_power must be > 0")
        for lat, thr in self.latency_samples:
            _require(lat > 0 and thr > 0, f"entry '{self.system}': latency samples must have positive coordinates")


@dataclass(frozen=True)
class WorkloadProfile:
    """Per-application measurements across systems."""

    application: str
    task_class: TaskClass
    entries: tuple[ProfileEntry, ...]

    def entry_for(self, system: str) -> ProfileEntry:
        for e in self.entries:
            if e.system == system:
                return e
        raise MissingDataError(f"profile '{self.application}' has no entry for system '{system}'")

    def has_entry(self, system: str) -> bool:
        return any(e.system == system for e in self.entries)


# ---------------------------------------------------------------------------
# Catalog loading
# ---------------------------------------------------------------------------

_CHIP_KEYS = {"name", "kind", "process_node", "die_area", "tdp", "release_year", "fraction", "estimated"}
_MEMORY_KEYS = {"kind", "capacity", "quantity"}
_SERVER_KEYS = {"name", "chips", "memories", "ic_package_count", "p_factor", "lifetime"}
_FACTOR_KEYS = {"cpa_by_node", "cpc_by_kind", "package_cost", "ci_by_region"}
_PARAM_KEYS = {"utilization", "idle_fraction", "region", "horizon", "power_mode"}


def _ctx(path: Path, where: str) -> str:
    return f"{path}: {where}"


def _as_mapping(obj, path: Path, where: str) -> dict:
    if not isinstance(obj, dict):
        raise ParseError(_ctx(path, f"{where} must be a mapping"))
    return obj


def _enum(value, enum_cls, path: Path, where: str):
    try:
        return enum_cls(value)
    except ValueError:
        allowed = ", ".join(m.value for m in enum_cls)
        raise ValidationError(_ctx(path, f"{where}: '{value}' is not one of {allowed}")) from None


def _check_keys(mapping: dict, allowed: set, path: Path, where: str) -> None:
    unknown = set(mapping) - allowed
    if unknown:
        raise ValidationError(_ctx(path, f"{where}: unknown field(s) {sorted(unknown)}"))


def _load_chip(raw: dict, path: Path, server: str) -> ChipSpec:
    where = f"server '{server}' chip"
    _check_keys(raw, _CHIP_KEYS, path, where)
    name = raw.get("name")
    if not name:
        raise ValidationError(_ctx(path, f"{where}: name required"))
    where = f"server '{server}' chip '{name}'"
    if "die_area" not in raw:
        raise ValidationError(
            _ctx(path, f"{where}: die_area required or estimate flag (supply a placeholder area with estimated: true)")
        )
    for key in ("kind", "process_node", "tdp", "release_year"):
        if key not in raw:
            raise ValidationError(_ctx(path, f"{where}: {key} required"))
    try:
        chip = ChipSpec(
            name=str(name),
            kind=_enum(raw["kind"], ChipKind, path, f"{where} kind"),
            process_node=int(raw["process_node"]),
            die_area=float(raw["die_area"]),
            tdp=float(raw["tdp"]),
            release_year=int(raw["release_year"]),
            fraction=float(raw.get("fraction", 1.0)),
            estimated=bool(raw.get("estimated", False)),
        )
    except ValidationError as err:
        raise ValidationError(_ctx(path, str(err))) from None
    # File-level invariants are strict: placeholder zeros are not accepted.
    if chip.die_area <= 0:
        raise ValidationError(_ctx(path, f"{where}: die_area must be > 0"))
    if chip.tdp <= 0:
        raise ValidationError(_ctx(path, f"{where}: tdp must be > 0"))
    return chip


def _load_memory(raw: dict, path: Path, server: str) -> MemorySpec:
    where = f"server '{server}' memory"
    _check_keys(raw, _MEMORY_KEYS, path, where)
    for key in ("kind", "capacity"):
        if key not in raw:
            raise ValidationError(_ctx(path, f"{where}: {key} required"))
    try:
        mem = MemorySpec(
            kind=_enum(raw["kind"], MemoryKind, path, f"{where} kind"),
            capacity=float(raw["capacity"]),
            quantity=int(raw.get("quantity", 1)),
        )
    except ValidationError as err:
        raise ValidationError(_ctx(path, str(err))) from None
    if mem.capacity <= 0:
        raise ValidationError(_ctx(path, f"{where} {mem.kind.value}: capacity must be > 0"))
    return mem


def _load_server(raw: dict, path: Path) -> ServerSpec:
    raw = _as_mapping(raw, path, "server entry")
    name = raw.get("name")
    if not name:
        raise ValidationError(_ctx(path, "server entry: name required"))
    _check_keys(raw, _SERVER_KEYS, path, f"server '{name}'")
    chips_raw = raw.get("chips", [])
    if not isinstance(chips_raw, list):
        raise ParseError(_ctx(path, f"server '{name}': chips must be a list"))
    mems_raw = raw.get("memories", [])
    if not isinstance(mems_raw, list):
        raise ParseError(_ctx(path, f"server '{name}': memories must be a list"))
    try:
        return ServerSpec(
            name=str(name),
            chips=tuple(_load_chip(_as_mapping(c, path, f"server '{name}' chip"), path, str(name)) for c in chips_raw),
            memories=tuple(_load_memory(_as_mapping(m, path, f"server '{name}' memory"), path, str(name)) for m in mems_raw),
            ic_package_count=float(raw.get("ic_package_count", 0.0)),
            p_factor=float(raw.get("p_factor", 0.0)),
            lifetime=float(raw.get("lifetime", 5.0)),
        )
    except ValidationError as err:
        msg = str(err)
        raise ValidationError(msg if str(path) in msg else _ctx(path, msg)) from None


def _load_factors(raw: dict, path: Path) -> CarbonFactors:
    _check_keys(raw, _FACTOR_KEYS, path, "factors")
    cpa = {}
    for node, v in _as_mapping(raw.get("cpa_by_node", {}), path, "factors.cpa_by_node").items():
        cpa[int(node)] = float(v)
    cpc = {}
    for kind, v in _as_mapping(raw.get("cpc_by_kind", {}), path, "factors.cpc_by_kind").items():
        cpc[_enum(kind, MemoryKind, path, "factors.cpc_by_kind key")] = float(v)
    ci = dict(DEFAULT_CI_BY_REGION)
    ci.update({str(k): float(v) for k, v in _as_mapping(raw.get("ci_by_region", {}), path, "factors.ci_by_region").items()})
    for region, value in ci.items():
        if value <= 0:
            raise ValidationError(_ctx(path, f"factors.ci_by_region[{region}] must be > 0"))
    try:
        return CarbonFactors(
            cpa_by_node=cpa,
            cpc_by_kind=cpc,
            package_cost=float(raw.get("package_cost", DEFAULT_PACKAGE_COST)),
            ci_by_region=ci,
        )
    except ValidationError as err:
        raise ValidationError(_ctx(path, f"factors: {err}")) from None


def _load_params(raw: dict, path: Path) -> OperationalParams:
    _check_keys(raw, _PARAM_KEYS, path, "params")
    try:
        return OperationalParams(
            utilization=float(raw.get("utilization", 0.3)),
            idle_fraction=float(raw.get("idle_fraction", 0.10)),
            region=str(raw.get("region", "NY")),
            horizon=float(raw.get("horizon", 5.0)),
            power_mode=_enum(raw.get("power_mode", "TDP"), PowerMode, path, "params.power_mode"),
        )
    except ValidationError as err:
        raise ValidationError(_ctx(path, f"params: {err}")) from None


def load_catalog(path: str | Path) -> tuple[list[ServerSpec], CarbonFactors, OperationalParams]:
    """Load and validate a catalog file.

    Returns ``(servers, factors, params)``. Raises :class:`ParseError` for a
    malformed file, :class:`ValidationError` naming the offending field, and
    :class:`MissingDataError` when a chip's process node, a memory kind or
    the configured region has no factor entry (caught at load so downstream
    lookups cannot fail).
    """
    path = Path(path)
    if not path.exists():
        raise ParseError(f"catalog file not found: {path}")
    try:
        doc = yaml.safe_load(path.read_text())
    except yaml.YAMLError as err:
        raise ParseError(f"{path}: not valid YAML: {err}") from None
    doc = _as_mapping(doc, path, "catalog document")
    unknown = set(doc) - {"servers", "factors", "params"}
    if unknown:
        raise ValidationError(_ctx(path, f"unknown top-level section(s) {sorted(unknown)}"))

    servers_raw = doc.get("servers", [])
    if not isinstance(servers_raw, list):
        raise ParseError(_ctx(path, "servers must be a list"))
    servers = [_load_server(s, path) for s in servers_raw]
    names = [s.name for s in servers]
    dupes = {n for n in names if names.count(n) > 1}
    if dupes:
        raise ValidationError(_ctx(path, f"duplicate server name(s): {sorted(dupes)}"))

    factors = _load_factors(_as_mapping(doc.get("factors", {}), path, "factors"), path)
    params = _load_params(_as_mapping(doc.get("params", {}), path, "params"), path)

    # Cross-checks: every factor needed later must resolve now.
    for server in servers:
        for chip in server.chips:
            if chip.process_node not in factors.cpa_by_node:
                raise MissingDataError(
                    _ctx(path, f"server '{server.name}' chip '{chip.name}': no CPA factor for process node {chip.process_node} nm")
                )
        for mem in server.memories:
            if mem.kind not in factors.cpc_by_kind:
                raise MissingDataError(
                    _ctx(path, f"server '{server.name}': no CPC factor for memory kind {mem.kind.value}")
                )
    if params.region not in factors.ci_by_region:
        raise MissingDataError(_ctx(path, f"params.region '{params.region}' has no carbon-intensity entry"))
    return servers, factors, params


def load_factors_file(path: str | Path) -> CarbonFactors:
    """Load carbon factors from a YAML file.

    Accepts either a full catalog document (its ``factors`` section is used)
    or a bare factors mapping.
    """
    path = Path(path)
    if not path.exists():
        raise ParseError(f"factors file not found: {path}")
    try:
        doc = yaml.safe_load(path.read_text())
    except yaml.YAMLError as err:
        raise ParseError(f"{path}: not valid YAML: {err}") from None
    doc = _as_mapping(doc, path, "factors document")
    if "factors" in doc:
        doc = _as_mapping(doc["factors"], path, "factors")
    return _load_factors(doc, path)


def estimated_die_areas(servers: Iterable[ServerSpec]) -> list[tuple[str, str, float]]:
    """(server, chip, die_area) triples whose areas are flagged as estimates."""
    return [(s.name, c.name, c.die_area) for s in servers for c in s.chips if c.estimated]


def catalog_to_mapping(servers: Iterable[ServerSpec], factors: CarbonFactors, params: OperationalParams) -> dict:
    """Plain-dict form of a catalog, suitable for YAML serialization."""
    server_list = []
    for s in servers:
        entry = asdict(s)
        entry["chips"] = [{**asdict(c), "kind": c.kind.value} for c in s.chips]
        entry["memories"] = [{**asdict(m), "kind": m.kind.value} for m in s.memories]
        server_list.append(entry)
    return {
        "servers": server_list,
        "factors": {
            "cpa_by_node": dict(factors.cpa_by_node),
            "cpc_by_kind": {k.value: v for k, v in factors.cpc_by_kind.items()},
            "package_cost": factors.package_cost,
            "ci_by_region": dict(factors.ci_by_region),
        },
        "params": {
            "utilization": params.utilization,
            "idle_fraction": params.idle_fraction,
            "region": params.region,
            "horizon": params.horizon,
            "power_mode": params.power_mode.value,
        },
    }


def save_catalog(path: str | Path, servers: Iterable[ServerSpec], factors: CarbonFactors, params: OperationalParams) -> None:
    """Write a catalog back to YAML; loading the result reproduces all fields."""
    Path(path).write_text(yaml.safe_dump(catalog_to_mapping(servers, factors, params), sort_keys=False))


# ---------------------------------------------------------------------------
# Profile loading
# ---------------------------------------------------------------------------

PROFILE_HEADER = ["application", "task_class", "system", "throughput_ips", "measured_gpu_power_w", "p99_latency_ms"]


def _opt_float(text: str | None, path: Path, row: int, col: str) -> float | None:
    if text is None or text.strip() == "":
        return None
    try:
        return float(text)
    except ValueError:
        raise ParseError(f"{path}: row {row}: {col} is not a number: '{text}'") from None


def load_profiles(path: str | Path, known_systems: Iterable[str] | None = None) -> list[WorkloadProfile]:
    """Load workload profiles from CSV, grouped by application.

    When ``known_systems`` is given, any row naming another system is
    rejected. Throughputs must be positive; an application's task class must
    be consistent across its rows.
    """
    path = Path(path)
    if not path.exists():
        raise ParseError(f"profile file not found: {path}")
    known = set(known_systems) if known_systems is not None else None

    # application -> (task_class, system -> [headline, power, samples])
    apps: dict[str, TaskClass] = {}
    data: dict[str, dict[str, list]] = {}
    order: list[str] = []

    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            return []
        if [c.strip() for c in reader.fieldnames] != PROFILE_HEADER:
            raise ParseError(f"{path}: header must be '{','.join(PROFILE_HEADER)}'")
        for i, row in enumerate(reader, start=2):
            app = (row["application"] or "").strip()
            system = (row["system"] or "").strip()
            if not app or not system:
                raise ValidationError(f"{path}: row {i}: application and system required")
            if known is not None and system not in known:
                raise ValidationError(f"{path}: row {i}: unknown system name '{system}'")
            try:
                task = TaskClass(row["task_class"].strip())
            except ValueError:
                raise ValidationError(f"{path}: row {i}: task_class '{row['task_class']}' is not one of CV, NLP, LLM") from None
            if app in apps and apps[app] is not task:
                raise ValidationError(f"{path}: row {i}: application '{app}' has conflicting task_class")
            throughput = _opt_float(row["throughput_ips"], path, i, "throughput_ips")
            if throughput is None:
                raise ValidationError(f"{path}: row {i}: throughput_ips required")
            if throughput <= 0:
                raise ValidationError(f"{path}: row {i}: throughput_ips must be > 0")
            power = _opt_float(row["measured_gpu_power_w"], path, i, "measured_gpu_power_w")
            latency = _opt_float(row["p99_latency_ms"], path, i, "p99_latency_ms")
            if latency is not None and latency <= 0:
                raise ValidationError(f"{path}: row {i}: p99_latency_ms must be > 0")

            if app not in apps:
                apps[app] = task
                data[app] = {}
                order.append(app)
            per_system = data[app].setdefault(system, [None, None, []])
            if latency is None:
                if per_system[0] is not None:
                    raise ValidationError(f"{path}: row {i}: duplicate headline row for ('{app}', '{system}')")
                per_system[0] = throughput
            else:
                per_system[2].append((latency, throughput))
            if power is not None:
                if per_system[1] is not None and per_system[1] != power:
                    raise ValidationError(f"{path}: row {i}: conflicting measured_gpu_power_w for ('{app}', '{system}')")
                per_system[1] = power

    profiles = []
    for app in order:
        entries = []
        for system, (headline, power, samples) in data[app].items():
            throughput = headline if headline is not None else max(t for _, t in samples)
            entries.append(
                ProfileEntry(
                    system=system,
                    throughput=throughput,
                    measured_gpu_power=power,
                    latency_samples=tuple(samples),
                )
            )
        profiles.append(WorkloadProfile(application=app, task_class=apps[app], entries=tuple(entries)))
    return profiles


def save_profiles(path: str | Path, profiles: Iterable[WorkloadProfile]) -> None:
    """Write profiles back to CSV in the documented schema."""
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(PROFILE_HEADER)
        for profile in profiles:
            for entry in profile.entries:
                power = "" if entry.measured_gpu_power is None else repr(entry.measured_gpu_power)
                writer.writerow([profile.application, profile.task_class.value, entry.system, repr(entry.throughput), power, ""])
                for lat, thr in entry.latency_samples:
                    writer.writerow([profile.application, profile.task_class.value, entry.system, repr(thr), "", repr(lat)])
