"""Statistics over vendor carbon-footprint reports and cross-tool gaps.

Vendor product-carbon reports are noisy: fields go missing, one vendor mixes
device generations in a single column, and different estimation tools
disagree per component. This module provides the analysis pieces for that
data: ordinary least squares with R-squared, a two-trendline splitter for
mixed populations, and per-category gap reports between two breakdowns.
"""

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .catalog import ParseError, ValidationError

#: Multi-start count and RNG seed for the two-line splitter; fixed so that
#: repeated runs on the same data give byte-identical results.
DEFAULT_SPLIT_STARTS = 16
DEFAULT_SPLIT_SEED = 20240915


@dataclass(frozen=True)
class LineFit:
    slope: float
    intercept: float
    r_squared: float
    ss_res: float
    n_points: int


@dataclass(frozen=True)
class ReportRow:
    """One vendor product-carbon report; unreported fields stay None."""

    vendor: str
    server: str
    release_year: int | None = None
    cpu_count: float | None = None
    cores_per_cpu: float | None = None
    dram_gb: float | None = None
    ssd_gb: float | None = None
    ssd_quantity: float | None = None
    hdd_gb: float | None = None
    hdd_quantity: float | None = None
    embodied_total: float | None = None  # kg CO2eq

    def __post_init__(self) -> None:
        if self.embodied_total is not None and self.embodied_total <= 0:
            raise ValidationError(f"report {self.vendor}/{self.server}: embodied_total must be > 0")


@dataclass(frozen=True)
class BreakdownReport:
    """Named component categories mapped to kg CO2eq, e.g. one tool's view
    of one server."""

    label: str
    categories: dict[str, float]

    def __post_init__(self) -> None:
        for name, value in self.categories.items():
            if value < 0:
                raise ValidationError(f"breakdown '{self.label}': category '{name}' must be >= 0")

    @property
    def total(self) -> float:
        return sum(self.categories.values())


def ols_fit(points: Sequence[tuple[float, float]]) -> LineFit:
    """Least-squares line through (x, y) points, with R-squared.

    When y has no variance at all, R-squared is reported as 1 for an exact
    fit and 0 otherwise (the SS_tot = 0 convention).
    """
    if len(points) < 2:
        raise ValidationError(f"ols_fit needs at least 2 points, got {len(points)}")
    x = np.asarray([p[0] for p in points], dtype=float)
    y = np.asarray([p[1] for p in points], dtype=float)
    sxx = float(np.sum((x - x.mean()) ** 2))
    if sxx == 0.0:
        raise ValidationError("ols_fit: x values have zero variance")
    slope = float(np.sum((x - x.mean()) * (y - y.mean())) / sxx)
    intercept = float(y.mean() - slope * x.mean())
    residuals = y - (slope * x + intercept)
    ss_res = float(np.sum(residuals**2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        r2 = 1.0 if ss_res == 0.0 else 0.0
    else:
        r2 = 1.0 - ss_res / ss_tot
    return LineFit(slope=slope, intercept=intercept, r_squared=r2, ss_res=ss_res, n_points=len(points))


def _try_fit(x: np.ndarray, y: np.ndarray) -> LineFit | None:
    if len(x) < 2 or float(np.sum((x - x.mean()) ** 2)) == 0.0:
        return None
    return ols_fit(list(zip(x.tolist(), y.tolist())))


def two_line_split(
    points: Sequence[tuple[float, float]],
    n_starts: int = DEFAULT_SPLIT_STARTS,
    seed: int = DEFAULT_SPLIT_SEED,
    max_iter: int = 100,
) -> tuple[list[int], tuple[LineFit, LineFit]]:
    """Partition points into two linear trends.

    Alternates between assigning each point to the line with the smaller
    vertical residual and refitting both lines, from ``n_starts`` random
    initializations plus one seeded by the single-line fit's residual signs
    (which guarantees the combined SS_res never exceeds the single-line
    SS_res). Returns per-point group labels and the two fits, ordered by
    (slope, intercept) for determinism.
    """
    if len(points) < 4:
        raise ValidationError(f"two_line_split needs at least 4 points, got {len(points)}")
    x = np.asarray([p[0] for p in points], dtype=float)
    y = np.asarray([p[1] for p in points], dtype=float)
    n = len(points)
    single = ols_fit(points)

    rng = np.random.default_rng(seed)
    residual_sign = ((y - (single.slope * x + single.intercept)) >= 0).astype(int)
    if residual_sign.min() == residual_sign.max():
        # Exact-fit data has one residual sign; split at the median x instead.
        # Refitting any full partition already guarantees combined SS_res less
        # than or equal to the single-line SS_res.
        residual_sign = (x > np.median(x)).astype(int)
        if residual_sign.min() == residual_sign.max():
            residual_sign = (np.arange(n) % 2).astype(int)
    starts: list[np.ndarray] = [residual_sign]
    for _ in range(n_starts):
        starts.append(rng.integers(0, 2, size=n))

    def converge(labels: np.ndarray):
        fit_a = _try_fit(x[labels == 0], y[labels == 0])
        fit_b = _try_fit(x[labels == 1], y[labels == 1])
        if fit_a is None or fit_b is None:
            return None
        for _ in range(max_iter):
            res_a = np.abs(y - (fit_a.slope * x + fit_a.intercept))
            res_b = np.abs(y - (fit_b.slope * x + fit_b.intercept))
            new_labels = (res_b < res_a).astype(int)
            if np.array_equal(new_labels, labels):
                break
            new_a = _try_fit(x[new_labels == 0], y[new_labels == 0])
            new_b = _try_fit(x[new_labels == 1], y[new_labels == 1])
            if new_a is None or new_b is None:
                break  # degenerate update; keep the last good partition
            labels, fit_a, fit_b = new_labels, new_a, new_b
        return labels, fit_a, fit_b

    best: tuple[float, int, np.ndarray, LineFit, LineFit] | None = None
    for start_index, start in enumerate(starts):
        result = converge(start.copy())
        if result is None:
            continue  # the initial partition was unfittable; try the next start
        labels, fit_a, fit_b = result
        combined = fit_a.ss_res + fit_b.ss_res
        if best is None or combined < best[0]:
            best = (combined, start_index, labels, fit_a, fit_b)
    if best is None:
        raise ValidationError("two_line_split: no start produced two fittable groups")

    _, _, labels, fit_a, fit_b = best
    if (fit_b.slope, fit_b.intercept) < (fit_a.slope, fit_a.intercept):
        fit_a, fit_b = fit_b, fit_a
        labels = 1 - labels
    return labels.tolist(), (fit_a, fit_b)


@dataclass(frozen=True)
class GapReport:
    """Per-category comparison of two breakdowns (ratios are b over a)."""

    label_a: str
    label_b: str
    rows: tuple[tuple[str, float, float, float], ...]  # (category, a, b, b/a)
    only_in_a: tuple[tuple[str, float], ...]
    only_in_b: tuple[tuple[str, float], ...]
    total_a: float
    total_b: float

    @property
    def overall_ratio(self) -> float:
        return self.total_b / self.total_a


def gap_report(a: BreakdownReport, b: BreakdownReport) -> GapReport:
    """Category-by-category gap between two breakdowns of the same system.

    Shared categories get a b/a ratio; categories present in only one report
    are listed separately but still count toward the totals.
    """
    if not a.categories or not b.categories:
        raise ValidationError("gap_report requires non-empty breakdowns")
    shared = [k for k in a.categories if k in b.categories]
    rows = tuple((k, a.categories[k], b.categories[k], b.categories[k] / a.categories[k]) for k in shared)
    only_a = tuple((k, v) for k, v in a.categories.items() if k not in b.categories)
    only_b = tuple((k, v) for k, v in b.categories.items() if k not in a.categories)
    return GapReport(
        label_a=a.label,
        label_b=b.label,
        rows=rows,
        only_in_a=only_a,
        only_in_b=only_b,
        total_a=a.total,
        total_b=b.total,
    )


# ---------------------------------------------------------------------------
# File loading
# ---------------------------------------------------------------------------

REPORT_HEADER = [
    "vendor",
    "server",
    "release_year",
    "cpu_count",
    "cores_per_cpu",
    "dram_gb",
    "ssd_gb",
    "ssd_quantity",
    "hdd_gb",
    "hdd_quantity",
    "embodied_total_kg",
]

ROW_FIELD_BY_COLUMN = {
    "release_year": "release_year",
    "cpu_count": "cpu_count",
    "cores_per_cpu": "cores_per_cpu",
    "dram_gb": "dram_gb",
    "ssd_gb": "ssd_gb",
    "ssd_quantity": "ssd_quantity",
    "hdd_gb": "hdd_gb",
    "hdd_quantity": "hdd_quantity",
    "embodied_total_kg": "embodied_total",
}


def load_report_rows(path: str | Path) -> list[ReportRow]:
    """Load vendor report rows from CSV; empty cells become None."""
    path = Path(path)
    if not path.exists():
        raise ParseError(f"report file not found: {path}")
    rows = []
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or [c.strip() for c in reader.fieldnames] != REPORT_HEADER:
            raise ParseError(f"{path}: header must be '{','.join(REPORT_HEADER)}'")
        for i, raw in enumerate(reader, start=2):
            kwargs = {}
            for column, field_name in ROW_FIELD_BY_COLUMN.items():
                text = (raw[column] or "").strip()
                if not text:
                    kwargs[field_name] = None
                    continue
                try:
                    kwargs[field_name] = int(text) if field_name == "release_year" else float(text)
                except ValueError:
                    raise ParseError(f"{path}: row {i}: {column} is not a number: '{text}'") from None
            try:
                rows.append(ReportRow(vendor=raw["vendor"].strip(), server=raw["server"].strip(), **kwargs))
            except ValidationError as err:
                raise ValidationError(f"{path}: row {i}: {err}") from None
    return rows


def xy_points(
    rows: Iterable[ReportRow],
    x_field: str,
    y_field: str = "embodied_total",
) -> tuple[list[tuple[float, float]], int, int]:
    """Extract (x, y) pairs for a fit, skipping rows with missing fields.

    Returns (points, used, total): coverage counts so the caller can report
    how much of the corpus actually backed the fit.
    """
    points = []
    total = 0
    for row in rows:
        total += 1
        x = getattr(row, x_field)
        y = getattr(row, y_field)
        if x is not None and y is not None:
            points.append((float(x), float(y)))
    return points, len(points), total


def load_breakdown(path: str | Path) -> BreakdownReport:
    """Load a component breakdown from CSV with header ``category,kg_co2eq``."""
    path = Path(path)
    if not path.exists():
        raise ParseError(f"breakdown file not found: {path}")
    categories: dict[str, float] = {}
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or [c.strip() for c in reader.fieldnames] != ["category", "kg_co2eq"]:
            raise ParseError(f"{path}: header must be 'category,kg_co2eq'")
        for i, raw in enumerate(reader, start=2):
            name = raw["category"].strip()
            if not name:
                raise ValidationError(f"{path}: row {i}: category required")
            if name in categories:
                raise ValidationError(f"{path}: row {i}: duplicate category '{name}'")
            try:
                categories[name] = float(raw["kg_co2eq"])
            except ValueError:
                raise ParseError(f"{path}: row {i}: kg_co2eq is not a number: '{raw['kg_co2eq']}'") from None
    try:
        return BreakdownReport(label=path.stem, categories=categories)
    except ValidationError as err:
        raise ValidationError(f"{path}: {err}") from None
