"""Profile shape analysis and the exhaustive-versus-bisection harness.

Local maxima of a variance profile are detected plateau-wise: runs of equal
consecutive values collapse into one candidate, which avoids miscounting the
exact ties that discrete profiles of real images contain.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

from otsukit.histogram import LEVELS, build_moments, compute_histogram
from otsukit.imageio import GrayImage
from otsukit.search import BisectionConfig, bisection_otsu, exhaustive_otsu
from otsukit.variance import VarianceEvaluator, VarianceProfile

DEVIATION_BUCKETS = (("0", 0, 0), ("1-2", 1, 2), ("3-5", 3, 5), ("6-10", 6, 10))
# anything past the last bucket edge falls into ">10"


@dataclass(frozen=True)
class UnimodalityReport:
    is_unimodal: bool
    local_maxima: tuple[tuple[int, int], ...]
    argmax_plateau: tuple[int, int]
    init_condition_holds: bool


@dataclass(frozen=True)
class ComparisonRecord:
    """Both searches on one image, plus the derived accuracy/cost fields."""

    image_id: str
    threshold_exhaustive: int
    threshold_bisection: int
    deviation: int
    iterations_exhaustive: int
    iterations_bisection: int
    cost_exhaustive: int
    cost_bisection: int
    reduction_percent: float


@dataclass(frozen=True)
class DeviationBucket:
    label: str
    count: int
    cumulative_percent: float


@dataclass(frozen=True)
class AggregateStats:
    count: int
    cost_mean: float
    cost_min: int
    cost_max: int
    iterations_mean: float
    iterations_min: int
    iterations_max: int
    mean_reduction_percent: float
    deviation_buckets: tuple[DeviationBucket, ...]
    mean_abs_deviation: float
    max_deviation: int


def check_unimodal(profile: VarianceProfile) -> UnimodalityReport:
    """Segment a profile into plateaus and count the local maxima.

    A plateau is a local maximum when it is strictly above both neighboring
    plateaus (one-sided at the boundaries). The profile is unimodal when
    exactly one such plateau exists. Also reports whether the midpoint
    start condition sigma(127) > max(sigma(0), sigma(255)) holds.
    """
    values = profile.values
    plateaus: list[tuple[int, int, float]] = []
    start = 0
    for t in range(1, LEVELS + 1):
        if t == LEVELS or values[t] != values[start]:
            plateaus.append((start, t - 1, values[start]))
            start = t
    maxima = []
    for k, (s, e, v) in enumerate(plateaus):
        above_left = k == 0 or v > plateaus[k - 1][2]
        above_right = k == len(plateaus) - 1 or v > plateaus[k + 1][2]
        if above_left and above_right:
            maxima.append((s, e))
    peak = max(p[2] for p in plateaus)
    argmax_plateau = next((s, e) for s, e, v in plateaus if v == peak)
    return UnimodalityReport(
        is_unimodal=len(maxima) == 1,
        local_maxima=tuple(maxima),
        argmax_plateau=argmax_plateau,
        init_condition_holds=values[127] > max(values[0], values[255]),
    )


def compare(
    image: GrayImage,
    config: BisectionConfig | None = None,
    image_id: str = "",
) -> ComparisonRecord:
    """Run both searches on independent evaluators over one image."""
    moments = build_moments(compute_histogram(image))
    exhaustive = exhaustive_otsu(VarianceEvaluator(moments))
    bisection, _ = bisection_otsu(VarianceEvaluator(moments), config)
    return ComparisonRecord(
        image_id=image_id,
        threshold_exhaustive=exhaustive.threshold,
        threshold_bisection=bisection.threshold,
        deviation=abs(exhaustive.threshold - bisection.threshold),
        iterations_exhaustive=exhaustive.iterations,
        iterations_bisection=bisection.iterations,
        cost_exhaustive=exhaustive.reported_cost,
        cost_bisection=bisection.reported_cost,
        reduction_percent=100.0 * (1.0 - bisection.reported_cost / LEVELS),
    )


def aggregate(records) -> AggregateStats:
    """Dataset-level summary; permutation-invariant over the records."""
    records = list(records)
    if not records:
        raise ValueError("cannot aggregate zero records")
    n = len(records)
    costs = [r.cost_bisection for r in records]
    iters = [r.iterations_bisection for r in records]
    deviations = [r.deviation for r in records]

    buckets = []
    cumulative = 0
    for label, lo, hi in DEVIATION_BUCKETS:
        count = sum(1 for d in deviations if lo <= d <= hi)
        cumulative += count
        buckets.append(DeviationBucket(label, count, 100.0 * cumulative / n))
    over = sum(1 for d in deviations if d > DEVIATION_BUCKETS[-1][2])
    cumulative += over
    buckets.append(DeviationBucket(">10", over, 100.0 * cumulative / n))

    return AggregateStats(
        count=n,
        cost_mean=sum(costs) / n,
        cost_min=min(costs),
        cost_max=max(costs),
        iterations_mean=sum(iters) / n,
        iterations_min=min(iters),
        iterations_max=max(iters),
        mean_reduction_percent=sum(r.reduction_percent for r in records) / n,
        deviation_buckets=tuple(buckets),
        mean_abs_deviation=sum(deviations) / n,
        max_deviation=max(deviations),
    )


def aggregate_by_category(records, category_map) -> tuple[tuple[str, AggregateStats], ...]:
    """Per-category aggregates, sorted by category name.

    `category_map` maps image ids to category names; unmapped images group
    under "uncategorized". Category assignment itself is the caller's job.
    """
    groups: dict[str, list[ComparisonRecord]] = {}
    for record in records:
        name = category_map.get(record.image_id, "uncategorized")
        groups.setdefault(name, []).append(record)
    return tuple((name, aggregate(groups[name])) for name in sorted(groups))


RECORD_FIELDS = (
    "image_id",
    "threshold_exhaustive",
    "threshold_bisection",
    "deviation",
    "iterations_exhaustive",
    "iterations_bisection",
    "cost_exhaustive",
    "cost_bisection",
    "reduction_percent",
)


def record_csv(records, category_map=None) -> str:
    """Records as CSV, one row per image."""
    header = RECORD_FIELDS + (("category",) if category_map is not None else ())
    lines = [",".join(header)]
    for r in records:
        row = (
            f"{r.image_id},{r.threshold_exhaustive},{r.threshold_bisection},"
            f"{r.deviation},{r.iterations_exhaustive},{r.iterations_bisection},"
            f"{r.cost_exhaustive},{r.cost_bisection},{r.reduction_percent:.2f}"
        )
        if category_map is not None:
            row += f",{category_map.get(r.image_id, 'uncategorized')}"
        lines.append(row)
    return "\n".join(lines) + "\n"


def render_report(
    stats: AggregateStats, records, format: str = "csv", category_map=None
) -> str:
    """Serialize a comparison run; formats: csv, markdown, json.

    With a `category_map` (image id to category name) the CSV gains a
    category column and the markdown/json outputs gain a per-category
    summary section.
    """
    records = list(records)
    if format == "csv":
        return record_csv(records, category_map)
    if format == "json":
        payload = {
            "records": [asdict(r) for r in records],
            "aggregate": asdict(stats),
        }
        if category_map is not None:
            payload["categories"] = {
                name: asdict(cat_stats)
                for name, cat_stats in aggregate_by_category(records, category_map)
            }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if format == "markdown":
        return _render_markdown(stats, records, category_map)
    raise ValueError(f"unknown report format: {format!r}")


def _render_markdown(stats: AggregateStats, records, category_map=None) -> str:
    out = [
        "| Image | Threshold (exhaustive) | Threshold (bisection) | "
        "Iterations (exhaustive) | Iterations (bisection) | "
        "Computations (exhaustive) | Computations (bisection) |",
        "|---|---|---|---|---|---|---|",
    ]
    for r in records:
        out.append(
            f"| {r.image_id} | {r.threshold_exhaustive} | "
            f"{r.threshold_bisection} | {r.iterations_exhaustive} | "
            f"{r.iterations_bisection} | {r.cost_exhaustive} | "
            f"{r.cost_bisection} |"
        )
    out += [
        "",
        f"Aggregate over {stats.count} images:",
        "",
        "| Metric | Computations | Iterations |",
        "|---|---|---|",
        "| Exhaustive | 256.0 | 256.0 |",
        f"| Bisection (mean) | {stats.cost_mean:.1f} | {stats.iterations_mean:.1f} |",
        f"| Bisection (minimum) | {stats.cost_min:.1f} | {stats.iterations_min:.1f} |",
        f"| Bisection (maximum) | {stats.cost_max:.1f} | {stats.iterations_max:.1f} |",
        "",
        f"Mean reduction: {stats.mean_reduction_percent:.2f}%",
        "",
        "| Deviation | Images | Cumulative % |",
        "|---|---|---|",
    ]
    for bucket in stats.deviation_buckets:
        out.append(
            f"| {bucket.label} | {bucket.count} | {bucket.cumulative_percent:.2f} |"
        )
    out += [
        "",
        f"Mean absolute deviation: {stats.mean_abs_deviation:.2f} gray levels",
        f"Maximum deviation: {stats.max_deviation} gray levels",
    ]
    if category_map is not None:
        out += [
            "",
            "| Category | Count | Mean iterations | Mean deviation | Efficiency (%) |",
            "|---|---|---|---|---|",
        ]
        for name, cat in aggregate_by_category(records, category_map):
            out.append(
                f"| {name} | {cat.count} | {cat.iterations_mean:.1f} | "
                f"{cat.mean_abs_deviation:.1f} levels | "
                f"{cat.mean_reduction_percent:.1f} |"
            )
    return "\n".join(out) + "\n"
