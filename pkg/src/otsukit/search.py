"""Threshold searches: the exhaustive scan and the triplet bisection maximizer.

The exhaustive baseline evaluates all 256 thresholds. The bisection variant
keeps a bracket (t_low, t_mid, t_high), probes the two half-interval
midpoints t1 = (t_low + t_mid) // 2 and t2 = (t_mid + t_high) // 2 each
iteration, and shrinks the bracket by comparing the three scores:

* keep middle  - sigma(t_mid) >= sigma(t1) and sigma(t_mid) >= sigma(t2);
  the interval becomes [t1, t2]
* move lower   - otherwise, if sigma(t1) >= sigma(t2); the interval becomes
  [t_low, t_mid]
* move upper   - otherwise; the interval becomes [t_mid, t_high]

After every decision t_mid is recomputed as (t_low + t_high) // 2. The
search stops once the interval width drops to `width_stop` (a final
converged step that evaluates nothing) and answers with the best-scoring
member of the last triplet, lowest first on ties. On a strictly unimodal
profile the bracket always contains the true argmax, so the answer matches
the exhaustive scan.

Costs are tracked two ways: `reported_cost` uses the flat three-evaluations-
per-iteration convention (3k, counting the converged step), while
`raw_evaluations` counts actual evaluator calls, which is less because
repeated probe points are cached.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from enum import Enum

from otsukit.errors import DegenerateHistogram, InvalidConfig
from otsukit.histogram import LEVELS

MAX_ITERATIONS = 8  # ceil(log2(256)); holds for any run started at (0, 127, 255)

EXHAUSTIVE = "exhaustive"
BISECTION = "bisection"


class Decision(str, Enum):
    KEEP_MIDDLE = "keep_middle"
    MOVE_LOWER = "move_lower"
    MOVE_UPPER = "move_upper"
    CONVERGED = "converged"


@dataclass(frozen=True)
class TraceStep:
    """One iteration: the bracket at entry, the probes, and the decision."""

    iteration: int
    t_low: int
    t_mid: int
    t_high: int
    t1: int | None
    t2: int | None
    sigma_t1: float | None
    sigma_mid: float | None
    sigma_t2: float | None
    decision: Decision


@dataclass(frozen=True)
class SearchTrace:
    steps: tuple[TraceStep, ...]

    def to_json_lines(self) -> str:
        """One JSON object per step, in iteration order."""
        lines = []
        for step in self.steps:
            record = asdict(step)
            record["decision"] = step.decision.value
            lines.append(json.dumps(record, sort_keys=True))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ThresholdResult:
    threshold: int
    iterations: int
    reported_cost: int
    raw_evaluations: int
    method: str


@dataclass(frozen=True)
class BisectionConfig:
    """Initial bracket and stopping rules for the bisection search.

    `width_stop` ends the search once t_high - t_low is at or below it.
    `plateau_epsilon`, when set, additionally stops an iteration whose three
    probe scores are within a relative band of each other (max - min <=
    plateau_epsilon * max); it is off by default.
    """

    t_low: int = 0
    t_mid: int = 127
    t_high: int = 255
    width_stop: int = 2
    plateau_epsilon: float | None = None

    def __post_init__(self):
        if not (0 <= self.t_low < self.t_mid < self.t_high <= LEVELS - 1):
            raise InvalidConfig(
                f"triplet ({self.t_low}, {self.t_mid}, {self.t_high}) must be "
                "strictly increasing within [0, 255]"
            )
        if self.width_stop < 1:
            raise InvalidConfig("width_stop must be at least 1")
        if self.plateau_epsilon is not None and self.plateau_epsilon < 0:
            raise InvalidConfig("plateau_epsilon must be non-negative")


def candidate_points(t_low: int, t_mid: int, t_high: int) -> tuple[int, int]:
    """The two half-interval probes for a bracket (floor division)."""
    return (t_low + t_mid) // 2, (t_mid + t_high) // 2


def apply_decision(
    t_low: int, t_mid: int, t_high: int, decision: Decision
) -> tuple[int, int, int]:
    """Shrink a bracket according to a decision; t_mid is recomputed."""
    t1, t2 = candidate_points(t_low, t_mid, t_high)
    if decision is Decision.KEEP_MIDDLE:
        t_low, t_high = t1, t2
    elif decision is Decision.MOVE_LOWER:
        t_high = t_mid
    elif decision is Decision.MOVE_UPPER:
        t_low = t_mid
    else:
        raise ValueError("a converged step does not update the bracket")
    return t_low, (t_low + t_high) // 2, t_high


def exhaustive_otsu(ev) -> ThresholdResult:
    """Scan all 256 thresholds; returns the lowest argmax.

    Always performs exactly 256 variance evaluations. Raises
    DegenerateHistogram when fewer than two bins are occupied, in which case
    every threshold scores zero.
    """
    if ev.is_degenerate:
        raise DegenerateHistogram(
            "constant image: all thresholds score zero, no meaningful threshold"
        )
    start = ev.eval_count
    best_t = 0
    best = ev.evaluate(0)
    for t in range(1, LEVELS):
        s = ev.evaluate(t)
        if s > best:
            best_t, best = t, s
    return ThresholdResult(
        threshold=best_t,
        iterations=LEVELS,
        reported_cost=LEVELS,
        raw_evaluations=ev.eval_count - start,
        method=EXHAUSTIVE,
    )


def bisection_otsu(
    ev, config: BisectionConfig | None = None
) -> tuple[ThresholdResult, SearchTrace]:
    """Bracket-shrinking variance maximization with a full trace.

    See the module docstring for the decision rule and cost accounting.
    Raises DegenerateHistogram for single-bin histograms and InvalidConfig
    for malformed brackets.
    """
    cfg = BisectionConfig() if config is None else config
    if ev.is_degenerate:
        raise DegenerateHistogram(
            "constant image: all thresholds score zero, no meaningful threshold"
        )
    start = ev.eval_count
    cache: dict[int, float] = {}

    def sigma(t: int) -> float:
        if t not in cache:
            cache[t] = ev.evaluate(t)
        return cache[t]

    low, mid, high = cfg.t_low, cfg.t_mid, cfg.t_high
    steps: list[TraceStep] = []
    threshold: int | None = None

    while True:
        if high - low <= cfg.width_stop:
            steps.append(
                TraceStep(
                    len(steps) + 1, low, mid, high,
                    None, None, None, None, None, Decision.CONVERGED,
                )
            )
            break
        t1, t2 = candidate_points(low, mid, high)
        s1, sm, s2 = sigma(t1), sigma(mid), sigma(t2)
        if cfg.plateau_epsilon is not None:
            top = max(s1, sm, s2)
            if top - min(s1, sm, s2) <= cfg.plateau_epsilon * top:
                steps.append(
                    TraceStep(
                        len(steps) + 1, low, mid, high,
                        t1, t2, s1, sm, s2, Decision.CONVERGED,
                    )
                )
                threshold = _lowest_argmax(((t1, s1), (mid, sm), (t2, s2)))
                break
        if sm >= s1 and sm >= s2:
            decision = Decision.KEEP_MIDDLE
        elif s1 >= s2:
            decision = Decision.MOVE_LOWER
        else:
            decision = Decision.MOVE_UPPER
        steps.append(
            TraceStep(
                len(steps) + 1, low, mid, high, t1, t2, s1, sm, s2, decision,
            )
        )
        low, mid, high = apply_decision(low, mid, high, decision)

    if threshold is None:
        final = sorted({low, mid, high})  # mid may coincide with low at width 1
        threshold = _lowest_argmax((t, sigma(t)) for t in final)

    result = ThresholdResult(
        threshold=threshold,
        iterations=len(steps),
        reported_cost=3 * len(steps),
        raw_evaluations=ev.eval_count - start,
        method=BISECTION,
    )
    return result, SearchTrace(tuple(steps))


def reduction_factor(result: ThresholdResult) -> float:
    """How many times cheaper than the 256-evaluation scan this run was."""
    return LEVELS / result.reported_cost


def _lowest_argmax(scored) -> int:
    best_t: int | None = None
    best = 0.0
    for t, s in scored:
        if best_t is None or s > best:
            best_t, best = t, s
    assert best_t is not None
    return best_t
