"""Between-class variance evaluation with call counting.

For a threshold t the score is ``w0 * w1 * (mu1 - mu0)**2`` where w0/w1 are
the probability masses of the classes below and at-or-above t and mu0/mu1
their mean intensities. Thresholds that leave one class empty score 0, which
makes the argmax total over the whole intensity range.

``direct_sigma`` recomputes the same quantity by fresh summation over the
histogram on every call. It shares nothing with the prefix-table path and
exists as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from operator import mul

from otsukit.histogram import LEVELS, Histogram, MomentTable, build_moments


@dataclass(frozen=True)
class VarianceProfile:
    """The variance score at every threshold in [0, 255]."""

    values: tuple[float, ...]

    def argmax(self) -> int:
        """Lowest threshold with the maximal score."""
        best_t = 0
        best = self.values[0]
        for t in range(1, LEVELS):
            if self.values[t] > best:
                best_t, best = t, self.values[t]
        return best_t


class VarianceEvaluator:
    """O(1) variance evaluation over a moment table, counting every call.

    The counter makes search costs auditable; build one evaluator per search
    run so counts never mix. The moment table underneath is immutable and
    freely shareable.
    """

    def __init__(self, moments: MomentTable):
        self.moments = moments
        self.eval_count = 0

    @classmethod
    def from_histogram(cls, hist: Histogram) -> VarianceEvaluator:
        return cls(build_moments(hist))

    @property
    def is_degenerate(self) -> bool:
        return self.moments.occupied_bins < 2

    def evaluate(self, t: int) -> float:
        """Between-class variance at threshold t; increments the counter."""
        self.eval_count += 1
        w0 = self.moments.cum_prob[t]
        w1 = 1.0 - w0
        if w0 <= 0.0 or w1 <= 0.0:
            return 0.0
        mu0 = self.moments.cum_mean[t] / w0
        mu1 = (self.moments.global_mean - self.moments.cum_mean[t]) / w1
        diff = mu1 - mu0
        return w0 * w1 * diff * diff


def direct_sigma(hist: Histogram, t: int) -> float:
    """Variance at t by direct summation; the slow reference path.

    Not counted by any evaluator. Integer class sums are exact; only the
    final floating-point arithmetic can round.
    """
    counts = hist.counts
    n0 = sum(counts[:t])
    n1 = sum(counts[t:])
    if n0 == 0 or n1 == 0:
        return 0.0
    m0 = sum(map(mul, range(t), counts[:t]))
    m1 = sum(map(mul, range(t, LEVELS), counts[t:]))
    w0 = n0 / hist.total
    w1 = n1 / hist.total
    mu0 = m0 / n0
    mu1 = m1 / n1
    return w0 * w1 * (mu1 - mu0) ** 2


def full_profile(ev: VarianceEvaluator) -> VarianceProfile:
    """Evaluate every threshold; adds exactly 256 to the counter."""
    return VarianceProfile(tuple(ev.evaluate(t) for t in range(LEVELS)))


def profile_csv(profile: VarianceProfile) -> str:
    """Render a profile as ``t,sigma`` CSV (256 data rows)."""
    lines = ["t,sigma"]
    lines.extend(f"{t},{v!r}" for t, v in enumerate(profile.values))
    return "\n".join(lines) + "\n"
