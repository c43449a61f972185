"""256-bin histograms and the cumulative moment tables behind them.

The moment tables hold prefix sums of the normalized histogram so that the
between-class variance of any threshold is a constant-time lookup. Prefix
sums are accumulated in exact integer arithmetic and divided by the pixel
count once at the end; the integers involved stay below 255 * N and fit
comfortably in 64 bits, so the tables carry no accumulated rounding error.
"""

from __future__ import annotations

from dataclasses import dataclass

from otsukit import kernels
from otsukit.imageio import GrayImage

LEVELS = 256


@dataclass(frozen=True)
class Histogram:
    """Counts per intensity level plus the total pixel count."""

    counts: tuple[int, ...]
    total: int

    def __post_init__(self):
        if len(self.counts) != LEVELS:
            raise ValueError(f"histogram needs {LEVELS} bins, got {len(self.counts)}")
        if any(c < 0 for c in self.counts):
            raise ValueError("negative bin count")
        if sum(self.counts) != self.total or self.total < 1:
            raise ValueError("histogram total does not match its bin counts")

    @classmethod
    def from_counts(cls, counts) -> Histogram:
        counts = tuple(int(c) for c in counts)
        return cls(counts, sum(counts))

    @property
    def occupied_bins(self) -> int:
        return sum(1 for c in self.counts if c)


@dataclass(frozen=True)
class MomentTable:
    """Cumulative probability and first-moment tables, indexed by threshold.

    Entry t covers intensities strictly below t, so both tables have 257
    entries: ``cum_prob[0] == 0`` and ``cum_prob[256] == 1``.
    """

    cum_prob: tuple[float, ...]
    cum_mean: tuple[float, ...]
    global_mean: float
    occupied_bins: int


def compute_histogram(image: GrayImage) -> Histogram:
    """Count pixels at each intensity level."""
    counts = tuple(kernels.histogram_u8(image.pixels))
    return Histogram(counts, image.width * image.height)


def build_moments(hist: Histogram) -> MomentTable:
    """Build the prefix-sum tables that make variance evaluation O(1)."""
    n = hist.total
    cum_prob = [0.0] * (LEVELS + 1)
    cum_mean = [0.0] * (LEVELS + 1)
    running_count = 0
    running_moment = 0
    for i, c in enumerate(hist.counts):
        running_count += c
        running_moment += i * c
        cum_prob[i + 1] = running_count / n
        cum_mean[i + 1] = running_moment / n
    return MomentTable(
        cum_prob=tuple(cum_prob),
        cum_mean=tuple(cum_mean),
        global_mean=cum_mean[LEVELS],
        occupied_bins=hist.occupied_bins,
    )


def histogram_csv(hist: Histogram) -> str:
    """Render the histogram as ``index,count`` CSV."""
    lines = ["index,count"]
    lines.extend(f"{i},{c}" for i, c in enumerate(hist.counts))
    return "\n".join(lines) + "\n"
