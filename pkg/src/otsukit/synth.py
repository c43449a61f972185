"""Deterministic synthetic histograms and images for tests and benchmarks.

All randomness comes from the explicitly specified generator documented in
``otsukit.kernels.pure``, so every generator here is a pure function of its
arguments and seed, reproducible bit for bit across platforms and backends.
"""

from __future__ import annotations

from dataclasses import dataclass

from otsukit import kernels
from otsukit.histogram import Histogram
from otsukit.imageio import GrayImage


@dataclass(frozen=True)
class BimodalSpec:
    """Two-Gaussian mixture: means, spreads, mixing weight, sample count."""

    mean0: float
    mean1: float
    sigma0: float
    sigma1: float
    mix: float
    total: int
    seed: int

    def __post_init__(self):
        if not 0.0 <= self.mean0 < self.mean1 <= 255.0:
            raise ValueError("means must satisfy 0 <= mean0 < mean1 <= 255")
        if self.sigma0 <= 0 or self.sigma1 <= 0:
            raise ValueError("sigmas must be positive")
        if not 0.0 < self.mix < 1.0:
            raise ValueError("mix must lie strictly between 0 and 1")
        if self.total < 1:
            raise ValueError("total must be positive")


def bimodal_histogram(spec: BimodalSpec) -> Histogram:
    """Draw `spec.total` samples from the mixture, clamped to [0, 255]."""
    counts = kernels.bimodal_counts(
        spec.total, spec.mean0, spec.sigma0, spec.mean1, spec.sigma1,
        spec.mix, spec.seed,
    )
    return Histogram(tuple(counts), spec.total)


def two_delta_histogram(a: int, b: int, total: int) -> Histogram:
    """Half the mass at intensity a, half at b; a closed-form test input.

    The variance profile of this histogram is 0 up to a, exactly
    (b - a)**2 / 4 on (a, b], and 0 above b.
    """
    if not (0 <= a < b <= 255):
        raise ValueError(f"need 0 <= a < b <= 255, got a={a}, b={b}")
    if total < 2 or total % 2:
        raise ValueError("total must be even and at least 2")
    counts = [0] * 256
    counts[a] = total // 2
    counts[b] = total // 2
    return Histogram(tuple(counts), total)


def image_from_histogram(
    hist: Histogram, width: int, height: int, seed: int
) -> GrayImage:
    """Lay out a histogram's pixel multiset as a seeded-shuffle raster.

    Computing the histogram of the result returns the input exactly.
    """
    if hist.total != width * height:
        raise ValueError(
            f"histogram total {hist.total} does not fill {width}x{height}"
        )
    buf = bytearray()
    for i, c in enumerate(hist.counts):
        buf += bytes([i]) * c
    return GrayImage(width, height, kernels.shuffle_u8(bytes(buf), seed))
