from __future__ import annotations

import random

from hypothesis import strategies as st

from otsukit.histogram import Histogram
from otsukit.imageio import GrayImage


@st.composite
def histograms(draw, min_bins: int = 1, max_bins: int = 8):
    """Sparse histograms: a handful of occupied bins with positive counts."""
    n = draw(st.integers(min_bins, max_bins))
    bins = draw(st.lists(st.integers(0, 255), min_size=n, max_size=n, unique=True))
    counts = [0] * 256
    for b in bins:
        counts[b] = draw(st.integers(1, 1000))
    return Histogram.from_counts(counts)


@st.composite
def gray_images(draw, max_side: int = 12):
    width = draw(st.integers(1, max_side))
    height = draw(st.integers(1, max_side))
    pixels = draw(st.binary(min_size=width * height, max_size=width * height))
    return GrayImage(width, height, pixels)


def seeded_histogram(rng: random.Random, max_count: int = 500) -> Histogram:
    """Dense random histogram from a caller-owned RNG."""
    counts = [rng.randrange(0, max_count) for _ in range(256)]
    if sum(c > 0 for c in counts) < 2:
        counts[0] += 1
        counts[255] += 1
    return Histogram.from_counts(counts)
