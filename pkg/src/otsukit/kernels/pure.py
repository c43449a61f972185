"""Pure Python kernels, and the reference semantics for the compiled backend.

Every function here has a bit-for-bit identical counterpart in the Cython
module ``otsukit.kernels._native``; the test suite asserts exact equality
between the two backends. Anything that consumes pseudorandomness draws from
an explicitly specified generator so results reproduce across platforms and
implementations:

* Generator: splitmix64. State update ``s = (s + 0x9E3779B97F4A7C15) mod 2^64``,
  output ``z = s; z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
  z *= 0x94D049BB133111EB; z ^= z >> 31`` (all arithmetic mod 2^64).
* Uniform deviate in [0, 1): ``(z >> 11) * 2**-53``.
* Standard normal deviate: sum of 12 consecutive uniform deviates minus 6
  (Irwin-Hall approximation; uses only IEEE-754 add/multiply, summed left to
  right, so it is exactly reproducible).
* Intensity binning: ``floor(x + 0.5)`` clamped to [0, 255].
* Shuffling: backward Fisher-Yates with ``j = z mod (i + 1)`` (the modulo
  bias at 64 bits is negligible and accepted for the sake of a simple
  cross-language specification).
"""

from __future__ import annotations

import math

BACKEND = "pure"

SPLITMIX64_GAMMA = 0x9E3779B97F4A7C15
SPLITMIX64_MIX1 = 0xBF58476D1CE4E5B9
SPLITMIX64_MIX2 = 0x94D049BB133111EB

_MASK64 = (1 << 64) - 1
_U01 = 2.0**-53

# value -> {0, 255} tables for every threshold, built lazily
_BINARIZE_TABLES: dict[int, bytes] = {}


def splitmix64(state: int) -> tuple[int, int]:
    """Advance one splitmix64 step; returns (output, new_state)."""
    state = (state + SPLITMIX64_GAMMA) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * SPLITMIX64_MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * SPLITMIX64_MIX2) & _MASK64
    z ^= z >> 31
    return z, state


def histogram_u8(data) -> list[int]:
    """Count occurrences of each byte value; returns 256 counts."""
    counts = [0] * 256
    for value in bytes(data):
        counts[value] += 1
    return counts


def binarize_u8(data, threshold: int) -> bytes:
    """Map every byte to 255 when >= threshold, else 0."""
    table = _BINARIZE_TABLES.get(threshold)
    if table is None:
        table = bytes(255 if i >= threshold else 0 for i in range(256))
        _BINARIZE_TABLES[threshold] = table
    return bytes(data).translate(table)


def luma_rec601(rgb) -> bytes:
    """Convert interleaved 8-bit RGB triplets to gray (0.299R + 0.587G + 0.114B).

    Rounds half away from zero (the weighted sum is never negative, so this
    is ``floor(x + 0.5)``).
    """
    rgb = bytes(rgb)
    if len(rgb) % 3:
        raise ValueError("RGB buffer length must be a multiple of 3")
    out = bytearray(len(rgb) // 3)
    for k in range(len(out)):
        i = 3 * k
        out[k] = int(0.299 * rgb[i] + 0.587 * rgb[i + 1] + 0.114 * rgb[i + 2] + 0.5)
    return bytes(out)


def shuffle_u8(data, seed: int) -> bytes:
    """Seeded Fisher-Yates permutation of a byte string."""
    buf = bytearray(data)
    state = seed & _MASK64
    for i in range(len(buf) - 1, 0, -1):
        state = (state + SPLITMIX64_GAMMA) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * SPLITMIX64_MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * SPLITMIX64_MIX2) & _MASK64
        z ^= z >> 31
        j = z % (i + 1)
        buf[i], buf[j] = buf[j], buf[i]
    return bytes(buf)


def bimodal_counts(
    total: int,
    mean0: float,
    sigma0: float,
    mean1: float,
    sigma1: float,
    mix: float,
    seed: int,
) -> list[int]:
    """Histogram of `total` draws from a two-Gaussian mixture clamped to [0, 255].

    Each sample consumes exactly 13 generator outputs: one uniform for the
    component choice (u < mix selects component 0), then 12 for the normal
    deviate.
    """
    counts = [0] * 256
    state = seed & _MASK64
    floor = math.floor
    for _ in range(total):
        state = (state + SPLITMIX64_GAMMA) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * SPLITMIX64_MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * SPLITMIX64_MIX2) & _MASK64
        z ^= z >> 31
        if (z >> 11) * _U01 < mix:
            mean, sigma = mean0, sigma0
        else:
            mean, sigma = mean1, sigma1
        acc = 0.0
        for _k in range(12):
            state = (state + SPLITMIX64_GAMMA) & _MASK64
            z = state
            z = ((z ^ (z >> 30)) * SPLITMIX64_MIX1) & _MASK64
            z = ((z ^ (z >> 27)) * SPLITMIX64_MIX2) & _MASK64
            z ^= z >> 31
            acc += (z >> 11) * _U01
        value = mean + sigma * (acc - 6.0)
        idx = int(floor(value + 0.5))
        if idx < 0:
            idx = 0
        elif idx > 255:
            idx = 255
        counts[idx] += 1
    return counts
