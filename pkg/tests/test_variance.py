"""Variance evaluation: closed forms, the counter contract, and the
direct-summation oracle."""

from __future__ import annotations

import math
import random

from hypothesis import given, settings

from conftest import histograms, seeded_histogram
from otsukit.histogram import compute_histogram
from otsukit.imageio import GrayImage
from otsukit.synth import two_delta_histogram
from otsukit.variance import (
    VarianceEvaluator,
    direct_sigma,
    full_profile,
    profile_csv,
)


def evaluator(hist) -> VarianceEvaluator:
    return VarianceEvaluator.from_histogram(hist)


def test_two_delta_closed_form():
    # equal mass at 50 and 200: w0 = w1 = 1/2, means 50 and 200,
    # so sigma at any t in (50, 200] is 0.25 * 150**2 = 5625 exactly
    ev = evaluator(two_delta_histogram(50, 200, 4))
    assert ev.evaluate(100) == 5625.0


def test_zero_at_empty_background():
    rng = random.Random(11)
    ev = evaluator(seeded_histogram(rng))
    assert ev.evaluate(0) == 0.0


def test_counter_increments_once_per_call():
    ev = evaluator(two_delta_histogram(10, 20, 2))
    assert ev.eval_count == 0
    ev.evaluate(0)
    ev.evaluate(15)
    ev.evaluate(15)
    assert ev.eval_count == 3


def test_oracle_equivalence_on_seeded_histograms():
    rng = random.Random(99)
    for _ in range(100):
        hist = seeded_histogram(rng)
        ev = evaluator(hist)
        for t in range(256):
            fast = ev.evaluate(t)
            slow = direct_sigma(hist, t)
            assert math.isclose(fast, slow, rel_tol=1e-9, abs_tol=0.0)


@settings(max_examples=50)
@given(histograms())
def test_oracle_equivalence_property(hist):
    ev = evaluator(hist)
    for t in range(256):
        assert math.isclose(
            ev.evaluate(t), direct_sigma(hist, t), rel_tol=1e-9, abs_tol=0.0
        )


@settings(max_examples=50)
@given(histograms())
def test_non_negativity(hist):
    ev = evaluator(hist)
    assert all(ev.evaluate(t) >= 0.0 for t in range(256))


def test_direct_sigma_two_delta():
    hist = two_delta_histogram(50, 200, 4)
    assert direct_sigma(hist, 100) == 5625.0


def test_direct_sigma_constant_image_all_zero():
    hist = compute_histogram(GrayImage(3, 3, bytes([42] * 9)))
    assert all(direct_sigma(hist, t) == 0.0 for t in range(256))


def test_full_profile_constant_image():
    ev = evaluator(compute_histogram(GrayImage(2, 2, bytes([9] * 4))))
    profile = full_profile(ev)
    assert profile.values == (0.0,) * 256
    assert ev.eval_count == 256


def test_full_profile_two_delta_plateau():
    profile = full_profile(evaluator(two_delta_histogram(50, 200, 100)))
    for t in range(256):
        if 51 <= t <= 200:
            assert profile.values[t] == 5625.0
        else:
            assert profile.values[t] == 0.0
    assert profile.argmax() == 51


def test_profile_value_at_zero_is_zero():
    rng = random.Random(5)
    profile = full_profile(evaluator(seeded_histogram(rng)))
    assert profile.values[0] == 0.0


def test_profile_csv_has_256_rows():
    profile = full_profile(evaluator(two_delta_histogram(1, 2, 2)))
    lines = profile_csv(profile).strip().split("\n")
    assert lines[0] == "t,sigma"
    assert len(lines) == 257
