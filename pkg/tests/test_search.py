"""Exhaustive and bisection searches: golden trace, bounds, and oracles."""

from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings

from conftest import histograms, seeded_histogram
from otsukit.errors import DegenerateHistogram, InvalidConfig
from otsukit.histogram import compute_histogram
from otsukit.imageio import GrayImage
from otsukit.search import (
    BisectionConfig,
    Decision,
    apply_decision,
    bisection_otsu,
    candidate_points,
    exhaustive_otsu,
    reduction_factor,
)
from otsukit.synth import two_delta_histogram
from otsukit.variance import VarianceEvaluator, direct_sigma

# Eight-step golden run: bracket at entry, probes, and the decision taken.
GOLDEN_ROWS = [
    (1, 0, 127, 255, 63, 191, Decision.KEEP_MIDDLE),
    (2, 63, 127, 191, 95, 159, Decision.KEEP_MIDDLE),
    (3, 95, 127, 159, 111, 143, Decision.MOVE_LOWER),
    (4, 95, 111, 127, 103, 119, Decision.MOVE_UPPER),
    (5, 111, 119, 127, 115, 123, Decision.MOVE_LOWER),
    (6, 111, 115, 119, 113, 117, Decision.MOVE_UPPER),
    (7, 115, 117, 119, 116, 118, Decision.MOVE_UPPER),
    (8, 117, 118, 119, None, None, Decision.CONVERGED),
]

# A score table consistent with every decision above and peaked at 118;
# the stub raises KeyError on any probe outside the expected set.
GOLDEN_SIGMA = {
    63: 10.0, 95: 20.0, 103: 32.0, 111: 35.0, 113: 41.0, 115: 45.0,
    116: 46.0, 117: 47.0, 118: 50.0, 119: 40.0, 123: 39.0, 127: 30.0,
    143: 31.0, 159: 15.0, 191: 5.0,
}


class TableEvaluator:
    """Evaluator stub serving scores from a fixed table."""

    is_degenerate = False

    def __init__(self, table):
        self.table = dict(table)
        self.eval_count = 0

    def evaluate(self, t):
        self.eval_count += 1
        return self.table[t]


def evaluator(hist) -> VarianceEvaluator:
    return VarianceEvaluator.from_histogram(hist)


def test_golden_decision_sequence_through_interval_mechanics():
    low, mid, high = 0, 127, 255
    for iteration, elow, emid, ehigh, et1, et2, decision in GOLDEN_ROWS:
        assert (low, mid, high) == (elow, emid, ehigh), f"iteration {iteration}"
        if decision is Decision.CONVERGED:
            assert high - low <= 2
            break
        assert candidate_points(low, mid, high) == (et1, et2)
        low, mid, high = apply_decision(low, mid, high, decision)


def test_golden_trace_full_run():
    ev = TableEvaluator(GOLDEN_SIGMA)
    result, trace = bisection_otsu(ev, BisectionConfig())
    assert len(trace.steps) == 8
    for step, (it, low, mid, high, t1, t2, decision) in zip(
        trace.steps, GOLDEN_ROWS
    ):
        assert step.iteration == it
        assert (step.t_low, step.t_mid, step.t_high) == (low, mid, high)
        assert (step.t1, step.t2) == (t1, t2)
        assert step.decision is decision
    assert result.threshold == 118
    assert result.iterations == 8
    assert result.reported_cost == 24
    assert result.method == "bisection"
    # first iteration evaluates 3 points, each later one reuses the midpoint
    assert result.raw_evaluations == 15
    assert ev.eval_count == 15


def test_golden_trace_sigma_columns():
    _, trace = bisection_otsu(TableEvaluator(GOLDEN_SIGMA), BisectionConfig())
    for step in trace.steps[:-1]:
        assert step.sigma_t1 == GOLDEN_SIGMA[step.t1]
        assert step.sigma_mid == GOLDEN_SIGMA[step.t_mid]
        assert step.sigma_t2 == GOLDEN_SIGMA[step.t2]
    final = trace.steps[-1]
    assert (final.sigma_t1, final.sigma_mid, final.sigma_t2) == (None, None, None)


def test_all_decision_paths_terminate_within_eight_steps():
    # walk every reachable decision sequence from the default bracket and
    # check the iteration bound and strict width decrease structurally
    moves = (Decision.KEEP_MIDDLE, Decision.MOVE_LOWER, Decision.MOVE_UPPER)
    stack = [(0, 127, 255, 1)]
    seen_depths = set()
    while stack:
        low, mid, high, depth = stack.pop()
        if high - low <= 2:
            seen_depths.add(depth)
            assert depth <= 8
            continue
        assert depth <= 7, "an evaluating step beyond seven cannot happen"
        for move in moves:
            nlow, nmid, nhigh = apply_decision(low, mid, high, move)
            assert nhigh - nlow < high - low
            assert nlow <= nmid <= nhigh
            stack.append((nlow, nmid, nhigh, depth + 1))
    assert max(seen_depths) == 8


def test_exhaustive_two_delta_lowest_plateau_element():
    result = exhaustive_otsu(evaluator(two_delta_histogram(50, 200, 8)))
    assert result.threshold == 51
    assert result.iterations == 256
    assert result.reported_cost == 256
    assert result.raw_evaluations == 256
    assert result.method == "exhaustive"


def test_exhaustive_evaluates_exactly_256_times():
    rng = random.Random(17)
    ev = evaluator(seeded_histogram(rng))
    exhaustive_otsu(ev)
    assert ev.eval_count == 256


def test_exhaustive_degenerate_raises():
    ev = evaluator(compute_histogram(GrayImage(4, 4, bytes([7] * 16))))
    with pytest.raises(DegenerateHistogram):
        exhaustive_otsu(ev)


def test_bisection_degenerate_raises():
    ev = evaluator(compute_histogram(GrayImage(4, 4, bytes([7] * 16))))
    with pytest.raises(DegenerateHistogram):
        bisection_otsu(ev)


@settings(max_examples=60)
@given(histograms(min_bins=2))
def test_exhaustive_matches_profile_scan_oracle(hist):
    # oracle: an independent lowest-argmax scan over the full profile
    from otsukit.variance import full_profile

    result = exhaustive_otsu(evaluator(hist))
    assert result.threshold == full_profile(evaluator(hist)).argmax()
    # the winner's score must also top the fresh-summation profile; exact
    # plateau ties can differ by one ulp between the two paths, hence the
    # same relative tolerance the evaluator is held to
    oracle_max = max(direct_sigma(hist, t) for t in range(256))
    winner = direct_sigma(hist, result.threshold)
    assert math.isclose(winner, oracle_max, rel_tol=1e-9, abs_tol=0.0)


@settings(max_examples=60)
@given(histograms(min_bins=2))
def test_bisection_iteration_bound(hist):
    result, trace = bisection_otsu(evaluator(hist))
    assert result.iterations <= 8
    assert result.reported_cost == 3 * result.iterations <= 24
    assert trace.steps[-1].decision is Decision.CONVERGED


@settings(max_examples=40)
@given(histograms(min_bins=2))
def test_trace_invariants(hist):
    _, trace = bisection_otsu(evaluator(hist))
    widths = []
    for step in trace.steps:
        if step.decision is not Decision.CONVERGED:
            assert step.t_low < step.t_mid < step.t_high
        widths.append(step.t_high - step.t_low)
    assert all(a > b for a, b in zip(widths, widths[1:]))


def test_bisection_deterministic():
    rng = random.Random(23)
    hist = seeded_histogram(rng)
    first = bisection_otsu(evaluator(hist))
    second = bisection_otsu(evaluator(hist))
    assert first == second


def test_width_one_final_bracket_is_handled():
    # a strictly decreasing profile forces move-lower every iteration, which
    # shrinks the bracket to width 1 and makes t_mid coincide with t_low
    table = {t: 1000.0 - t for t in range(256)}
    result, trace = bisection_otsu(TableEvaluator(table), BisectionConfig())
    assert result.threshold == 0
    assert trace.steps[-1].t_high - trace.steps[-1].t_low == 1
    assert trace.steps[-1].t_mid == trace.steps[-1].t_low


def test_plateau_epsilon_stops_early():
    hist = two_delta_histogram(50, 200, 16)
    cfg = BisectionConfig(plateau_epsilon=0.0)
    result, trace = bisection_otsu(evaluator(hist), cfg)
    # initial probes 63, 127, 191 all lie on the closed-form plateau
    assert result.iterations == 1
    assert result.reported_cost == 3
    assert result.threshold == 63
    assert trace.steps[0].decision is Decision.CONVERGED
    assert (trace.steps[0].t1, trace.steps[0].t2) == (63, 191)


def test_plateau_epsilon_disabled_runs_to_width_stop():
    hist = two_delta_histogram(50, 200, 16)
    result, _ = bisection_otsu(evaluator(hist))
    assert result.iterations == 8
    assert result.threshold == 126  # lowest member of the final bracket plateau


def test_invalid_configs():
    with pytest.raises(InvalidConfig):
        BisectionConfig(t_low=10, t_mid=10, t_high=20)
    with pytest.raises(InvalidConfig):
        BisectionConfig(t_low=0, t_mid=127, t_high=256)
    with pytest.raises(InvalidConfig):
        BisectionConfig(width_stop=0)
    with pytest.raises(InvalidConfig):
        BisectionConfig(plateau_epsilon=-1.0)


def test_custom_bracket():
    hist = two_delta_histogram(50, 200, 16)
    cfg = BisectionConfig(t_low=40, t_mid=60, t_high=80, width_stop=2)
    result, _ = bisection_otsu(evaluator(hist), cfg)
    assert 40 <= result.threshold <= 80


def test_reduction_factor_values():
    def result_with_cost(cost):
        from otsukit.search import ThresholdResult

        return ThresholdResult(100, cost // 3, cost, cost, "bisection")

    assert round(reduction_factor(result_with_cost(24)), 2) == 10.67
    assert round(reduction_factor(result_with_cost(9)), 2) == 28.44
    assert round(reduction_factor(result_with_cost(12)), 2) == 21.33


def test_trace_json_lines():
    _, trace = bisection_otsu(TableEvaluator(GOLDEN_SIGMA))
    import json

    lines = trace.to_json_lines().strip().split("\n")
    assert len(lines) == 8
    first = json.loads(lines[0])
    assert first["t_low"] == 0 and first["decision"] == "keep_middle"
    last = json.loads(lines[-1])
    assert last["decision"] == "converged" and last["t1"] is None
