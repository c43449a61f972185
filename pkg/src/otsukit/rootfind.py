"""Bisection root finding on a sign-changing bracket.

Given f continuous on [a, b] with f(a) * f(b) < 0, repeated interval
halving converges to a root; the bracket width shrinks by exactly two per
iteration, so at most ceil(log2((b - a) / tol)) iterations are needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from otsukit.errors import InvalidBracket, MaxIterationsExceeded


@dataclass(frozen=True)
class BracketStep:
    iteration: int
    a: float
    b: float
    c: float
    fc: float
    new_a: float
    new_b: float


@dataclass(frozen=True)
class RootResult:
    root: float
    iterations: int
    bracket_history: tuple[BracketStep, ...]


def bisect_root(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float,
    max_iter: int = 60,
) -> RootResult:
    """Find a root of f on the bracketing interval [a, b].

    Each iteration evaluates f at the midpoint c = a + (b - a) / 2 and keeps
    the half that still brackets a sign change. Stops at the first of
    |f(c)| <= tol or (b - a) / 2 <= tol; `tol` must be positive.

    Raises InvalidBracket when f(a) * f(b) >= 0 and MaxIterationsExceeded
    when the budget runs out before either tolerance is met.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if a > b:
        a, b = b, a
    fa = f(a)
    fb = f(b)
    if fa * fb >= 0:
        raise InvalidBracket(
            f"f({a}) = {fa} and f({b}) = {fb} do not bracket a sign change"
        )
    history: list[BracketStep] = []
    for iteration in range(1, max_iter + 1):
        c = a + (b - a) / 2  # midpoint form avoids overflow and cancellation
        fc = f(c)
        if (fa > 0) == (fc > 0):
            new_a, new_b = c, b
        else:
            new_a, new_b = a, c
        history.append(BracketStep(iteration, a, b, c, fc, new_a, new_b))
        if new_a == c:
            fa = fc
        a, b = new_a, new_b
        if abs(fc) <= tol or (b - a) / 2 <= tol:
            return RootResult(c, iteration, tuple(history))
    raise MaxIterationsExceeded(
        f"no convergence within {max_iter} iterations (bracket [{a}, {b}])"
    )
