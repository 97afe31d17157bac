"""Choquet, Sugeno and seminormed integrals plus the glm/gsf functionals.

All integrals are evaluated on candidate points: between two consecutive
distinct values of f the sets {f >= a} and {f > a} do not change, so a
supremum or integral over a continuum reduces to finitely many terms.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .cao import Cao, as_function
from .glm import glm_step, gsf_step, level_step, survival_step
from .measure import MonotoneMeasure, Paving, full_mask
from .numeric import INF

HALF = Fraction(1, 2)
VARIANTS = ("level", "survival")


class ApproximationWarning(UserWarning):
    """A result was computed on a sampling grid rather than exactly."""


def _variant(v: str) -> str:
    if v not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {v!r}")
    return v


@dataclass(frozen=True)
class Semicopula:
    """Binary operation on [0, 1], nondecreasing, with 1 as neutral element.

    ``left_limit`` returns lim_{x -> a-} S(x, b); for semicopulas continuous
    in the first argument it can be ``eval`` itself.
    """

    eval: Callable
    left_limit: Callable | None = None
    name: str = "S"

    def __call__(self, a, b):
        return self.eval(a, b)


def _min(a, b):
    return min(a, b)


def _prod(a, b):
    return a * b


def _lukasiewicz(a, b):
    return max(a + b - 1, 0)


def _jump(a, b):
    return 0 if a < HALF and b <= HALF else min(a, b)


def _jump_left(a, b):
    # x < a <= 1/2 keeps x in the zero region
    return 0 if a <= HALF and b <= HALF else min(a, b)


SEMICOPULAS = {
    "min": Semicopula(_min, _min, "min"),
    "prod": Semicopula(_prod, _prod, "prod"),
    "lukasiewicz": Semicopula(_lukasiewicz, _lukasiewicz, "lukasiewicz"),
    "jump_example": Semicopula(_jump, _jump_left, "jump_example"),
}


def semicopula(kind: str) -> Semicopula:
    try:
        return SEMICOPULAS[kind]
    except KeyError:
        raise ValueError(f"unknown semicopula {kind!r}; choose from {sorted(SEMICOPULAS)}") from None


def validate_semicopula(S: Semicopula, steps: int = 20) -> None:
    """Check boundary and monotonicity conditions on a rational grid."""
    grid = [Fraction(k, steps) for k in range(steps + 1)]
    for a in grid:
        if S(1, a) != a or S(a, 1) != a:
            raise ValueError(f"{S.name}: 1 is not neutral at {a}")
    for x in grid:
        row = [S(x, y) for y in grid]
        if any(p > q for p, q in zip(row, row[1:])):
            raise ValueError(f"{S.name}: not nondecreasing in the second argument at x={x}")
        col = [S(y, x) for y in grid]
        if any(p > q for p, q in zip(col, col[1:])):
            raise ValueError(f"{S.name}: not nondecreasing in the first argument at y={x}")
        if any(v < 0 or v > 1 for v in row):
            raise ValueError(f"{S.name}: values leave [0, 1]")


# --- classical integrals -------------------------------------------------------

def choquet(mu: MonotoneMeasure, f: Sequence, variant: str = "level"):
    """Integral over [0, inf) of a -> mu({f >= a}) (or mu({f > a}))."""
    step = level_step(mu, f) if _variant(variant) == "level" else survival_step(mu, f)
    return step.integral()


def sugeno(mu: MonotoneMeasure, f: Sequence, variant: str = "level"):
    """sup over a of min(a, mu({f >= a})) or min(a, mu({f > a}))."""
    if _variant(variant) == "level":
        # a -> mu({f >= a}) is constant on (v_{i-1}, v_i]; the sup sits at v_i
        step = level_step(mu, f)
        best = 0
        for lo, hi, m in step.pieces():
            if hi != INF:
                best = max(best, min(hi, m))
        return best
    # constant on [v_i, v_{i+1}); sup of min(a, m) there is min(v_{i+1}, m)
    step = survival_step(mu, f)
    best = 0
    for lo, hi, m in step.pieces():
        best = max(best, min(hi, m))
    return best


def seminormed(S: Semicopula, mu: MonotoneMeasure, f: Sequence, variant: str = "level",
               grid_size: int = 10_000):
    """sup over a in [0, 1] of S(a, mu({f >= a})) or S(a, mu({f > a})).

    The survival variant needs ``S.left_limit`` to be exact; without it the
    supremum is taken over a uniform grid and an :class:`ApproximationWarning`
    is emitted.
    """
    f = as_function(f, mu.n)
    if mu.total > 1:
        raise ValueError("seminormed integrals need mu(X) <= 1")
    if max(f) > 1:
        raise ValueError("seminormed integrals need f <= 1")
    if _variant(variant) == "level":
        # S is nondecreasing in a, so on each piece (lo, hi] the sup is at hi
        best = 0
        for lo, hi, m in level_step(mu, f).pieces():
            if hi != INF:
                best = max(best, S(hi, m))
        return best  # beyond max f the measure is 0 and S(a, 0) = 0
    step = survival_step(mu, f)
    if S.left_limit is None:
        warnings.warn("no left limit supplied; using a sampling grid", ApproximationWarning, stacklevel=2)
        return max(S(Fraction(k, grid_size), step(Fraction(k, grid_size))) for k in range(grid_size + 1))
    best = 0
    for lo, hi, m in step.pieces():
        if lo > 1:
            break
        if hi > 1:
            best = max(best, S(1, m))  # the piece containing a = 1
        else:
            best = max(best, S.left_limit(hi, m))
    return best


# --- functionals from generalized level measures ---------------------------------

def glm_functional(cao: Cao, mu: MonotoneMeasure, f: Sequence, paving: Paving | None = None):
    """Integral over [0, inf) of a -> glm_const(cao, mu, f, a)."""
    return glm_step(cao.with_empty(INF), mu, f, paving).integral()


def gsf_functional(cao: Cao, mu: MonotoneMeasure, f: Sequence, paving: Paving | None = None):
    """Integral over [0, inf) of a -> gsf_const(cao, mu, f, a); inf if it diverges."""
    return gsf_step(cao.with_empty(0), mu, f, paving).integral()


def weighted_sum(mu: MonotoneMeasure, f: Sequence):
    """sum f(x) mu({x}); equals the Choquet integral for additive mu."""
    f = as_function(f, mu.n)
    return sum(v * mu(1 << i) for i, v in enumerate(f))


def sorted_sum_choquet(mu: MonotoneMeasure, f: Sequence):
    """Choquet integral by the rearrangement formula (independent of step functions)."""
    f = as_function(f, mu.n)
    order = sorted(range(mu.n), key=lambda i: f[i])
    total, prev, upper = 0, 0, full_mask(mu.n)
    for i in order:
        if f[i] > prev:
            m = mu(upper)
            total = total + (INF if m == INF else (f[i] - prev) * m)
            prev = f[i]
        upper &= ~(1 << i)
    return total
