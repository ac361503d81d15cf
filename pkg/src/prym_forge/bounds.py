"""Closed-form bounds: Castelnuovo, gonality of simple covers, Clifford index.

All functions are exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial


class HypothesisError(ValueError):
    """A numerical hypothesis of a bound is not met."""

    def __init__(self, message: str, deficit: int):
        super().__init__(message)
        self.deficit = deficit


def castelnuovo_max_genus(n1: int, n2: int, g_y1: int, g_y2: int) -> int:
    """Maximal genus of a curve with independent maps of degrees n1, n2 to curves of genera g_y1, g_y2."""
    if n1 < 2 or n2 < 2:
        raise ValueError("degrees must be at least 2")
    if g_y1 < 0 or g_y2 < 0:
        raise ValueError("genera must be non-negative")
    return (n1 - 1) * (n2 - 1) + n1 * g_y1 + n2 * g_y2


def gonality_threshold(n: int, gon_y: int) -> int:
    return 2 * (n - 1) * n * gon_y


@dataclass(frozen=True)
class GonalityVerdict:
    holds: bool
    gonality: int | None
    threshold: int
    deficit: int


def gonality_of_simple_cover(n: int, gon_y: int, delta: int) -> GonalityVerdict:
    """Gonality of a simple degree-n cover with ramification degree ``delta``.

    The caller asserts simplicity (no factorization through an intermediate curve).
    """
    threshold = gonality_threshold(n, gon_y)
    if delta >= threshold:
        return GonalityVerdict(True, n * gon_y, threshold, 0)
    return GonalityVerdict(False, None, threshold, threshold - delta)


def general_gonality(g_y: int) -> int:
    """Gonality of a general curve of genus ``g_y``: floor((g + 3) / 2)."""
    return (g_y + 3) // 2


@dataclass(frozen=True)
class CliffordBound:
    g_y: int
    gon_y: int
    gon_x: int
    gonality_bound: int  # gon X - 3
    stated_bound: int  # 2 g_Y - 1
    bound: int


def clifford_lower_bound(g_y: int, delta: int) -> CliffordBound:
    """Lower bound for the Clifford index of a simple 4-fold cover of a general genus-g_y curve."""
    if g_y < 0:
        raise ValueError("g_y must be non-negative")
    gon_y = general_gonality(g_y)
    verdict = gonality_of_simple_cover(4, gon_y, delta)
    if not verdict.holds:
        raise HypothesisError(f"delta = {delta} below threshold {verdict.threshold}", verdict.deficit)
    via_gonality = verdict.gonality - 3
    stated = 2 * g_y - 1
    return CliffordBound(g_y, gon_y, verdict.gonality, via_gonality, stated, max(via_gonality, stated))


@dataclass(frozen=True)
class CounterexamplePlan:
    target: int
    g_y: int
    gon_y: int
    delta_min: int
    g_x: int


def plan_counterexample(target: int) -> CounterexamplePlan:
    """Smallest base genus and ramification giving Clifford index at least ``target``."""
    if target < 1:
        raise ValueError("target Clifford index must be at least 1")
    g_y = -(-(target + 1) // 2)
    gon_y = general_gonality(g_y)
    delta = 24 * gon_y
    g_x = 4 * (g_y - 1) + 1 + delta // 2
    return CounterexamplePlan(target, g_y, gon_y, delta, g_x)


def binomial(m: int, k: int) -> int:
    """``C(m, k)`` for any integer ``m`` and ``k >= 0``: m (m-1) ... (m-k+1) / k!."""
    if k < 0:
        return 0
    num = 1
    for i in range(k):
        num *= m - i
    return num // factorial(k)


def vandermonde_check(n: int, g_x: int) -> int:
    if n < 1 or g_x < 0:
        raise ValueError("need n >= 1 and g_x >= 0")
    return sum(binomial(n - 1 - g_x, a) * binomial(g_x, n - 1 - a) for a in range(n))


@dataclass(frozen=True)
class GenusFormulas:
    n: int
    g_x: int
    g_y: int
    ramification_degree: int
    genus_lift_component: int
    genus_quotient_component: int
    dim_prym: int
    dim_prym1: int | None
    class_coefficient: int


def genus_formulas(n: int, g_x: int, g_y: int) -> GenusFormulas:
    if n < 3:
        raise ValueError("n must be at least 3")
    if g_x < 0 or g_y < 0:
        raise ValueError("genera must be non-negative")
    deg_r = 2 * g_x - 2 - n * (2 * g_y - 2)
    if deg_r < 0:
        raise ValueError(f"inconsistent parameters: ramification degree {deg_r} < 0")
    core = g_x - 1 - (n - 4) * (g_y - 1)
    g_ct = 2 ** (n - 3) * core + 1
    if n % 2 == 0:
        g_c = 2 ** (n - 4) * core + 1
        dim_p1 = g_ct - g_c
    else:
        g_c = g_ct  # sigma swaps the two components, C is isomorphic to either
        dim_p1 = None
    return GenusFormulas(n, g_x, g_y, deg_r, g_ct, g_c, g_x - 1, dim_p1, 2 ** (n - 1))
