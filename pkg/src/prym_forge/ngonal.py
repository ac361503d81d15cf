"""The n-gonal construction on monodromy data.

A *lift* of a fiber of ``X -> Y`` picks one of the two sheets over every pair;
it is stored as an ``n``-bit mask whose bit ``p`` is set when the primed sheet
``p + n`` is chosen.  The curve ``C~`` is the cover of ``Y`` whose fiber is
the set of all ``2**n`` lifts.  ``C~_1`` is, by convention, the component
containing the all-unprimed lift ``0``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .cover import CoverAction, CoverAnalysis, MonodromyRep, analyze, pair_action
from .perm import Permutation

SINGULAR_SCENARIOS = ("two_simple_in_one_fiber",)


def popcount(x: int) -> int:
    return bin(x).count("1")


def chosen_points(lift: int, n: int) -> list[int]:
    """Sheets selected by ``lift``, one per pair, in pair order."""
    return [p + n * ((lift >> p) & 1) for p in range(n)]


def lift_of_points(points: Sequence[int], n: int) -> int:
    mask = 0
    seen = set()
    for x in points:
        p = x % n
        if p in seen:
            raise ValueError(f"two points over pair {p}")
        seen.add(p)
        if x >= n:
            mask |= 1 << p
    if len(seen) != n:
        raise ValueError("a lift chooses one point over every pair")
    return mask


def lift_permutation(g: Permutation, n: int) -> Permutation:
    """Induced action of a sheet permutation on the ``2**n`` lifts."""
    images = []
    for lift in range(1 << n):
        out = 0
        for x in chosen_points(lift, n):
            y = g(x)
            if y >= n:
                out |= 1 << (y - n)
        images.append(out)
    return Permutation(images)


def complement(n: int) -> Permutation:
    full = (1 << n) - 1
    return Permutation(lift ^ full for lift in range(1 << n))


def sign_of(g: Permutation, n: int) -> int:
    """Parity of the number of unprimed sheets sent to primed ones."""
    return sum(1 for p in range(n) if g(p) >= n) % 2


def sign_character(rep: MonodromyRep) -> dict[str, int]:
    return {name: sign_of(g, rep.degree_n) for name, g in zip(rep.generator_names, rep.generators)}


@dataclass(frozen=True)
class LiftAction:
    rep: MonodromyRep
    action: CoverAction
    components: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.rep.degree_n

    @property
    def reference(self) -> int:
        return 0

    @property
    def first_component(self) -> tuple[int, ...]:
        """Lifts of ``C~_1``: the orbit of the all-unprimed lift."""
        return self.components[0]

    @property
    def is_split(self) -> bool:
        return len(self.components) == 2

    def component_action(self, index: int = 0) -> CoverAction:
        return self.action.restrict(self.components[index])


def lift_action(rep: MonodromyRep) -> LiftAction:
    n = rep.degree_n
    gens = tuple(lift_permutation(g, n) for g in rep.generators)
    action = CoverAction(1 << n, gens, rep.base_genus, len(rep.branches))
    comps = tuple(tuple(o) for o in action.orbits())
    # orbits() sorts by smallest point, so the orbit of lift 0 comes first
    return LiftAction(rep, action, comps)


# -- closed forms used as cross-checks --------------------------------------


def genus_lift_component(n: int, g_x: int, g_y: int) -> int:
    return 2 ** (n - 3) * (g_x - 1 - (n - 4) * (g_y - 1)) + 1


def genus_quotient_component(n: int, g_x: int, g_y: int) -> int:
    """Genus of ``C_i`` for even ``n >= 4``."""
    return 2 ** (n - 4) * (g_x - 1 - (n - 4) * (g_y - 1)) + 1


@dataclass(frozen=True)
class SplitReport:
    component_count: int
    sign_character: dict[str, int]
    split: bool
    degrees: tuple[int, ...]
    genera: tuple[int, ...]
    # per branch point: number of ramification points (2-cycles) on each component
    ramification_points: tuple[tuple[int, ...], ...]
    base_genus: int
    pair_genus: int
    expected_genus: int | None
    genus_formula_holds: bool | None
    notes: tuple[str, ...] = ()


def split(la: LiftAction) -> SplitReport:
    rep = la.rep
    n = la.n
    signs = sign_character(rep)
    analysis = analyze(la.action)
    comps = analysis.components
    ram = []
    for c in la.action.branches:
        counts = []
        for comp in la.components:
            members = set(comp)
            counts.append(sum(1 for cyc in c.cycles() if len(cyc) == 2 and cyc[0] in members))
        ram.append(tuple(counts))
    g_x = analyze(pair_action(rep)).genus
    is_split = len(comps) == 2
    notes = []
    expected = holds = None
    if is_split:
        expected = genus_lift_component(n, g_x, rep.base_genus)
        holds = all(c.genus == expected for c in comps)
    else:
        notes.append("C~ does not split into two components; formula checks skipped")
    if is_split != (not any(signs.values())):
        notes.append("component count disagrees with the sign character criterion")
    return SplitReport(
        component_count=len(comps),
        sign_character=signs,
        split=is_split,
        degrees=tuple(c.degree for c in comps),
        genera=tuple(c.genus for c in comps),
        ramification_points=tuple(ram),
        base_genus=rep.base_genus,
        pair_genus=g_x,
        expected_genus=expected,
        genus_formula_holds=holds,
        notes=tuple(notes),
    )


@dataclass(frozen=True)
class SigmaQuotient:
    sigma: Permutation
    fixed_point_free: bool
    swaps_components: bool | None  # None when C~ is not split
    orbit_representatives: tuple[int, ...]
    quotient: CoverAction
    analysis: CoverAnalysis
    expected_genus: int | None


def sigma_quotient(la: LiftAction) -> SigmaQuotient:
    n = la.n
    sigma = complement(n)
    fpf = all(sigma(x) != x for x in range(1 << n))
    swaps = None
    if la.is_split:
        swaps = sigma(la.reference) not in set(la.first_component)
    reps = tuple(x for x in range(1 << n) if x < sigma(x))
    index = {}
    for k, x in enumerate(reps):
        index[x] = index[sigma(x)] = k
    gens = tuple(Permutation(index[g(x)] for x in reps) for g in la.action.generator_images)
    quotient = CoverAction(len(reps), gens, la.action.base_genus, la.action.branch_count)
    analysis = analyze(quotient)
    expected = None
    if la.is_split:
        g_x = analyze(pair_action(la.rep)).genus
        if n % 2 == 0 and n >= 4:
            expected = genus_quotient_component(n, g_x, la.rep.base_genus)
        elif n % 2 == 1:
            expected = genus_lift_component(n, g_x, la.rep.base_genus)
    return SigmaQuotient(sigma, fpf, swaps, reps, quotient, analysis, expected)


# -- fibers with two ramification points ------------------------------------


@dataclass(frozen=True)
class SingularFiber:
    """Points of ``C~`` over a fiber ``2x1 + 2x2 + x3 + ... + x_{n-2}``.

    Each point is a tuple of local choices: for the two ramified points one of
    ``"2x"``, ``"2x'"``, ``"x+x'"``; for the others ``"x"`` or ``"x'"``.
    """

    n: int
    points: tuple[tuple[str, ...], ...]
    singular: tuple[tuple[str, ...], ...]

    @property
    def singular_count(self) -> int:
        return len(self.singular)


_SIGMA = {"2x": "2x'", "2x'": "2x", "x+x'": "x+x'", "x": "x'", "x'": "x"}


def sigma_on_fiber_point(point: tuple[str, ...]) -> tuple[str, ...]:
    return tuple(_SIGMA[c] for c in point)


def singular_fiber(n: int) -> SingularFiber:
    if n < 4:
        raise ValueError("two ramification points in one fiber need n >= 4")
    ramified = ("2x", "2x'", "x+x'")
    simple = ("x", "x'")
    pts = tuple(itertools.product(ramified, ramified, *([simple] * (n - 4))))
    sing = tuple(p for p in pts if p[0] == "x+x'" and p[1] == "x+x'")
    return SingularFiber(n, pts, sing)


def singular_lift_count(n: int, scenario: str = "two_simple_in_one_fiber") -> int:
    """Number of singular points of ``C~`` over a fiber with two simple ramification points."""
    if scenario not in SINGULAR_SCENARIOS:
        raise ValueError(f"unknown scenario {scenario!r}")
    return singular_fiber(n).singular_count
