"""Correspondences ``S``, ``S^t`` and ``[k + (n-k)']`` on lifts.

Fiberwise, a correspondence sends a point to a divisor (a ``Counter`` of
points with positive multiplicity).  Globally it is a cover of ``Y`` (the
incidence curve) with two equivariant projections, which is what the
homology module consumes.

Identities are checked over the fiber above the base point of ``Y``; that
fiber is unramified by construction, so every divisor is reduced.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .cover import CoverAction, MonodromyRep
from .ngonal import LiftAction, chosen_points, lift_action, popcount
from .perm import Permutation

Divisor = Counter


def divisor(points: Iterable, weight: int = 1) -> Counter:
    d: Counter = Counter()
    for p in points:
        d[p] += weight
    return d


def scaled(d: Counter, k: int) -> Counter:
    return Counter({p: k * m for p, m in d.items()}) if k else Counter()


def degree(d: Counter) -> int:
    return sum(d.values())


@dataclass(frozen=True)
class Correspondence:
    """An incidence cover with equivariant maps to two covers of the same base."""

    incidence: CoverAction
    left: CoverAction
    left_map: tuple[int, ...]
    right: CoverAction
    right_map: tuple[int, ...]
    name: str = ""
    flags: tuple[str, ...] = ()

    def transpose(self) -> "Correspondence":
        name = self.name[:-2] if self.name.endswith("^t") else self.name + "^t"
        return Correspondence(self.incidence, self.right, self.right_map, self.left, self.left_map, name, self.flags)

    def is_equivariant(self) -> bool:
        for g, gl, gr in zip(self.incidence.generator_images, self.left.generator_images, self.right.generator_images):
            for q in range(self.incidence.point_count):
                if self.left_map[g(q)] != gl(self.left_map[q]):
                    return False
                if self.right_map[g(q)] != gr(self.right_map[q]):
                    return False
        return True

    def left_fiber(self, point: int) -> list[int]:
        return [q for q, p in enumerate(self.left_map) if p == point]

    def right_fiber(self, point: int) -> list[int]:
        return [q for q, p in enumerate(self.right_map) if p == point]

    def apply(self, point: int) -> Counter:
        """Image divisor on ``right`` of a point of ``left``."""
        return divisor(self.right_map[q] for q in self.left_fiber(point))


def _incidence_action(points: Sequence, act, base: CoverAction) -> CoverAction:
    index = {p: k for k, p in enumerate(points)}
    gens = tuple(Permutation(index[act(g, p)] for p in points) for g in range(len(base.generator_images)))
    return CoverAction(len(points), gens, base.base_genus, base.branch_count)


def build_S(rep: MonodromyRep, la: LiftAction | None = None) -> Correspondence:
    """``S`` inside ``C~_1 x X~``: pairs (lift, sheet chosen by the lift)."""
    la = la or lift_action(rep)
    n = rep.degree_n
    comp = la.first_component
    comp_index = {L: k for k, L in enumerate(comp)}
    left = la.component_action(0)
    right = rep.sheet_action()
    points = [(L, x) for L in comp for x in chosen_points(L, n)]
    lift_gens = la.action.generator_images
    sheet_gens = right.generator_images

    def act(k, pt):
        L, x = pt
        return lift_gens[k](L), sheet_gens[k](x)

    incidence = _incidence_action(points, act, right)
    flags = () if la.is_split else ("C~ is connected: S is built over the whole of C~",)
    return Correspondence(
        incidence,
        left,
        tuple(comp_index[L] for L, _ in points),
        right,
        tuple(x for _, x in points),
        "S",
        flags,
    )


def build_d(rep: MonodromyRep, j: int, la: LiftAction | None = None) -> Correspondence:
    """``[(n-j) + j']`` on ``C~_1``: lifts differing in exactly ``j`` pairs (``j`` even)."""
    if j % 2:
        raise ValueError("j must be even to stay on C~_1")
    la = la or lift_action(rep)
    n = rep.degree_n
    if not 0 <= j <= n:
        raise ValueError("0 <= j <= n required")
    comp = la.first_component
    comp_index = {L: k for k, L in enumerate(comp)}
    act_c = la.component_action(0)
    masks = [m for m in range(1 << n) if popcount(m) == j]
    points = [(L, L ^ m) for L in comp for m in masks]
    lift_gens = la.action.generator_images

    def act(k, pt):
        L, M = pt
        return lift_gens[k](L), lift_gens[k](M)

    incidence = _incidence_action(points, act, act_c)
    return Correspondence(
        incidence,
        act_c,
        tuple(comp_index[L] for L, _ in points),
        act_c,
        tuple(comp_index[M] for _, M in points),
        f"d{j}",
    )


# -- fiberwise divisor maps --------------------------------------------------


def apply_S(lift: int, n: int) -> Counter:
    return divisor(chosen_points(lift, n))


def apply_St(x: int, n: int, component: Iterable[int] | None = None) -> Counter:
    """Lifts of ``C~_1`` through the sheet ``x``; default ``C~_1`` is the even-weight class."""
    p, primed = x % n, x >= n
    if component is None:
        candidates = (L for L in range(1 << n) if popcount(L) % 2 == 0)
    else:
        candidates = component
    return divisor(L for L in candidates if ((L >> p) & 1) == primed)


def d_operator(j: int, lift: int, n: int) -> Counter:
    if j % 2:
        raise ValueError("odd j leaves the component")
    if not 0 <= j <= n:
        raise ValueError("0 <= j <= n required")
    return divisor(lift ^ sum(1 << p for p in ps) for ps in combinations(range(n), j))


def StS_expected(lift: int, n: int) -> Counter:
    out: Counter = Counter()
    for i in range((n - 1) // 2 + 1):
        out += scaled(d_operator(2 * i, lift, n), n - 2 * i)
    return out


def SSt_expected(x: int, n: int) -> Counter:
    out = Counter({x: 2 ** (n - 2)})
    p = x % n
    for q in range(n):
        if q != p:
            out[q] += 2 ** (n - 3)
            out[q + n] += 2 ** (n - 3)
    return out


@dataclass
class IdentityReport:
    name: str
    holds: bool
    checked: int = 0
    fibers: int = 0
    witness: object = None
    lhs: dict | None = None
    rhs: dict | None = None
    skipped: str = ""


def basepoint_conjugates(rep: MonodromyRep, count: int) -> list[MonodromyRep]:
    """The same tower seen from other fibers: conjugates by monodromy elements."""
    out = []
    gens = rep.generators
    h = Permutation.identity(2 * rep.degree_n)
    for k in range(count):
        h = h * gens[k % len(gens)] if gens else h
        out.append(rep.conjugate(h))
    return out


def verify_StS(rep: MonodromyRep, extra_fibers: int = 0) -> IdentityReport:
    report = IdentityReport("StS", True)
    n = rep.degree_n
    for r in [rep] + basepoint_conjugates(rep, extra_fibers):
        la = lift_action(r)
        if not la.is_split:
            return IdentityReport("StS", False, skipped="C~ not split")
        comp = la.first_component
        report.fibers += 1
        for L in comp:
            lhs: Counter = Counter()
            for x in apply_S(L, n):
                lhs += apply_St(x, n, comp)
            rhs = StS_expected(L, n)
            report.checked += 1
            if lhs != rhs:
                report.holds = False
                report.witness, report.lhs, report.rhs = L, dict(lhs), dict(rhs)
                return report
    return report


def verify_SSt(rep: MonodromyRep, extra_fibers: int = 0) -> IdentityReport:
    report = IdentityReport("SSt", True)
    n = rep.degree_n
    for r in [rep] + basepoint_conjugates(rep, extra_fibers):
        la = lift_action(r)
        if not la.is_split:
            return IdentityReport("SSt", False, skipped="C~ not split")
        comp = la.first_component
        report.fibers += 1
        for x in range(2 * n):
            lhs: Counter = Counter()
            for L in apply_St(x, n, comp):
                lhs += apply_S(L, n)
            rhs = SSt_expected(x, n)
            report.checked += 1
            if lhs != rhs:
                report.holds = False
                report.witness, report.lhs, report.rhs = x, dict(lhs), dict(rhs)
                return report
    return report
