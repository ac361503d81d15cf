"""Finite covers of a closed surface ``Y`` given by monodromy.

The base ``Y`` has genus ``g`` and ``b`` marked branch points.  Its fundamental
group (punctured at the branch points) is generated by loops
``a1, b1, ..., ag, bg, c1, ..., cb`` subject to the single relation

    [a1, b1] ... [ag, bg] c1 ... cb = 1,     [a, b] = a b a^-1 b^-1,

read left to right (handles first in index order, then branches in index
order).  A cover of degree ``d`` is a list of ``2g + b`` permutations of
``{0, ..., d-1}``, one per generator, satisfying the relation.

The tower ``X~ -> X -> Y`` is encoded by :class:`MonodromyRep`: permutations of
``2n`` sheets that commute with the pairing ``i <-> (i + n) mod 2n``.  Sheets
``0..n-1`` are *unprimed* and ``n..2n-1`` *primed*.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from .perm import (
    CycleType,
    Permutation,
    commutator,
    compose_all,
    cycle_type,
    orbits,
)


class RelationError(ValueError):
    """The generators do not satisfy the surface group relation."""


def generator_names(base_genus: int, branch_count: int) -> list[str]:
    names = []
    for i in range(1, base_genus + 1):
        names += [f"a{i}", f"b{i}"]
    names += [f"c{j}" for j in range(1, branch_count + 1)]
    return names


def relation_product(gens: Sequence[Permutation], base_genus: int, degree: int) -> Permutation:
    """Evaluate the relation word on a generator list ``[a1, b1, ..., c1, ...]``."""
    pieces = []
    for i in range(base_genus):
        pieces.append(commutator(gens[2 * i], gens[2 * i + 1]))
    pieces.extend(gens[2 * base_genus:])
    return compose_all(pieces, degree)


@dataclass(frozen=True)
class CoverAction:
    """A degree-``point_count`` cover of ``Y``: one permutation per base generator."""

    point_count: int
    generator_images: tuple[Permutation, ...]
    base_genus: int
    branch_count: int

    def __post_init__(self):
        object.__setattr__(self, "generator_images", tuple(self.generator_images))
        if len(self.generator_images) != 2 * self.base_genus + self.branch_count:
            raise ValueError("need 2*base_genus + branch_count generators")
        if any(g.degree != self.point_count for g in self.generator_images):
            raise ValueError("generator degree differs from point_count")

    @property
    def handles(self) -> tuple[Permutation, ...]:
        return self.generator_images[: 2 * self.base_genus]

    @property
    def branches(self) -> tuple[Permutation, ...]:
        return self.generator_images[2 * self.base_genus:]

    @property
    def generator_names(self) -> list[str]:
        return generator_names(self.base_genus, self.branch_count)

    def relation_holds(self) -> bool:
        return relation_product(self.generator_images, self.base_genus, self.point_count).is_identity()

    def orbits(self) -> list[list[int]]:
        return orbits(self.generator_images, self.point_count)

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def restrict(self, points: Sequence[int]) -> "CoverAction":
        """The action on an invariant subset, relabelled ``0..len(points)-1`` in the given order."""
        index = {p: k for k, p in enumerate(points)}
        gens = []
        for g in self.generator_images:
            try:
                gens.append(Permutation(index[g(p)] for p in points))
            except KeyError:
                raise ValueError("point set is not invariant") from None
        return CoverAction(len(points), tuple(gens), self.base_genus, self.branch_count)


@dataclass(frozen=True)
class MonodromyRep:
    """Monodromy of ``X~ -> X -> Y`` on ``2n`` sheets."""

    degree_n: int
    base_genus: int
    handles: tuple[tuple[Permutation, Permutation], ...]
    branches: tuple[Permutation, ...]
    name: str = ""
    notes: str = ""

    def __post_init__(self):
        object.__setattr__(self, "handles", tuple((a, b) for a, b in self.handles))
        object.__setattr__(self, "branches", tuple(self.branches))
        if self.degree_n < 1 or self.base_genus < 0:
            raise ValueError("degree_n must be >= 1 and base_genus >= 0")
        if len(self.handles) != self.base_genus:
            raise ValueError(f"expected {self.base_genus} handle pairs, got {len(self.handles)}")
        for g in self.generators:
            if g.degree != 2 * self.degree_n:
                raise ValueError(f"generator of degree {g.degree}, expected {2 * self.degree_n}")

    @property
    def generators(self) -> list[Permutation]:
        gens: list[Permutation] = []
        for a, b in self.handles:
            gens += [a, b]
        return gens + list(self.branches)

    @property
    def generator_names(self) -> list[str]:
        return generator_names(self.base_genus, len(self.branches))

    @property
    def pairing(self) -> Permutation:
        n = self.degree_n
        return Permutation((i + n) % (2 * n) for i in range(2 * n))

    def sheet_action(self) -> CoverAction:
        """``X~`` as a cover of ``Y``."""
        return CoverAction(2 * self.degree_n, tuple(self.generators), self.base_genus, len(self.branches))

    def conjugate(self, h: Permutation) -> "MonodromyRep":
        """Relabel sheets by ``h`` (which should commute with the pairing)."""
        return MonodromyRep(
            self.degree_n,
            self.base_genus,
            tuple((a.conjugate(h), b.conjugate(h)) for a, b in self.handles),
            tuple(c.conjugate(h) for c in self.branches),
            self.name,
            self.notes,
        )


def project_to_pairs(g: Permutation, n: int) -> Permutation:
    return Permutation(g(p) % n for p in range(n))


def pair_action(rep: MonodromyRep) -> CoverAction:
    """``X`` as a degree-``n`` cover of ``Y``: the induced action on sheet pairs."""
    n = rep.degree_n
    gens = tuple(project_to_pairs(g, n) for g in rep.generators)
    return CoverAction(n, gens, rep.base_genus, len(rep.branches))


# -- analysis ---------------------------------------------------------------


@dataclass(frozen=True)
class ComponentAnalysis:
    points: tuple[int, ...]
    degree: int
    euler_characteristic: int
    genus: int
    ramification: tuple[CycleType, ...]

    @property
    def ramification_degree(self) -> int:
        return sum(sum(k - 1 for k in ct) for ct in self.ramification)


@dataclass(frozen=True)
class CoverAnalysis:
    components: tuple[ComponentAnalysis, ...]

    @property
    def connected(self) -> bool:
        return len(self.components) == 1

    @property
    def genus(self) -> int:
        if not self.connected:
            raise ValueError("cover is disconnected; use per-component genera")
        return self.components[0].genus

    @property
    def euler_characteristic(self) -> int:
        return sum(c.euler_characteristic for c in self.components)


def riemann_hurwitz_euler(degree: int, base_genus: int, ramification_degree: int) -> int:
    return degree * (2 - 2 * base_genus) - ramification_degree


def analyze(action: CoverAction) -> CoverAnalysis:
    """Orbit decomposition and Riemann-Hurwitz genus of each component."""
    if not action.relation_holds():
        raise RelationError("product relation violated")
    comps = []
    for orbit in action.orbits():
        sub = action.restrict(orbit)
        ram = tuple(cycle_type(c) for c in sub.branches)
        rdeg = sum(sum(k - 1 for k in ct) for ct in ram)
        chi = riemann_hurwitz_euler(len(orbit), action.base_genus, rdeg)
        if chi % 2:
            raise RelationError("odd Euler characteristic: inconsistent branch data")
        comps.append(ComponentAnalysis(tuple(orbit), len(orbit), chi, (2 - chi) // 2, ram))
    return CoverAnalysis(tuple(comps))


def minimal_block(action: CoverAction, a: int, b: int) -> list[int]:
    """Smallest block of imprimitivity containing ``a`` and ``b``."""
    parent = list(range(action.point_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pending = [(a, b)]
    while pending:
        x, y = pending.pop()
        rx, ry = find(x), find(y)
        if rx == ry:
            continue
        parent[ry] = rx
        for g in action.generator_images:
            pending.append((g(x), g(y)))
    root = find(a)
    return [p for p in range(action.point_count) if find(p) == root]


def is_primitive(action: CoverAction) -> bool:
    """Diagnostic only: a transitive action with no nontrivial blocks."""
    if not action.is_transitive():
        return False
    return all(len(minimal_block(action, 0, y)) == action.point_count for y in range(1, action.point_count))


# -- isomorphism of covers --------------------------------------------------


def equivariant_isomorphism(
    first: CoverAction,
    second: CoverAction,
    allowed: Callable[[int, int], bool] | None = None,
) -> list[int] | None:
    """A bijection ``phi`` with ``phi(x . g) = phi(x) . g`` for every generator, or None.

    ``allowed(x, y)`` may restrict the image of each point.  Each orbit of
    ``first`` is matched by guessing the image of its smallest point and
    propagating along generators; guesses are backtracked.
    """
    if first.point_count != second.point_count or len(first.generator_images) != len(second.generator_images):
        return None
    d = first.point_count
    gens1, gens2 = first.generator_images, second.generator_images
    orbit_list = first.orbits()

    def extend(phi, used, start, target):
        phi = dict(phi)
        used = set(used)
        stack = [(start, target)]
        while stack:
            x, y = stack.pop()
            if x in phi:
                if phi[x] != y:
                    return None
                continue
            if y in used or (allowed is not None and not allowed(x, y)):
                return None
            phi[x] = y
            used.add(y)
            for g1, g2 in zip(gens1, gens2):
                stack.append((g1(x), g2(y)))
        return phi, used

    def search(k, phi, used):
        if k == len(orbit_list):
            return phi
        start = orbit_list[k][0]
        for target in range(d):
            if target in used:
                continue
            ext = extend(phi, used, start, target)
            if ext is None:
                continue
            found = search(k + 1, *ext)
            if found is not None:
                return found
        return None

    phi = search(0, {}, set())
    if phi is None:
        return None
    return [phi[x] for x in range(d)]


def fiber_product_with_character(pairs: CoverAction, chi: Sequence[int]) -> CoverAction:
    """``X x_Y Y'`` where ``Y' -> Y`` is the double cover with character ``chi`` on the handles.

    Point ``p + n*e`` is (pair ``p``, sheet ``e`` of ``Y'``); branch loops carry character 0.
    """
    n = pairs.point_count
    values = list(chi) + [0] * pairs.branch_count
    gens = []
    for g, v in zip(pairs.generator_images, values):
        images = []
        for e in (0, 1):
            for p in range(n):
                images.append(g(p) + n * ((e + v) % 2))
        gens.append(Permutation(images))
    return CoverAction(2 * n, tuple(gens), pairs.base_genus, pairs.branch_count)


def rep_from_action(action: CoverAction, n: int, name: str = "") -> MonodromyRep:
    gens = action.generator_images
    g = action.base_genus
    handles = tuple((gens[2 * i], gens[2 * i + 1]) for i in range(g))
    return MonodromyRep(n, g, handles, tuple(gens[2 * g:]), name=name)


@dataclass(frozen=True)
class BaseChangeVerdict:
    is_base_change: bool
    character: tuple[int, ...] | None = None
    candidates_tested: int = 0


def is_base_change(rep: MonodromyRep) -> BaseChangeVerdict:
    """Test whether ``X~`` is pulled back from a double cover of ``Y``.

    Every character ``H1(Y, Z/2) -> Z/2`` (values on ``a_i``, ``b_i``) is tried;
    ``X~`` must be isomorphic to ``X x_Y Y'`` as a cover of ``X``.
    """
    n = rep.degree_n
    sheets = rep.sheet_action()
    pairs = pair_action(rep)
    tested = 0
    for chi in itertools.product((0, 1), repeat=2 * rep.base_genus):
        tested += 1
        candidate = fiber_product_with_character(pairs, chi)
        phi = equivariant_isomorphism(sheets, candidate, allowed=lambda x, y: x % n == y % n)
        if phi is not None:
            return BaseChangeVerdict(True, tuple(chi), tested)
    return BaseChangeVerdict(False, None, tested)


# -- validation -------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


ADMISSIBILITY_CHECKS = (
    "degree",
    "relation",
    "pairing_equivariance",
    "transitive_sheets",
    "transitive_pairs",
    "simple_ramification",
    "etale",
    "not_base_change",
)


def validate(rep: MonodromyRep) -> list[Check]:
    """Run every admissibility check; never raises on structurally valid input."""
    n = rep.degree_n
    iota = rep.pairing
    names = rep.generator_names
    gens = rep.generators
    checks = [Check("degree", n >= 3, "" if n >= 3 else f"n = {n} < 3")]

    rel = relation_product(gens, rep.base_genus, 2 * n)
    checks.append(Check("relation", rel.is_identity(), "" if rel.is_identity() else f"product = {rel}"))

    bad = [nm for nm, g in zip(names, gens) if g * iota != iota * g]
    checks.append(Check("pairing_equivariance", not bad, ", ".join(f"{b} does not commute with the pairing" for b in bad)))

    sheet_orbits = orbits(gens, 2 * n)
    checks.append(Check("transitive_sheets", len(sheet_orbits) == 1,
                        "" if len(sheet_orbits) == 1 else f"{len(sheet_orbits)} orbits on sheets"))
    pair_orbits = orbits([project_to_pairs(g, n) for g in gens], n) if not bad else []
    ok_pairs = not bad and len(pair_orbits) == 1
    checks.append(Check("transitive_pairs", ok_pairs,
                        "" if ok_pairs else ("pairing not preserved" if bad else f"{len(pair_orbits)} orbits on pairs")))

    simple_fail = []
    etale_fail = []
    for j, c in enumerate(rep.branches, start=1):
        if c * iota != iota * c:
            simple_fail.append(f"c{j}")
            etale_fail.append(f"c{j}")
            continue
        ct = cycle_type(project_to_pairs(c, n))
        if ct != (2,) + (1,) * (n - 2):
            simple_fail.append(f"c{j} has pair cycle type {ct}")
        for cyc in c.cycles():
            if set(cyc) == {iota(x) for x in cyc}:
                etale_fail.append(f"c{j} has pairing-stable cycle {cyc}")
                break
    checks.append(Check("simple_ramification", not simple_fail, "; ".join(simple_fail)))
    checks.append(Check("etale", not etale_fail, "; ".join(etale_fail)))

    if all(c.passed for c in checks):
        verdict = is_base_change(rep)
        detail = f"pulled back by character {verdict.character}" if verdict.is_base_change else ""
        checks.append(Check("not_base_change", not verdict.is_base_change, detail))
    else:
        checks.append(Check("not_base_change", False, "skipped: earlier checks failed"))
    return checks


def failures(checks: Sequence[Check]) -> list[Check]:
    return [c for c in checks if not c.passed]


def is_admissible(rep: MonodromyRep) -> bool:
    return not failures(validate(rep))
