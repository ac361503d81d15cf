"""Seeded random search for admissible monodromy towers.

Branch generators are random iota-equivariant lifts of transpositions; the
last one is solved from the product relation.  Candidates are then filtered
on every validation predicate.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field

from .cover import MonodromyRep, failures, relation_product, validate
from .ngonal import lift_action, sign_character
from .perm import Permutation

ATTEMPTS_ENV = "PRYM_FORGE_ATTEMPTS"
DEFAULT_ATTEMPTS = 20000


class SearchParameterError(ValueError):
    pass


@dataclass
class SearchResult:
    seeds: list[MonodromyRep] = field(default_factory=list)
    attempts: int = 0
    budget: int = 0
    requested: int = 1

    @property
    def exhausted(self) -> bool:
        return len(self.seeds) < self.requested


def attempt_budget() -> int:
    raw = os.environ.get(ATTEMPTS_ENV)
    if not raw:
        return DEFAULT_ATTEMPTS
    try:
        value = int(raw)
    except ValueError:
        raise SearchParameterError(f"{ATTEMPTS_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise SearchParameterError(f"{ATTEMPTS_ENV} must be positive")
    return value


def pair_genus(n: int, g_y: int, b: int) -> int:
    """Genus of X for a simply branched degree-n cover with b branch points."""
    if b % 2:
        raise SearchParameterError(f"b = {b} makes deg R odd")
    twice = n * (2 * g_y - 2) + b + 2
    if twice < 0:
        raise SearchParameterError(f"b = {b} gives negative genus for X")
    return twice // 2


def etale_transpositions(n: int) -> list[Permutation]:
    """All lifts of transpositions of pairs that are free of fixed pairs: (p q)(p' q') and (p q')(q p')."""
    out = []
    for p in range(n):
        for q in range(p + 1, n):
            for u, v, w, z in ((p, q, p + n, q + n), (p, q + n, q, p + n)):
                img = list(range(2 * n))
                img[u], img[v], img[w], img[z] = v, u, z, w
                out.append(Permutation(img))
    return out


def random_signed(rng: random.Random, n: int, even: bool = True) -> Permutation:
    """A random element of the hyperoctahedral group; ``even`` keeps the number of flips even."""
    perm = list(range(n))
    rng.shuffle(perm)
    flips = [rng.randrange(2) for _ in range(n)]
    if even and sum(flips) % 2:
        flips[-1] ^= 1
    img = [0] * (2 * n)
    for p in range(n):
        img[p] = perm[p] + n * flips[p]
        img[p + n] = perm[p] + n * (1 - flips[p])
    return Permutation(img)


def _candidate(rng, n, g_y, b, etale, etale_set, split):
    even = split if split is not None else rng.random() < 0.5
    handles = [(random_signed(rng, n, even=even), random_signed(rng, n, even=even)) for _ in range(g_y)]
    if b == 0:
        gens = [x for h in handles for x in h]
        if relation_product(gens, g_y, 2 * n).is_identity():
            return MonodromyRep(n, g_y, tuple(handles), ())
        return None
    cs = [rng.choice(etale) for _ in range(b - 1)]
    gens = [x for h in handles for x in h] + cs
    last = relation_product(gens, g_y, 2 * n).inverse()
    if last not in etale_set:
        return None
    return MonodromyRep(n, g_y, tuple(handles), tuple(cs + [last]))


def accept(rep: MonodromyRep, split: bool | None = True) -> bool:
    """``split=None`` keeps every admissible tower, whatever its sign character."""
    if failures(validate(rep)):
        return False
    if split is None:
        return True
    signs = sign_character(rep)
    if split:
        # sign zero alone allows more than two orbits when the pair monodromy is imprimitive
        return not any(signs.values()) and lift_action(rep).is_split
    return any(signs.values())


def search_seeds(n: int, g_y: int, b: int, count: int = 1, seed: int = 0,
                 split: bool | None = True, max_attempts: int | None = None) -> SearchResult:
    if n < 3:
        raise SearchParameterError("n must be at least 3")
    if g_y < 0 or count < 1:
        raise SearchParameterError("need g_Y >= 0 and count >= 1")
    g_x = pair_genus(n, g_y, b)
    budget = max_attempts if max_attempts is not None else attempt_budget()
    rng = random.Random(seed)
    etale = etale_transpositions(n)
    etale_set = set(etale)
    result = SearchResult(budget=budget, requested=count)
    while result.attempts < budget and len(result.seeds) < count:
        result.attempts += 1
        rep = _candidate(rng, n, g_y, b, etale, etale_set, split)
        if rep is None or not accept(rep, split):
            continue
        k = len(result.seeds) + 1
        kind = {True: "split", False: "nonsplit", None: "any"}[split]
        name = f"n{n}-g{g_y}-b{b}-{kind}-s{seed}-{k}"
        notes = f"g_X = {g_x}; found at attempt {result.attempts}"
        result.seeds.append(MonodromyRep(n, g_y, rep.handles, rep.branches, name=name, notes=notes))
    return result
