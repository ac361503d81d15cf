"""Permutations of the dense point set ``{0, ..., d-1}``.

Composition is left-to-right throughout the package: ``compose(p, q)``
(also written ``p * q``) applies ``p`` first and then ``q``.  With this
convention the monodromy of a concatenated path ``u v`` is ``mono(u) * mono(v)``
and points are acted on from the right, ``x . (p * q) = (x . p) . q``.
"""

from __future__ import annotations

import re
from collections import deque
from typing import Iterable, Sequence

CycleType = tuple[int, ...]


class PermutationError(ValueError):
    """Raised for malformed permutation data."""

    def __init__(self, message: str, column: int | None = None):
        super().__init__(message)
        self.column = column


class Permutation:
    """An immutable permutation stored as its image list."""

    __slots__ = ("_images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        d = len(images)
        if sorted(images) != list(range(d)):
            raise PermutationError(f"images {images} are not a bijection of 0..{d - 1}")
        self._images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        images = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            for k, point in enumerate(cyc):
                if not 0 <= point < degree:
                    raise PermutationError(f"point {point} out of range for degree {degree}")
                if point in seen:
                    raise PermutationError(f"point {point} appears twice")
                seen.add(point)
                images[point] = cyc[(k + 1) % len(cyc)]
        return cls(images)

    @classmethod
    def parse(cls, text: str, degree: int) -> "Permutation":
        """Parse cycle notation such as ``"(0 1)(2 3)"``; ``"()"`` is the identity."""
        return cls.from_cycles(parse_cycles(text, degree), degree)

    @property
    def images(self) -> tuple[int, ...]:
        return self._images

    @property
    def degree(self) -> int:
        return len(self._images)

    def __call__(self, point: int) -> int:
        return self._images[point]

    def __len__(self) -> int:
        return len(self._images)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self._images == other._images

    def __hash__(self) -> int:
        return self._hash

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __repr__(self) -> str:
        return f"Permutation.parse({str(self)!r}, {self.degree})"

    def __str__(self) -> str:
        cycles = [c for c in self.cycles() if len(c) > 1]
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self._images)
        for i, j in enumerate(self._images):
            inv[j] = i
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self._images))

    def cycles(self) -> list[tuple[int, ...]]:
        """All cycles including fixed points, each starting at its smallest point."""
        seen = [False] * len(self._images)
        out = []
        for start in range(len(self._images)):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self._images[x]
            out.append(tuple(cyc))
        return out

    def conjugate(self, h: "Permutation") -> "Permutation":
        """``h^-1 * self * h``: relabel points through ``h``."""
        return h.inverse() * self * h


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` first, then ``q``."""
    if p.degree != q.degree:
        raise PermutationError(f"degree mismatch: {p.degree} vs {q.degree}")
    qi = q.images
    return Permutation(qi[i] for i in p.images)


def compose_all(perms: Iterable[Permutation], degree: int) -> Permutation:
    result = Permutation.identity(degree)
    for p in perms:
        result = compose(result, p)
    return result


def commutator(a: Permutation, b: Permutation) -> Permutation:
    """``a * b * a^-1 * b^-1`` in left-to-right order."""
    return a * b * a.inverse() * b.inverse()


def cycle_type(p: Permutation) -> CycleType:
    return tuple(sorted((len(c) for c in p.cycles()), reverse=True))


def orbits(gens: Sequence[Permutation], degree: int | None = None) -> list[list[int]]:
    """Orbits of the group generated by ``gens``, sorted by smallest element."""
    if degree is None:
        if not gens:
            raise PermutationError("degree required when there are no generators")
        degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise PermutationError("generators have different degrees")
    label = [-1] * degree
    out: list[list[int]] = []
    for start in range(degree):
        if label[start] >= 0:
            continue
        label[start] = len(out)
        orbit = [start]
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = g.images[x]
                if label[y] < 0:
                    label[y] = len(out)
                    orbit.append(y)
                    queue.append(y)
        out.append(sorted(orbit))
    return out


_TOKEN = re.compile(r"\s*(\(|\)|-?\d+)")


def parse_cycles(text: str, degree: int) -> list[list[int]]:
    """Tokenize cycle notation; errors carry the 1-based column of the offending token."""
    cycles: list[list[int]] = []
    current: list[int] | None = None
    seen: set[int] = set()
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise PermutationError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos + 1)
        tok = m.group(1)
        col = m.start(1) + 1
        pos = m.end()
        if tok == "(":
            if current is not None:
                raise PermutationError("nested '('", col)
            current = []
        elif tok == ")":
            if current is None:
                raise PermutationError("unmatched ')'", col)
            if current:
                cycles.append(current)
            current = None
        else:
            if current is None:
                raise PermutationError("point outside of a cycle", col)
            point = int(tok)
            if not 0 <= point < degree:
                raise PermutationError(f"point {point} out of range 0..{degree - 1}", col)
            if point in seen:
                raise PermutationError(f"point {point} repeated: not a bijection", col)
            seen.add(point)
            current.append(point)
    if current is not None:
        raise PermutationError("unterminated cycle", len(text) + 1)
    return cycles
