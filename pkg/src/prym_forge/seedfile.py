"""Seed files: a tower ``X~ -> X -> Y`` as a small JSON document.

Example::

    {
      "format": "prym-forge-seed/1",
      "name": "example",
      "degree": 4,
      "base_genus": 0,
      "handles": [],
      "branches": ["(0 1)(4 5)", "(0 5)(1 4)", ...],
      "notes": ""
    }

Permutations act on the ``2n`` sheets in cycle notation.  Sheets ``0..n-1``
are unprimed, ``i + n`` is the partner of ``i``.  ``handles`` lists pairs
``[a_i, b_i]``.  The generators satisfy
``[a1,b1]...[ag,bg] c1...cb = ()`` with left-to-right composition and
``[a,b] = a b a^-1 b^-1``.
"""

from __future__ import annotations

import json
from pathlib import Path

from .cover import MonodromyRep
from .perm import Permutation, PermutationError

FORMAT = "prym-forge-seed/1"


class SeedParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


def _locate(text: str, literal: str, offset: int | None) -> tuple[int | None, int | None]:
    pos = text.find(json.dumps(literal))
    if pos < 0:
        return None, None
    pos += 1 + (offset - 1 if offset else 0)
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def loads(text: str) -> MonodromyRep:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SeedParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise SeedParseError("seed must be a JSON object", 1, 1)
    fmt = doc.get("format", FORMAT)
    if fmt != FORMAT:
        raise SeedParseError(f"unsupported format {fmt!r}")
    try:
        n = doc["degree"]
        g = doc.get("base_genus", 0)
        handles = doc.get("handles", [])
        branches = doc.get("branches", [])
    except KeyError as exc:
        raise SeedParseError(f"missing field {exc.args[0]!r}") from None
    if not isinstance(n, int) or not isinstance(g, int) or n < 1 or g < 0:
        raise SeedParseError("degree and base_genus must be non-negative integers (degree >= 1)")
    if not isinstance(handles, list) or not isinstance(branches, list):
        raise SeedParseError("handles and branches must be lists")

    def perm(s):
        if not isinstance(s, str):
            raise SeedParseError(f"permutation must be a string, got {s!r}")
        try:
            return Permutation.parse(s, 2 * n)
        except PermutationError as exc:
            line, col = _locate(text, s, exc.column)
            raise SeedParseError(f"{exc} in {s!r}", line, col) from None

    pairs = []
    for h in handles:
        if not isinstance(h, list) or len(h) != 2:
            raise SeedParseError("each handle is a pair [a, b]")
        pairs.append((perm(h[0]), perm(h[1])))
    if len(pairs) != g:
        raise SeedParseError(f"base_genus {g} but {len(pairs)} handle pairs")
    return MonodromyRep(n, g, tuple(pairs), tuple(perm(c) for c in branches),
                        name=str(doc.get("name", "")), notes=str(doc.get("notes", "")))


def load(path) -> MonodromyRep:
    return loads(Path(path).read_text())


def to_document(rep: MonodromyRep) -> dict:
    return {
        "format": FORMAT,
        "name": rep.name,
        "degree": rep.degree_n,
        "base_genus": rep.base_genus,
        "handles": [[str(a), str(b)] for a, b in rep.handles],
        "branches": [str(c) for c in rep.branches],
        "notes": rep.notes,
    }


def dumps(rep: MonodromyRep) -> str:
    return json.dumps(to_document(rep), indent=2) + "\n"


def dump(rep: MonodromyRep, path) -> None:
    Path(path).write_text(dumps(rep))
