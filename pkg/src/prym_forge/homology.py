"""Integral homology of closed covers, intersection forms and Prym lattices.

CW model of a degree-``d`` cover of ``Y`` (genus ``g``, ``b`` branch points):

* vertices: the ``d`` points of the fiber over the base point;
* edges: ``(x, k)`` for every point ``x`` and base generator ``k``, running
  from ``x`` to ``x . gen_k``; edge ``(x, k)`` has index ``x * G + k``;
* 2-cells: one lift of the relation polygon per point, and one disk per cycle
  of each branch generator (the disk is branched at its centre).

The base complex is a one-vertex ribbon graph; its cyclic order of edge ends
is lifted to every vertex of the cover.  Intersection numbers of 1-cycles are
computed from that ribbon structure: push the second cycle off the graph to
the left of every edge, connect the strands inside small vertex disks, and
count signed crossings with the first cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import normalform as nf
from .cover import CoverAction, analyze
from .corresp import Correspondence
from .perm import Permutation

TAIL, HEAD = 0, 1


class HomologyError(RuntimeError):
    """Internal consistency failure (rank, unimodularity, non-equivariant map)."""


def _as_int_array(rows) -> np.ndarray:
    arr = np.array(rows, dtype=object)
    if arr.size and max(abs(int(x)) for x in arr.flat) < 2**40:
        return arr.astype(np.int64)
    return arr


def base_rotation(base_genus: int, branch_count: int) -> list[tuple[int, int]]:
    """Counterclockwise order of edge ends ``(generator, TAIL|HEAD)`` at the base vertex."""
    G = 2 * base_genus + branch_count
    if G == 0:
        return []
    big = []
    for i in range(base_genus):
        a, b = 2 * i, 2 * i + 1
        big += [(a, 1), (b, 1), (a, -1), (b, -1)]
    big += [(2 * base_genus + j, 1) for j in range(branch_count)]
    faces = [big] + [[(2 * base_genus + j, -1)] for j in range(branch_count)]

    def depart(letter):
        k, s = letter
        return (k, TAIL) if s > 0 else (k, HEAD)

    def arrive(letter):
        k, s = letter
        return (k, HEAD) if s > 0 else (k, TAIL)

    rho = {}
    for word in faces:
        for t in range(len(word)):
            rho[depart(word[(t + 1) % len(word)])] = arrive(word[t])
    order = [(0, TAIL)]
    while True:
        nxt = rho[order[-1]]
        if nxt == order[0]:
            break
        order.append(nxt)
    if len(order) != 2 * G:
        raise HomologyError("base polygon does not close up to a single vertex")
    return order


@dataclass
class SurfaceComplex:
    action: CoverAction
    rotation: list[tuple[int, int]]
    faces: list[dict[int, int]]
    genus: int

    @property
    def generator_count(self) -> int:
        return len(self.action.generator_images)

    @property
    def vertex_count(self) -> int:
        return self.action.point_count

    @property
    def edge_count(self) -> int:
        return self.vertex_count * self.generator_count

    @property
    def euler_characteristic(self) -> int:
        return self.vertex_count - self.edge_count + len(self.faces)

    def edge(self, x: int, k: int) -> int:
        return x * self.generator_count + k

    def endpoints(self, e: int) -> tuple[int, int]:
        x, k = divmod(e, self.generator_count)
        return x, self.action.generator_images[k](x)

    def boundary1(self) -> np.ndarray:
        d1 = np.zeros((self.vertex_count, self.edge_count), dtype=np.int64)
        for e in range(self.edge_count):
            u, v = self.endpoints(e)
            d1[v, e] += 1
            d1[u, e] -= 1
        return d1

    def boundary2(self) -> np.ndarray:
        d2 = np.zeros((self.edge_count, len(self.faces)), dtype=np.int64)
        for f, col in enumerate(self.faces):
            for e, c in col.items():
                d2[e, f] = c
        return d2

    def half_edges(self) -> np.ndarray:
        """``(V, 2G, 2)`` array: for each vertex, its edge ends in ccw order as (edge, end)."""
        G = self.generator_count
        inverses = [g.inverse() for g in self.action.generator_images]
        out = np.zeros((self.vertex_count, 2 * G, 2), dtype=np.int64)
        for x in range(self.vertex_count):
            for slot, (k, end) in enumerate(self.rotation):
                src = x if end == TAIL else inverses[k](x)
                out[x, slot] = (src * G + k, end)
        return out

    def ribbon_face_count(self) -> int:
        """Faces of the ribbon graph (orbits of the face permutation on edge ends)."""
        he = self.half_edges()
        pos = {}
        for x in range(self.vertex_count):
            for slot in range(he.shape[1]):
                pos[(int(he[x, slot, 0]), int(he[x, slot, 1]))] = (x, slot)
        seen = set()
        count = 0
        k = he.shape[1]
        for start in pos:
            if start in seen:
                continue
            count += 1
            cur = start
            while cur not in seen:
                seen.add(cur)
                e, end = cur
                x, slot = pos[(e, 1 - end)]  # walk to the other end of the edge
                prev = he[x, (slot - 1) % k]  # clockwise neighbour
                cur = (int(prev[0]), int(prev[1]))
        return count


def build_complex(action: CoverAction, component: Sequence[int] | None = None) -> SurfaceComplex:
    if component is not None:
        action = action.restrict(component)
    elif not action.is_transitive():
        raise ValueError("disconnected cover: select a component")
    analysis = analyze(action)
    G = len(action.generator_images)
    g_base = action.base_genus
    gens = action.generator_images
    inverses = [g.inverse() for g in gens]
    faces: list[dict[int, int]] = []
    word = []
    for i in range(g_base):
        word += [(2 * i, 1), (2 * i + 1, 1), (2 * i, -1), (2 * i + 1, -1)]
    word += [(2 * g_base + j, 1) for j in range(action.branch_count)]
    for x in range(action.point_count):
        col: dict[int, int] = {}
        cur = x
        for k, s in word:
            if s > 0:
                e = cur * G + k
                cur = gens[k](cur)
            else:
                cur = inverses[k](cur)
                e = cur * G + k
            col[e] = col.get(e, 0) + s
        if cur != x:
            raise HomologyError("relation polygon does not close")
        faces.append({e: c for e, c in col.items() if c})
    for j in range(action.branch_count):
        k = 2 * g_base + j
        for cyc in gens[k].cycles():
            faces.append({x * G + k: -1 for x in cyc})
    cx = SurfaceComplex(action, base_rotation(g_base, action.branch_count), faces, analysis.genus)
    if cx.euler_characteristic != 2 - 2 * cx.genus:
        raise HomologyError("Euler characteristic disagrees with Riemann-Hurwitz")
    return cx


# -- first homology ----------------------------------------------------------


@dataclass
class H1Lattice:
    complex: SurfaceComplex
    basis: np.ndarray  # E x 2g, columns are 1-cycles
    projection: np.ndarray  # 2g x E, coordinates of a cycle
    intersection: np.ndarray  # 2g x 2g, (alpha_a . alpha_b)
    eliminated_by_snf: int = 0

    @property
    def rank(self) -> int:
        return self.basis.shape[1]

    @property
    def form(self) -> np.ndarray:
        """Polarization ``E = -(intersection)``."""
        return -self.intersection

    def coordinates(self, cycles: np.ndarray) -> np.ndarray:
        return self.projection @ cycles


def _spanning_tree(cx: SurfaceComplex):
    """BFS tree; returns (set of tree edges, root-to-vertex path vectors as dicts)."""
    V, G = cx.vertex_count, cx.generator_count
    inverses = [g.inverse() for g in cx.action.generator_images]
    path: list[dict[int, int] | None] = [None] * V
    path[0] = {}
    tree = set()
    queue = [0]
    for u in queue:
        for k in range(G):
            fwd = cx.action.generator_images[k](u)
            if path[fwd] is None:
                e = u * G + k
                tree.add(e)
                path[fwd] = dict(path[u])
                path[fwd][e] = path[fwd].get(e, 0) + 1
                queue.append(fwd)
            back = inverses[k](u)
            if path[back] is None:
                e = back * G + k
                tree.add(e)
                path[back] = dict(path[u])
                path[back][e] = path[back].get(e, 0) - 1
                queue.append(back)
    if any(p is None for p in path):
        raise ValueError("complex is disconnected")
    return tree, path


def _eliminate(columns: list[dict[int, int]]):
    """Unit-pivot elimination of relations.

    Returns (substitutions in elimination order, residual nonzero columns).
    A substitution ``(r, expr)`` means generator ``r`` equals ``sum expr[s] * s``
    in the quotient.
    """
    cols = {i: dict(c) for i, c in enumerate(columns) if c}
    where: dict[int, set[int]] = {}
    for i, c in cols.items():
        for r in c:
            where.setdefault(r, set()).add(i)
    subs = []
    while cols:
        pivot = None
        for i in sorted(cols, key=lambda i: len(cols[i])):
            units = [r for r, v in cols[i].items() if v in (1, -1)]
            if units:
                r = min(units, key=lambda r: len(where[r]))
                pivot = (i, r)
                break
        if pivot is None:
            break
        i, r = pivot
        col = cols.pop(i)
        u = col[r]
        for s in col:
            where[s].discard(i)
        expr = {s: -u * v for s, v in col.items() if s != r}
        subs.append((r, expr))
        for j in list(where.get(r, ())):
            cj = cols[j]
            factor = cj.pop(r)
            where[r].discard(j)
            for s, v in expr.items():
                nv = cj.get(s, 0) + factor * v
                if nv:
                    if s not in cj:
                        where.setdefault(s, set()).add(j)
                    cj[s] = nv
                elif s in cj:
                    del cj[s]
                    where[s].discard(j)
            if not cj:
                del cols[j]
        where.pop(r, None)
    return subs, list(cols.values())


def intersection_matrix(cx: SurfaceComplex, alpha: np.ndarray, beta: np.ndarray) -> np.ndarray:
    """``(alpha_a . beta_b)`` for cycle columns ``alpha`` (E x p) and ``beta`` (E x q)."""
    he = cx.half_edges()
    edges = he[:, :, 0]
    sign = np.where(he[:, :, 1] == TAIL, 1, -1)
    tail = (he[:, :, 1] == TAIL)[:, :, None]
    fa = alpha[edges] * sign[:, :, None]  # V x 2G x p outflow of alpha at each edge end
    fb = beta[edges] * sign[:, :, None]
    # crossings of the pushed-off strand at slot j with alpha on slots i < j, plus slot j itself for tails
    before = np.cumsum(fa, axis=1) - fa
    crossed = before + np.where(tail, fa, 0)
    return np.einsum("vjp,vjq->pq", crossed, fb)


def h1_with_form(cx: SurfaceComplex) -> H1Lattice:
    E = cx.edge_count
    tree, path = _spanning_tree(cx)
    nontree = [e for e in range(E) if e not in tree]
    nt_set = set(nontree)
    relations = [{e: c for e, c in f.items() if e in nt_set} for f in cx.faces]
    subs, residual = _eliminate(relations)
    eliminated = {r for r, _ in subs}
    survivors = [e for e in nontree if e not in eliminated]
    s_index = {e: k for k, e in enumerate(survivors)}

    # residual relations among survivors need a full normal form
    snf_used = 0
    if residual:
        R = [[col.get(e, 0) for col in residual] for e in survivors]
        D, U, _ = nf.smith_normal_form(R)
        diag = [D[i][i] for i in range(min(len(D), len(residual))) if D[i][i]]
        if any(d != 1 for d in diag):
            raise HomologyError(f"torsion {diag} in H1 of a closed orientable surface")
        r = len(diag)
        snf_used = r
        Uinv = nf.solve_in_lattice(U, nf.identity(len(U))) if U else []
        Q = [row for row in U[r:]]
        section = [row[r:] for row in Uinv]
    else:
        Q = nf.identity(len(survivors))
        section = nf.identity(len(survivors))

    rank = len(Q)
    if rank != 2 * cx.genus:
        raise HomologyError(f"H1 rank {rank} but genus {cx.genus}")

    # back-substitute eliminated generators in terms of survivors
    expr_of: dict[int, dict[int, int]] = {s: {s: 1} for s in survivors}
    for r, expr in reversed(subs):
        total: dict[int, int] = {}
        for s, v in expr.items():
            for t, w in expr_of[s].items():
                total[t] = total.get(t, 0) + v * w
        expr_of[r] = {t: w for t, w in total.items() if w}
    proj = np.zeros((rank, E), dtype=object)
    Qarr = np.array(Q, dtype=object).reshape(rank, len(survivors))
    for e in nontree:
        vec = np.zeros(len(survivors), dtype=object)
        for t, w in expr_of[e].items():
            vec[s_index[t]] += w
        proj[:, e] = Qarr @ vec if len(survivors) else 0

    basis = np.zeros((E, rank), dtype=object)
    for col in range(rank):
        for k, e in enumerate(survivors):
            c = section[k][col]
            if not c:
                continue
            u, v = cx.endpoints(e)
            basis[e, col] += c
            for t, w in path[u].items():
                basis[t, col] += c * w
            for t, w in path[v].items():
                basis[t, col] -= c * w
    basis = _as_int_array(basis.tolist()) if rank else np.zeros((E, 0), dtype=np.int64)
    proj = _as_int_array(proj.tolist()) if rank else np.zeros((0, E), dtype=np.int64)
    inter = intersection_matrix(cx, basis, basis) if rank else np.zeros((0, 0), dtype=np.int64)
    lattice = H1Lattice(cx, basis, proj, inter, snf_used)
    if rank:
        if not np.array_equal(proj @ basis, np.eye(rank, dtype=np.int64)):
            raise HomologyError("projection is not a left inverse of the basis")
        if not np.array_equal(inter, -inter.T):
            raise HomologyError("intersection form is not skew")
        if abs(nf.determinant(inter.tolist())) != 1:
            raise HomologyError("intersection form is not unimodular")
    return lattice


# -- chain maps ---------------------------------------------------------------


def correspondence_chain(vectors: np.ndarray, left_map: Sequence[int], right_map: Sequence[int],
                         generator_count: int, right_points: int) -> np.ndarray:
    """Chain map ``push_right o transfer_left`` on edge vectors (columns)."""
    G = generator_count
    lm = np.asarray(left_map, dtype=np.int64)
    rm = np.asarray(right_map, dtype=np.int64)
    ks = np.arange(G)
    src = (lm[:, None] * G + ks[None, :]).ravel()
    dst = (rm[:, None] * G + ks[None, :]).ravel()
    out = np.zeros((right_points * G, vectors.shape[1]), dtype=vectors.dtype)
    np.add.at(out, dst, vectors[src])
    return out


def induced_map(source: H1Lattice, target: H1Lattice, left_map, right_map) -> np.ndarray:
    """Matrix on H1 coordinates of the correspondence given by the two point maps."""
    chains = correspondence_chain(source.basis, left_map, right_map, source.complex.generator_count,
                                  target.complex.vertex_count)
    return target.projection @ chains


def pushforward_matrix(source: H1Lattice, target: H1Lattice, point_map: Sequence[int]) -> np.ndarray:
    return induced_map(source, target, range(source.complex.vertex_count), point_map)


def transfer_matrix(source: H1Lattice, target: H1Lattice, point_map: Sequence[int]) -> np.ndarray:
    """Wrong-way map ``H1(source) -> H1(target)`` for a covering ``target -> source``."""
    return induced_map(source, target, point_map, range(target.complex.vertex_count))


def _check_equivariant(action: CoverAction, perm: Permutation) -> None:
    for g in action.generator_images:
        if g * perm != perm * g:
            raise HomologyError("involution does not commute with the monodromy")


def involution_matrix(h1: H1Lattice, sigma: Permutation) -> np.ndarray:
    _check_equivariant(h1.complex.action, sigma)
    m = pushforward_matrix(h1, h1, sigma.images)
    if not np.array_equal(m @ m, np.eye(h1.rank, dtype=m.dtype)):
        raise HomologyError("induced map is not an involution")
    return m


def correspondence_matrix(corr: Correspondence, source: H1Lattice, target: H1Lattice) -> np.ndarray:
    return induced_map(source, target, corr.left_map, corr.right_map)


# -- Prym lattices -------------------------------------------------------------


@dataclass
class PrymLattice:
    """``ker(1 + sigma_*)`` with the restricted and halved pairings."""

    h1: H1Lattice
    sigma: np.ndarray
    basis: np.ndarray  # 2g x r, columns in H1 coordinates
    restricted_form: np.ndarray
    left_inverse: np.ndarray
    elementary_divisors: list[int]
    image_index_divisors: list[int]

    @property
    def rank(self) -> int:
        return self.basis.shape[1]

    @property
    def is_even(self) -> bool:
        return bool(np.all(self.restricted_form % 2 == 0))

    @property
    def halved_form(self) -> np.ndarray:
        if not self.is_even:
            raise HomologyError("restricted form is not even")
        return self.restricted_form // 2

    @property
    def twice_principal(self) -> bool:
        return len(self.elementary_divisors) == self.rank and all(d == 2 for d in self.elementary_divisors)

    def coordinates(self, vectors: np.ndarray) -> np.ndarray:
        """Coordinates in the Prym basis of H1 vectors known to lie in the lattice."""
        coords = self.left_inverse @ vectors
        if not np.array_equal(self.basis @ coords, vectors):
            raise HomologyError("vectors are not in the Prym lattice")
        return coords


_INT64_SAFE = 2**20


def prym_lattice(h1: H1Lattice, sigma: np.ndarray) -> PrymLattice:
    r = h1.rank
    ident = np.eye(r, dtype=np.int64)
    if not np.array_equal(sigma @ sigma, ident):
        raise HomologyError("sigma_* is not an involution")
    kernel = nf.kernel_basis((ident + sigma).tolist())
    if any(abs(x) > _INT64_SAFE for row in kernel for x in row):
        raise HomologyError("Prym basis too large for int64 arithmetic")
    K = np.array(kernel, dtype=np.int64).reshape(r, -1)
    k = K.shape[1]
    if k == 0:
        empty = np.zeros((0, 0), dtype=np.int64)
        return PrymLattice(h1, sigma, K, empty, np.zeros((0, r), dtype=np.int64), [], [])
    L = nf.left_inverse(K.tolist())
    if any(abs(x) > _INT64_SAFE for row in L for x in row):
        raise HomologyError("Prym basis too large for int64 arithmetic")
    L = np.array(L, dtype=np.int64)
    restricted = K.T @ h1.form @ K
    divisors = nf.elementary_divisors(restricted.tolist())
    image = L @ (ident - sigma)
    index_divs = nf.elementary_divisors(image.tolist())
    return PrymLattice(h1, sigma, K, restricted, L, divisors, index_divs)


def restrict_map(mat: np.ndarray, source: PrymLattice, target: PrymLattice) -> np.ndarray:
    """Matrix of an H1 map between Prym lattices in their bases."""
    return target.coordinates(mat @ source.basis)
