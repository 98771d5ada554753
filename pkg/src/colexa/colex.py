"""Colex lattices: validation, star-bipartitions, and the example builders.

A colex is a celluation of an orientable manifold whose vertices have valency
mu+1 and whose top cells are properly (mu+1)-colored.  Orientability itself is
not checked; the combinatorial consequences that the code constructions
actually consume are: a bipartite 1-skeleton, the proper coloring, and the
balanced star counts inside every cell.  Punctured lattices (one vertex and
its incident cells removed) are first-class and carry the off-by-one global
star count.
"""

from __future__ import annotations

import itertools
from collections import defaultdict, deque
from dataclasses import dataclass

from .reports import ValidationReport


@dataclass(frozen=True)
class Cell:
    """A k-cell, stored extensionally as its vertex set."""

    dim: int
    vertices: frozenset
    color: int | None = None


@dataclass(frozen=True)
class Lattice:
    """A (possibly punctured) mu-dimensional colex candidate.

    The star map may hold None values before star_bipartition has run.
    Vertices are integer ids; 0-cells are not stored.
    """

    mu: int
    punctured: bool
    vertex_ids: tuple
    star: dict
    cells: tuple

    def cells_of_dim(self, k: int) -> list:
        return [c for c in self.cells if c.dim == k]

    def adjacency(self) -> dict:
        """Vertex adjacency from the 1-cells."""
        adj = defaultdict(set)
        for c in self.cells:
            if c.dim == 1:
                u, v = sorted(c.vertices)
                adj[u].add(v)
                adj[v].add(u)
        return adj

    def starred(self) -> list:
        return [v for v in self.vertex_ids if self.star.get(v) is True]

    def unstarred(self) -> list:
        return [v for v in self.vertex_ids if self.star.get(v) is False]

    def star_signs(self) -> tuple:
        """sigma_j per vertex in vertex_ids order: +1 unstarred, -1 starred."""
        out = []
        for v in self.vertex_ids:
            flag = self.star.get(v)
            if flag is None:
                raise ValueError("star flags not assigned; run star_bipartition")
            out.append(-1 if flag else 1)
        return tuple(out)

    def with_star(self, star: dict) -> "Lattice":
        return Lattice(self.mu, self.punctured, self.vertex_ids, dict(star), self.cells)


def validate_colex(L: Lattice) -> ValidationReport:
    """Check the combinatorially-checkable colex axioms.

    Failures are report entries, never exceptions.
    """
    rep = ValidationReport()
    vset = set(L.vertex_ids)

    bad_dims = [c for c in L.cells if not (1 <= c.dim <= L.mu)]
    bad_verts = [c for c in L.cells if not c.vertices or not c.vertices <= vset]
    bad_edges = [c for c in L.cells if c.dim == 1 and len(c.vertices) != 2]
    rep.add(
        "cell-sanity",
        not bad_dims and not bad_verts and not bad_edges,
        "cell dims in [1,mu], nonempty vertex sets, 1-cells of size 2",
    )

    adj = L.adjacency()
    over = [v for v in L.vertex_ids if len(adj.get(v, ())) > L.mu + 1]
    if L.punctured:
        ok = not over
        detail = "valency <= mu+1 (boundary vertices may be lower)"
    else:
        under = [v for v in L.vertex_ids if len(adj.get(v, ())) != L.mu + 1]
        ok = not over and not under
        detail = "valency == mu+1 at every vertex"
    rep.add("vertex-valency", ok, detail, witness=sorted(over)[:5] or None)

    top = L.cells_of_dim(L.mu)
    uncolored = [c for c in top if c.color is None or not (0 <= c.color <= L.mu)]
    clashes = []
    for a, b in itertools.combinations(top, 2):
        if a.color is not None and a.color == b.color and a.vertices & b.vertices:
            clashes.append((sorted(a.vertices)[0], sorted(b.vertices)[0]))
    rep.add(
        "mu-cell-coloring",
        not uncolored and not clashes,
        "top cells carry colors in [0,mu]; same-colored cells never share a vertex",
        witness=clashes[:3] or None,
    )

    odd = _odd_cycle_witness(L, adj)
    rep.add(
        "bipartite-skeleton",
        odd is None,
        "1-skeleton admits a 2-coloring",
        witness=odd,
    )
    return rep


def _odd_cycle_witness(L: Lattice, adj=None):
    """None if the 1-skeleton is bipartite, else an offending vertex pair."""
    if adj is None:
        adj = L.adjacency()
    color = {}
    for root in sorted(L.vertex_ids):
        if root in color:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in sorted(adj.get(u, ())):
                if w not in color:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return [u, w]
    return None


def star_bipartition(L: Lattice) -> Lattice:
    """Assign star flags by deterministic BFS 2-coloring of the 1-skeleton.

    For punctured lattices the per-component colorings are oriented (flipped
    or not, lexicographically first feasible pattern) so that the global
    counts satisfy |starred| = |unstarred| - 1.  Odd cycles raise ValueError.
    """
    adj = L.adjacency()
    comps = []  # (ordered vertex list, side flag per vertex with seed False)
    color = {}
    for root in sorted(L.vertex_ids):
        if root in color:
            continue
        color[root] = False
        comp = [root]
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in sorted(adj.get(u, ())):
                if w not in color:
                    color[w] = not color[u]
                    comp.append(w)
                    queue.append(w)
                elif color[w] == color[u]:
                    raise ValueError(f"1-skeleton has an odd cycle through {u},{w}")
        comps.append(comp)

    # diff contributed by a component = (#True - #False) under the seed
    # orientation; flipping the component negates it
    diffs = [
        sum(1 if color[v] else -1 for v in comp) for comp in comps
    ]
    target = -1 if L.punctured else 0  # starred minus unstarred
    flips = _orientation_flips(diffs, target)
    if flips is None:
        if L.punctured:
            raise ValueError(
                "no component orientation achieves |starred| = |unstarred| - 1"
            )
        flips = [False] * len(comps)  # closed: report via check_cell_balance

    star = {}
    for comp, flip in zip(comps, flips):
        for v in comp:
            star[v] = color[v] != flip
    return L.with_star(star)


def _orientation_flips(diffs, target):
    """Lexicographically first flip pattern with sum(+-diffs) == target."""
    # reachable[i] = set of partial sums achievable using components i..end
    n = len(diffs)
    reachable = [set() for _ in range(n + 1)]
    reachable[n].add(0)
    for i in range(n - 1, -1, -1):
        for s in reachable[i + 1]:
            reachable[i].add(s + diffs[i])
            reachable[i].add(s - diffs[i])
    if target not in reachable[0]:
        return None
    flips = []
    remaining = target
    for i in range(n):
        if remaining - diffs[i] in reachable[i + 1]:
            flips.append(False)
            remaining -= diffs[i]
        else:
            flips.append(True)
            remaining += diffs[i]
    return flips


def check_cell_balance(L: Lattice) -> ValidationReport:
    """Check that every cell holds equal starred and unstarred vertex counts.

    Also checks the global count (equal when closed, off-by-one punctured).
    Star flags must be assigned first.
    """
    rep = ValidationReport()
    if any(L.star.get(v) is None for v in L.vertex_ids):
        rep.add("star-flags-present", False, "star flags missing")
        return rep
    rep.add("star-flags-present", True)

    bad = []
    for c in L.cells:
        ns = sum(1 for v in c.vertices if L.star[v])
        if 2 * ns != len(c.vertices):
            bad.append({"dim": c.dim, "vertices": sorted(c.vertices)})
    rep.add(
        "cell-balance",
        not bad,
        "every cell contains equally many starred and unstarred vertices",
        witness=bad[:3] or None,
    )

    ns = len(L.starred())
    nu = len(L.unstarred())
    if L.punctured:
        rep.add(
            "global-count",
            ns == nu - 1,
            f"punctured: starred {ns} must equal unstarred {nu} minus 1",
        )
    else:
        rep.add("global-count", ns == nu, f"closed: starred {ns} == unstarred {nu}")
    return rep


def _self_verify(L: Lattice) -> Lattice:
    """Builders run the full validation stack before returning."""
    rep = validate_colex(L)
    if not rep.ok:
        raise AssertionError(f"builder produced an invalid lattice: {rep.to_dict()}")
    L = star_bipartition(L)
    bal = check_cell_balance(L)
    if not bal.ok:
        raise AssertionError(f"builder lattice fails balance: {bal.to_dict()}")
    return L


def build_tetrahedral(d: int):
    """The 15-vertex punctured 3-colex and its color code.

    Vertices are the nonzero 4-bit strings; the complex is the boundary of
    the 4-cube with the 0000 vertex punctured out.  k-cells fix 4-k bits to a
    pattern that is not all-zero: 4 cubic 3-cells C_i = {bit i set}, 18
    square 2-cells, 28 edges.  Star flag = even popcount.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    verts = tuple(range(1, 16))
    cells = []
    for i in range(4):
        members = frozenset(b for b in verts if b >> i & 1)
        cells.append(Cell(3, members, color=i))
    for free in itertools.combinations(range(4), 2):
        fixed = [i for i in range(4) if i not in free]
        for pattern in itertools.product((0, 1), repeat=2):
            if pattern == (0, 0):
                continue
            members = frozenset(
                b for b in verts
                if all(b >> i & 1 == p for i, p in zip(fixed, pattern))
            )
            cells.append(Cell(2, members))
    for free in range(4):
        fixed = [i for i in range(4) if i != free]
        for pattern in itertools.product((0, 1), repeat=3):
            if pattern == (0, 0, 0):
                continue
            members = frozenset(
                b for b in verts
                if all(b >> i & 1 == p for i, p in zip(fixed, pattern))
            )
            cells.append(Cell(1, members))

    L = _self_verify(Lattice(3, True, verts, {v: None for v in verts}, tuple(cells)))
    for v in verts:
        assert L.star[v] == (bin(v).count("1") % 2 == 0), "popcount star rule"

    from .code import from_colex

    return L, from_colex(L, mu_prime=3, d=d)


def build_triangle_2d(d: int, distance: int):
    """Triangular patch of the hexagonal 6.6.6 2-colex and its color code.

    Built from the dual picture: plaquette centers live on a triangular wedge
    of the integer lattice and qubits are the unit triangles of that wedge
    plus boundary faces; corners sit in a single plaquette each, so every
    side of the patch holds an odd number of qudits and the nominal distance
    is `distance`.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    if distance < 3 or distance % 2 == 0:
        raise ValueError("distance must be an odd integer >= 3")
    k = (distance - 1) // 2
    lo, hi = -(k + 6), 3 * k + 6
    centers = [
        (a, b)
        for a in range(lo, hi)
        for b in range(lo, hi)
        if a + 2 * b >= 0 and a - b >= -4 and 2 * a + b <= 3 * k - 4
    ]
    cset = set(centers)
    assert len(centers) == 3 * k * (k + 1) // 2

    # qudits interior to the patch: unit up/down triangles of the wedge
    tris = []
    for a in range(lo - 1, hi):
        for b in range(lo - 1, hi):
            up = [(a, b), (a + 1, b), (a, b + 1)]
            down = [(a + 1, b), (a, b + 1), (a + 1, b + 1)]
            if all(p in cset for p in up):
                tris.append(tuple(up))
            if all(p in cset for p in down):
                tris.append(tuple(down))

    tri_count = defaultdict(int)
    edge_count = defaultdict(int)
    for t in tris:
        for p in t:
            tri_count[p] += 1
        for e in itertools.combinations(sorted(t), 2):
            edge_count[e] += 1

    # walk the boundary cycle of the wedge to place side and corner qudits
    boundary = defaultdict(list)
    for (u, v), cnt in edge_count.items():
        if cnt == 1:
            boundary[u].append(v)
            boundary[v].append(u)
    assert all(len(nbrs) == 2 for nbrs in boundary.values())
    start = min(boundary)
    walk, prev = [start], None
    while True:
        nxt = [w for w in boundary[walk[-1]] if w != prev][0]
        prev = walk[-1]
        walk.append(nxt)
        if nxt == start:
            break
    walk = walk[:-1]
    assert len(walk) == len(boundary)

    tips = [p for p in walk if tri_count[p] == 1]
    assert len(tips) == 3
    tip_idx = [i for i, p in enumerate(walk) if p in tips]

    faces = [frozenset(t) for t in tris]
    m = len(walk)
    for side in range(3):
        i = tip_idx[side]
        while i != tip_idx[(side + 1) % 3]:
            faces.append(frozenset([walk[i], walk[(i + 1) % m], ("S", side)]))
            i = (i + 1) % m
    for side in range(3):
        faces.append(
            frozenset([walk[tip_idx[(side + 1) % 3]], ("S", side), ("S", (side + 1) % 3)])
        )

    # re-key qudits by contiguous integer id, sorted for determinism
    faces = sorted(faces, key=lambda f: sorted(map(str, f)))
    fid = {f: i for i, f in enumerate(faces)}
    verts = tuple(range(len(faces)))

    cells = []
    for p in sorted(cset):
        members = frozenset(fid[f] for f in faces if p in f)
        cells.append(Cell(2, members, color=(p[0] - p[1]) % 3))
    for fa, fb in itertools.combinations(faces, 2):
        if len(fa & fb) == 2:
            cells.append(Cell(1, frozenset((fid[fa], fid[fb]))))

    L = _self_verify(Lattice(2, True, verts, {v: None for v in verts}, tuple(cells)))

    from .code import from_colex

    return L, from_colex(L, mu_prime=2, d=d)


def lattice_to_json(L: Lattice) -> dict:
    return {
        "mu": L.mu,
        "punctured": L.punctured,
        "vertices": [
            {"id": _vid(v), "star": L.star.get(v)} for v in L.vertex_ids
        ],
        "cells": [
            {
                "dim": c.dim,
                "color": c.color,
                "vertices": sorted(_vid(v) for v in c.vertices),
            }
            for c in L.cells
        ],
    }


def lattice_from_json(obj: dict) -> Lattice:
    verts = tuple(v["id"] for v in obj["vertices"])
    star = {v["id"]: v.get("star") for v in obj["vertices"]}
    cells = tuple(
        Cell(c["dim"], frozenset(c["vertices"]), c.get("color"))
        for c in obj["cells"]
    )
    return Lattice(obj["mu"], bool(obj["punctured"]), verts, star, cells)


def _vid(v) -> int:
    if not isinstance(v, int):
        raise ValueError("JSON export requires integer vertex ids")
    return v
