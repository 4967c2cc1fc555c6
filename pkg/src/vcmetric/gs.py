"""Geodetic Set: verification, brute force, kernel (simplicial and open-twin
rules), XP and FPT solvers."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .graph import (
    Graph,
    is_vertex_cover,
    minimal_cover,
    simplicial_vertices,
    twin_classes,
    vertex_cover_2approx,
    vertex_cover_exact,
)
from .instances import Instance, KernelResult, SolutionCertificate, trivial_no_instance
from .md import require_connected


def coverage(g: Graph, s: Sequence[int]) -> int:
    """Bitmask of vertices lying on a shortest path between two members of s
    (a member covers itself through the length-0 path)."""
    masks = g.interval_masks
    acc = 0
    for i, a in enumerate(s):
        row = masks[a]
        for b in s[i:]:
            acc |= row[b]
    return acc


def is_geodetic(g: Graph, s: Iterable[int]) -> bool:
    require_connected(g)
    s = sorted(set(s))
    return coverage(g, s) == (1 << g.n) - 1


class PartialCover:
    """Coverage of ``fixed + extra`` with the ``fixed`` part precomputed."""

    def __init__(self, g: Graph, fixed: Sequence[int] = ()):
        self.masks = g.interval_masks
        self.full = (1 << g.n) - 1
        self.base = coverage(g, fixed)
        self.fixed = tuple(fixed)
        self._with_fixed: dict[int, int] = {}

    def gain(self, c: int) -> int:
        got = self._with_fixed.get(c)
        if got is None:
            row = self.masks[c]
            got = row[c]
            for f in self.fixed:
                got |= row[f]
            self._with_fixed[c] = got
        return got

    def covers_with(self, extra: Sequence[int]) -> bool:
        acc = self.base
        masks = self.masks
        for i, c in enumerate(extra):
            acc |= self.gain(c)
            row = masks[c]
            for d in extra[i + 1 :]:
                acc |= row[d]
        return acc == self.full


def gs_bruteforce(g: Graph) -> list[int]:
    """Minimum geodetic set, first in (size, lexicographic) order."""
    require_connected(g)
    full = (1 << g.n) - 1
    for size in range(g.n + 1):
        for cand in combinations(range(g.n), size):
            if coverage(g, cand) == full:
                return list(cand)
    raise AssertionError("V(G) is always geodetic")


def _rule_simplicial_twins(g: Graph) -> tuple[int, int] | None:
    simplicial = set(simplicial_vertices(g))
    hits = []
    for kind in ("false", "true"):
        for cls in twin_classes(g, kind):
            if len(cls) >= 3 and cls[0] in simplicial:
                hits.append(cls)
    if not hits:
        return None
    cls = min(hits)
    return cls[-1], cls[0]


def _rule_open_twins(g: Graph) -> tuple[int, int] | None:
    simplicial = set(simplicial_vertices(g))
    for cls in twin_classes(g, "false"):
        # false twins of size >= 2 are never adjacent, hence never true twins
        if len(cls) >= 6 and cls[0] not in simplicial:
            return cls[-1], cls[0]
    return None


def gs_kernelize(inst: Instance, vc_hint: Iterable[int] | None = None) -> KernelResult:
    """Apply the simplicial-twin rule exhaustively (budget drops by one per
    deletion), then the open-twin rule (budget unchanged), until neither fires."""
    g, k = inst.g, inst.k
    if vc_hint is None:
        cover = minimal_cover(g, vertex_cover_2approx(g))
    else:
        cover = sorted(set(vc_hint))
        if not is_vertex_cover(g, cover):
            raise ValueError("vc_hint is not a vertex cover")
    cur = g
    id_map: tuple[int, ...] = tuple(range(g.n))
    removed: list[tuple[int, int]] = []
    readd: list[int] = []

    def delete(v: int) -> None:
        nonlocal cur, id_map
        cur, sub_map = cur.remove_vertices([v])
        id_map = tuple(id_map[i] for i in sub_map)

    progress = True
    while progress:
        progress = False
        while (hit := _rule_simplicial_twins(cur)) is not None:
            gone, keep = hit
            removed.append((id_map[gone], id_map[keep]))
            readd.append(id_map[gone])
            k -= 1
            delete(gone)
            progress = True
        while (hit := _rule_open_twins(cur)) is not None:
            gone, keep = hit
            removed.append((id_map[gone], id_map[keep]))
            delete(gone)
            progress = True
    if k < 0:
        return KernelResult(trivial_no_instance(), tuple(removed), (), tuple(readd))
    index = {old: new for new, old in enumerate(id_map)}
    return KernelResult(
        Instance(cur, k),
        tuple(removed),
        id_map,
        tuple(readd),
        tuple(index[v] for v in cover if v in index),
    )


def gs_xp_solve(inst: Instance) -> SolutionCertificate | None:
    """All simplicial vertices are forced; the rest of a minimum solution has
    at most |X| vertices for a minimum vertex cover X."""
    g, k = inst.g, inst.k
    require_connected(g)
    simplicial = simplicial_vertices(g)
    if len(simplicial) > k:
        return None
    cover = vertex_cover_exact(g)
    forced = set(simplicial)
    pool = [v for v in range(g.n) if v not in forced]
    checker = PartialCover(g, simplicial)
    # sets with more than k - |simplicial| extra vertices can never qualify
    for size in range(min(len(cover), k - len(simplicial)) + 1):
        for extra in combinations(pool, size):
            if checker.covers_with(extra):
                sol = tuple(sorted(forced.union(extra)))
                return SolutionCertificate(
                    "gs",
                    k,
                    sol,
                    is_geodetic(g, sol),
                    {"cover": tuple(cover), "simplicial": tuple(simplicial)},
                )
    return None


def gs_fpt_solve(inst: Instance) -> SolutionCertificate | None:
    g, k = inst.g, inst.k
    require_connected(g)
    kern = gs_kernelize(inst)
    if kern.is_trivial_no:
        return None
    sub = gs_xp_solve(kern.reduced)
    if sub is None:
        return None
    # deleted simplicial twins are forced back in; deleted open twins are
    # covered by whatever covers a surviving twin outside the solution
    sol = tuple(sorted({kern.id_map[v] for v in sub.vertices} | set(kern.readd)))
    if len(sol) > k or not is_geodetic(g, sol):
        raise AssertionError("lifted kernel solution failed verification")
    return SolutionCertificate(
        "gs", k, sol, True, {"kernel_n": kern.reduced.g.n, "kernel_k": kern.reduced.k}
    )
