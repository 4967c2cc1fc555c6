"""Metric Dimension: verification, brute force, twin kernel, XP and FPT solvers."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .errors import Disconnected
from .graph import Graph, is_vertex_cover, minimal_cover, vertex_cover_2approx, vertex_cover_exact
from .instances import Instance, KernelResult, SolutionCertificate, trivial_no_instance


def require_connected(g: Graph) -> None:
    if not g.is_connected():
        raise Disconnected("graph is not connected")


def is_resolving(g: Graph, s: Iterable[int]) -> bool:
    """True iff the distance vectors to ``s`` are pairwise distinct."""
    require_connected(g)
    s = list(s)
    if not s:
        return g.n <= 1
    rows = g.dist_rows
    return len(set(zip(*(rows[w] for w in s)))) == g.n


class PartialResolver:
    """Checks ``fixed + extra`` for resolvability when ``fixed`` is reused.

    Vertices already separated by ``fixed`` are discarded once; a candidate
    extension only has to split the remaining classes.
    """

    def __init__(self, g: Graph, fixed: Sequence[int] = ()):
        rows = g.dist_rows
        groups: dict[tuple[int, ...], list[int]] = {}
        for v in range(g.n):
            groups.setdefault(tuple(rows[f][v] for f in fixed), []).append(v)
        self.rows = rows
        self.classes = [c for c in groups.values() if len(c) > 1]

    def resolves_with(self, extra: Sequence[int]) -> bool:
        if not extra:
            return not self.classes
        rows = self.rows
        for cls in self.classes:
            keys = zip(*([rows[e][v] for v in cls] for e in extra))
            if len(set(keys)) < len(cls):
                return False
        return True


def md_bruteforce(g: Graph) -> list[int]:
    """Minimum resolving set; first hit in (size, lexicographic) order."""
    require_connected(g)
    checker = PartialResolver(g)
    for size in range(g.n + 1):
        for cand in combinations(range(g.n), size):
            if checker.resolves_with(cand):
                return list(cand)
    raise AssertionError("V(G) always resolves G")


def forced_twins(g: Graph, independent: Iterable[int]) -> list[int]:
    """All but the smallest member of each false-twin class inside ``independent``."""
    classes: dict[int, list[int]] = {}
    for v in sorted(independent):
        classes.setdefault(g.masks[v], []).append(v)
    return sorted(v for cls in classes.values() for v in cls[1:])


def md_kernelize(inst: Instance, vc_hint: Iterable[int] | None = None) -> KernelResult:
    """Exhaustive twin deletion: while three vertices of the independent side
    share an open neighborhood, delete one and pay for it in the budget."""
    g, k = inst.g, inst.k
    if vc_hint is None:
        cover = minimal_cover(g, vertex_cover_2approx(g))
    else:
        cover = sorted(set(vc_hint))
        if not is_vertex_cover(g, cover):
            raise ValueError("vc_hint is not a vertex cover")
    in_cover = set(cover)
    # neighborhoods of independent-side vertices lie inside the cover, so
    # deleting a twin never changes the class of any survivor
    classes: dict[int, list[int]] = {}
    for v in range(g.n):
        if v not in in_cover:
            classes.setdefault(g.masks[v], []).append(v)
    removed: list[tuple[int, int]] = []
    for cls in sorted(classes.values(), key=lambda c: c[0]):
        while len(cls) >= 3:
            removed.append((cls.pop(), cls[0]))
    k_new = k - len(removed)
    if k_new < 0:
        return KernelResult(
            trivial_no_instance(), tuple(removed), (), tuple(x for x, _ in removed)
        )
    reduced, id_map = g.remove_vertices(x for x, _ in removed)
    index = {old: new for new, old in enumerate(id_map)}
    return KernelResult(
        Instance(reduced, k_new),
        tuple(removed),
        id_map,
        tuple(x for x, _ in removed),
        tuple(index[v] for v in cover),
    )


def md_xp_solve(inst: Instance) -> SolutionCertificate | None:
    """n^O(vc) search: fix the forced twin set F, then try every small
    extension drawn from the cover and the non-forced independent vertices."""
    g, k = inst.g, inst.k
    require_connected(g)
    cover = vertex_cover_exact(g)
    in_cover = set(cover)
    independent = [v for v in range(g.n) if v not in in_cover]
    forced = forced_twins(g, independent)
    budget = k - len(forced)
    if budget < 0:
        return None
    forced_set = set(forced)
    pool = sorted(in_cover | (set(independent) - forced_set))
    checker = PartialResolver(g, forced)
    for size in range(min(len(cover), budget) + 1):
        for extra in combinations(pool, size):
            if checker.resolves_with(extra):
                sol = tuple(sorted(forced_set.union(extra)))
                return SolutionCertificate(
                    "md",
                    k,
                    sol,
                    is_resolving(g, sol),
                    {"cover": tuple(cover), "forced": tuple(forced)},
                )
    return None


def md_fpt_solve(inst: Instance) -> SolutionCertificate | None:
    """Kernelize, XP-solve the kernel, then lift back to the input graph."""
    g, k = inst.g, inst.k
    require_connected(g)
    kern = md_kernelize(inst)
    if kern.is_trivial_no:
        return None
    sub = md_xp_solve(kern.reduced)
    if sub is None:
        return None
    sol = tuple(sorted({kern.id_map[v] for v in sub.vertices} | set(kern.readd)))
    if len(sol) > k or not is_resolving(g, sol):
        raise AssertionError("lifted kernel solution failed verification")
    return SolutionCertificate(
        "md", k, sol, True, {"kernel_n": kern.reduced.g.n, "kernel_k": kern.reduced.k}
    )
