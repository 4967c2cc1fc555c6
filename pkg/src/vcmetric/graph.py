"""Simple undirected graphs with dense distances, twin/simplicial predicates,
vertex covers and the text graph format.

Vertices are the integers ``0..n-1``.  Graph values are immutable; derived
data (distance matrix, bitmasks) is computed lazily and cached on the value.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import BudgetExceeded, ParseError

# strictly larger than any finite hop count of a desk-scale graph
UNREACHABLE = 1 << 30


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]
    labels: tuple[str | None, ...] | None = None

    def __post_init__(self) -> None:
        if len(self.adjacency) != self.n:
            raise ValueError("adjacency must have one entry per vertex")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("labels must have one entry per vertex")
        for u, nbrs in enumerate(self.adjacency):
            prev = -1
            for v in nbrs:
                if not 0 <= v < self.n:
                    raise ValueError(f"neighbor {v} of {u} out of range")
                if v == u:
                    raise ValueError(f"self-loop at {u}")
                if v <= prev:
                    raise ValueError(f"neighbors of {u} not strictly ascending")
                prev = v
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u not in self.neighbor_sets[v]:
                    raise ValueError(f"asymmetric edge {u}-{v}")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[str | None] | None = None,
    ) -> Graph:
        """Build a graph, rejecting self-loops and duplicate edges."""
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} out of range for n={n}")
            if v in nbrs[u]:
                raise ValueError(f"duplicate edge {u}-{v}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(
            n,
            tuple(tuple(sorted(s)) for s in nbrs),
            tuple(labels) if labels is not None else None,
        )

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbor_sets[u]

    def label(self, v: int) -> str | None:
        return None if self.labels is None else self.labels[v]

    @cached_property
    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adjacency)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Open neighborhoods as integer bitmasks."""
        out = []
        for nbrs in self.adjacency:
            m = 0
            for v in nbrs:
                m |= 1 << v
            out.append(m)
        return tuple(out)

    @cached_property
    def dist(self) -> np.ndarray:
        return all_pairs_distances(self)

    @cached_property
    def dist_rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(row) for row in self.dist.tolist())

    @cached_property
    def interval_masks(self) -> tuple[tuple[int, ...], ...]:
        """``interval_masks[a][b]``: bitmask of vertices on some shortest a-b path."""
        d = self.dist
        out = []
        for a in range(self.n):
            on_path = ((d[a][None, :] + d) == d[a][:, None]) & (d[a][:, None] < UNREACHABLE)
            packed = np.packbits(on_path, axis=1, bitorder="little")
            out.append(tuple(int.from_bytes(row.tobytes(), "little") for row in packed))
        return tuple(out)

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = {0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for v in self.adjacency[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return len(seen) == self.n

    def induced_subgraph(self, keep: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
        """Subgraph on ``keep``; returns it with the new-id -> old-id map."""
        id_map = tuple(sorted(set(keep)))
        index = {old: new for new, old in enumerate(id_map)}
        adj = tuple(
            tuple(index[w] for w in self.adjacency[old] if w in index) for old in id_map
        )
        labels = None if self.labels is None else tuple(self.labels[o] for o in id_map)
        return Graph(len(id_map), adj, labels), id_map

    def remove_vertices(self, drop: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
        dropped = set(drop)
        return self.induced_subgraph(v for v in range(self.n) if v not in dropped)


def all_pairs_distances(g: Graph) -> np.ndarray:
    """Dense hop-count matrix; cross-component pairs get ``UNREACHABLE``."""
    if g.n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    rows, cols = [], []
    for u, nbrs in enumerate(g.adjacency):
        rows.extend([u] * len(nbrs))
        cols.extend(nbrs)
    adj = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(g.n, g.n))
    d = shortest_path(adj, method="D", directed=False, unweighted=True)
    out = np.full((g.n, g.n), UNREACHABLE, dtype=np.int64)
    finite = np.isfinite(d)
    out[finite] = d[finite].astype(np.int64)
    return out


def twin_classes(g: Graph, kind: str = "false") -> list[list[int]]:
    """Partition V by equal open (``kind="false"``) or closed (``"true"``)
    neighborhoods.  Singletons are included; classes are ordered by their
    smallest member."""
    if kind not in ("false", "true"):
        raise ValueError(f"kind must be 'false' or 'true', got {kind!r}")
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        key = g.masks[v] | (1 << v) if kind == "true" else g.masks[v]
        groups.setdefault(key, []).append(v)
    return sorted(groups.values(), key=lambda c: c[0])


def simplicial_vertices(g: Graph) -> list[int]:
    out = []
    masks = g.masks
    for v in range(g.n):
        nv = masks[v]
        if all((masks[u] | (1 << u)) & nv == nv for u in g.adjacency[v]):
            out.append(v)
    return out


def is_vertex_cover(g: Graph, cover: Iterable[int]) -> bool:
    c = set(cover)
    return all(u in c or v in c for u, v in g.edges())


def vertex_cover_2approx(g: Graph) -> list[int]:
    """Endpoints of a greedy maximal matching, edges scanned in lexicographic order."""
    matched: set[int] = set()
    for u, v in g.edges():
        if u not in matched and v not in matched:
            matched.add(u)
            matched.add(v)
    return sorted(matched)


def minimal_cover(g: Graph, cover: Iterable[int]) -> list[int]:
    """Drop cover vertices whose whole neighborhood is already covered, highest
    degree last, until the cover is inclusion-minimal."""
    c = set(cover)
    for v in sorted(c, key=lambda v: (g.degree(v), v)):
        if all(u in c for u in g.neighbors(v)):
            c.discard(v)
    return sorted(c)


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _bits(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def vertex_cover_exact(g: Graph, budget: int | None = None) -> list[int]:
    """Minimum vertex cover by two-way branching on a maximum-degree vertex.

    Degree-0 vertices are dropped and degree-1 vertices fold (their neighbor
    is taken).  Raises ``BudgetExceeded`` if ``budget`` is given and every
    cover is larger than it.
    """
    masks = g.masks
    approx = vertex_cover_2approx(g)
    bound = len(approx) + 1
    if budget is not None:
        if budget < 0:
            raise BudgetExceeded(f"vertex cover budget {budget} is negative")
        bound = min(bound, budget + 1)
    best: list[int] | None = None
    best_size = bound

    def matching_lb(alive: int) -> int:
        size = 0
        free = alive
        for u in _bits(alive):
            if not free >> u & 1:
                continue
            nb = masks[u] & free
            if nb:
                w = (nb & -nb).bit_length() - 1
                free &= ~((1 << u) | (1 << w))
                size += 1
        return size

    def search(alive: int, taken: list[int]) -> None:
        nonlocal best, best_size
        taken = list(taken)
        changed = True
        while changed:
            changed = False
            for v in _bits(alive):
                if not alive >> v & 1:
                    continue
                nb = masks[v] & alive
                if nb == 0:
                    alive &= ~(1 << v)
                    changed = True
                elif nb & (nb - 1) == 0:
                    w = nb.bit_length() - 1
                    taken.append(w)
                    alive &= ~((1 << v) | (1 << w))
                    changed = True
        if len(taken) >= best_size:
            return
        if alive == 0:
            best, best_size = sorted(taken), len(taken)
            return
        if len(taken) + matching_lb(alive) >= best_size:
            return
        pick, pick_deg = -1, -1
        for v in _bits(alive):
            d = _popcount(masks[v] & alive)
            if d > pick_deg:
                pick, pick_deg = v, d
        search(alive & ~(1 << pick), taken + [pick])
        nb = masks[pick] & alive
        search(alive & ~nb & ~(1 << pick), taken + _bits(nb))

    search((1 << g.n) - 1, [])
    if best is None:
        raise BudgetExceeded(f"vertex cover number exceeds budget {budget}")
    return best


# ---------------------------------------------------------------- file format


def dumps_graph(g: Graph, comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p edge {g.n} {g.m}")
    if g.labels is not None:
        for v, lab in enumerate(g.labels):
            if lab is not None:
                lines.append(f"l {v + 1} {lab}")
    for u, v in sorted(g.edges()):
        lines.append(f"e {u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


def loads_graph(text: str, path: str | None = None) -> Graph:
    n = None
    m_declared = 0
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    labels: dict[int, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise ParseError("duplicate header line", lineno, path)
            if len(parts) != 4 or parts[1] != "edge":
                raise ParseError("header must read 'p edge <n> <m>'", lineno, path)
            try:
                n, m_declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError("non-integer in header", lineno, path) from None
            if n < 0 or m_declared < 0:
                raise ParseError("negative count in header", lineno, path)
            continue
        if n is None:
            raise ParseError(f"'{tag}' line before header", lineno, path)
        if tag == "e":
            if len(parts) != 3:
                raise ParseError("edge line must read 'e <u> <v>'", lineno, path)
            try:
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
            except ValueError:
                raise ParseError("non-integer vertex id", lineno, path) from None
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"vertex id out of range 1..{n}", lineno, path)
            if u == v:
                raise ParseError(f"self-loop at vertex {u + 1}", lineno, path)
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ParseError(f"duplicate edge {u + 1}-{v + 1}", lineno, path)
            seen.add(key)
            edges.append(key)
        elif tag == "l":
            fields = line.split(maxsplit=2)
            if len(fields) != 3:
                raise ParseError("label line must read 'l <v> <label>'", lineno, path)
            try:
                v = int(fields[1]) - 1
            except ValueError:
                raise ParseError("non-integer vertex id", lineno, path) from None
            if not 0 <= v < n:
                raise ParseError(f"vertex id out of range 1..{n}", lineno, path)
            labels[v] = fields[2]
        else:
            raise ParseError(f"unknown line type '{tag}'", lineno, path)
    if n is None:
        raise ParseError("missing 'p edge' header", None, path)
    if len(edges) != m_declared:
        raise ParseError(
            f"header declares {m_declared} edges but {len(edges)} were given", None, path
        )
    lab = tuple(labels.get(v) for v in range(n)) if labels else None
    return Graph.from_edges(n, edges, lab)


def read_graph(path: str | Path) -> Graph:
    p = Path(path)
    return loads_graph(p.read_text(encoding="utf-8"), str(p))


def write_graph(g: Graph, path: str | Path, comments: Sequence[str] = ()) -> None:
    Path(path).write_text(dumps_graph(g, comments), encoding="utf-8")
