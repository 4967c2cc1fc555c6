"""Corpora and independent oracles shared by the test modules."""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

import networkx as nx

from vcmetric.graph import Graph
from vcmetric.sat import PartitionedCnf


def from_nx(h: nx.Graph) -> Graph:
    h = nx.convert_node_labels_to_integers(h)
    return Graph.from_edges(h.number_of_nodes(), sorted(tuple(sorted(e)) for e in h.edges()))


def path_graph(n: int) -> Graph:
    return from_nx(nx.path_graph(n))


def cycle_graph(n: int) -> Graph:
    return from_nx(nx.cycle_graph(n))


def complete_graph(n: int) -> Graph:
    return from_nx(nx.complete_graph(n))


def petersen() -> Graph:
    return from_nx(nx.petersen_graph())


@lru_cache(maxsize=None)
def atlas_connected(max_n: int = 6) -> tuple[Graph, ...]:
    """Every connected graph on 1..max_n vertices, one per isomorphism class."""
    out = []
    for h in nx.graph_atlas_g():
        if 1 <= h.number_of_nodes() <= max_n and nx.is_connected(h):
            out.append(from_nx(h))
    return tuple(out)


def random_connected(n: int, p: float, rng: random.Random) -> Graph:
    pairs = list(itertools.combinations(range(n), 2))
    while True:
        g = Graph.from_edges(n, [e for e in pairs if rng.random() < p])
        if g.is_connected():
            return g


@lru_cache(maxsize=None)
def random_corpus(count: int = 500, seed: int = 20240601) -> tuple[Graph, ...]:
    rng = random.Random(seed)
    return tuple(
        random_connected(rng.randint(7, 10), rng.uniform(0.2, 0.6), rng) for _ in range(count)
    )


def twin_heavy_graph(cover_size: int, extra: int, rng: random.Random) -> tuple[Graph, list[int]]:
    """A connected graph with a planted vertex cover X of the given size whose
    independent side draws its neighborhoods from a few subsets of X, so the
    twin rules have something to do.  Returns the graph and X."""
    while True:
        x = list(range(cover_size))
        edges = {e for e in itertools.combinations(x, 2) if rng.random() < 0.4}
        pool = [
            frozenset(v for v in x if rng.random() < 0.5) or frozenset({rng.choice(x)})
            for _ in range(rng.randint(2, 5))
        ]
        for i in range(extra):
            v = cover_size + i
            for u in rng.choice(pool):
                edges.add((u, v))
        g = Graph.from_edges(cover_size + extra, sorted(edges))
        if g.is_connected():
            return g, x


# --------------------------------------------------------------- oracles


def nx_resolving(g: Graph, s) -> bool:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    dist = dict(nx.all_pairs_shortest_path_length(h))
    vectors = {tuple(dist[w][v] for w in s) for v in range(g.n)}
    return len(vectors) == g.n


def nx_geodetic(g: Graph, s) -> bool:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    covered = set(s)
    for a, b in itertools.combinations(sorted(s), 2):
        for p in nx.all_shortest_paths(h, a, b):
            covered.update(p)
    return len(covered) == g.n


def nx_min_size(g: Graph, check) -> int:
    for size in range(g.n + 1):
        for cand in itertools.combinations(range(g.n), size):
            if check(g, cand):
                return size
    raise AssertionError("unreachable")


def dpll(clauses: list[tuple[int, ...]]) -> dict[int, bool] | None:
    """Small unit-propagating DPLL, independent of the package's brute force."""
    clauses = [frozenset(c) for c in clauses]
    assignment: dict[int, bool] = {}

    def simplify(cs, lit):
        out = []
        for c in cs:
            if lit in c:
                continue
            if -lit in c:
                c = c - {-lit}
                if not c:
                    return None
            out.append(c)
        return out

    def solve(cs, assign):
        while True:
            unit = next((c for c in cs if len(c) == 1), None)
            if unit is None:
                break
            (lit,) = unit
            assign = {**assign, abs(lit): lit > 0}
            cs = simplify(cs, lit)
            if cs is None:
                return None
        if not cs:
            return assign
        lit = next(iter(cs[0]))
        for choice in (lit, -lit):
            nxt = simplify(cs, choice)
            if nxt is not None:
                got = solve(nxt, {**assign, abs(choice): choice > 0})
                if got is not None:
                    return got
        return None

    return solve(clauses, assignment)


# ------------------------------------------------------------ formula corpus


def _parts(n: int) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    return tuple(tuple(range(p * n + 1, p * n + n + 1)) for p in range(3))  # type: ignore[return-value]


def random_formula(n: int, m: int, rng: random.Random) -> PartitionedCnf:
    parts = _parts(n)
    clauses = []
    for _ in range(m):
        touched = sorted(rng.sample(range(3), rng.randint(1, 3)))
        clauses.append(tuple(rng.choice(parts[p]) * rng.choice((1, -1)) for p in touched))
    return PartitionedCnf(n, parts, tuple(clauses))


def contradiction(n: int, rng: random.Random, m: int) -> PartitionedCnf:
    """(x or y) and not x and not y, for x, y in different parts, plus filler."""
    parts = _parts(n)
    pa, pb = rng.sample(range(3), 2)
    x, y = rng.choice(parts[pa]), rng.choice(parts[pb])
    clauses = [(min(x, y), max(x, y)), (-x,), (-y,)]
    filler = random_formula(n, max(0, m - 3), rng).clauses
    return PartitionedCnf(n, parts, tuple(clauses) + filler)


@lru_cache(maxsize=None)
def formula_corpus(size: int = 60, seed: int = 4242) -> tuple[PartitionedCnf, ...]:
    """Seeded mix of random and planted-unsatisfiable formulas, n in {1, 4},
    1 <= m <= 6."""
    rng = random.Random(seed)
    out = []
    for idx in range(size):
        n = (1, 4)[idx % 2]
        m = rng.randint(1, 6)
        if idx % 5 == 4:
            out.append(contradiction(n, rng, max(m, 3)))
        else:
            out.append(random_formula(n, m, rng))
    return tuple(out)
