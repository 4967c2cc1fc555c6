"""Compile a 3-Partitioned-3-SAT formula into a Geodetic Set instance with
vertex cover O(sqrt n) and budget k = 10 sqrt n, plus witness construction
and lifting.

Per part and bucket i: an independent assignment set A_i, two pendant edges
(anchor, leaf) whose anchors see all of A_i, a validation vertex v_i and a
g-vertex g_i.  Per part: independent truth/false portals T, F.  Shared: a
clique U with pendant leaves U', and one vertex c_q per clause.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping, Sequence

import numpy as np

from .errors import BudgetExceeded, NotAGeodeticSet
from .graph import Graph
from .gs import PartialCover, is_geodetic
from .reduce_md import assignment_pattern, assignment_vertex
from .sat import MIN_REDUCTION_ROOT, PART_NAMES, Assignment, PartitionedCnf, prepare_for_reduction


@dataclass(frozen=True, eq=False)
class GsReductionArtifact:
    formula: PartitionedCnf
    g: Graph
    k: int
    roles: tuple[str, ...]
    buckets: dict[tuple[int, int], tuple[tuple[int, tuple[bool, ...]], ...]]
    # (part, i) -> ((anchor_1, leaf_1), (anchor_2, leaf_2))
    pendants: dict[tuple[int, int], tuple[tuple[int, int], tuple[int, int]]]
    g_vertices: dict[tuple[int, int], int]
    truth: tuple[tuple[int, ...], ...]
    false: tuple[tuple[int, ...], ...]
    validation: tuple[tuple[int, ...], ...]
    u: tuple[int, ...]
    u_leaf: tuple[int, ...]
    clauses: tuple[int, ...]

    @property
    def root(self) -> int:
        return self.formula.root

    def assignment_set(self, part: int, i: int) -> list[int]:
        return [v for v, _ in self.buckets[(part, i)]]

    def b_set(self, part: int) -> list[int]:
        r = self.root
        return [x for i in range(1, r + 1) for pair in self.pendants[(part, i)] for x in pair]

    def leaves(self) -> list[int]:
        """The 7 sqrt(n) degree-1 vertices."""
        r = self.root
        out = list(self.u_leaf)
        for p in range(3):
            for i in range(1, r + 1):
                out.extend(leaf for _, leaf in self.pendants[(p, i)])
        return sorted(out)


def gs_budget(psi: PartitionedCnf) -> int:
    return 10 * psi.root


def gs_vertex_count(psi: PartitionedCnf) -> int:
    r = psi.root
    return 3 * (r * 2**r + 4 * r + 3 * r + r) + 2 * r + psi.m


def build_gs_instance(psi: PartitionedCnf, min_root: int = MIN_REDUCTION_ROOT) -> GsReductionArtifact:
    """``min_root=1`` reproduces the unpadded single-bucket construction, which
    is not sound; the artifact's ``formula`` is the padded formula actually
    compiled."""
    psi = prepare_for_reduction(psi, min_root)
    r = psi.root
    roles: list[str] = []
    edges: set[tuple[int, int]] = set()

    def vertex(role: str) -> int:
        roles.append(role)
        return len(roles) - 1

    def edge(a: int, b: int) -> None:
        edges.add((min(a, b), max(a, b)))

    buckets, pendants, g_vertices = {}, {}, {}
    truth, false, validation = [], [], []
    for p, pname in enumerate(PART_NAMES):
        for i in range(1, r + 1):
            buckets[(p, i)] = tuple(
                (vertex(f"A:{pname}:{i}:{ell}"), assignment_pattern(ell, r))
                for ell in range(1, 2**r + 1)
            )
            pair = []
            for j in (1, 2):
                anchor = vertex(f"Ba:{pname}:{i}:{j}")
                leaf = vertex(f"Bb:{pname}:{i}:{j}")
                edge(anchor, leaf)
                for a, _ in buckets[(p, i)]:
                    edge(anchor, a)
                pair.append((anchor, leaf))
            pendants[(p, i)] = tuple(pair)
        truth.append(tuple(vertex(f"t:{pname}:{j}") for j in range(1, r + 1)))
        false.append(tuple(vertex(f"f:{pname}:{j}") for j in range(1, r + 1)))
        validation.append(tuple(vertex(f"v:{pname}:{j}") for j in range(1, r + 1)))
        for i in range(1, r + 1):
            for a, pattern in buckets[(p, i)]:
                edge(a, validation[p][i - 1])
                for j, value in enumerate(pattern, start=1):
                    edge(a, truth[p][j - 1] if value else false[p][j - 1])
            gv = vertex(f"g:{pname}:{i}")
            g_vertices[(p, i)] = gv
            for x in truth[p] + false[p]:
                edge(gv, x)
            for anchor, _ in pendants[(p, i)]:
                edge(gv, anchor)

    u = tuple(vertex(f"u:{i}") for i in range(1, r + 1))
    u_leaf = tuple(vertex(f"u_leaf:{i}") for i in range(1, r + 1))
    for i in range(r):
        edge(u[i], u_leaf[i])
        for j in range(i + 1, r):
            edge(u[i], u[j])
    for p in range(3):
        for i in range(r):
            for j in range(r):
                if i != j:
                    edge(u[j], validation[p][i])
            for x in u:
                edge(g_vertices[(p, i + 1)], x)

    clause_vs = []
    for q, clause in enumerate(psi.clauses, start=1):
        c = vertex(f"c:{q}")
        clause_vs.append(c)
        for lit in clause:
            p, i, j = psi.bucket_of(abs(lit))
            edge(c, u[i - 1])
            edge(c, (truth if lit > 0 else false)[p][j - 1])

    g = Graph.from_edges(len(roles), sorted(edges), roles)
    return GsReductionArtifact(
        psi,
        g,
        gs_budget(psi),
        tuple(roles),
        buckets,
        pendants,
        g_vertices,
        tuple(truth),
        tuple(false),
        tuple(validation),
        u,
        u_leaf,
        tuple(clause_vs),
    )


def gs_forward_witness(art: GsReductionArtifact, pi: Mapping[int, bool]) -> list[int]:
    r = art.root
    chosen = [assignment_vertex(art, p, i, pi) for p in range(3) for i in range(1, r + 1)]
    return sorted(art.leaves() + chosen)


def gs_lift_assignment(art: GsReductionArtifact, s: Sequence[int]) -> Assignment:
    s = sorted(set(s))
    if len(s) > art.k:
        raise BudgetExceeded(f"solution has {len(s)} vertices, budget is {art.k}")
    if not is_geodetic(art.g, s):
        raise NotAGeodeticSet("the given set is not geodetic")
    chosen = set(s)
    pi: Assignment = {x: False for x in art.formula.variables}
    for (p, i), entries in art.buckets.items():
        hits = [pat for v, pat in entries if v in chosen]
        if hits:
            for x, value in zip(art.formula.bucket_variables(p, i), hits[0]):
                pi[x] = value
    return pi


def gs_candidate_choices(art: GsReductionArtifact) -> list[list[int]]:
    r = art.root
    return [
        art.assignment_set(p, i) + [art.validation[p][i - 1]]
        for p in range(3)
        for i in range(1, r + 1)
    ]


def gs_reduction_aware_solve(art: GsReductionArtifact) -> list[int] | None:
    """Leaves are forced; each bucket contributes exactly one vertex of
    A_i + {v_i}.  Buckets are scanned in (part, i) order, v_i last."""
    fixed = art.leaves()
    checker = PartialCover(art.g, fixed)
    for pick in product(*gs_candidate_choices(art)):
        if checker.covers_with(pick):
            return sorted(fixed + list(pick))
    return None


def gs_explicit_vc(art: GsReductionArtifact) -> list[int]:
    out: set[int] = set(art.u) | set(art.clauses)
    r = art.root
    for p in range(3):
        out.update(art.b_set(p))
        out.update(art.validation[p] + art.truth[p] + art.false[p])
        out.update(art.g_vertices[(p, i)] for i in range(1, r + 1))
    return sorted(out)


def gs_vc_bound(psi: PartitionedCnf) -> int:
    """3 (|B| + |V| + |T| + |F| + sqrt n) + |U| + |C| with |B| = 4 sqrt n."""
    r = psi.root
    return 3 * (4 * r + r + r + r + r) + r + psi.m


def anchor_pair_violations(art: GsReductionArtifact) -> list[tuple[int, int, int]]:
    """Triples (x, y, w): w in C or a validation portal lies on a shortest
    path between two vertices x, y of B + U + U'.  Should be empty."""
    d = art.g.dist
    anchors = sorted(
        {x for p in range(3) for x in art.b_set(p)} | set(art.u) | set(art.u_leaf)
    )
    targets = list(art.clauses) + [v for p in range(3) for v in art.validation[p]]
    bad = []
    for ai, x in enumerate(anchors):
        for y in anchors[ai:]:
            for w in targets:
                if d[x, w] + d[w, y] == d[x, y]:
                    bad.append((x, y, w))
    return bad


def validation_cover_violations(art: GsReductionArtifact) -> list[tuple[int, int, int]]:
    """Triples (x, y, v_i) with x, y outside A_i + {v_i} whose shortest path
    passes through v_i.  Should be empty."""
    d = art.g.dist
    bad = []
    for (p, i), entries in art.buckets.items():
        vi = art.validation[p][i - 1]
        outside = np.ones(art.g.n, dtype=bool)
        outside[[v for v, _ in entries] + [vi]] = False
        hit = (d[:, vi][:, None] + d[vi, :][None, :]) == d
        hit &= outside[:, None] & outside[None, :]
        for x, y in zip(*np.nonzero(hit)):
            if x <= y:
                bad.append((int(x), int(y), vi))
    return bad
