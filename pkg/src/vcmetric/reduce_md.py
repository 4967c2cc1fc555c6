"""Compile a 3-Partitioned-3-SAT formula into a Metric Dimension instance with
vertex cover and budget O(sqrt n), plus witness construction and lifting.

Per part the graph has assignment sets A_i (one vertex per assignment of a
bucket), selector pairs b_circ/b_star, and a truth/false/validation portal
clique; one critical pair c_circ/c_star per clause.  Every host set
(A, B and P of each part, and C) carries a set-identifying gadget: a clique of
code-bit vertices y_1..y_{q-1} and y_star, each with a pendant pair, plus a
nullifier.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

from .errors import BudgetExceeded, NotAResolvingSet
from .graph import Graph
from .md import PartialResolver, is_resolving
from .sat import MIN_REDUCTION_ROOT, PART_NAMES, Assignment, PartitionedCnf, prepare_for_reduction


def ceil_log2(x: int) -> int:
    return (x - 1).bit_length()


def bit_width(count: int) -> int:
    """Pendant pairs of a gadget over ``count`` host codes: enough code bits
    for 1..count with the all-ones pattern left to the nullifier, plus the
    slot taken by y_star."""
    return ceil_log2(count + 2) + 1


def code_bits(j: int, q: int) -> list[int]:
    """Bit positions (1-based, most significant first) set in the q-bit code of j."""
    return [i for i in range(1, q + 1) if j >> (q - i) & 1]


def assignment_pattern(ell: int, r: int) -> tuple[bool, ...]:
    """Bucket assignment of the ell-th vertex (1-based): ell-1 in r bits, MSB
    is the bucket's first variable, 1 = True."""
    return tuple(bool((ell - 1) >> (r - j) & 1) for j in range(1, r + 1))


@dataclass(frozen=True)
class GadgetSpec:
    name: str
    hosts: tuple[tuple[int, ...], ...]  # hosts[j-1]: vertices carrying code j
    q: int  # pendant pairs; q - 1 code bits plus y_star
    y: tuple[int, ...]
    y_a: tuple[int, ...]
    y_b: tuple[int, ...]
    y_star: int
    y_star_a: int
    y_star_b: int
    nullifier: int

    @property
    def clique(self) -> tuple[int, ...]:
        return self.y + (self.y_star,)

    @property
    def bits(self) -> tuple[int, ...]:
        return self.y_a + self.y_b + (self.y_star_a, self.y_star_b)

    @property
    def pendant_pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.y_a, self.y_b)) + [(self.y_star_a, self.y_star_b)]

    @property
    def plus(self) -> tuple[int, ...]:
        """Every vertex the gadget adds."""
        return self.clique + self.bits + (self.nullifier,)

    @property
    def host_vertices(self) -> tuple[int, ...]:
        return tuple(v for group in self.hosts for v in group)


class _Builder:
    def __init__(self) -> None:
        self.roles: list[str] = []
        self.edges: set[tuple[int, int]] = set()

    def vertex(self, role: str) -> int:
        self.roles.append(role)
        return len(self.roles) - 1

    def edge(self, u: int, v: int) -> None:
        if u == v:
            raise AssertionError(f"self-loop on {self.roles[u]}")
        self.edges.add((min(u, v), max(u, v)))

    def clique(self, vs: Sequence[int]) -> None:
        for i, u in enumerate(vs):
            for v in vs[i + 1 :]:
                self.edge(u, v)

    def gadget(self, name: str, hosts: Sequence[Sequence[int]]) -> GadgetSpec:
        q = bit_width(len(hosts))
        width = q - 1
        y, ya, yb = [], [], []
        for i in range(1, width + 1):
            ya.append(self.vertex(f"{name}:ya:{i}"))
            y.append(self.vertex(f"{name}:y:{i}"))
            yb.append(self.vertex(f"{name}:yb:{i}"))
            self.edge(ya[-1], y[-1])
            self.edge(y[-1], yb[-1])
        star_a = self.vertex(f"{name}:ya:star")
        star = self.vertex(f"{name}:y:star")
        star_b = self.vertex(f"{name}:yb:star")
        self.edge(star_a, star)
        self.edge(star, star_b)
        self.clique(y + [star])
        for j, group in enumerate(hosts, start=1):
            for x in group:
                self.edge(star, x)
                for i in code_bits(j, width):
                    self.edge(x, y[i - 1])
        null = self.vertex(f"{name}:nullifier")
        for w in y + [star]:
            self.edge(null, w)
        return GadgetSpec(
            name,
            tuple(tuple(g) for g in hosts),
            q,
            tuple(y),
            tuple(ya),
            tuple(yb),
            star,
            star_a,
            star_b,
            null,
        )


@dataclass(frozen=True, eq=False)
class MdReductionArtifact:
    formula: PartitionedCnf
    g: Graph
    k: int
    roles: tuple[str, ...]
    # (part, i) -> ((vertex, assignment pattern), ...) in ell order
    buckets: dict[tuple[int, int], tuple[tuple[int, tuple[bool, ...]], ...]]
    selectors: dict[tuple[int, int], tuple[int, int]]  # (part, i) -> (b_circ, b_star)
    truth: tuple[tuple[int, ...], ...]  # truth[part][j-1]
    false: tuple[tuple[int, ...], ...]
    validation: tuple[tuple[int, ...], ...]
    clause_pairs: tuple[tuple[int, int], ...]  # (c_circ, c_star) per clause
    gadgets: dict[str, GadgetSpec] = field(default_factory=dict)

    @property
    def root(self) -> int:
        return self.formula.root

    def assignment_set(self, part: int, i: int) -> list[int]:
        return [v for v, _ in self.buckets[(part, i)]]

    def part_sets(self, part: int) -> dict[str, list[int]]:
        r = self.root
        return {
            "A": [v for i in range(1, r + 1) for v in self.assignment_set(part, i)],
            "B": [b for i in range(1, r + 1) for b in self.selectors[(part, i)]],
            "P": list(self.validation[part] + self.truth[part] + self.false[part]),
        }

    def critical_pairs(self) -> list[tuple[int, int]]:
        r = self.root
        return [self.selectors[(p, i)] for p in range(3) for i in range(1, r + 1)] + list(
            self.clause_pairs
        )


def md_budget(psi: PartitionedCnf) -> int:
    """Budget of the compiled instance: one selector choice per bucket plus
    one vertex per pendant pair of all ten gadgets."""
    r = psi.root
    size_b, size_a, size_p, size_c = 2 * r, r * 2**r, 3 * r, 2 * psi.m
    per_part = r + bit_width(size_b // 2) + bit_width(size_a) + bit_width(size_p)
    return 3 * per_part + bit_width(size_c // 2)


def md_vertex_count(psi: PartitionedCnf) -> int:
    r = psi.root

    def gadget(count: int) -> int:
        return 3 * bit_width(count) + 1

    per_part = (
        r * 2**r + gadget(r * 2**r) + 2 * r + gadget(r) + 3 * r + gadget(3 * r)
    )
    return 3 * per_part + 2 * psi.m + gadget(psi.m)


def build_md_instance(psi: PartitionedCnf, min_root: int = MIN_REDUCTION_ROOT) -> MdReductionArtifact:
    """``min_root=1`` reproduces the unpadded single-bucket construction, which
    is not sound; the artifact's ``formula`` is the padded formula actually
    compiled."""
    psi = prepare_for_reduction(psi, min_root)
    r = psi.root
    bld = _Builder()
    buckets: dict[tuple[int, int], tuple[tuple[int, tuple[bool, ...]], ...]] = {}
    selectors: dict[tuple[int, int], tuple[int, int]] = {}
    truth, false, validation = [], [], []
    for p, pname in enumerate(PART_NAMES):
        for i in range(1, r + 1):
            entries = []
            for ell in range(1, 2**r + 1):
                v = bld.vertex(f"A:{pname}:{i}:{ell}")
                entries.append((v, assignment_pattern(ell, r)))
            buckets[(p, i)] = tuple(entries)
        for i in range(1, r + 1):
            selectors[(p, i)] = (
                bld.vertex(f"b_circ:{pname}:{i}"),
                bld.vertex(f"b_star:{pname}:{i}"),
            )
        truth.append(tuple(bld.vertex(f"t:{pname}:{j}") for j in range(1, r + 1)))
        false.append(tuple(bld.vertex(f"f:{pname}:{j}") for j in range(1, r + 1)))
        validation.append(tuple(bld.vertex(f"v:{pname}:{j}") for j in range(1, r + 1)))
    clause_pairs = tuple(
        (bld.vertex(f"c_circ:{q}"), bld.vertex(f"c_star:{q}"))
        for q in range(1, psi.m + 1)
    )

    gadgets: dict[str, GadgetSpec] = {}
    for p, pname in enumerate(PART_NAMES):
        a_all = [v for i in range(1, r + 1) for v, _ in buckets[(p, i)]]
        b_pairs = [selectors[(p, i)] for i in range(1, r + 1)]
        portal = list(validation[p] + truth[p] + false[p])
        ga = bld.gadget(f"gA:{pname}", [[a] for a in a_all])
        gb = bld.gadget(f"gB:{pname}", b_pairs)
        gp = bld.gadget(f"gP:{pname}", [[x] for x in portal])
        gadgets[ga.name], gadgets[gb.name], gadgets[gp.name] = ga, gb, gp

        # vertex selector: B clique, b_circ_i sees its own bucket only
        bld.clique([b for pair in b_pairs for b in pair])
        for i in range(1, r + 1):
            for a, _ in buckets[(p, i)]:
                bld.edge(a, selectors[(p, i)][0])
        for a in a_all:
            bld.edge(gb.nullifier, a)
        for pair in b_pairs:
            for b in pair:
                bld.edge(ga.nullifier, b)
        bld.edge(ga.nullifier, gb.nullifier)

        # portals; nullifier(P) deliberately has no edge into A
        bld.clique(portal)
        for x in portal:
            bld.edge(ga.nullifier, x)
        bld.edge(gp.nullifier, ga.nullifier)
        for i in range(1, r + 1):
            for a, pattern in buckets[(p, i)]:
                for j, value in enumerate(pattern, start=1):
                    bld.edge(a, truth[p][j - 1] if value else false[p][j - 1])
                bld.edge(a, validation[p][i - 1])

    gc = bld.gadget("gC", list(clause_pairs))
    gadgets[gc.name] = gc
    for p, pname in enumerate(PART_NAMES):
        gp = gadgets[f"gP:{pname}"]
        for pair in clause_pairs:
            for c in pair:
                bld.edge(gp.nullifier, c)
        bld.edge(gp.nullifier, gc.nullifier)

    for (c_circ, c_star), clause in zip(clause_pairs, psi.clauses):
        by_part = {psi.part_of(abs(lit)): lit for lit in clause}
        for p in range(3):
            lit = by_part.get(p)
            if lit is None:
                for v in validation[p]:
                    bld.edge(v, c_circ)
                    bld.edge(v, c_star)
                continue
            _, i, j = psi.bucket_of(abs(lit))
            for i2 in range(1, r + 1):
                if i2 != i:
                    bld.edge(validation[p][i2 - 1], c_circ)
                    bld.edge(validation[p][i2 - 1], c_star)
            bld.edge((truth if lit > 0 else false)[p][j - 1], c_circ)

    g = Graph.from_edges(len(bld.roles), sorted(bld.edges), bld.roles)
    return MdReductionArtifact(
        psi,
        g,
        md_budget(psi),
        tuple(bld.roles),
        buckets,
        selectors,
        tuple(truth),
        tuple(false),
        tuple(validation),
        clause_pairs,
        gadgets,
    )


def forced_bits(art: MdReductionArtifact) -> list[int]:
    """One vertex (the ``a`` side) of every pendant pair of every gadget."""
    return sorted(a for gd in art.gadgets.values() for a, _ in gd.pendant_pairs)


def assignment_vertex(art, part: int, i: int, pi: Mapping[int, bool]) -> int:
    """The A-vertex of bucket (part, i) encoding ``pi``; padding dummies that
    ``pi`` does not mention read as False."""
    xs = art.formula.bucket_variables(part, i)
    want = tuple(bool(pi.get(x, False)) for x in xs)
    for v, pattern in art.buckets[(part, i)]:
        if pattern == want:
            return v
    raise AssertionError("every bucket assignment has a vertex")


def md_forward_witness(art: MdReductionArtifact, pi: Mapping[int, bool]) -> list[int]:
    r = art.root
    chosen = [assignment_vertex(art, p, i, pi) for p in range(3) for i in range(1, r + 1)]
    return sorted(forced_bits(art) + chosen)


def md_lift_assignment(art: MdReductionArtifact, s: Sequence[int]) -> Assignment:
    """Read a truth assignment off a resolving set of size at most k; buckets
    with no chosen assignment vertex default to all-False."""
    s = sorted(set(s))
    if len(s) > art.k:
        raise BudgetExceeded(f"solution has {len(s)} vertices, budget is {art.k}")
    if not is_resolving(art.g, s):
        raise NotAResolvingSet("the given set does not resolve the instance")
    chosen = set(s)
    pi: Assignment = {x: False for x in art.formula.variables}
    r = art.root
    for p in range(3):
        for i in range(1, r + 1):
            hits = [(v, pat) for v, pat in art.buckets[(p, i)] if v in chosen]
            if len(hits) == 1:
                for x, value in zip(art.formula.bucket_variables(p, i), hits[0][1]):
                    pi[x] = value
    return pi


def md_candidate_choices(art: MdReductionArtifact) -> list[list[int]]:
    r = art.root
    return [
        art.assignment_set(p, i) + list(art.selectors[(p, i)])
        for p in range(3)
        for i in range(1, r + 1)
    ]


def md_reduction_aware_solve(art: MdReductionArtifact) -> list[int] | None:
    """Search only sets of the shape every size-k resolving set must have:
    the pendant-pair representatives plus one vertex per bucket from
    A_i + {b_circ_i, b_star_i}."""
    fixed = forced_bits(art)
    checker = PartialResolver(art.g, fixed)
    for pick in product(*md_candidate_choices(art)):
        if checker.resolves_with(pick):
            return sorted(fixed + list(pick))
    return None


def md_explicit_vc(art: MdReductionArtifact) -> list[int]:
    """B and P of every part plus every gadget vertex outside the pendant pairs."""
    out: set[int] = set()
    for p in range(3):
        sets = art.part_sets(p)
        out.update(sets["B"])
        out.update(sets["P"])
    for gd in art.gadgets.values():
        out.update(gd.clique)
        out.add(gd.nullifier)
    return sorted(out)


def md_vc_bound(psi: PartitionedCnf) -> int:
    """Closed-form size of :func:`md_explicit_vc`: B and P of every part plus
    q + 1 non-pendant vertices (clique and nullifier) per gadget."""
    r = psi.root
    cliques = bit_width(r) + bit_width(r * 2**r) + bit_width(3 * r) + 3
    return 3 * cliques + 3 * (2 * r + 3 * r) + bit_width(psi.m) + 1


def critical_pair_violations(art: MdReductionArtifact) -> list[tuple[int, tuple[int, int]]]:
    """Gadget vertices that separate some critical pair (should be none)."""
    d = art.g.dist
    bad = []
    for gd in art.gadgets.values():
        for w in gd.plus:
            for u, v in art.critical_pairs():
                if d[w, u] != d[w, v]:
                    bad.append((w, (u, v)))
    return bad
