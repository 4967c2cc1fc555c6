from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import (
    atlas_connected,
    complete_graph,
    cycle_graph,
    from_nx,
    nx_geodetic,
    nx_min_size,
    path_graph,
    petersen,
    random_connected,
    twin_heavy_graph,
)

from vcmetric.errors import Disconnected
from vcmetric.graph import Graph
from vcmetric.gs import (
    PartialCover,
    coverage,
    gs_bruteforce,
    gs_fpt_solve,
    gs_kernelize,
    gs_xp_solve,
    is_geodetic,
)
from vcmetric.instances import Instance

STAR6 = from_nx(nx.star_graph(6))
K27 = from_nx(nx.complete_bipartite_graph(2, 7))


def test_is_geodetic_examples():
    assert is_geodetic(path_graph(5), [0, 4])
    assert not any(is_geodetic(complete_graph(3), s) for s in itertools.combinations(range(3), 2))
    assert is_geodetic(cycle_graph(6), [0, 3])
    with pytest.raises(Disconnected):
        is_geodetic(Graph.from_edges(3, [(0, 1)]), [0, 2])


def test_bruteforce_examples():
    assert len(gs_bruteforce(path_graph(6))) == 2
    assert len(gs_bruteforce(complete_graph(5))) == 5
    assert len(gs_bruteforce(cycle_graph(5))) == 3
    assert len(gs_bruteforce(petersen())) == 4 == nx_min_size(petersen(), nx_geodetic)


def test_bruteforce_agrees_with_networkx_oracle():
    for g in atlas_connected(5):
        assert len(gs_bruteforce(g)) == nx_min_size(g, nx_geodetic)


def test_partial_cover_matches_full_check():
    rng = random.Random(2)
    for _ in range(30):
        g = random_connected(8, 0.35, rng)
        fixed = rng.sample(range(8), 2)
        checker = PartialCover(g, fixed)
        for extra in itertools.combinations(range(8), 2):
            full = coverage(g, sorted(set(fixed) | set(extra))) == (1 << 8) - 1
            assert checker.covers_with(extra) == full


def test_kernel_star_simplicial_twins():
    kern = gs_kernelize(Instance(STAR6, 6))
    assert kern.reduced.g.n == 3 and kern.reduced.k == 2
    assert len(kern.readd) == 4
    cert = gs_fpt_solve(Instance(STAR6, 6))
    assert cert is not None and cert.vertices == (1, 2, 3, 4, 5, 6)
    assert gs_fpt_solve(Instance(STAR6, 5)) is None


def test_kernel_open_twins():
    for k in (2, 4, 9):
        kern = gs_kernelize(Instance(K27, k))
        assert len(kern.removed) == 2 and kern.reduced.k == k and kern.readd == ()
        assert kern.reduced.g.n == 7
        best = len(gs_bruteforce(K27))
        assert (len(gs_bruteforce(kern.reduced.g)) <= k) == (best <= k)


def test_kernel_unchanged_on_cycle():
    kern = gs_kernelize(Instance(cycle_graph(6), 2))
    assert kern.removed == () and kern.reduced.g == cycle_graph(6)


def test_kernel_trivial_no():
    kern = gs_kernelize(Instance(STAR6, 3))
    assert kern.is_trivial_no
    assert gs_fpt_solve(Instance(STAR6, 3)) is None


def test_kernel_true_simplicial_twins():
    # K5 with a pendant path: the four clique vertices besides the hub are
    # simplicial true twins
    g = Graph.from_edges(6, [*itertools.combinations(range(5), 2), (0, 5)])
    kern = gs_kernelize(Instance(g, 5))
    assert len(kern.removed) == 2 and kern.reduced.k == 3
    assert gs_fpt_solve(Instance(g, 5)) is not None and gs_fpt_solve(Instance(g, 4)) is None


def test_kernel_preserves_answer():
    rng = random.Random(9)
    for _ in range(40):
        g, cover = twin_heavy_graph(rng.randint(2, 4), rng.randint(3, 9), rng)
        best = len(gs_bruteforce(g))
        for k in (best - 1, best):
            kern = gs_kernelize(Instance(g, k), vc_hint=cover)
            if kern.is_trivial_no:
                assert k < best
                continue
            assert (len(gs_bruteforce(kern.reduced.g)) <= kern.reduced.k) == (best <= k)


def test_xp_examples():
    cert = gs_xp_solve(Instance(path_graph(6), 2))
    assert cert.vertices == (0, 5)
    assert gs_xp_solve(Instance(complete_graph(4), 3)) is None
    assert gs_xp_solve(Instance(complete_graph(4), 4)).vertices == (0, 1, 2, 3)
    assert gs_xp_solve(Instance(petersen(), 4)) is not None
    assert gs_xp_solve(Instance(petersen(), 3)) is None


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 11), st.floats(0.15, 0.7), st.integers(0, 10**6))
def test_fpt_matches_bruteforce(n, p, seed):
    g = random_connected(n, p, random.Random(seed))
    best = len(gs_bruteforce(g))
    cert = gs_fpt_solve(Instance(g, best))
    assert cert is not None and is_geodetic(g, cert.vertices)
    assert gs_fpt_solve(Instance(g, best - 1)) is None
