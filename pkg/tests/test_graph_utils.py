# ./tests/test_graph_utils.py

from itertools import combinations, product

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from burnlab.utils import generators as gen
from burnlab.utils.data_class import IntervalModel
from burnlab.utils.errors import GraphFormatError, PreconditionError
from burnlab.utils.graph_utils import (
    UNREACHABLE,
    all_pairs_distances,
    build_graph,
    diameter,
    is_caterpillar,
    is_claw_free,
    is_dominating,
    is_pk_free,
    line_graph,
    longest_induced_path,
    path_ordering,
    relabel_check,
    spike_graph,
    total_graph,
    verify_interval_model,
)


def test_build_graph_normalizes_and_dedups():
    G = build_graph(3, [(1, 0), (0, 1), (2, 1)])
    assert G.edges == ((0, 1), (1, 2))
    assert G.degree(1) == 2


@pytest.mark.parametrize("edges", [[(0, 3)], [(1, 1)], [(0, 1, 2)]])
def test_build_graph_rejects_bad_edges(edges):
    with pytest.raises(GraphFormatError):
        build_graph(3, edges)


def test_distances_and_eccentricity_on_path():
    dm = all_pairs_distances(gen.path(5))
    assert dm(0, 4) == 4
    assert dm.eccentricity(2) == 2
    assert sorted(dm.ball(2, 1).tolist()) == [1, 2, 3]
    assert dm.max_ball(1) == 3


def test_disconnected_distances_are_unreachable():
    G = gen.disjoint_union(gen.path(2), gen.path(2))
    dm = all_pairs_distances(G)
    assert dm(0, 2) == UNREACHABLE
    assert not dm.reachable(1, 3)
    with pytest.raises(PreconditionError):
        diameter(G)


def test_line_graph_of_star_is_complete():
    L, origin = line_graph(gen.star(4))
    assert L.n == 4 and L.m == 6
    assert origin[0].kind == "edge" and origin[0].ref == (0, 1)


def test_line_graph_of_edgeless_graph_is_rejected():
    with pytest.raises(PreconditionError):
        line_graph(build_graph(3, []))


def test_total_graph_of_p2_is_triangle():
    T, origin = total_graph(gen.path(2))
    assert T.n == 3 and T.m == 3
    assert origin.ids_of_kind("vertex") == [0, 1]
    assert origin[2].ref == (0, 1)


def test_total_graph_counts():
    G = gen.cycle(4)
    T, _ = total_graph(G)
    # vertex-vertex + incidences + edge-edge pairs at each vertex
    assert T.n == 8
    assert T.m == 4 + 8 + 4


def test_spike_graph_adds_one_pendant_per_vertex():
    S, origin = spike_graph(gen.cycle(4))
    assert S.n == 8 and S.m == 8
    assert all(S.degree(4 + v) == 1 and S.has_edge(v, 4 + v) for v in range(4))
    assert origin[5].kind == "spike" and origin[5].ref == 1


@pytest.mark.parametrize("G, expected", [
    (gen.path(7), 7),
    (gen.cycle(7), 6),
    (gen.complete(5), 2),
    (gen.spider(3), 5),
    (gen.gtilde(), 5),
])
def test_longest_induced_path(G, expected):
    assert longest_induced_path(G) == expected


def test_pk_freeness():
    assert is_pk_free(gen.complete(5), 3)
    assert not is_pk_free(gen.path(10), 5)
    assert is_pk_free(gen.gtilde(), 6)
    for r in (2, 3, 4):
        assert is_pk_free(gen.spider(r), 2 * r)


def test_path_ordering():
    G = build_graph(4, [(0, 2), (2, 1), (1, 3)])
    assert path_ordering(G) == (0, 2, 1, 3)
    assert path_ordering(gen.cycle(4)) is None
    assert path_ordering(gen.star(3)) is None


def test_interval_model_verification():
    G = gen.path(3)
    assert verify_interval_model(G, IntervalModel(((0, 2), (2, 4), (4, 6))), proper=True)
    nested = IntervalModel(((0, 6), (1, 2), (5, 7)))
    assert not verify_interval_model(G, nested)
    with pytest.raises(PreconditionError):
        verify_interval_model(G, IntervalModel(((0, 1),)))


def test_generated_proper_interval_models_verify():
    for seed in range(5):
        G, model = gen.proper_interval(10, seed=seed)
        assert G.is_connected()
        assert verify_interval_model(G, model, proper=True)


def test_claw_and_caterpillar_checks():
    assert not is_claw_free(gen.star(3))
    assert is_claw_free(gen.cycle(5))
    assert is_caterpillar(gen.caterpillar(4, legs=[2, 0, 1, 1]))
    assert not is_caterpillar(gen.spider(3))
    assert is_dominating(gen.star(5), [0])
    assert not is_dominating(gen.path(5), [0, 4])


def test_relabel_check():
    L, _ = line_graph(gen.path(4))
    assert relabel_check(L, gen.path(3), [0, 1, 2])
    assert not relabel_check(L, gen.path(3), [1, 0, 2])


@settings(max_examples=40, derandomize=True, deadline=None)
@given(n=st.integers(min_value=2, max_value=9), seed=st.integers(min_value=0, max_value=10_000))
def test_line_graph_matches_edge_adjacency(n, seed):
    G = gen.random_connected(n, seed=seed)
    L, origin = line_graph(G)
    for a in range(L.n):
        for b in range(a + 1, L.n):
            share = bool(set(origin[a].ref) & set(origin[b].ref))
            assert L.has_edge(a, b) == share


@settings(max_examples=30, derandomize=True, deadline=None)
@given(n=st.integers(min_value=1, max_value=20), seed=st.integers(min_value=0, max_value=10_000))
def test_distances_form_a_metric(n, seed):
    D = all_pairs_distances(gen.random_connected(n, seed=seed)).dist
    assert (D == D.T).all()
    assert (np.diag(D) == 0).all()
    through = D[:, :, None] + D[None, :, :]
    assert (D[:, None, :] <= through).all()


@settings(max_examples=30, derandomize=True, deadline=None)
@given(n=st.integers(min_value=2, max_value=10), seed=st.integers(min_value=0, max_value=10_000))
def test_total_graph_restrictions(n, seed):
    G = gen.random_connected(n, seed=seed)
    T, origin = total_graph(G)
    on_vertices, _ = T.induced_subgraph(origin.ids_of_kind("vertex"))
    on_edges, _ = T.induced_subgraph(origin.ids_of_kind("edge"))
    assert relabel_check(on_vertices, G, list(range(G.n)))
    assert relabel_check(on_edges, line_graph(G)[0], list(range(G.m)))


def _induced_path_by_subsets(G):
    best = 0
    for size in range(1, G.n + 1):
        for subset in combinations(range(G.n), size):
            if path_ordering(G.induced_subgraph(subset)[0]) is not None:
                best = size
                break
    return best


@settings(max_examples=20, derandomize=True, deadline=None)
@given(n=st.integers(min_value=1, max_value=10), seed=st.integers(min_value=0, max_value=10_000))
def test_longest_induced_path_matches_subset_search(n, seed):
    G = gen.random_connected(n, seed=seed)
    assert longest_induced_path(G) == _induced_path_by_subsets(G)


@pytest.mark.parametrize("length", [1, 2, 3])
def test_claw_has_no_unit_length_model(length):
    claw = gen.star(3)
    starts = range(3 * length + 1)
    for lows in product(starts, repeat=4):
        model = IntervalModel(tuple((a, a + length) for a in lows))
        assert not verify_interval_model(claw, model)


def test_line_graph_of_c5_is_c5():
    L, _ = line_graph(gen.cycle(5))
    assert nx.is_isomorphic(L.to_networkx(), gen.cycle(5).to_networkx())
