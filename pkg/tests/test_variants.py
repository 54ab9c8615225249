# ./tests/test_variants.py

import pytest
from hypothesis import given, settings, strategies as st

from burnlab.core.BurnEngine import RandomChooser, burning_number_exact, burning_number_oracle, path_cycle_sequence, validate
from burnlab.core.Variants import (
    Variants,
    edge_burning_number,
    line_seq_from_tree_seq,
    line_seq_from_vertex_seq,
    total_burning_number,
    total_seq_from_vertex_seq,
    verify_relations,
    vertex_seq_from_line_seq,
    vertex_seq_from_total_seq,
)
from burnlab.utils import generators as gen
from burnlab.utils.data_class import BurningSequence
from burnlab.utils.errors import PreconditionError
from burnlab.utils.graph_utils import build_graph, line_graph, total_graph


def witness(G):
    return burning_number_exact(G, max_nodes=1_000_000, max_seconds=60, threads=1).witness


@pytest.mark.parametrize("G, expected", [
    (gen.path(10), 3),
    (gen.cycle(9), 3),
    (gen.complete(5), 3),
])
def test_edge_burning_number(G, expected):
    result = edge_burning_number(G)
    assert result.value == expected
    assert result.origin_map[0].kind == "edge"
    assert validate(line_graph(G)[0], result.witness)


def test_edge_burning_needs_an_edge():
    with pytest.raises(PreconditionError):
        edge_burning_number(gen.path(1))


def test_total_burning_number_examples():
    assert total_burning_number(gen.path(1)).value == 1
    assert total_burning_number(gen.path(2)).value == 2
    c4 = total_burning_number(gen.cycle(4)).value
    assert c4 in (2, 3)
    assert c4 == burning_number_oracle(total_graph(gen.cycle(4))[0])


def test_line_from_vertex_on_p9():
    G = gen.path(9)
    B_L = line_seq_from_vertex_seq(G, path_cycle_sequence(9))
    assert B_L.horizon == 4
    assert validate(line_graph(G)[0], B_L)


def test_line_from_vertex_single_edge():
    B_L = line_seq_from_vertex_seq(gen.path(2), BurningSequence(sources=(0, 1), horizon=2))
    assert B_L == BurningSequence(sources=(0,), horizon=3)


def test_line_from_vertex_on_c5():
    G = gen.cycle(5)
    B = witness(G)
    B_L = line_seq_from_vertex_seq(G, B, RandomChooser(3))
    assert B_L.horizon == B.horizon + 1
    assert validate(line_graph(G)[0], B_L)


def test_vertex_from_line_on_p10():
    G = gen.path(10)
    # L(P_10) is P_9 with edge (i, i+1) as vertex i
    B = vertex_seq_from_line_seq(G, path_cycle_sequence(9))
    assert B.horizon == 4 and validate(G, B)


def test_vertex_from_line_single_edge():
    B = vertex_seq_from_line_seq(gen.path(2), BurningSequence(sources=(0,), horizon=1))
    assert B == BurningSequence(sources=(0, 1), horizon=2)


def test_vertex_from_line_on_k5():
    G = gen.complete(5)
    B_L = witness(line_graph(G)[0])
    assert B_L.horizon == 3
    B = vertex_seq_from_line_seq(G, B_L)
    assert B.horizon == 4 and validate(G, B)


def test_vertex_from_line_rejects_isolated_vertices():
    G = build_graph(3, [(0, 1)])
    with pytest.raises(PreconditionError):
        vertex_seq_from_line_seq(G, BurningSequence(sources=(0,), horizon=1))


def test_total_from_vertex():
    G = gen.cycle(4)
    A = total_seq_from_vertex_seq(G, witness(G))
    assert A.horizon == 3 and validate(total_graph(G)[0], A)
    K1 = gen.path(1)
    assert total_seq_from_vertex_seq(K1, BurningSequence(sources=(0,), horizon=1)).sources == (0,)
    P9 = gen.path(9)
    assert validate(total_graph(P9)[0], total_seq_from_vertex_seq(P9, path_cycle_sequence(9)))


def test_vertex_from_total_keeps_the_horizon():
    G = gen.path(2)
    # vertex 2 of T(P_2) = K_3 is the edge; it moves to endpoint 0
    B = vertex_seq_from_total_seq(G, BurningSequence(sources=(2,), horizon=2))
    assert B.horizon == 2 and B.sources[0] == 0 and validate(G, B)
    C4 = gen.cycle(4)
    A = witness(total_graph(C4)[0])
    B = vertex_seq_from_total_seq(C4, A)
    assert B.horizon == A.horizon and validate(C4, B)


def test_transforms_reject_invalid_input():
    G = gen.path(5)
    bad = BurningSequence(sources=(0,), horizon=2)
    with pytest.raises(PreconditionError):
        line_seq_from_vertex_seq(G, bad)
    with pytest.raises(PreconditionError):
        total_seq_from_vertex_seq(G, bad)
    with pytest.raises(PreconditionError):
        vertex_seq_from_total_seq(G, bad)


def test_tree_transform_rejects_non_trees():
    with pytest.raises(PreconditionError):
        line_seq_from_tree_seq(gen.cycle(4), BurningSequence(sources=(0, 2), horizon=2))


@settings(max_examples=25, derandomize=True, deadline=None)
@given(n=st.integers(min_value=2, max_value=12), seed=st.integers(min_value=0, max_value=10_000),
       root=st.integers(min_value=0, max_value=11))
def test_tree_transform_keeps_the_horizon(n, seed, root):
    T = gen.random_tree(n, seed=seed)
    B = witness(T)
    B_L = line_seq_from_tree_seq(T, B, root=root % n)
    assert B_L.horizon == B.horizon
    assert validate(line_graph(T)[0], B_L)


@settings(max_examples=25, derandomize=True, deadline=None)
@given(n=st.integers(min_value=2, max_value=7), seed=st.integers(min_value=0, max_value=10_000))
def test_transforms_are_sound_on_random_graphs(n, seed):
    G = gen.random_connected(n, seed=seed)
    B = witness(G)
    L, T = line_graph(G)[0], total_graph(G)[0]
    for chooser in (None, RandomChooser(seed)):
        assert validate(L, line_seq_from_vertex_seq(G, B, chooser))
        assert validate(T, total_seq_from_vertex_seq(G, B, chooser))
        assert validate(G, vertex_seq_from_line_seq(G, witness(L), chooser))
        assert validate(G, vertex_seq_from_total_seq(G, witness(T), chooser))


def by_relation(checks):
    return {c.relation: c for c in checks}


def test_relations_on_p5():
    checks = by_relation(verify_relations(gen.path(5), threads=1))
    assert set(checks) == {"edge_lower", "edge_upper", "tree_edge", "total_lower", "total_upper", "spike_total"}
    assert all(c.status == "pass" for c in checks.values())
    assert checks["edge_lower"].values == {"b": 3, "b_L": 2}
    assert checks["total_lower"].values["b_T"] in (3, 4)


def test_relations_on_k5_hit_the_upper_edge_bound():
    checks = by_relation(verify_relations(gen.complete(5), threads=1))
    assert checks["edge_upper"].values == {"b": 2, "b_L": 3}
    assert "tree_edge" not in checks
    assert all(c.status == "pass" for c in checks.values())


def test_relations_on_c4_spike_total():
    checks = by_relation(verify_relations(gen.cycle(4), threads=1))
    assert checks["spike_total"].values == {"b": 2, "b_T_spike": 3}
    assert checks["spike_total"].status == "pass"


def test_relations_with_tiny_budget_are_unverified():
    checks = verify_relations(gen.path(5), max_nodes=1, threads=1)
    statuses = {c.status for c in checks}
    assert "unverified" in statuses and "fail" not in statuses
    for c in checks:
        missing = any(v is None for v in c.values.values())
        assert (c.status == "unverified") == missing


def test_relations_in_parallel():
    checks = verify_relations(gen.complete(4), threads=2)
    assert all(c.status == "pass" for c in checks)


def test_relations_need_a_connected_graph():
    with pytest.raises(PreconditionError):
        verify_relations(gen.disjoint_union(gen.path(2), gen.path(1)))


def test_variants_facade():
    variants = Variants(max_nodes=100_000, max_seconds=30, threads=1)
    assert variants.edge(gen.star(3)).value == 2
    assert variants.total(gen.path(2)).value == 2
